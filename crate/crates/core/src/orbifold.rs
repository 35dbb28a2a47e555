//! Weighted-graph descriptors of Heckoid orbifolds.
//!
//! A descriptor is a link `K(r̂)` together with tunnel arcs, cut at the tunnel
//! endpoints into edges. Every edge carries a weight in `{2, m, ∞}` (`n` for
//! even orbifolds): `∞` marks a removed edge, a finite weight a cone angle.
//! Vertices are the trivalent tunnel endpoints.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::IntScalar;
use crate::slope::{HeckoidIndex, Slope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeLabel {
    J,
    J1,
    J2,
    #[serde(rename = "tau_plus")]
    TauPlus,
    #[serde(rename = "tau_minus")]
    TauMinus,
    #[serde(rename = "link_component")]
    LinkComponent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    Finite(u32),
    Infinite,
}

impl Weight {
    pub fn reciprocal(self) -> f64 {
        match self {
            Weight::Finite(w) => 1.0 / w as f64,
            Weight::Infinite => 0.0,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Weight::Finite(w) => s.serialize_u32(*w),
            Weight::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(w) => Ok(Weight::Finite(w)),
            Raw::Text(t) if t == "inf" => Ok(Weight::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad weight {t:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub label: EdgeLabel,
    pub weight: Weight,
    /// Endpoint vertex indices.
    pub ends: [usize; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DescriptorCase {
    /// `O(r; n)` for integer `n`.
    Even,
    /// The quotient of an even or odd Heckoid orbifold by its extra symmetry.
    Quotient,
    /// Half-integer index, `p` odd.
    OddPOdd,
    /// Half-integer index, `p` even.
    OddPEven,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbifoldDescriptor<I: IntScalar = i64> {
    pub base_slope: Slope<I>,
    pub edges: Vec<Edge>,
    pub case: DescriptorCase,
    /// Number of one-dimensional singular strata (finite-weight edges).
    pub strata_count: usize,
}

impl<I: IntScalar> OrbifoldDescriptor<I> {
    fn build(base_slope: Slope<I>, edges: Vec<Edge>, case: DescriptorCase) -> Self {
        let strata_count = edges.iter().filter(|e| matches!(e.weight, Weight::Finite(_))).count();
        OrbifoldDescriptor { base_slope, edges, case, strata_count }
    }

    pub fn vertex_count(&self) -> usize {
        self.edges.iter().flat_map(|e| e.ends).max().map_or(0, |v| v + 1)
    }

    /// Edge indices at each vertex; a loop counts twice.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for (i, e) in self.edges.iter().enumerate() {
            for v in e.ends {
                out[v].push(i);
            }
        }
        out
    }

    /// At every vertex some incident weight is `∞`, or the reciprocals of the
    /// incident weights sum to more than 1.
    pub fn vertex_condition(&self) -> bool {
        self.vertices().iter().all(|inc| {
            let ws: Vec<Weight> = inc.iter().map(|&i| self.edges[i].weight).collect();
            ws.contains(&Weight::Infinite) || ws.iter().map(|w| w.reciprocal()).sum::<f64>() > 1.0
        })
    }

    pub fn weight_of(&self, label: EdgeLabel) -> Vec<Weight> {
        self.edges.iter().filter(|e| e.label == label).map(|e| e.weight).collect()
    }
}

fn edge(label: EdgeLabel, weight: Weight, a: usize, b: usize) -> Edge {
    Edge { label, weight, ends: [a, b] }
}

fn check_r<I: IntScalar>(r: &Slope<I>) -> Result<()> {
    if !r.in_unit_interval() {
        return domain(format!("orbifold descriptors need 0 < r < 1, got {r}"));
    }
    Ok(())
}

fn is_even<I: IntScalar>(x: &I) -> bool {
    x.is_even()
}

/// Two link edges cut at vertices 0 and 1: two arcs for a knot, a loop at
/// each vertex for a two-component link.
fn cut_at_two_points<I: IntScalar>(p: &I, first: (EdgeLabel, Weight), second: (EdgeLabel, Weight)) -> [Edge; 2] {
    if is_even(p) {
        [edge(first.0, first.1, 0, 0), edge(second.0, second.1, 1, 1)]
    } else {
        [edge(first.0, first.1, 0, 1), edge(second.0, second.1, 0, 1)]
    }
}

/// Four link edges cut at vertices 0..3, where the upper tunnel ends at 0, 2
/// and the lower one at 1, 3. The first edge joins 0 and 1.
fn cut_at_four_points<I: IntScalar>(p: &I, weights: [(EdgeLabel, Weight); 4]) -> [Edge; 4] {
    let ends = if is_even(p) { [(0, 1), (1, 0), (2, 3), (3, 2)] } else { [(0, 1), (1, 2), (2, 3), (3, 0)] };
    std::array::from_fn(|i| edge(weights[i].0, weights[i].1, ends[i].0, ends[i].1))
}

/// `O(r; n)` for integer `n`: the exterior of `K(r)` with the lower tunnel
/// as singular set of weight `n`.
pub fn even_orbifold_desc<I: IntScalar>(r: &Slope<I>, index: HeckoidIndex) -> Result<OrbifoldDescriptor<I>> {
    check_r(r)?;
    let Some(n) = index.integer_n() else {
        return Err(Error::WrongParity(format!("even orbifold needs an integer index, got n = {index}")));
    };
    let link = (EdgeLabel::LinkComponent, Weight::Infinite);
    let mut edges = vec![edge(EdgeLabel::TauMinus, Weight::Finite(n), 0, 1)];
    edges.extend(cut_at_two_points(r.denom(), link, link));
    Ok(OrbifoldDescriptor::build(r.clone(), edges, DescriptorCase::Even))
}

/// `K(r) ∪ τ₊ ∪ τ₋` with `τ₊ ↦ 2`, `τ₋ ↦ m`, one link edge `J ↦ ∞` and the
/// other three link edges of weight 2.
pub fn quotient_orbifold_desc<I: IntScalar>(r: &Slope<I>, index: HeckoidIndex) -> Result<OrbifoldDescriptor<I>> {
    check_r(r)?;
    let two = Weight::Finite(2);
    let mut edges = vec![edge(EdgeLabel::TauPlus, two, 0, 2), edge(EdgeLabel::TauMinus, Weight::Finite(index.m()), 1, 3)];
    let k = (EdgeLabel::LinkComponent, two);
    edges.extend(cut_at_four_points(r.denom(), [(EdgeLabel::J, Weight::Infinite), k, k, k]));
    Ok(OrbifoldDescriptor::build(r.clone(), edges, DescriptorCase::Quotient))
}

/// The slope `r̂` of the odd Heckoid orbifold with parameter `r = q/p`:
/// `(q/2)/p` or `((p+q)/2)/p` for odd `p`, `q/(p/2)` for even `p`.
pub fn odd_slope<I: IntScalar>(r: &Slope<I>) -> Result<Slope<I>> {
    check_r(r)?;
    let (q, p) = (r.numer().clone(), r.denom().clone());
    let two = I::from_i64_exact(2);
    if is_even(&p) {
        Slope::new(q, p / two)
    } else if is_even(&q) {
        Slope::new(q / two, p)
    } else {
        Slope::new((p.clone() + q) / two, p)
    }
}

/// The odd Heckoid orbifold for a half-integer index.
pub fn odd_orbifold_desc<I: IntScalar>(r: &Slope<I>, index: HeckoidIndex) -> Result<OrbifoldDescriptor<I>> {
    check_r(r)?;
    if index.is_even() {
        return Err(Error::WrongParity(format!("odd orbifold needs a half-integer index, got n = {index}")));
    }
    let hat = odd_slope(r)?;
    let (two, m) = (Weight::Finite(2), Weight::Finite(index.m()));
    let (j1, j2) = ((EdgeLabel::J1, Weight::Infinite), (EdgeLabel::J2, two));
    let (edges, case) = if is_even(r.denom()) {
        let mut edges = vec![edge(EdgeLabel::TauPlus, two, 0, 2), edge(EdgeLabel::TauMinus, m, 1, 3)];
        edges.extend(cut_at_four_points(hat.denom(), [j1, j2, j1, j2]));
        (edges, DescriptorCase::OddPEven)
    } else {
        let mut edges = vec![edge(EdgeLabel::TauMinus, m, 0, 1)];
        edges.extend(cut_at_two_points(hat.denom(), j1, j2));
        (edges, DescriptorCase::OddPOdd)
    };
    Ok(OrbifoldDescriptor::build(hat, edges, case))
}

/// The descriptor matching the parity of the index.
pub fn orbifold_desc<I: IntScalar>(r: &Slope<I>, index: HeckoidIndex) -> Result<OrbifoldDescriptor<I>> {
    if index.is_even() {
        even_orbifold_desc(r, index)
    } else {
        odd_orbifold_desc(r, index)
    }
}
