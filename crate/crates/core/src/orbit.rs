//! The group `Λ = ⟨Γ_∞, C_r(2n)⟩` and its orbit of `∞`.
//!
//! Two independent enumerators produce orbit points: a breadth-first search
//! over generator words ([`orbit_bfs`]) and the continued-fraction pattern
//! `2c + [ε₁a, mc₁, -ε₁a⁻¹, 2c₂, …, ε_t a, mc_{2t-1}, -ε_t a⁻¹]`
//! ([`orbit_enumerate_pattern`]). Membership is a budgeted semi-decision; every
//! positive answer carries a witness that can be replayed with [`OrbitWitness::verify`].
//!
//! Words are counted in syllables: a generator raised to an integer power is
//! one letter of length one. `Γ_∞` is generated by the reflections in the Farey
//! edges `{k, ∞}` with `|k| <= reflection_span`; `C_r(2n)` by `A = P^m`, where
//! `P` is the primitive parabolic about `r`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contfrac::{cf_eval, cf_expand, seq_transform, signed_terms, ContFrac, SeqTransform};
use crate::error::{domain, Error, Result};
use crate::farey::{parabolic_unit_turning, reflection_at_infinity, FareyMatrix, Rotation};
use crate::scalar::IntScalar;
use crate::slope::{HeckoidIndex, Slope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Reflection in the edge `{k, ∞}`, `x ↦ 2k - x`.
    Reflection(i64),
    /// `A_{(r;m)}`, the parabolic about `r` by `m` units.
    Parabolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: Generator,
    pub exponent: i64,
}

impl Syllable {
    pub fn reflection(k: i64) -> Self {
        Syllable { generator: Generator::Reflection(k), exponent: 1 }
    }

    pub fn parabolic(exponent: i64) -> Self {
        Syllable { generator: Generator::Parabolic, exponent }
    }
}

/// A word `g₁ g₂ ⋯ g_l` in the generators of `Λ`, acting as the matrix
/// product (so `g_l` is applied first).
///
/// Text form: space-separated syllables `R<k>` and `A^<e>` (`A` for `A^1`),
/// e.g. `R3 R0 A^-6`; the empty word is the empty string.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GeneratorWord(Vec<Syllable>);

impl GeneratorWord {
    pub fn empty() -> Self {
        GeneratorWord(Vec::new())
    }

    /// Builds a word, merging adjacent powers of the same generator.
    pub fn from_syllables(syllables: impl IntoIterator<Item = Syllable>) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for s in syllables {
            match (out.last_mut(), s.generator) {
                (_, Generator::Parabolic) if s.exponent == 0 => {}
                (Some(last), Generator::Parabolic) if last.generator == Generator::Parabolic => {
                    last.exponent += s.exponent;
                    if last.exponent == 0 {
                        out.pop();
                    }
                }
                (_, Generator::Reflection(_)) if s.exponent % 2 == 0 => {}
                (Some(last), Generator::Reflection(k)) if last.generator == Generator::Reflection(k) => {
                    out.pop();
                }
                (_, Generator::Reflection(k)) => out.push(Syllable::reflection(k)),
                _ => out.push(s),
            }
        }
        GeneratorWord(out)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `g · self`.
    fn prepend(&self, g: Syllable) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(g);
        v.extend_from_slice(&self.0);
        GeneratorWord(v)
    }

    /// Drops trailing reflections; they all fix `∞`.
    fn trim_for_infinity(mut self) -> Self {
        while matches!(self.0.last(), Some(s) if matches!(s.generator, Generator::Reflection(_))) {
            self.0.pop();
        }
        self
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match s.generator {
                Generator::Reflection(k) => write!(f, "R{k}")?,
                Generator::Parabolic if s.exponent == 1 => write!(f, "A")?,
                Generator::Parabolic => write!(f, "A^{}", s.exponent)?,
            }
        }
        Ok(())
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |t: &str| Error::Parse(format!("bad generator syllable {t:?}"));
        let syllables = s
            .split_whitespace()
            .map(|t| {
                if let Some(k) = t.strip_prefix('R') {
                    k.parse().map(Syllable::reflection).map_err(|_| bad(t))
                } else if t == "A" {
                    Ok(Syllable::parabolic(1))
                } else if let Some(e) = t.strip_prefix("A^") {
                    e.parse().map(Syllable::parabolic).map_err(|_| bad(t))
                } else {
                    Err(bad(t))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorWord(syllables))
    }
}

impl Serialize for GeneratorWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GeneratorWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameters `(c, ε₁..ε_t, c₁..c_{2t-1})` of the continued-fraction pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternParams {
    pub c: i64,
    /// `ε_i ∈ {+1, -1}`.
    pub signs: Vec<i8>,
    pub cs: Vec<i64>,
}

impl PatternParams {
    pub fn t(&self) -> usize {
        self.signs.len()
    }

    fn is_well_formed(&self) -> bool {
        !self.signs.is_empty() && self.cs.len() == 2 * self.signs.len() - 1 && self.signs.iter().all(|e| e.abs() == 1)
    }
}

/// Proof that a slope lies in the `Λ`-orbit of `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitWitness {
    pub word: GeneratorWord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternParams>,
}

impl OrbitWitness {
    pub fn identity() -> Self {
        OrbitWitness { word: GeneratorWord::empty(), pattern: None }
    }

    /// Replays the witness: the word must carry `∞` to `target`, and the
    /// pattern (if any) must evaluate to `target`.
    pub fn verify<I: IntScalar>(&self, lambda: &Lambda<I>, target: &Slope<I>) -> bool {
        if lambda.apply_word(&self.word, &Slope::infinity()) != *target {
            return false;
        }
        match &self.pattern {
            None => true,
            Some(p) => p.is_well_formed() && cf_eval(&lambda.assemble_pattern(p)) == *target,
        }
    }
}

/// Search limits shared by the enumerators and the membership tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Maximum number of syllables in a BFS word.
    pub max_word_len: usize,
    /// Slopes with a larger denominator are pruned during BFS.
    pub max_den: u64,
    /// Maximum number of pattern blocks.
    pub t_max: usize,
    /// Bound on `|c|` and every `|c_i|` in the pattern search.
    pub c_bound: i64,
    /// Reflections in `{k, ∞}` for `|k| <= reflection_span` generate `Γ_∞`.
    pub reflection_span: i64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_word_len: 8, max_den: 500, t_max: 2, c_bound: 3, reflection_span: 3 }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        if self.max_word_len == 0 || self.max_den == 0 || self.t_max == 0 || self.c_bound <= 0 {
            return domain(format!("search budgets must be positive: {self:?}"));
        }
        if self.reflection_span < 1 {
            return domain("reflection_span must be at least 1 so that k = 0, 1 are generators");
        }
        Ok(())
    }
}

/// `Λ = ⟨Γ_∞, C_r(2n)⟩` for `0 < r < 1`.
#[derive(Clone, Debug)]
pub struct Lambda<I = i64> {
    r: Slope<I>,
    index: HeckoidIndex,
    rotation: Rotation,
    cf: Vec<I>,
    a: FareyMatrix<I>,
    a_inv: FareyMatrix<I>,
}

impl<I: IntScalar> Lambda<I> {
    pub fn new(r: Slope<I>, index: HeckoidIndex) -> Result<Self> {
        Self::with_rotation(r, index, Rotation::default())
    }

    pub fn with_rotation(r: Slope<I>, index: HeckoidIndex, rotation: Rotation) -> Result<Self> {
        if !r.in_unit_interval() {
            return domain(format!("Λ needs 0 < r < 1, got r = {r}"));
        }
        let cf = cf_expand(&r)?.terms;
        let a = parabolic_unit_turning(&r, rotation).pow(index.m() as i64);
        let a_inv = a.inverse();
        Ok(Lambda { r, index, rotation, cf, a, a_inv })
    }

    pub fn r(&self) -> &Slope<I> {
        &self.r
    }

    pub fn index(&self) -> HeckoidIndex {
        self.index
    }

    pub fn rotation(&self) -> Rotation {
        self.rotation
    }

    /// The normalized continued fraction `a` of `r`.
    pub fn cf_terms(&self) -> &[I] {
        &self.cf
    }

    /// `A_{(r;m)}`.
    pub fn parabolic(&self) -> &FareyMatrix<I> {
        &self.a
    }

    pub fn syllable_matrix(&self, s: &Syllable) -> FareyMatrix<I> {
        match s.generator {
            Generator::Reflection(k) => reflection_at_infinity(&I::from_i64_exact(k)).pow(s.exponent),
            Generator::Parabolic if s.exponent >= 0 => self.a.pow(s.exponent),
            Generator::Parabolic => self.a_inv.pow(-s.exponent),
        }
    }

    pub fn word_matrix(&self, w: &GeneratorWord) -> FareyMatrix<I> {
        w.syllables().iter().fold(FareyMatrix::identity(), |acc, s| acc.compose(&self.syllable_matrix(s)))
    }

    pub fn apply_word(&self, w: &GeneratorWord, s: &Slope<I>) -> Slope<I> {
        self.word_matrix(w).apply(s)
    }

    /// `2c + [ε₁a, mc₁, -ε₁a⁻¹, 2c₂, …, ε_t a, mc_{2t-1}, -ε_t a⁻¹]`.
    pub fn assemble_pattern(&self, p: &PatternParams) -> ContFrac<I> {
        let int = |v: i64| I::from_i64_exact(v);
        let m = int(self.index.m() as i64);
        let mut terms = Vec::new();
        for (i, &eps) in p.signs.iter().enumerate() {
            if i > 0 {
                terms.push(int(2) * int(p.cs[2 * i - 1]));
            }
            let block = signed_terms(&self.cf, eps > 0);
            terms.extend(block.iter().cloned());
            terms.push(m.clone() * int(p.cs[2 * i]));
            terms.extend(seq_transform(&block, SeqTransform::NegateReverse));
        }
        ContFrac::new(int(2) * int(p.c), terms)
    }

    /// The generator word realizing a pattern:
    /// `T(2c) · G₁ · T(2c₂) · G₂ ⋯ G_t` applied to `∞`, where `T(2c) = R_c R_0`
    /// and `G_i` is the parabolic about `ε_i r` by `(-1)^k m c_{2i-1}` units
    /// (`k` the length of `a`), i.e. `A^{±c}` or its `R_0`-conjugate.
    pub fn pattern_word(&self, p: &PatternParams) -> GeneratorWord {
        let parity = if self.cf.len().is_multiple_of(2) { 1 } else { -1 };
        let turn = self.rotation.sign();
        let mut syl = Vec::new();
        let shift = |syl: &mut Vec<Syllable>, c: i64| {
            if c != 0 {
                syl.push(Syllable::reflection(c));
                syl.push(Syllable::reflection(0));
            }
        };
        shift(&mut syl, p.c);
        for (i, &eps) in p.signs.iter().enumerate() {
            if i > 0 {
                shift(&mut syl, p.cs[2 * i - 1]);
            }
            let e = turn * parity * p.cs[2 * i];
            if eps > 0 {
                syl.push(Syllable::parabolic(e));
            } else {
                syl.push(Syllable::reflection(0));
                syl.push(Syllable::parabolic(-e));
                syl.push(Syllable::reflection(0));
            }
        }
        GeneratorWord::from_syllables(syl).trim_for_infinity()
    }

    fn pattern_witness(&self, p: PatternParams) -> OrbitWitness {
        OrbitWitness { word: self.pattern_word(&p), pattern: Some(p) }
    }

    /// All `A^e(s)` with `e != 0` and denominator at most `max_den`, in
    /// increasing `e`. Uses `A^e = I + e·σm·N`, so for `s = x/y` the image is
    /// `(x + e q W) / (y + e p W)` with `W = σm(px - qy)`.
    fn parabolic_images(&self, s: &Slope<I>, max_den: &I) -> Vec<(i64, Slope<I>)> {
        let (q, p) = (self.r.numer().clone(), self.r.denom().clone());
        let (x, y) = (s.numer().clone(), s.denom().clone());
        let sigma_m = I::from_i64_exact(self.rotation.sign() * self.index.m() as i64);
        let w = sigma_m * (p.clone() * x.clone() - q.clone() * y.clone());
        if w.is_zero() {
            return Vec::new();
        }
        // |y + e·k| <= D with k = pW.
        let k = p * w.clone();
        let (lo_num, hi_num) = (-max_den.clone() - y.clone(), max_den.clone() - y.clone());
        let (lo, hi) =
            if k.is_positive() { (ceil_div(&lo_num, &k), hi_num.div_floor(&k)) } else { (ceil_div(&hi_num, &k), lo_num.div_floor(&k)) };
        let (Some(lo), Some(hi)) = (lo.to_i64(), hi.to_i64()) else {
            return Vec::new();
        };
        (lo..=hi)
            .filter(|&e| e != 0)
            .map(|e| {
                let ei = I::from_i64_exact(e);
                let num = x.clone() + ei.clone() * q.clone() * w.clone();
                let den = y.clone() + ei * k.clone();
                (e, Slope::from_pair(num, den))
            })
            .collect()
    }

    fn neighbours(&self, s: &Slope<I>, word: &GeneratorWord, budget: &SearchBudget, max_den: &I) -> Vec<(Slope<I>, GeneratorWord)> {
        let first = word.syllables().first().map(|g| g.generator);
        let mut out = Vec::new();
        for k in -budget.reflection_span..=budget.reflection_span {
            if first == Some(Generator::Reflection(k)) {
                continue;
            }
            let image = reflection_at_infinity(&I::from_i64_exact(k)).apply(s);
            if image.denom() <= max_den {
                out.push((image, word.prepend(Syllable::reflection(k))));
            }
        }
        if first != Some(Generator::Parabolic) {
            for (e, image) in self.parabolic_images(s, max_den) {
                out.push((image, word.prepend(Syllable::parabolic(e))));
            }
        }
        out
    }

    /// Layered BFS from `start`. Returns every slope reached with a minimal
    /// word `w` such that `w · start = slope`; stops early once `target` is
    /// reached.
    fn explore(
        &self,
        start: &Slope<I>,
        budget: &SearchBudget,
        max_den: &I,
        target: Option<&Slope<I>>,
    ) -> BTreeMap<Slope<I>, GeneratorWord> {
        let mut seen = BTreeMap::new();
        seen.insert(start.clone(), GeneratorWord::empty());
        if target == Some(start) {
            return seen;
        }
        let mut frontier = vec![(start.clone(), GeneratorWord::empty())];
        for _ in 0..budget.max_word_len {
            let expanded: Vec<Vec<(Slope<I>, GeneratorWord)>> =
                frontier.par_iter().map(|(s, w)| self.neighbours(s, w, budget, max_den)).collect();
            let mut next = Vec::new();
            for (s, w) in expanded.into_iter().flatten() {
                if seen.contains_key(&s) {
                    continue;
                }
                seen.insert(s.clone(), w.clone());
                if target == Some(&s) {
                    return seen;
                }
                next.push((s, w));
            }
            if next.is_empty() {
                break;
            }
            next.sort_by(|a, b| a.0.cmp(&b.0));
            frontier = next;
        }
        seen
    }

    /// Pattern parameters in enumeration order: `t` ascending, signs with `+`
    /// first, then `c₁, …, c_{2t-1}` and finally `c`, each from `-bound` to
    /// `bound`.
    fn pattern_params(t_max: usize, bound: i64) -> impl Iterator<Item = PatternParams> {
        (1..=t_max).flat_map(move |t| {
            let sign_vectors =
                (0..1u64 << t).map(move |mask| (0..t).map(|i| if mask >> (t - 1 - i) & 1 == 0 { 1i8 } else { -1 }).collect::<Vec<_>>());
            sign_vectors.flat_map(move |signs| {
                odometer(2 * t - 1, bound).flat_map(move |cs| {
                    let signs = signs.clone();
                    (-bound..=bound).map(move |c| PatternParams { c, signs: signs.clone(), cs: cs.clone() })
                })
            })
        })
    }
}

fn ceil_div<I: IntScalar>(a: &I, b: &I) -> I {
    -((-a.clone()).div_floor(b))
}

/// All vectors in `[-bound, bound]^len`, last coordinate fastest.
fn odometer(len: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    let width = (2 * bound + 1) as u64;
    let total = width.checked_pow(len as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut idx| {
        let mut v = vec![0i64; len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % width) as i64 - bound;
            idx /= width;
        }
        v
    })
}

/// The BFS orbit of `∞`, canonically ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSet<I = i64> {
    entries: BTreeMap<Slope<I>, OrbitWitness>,
}

impl<I: IntScalar> OrbitSet<I> {
    pub fn contains(&self, s: &Slope<I>) -> bool {
        self.entries.contains_key(s)
    }

    pub fn witness(&self, s: &Slope<I>) -> Option<&OrbitWitness> {
        self.entries.get(s)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Slope<I>, &OrbitWitness)> {
        self.entries.iter()
    }

    pub fn slopes(&self) -> impl Iterator<Item = &Slope<I>> {
        self.entries.keys()
    }
}

/// Slopes reachable from `∞` by words of at most `max_word_len` syllables
/// without passing through a denominator above `max_den`.
pub fn orbit_bfs<I: IntScalar>(lambda: &Lambda<I>, budget: &SearchBudget) -> Result<OrbitSet<I>> {
    budget.validate()?;
    let max_den = I::from_u64(budget.max_den).ok_or_else(|| Error::Domain("max_den too large".into()))?;
    let seen = lambda.explore(&Slope::infinity(), budget, &max_den, None);
    let entries = seen.into_iter().map(|(s, word)| (s, OrbitWitness { word, pattern: None })).collect();
    Ok(OrbitSet { entries })
}

/// Evaluates the pattern over `t <= t_max` and `|c|, |c_i| <= c_bound` and all
/// sign vectors; each slope keeps the first parameters that produce it.
pub fn orbit_enumerate_pattern<I: IntScalar>(lambda: &Lambda<I>, t_max: usize, c_bound: i64) -> Result<OrbitSet<I>> {
    if t_max == 0 || c_bound < 0 {
        return domain("pattern search needs t_max >= 1 and c_bound >= 0");
    }
    let mut entries = BTreeMap::new();
    for p in Lambda::<I>::pattern_params(t_max, c_bound) {
        let s = cf_eval(&lambda.assemble_pattern(&p));
        entries.entry(s).or_insert_with(|| lambda.pattern_witness(p));
    }
    Ok(OrbitSet { entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Membership {
    Member { witness: OrbitWitness },
    NotFoundWithinBudget,
}

impl Membership {
    pub fn witness(&self) -> Option<&OrbitWitness> {
        match self {
            Membership::Member { witness } => Some(witness),
            Membership::NotFoundWithinBudget => None,
        }
    }

    pub fn is_member(&self) -> bool {
        self.witness().is_some()
    }
}

/// Semi-decides `s ∈ Λ·∞`: a targeted BFS (with `max_den` raised to the
/// denominator of `s`) followed by the bounded pattern search.
pub fn is_in_orbit<I: IntScalar>(s: &Slope<I>, lambda: &Lambda<I>, budget: &SearchBudget) -> Result<Membership> {
    budget.validate()?;
    if s.is_infinite() {
        return Ok(Membership::Member { witness: OrbitWitness::identity() });
    }
    let mut max_den = I::from_u64(budget.max_den).ok_or_else(|| Error::Domain("max_den too large".into()))?;
    if *s.denom() > max_den {
        max_den = s.denom().clone();
    }
    let seen = lambda.explore(&Slope::infinity(), budget, &max_den, Some(s));
    if let Some(word) = seen.get(s) {
        return Ok(Membership::Member { witness: OrbitWitness { word: word.clone(), pattern: None } });
    }
    for p in Lambda::<I>::pattern_params(budget.t_max, budget.c_bound) {
        if cf_eval(&lambda.assemble_pattern(&p)) == *s {
            return Ok(Membership::Member { witness: lambda.pattern_witness(p) });
        }
    }
    Ok(Membership::NotFoundWithinBudget)
}

/// Which hypothesis produced an epimorphism `G(K(s)) → H(r; n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpiRoute {
    /// `s` itself lies in the orbit of `∞`.
    ViaS,
    /// `s + 1` lies in the orbit of `∞`.
    ViaSPlusOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Epimorphism<I: IntScalar = i64> {
    Yes { route: EpiRoute, orbit_slope: Slope<I>, witness: OrbitWitness },
    NotFoundWithinBudget,
}

/// Tests `s` and then `s + 1` for membership in `Λ·∞`.
pub fn admits_epimorphism<I: IntScalar>(s: &Slope<I>, lambda: &Lambda<I>, budget: &SearchBudget) -> Result<Epimorphism<I>> {
    for (route, candidate) in [(EpiRoute::ViaS, s.clone()), (EpiRoute::ViaSPlusOne, s.add_integer(&I::one()))] {
        if let Membership::Member { witness } = is_in_orbit(&candidate, lambda, budget)? {
            return Ok(Epimorphism::Yes { route, orbit_slope: candidate, witness });
        }
    }
    Ok(Epimorphism::NotFoundWithinBudget)
}

/// Searches for `g ∈ Λ` with `g · from = to` (BFS from `from`).
pub fn relate<I: IntScalar>(from: &Slope<I>, to: &Slope<I>, lambda: &Lambda<I>, budget: &SearchBudget) -> Result<Option<GeneratorWord>> {
    budget.validate()?;
    let mut max_den = I::from_u64(budget.max_den).ok_or_else(|| Error::Domain("max_den too large".into()))?;
    for s in [from, to] {
        if *s.denom() > max_den {
            max_den = s.denom().clone();
        }
    }
    Ok(lambda.explore(from, budget, &max_den, Some(to)).remove(to))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(s: &str) -> Slope {
        s.parse().unwrap()
    }

    fn lambda(r: &str, m: u32) -> Lambda {
        Lambda::new(slope(r), HeckoidIndex::from_m(m).unwrap()).unwrap()
    }

    fn budget(len: usize, den: u64) -> SearchBudget {
        SearchBudget { max_word_len: len, max_den: den, ..SearchBudget::default() }
    }

    #[test]
    fn word_normal_form_and_text() {
        let w = GeneratorWord::from_syllables([
            Syllable::reflection(3),
            Syllable::reflection(0),
            Syllable::reflection(0),
            Syllable::parabolic(2),
            Syllable::parabolic(-2),
            Syllable::parabolic(-6),
        ]);
        assert_eq!(w.to_string(), "R3 A^-6");
        assert_eq!("R3 A^-6".parse::<GeneratorWord>().unwrap(), w);
        assert_eq!("A".parse::<GeneratorWord>().unwrap(), GeneratorWord::from_syllables([Syllable::parabolic(1)]));
        assert_eq!("".parse::<GeneratorWord>().unwrap(), GeneratorWord::empty());
        assert!("B2".parse::<GeneratorWord>().is_err());
    }

    #[test]
    fn lambda_rejects_r_outside_unit_interval() {
        let idx = HeckoidIndex::from_m(4).unwrap();
        assert!(Lambda::new(slope("0"), idx).is_err());
        assert!(Lambda::new(slope("3/2"), idx).is_err());
        assert!(Lambda::<i64>::new(Slope::infinity(), idx).is_err());
    }

    #[test]
    fn bfs_examples() {
        let l = lambda("2/3", 4);
        let orbit = orbit_bfs(&l, &budget(1, 100)).unwrap();
        assert_eq!(orbit.witness(&Slope::infinity()).unwrap().word.len(), 0);
        let w = orbit.witness(&slope("25/36")).unwrap();
        assert_eq!(w.word.len(), 1);
        assert!(w.verify(&l, &slope("25/36")));
        assert!(matches!(orbit_bfs(&l, &budget(0, 100)), Err(Error::Domain(_))));
        assert!(matches!(orbit_bfs(&l, &budget(3, 0)), Err(Error::Domain(_))));
    }

    #[test]
    fn bfs_witnesses_replay() {
        let l = lambda("2/5", 4);
        let orbit = orbit_bfs(&l, &budget(3, 300)).unwrap();
        assert!(orbit.len() > 10);
        for (s, w) in orbit.iter() {
            assert!(w.verify(&l, s), "{s} {}", w.word);
            assert!(w.word.len() <= 3);
            assert!(s.is_infinite() || *s.denom() <= 300);
        }
    }

    #[test]
    fn gamma_infinity_closure_in_bfs() {
        let l = lambda("2/3", 4);
        let orbit = orbit_bfs(&l, &budget(5, 400)).unwrap();
        let shallow = orbit_bfs(&l, &budget(3, 400)).unwrap();
        for s in shallow.slopes() {
            assert!(orbit.contains(&s.neg()), "-{s}");
            assert!(orbit.contains(&s.add_integer(&2)), "{s}+2");
            assert!(orbit.contains(&s.neg().add_integer(&2)), "2-{s}");
        }
    }

    #[test]
    fn pattern_examples() {
        let l = lambda("2/3", 4);
        let p = PatternParams { c: 0, signs: vec![1], cs: vec![1] };
        assert_eq!(l.assemble_pattern(&p).to_string(), "[1,2,4,-2,-1]");
        assert_eq!(cf_eval(&l.assemble_pattern(&p)), slope("25/36"));
        let p9 = PatternParams { c: 0, signs: vec![1], cs: vec![9] };
        assert_eq!(cf_eval(&l.assemble_pattern(&p9)), slope("217/324"));
        assert!(l.pattern_witness(p9).verify(&l, &slope("217/324")));
        let zero = PatternParams { c: 2, signs: vec![-1], cs: vec![0] };
        assert_eq!(cf_eval(&l.assemble_pattern(&zero)), Slope::infinity());
    }

    #[test]
    fn pattern_words_replay_for_all_small_parameters() {
        for (r, m) in [("1/3", 4), ("2/3", 4), ("1/3", 3), ("2/5", 4), ("9/56", 5), ("2/9", 6)] {
            for rotation in [Rotation::Clockwise, Rotation::Counterclockwise] {
                let l = Lambda::with_rotation(slope(r), HeckoidIndex::from_m(m).unwrap(), rotation).unwrap();
                for p in Lambda::<i64>::pattern_params(2, 2) {
                    let s = cf_eval(&l.assemble_pattern(&p));
                    let w = l.pattern_witness(p.clone());
                    assert!(w.verify(&l, &s), "r={r} m={m} {p:?} word {}", w.word);
                }
            }
        }
    }

    #[test]
    fn pattern_zero_c1_lies_in_bfs_orbit() {
        let l = lambda("2/5", 4);
        let orbit = orbit_bfs(&l, &budget(4, 500)).unwrap();
        for c in -3..=3 {
            for sign in [1i8, -1] {
                let p = PatternParams { c, signs: vec![sign], cs: vec![0] };
                assert!(orbit.contains(&cf_eval(&l.assemble_pattern(&p))));
            }
        }
    }

    #[test]
    fn membership_examples() {
        let l = lambda("2/3", 4);
        let small = budget(2, 50);
        assert_eq!(is_in_orbit(&Slope::infinity(), &l, &small).unwrap(), Membership::Member { witness: OrbitWitness::identity() });
        let m = is_in_orbit(&slope("25/36"), &l, &small).unwrap();
        assert!(m.witness().unwrap().verify(&l, &slope("25/36")));
        let tiny = SearchBudget { max_word_len: 2, max_den: 50, t_max: 1, c_bound: 1, reflection_span: 1 };
        assert_eq!(is_in_orbit(&slope("1/3"), &l, &tiny).unwrap(), Membership::NotFoundWithinBudget);
        // found by the pattern search when the BFS is too shallow
        let shallow = SearchBudget { max_word_len: 1, max_den: 10, t_max: 2, c_bound: 3, reflection_span: 1 };
        let s = cf_eval(&l.assemble_pattern(&PatternParams { c: 1, signs: vec![-1, 1], cs: vec![2, -1, 1] }));
        let found = is_in_orbit(&s, &l, &shallow).unwrap();
        let w = found.witness().unwrap();
        assert!(w.pattern.is_some());
        assert!(w.verify(&l, &s));
    }

    #[test]
    fn epimorphism_routes() {
        let l = lambda("2/3", 4);
        let b = budget(2, 100);
        match admits_epimorphism(&slope("25/36"), &l, &b).unwrap() {
            Epimorphism::Yes { route, orbit_slope, .. } => {
                assert_eq!(route, EpiRoute::ViaS);
                assert_eq!(orbit_slope, slope("25/36"));
            }
            other => panic!("{other:?}"),
        }
        match admits_epimorphism(&slope("-11/36"), &l, &b).unwrap() {
            Epimorphism::Yes { route, orbit_slope, witness } => {
                assert_eq!(route, EpiRoute::ViaSPlusOne);
                assert_eq!(orbit_slope, slope("25/36"));
                assert!(witness.verify(&l, &orbit_slope));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(admits_epimorphism(&Slope::infinity(), &l, &b).unwrap(), Epimorphism::Yes { route: EpiRoute::ViaS, .. }));
    }

    #[test]
    fn relate_finds_gamma_infinity_moves() {
        let l = lambda("1/3", 4);
        let b = budget(2, 100);
        let w = relate(&slope("13/36"), &slope("59/36"), &l, &b).unwrap().unwrap();
        assert_eq!(l.apply_word(&w, &slope("13/36")), slope("59/36"));
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn odometer_covers_the_box() {
        let all: Vec<_> = odometer(2, 1).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![-1, -1]);
        assert_eq!(all[8], vec![1, 1]);
    }
}
