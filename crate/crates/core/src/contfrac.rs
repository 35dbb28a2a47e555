//! Continued fractions with arbitrary integer partial quotients.
//!
//! A [`ContFrac`] `c + [a1, ..., ak]` denotes `c + 1/(a1 + 1/(a2 + ... + 1/ak))`.
//! Evaluation goes through the matrix product
//! `T(c) · [[0,1],[1,a1]] ⋯ [[0,1],[1,ak]]` applied to `0`, so zero and
//! negative quotients never divide by zero.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::mat2::Mat2;
use crate::scalar::IntScalar;
use crate::slope::Slope;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContFrac<I = i64> {
    pub whole: I,
    pub terms: Vec<I>,
}

impl<I: IntScalar> ContFrac<I> {
    pub fn new(whole: I, terms: Vec<I>) -> Self {
        ContFrac { whole, terms }
    }

    /// A pure fraction `[a1, ..., ak]` with zero integer part.
    pub fn pure(terms: Vec<I>) -> Self {
        ContFrac { whole: I::zero(), terms }
    }

    /// Normalized form: zero integer part, all quotients positive, last one at
    /// least 2.
    pub fn is_normalized(&self) -> bool {
        self.whole.is_zero()
            && !self.terms.is_empty()
            && self.terms.iter().all(|a| *a >= I::one())
            && self.terms.last().is_some_and(|a| *a >= I::from_i64_exact(2))
    }
}

/// Normalized expansion of a slope strictly between 0 and 1.
pub fn cf_expand<I: IntScalar>(s: &Slope<I>) -> Result<ContFrac<I>> {
    if !s.in_unit_interval() {
        return domain(format!("continued fraction expansion needs 0 < s < 1, got {s}"));
    }
    let (mut num, mut den) = (s.numer().clone(), s.denom().clone());
    let mut terms = Vec::new();
    while !num.is_zero() {
        let (a, rem) = den.div_rem(&num);
        terms.push(a);
        den = num;
        num = rem;
    }
    Ok(ContFrac::pure(terms))
}

/// The matrix `T(whole) · Π [[0,1],[1,a]]`; its action on `0` is the value.
pub fn cf_matrix<I: IntScalar>(f: &ContFrac<I>) -> Mat2<I> {
    let shift = Mat2::new(I::one(), f.whole.clone(), I::zero(), I::one());
    f.terms.iter().fold(shift, |acc, a| &acc * &Mat2::new(I::zero(), I::one(), I::one(), a.clone()))
}

/// Value of a continued fraction with any integer quotients. The empty
/// quotient list evaluates to `∞` whatever the integer part.
pub fn cf_eval<I: IntScalar>(f: &ContFrac<I>) -> Slope<I> {
    if f.terms.is_empty() {
        return Slope::infinity();
    }
    let m = cf_matrix(f);
    // M·0 = b/d; the determinant is ±1 so (b, d) is never (0, 0).
    Slope::from_pair(m.b, m.d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeqTransform {
    /// `a⁻¹`: reverse the order.
    Reverse,
    /// `-a`: negate every term.
    Negate,
    /// `-a⁻¹`: both.
    NegateReverse,
}

pub fn seq_transform<I: IntScalar>(terms: &[I], kind: SeqTransform) -> Vec<I> {
    match kind {
        SeqTransform::Reverse => terms.iter().rev().cloned().collect(),
        SeqTransform::Negate => terms.iter().map(|a| -a.clone()).collect(),
        SeqTransform::NegateReverse => terms.iter().rev().map(|a| -a.clone()).collect(),
    }
}

/// `ε·a` for a sign `ε = ±1`.
pub(crate) fn signed_terms<I: IntScalar>(terms: &[I], positive: bool) -> Vec<I> {
    if positive {
        terms.to_vec()
    } else {
        seq_transform(terms, SeqTransform::Negate)
    }
}

impl<I: IntScalar> fmt::Display for ContFrac<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.whole.is_zero() {
            write!(f, "{}+", self.whole)?;
        }
        write!(f, "[")?;
        for (i, a) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl<I: IntScalar> FromStr for ContFrac<I> {
    type Err = Error;

    /// Parses `c+[a1,a2,...]`; the `0+` prefix may be omitted.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("bad continued fraction {s:?}: expected c+[a1,a2,...]"));
        let open = s.find('[').ok_or_else(bad)?;
        let body = s[open..].strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let whole = match &s[..open] {
            "" => I::zero(),
            head => {
                let head = head.strip_suffix('+').ok_or_else(bad)?;
                I::from_str(head).map_err(|_| bad())?
            }
        };
        let terms = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',').map(|t| I::from_str(t).map_err(|_| bad())).collect::<Result<Vec<_>>>()?
        };
        Ok(ContFrac { whole, terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn slope(s: &str) -> Slope {
        s.parse().unwrap()
    }

    fn cf(s: &str) -> ContFrac {
        s.parse().unwrap()
    }

    /// Independent oracle: forward continuant recursion
    /// `h_k = a_k h_{k-1} + h_{k-2}` on `[a1..ak]`, value `k_k / h_k`
    /// read off as `1/(a1 + ...)`, in i128 with no matrix code.
    fn continuant_eval(whole: i64, terms: &[i64]) -> Option<(i128, i128)> {
        if terms.is_empty() {
            return None;
        }
        // h/k continuants of X = a1 + 1/(a2 + ...); then [a1..ak] = 1/X = k/h.
        let (mut h_prev, mut h) = (0i128, 1i128);
        let (mut k_prev, mut k) = (1i128, 0i128);
        for &a in terms {
            let a = a as i128;
            (h_prev, h) = (h, a * h + h_prev);
            (k_prev, k) = (k, a * k + k_prev);
        }
        let (num, den) = (k, h);
        Some((num + whole as i128 * den, den))
    }

    #[test]
    fn expand_golden_values() {
        assert_eq!(cf_expand(&slope("2/9")).unwrap(), cf("[4,2]"));
        assert_eq!(cf_expand(&slope("9/56")).unwrap(), cf("[6,4,2]"));
        assert_eq!(cf_expand(&slope("1/2")).unwrap(), cf("[2]"));
        assert_eq!(cf_expand(&slope("2/3")).unwrap(), cf("[1,2]"));
    }

    #[test]
    fn expand_rejects_out_of_range() {
        for s in ["0", "1", "-1/3", "4/3", "inf"] {
            assert!(matches!(cf_expand(&slope(s)), Err(Error::Domain(_))), "{s}");
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cf_eval(&cf("[4,2]")), slope("2/9"));
        assert_eq!(cf_eval(&cf("[1,2,4,-2,-1]")), slope("25/36"));
        assert_eq!(cf_eval(&cf("[1,2,36,-2,-1]")), slope("217/324"));
        assert_eq!(cf_eval(&cf("5+[]")), Slope::infinity());
        assert_eq!(cf_eval(&cf("-3+[]")), Slope::infinity());
        // [0] = 1/0
        assert_eq!(cf_eval(&cf("2+[0]")), Slope::infinity());
    }

    #[test]
    fn eval_agrees_with_continuant_oracle() {
        for (whole, terms) in [(0, vec![1, 2, 4, -2, -1]), (0, vec![1, 2, 36, -2, -1]), (4, vec![3, 0, 2]), (-2, vec![-1, 5, 0, 0, 7])] {
            let (n, d) = continuant_eval(whole, &terms).unwrap();
            let want = Slope::<i128>::new(n, d).unwrap();
            let got = cf_eval(&ContFrac::new(whole as i128, terms.iter().map(|&a| a as i128).collect()));
            assert_eq!(got, want, "{whole} {terms:?}");
        }
    }

    #[test]
    fn transforms() {
        assert_eq!(seq_transform(&[6i64, 4, 2], SeqTransform::Reverse), vec![2, 4, 6]);
        assert_eq!(seq_transform(&[4i64, 2], SeqTransform::Negate), vec![-4, -2]);
        assert_eq!(seq_transform(&[1i64, 2], SeqTransform::NegateReverse), vec![-2, -1]);
    }

    #[test]
    fn text_round_trip() {
        for s in ["[4,2]", "2+[1,2,4,-2,-1]", "-6+[]", "[]"] {
            assert_eq!(cf(s).to_string(), s);
        }
        assert_eq!(cf("0+[4,2]").to_string(), "[4,2]");
        assert!("[4,x]".parse::<ContFrac>().is_err());
        assert!("3[4]".parse::<ContFrac>().is_err());
    }

    #[test]
    fn round_trip_all_small_denominators() {
        for p in 2..=200i64 {
            for q in 1..p {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let s = Slope::<i64>::from_i64s(q, p).unwrap();
                let f = cf_expand(&s).unwrap();
                assert!(f.is_normalized());
                assert_eq!(cf_eval(&f), s);
            }
        }
    }

    proptest! {
        #[test]
        fn zero_quotient_contracts(
            head in prop::collection::vec(-6i64..=6, 0..4),
            x in -6i64..=6,
            y in -6i64..=6,
            tail in prop::collection::vec(-6i64..=6, 0..4),
            whole in -3i64..=3,
        ) {
            let mut long = head.clone();
            long.extend([x, 0, y]);
            long.extend(tail.iter().copied());
            let mut short = head;
            short.push(x + y);
            short.extend(tail);
            prop_assert_eq!(cf_eval(&ContFrac::new(whole, long)), cf_eval(&ContFrac::new(whole, short)));
        }

        #[test]
        fn global_sign_of_product_is_irrelevant(terms in prop::collection::vec(-9i64..=9, 1..6), whole in -4i64..=4) {
            let f = ContFrac::new(whole, terms);
            let m = cf_matrix(&f);
            prop_assert_eq!(Slope::new(-m.b, -m.d).unwrap(), cf_eval(&f));
        }

        #[test]
        fn eval_matches_oracle(terms in prop::collection::vec(-9i64..=9, 1..7), whole in -4i64..=4) {
            let (n, d) = continuant_eval(whole, &terms).unwrap();
            let got = cf_eval(&ContFrac::new(whole as i128, terms.iter().map(|&a| a as i128).collect()));
            prop_assert_eq!(got, Slope::<i128>::new(n, d).unwrap());
        }
    }
}
