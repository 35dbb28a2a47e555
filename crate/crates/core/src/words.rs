//! Words in the free group on the upper meridian pair `a, b`, the slope
//! words `α_s`, and one-relator presentations.
//!
//! Text form uses case for inverses: `a`, `A = a⁻¹`, `b`, `B = b⁻¹`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::IntScalar;
use crate::slope::{HeckoidIndex, Slope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub fn inverse(self) -> Self {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    pub fn is_a(self) -> bool {
        matches!(self, Letter::A | Letter::AInv)
    }

    pub fn exponent(self) -> i64 {
        match self {
            Letter::A | Letter::B => 1,
            Letter::AInv | Letter::BInv => -1,
        }
    }

    fn from_parts(is_a: bool, positive: bool) -> Self {
        match (is_a, positive) {
            (true, true) => Letter::A,
            (true, false) => Letter::AInv,
            (false, true) => Letter::B,
            (false, false) => Letter::BInv,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }
}

/// A freely reduced word in `a, b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    /// Builds the free reduction of a letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        Self::from_letters((0..n).flat_map(|_| self.0.iter().copied()))
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate(&self, g: &Self) -> Self {
        g.mul(self).mul(&g.inverse())
    }

    /// Strips inverse pairs from the two ends.
    pub fn cyclic_reduce(&self) -> Self {
        let w = &self.0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == w[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        GroupWord(w[i..j].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.cyclic_reduce() == *self
    }

    /// The lexicographically least rotation of the cyclic reduction; equal
    /// for conjugate words.
    pub fn canonical_rotation(&self) -> Self {
        let w = self.cyclic_reduce().0;
        (0..w.len().max(1))
            .map(|k| {
                let mut r = w.clone();
                r.rotate_left(k.min(w.len()));
                r
            })
            .min()
            .map(GroupWord)
            .unwrap_or_default()
    }

    /// Exponent sums `(a, b)`.
    pub fn exponent_sums(&self) -> (i64, i64) {
        self.0.iter().fold((0, 0), |(sa, sb), l| if l.is_a() { (sa + l.exponent(), sb) } else { (sa, sb + l.exponent()) })
    }

    /// Whether letters alternate between `a^{±1}` and `b^{±1}`.
    pub fn alternates(&self) -> bool {
        self.0.windows(2).all(|p| p[0].is_a() != p[1].is_a())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        self.0.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Parses `abaBAB`; `1` and the empty string are the identity.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::identity());
        }
        let letters = s
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'A' => Ok(Letter::AInv),
                'b' => Ok(Letter::B),
                'B' => Ok(Letter::BInv),
                _ => Err(Error::Parse(format!("bad letter {c:?} in word {s:?}; use a, A, b, B"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_letters(letters))
    }
}

impl Serialize for GroupWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `⟨a, b | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<GroupWord>,
}

impl Presentation {
    pub fn two_generator(relators: Vec<GroupWord>) -> Self {
        Presentation { generators: vec!["a".into(), "b".into()], relators }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.to_string()).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

fn finite_pair<I: IntScalar>(s: &Slope<I>) -> Result<(I, I)> {
    if s.is_infinite() {
        return domain("slope words need a finite slope; α_∞ is killed, not represented");
    }
    Ok((s.numer().clone(), s.denom().clone()))
}

/// `ε_i = (-1)^⌊iq/p⌋` for `i = 1, …, 2p-1`, as `+1` / `-1`.
pub fn epsilon_seq<I: IntScalar>(s: &Slope<I>) -> Result<Vec<i8>> {
    let (q, p) = finite_pair(s)?;
    let two = I::from_i64_exact(2);
    let len = p.to_u64().ok_or_else(|| Error::Domain(format!("denominator {p} too large")))? * 2 - 1;
    let mut i = I::zero();
    let mut out = Vec::with_capacity(len as usize);
    for _ in 0..len {
        i = i + I::one();
        let floor = (i.clone() * q.clone()).div_floor(&p);
        out.push(if floor.mod_floor(&two).is_zero() { 1 } else { -1 });
    }
    Ok(out)
}

/// `α_s = a b^{ε₁} a^{ε₂} b^{ε₃} ⋯`, alternating and of length `2p`.
pub fn slope_word<I: IntScalar>(s: &Slope<I>) -> Result<GroupWord> {
    let eps = epsilon_seq(s)?;
    let letters = std::iter::once(Letter::A).chain(eps.iter().enumerate().map(|(i, &e)| Letter::from_parts(i % 2 == 1, e > 0)));
    Ok(GroupWord::from_letters(letters))
}

/// `⟨a, b | α_s⟩`.
pub fn link_group_presentation<I: IntScalar>(s: &Slope<I>) -> Result<Presentation> {
    Ok(Presentation::two_generator(vec![slope_word(s)?]))
}

/// `⟨a, b | α_rⁿ⟩` for integer `n`. Half-integer indices have no
/// one-relator presentation; use the trace conditions instead.
pub fn heckoid_presentation<I: IntScalar>(r: &Slope<I>, index: HeckoidIndex) -> Result<Presentation> {
    if !r.in_unit_interval() {
        return domain(format!("Heckoid presentations need 0 < r < 1, got {r}"));
    }
    let Some(n) = index.integer_n() else {
        return Err(Error::NotOneRelator(format!(
            "H(r; {index}) has half-integer index and no one-relator presentation; use the trace condition"
        )));
    };
    Ok(Presentation::two_generator(vec![slope_word(r)?.pow(n)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(s: &str) -> Slope {
        s.parse().unwrap()
    }

    fn word(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon_seq(&slope("0")).unwrap(), vec![1]);
        assert_eq!(epsilon_seq(&slope("1/2")).unwrap(), vec![1, -1, -1]);
        assert_eq!(epsilon_seq(&slope("1/3")).unwrap(), vec![1, 1, -1, -1, -1]);
        assert!(matches!(epsilon_seq(&Slope::<i64>::infinity()), Err(Error::Domain(_))));
    }

    #[test]
    fn slope_word_golden() {
        for (s, w) in [("0", "ab"), ("1", "aB"), ("1/2", "abAB"), ("1/3", "abaBAB")] {
            assert_eq!(slope_word(&slope(s)).unwrap().to_string(), w, "{s}");
        }
        assert!(slope_word(&Slope::<i64>::infinity()).is_err());
    }

    #[test]
    fn reductions() {
        assert_eq!(word("aAb"), word("b"));
        assert_eq!(word("baB").cyclic_reduce(), word("a"));
        assert_eq!(word("1"), GroupWord::identity());
        assert_eq!(GroupWord::identity().to_string(), "1");
        assert_eq!(word("abAB").inverse(), word("baBA"));
        assert_eq!(word("ab").pow(3).to_string(), "ababab");
        assert_eq!(word("a").conjugate(&word("b")), word("baB"));
        assert!("abc".parse::<GroupWord>().is_err());
    }

    #[test]
    fn canonical_rotation_is_a_conjugacy_invariant() {
        let w = word("abaBAB");
        let c = w.conjugate(&word("bA"));
        assert_ne!(c, w);
        assert_eq!(c.canonical_rotation(), w.canonical_rotation());
        assert_eq!(GroupWord::identity().canonical_rotation(), GroupWord::identity());
    }

    #[test]
    fn presentations() {
        assert_eq!(link_group_presentation(&slope("1/3")).unwrap().to_string(), "<a, b | abaBAB>");
        assert_eq!(link_group_presentation(&slope("1/2")).unwrap().relators[0], word("abAB"));
        let h = heckoid_presentation(&slope("1/3"), HeckoidIndex::from_n(2).unwrap()).unwrap();
        assert_eq!(h.relators, vec![word("abaBABabaBAB")]);
        let long = heckoid_presentation(&slope("2/9"), HeckoidIndex::from_n(2).unwrap()).unwrap();
        assert_eq!(long.relators[0].len(), 36);
        assert!(matches!(heckoid_presentation(&slope("1/3"), HeckoidIndex::from_m(5).unwrap()), Err(Error::NotOneRelator(_))));
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(json, r#"{"generators":["a","b"],"relators":["abaBABabaBAB"]}"#);
    }

    #[test]
    fn slope_words_up_to_denominator_100() {
        for p in 1..=100i64 {
            for q in 0..=p {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let s = Slope::<i64>::from_i64s(q, p).unwrap();
                let w = slope_word(&s).unwrap();
                let eps = epsilon_seq(&s).unwrap();
                assert_eq!(w.len(), 2 * p as usize);
                assert!(w.alternates());
                assert!(w.is_cyclically_reduced());
                assert_eq!(GroupWord::from_letters(w.letters().iter().copied()), w);
                let a_sum = 1 + eps.iter().skip(1).step_by(2).map(|&e| e as i64).sum::<i64>();
                let b_sum = eps.iter().step_by(2).map(|&e| e as i64).sum::<i64>();
                assert_eq!(w.exponent_sums(), (a_sum, b_sum));
                // abelianization: Z for knots (p odd), Z² for links
                if p % 2 == 1 {
                    assert_eq!((a_sum.abs(), b_sum.abs()), (1, 1), "{s}");
                } else {
                    assert_eq!((a_sum, b_sum), (0, 0), "{s}");
                }
            }
        }
    }
}
