//! Exact slopes in `Q ∪ {∞}` and the Heckoid index `m = 2n`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::scalar::IntScalar;

/// A point of `Q ∪ {∞}` stored as a reduced pair `num/den` with `den >= 0`.
///
/// Infinity is the single pair `1/0`; the sign of a finite slope lives in the
/// numerator. Slopes are totally ordered by value with `∞` last, which gives
/// orbit sets a canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slope<I = i64> {
    num: I,
    den: I,
}

impl<I: IntScalar> Slope<I> {
    /// Builds `num/den`, reducing and normalizing the sign. Any `x/0` with
    /// `x != 0` is `∞`; `0/0` is rejected.
    pub fn new(num: I, den: I) -> Result<Self> {
        if den.is_zero() {
            if num.is_zero() {
                return domain("0/0 is not a slope");
            }
            return Ok(Self::infinity());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g.clone(), den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(Slope { num, den })
    }

    /// Slope from a projective pair that is known not to be `(0, 0)`.
    pub(crate) fn from_pair(num: I, den: I) -> Self {
        Self::new(num, den).expect("projective pair is nonzero")
    }

    pub fn infinity() -> Self {
        Slope { num: I::one(), den: I::zero() }
    }

    pub fn integer(n: I) -> Self {
        Slope { num: n, den: I::one() }
    }

    pub fn from_i64s(num: i64, den: i64) -> Result<Self> {
        Self::new(I::from_i64_exact(num), I::from_i64_exact(den))
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn numer(&self) -> &I {
        &self.num
    }

    pub fn denom(&self) -> &I {
        &self.den
    }

    /// `self + k` for an integer `k`; `∞` is fixed.
    pub fn add_integer(&self, k: &I) -> Self {
        if self.is_infinite() {
            return self.clone();
        }
        Slope { num: self.num.clone() + k.clone() * self.den.clone(), den: self.den.clone() }
    }

    pub fn neg(&self) -> Self {
        if self.is_infinite() {
            return self.clone();
        }
        Slope { num: -self.num.clone(), den: self.den.clone() }
    }

    /// Whether `0 < self < 1`.
    pub fn in_unit_interval(&self) -> bool {
        !self.is_infinite() && self.num.is_positive() && self.num < self.den
    }

    /// Converts between integer backends. Fails only if the target type
    /// cannot hold the entries.
    pub fn convert<J: IntScalar>(&self) -> Result<Slope<J>> {
        let conv = |x: &I| J::from_str(&x.to_string()).map_err(|_| Error::Domain(format!("{x} does not fit the target integer type")));
        Ok(Slope { num: conv(&self.num)?, den: conv(&self.den)? })
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            return f64::INFINITY;
        }
        self.num.to_f64().unwrap_or(f64::NAN) / self.den.to_f64().unwrap_or(f64::NAN)
    }
}

impl<I: IntScalar> PartialOrd for Slope<I> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<I: IntScalar> Ord for Slope<I> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (self.num.clone() * other.den.clone()).cmp(&(other.num.clone() * self.den.clone())),
        }
    }
}

impl<I: IntScalar> fmt::Display for Slope<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl<I: IntScalar> FromStr for Slope<I> {
    type Err = Error;

    /// Accepts `q/p`, a bare integer `q`, and `inf` / `∞` / `1/0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "∞" | "infinity" | "Inf") {
            return Ok(Self::infinity());
        }
        let parse = |t: &str| I::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad integer {t:?} in slope {s:?}")));
        match s.split_once('/') {
            Some((n, d)) => Self::new(parse(n)?, parse(d)?),
            None if !s.is_empty() => Ok(Self::integer(parse(s)?)),
            None => Err(Error::Parse("empty slope".into())),
        }
    }
}

impl<I: IntScalar> serde::Serialize for Slope<I> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de, I: IntScalar> serde::Deserialize<'de> for Slope<I> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl serde::Serialize for HeckoidIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The Heckoid index stored as `m = 2n >= 3`: `n` is an integer when `m` is
/// even and a half-integer when `m` is odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeckoidIndex {
    two_n: u32,
}

impl HeckoidIndex {
    pub fn from_m(m: u32) -> Result<Self> {
        if m < 3 {
            return domain(format!("Heckoid index needs m = 2n >= 3, got m = {m}"));
        }
        Ok(HeckoidIndex { two_n: m })
    }

    /// `n` as an integer; `Heckoid(n)` for `n >= 2`.
    pub fn from_n(n: u32) -> Result<Self> {
        Self::from_m(n.checked_mul(2).ok_or_else(|| Error::Domain("index too large".into()))?)
    }

    /// `m = 2n`.
    pub fn m(&self) -> u32 {
        self.two_n
    }

    /// True for integer `n` (even Heckoid data).
    pub fn is_even(&self) -> bool {
        self.two_n.is_multiple_of(2)
    }

    /// `n` when it is an integer.
    pub fn integer_n(&self) -> Option<u32> {
        self.is_even().then_some(self.two_n / 2)
    }
}

impl fmt::Display for HeckoidIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_even() {
            write!(f, "{}", self.two_n / 2)
        } else {
            write!(f, "{}/2", self.two_n)
        }
    }
}

impl FromStr for HeckoidIndex {
    type Err = Error;

    /// Parses `n` as `"2"`, `"5/2"` or the exact-half decimal `"2.5"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad Heckoid index {s:?}: expected an integer or half-integer n > 1"));
        let m = if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => num.checked_mul(2).ok_or_else(bad)?,
                "2" => num,
                _ => return Err(bad()),
            }
        } else if let Some((whole, frac)) = s.split_once('.') {
            let whole: u32 = whole.parse().map_err(|_| bad())?;
            let frac = frac.trim_end_matches('0');
            match frac {
                "" => whole.checked_mul(2).ok_or_else(bad)?,
                "5" => whole.checked_mul(2).and_then(|w| w.checked_add(1)).ok_or_else(bad)?,
                _ => return Err(bad()),
            }
        } else {
            let n: u32 = s.parse().map_err(|_| bad())?;
            n.checked_mul(2).ok_or_else(bad)?
        };
        Self::from_m(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn reduces_and_normalizes_sign() {
        let s = Slope::<i64>::new(6, -4).unwrap();
        assert_eq!((*s.numer(), *s.denom()), (-3, 2));
        assert_eq!(Slope::<i64>::new(-5, 0).unwrap(), Slope::infinity());
        assert!(Slope::<i64>::new(0, 0).is_err());
        assert_eq!(Slope::<i64>::new(0, 7).unwrap().to_string(), "0/1");
    }

    #[test]
    fn text_format() {
        for (text, shown) in [("2/9", "2/9"), ("inf", "inf"), ("-13/36", "-13/36"), ("3", "3/1"), ("4/6", "2/3")] {
            let s: Slope = text.parse().unwrap();
            assert_eq!(s.to_string(), shown);
        }
        assert!("1/x".parse::<Slope>().is_err());
        assert!("".parse::<Slope>().is_err());
        let big: Slope<BigInt> = "217/324".parse().unwrap();
        assert_eq!(big.convert::<i64>().unwrap(), Slope::from_i64s(217, 324).unwrap());
    }

    #[test]
    fn ordering_puts_infinity_last() {
        let mut v: Vec<Slope> = ["inf", "1/2", "-3", "1/3"].iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["-3/1", "1/3", "1/2", "inf"]);
    }

    #[test]
    fn heckoid_index_parsing() {
        assert_eq!("2".parse::<HeckoidIndex>().unwrap().m(), 4);
        assert_eq!("5/2".parse::<HeckoidIndex>().unwrap().m(), 5);
        assert_eq!("2.5".parse::<HeckoidIndex>().unwrap().m(), 5);
        assert_eq!("3/2".parse::<HeckoidIndex>().unwrap().to_string(), "3/2");
        assert!("1".parse::<HeckoidIndex>().is_err());
        assert!("2.25".parse::<HeckoidIndex>().is_err());
        assert!("7/3".parse::<HeckoidIndex>().is_err());
        assert!(HeckoidIndex::from_m(2).is_err());
        assert!(HeckoidIndex::from_m(5).unwrap().integer_n().is_none());
    }
}
