use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A weight in the fundamental-weight basis with exact rational coordinates.
///
/// Ordering is lexicographic on coordinates, which is the sort order used for
/// every weight listing in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<BigRational>,
}

impl Weight {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self { coords }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coords: I) -> Self {
        Self {
            coords: coords
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coords: vec![BigRational::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [BigRational] {
        &mut self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Nonnegative coordinates (no integrality requirement).
    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.is_integral() && self.is_dominant()
    }

    /// Integer coordinates, or `None` if some coordinate is fractional or does
    /// not fit in an `i64`.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn scale(&self, k: &BigInt) -> Weight {
        let k = BigRational::from_integer(k.clone());
        Weight::new(self.coords.iter().map(|c| c * &k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// Parse error for the bracketed weight syntax `[a,b/c,...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWeightError(pub String);

impl fmt::Display for ParseWeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "malformed weight {}", self.0)
    }
}

impl std::error::Error for ParseWeightError {}

impl FromStr for Weight {
    type Err = ParseWeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseWeightError(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(err)?;
        if inner.trim().is_empty() {
            return Ok(Weight::new(Vec::new()));
        }
        inner
            .split(',')
            .map(|tok| parse_rational(tok.trim()).ok_or_else(err))
            .collect::<Result<Vec<_>, _>>()
            .map(Weight::new)
    }
}

pub(crate) fn parse_rational(tok: &str) -> Option<BigRational> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (tok, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in weight addition");
        Weight::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in weight subtraction");
        Weight::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(self.coords.iter().map(|c| -c).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Weight = "[3/2, -1,0]".parse().unwrap();
        assert_eq!(w.to_string(), "[3/2,-1,0]");
        assert!(!w.is_integral());
        assert_eq!("[4/2]".parse::<Weight>().unwrap(), Weight::from_ints([2]));
        assert!("[1,".parse::<Weight>().is_err());
        assert!("[1/0]".parse::<Weight>().is_err());
        assert!("1,0".parse::<Weight>().is_err());
    }

    #[test]
    fn lexicographic_order() {
        let mut v = [
            Weight::from_ints([1, 0]),
            Weight::from_ints([0, 1]),
            Weight::from_ints([-1, 5]),
        ];
        v.sort();
        assert_eq!(v[0], Weight::from_ints([-1, 5]));
        assert_eq!(v[2], Weight::from_ints([1, 0]));
    }
}
