//! Weights (linear forms on the torus Lie algebra) and generic vectors.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// A vector in `Q^m`, read as the linear form `sum c_i x_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    coords: Vec<Rational>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight { coords }
    }

    pub fn zero(m: usize) -> Self {
        Weight { coords: vec![Rational::zero(); m] }
    }

    /// The coordinate form `x_{i+1}` (0-based `i`).
    pub fn unit(m: usize, i: usize) -> Self {
        let mut w = Weight::zero(m);
        w.coords[i] = Rational::one();
        w
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight { coords: v.iter().map(|&c| Rational::from_integer(c)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight { coords: self.coords.iter().map(|x| x * c).collect() }
    }

    /// Standard dot product.
    pub fn dot(&self, other: &Weight) -> Result<Rational> {
        check_len(self.rank(), other.rank())?;
        Ok(self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum())
    }

    /// `Some(c)` with `self = c * other`, when `other` is nonzero and the two are proportional.
    pub fn ratio_to(&self, other: &Weight) -> Option<Rational> {
        if self.rank() != other.rank() {
            return None;
        }
        let pivot = other.coords.iter().position(|c| !c.is_zero())?;
        let c = &self.coords[pivot] / &other.coords[pivot];
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| *a == &c * b)
            .then_some(c)
    }

    pub fn is_proportional(&self, other: &Weight) -> bool {
        self.ratio_to(other).is_some() || (self.is_zero() && other.is_zero())
    }

    /// Parses `"1,-2,1/2"` or `"(1,-2,1/2)"`.
    pub fn parse(s: &str) -> Result<Weight> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if t.trim().is_empty() {
            return Ok(Weight::new(vec![]));
        }
        t.split(',').map(|c| c.parse()).collect::<Result<Vec<_>>>().map(Weight::new)
    }

    /// Comma-separated coordinates, e.g. `-2,1`.
    pub fn coords_string(&self) -> String {
        self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight { coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

/// Linear-form notation, e.g. `x1 - 2*x3`.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, a) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            if a.is_one() {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "{}*x{}", a, i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coords_string())
    }
}

/// A generic vector `xi`; nonzero pairing with every edge weight is checked
/// where it is used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct XiVector(pub Weight);

impl XiVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        XiVector(Weight::new(coords))
    }

    pub fn from_ints(v: &[i64]) -> Self {
        XiVector(Weight::from_ints(v))
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }
}

/// `<w, xi>`.
pub fn pair(w: &Weight, xi: &XiVector) -> Result<Rational> {
    w.dot(&xi.0)
}

/// `X - (<X,xi>/<eta,xi>) eta`, the projection onto `ker xi` along `eta`.
pub fn rho_project(x: &Weight, eta: &Weight, xi: &XiVector) -> Result<Weight> {
    let d = pair(eta, xi)?;
    if d.is_zero() {
        return Err(Error::ZeroPairing);
    }
    let c = pair(x, xi)?.checked_div(&d)?;
    Ok(x - &eta.scale(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_kills_eta_and_lands_in_kernel() {
        let xi = XiVector::from_ints(&[3, 2, 1]);
        let eta = Weight::from_ints(&[1, -1, 0]);
        let x = Weight::from_ints(&[0, 1, -1]);
        let r = rho_project(&x, &eta, &xi).unwrap();
        assert!(pair(&r, &xi).unwrap().is_zero());
        assert!(rho_project(&eta, &eta, &xi).unwrap().is_zero());
        assert_eq!(rho_project(&x, &Weight::from_ints(&[1, -3, 3]), &xi), Err(Error::ZeroPairing));
    }

    #[test]
    fn display_and_parse() {
        let w = Weight::parse("1,-2,0,1/2").unwrap();
        assert_eq!(w.to_string(), "x1 - 2*x2 + 1/2*x4");
        assert_eq!(Weight::parse("(1,-2,0,1/2)").unwrap(), w);
        assert_eq!(Weight::zero(2).to_string(), "0");
    }

    #[test]
    fn ratio() {
        let a = Weight::from_ints(&[2, -4]);
        let b = Weight::from_ints(&[-1, 2]);
        assert_eq!(a.ratio_to(&b), Some(Rational::from_integer(-2)));
        assert_eq!(a.ratio_to(&Weight::from_ints(&[1, 1])), None);
    }
}
