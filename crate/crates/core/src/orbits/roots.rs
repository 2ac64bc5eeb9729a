//! Classical root systems in the standard coordinates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Rational, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
        };
        f.write_str(c)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            other => Err(Error::Parse(format!("unknown Cartan type `{other}`"))),
        }
    }
}

/// Roots of a classical type. Type `A_n` lives in `n + 1` coordinates, the
/// others in `n`. A root is positive when its first nonzero coordinate is.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanType,
    rank: usize,
    positive: Vec<Weight>,
    simple: Vec<Weight>,
}

fn e(m: usize, pairs: &[(usize, i64)]) -> Weight {
    let mut v = vec![0i64; m];
    for &(i, c) in pairs {
        v[i] += c;
    }
    Weight::from_ints(&v)
}

impl RootSystem {
    pub fn new(cartan: CartanType, rank: usize) -> Result<Self> {
        let min = match cartan {
            CartanType::D => 2,
            _ => 1,
        };
        if rank < min {
            return Err(Error::InvalidSpec(format!("{cartan}{rank}: rank must be at least {min}")));
        }
        let n = rank;
        let m = if cartan == CartanType::A { n + 1 } else { n };
        let mut positive = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                positive.push(e(m, &[(i, 1), (j, -1)]));
                if cartan != CartanType::A {
                    positive.push(e(m, &[(i, 1), (j, 1)]));
                }
            }
            match cartan {
                CartanType::B => positive.push(e(m, &[(i, 1)])),
                CartanType::C => positive.push(e(m, &[(i, 2)])),
                _ => {}
            }
        }
        let mut simple: Vec<Weight> = (0..m - 1).map(|i| e(m, &[(i, 1), (i + 1, -1)])).collect();
        match cartan {
            CartanType::A => {}
            CartanType::B => simple.push(e(m, &[(n - 1, 1)])),
            CartanType::C => simple.push(e(m, &[(n - 1, 2)])),
            CartanType::D => simple.push(e(m, &[(n - 2, 1), (n - 1, 1)])),
        }
        Ok(RootSystem { cartan, rank, positive, simple })
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of coordinates.
    pub fn dim(&self) -> usize {
        match self.cartan {
            CartanType::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive
    }

    /// Simple roots `alpha_1 .. alpha_n`; `simple_root(i)` is 1-based.
    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple[i - 1]
    }

    pub fn roots(&self) -> Vec<Weight> {
        self.positive.iter().cloned().chain(self.positive.iter().map(|r| -r)).collect()
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.positive.iter().any(|r| r == w || &(-r) == w)
    }

    /// First nonzero coordinate positive.
    pub fn is_positive(w: &Weight) -> bool {
        w.coords().iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_positive())
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> usize {
        let n = self.rank;
        let fact = |k: usize| (1..=k).product::<usize>();
        match self.cartan {
            CartanType::A => fact(n + 1),
            CartanType::B | CartanType::C => (1 << n) * fact(n),
            CartanType::D => (1 << (n - 1)) * fact(n),
        }
    }

    /// Coefficients of `w` in the simple roots, read off by pairing with the
    /// fundamental coweights. Only meaningful for `w` in the root span.
    pub fn simple_coords(&self, w: &Weight) -> Vec<Rational> {
        let n = self.rank;
        let half = Rational::new(1, 2).expect("nonzero");
        let partial = |i: usize| -> Rational { w.coords()[..i].iter().cloned().sum() };
        (1..=n)
            .map(|i| match self.cartan {
                CartanType::A | CartanType::B => partial(i),
                CartanType::C if i == n => &partial(n) * &half,
                CartanType::C => partial(i),
                CartanType::D if i == n => &partial(n) * &half,
                CartanType::D if i == n - 1 => &(&partial(n - 1) - w.coord(n - 1)) * &half,
                CartanType::D => partial(i),
            })
            .collect()
    }

    /// Vector with every positive root pairing positively: `(m, m-1, .., 1)`.
    pub fn dominant_xi(&self) -> Weight {
        let m = self.dim() as i64;
        Weight::from_ints(&(0..m).map(|i| m - i).collect::<Vec<_>>())
    }
}

/// `v - 2 <v, a> / <a, a> * a`.
pub fn reflect(v: &Weight, a: &Weight) -> Result<Weight> {
    let aa = a.dot(a)?;
    let c = (&v.dot(a)? * &Rational::from_integer(2)).checked_div(&aa)?;
    Ok(v - &a.scale(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for (t, n, k) in [
            (CartanType::A, 3, 6),
            (CartanType::B, 3, 9),
            (CartanType::C, 2, 4),
            (CartanType::D, 4, 12),
        ] {
            let rs = RootSystem::new(t, n).unwrap();
            assert_eq!(rs.positive_roots().len(), k);
            assert!(rs.simple_roots().iter().all(|s| rs.is_root(s) && RootSystem::is_positive(s)));
        }
    }

    #[test]
    fn reflection() {
        let a = Weight::from_ints(&[1, -1]);
        assert_eq!(reflect(&Weight::from_ints(&[3, 5]), &a).unwrap(), Weight::from_ints(&[5, 3]));
        let b = Weight::from_ints(&[0, 2]);
        assert_eq!(reflect(&Weight::from_ints(&[3, 5]), &b).unwrap(), Weight::from_ints(&[3, -5]));
    }
}
