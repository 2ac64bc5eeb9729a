//! Products and quotients of linear forms, kept factored until the end.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_integer::Integer;
use num_traits::{One, Zero};

use serde::{Serialize, Serializer};

use super::{Poly, Rational, Weight};
use crate::error::{Error, Result};

/// A nonzero linear form scaled to coprime integer coordinates with positive
/// leading coordinate. Every nonzero weight is `c * f` for a unique such `f`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimitiveForm(Weight);

impl PrimitiveForm {
    /// Splits a nonzero weight as `(c, f)` with `w = c * f`.
    pub fn split(w: &Weight) -> Result<(Rational, PrimitiveForm)> {
        let lead = w.coords().iter().find(|c| !c.is_zero()).ok_or(Error::DivisionByZero)?;
        let mut den = num_bigint::BigInt::one();
        for c in w.coords() {
            den = den.lcm(&c.denom());
        }
        let ints: Vec<num_bigint::BigInt> =
            w.coords().iter().map(|c| (c * &Rational::from_bigint(den.clone())).numer()).collect();
        let mut g = num_bigint::BigInt::zero();
        for i in &ints {
            g = g.gcd(i);
        }
        if lead.is_negative() {
            g = -g;
        }
        let coords: Vec<Rational> = ints.into_iter().map(|i| Rational::from_bigint(i / &g)).collect();
        let scale = Rational::from_big(num_rational::BigRational::new(g, den));
        Ok((scale, PrimitiveForm(Weight::new(coords))))
    }

    pub fn weight(&self) -> &Weight {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::linear(&self.0)
    }
}

impl fmt::Display for PrimitiveForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for PrimitiveForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// `scalar * prod(num) / prod(den)` over primitive forms, with common
/// factors cancelled and both multisets sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinFrac {
    scalar: Rational,
    num: Vec<PrimitiveForm>,
    den: Vec<PrimitiveForm>,
}

impl LinFrac {
    pub fn scalar(c: Rational) -> Self {
        LinFrac { scalar: c, num: vec![], den: vec![] }
    }

    pub fn one() -> Self {
        LinFrac::scalar(Rational::one())
    }

    pub fn zero() -> Self {
        LinFrac::scalar(Rational::zero())
    }

    /// The linear form `w`; zero for the zero weight.
    pub fn from_weight(w: &Weight) -> Self {
        match PrimitiveForm::split(w) {
            Ok((c, f)) => LinFrac { scalar: c, num: vec![f], den: vec![] },
            Err(_) => LinFrac::zero(),
        }
    }

    /// `1 / w`; fails for the zero weight.
    pub fn inv_weight(w: &Weight) -> Result<Self> {
        let (c, f) = PrimitiveForm::split(w)?;
        Ok(LinFrac { scalar: c.recip()?, num: vec![], den: vec![f] })
    }

    pub fn scalar_part(&self) -> &Rational {
        &self.scalar
    }

    pub fn num(&self) -> &[PrimitiveForm] {
        &self.num
    }

    pub fn den(&self) -> &[PrimitiveForm] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// True when nothing remains in the denominator.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn recip(&self) -> Result<Self> {
        Ok(LinFrac { scalar: self.scalar.recip()?, num: self.den.clone(), den: self.num.clone() })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.scalar = &out.scalar * c;
        out.normalize_zero();
        out
    }

    fn normalize_zero(&mut self) {
        if self.scalar.is_zero() {
            self.num.clear();
            self.den.clear();
        }
    }

    fn build(scalar: Rational, mut num: Vec<PrimitiveForm>, mut den: Vec<PrimitiveForm>) -> Self {
        num.sort();
        den.sort();
        let (mut n2, mut d2) = (Vec::with_capacity(num.len()), Vec::with_capacity(den.len()));
        let (mut i, mut j) = (0, 0);
        while i < num.len() && j < den.len() {
            match num[i].cmp(&den[j]) {
                std::cmp::Ordering::Less => {
                    n2.push(num[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    d2.push(den[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        n2.extend_from_slice(&num[i..]);
        d2.extend_from_slice(&den[j..]);
        let mut out = LinFrac { scalar, num: n2, den: d2 };
        out.normalize_zero();
        out
    }

    /// Expands to a polynomial in `nvars` variables; fails if a denominator remains.
    pub fn to_poly(&self, nvars: usize) -> Result<Poly> {
        if !self.den.is_empty() {
            return Err(Error::NotDivisible(format!("{self} has a denominator")));
        }
        let mut p = Poly::constant(nvars, self.scalar.clone());
        for f in &self.num {
            p = &p * &f.to_poly();
        }
        Ok(p)
    }

    /// Degree as a rational function (numerator count minus denominator count).
    pub fn degree(&self) -> i64 {
        self.num.len() as i64 - self.den.len() as i64
    }
}

impl Mul<&LinFrac> for &LinFrac {
    type Output = LinFrac;
    fn mul(self, rhs: &LinFrac) -> LinFrac {
        let num = self.num.iter().chain(&rhs.num).cloned().collect();
        let den = self.den.iter().chain(&rhs.den).cloned().collect();
        LinFrac::build(&self.scalar * &rhs.scalar, num, den)
    }
}

/// Panics on a zero divisor.
impl Div<&LinFrac> for &LinFrac {
    type Output = LinFrac;
    fn div(self, rhs: &LinFrac) -> LinFrac {
        self * &rhs.recip().expect("LinFrac division by zero")
    }
}

impl fmt::Display for LinFrac {
    /// e.g. `2 * (x1 - x2)(x3) / (x1 + x2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.scalar)?;
        if !self.num.is_empty() {
            write!(f, " * ")?;
            for p in &self.num {
                write!(f, "({p})")?;
            }
        }
        if !self.den.is_empty() {
            write!(f, " / ")?;
            for p in &self.den {
                write!(f, "({p})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LinFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for LinFrac {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Sorted-multiset lcm of `a` and `b`, plus the factors each side lacks.
fn lcm_forms(a: &[PrimitiveForm], b: &[PrimitiveForm]) -> (Vec<PrimitiveForm>, Vec<PrimitiveForm>, Vec<PrimitiveForm>) {
    let (mut i, mut j) = (0, 0);
    let mut common = Vec::with_capacity(a.len().max(b.len()));
    let (mut for_a, mut for_b) = (Vec::new(), Vec::new());
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                common.push(x.clone());
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                for_b.push(x.clone());
                common.push(x.clone());
                i += 1;
            }
            (Some(x), None) => {
                for_b.push(x.clone());
                common.push(x.clone());
                i += 1;
            }
            (_, Some(y)) => {
                for_a.push(y.clone());
                common.push(y.clone());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (common, for_a, for_b)
}

fn lcm_len(a: &[PrimitiveForm], b: &[PrimitiveForm]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
        }
        n += 1;
    }
    n + (a.len() - i) + (b.len() - j)
}

/// Divides out every form of `den` that divides `num`.
fn cancel(mut num: Poly, mut den: Vec<PrimitiveForm>) -> Result<(Poly, Vec<PrimitiveForm>)> {
    if num.is_zero() {
        return Ok((num, vec![]));
    }
    let mut k = 0;
    while k < den.len() {
        if num.reduce_mod_linear(den[k].weight())?.is_zero() {
            num = num.div_exact(&den[k].to_poly())?;
            den.remove(k);
        } else {
            k += 1;
        }
    }
    Ok((num, den))
}

fn times_forms(mut p: Poly, fs: &[PrimitiveForm]) -> Poly {
    for f in fs {
        p = &p * &f.to_poly();
    }
    p
}

/// Sums `L_i * P_i` exactly. Terms sharing a denominator are added first;
/// then the two fractions with the smallest common denominator are merged
/// until one is left, cancelling linear factors after every merge. The merge
/// order depends only on the multiset of terms, never on their order.
/// Fails with `NotDivisible` if the total is not a polynomial.
pub fn linfrac_poly_sum(terms: &[(LinFrac, Poly)], nvars: usize) -> Result<Poly> {
    let mut groups: BTreeMap<Vec<PrimitiveForm>, Poly> = BTreeMap::new();
    for (l, p) in terms {
        if l.is_zero() || p.is_zero() {
            continue;
        }
        let t = times_forms(p.scale(&l.scalar), &l.num);
        let e = groups.entry(l.den.clone()).or_insert_with(|| Poly::zero(nvars));
        *e = &*e + &t;
    }
    let mut parts: Vec<(Vec<PrimitiveForm>, Poly)> = Vec::new();
    for (den, num) in groups {
        let (num, den) = cancel(num, den)?;
        if !num.is_zero() {
            parts.push((den, num));
        }
    }
    while parts.len() > 1 {
        let mut best = (usize::MAX, 0, 1);
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let c = lcm_len(&parts[i].0, &parts[j].0);
                if c < best.0 {
                    best = (c, i, j);
                }
            }
        }
        let (_, i, j) = best;
        let (db, nb) = parts.swap_remove(j);
        let (da, na) = parts.swap_remove(i);
        let (common, for_a, for_b) = lcm_forms(&da, &db);
        let (num, den) = cancel(&times_forms(na, &for_a) + &times_forms(nb, &for_b), common)?;
        if !num.is_zero() {
            parts.push((den, num));
        }
    }
    match parts.pop() {
        None => Ok(Poly::zero(nvars)),
        Some((den, num)) => match den.first() {
            None => Ok(num),
            Some(f) => Err(Error::NotDivisible(format!("{num} by {f}"))),
        },
    }
}

/// Sums factored terms into one polynomial.
pub fn linfrac_sum_to_poly(terms: &[LinFrac], nvars: usize) -> Result<Poly> {
    let one = Poly::one(nvars);
    let pairs: Vec<(LinFrac, Poly)> = terms.iter().map(|l| (l.clone(), one.clone())).collect();
    linfrac_poly_sum(&pairs, nvars)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    #[test]
    fn split_is_canonical() {
        let (c, f) = PrimitiveForm::split(&Weight::parse("-1,1/2").unwrap()).unwrap();
        assert_eq!(c.to_string(), "-1/2");
        assert_eq!(f.weight(), &w(&[2, -1]));
        let (c2, f2) = PrimitiveForm::split(&w(&[-4, 2])).unwrap();
        assert_eq!(f, f2);
        assert_eq!(c2, Rational::from_integer(-2));
    }

    #[test]
    fn cancellation() {
        let a = LinFrac::from_weight(&w(&[2, -2]));
        let b = LinFrac::inv_weight(&w(&[-1, 1])).unwrap();
        let r = &a * &b;
        assert!(r.num().is_empty() && r.den().is_empty());
        assert_eq!(r.scalar_part(), &Rational::from_integer(-2));
    }

    #[test]
    fn sum_with_common_denominator() {
        // x1/(x1-x2) + x2/(x2-x1) = 1
        let t1 = &LinFrac::from_weight(&w(&[1, 0])) * &LinFrac::inv_weight(&w(&[1, -1])).unwrap();
        let t2 = &LinFrac::from_weight(&w(&[0, 1])) * &LinFrac::inv_weight(&w(&[-1, 1])).unwrap();
        assert_eq!(linfrac_sum_to_poly(&[t1.clone(), t2], 2).unwrap(), Poly::one(2));
        assert!(linfrac_sum_to_poly(&[t1], 2).is_err());
    }
}
