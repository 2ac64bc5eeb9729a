//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use smallvec::SmallVec;

use super::{Rational, Weight};
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically (`x1 > x2 > ...`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A polynomial in `nvars` variables `x1..x_nvars`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    /// `x_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), Rational::one());
        p
    }

    /// The linear form of a weight.
    pub fn linear(w: &Weight) -> Self {
        let m = w.rank();
        let mut p = Poly::zero(m);
        for (i, c) in w.coords().iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(m, i), c.clone());
            }
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u16>, Rational)>) -> Result<Self> {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::LengthMismatch { expected: nvars, got: e.len() });
            }
            p.add_term(Monomial::from_exps(&e), &c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True for zero and for polynomials whose terms share one degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(Monomial::degree);
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomial variable count mismatch");
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        self.check(other);
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), &(a * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// `self * c * x^m`.
    fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d`; fails with `NotDivisible` on a nonzero remainder.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        self.check(d);
        let (lm, lc) = d.leading().ok_or(Error::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut r = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rm, rc)) = r.leading() {
            let Some(tm) = rm.div(&lm) else {
                return Err(Error::NotDivisible(format!("{self} by {d}")));
            };
            let tc = rc / &lc;
            for (m, a) in &d.terms {
                r.add_term(m.mul(&tm), &-(a * &tc));
            }
            q.terms.insert(tm, tc);
        }
        Ok(q)
    }

    /// Ring map `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: images.len() });
        }
        let target = images.first().map_or(0, Poly::nvars);
        let mut cache: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                if e > 0 {
                    t = &t * &cache[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Ring map `x_i -> x_{map[i]}` into `nvars` variables.
    pub fn rename_vars(&self, map: &[usize], nvars: usize) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(nvars);
            for (i, &x) in m.exps().iter().enumerate() {
                e.0[map[i]] += x;
            }
            out.add_term(e, c);
        }
        out
    }

    /// Reduces modulo the linear form `form` by eliminating its first
    /// variable with nonzero coefficient. The result is the normal form in
    /// `Q[x] / (form)`.
    pub fn reduce_mod_linear(&self, form: &Weight) -> Result<Poly> {
        let nz: Vec<usize> = (0..form.rank()).filter(|&i| !form.coord(i).is_zero()).collect();
        let Some(&piv) = nz.first() else {
            return Err(Error::DivisionByZero);
        };
        match nz.len() {
            1 => Ok(Poly {
                nvars: self.nvars,
                terms: self.terms.iter().filter(|(m, _)| m.0[piv] == 0).map(|(m, c)| (m.clone(), c.clone())).collect(),
            }),
            2 => {
                let k = nz[1];
                let r = -(form.coord(k) / form.coord(piv));
                let mut out = Poly::zero(self.nvars);
                for (m, c) in &self.terms {
                    let e = m.0[piv];
                    let mut mm = m.clone();
                    mm.0[piv] = 0;
                    mm.0[k] += e;
                    out.add_term(mm, &(c * &r.pow(e as u32)));
                }
                Ok(out)
            }
            _ => {
                let inv = form.coord(piv).recip()?;
                let images: Vec<Poly> = (0..self.nvars)
                    .map(|i| {
                        if i != piv {
                            return Poly::var(self.nvars, i);
                        }
                        let mut l = Poly::zero(self.nvars);
                        for &k in &nz[1..] {
                            l.add_term(Monomial::var(self.nvars, k), &-(form.coord(k) * &inv));
                        }
                        l
                    })
                    .collect();
                self.substitute(&images)
            }
        }
    }

    /// Value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = &t * &x.pow(e as u32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Parses the text form produced by `Display`, e.g. `3/2*x1^2*x2 - x3 + 1`.
    /// Parentheses and products of sums are accepted too.
    pub fn parse(s: &str, nvars: usize) -> Result<Poly> {
        let mut p = Parser { s: s.as_bytes(), pos: 0, nvars };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err());
        }
        Ok(out)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return rhs.mul_term(m, c);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = rhs.terms.iter().next().unwrap();
            return self.mul_term(m, c);
        }
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    /// Terms in decreasing graded-lex order, e.g. `x1^2 - 1/2*x1*x2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let a = c.abs();
            match (k == 0, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", a, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u16>,
    coeff: Rational,
}

/// Serialized as a term list `[{exp, coeff}]` in decreasing graded-lex order.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in self.terms.iter().rev() {
            seq.serialize_element(&TermRepr { exp: m.exps().to_vec(), coeff: c.clone() })?;
        }
        seq.end()
    }
}

impl Poly {
    /// Reads the term-list JSON form.
    pub fn from_json(v: &serde_json::Value, nvars: usize) -> Result<Poly> {
        let terms: Vec<TermRepr> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Poly::from_terms(nvars, terms.into_iter().map(|t| (t.exp, t.coeff)))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self) -> Error {
        Error::Parse(format!(
            "bad polynomial near position {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.nvars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            first = false;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn number(&mut self) -> u64 {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap_or(0)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err());
                }
                self.pos += 1;
                e
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                let i = self.number() as usize;
                if self.pos == start || i == 0 || i > self.nvars {
                    return Err(self.err());
                }
                Poly::var(self.nvars, i - 1)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                self.number();
                if self.pos < self.s.len() && self.s[self.pos] == b'/' {
                    self.pos += 1;
                    let d0 = self.pos;
                    self.number();
                    if self.pos == d0 {
                        return Err(self.err());
                    }
                }
                let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                Poly::constant(self.nvars, txt.parse()?)
            }
            _ => return Err(self.err()),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.number();
            if self.pos == start {
                return Err(self.err());
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    #[test]
    fn grlex_display_order() {
        let f = p("x3 + x1*x2 + x1^2 + 1 + x2");
        assert_eq!(f.to_string(), "x1^2 + x1*x2 + x2 + x3 + 1");
        assert_eq!(p("x2 - 1/2*x1").to_string(), "-1/2*x1 + x2");
        assert_eq!(p("x1 - x1").to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let a = p("x1 - x2");
        let b = p("x1 + 2*x3");
        let prod = &(&a * &b) * &a;
        assert_eq!(prod.div_exact(&a).unwrap(), &a * &b);
        assert!(matches!(prod.div_exact(&p("x3")), Err(Error::NotDivisible(_))));
        assert_eq!(Poly::zero(3).div_exact(&a).unwrap(), Poly::zero(3));
    }

    #[test]
    fn reduction_mod_forms() {
        let f = p("x1^2 + x2*x3");
        let two = Weight::from_ints(&[1, -1, 0]);
        assert_eq!(f.reduce_mod_linear(&two).unwrap(), p("x2^2 + x2*x3"));
        let three = Weight::from_ints(&[2, 1, 1]);
        let r = f.reduce_mod_linear(&three).unwrap();
        assert_eq!(r, p("1/4*(x2 + x3)^2 + x2*x3"));
        assert_eq!(f.reduce_mod_linear(&Weight::from_ints(&[0, 0, 1])).unwrap(), p("x1^2"));
    }

    #[test]
    fn json_round_trip() {
        let f = p("3/2*x1^2*x2 - x3 + 7");
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v[0]["exp"], serde_json::json!([2, 1, 0]));
        assert_eq!(v[0]["coeff"], "3/2");
        assert_eq!(Poly::from_json(&v, 3).unwrap(), f);
    }

    #[test]
    fn parse_errors() {
        assert!(Poly::parse("x4", 3).is_err());
        assert!(Poly::parse("x1 +", 3).is_err());
        assert!(Poly::parse("(x1", 3).is_err());
    }
}
