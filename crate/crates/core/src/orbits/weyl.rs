//! Weyl groups of classical type as signed permutations.

use std::collections::HashMap;
use std::fmt;

use super::{reflect, CartanType, RootSystem};
use crate::error::{Error, Result};
use crate::exactalg::{Rational, Weight};

/// Signed one-line notation: entry `i` is `+-(image of i)`, 1-based, so the
/// element sends `x_i` to `sign * x_|w(i)|`. Type `A` uses only positive signs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm(Vec<i32>);

impl SignedPerm {
    pub fn identity(m: usize) -> Self {
        SignedPerm((1..=m as i32).collect())
    }

    pub fn from_one_line(v: &[i32]) -> Result<Self> {
        let m = v.len();
        let mut seen = vec![false; m];
        for &x in v {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > m || seen[a - 1] {
                return Err(Error::Parse(format!("not a signed permutation: {v:?}")));
            }
            seen[a - 1] = true;
        }
        Ok(SignedPerm(v.to_vec()))
    }

    /// Parses `"2,-1,3"`, optionally in brackets.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        let v = t
            .split(',')
            .map(|x| x.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad one-line entry `{x}`"))))
            .collect::<Result<Vec<_>>>()?;
        SignedPerm::from_one_line(&v)
    }

    pub fn one_line(&self) -> &[i32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn negatives(&self) -> usize {
        self.0.iter().filter(|&&x| x < 0).count()
    }

    /// Whether the element lies in the Weyl group of `rs`.
    pub fn belongs_to(&self, rs: &RootSystem) -> bool {
        self.size() == rs.dim()
            && match rs.cartan() {
                CartanType::A => self.negatives() == 0,
                CartanType::D => self.negatives() % 2 == 0,
                _ => true,
            }
    }

    /// `w(x_i)` as `(sign, 0-based index)`.
    pub fn image(&self, i: usize) -> (i32, usize) {
        let x = self.0[i];
        (x.signum(), x.unsigned_abs() as usize - 1)
    }

    pub fn act(&self, w: &Weight) -> Weight {
        let mut out = vec![Rational::zero(); self.size()];
        for (i, c) in w.coords().iter().enumerate() {
            let (s, j) = self.image(i);
            out[j] = if s < 0 { -c } else { c.clone() };
        }
        Weight::new(out)
    }

    /// `self o other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm(
            other
                .0
                .iter()
                .map(|&x| {
                    let y = self.0[x.unsigned_abs() as usize - 1];
                    x.signum() * y
                })
                .collect(),
        )
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut v = vec![0; self.size()];
        for (i, &x) in self.0.iter().enumerate() {
            v[x.unsigned_abs() as usize - 1] = x.signum() * (i as i32 + 1);
        }
        SignedPerm(v)
    }

    /// The reflection in `root`, which must permute coordinates up to sign.
    pub fn reflection(root: &Weight) -> Result<SignedPerm> {
        let m = root.rank();
        let mut v = Vec::with_capacity(m);
        for i in 0..m {
            let img = reflect(&Weight::unit(m, i), root)?;
            let nz: Vec<usize> = (0..m).filter(|&k| !img.coord(k).is_zero()).collect();
            match nz.as_slice() {
                [k] if img.coord(*k).abs().is_one() => v.push(img.coord(*k).signum() as i32 * (*k as i32 + 1)),
                _ => return Err(Error::InvalidSpec(format!("{root} does not act by a signed permutation"))),
            }
        }
        Ok(SignedPerm(v))
    }

    /// `#{beta > 0 : w(beta) < 0}`.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.positive_roots().iter().filter(|b| !RootSystem::is_positive(&self.act(b))).count()
    }

    /// Simple reflections `s_i` with `w^-1(alpha_i) < 0`, 1-based.
    pub fn left_descents(&self, rs: &RootSystem) -> Vec<usize> {
        let inv = self.inverse();
        (1..=rs.rank()).filter(|&i| !RootSystem::is_positive(&inv.act(rs.simple_root(i)))).collect()
    }

    /// Lexicographically smallest reduced word `w = s_{i1} s_{i2} ..`, 1-based.
    pub fn reduced_word(&self, rs: &RootSystem) -> Vec<usize> {
        let s = simple_reflections(rs);
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(&i) = w.left_descents(rs).first() {
            word.push(i);
            w = s[i - 1].compose(&w);
        }
        word
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// `s_1 .. s_n` in order.
pub fn simple_reflections(rs: &RootSystem) -> Vec<SignedPerm> {
    rs.simple_roots().iter().map(|a| SignedPerm::reflection(a).expect("classical root")).collect()
}

pub fn weyl_length(rs: &RootSystem, w: &SignedPerm) -> usize {
    w.length(rs)
}

/// Every reduced word of `w`. Exponential; meant for small ranks.
pub fn reduced_words(rs: &RootSystem, w: &SignedPerm) -> Vec<Vec<usize>> {
    let s = simple_reflections(rs);
    let mut memo: HashMap<SignedPerm, Vec<Vec<usize>>> = HashMap::new();
    fn go(
        rs: &RootSystem,
        s: &[SignedPerm],
        w: &SignedPerm,
        memo: &mut HashMap<SignedPerm, Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if let Some(r) = memo.get(w) {
            return r.clone();
        }
        let d = w.left_descents(rs);
        let out = if d.is_empty() {
            vec![vec![]]
        } else {
            let mut out = Vec::new();
            for i in d {
                for mut tail in go(rs, s, &s[i - 1].compose(w), memo) {
                    tail.insert(0, i);
                    out.push(tail);
                }
            }
            out
        };
        memo.insert(w.clone(), out.clone());
        out
    }
    go(rs, &s, w, &mut memo)
}

/// All Weyl group elements, sorted by length then one-line notation.
pub fn weyl_elements(rs: &RootSystem) -> Vec<SignedPerm> {
    let m = rs.dim();
    let signed = rs.cartan() != CartanType::A;
    let mut out = Vec::with_capacity(rs.weyl_order());
    let mut perm: Vec<i32> = (1..=m as i32).collect();
    permutations(&mut perm, 0, &mut |p| {
        let masks = if signed { 1u32 << m } else { 1 };
        for mask in 0..masks {
            let v: Vec<i32> = p.iter().enumerate().map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x }).collect();
            let w = SignedPerm(v);
            if w.belongs_to(rs) {
                out.push(w);
            }
        }
    });
    let mut keyed: Vec<(usize, SignedPerm)> = out.into_iter().map(|w| (w.length(rs), w)).collect();
    keyed.sort();
    keyed.into_iter().map(|(_, w)| w).collect()
}

fn permutations(v: &mut Vec<i32>, k: usize, f: &mut dyn FnMut(&[i32])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Bruhat order by the lifting property: for a left descent `s` of `v`,
/// `u <= v` iff `su <= sv` when `s` is also a descent of `u`, else `u <= sv`.
pub fn bruhat_le(rs: &RootSystem, u: &SignedPerm, v: &SignedPerm) -> bool {
    let s = simple_reflections(rs);
    let (mut u, mut v) = (u.clone(), v.clone());
    loop {
        let dv = v.left_descents(rs);
        let Some(&i) = dv.first() else {
            return u.left_descents(rs).is_empty();
        };
        if u.left_descents(rs).contains(&i) {
            u = s[i - 1].compose(&u);
        }
        v = s[i - 1].compose(&v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_longest() {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let w = SignedPerm::parse("3,2,1").unwrap();
        assert_eq!(w.length(&rs), 3);
        assert_eq!(reduced_words(&rs, &w), vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert_eq!(w.reduced_word(&rs), vec![1, 2, 1]);
    }

    #[test]
    fn group_orders() {
        for (t, n) in [(CartanType::A, 3), (CartanType::B, 3), (CartanType::C, 2), (CartanType::D, 4)] {
            let rs = RootSystem::new(t, n).unwrap();
            let els = weyl_elements(&rs);
            assert_eq!(els.len(), rs.weyl_order());
            assert_eq!(els[0], SignedPerm::identity(rs.dim()));
        }
    }

    #[test]
    fn compose_inverse() {
        let a = SignedPerm::parse("2,-3,1").unwrap();
        let b = SignedPerm::parse("-1,3,2").unwrap();
        let x = Weight::from_ints(&[1, 2, 5]);
        assert_eq!(a.compose(&b).act(&x), a.act(&b.act(&x)));
        assert_eq!(a.compose(&a.inverse()), SignedPerm::identity(3));
    }

    #[test]
    fn bruhat_small() {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let s1 = SignedPerm::parse("2,1,3").unwrap();
        let s2 = SignedPerm::parse("1,3,2").unwrap();
        let w0 = SignedPerm::parse("3,2,1").unwrap();
        assert!(bruhat_le(&rs, &s1, &w0));
        assert!(!bruhat_le(&rs, &s1, &s2));
        assert!(bruhat_le(&rs, &SignedPerm::identity(3), &s2));
    }
}
