//! Restrictions of Schubert classes by reduced subwords.

use std::collections::HashMap;

use serde::Serialize;

use crate::canonical::RestrictionTable;
use crate::error::{Error, Result};
use crate::exactalg::{Poly, Weight};
use crate::orbits::{simple_reflections, Orbit, RootSystem, SignedPerm};

/// Words longer than this are refused; the subword sum is exponential.
pub const MAX_WORD_LENGTH: usize = 12;

/// Reduced word of `v`, the subwords spelling `w` and their products.
#[derive(Clone, Debug, Serialize)]
pub struct SubwordLedger {
    pub word: Vec<usize>,
    /// 1-based positions in `word`.
    pub subwords: Vec<Vec<usize>>,
    pub products: Vec<Poly>,
}

impl SubwordLedger {
    pub fn value(&self, nvars: usize) -> Poly {
        self.products.iter().fold(Poly::zero(nvars), |a, p| &a + p)
    }
}

/// `r_j = s_{i_1} .. s_{i_{j-1}} (alpha_{i_j})`.
pub fn prefix_roots(rs: &RootSystem, word: &[usize]) -> Vec<Weight> {
    let s = simple_reflections(rs);
    let mut prefix = SignedPerm::identity(rs.dim());
    let mut out = Vec::with_capacity(word.len());
    for &i in word {
        out.push(prefix.act(rs.simple_root(i)));
        prefix = prefix.compose(&s[i - 1]);
    }
    out
}

/// Walks reduced subwords of `word`, calling `f(element, positions, product)` at each leaf.
fn walk(rs: &RootSystem, word: &[usize], f: &mut dyn FnMut(&SignedPerm, &[usize], &Poly)) -> Result<()> {
    if word.len() > MAX_WORD_LENGTH {
        return Err(Error::Unsupported(format!("subword expansion of length {} > {MAX_WORD_LENGTH}", word.len())));
    }
    let s = simple_reflections(rs);
    let roots: Vec<Poly> = prefix_roots(rs, word).iter().map(Poly::linear).collect();
    let mut chosen = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        rs: &RootSystem,
        word: &[usize],
        s: &[SignedPerm],
        roots: &[Poly],
        j: usize,
        u: &SignedPerm,
        prod: &Poly,
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&SignedPerm, &[usize], &Poly),
    ) {
        if j == word.len() {
            f(u, chosen, prod);
            return;
        }
        go(rs, word, s, roots, j + 1, u, prod, chosen, f);
        let i = word[j];
        // l(u s_i) > l(u) iff u(alpha_i) > 0.
        if RootSystem::is_positive(&u.act(rs.simple_root(i))) {
            chosen.push(j + 1);
            go(rs, word, s, roots, j + 1, &u.compose(&s[i - 1]), &(prod * &roots[j]), chosen, f);
            chosen.pop();
        }
    }
    let id = SignedPerm::identity(rs.dim());
    go(rs, word, &s, &roots, 0, &id, &Poly::one(rs.dim()), &mut chosen, f);
    Ok(())
}

/// Ledger for `(w, v)` using the given reduced word of `v`.
pub fn billey_ledger_with_word(rs: &RootSystem, w: &SignedPerm, word: &[usize]) -> Result<SubwordLedger> {
    let mut subwords = Vec::new();
    let mut products = Vec::new();
    walk(rs, word, &mut |u, pos, prod| {
        if u == w {
            subwords.push(pos.to_vec());
            products.push(prod.clone());
        }
    })?;
    Ok(SubwordLedger { word: word.to_vec(), subwords, products })
}

/// Ledger for `(w, v)` with the lexicographically smallest reduced word of `v`.
pub fn billey_ledger(rs: &RootSystem, w: &SignedPerm, v: &SignedPerm) -> Result<SubwordLedger> {
    billey_ledger_with_word(rs, w, &v.reduced_word(rs))
}

/// `sum over reduced subwords J spelling w of prod_{j in J} r_j`.
pub fn billey_restriction(rs: &RootSystem, w: &SignedPerm, v: &SignedPerm) -> Result<Poly> {
    Ok(billey_ledger(rs, w, v)?.value(rs.dim()))
}

/// The same sum with every `r_j` written in the simple roots, as a polynomial
/// in `rank` variables `a_i = alpha_i`. Each `r_j` is positive, so the
/// coefficients are nonnegative integers by construction.
pub fn billey_in_simple_roots(rs: &RootSystem, w: &SignedPerm, v: &SignedPerm) -> Result<Poly> {
    let ledger = billey_ledger(rs, w, v)?;
    let n = rs.rank();
    let roots: Vec<Poly> = prefix_roots(rs, &ledger.word)
        .iter()
        .map(|r| Poly::linear(&Weight::new(rs.simple_coords(r))))
        .collect();
    let mut out = Poly::zero(n);
    for j in &ledger.subwords {
        out = &out + &j.iter().fold(Poly::one(n), |acc, &k| &acc * &roots[k - 1]);
    }
    Ok(out)
}

/// Every nonzero `billey(w, v)` for fixed `v`.
pub fn billey_column(rs: &RootSystem, v: &SignedPerm) -> Result<HashMap<SignedPerm, Poly>> {
    let mut out: HashMap<SignedPerm, Poly> = HashMap::new();
    let m = rs.dim();
    walk(rs, &v.reduced_word(rs), &mut |u, _, prod| {
        let e = out.entry(u.clone()).or_insert_with(|| Poly::zero(m));
        *e = &*e + prod;
    })?;
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

/// Table indexed like the orbit: entry `(p, q)` is `billey(w_p, w_q)`.
pub fn billey_table(orbit: &Orbit) -> Result<RestrictionTable> {
    let n = orbit.num_vertices();
    let ids = (0..n).map(|i| orbit.id(i).to_string()).collect();
    let mut t = RestrictionTable::zeros(ids, orbit.oriented().rank());
    for q in 0..n {
        for (u, val) in billey_column(orbit.root_system(), orbit.element(q))? {
            let p = orbit.index_of(&u).ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
            t.set(p, q, val);
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::CartanType;

    #[test]
    fn a2_values() {
        let rs = RootSystem::new(CartanType::A, 2).unwrap();
        let s1 = SignedPerm::parse("2,1,3").unwrap();
        let s1s2 = s1.compose(&SignedPerm::parse("1,3,2").unwrap());
        let v = billey_restriction(&rs, &s1, &s1s2).unwrap();
        assert_eq!(v.to_string(), "x1 - x2");
        let e = SignedPerm::identity(3);
        assert_eq!(billey_restriction(&rs, &e, &s1s2).unwrap(), Poly::one(3));
    }

    #[test]
    fn too_long() {
        let rs = RootSystem::new(CartanType::B, 4).unwrap();
        let w0 = SignedPerm::parse("-1,-2,-3,-4").unwrap();
        assert!(billey_restriction(&rs, &w0, &w0).is_err());
    }
}
