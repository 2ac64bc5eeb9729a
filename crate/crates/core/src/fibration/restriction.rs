//! Restrictions through a tower: filtered path sums and their certificates.

use serde::Serialize;

use super::TowerSpec;
use crate::canonical::{check_separated, filtered_sum, filtered_table, PathTerm, RestrictionTable};
use crate::error::Result;
use crate::exactalg::{pair, LinFrac, Poly, Rational, XiVector};
use crate::gkm::{CanonicalGraph, GkmGraph, OrientedGraphData};

/// Shape of a single path term after cancellation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermCertificate {
    /// No linear form left in the denominator.
    pub polynomial: bool,
    /// Numerator forms are pairwise distinct and positive on `xi`.
    pub distinct_positive: bool,
    /// The scalar left after normalizing every form to primitive.
    pub constant: Rational,
    /// Primes dividing the denominator of `constant`.
    pub denominator_primes: Vec<u64>,
}

impl TermCertificate {
    /// Polynomial, distinct positive forms and a positive constant.
    pub fn is_positive_product(&self) -> bool {
        self.polynomial && self.distinct_positive && self.constant.is_positive()
    }
}

/// Prime support of a positive integer given as a rational's denominator.
pub fn prime_support(c: &Rational) -> Vec<u64> {
    let mut d = c.denom();
    let mut out = Vec::new();
    let mut p = 2u64;
    let one = num_bigint::BigInt::from(1);
    while d > one {
        let bp = num_bigint::BigInt::from(p);
        if &bp * &bp > d {
            out.push(d.try_into().unwrap_or(u64::MAX));
            break;
        }
        if (&d % &bp) == num_bigint::BigInt::from(0) {
            out.push(p);
            while (&d % &bp) == num_bigint::BigInt::from(0) {
                d /= &bp;
            }
        }
        p += 1;
    }
    out
}

pub fn certify_term(term: &LinFrac, xi: &XiVector) -> TermCertificate {
    let nums = term.num();
    let distinct = nums.windows(2).all(|w| w[0] != w[1]);
    let positive = nums.iter().all(|f| pair(f.weight(), xi).map(|c| c.is_positive()).unwrap_or(false));
    TermCertificate {
        polynomial: term.is_polynomial(),
        distinct_positive: distinct && positive,
        constant: term.scalar_part().clone(),
        denominator_primes: prime_support(term.scalar_part()),
    }
}

/// A contributing path of the tower sum with its certificate.
#[derive(Clone, Debug, Serialize)]
pub struct TowerPath {
    #[serde(flatten)]
    pub term: PathTerm,
    /// Levels never decrease along the path.
    pub monotone: bool,
    pub certificate: TermCertificate,
}

#[derive(Clone, Debug)]
pub struct TowerResult {
    pub value: Poly,
    pub paths: Vec<TowerPath>,
}

/// `alpha_p(q)` as the sum over paths with nondecreasing `h` of
/// `Lambda_q^- prod (psi_h(g_{i+1}) - psi_h(g_i)) / (psi_h(q) - psi_h(g_i)) * label`.
pub fn tower_restriction(cg: &CanonicalGraph, tower: &TowerSpec, p: usize, q: usize) -> Result<TowerResult> {
    tower.validate(cg)?;
    let sep = |a: usize, b: usize| tower.h(a, b);
    check_separated(cg, &sep, true)?;
    let r = filtered_sum(cg, p, q, &tower.classes(), &sep)?;
    let xi = cg.oriented().xi();
    let paths = r
        .paths
        .into_iter()
        .map(|t| TowerPath {
            monotone: t.levels.windows(2).all(|w| w[0] <= w[1]),
            certificate: certify_term(&t.term, xi),
            term: t,
        })
        .collect();
    Ok(TowerResult { value: r.value, paths })
}

/// Whole table through the tower.
pub fn tower_table(cg: &CanonicalGraph, tower: &TowerSpec) -> Result<RestrictionTable> {
    tower.validate(cg)?;
    let sep = |a: usize, b: usize| tower.h(a, b);
    filtered_table(cg, &tower.classes(), &sep)
}

/// Checks `Lambda_q^- = prod_j hat-Lambda^-_{q_j}` at every vertex, where the
/// level-`j` factor is the product of positive weights at `pi_j(q)` along
/// level-`j` edges inside the fiber over `pi_{j-1}(q)`. `levels[j]` is the
/// GKM graph of level `j`, with vertex ids matching the tower projections.
/// Returns the vertices where the factorization fails.
pub fn lambda_factorization(od: &OrientedGraphData, tower: &TowerSpec, levels: &[GkmGraph]) -> Result<Vec<usize>> {
    let n = od.num_vertices();
    let m = od.rank();
    let mut bad = Vec::new();
    for q in 0..n {
        let mut prod = Poly::one(m);
        for (j, (lvl, g)) in tower.levels.iter().zip(levels).enumerate() {
            let qj = g.vertex_index(&lvl.projection[q])?;
            let below = |x: usize| -> Option<&str> {
                let xid = g.id(x);
                if j == 0 {
                    return Some("");
                }
                (0..n).find(|&v| lvl.projection[v] == xid).map(|v| tower.levels[j - 1].projection[v].as_str())
            };
            let fiber_of_q = below(qj);
            for k in g.out_edges(qj) {
                let e = g.edge(*k);
                let w = g.weight(e.dst, e.src).expect("mirror");
                if below(e.dst) == fiber_of_q && pair(w, od.xi())?.is_positive() {
                    prod = &prod * &Poly::linear(w);
                }
            }
        }
        if &prod != od.lambda_minus(q) {
            bad.push(q);
        }
    }
    Ok(bad)
}
