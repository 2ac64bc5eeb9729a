//! Certificate for a restriction table.

use std::fmt;

use serde::Serialize;

use super::{RestrictionTable, WeightClasses};
use crate::exactalg::Poly;
use crate::gkm::CanonicalGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum CertFailure {
    Diagonal { p: String },
    Vanishing { p: String, q: String },
    Homogeneity { p: String, q: String },
    Divisibility { p: String, src: String, dst: String },
    Integrality { p: String, r: String, class: usize },
    Coefficients { p: String, q: String },
}

impl fmt::Display for CertFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertFailure::Diagonal { p } => write!(f, "alpha_{p}({p}) is not Lambda^-"),
            CertFailure::Vanishing { p, q } => write!(f, "alpha_{p}({q}) should vanish"),
            CertFailure::Homogeneity { p, q } => write!(f, "alpha_{p}({q}) has the wrong degree"),
            CertFailure::Divisibility { p, src, dst } => {
                write!(f, "alpha_{p}: difference along {src} -> {dst} is not divisible by its weight")
            }
            CertFailure::Integrality { p, r, class } => {
                write!(f, "class {class}: edge {p} -> {r} gives a non-integral value")
            }
            CertFailure::Coefficients { p, q } => write!(f, "alpha_{p}({q}) has non-integer coefficients"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub passed: bool,
    pub entries: usize,
    pub failures: Vec<CertFailure>,
}

/// Checks the defining properties of canonical classes, GKM divisibility on
/// every edge, and integrality:
/// `(w(r) - w(p)) * alpha_p(r) / Lambda_r^-` must be an integer on each
/// canonical edge for each class in `integral`; entries must have integer
/// coefficients when `integer_coeffs` is set.
pub fn certify_table(
    cg: &CanonicalGraph,
    table: &RestrictionTable,
    integral: &WeightClasses,
    integer_coeffs: bool,
) -> Certificate {
    let od = cg.oriented();
    let g = od.graph();
    let n = od.num_vertices();
    let id = |v: usize| od.id(v).to_string();
    let mut failures = Vec::new();
    for p in 0..n {
        let d = od.morse_index(p);
        if table.get(p, p) != od.lambda_minus(p) {
            failures.push(CertFailure::Diagonal { p: id(p) });
        }
        for q in 0..n {
            let v = table.get(p, q);
            if q != p && od.morse_index(q) <= d && !v.is_zero() {
                failures.push(CertFailure::Vanishing { p: id(p), q: id(q) });
            }
            if !v.is_zero() && (!v.is_homogeneous() || v.degree() != Some(d as u32)) {
                failures.push(CertFailure::Homogeneity { p: id(p), q: id(q) });
            }
            if integer_coeffs && !v.has_integer_coeffs() {
                failures.push(CertFailure::Coefficients { p: id(p), q: id(q) });
            }
        }
        for e in g.edges().iter().filter(|e| e.src < e.dst) {
            let diff = table.get(p, e.dst) - table.get(p, e.src);
            if !diff.is_zero() && !diff.reduce_mod_linear(&e.weight).map(|r| r.is_zero()).unwrap_or(false) {
                failures.push(CertFailure::Divisibility { p: id(p), src: id(e.src), dst: id(e.dst) });
            }
        }
    }
    for e in cg.edges() {
        for j in 0..integral.len() {
            let w = integral.value(j, e.dst) - integral.value(j, e.src);
            let num = &Poly::linear(&w) * table.get(e.src, e.dst);
            let ok = match num.div_exact(od.lambda_minus(e.dst)) {
                Ok(c) => c.is_constant() && c.constant_term().is_integer(),
                Err(_) => false,
            };
            if !ok {
                failures.push(CertFailure::Integrality { p: id(e.src), r: id(e.dst), class: j + 1 });
            }
        }
    }
    Certificate { passed: failures.is_empty(), entries: n * n, failures }
}
