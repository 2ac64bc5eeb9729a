//! Single-form engine: the path-sum formula with the moment map as the only class.

use rayon::prelude::*;
use serde::Serialize;

use super::RestrictionTable;
use crate::error::{Error, Result};
use crate::exactalg::{linfrac_poly_sum, linfrac_sum_to_poly, LinFrac, Poly};
use crate::gkm::{enumerate_paths, CanonicalGraph, Path};

/// One contributing path and its factored term.
#[derive(Clone, Debug, Serialize)]
pub struct PathTerm {
    pub path: Vec<String>,
    #[serde(skip)]
    pub vertices: Path,
    pub term: LinFrac,
    /// Separating level per step (1-based), for filtered sums.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<usize>,
}

/// `alpha_p(q)` for `lambda(q) = lambda(p) + 1`: `Lambda_q^- Theta / eta` on
/// an edge, zero otherwise.
pub fn adjacent_restriction(cg: &CanonicalGraph, p: usize, q: usize) -> Result<Poly> {
    let od = cg.oriented();
    if od.morse_index(q) != od.morse_index(p) + 1 {
        return Err(Error::Unsupported(format!(
            "adjacent restriction needs an index gap of one between `{}` and `{}`",
            od.id(p),
            od.id(q)
        )));
    }
    let Some(eta) = od.graph().weight(p, q) else {
        return Ok(Poly::zero(od.rank()));
    };
    let theta = od.theta(p, q)?;
    Ok(od.lambda_minus(q).div_exact(&Poly::linear(eta))?.scale(&theta))
}

/// Column `q` of the table by recursion over out-edges in decreasing `phi`:
/// `alpha_p(q) = sum_(p,r) (psi(r)-psi(p))/(psi(q)-psi(p)) * label(p,r) * alpha_r(q)`.
pub fn single_form_column(cg: &CanonicalGraph, q: usize) -> Result<Vec<Poly>> {
    let od = cg.oriented();
    let m = od.rank();
    let g = od.graph();
    let mut col = vec![Poly::zero(m); od.num_vertices()];
    col[q] = od.lambda_minus(q).clone();
    for &p in od.by_phi().iter().rev() {
        if p == q || !cg.reaches(p, q) {
            continue;
        }
        let live: Vec<_> = cg.out_edges(p).filter(|e| !col[e.dst].is_zero()).collect();
        if live.is_empty() {
            continue;
        }
        let gap = g.moment(q) - g.moment(p);
        if gap.is_zero() {
            return Err(Error::WellDefinednessViolation(od.id(p).into(), od.id(q).into()));
        }
        let inv = LinFrac::inv_weight(&gap)?;
        let terms: Vec<(LinFrac, Poly)> = live.iter().map(|e| (&e.step * &inv, col[e.dst].clone())).collect();
        col[p] = linfrac_poly_sum(&terms, m)?;
    }
    Ok(col)
}

/// `alpha_p(q)` by the single-form recursion.
pub fn restriction_single_form(cg: &CanonicalGraph, p: usize, q: usize) -> Result<Poly> {
    Ok(single_form_column(cg, q)?.swap_remove(p))
}

/// The whole table, column by column; `parallel` spreads columns over threads.
pub fn single_form_table(cg: &CanonicalGraph, parallel: bool) -> Result<RestrictionTable> {
    let od = cg.oriented();
    let n = od.num_vertices();
    let cols: Vec<Vec<Poly>> = if parallel {
        (0..n).into_par_iter().map(|q| single_form_column(cg, q)).collect::<Result<_>>()?
    } else {
        (0..n).map(|q| single_form_column(cg, q)).collect::<Result<_>>()?
    };
    let mut t = RestrictionTable::zeros((0..n).map(|v| od.id(v).to_string()).collect(), od.rank());
    for (q, c) in cols.into_iter().enumerate() {
        t.set_column(q, c);
    }
    Ok(t)
}

/// The same value by explicit enumeration of canonical paths, with the
/// per-path terms `Lambda_q^- prod (psi(g_{i+1})-psi(g_i))/(psi(q)-psi(g_i)) * label`.
pub fn restriction_single_form_paths(cg: &CanonicalGraph, p: usize, q: usize) -> Result<(Poly, Vec<PathTerm>)> {
    let od = cg.oriented();
    let g = od.graph();
    let base = od.lambda_minus_frac(q);
    let mut ledger = Vec::new();
    for path in enumerate_paths(cg, p, q, false) {
        let mut term = base.clone();
        for (a, b) in path.steps() {
            let e = cg.edge(a, b).expect("canonical step");
            let gap = g.moment(q) - g.moment(a);
            if gap.is_zero() {
                return Err(Error::WellDefinednessViolation(od.id(a).into(), od.id(q).into()));
            }
            term = &(&term * &e.step) * &LinFrac::inv_weight(&gap)?;
        }
        ledger.push(PathTerm {
            path: path.vertices().iter().map(|&v| od.id(v).to_string()).collect(),
            vertices: path,
            term,
            levels: vec![],
        });
    }
    let terms: Vec<LinFrac> = ledger.iter().map(|t| t.term.clone()).collect();
    Ok((linfrac_sum_to_poly(&terms, od.rank())?, ledger))
}
