//! Interpolation solver for canonical classes, used as an independent oracle.
//!
//! For each `p` the unknown values `alpha_p(q)`, `lambda(q) > lambda(p)`, are
//! found in increasing `phi` order as the unique homogeneous polynomial of
//! degree `lambda(p)` congruent to the already known neighbor values modulo
//! the connecting weights. Any `lambda(p) + 1` such congruences determine the
//! value; all remaining edge conditions are checked afterwards.

use rayon::prelude::*;

use super::RestrictionTable;
use crate::error::{Error, Result};
use crate::exactalg::{Poly, Weight};
use crate::gkm::OrientedGraphData;

/// The unique `f` of degree `d` with `f = values[i] mod forms[i]`, built in
/// Newton form `f = a_1 + l_1 * g`.
fn interpolate(d: usize, forms: &[&Weight], values: &[Poly]) -> std::result::Result<Poly, String> {
    let m = values[0].nvars();
    if d == 0 {
        let c = values[0].reduce_mod_linear(forms[0]).map_err(|e| e.to_string())?;
        for (f, v) in forms.iter().zip(values).skip(1) {
            if v.reduce_mod_linear(f).map_err(|e| e.to_string())? != c {
                return Err("constant congruences disagree".into());
            }
        }
        if !c.is_constant() {
            return Err("non-constant value in degree zero".into());
        }
        return Ok(c);
    }
    if values.iter().all(Poly::is_zero) {
        return Ok(Poly::zero(m));
    }
    let a1 = &values[0];
    let l1 = forms[0];
    let mut next = Vec::with_capacity(forms.len() - 1);
    for (f, v) in forms.iter().zip(values).skip(1) {
        let diff = (v - a1).reduce_mod_linear(f).map_err(|e| e.to_string())?;
        let l = Poly::linear(l1).reduce_mod_linear(f).map_err(|e| e.to_string())?;
        if l.is_zero() {
            return Err("dependent weights".into());
        }
        next.push(diff.div_exact(&l).map_err(|_| "congruences are inconsistent".to_string())?);
    }
    let g = interpolate(d - 1, &forms[1..], &next)?;
    Ok(a1 + &(&Poly::linear(l1) * &g))
}

/// Row `p` of the table.
pub fn brute_row(od: &OrientedGraphData, p: usize) -> Result<Vec<Poly>> {
    let g = od.graph();
    let m = od.rank();
    let n = od.num_vertices();
    let d = od.morse_index(p);
    let mut row = vec![Poly::zero(m); n];
    row[p] = od.lambda_minus(p).clone();
    for &q in od.by_phi() {
        if q == p || od.morse_index(q) <= d {
            continue;
        }
        let lower = od.neg_edges(q);
        if lower.len() <= d {
            return Err(Error::NonUniqueSolution(od.id(p).into(), od.id(q).into()));
        }
        let use_edges = &lower[..d + 1];
        let forms: Vec<&Weight> = use_edges.iter().map(|&k| &g.edge(k).weight).collect();
        let values: Vec<Poly> = use_edges.iter().map(|&k| row[g.edge(k).src].clone()).collect();
        row[q] = interpolate(d, &forms, &values).map_err(|e| Error::NoSolution(od.id(p).into(), format!("at `{}`: {e}", od.id(q))))?;
    }
    for e in g.edges().iter().filter(|e| e.src < e.dst) {
        let diff = &row[e.dst] - &row[e.src];
        if !diff.is_zero() && diff.div_exact(&Poly::linear(&e.weight)).is_err() {
            return Err(Error::NoSolution(
                od.id(p).into(),
                format!("edge {} -> {} not divisible", od.id(e.src), od.id(e.dst)),
            ));
        }
    }
    Ok(row)
}

/// All canonical classes by interpolation; `parallel` spreads rows over threads.
pub fn brute_solve_canonical_with(od: &OrientedGraphData, parallel: bool) -> Result<RestrictionTable> {
    let n = od.num_vertices();
    let rows: Vec<Vec<Poly>> = if parallel {
        (0..n).into_par_iter().map(|p| brute_row(od, p)).collect::<Result<_>>()?
    } else {
        (0..n).map(|p| brute_row(od, p)).collect::<Result<_>>()?
    };
    let mut t = RestrictionTable::zeros((0..n).map(|v| od.id(v).to_string()).collect(), od.rank());
    for (p, r) in rows.into_iter().enumerate() {
        t.set_row(p, r);
    }
    Ok(t)
}

pub fn brute_solve_canonical(od: &OrientedGraphData) -> Result<RestrictionTable> {
    brute_solve_canonical_with(od, false)
}
