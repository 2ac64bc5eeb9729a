use super::RestrictionTable;
use crate::error::Result;
use crate::exactalg::Poly;
use crate::gkm::OrientedGraphData;

/// Coefficients `c^r` in `alpha_p * alpha_q = sum_r c^r alpha_r`, indexed by
/// vertex. Solved by evaluating at fixed points in increasing `phi`, where
/// the system is triangular with diagonal `Lambda_s^-`.
pub fn structure_constants(od: &OrientedGraphData, table: &RestrictionTable, p: usize, q: usize) -> Result<Vec<Poly>> {
    let n = od.num_vertices();
    let m = od.rank();
    let mut c = vec![Poly::zero(m); n];
    let mut done: Vec<usize> = Vec::new();
    for &s in od.by_phi() {
        let mut rest = table.get(p, s) * table.get(q, s);
        for &r in &done {
            if !c[r].is_zero() {
                rest = &rest - &(&c[r] * table.get(r, s));
            }
        }
        c[s] = rest.div_exact(od.lambda_minus(s))?;
        done.push(s);
    }
    Ok(c)
}
