//! Fiber decomposition over a base graph: horizontal paths and the factor `P`.

use std::collections::BTreeMap;

use super::TowerLevel;
use crate::canonical::{single_form_table, RestrictionTable};
use crate::error::{Error, Result};
use crate::exactalg::{linfrac_poly_sum, LinFrac, Poly};
use crate::gkm::{CanonicalGraph, GkmGraph, OrientedGraphData, Path};

/// A projection of the total graph onto an oriented base graph.
#[derive(Clone, Debug)]
pub struct BaseProjection {
    pub base: OrientedGraphData,
    /// Base vertex of each total-space vertex.
    pub proj: Vec<usize>,
}

impl BaseProjection {
    /// Builds from a tower level whose projection ids name vertices of `base`.
    pub fn from_level(base: OrientedGraphData, level: &TowerLevel) -> Result<Self> {
        let proj = level.projection.iter().map(|id| base.graph().vertex_index(id)).collect::<Result<_>>()?;
        Ok(BaseProjection { base, proj })
    }

    /// Total-space vertices over base vertex `b`, in index order.
    pub fn fiber(&self, b: usize) -> Vec<usize> {
        (0..self.proj.len()).filter(|&v| self.proj[v] == b).collect()
    }
}

/// Base vertices strictly below the end of `base_path` in `phi` and not on it.
pub fn skipped_vertices(base: &OrientedGraphData, base_path: &[usize]) -> Vec<usize> {
    let Some(&end) = base_path.last() else {
        return vec![];
    };
    let top = base.phi(end);
    base.by_phi().iter().copied().filter(|r| base.phi(*r) < top && !base_path.contains(r)).collect()
}

/// All canonical paths from `p` whose steps change the base vertex.
pub fn horizontal_paths(cg: &CanonicalGraph, bp: &BaseProjection, p: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = vec![p];
    fn go(cg: &CanonicalGraph, bp: &BaseProjection, stack: &mut Vec<usize>, out: &mut Vec<Path>) {
        out.push(Path(stack.clone()));
        let v = *stack.last().unwrap();
        for e in cg.out_edges(v) {
            if bp.proj[e.dst] != bp.proj[v] {
                stack.push(e.dst);
                go(cg, bp, stack, out);
                stack.pop();
            }
        }
    }
    go(cg, bp, &mut stack, &mut out);
    out
}

fn check_horizontal(cg: &CanonicalGraph, bp: &BaseProjection, path: &Path) -> Result<()> {
    for (a, b) in path.steps() {
        if bp.proj[a] == bp.proj[b] {
            let od = cg.oriented();
            return Err(Error::NotHorizontal(od.id(a).into(), od.id(b).into()));
        }
    }
    Ok(())
}

/// `P(gamma) = Lambda~^-_{pi(s)} prod (psi~(pi g_{i+1}) - psi~(pi g_i)) / (psi~(pi s) - psi~(pi g_i)) * label_i`.
pub fn defining_p(cg: &CanonicalGraph, bp: &BaseProjection, path: &Path) -> Result<LinFrac> {
    check_horizontal(cg, bp, path)?;
    let bg = bp.base.graph();
    let s = path.last();
    let bs = bp.proj[s];
    let mut term = bp.base.lambda_minus_frac(bs);
    for (a, b) in path.steps() {
        let e = cg.edge(a, b).ok_or_else(|| Error::NotAnEdge(cg.oriented().id(a).into(), cg.oriented().id(b).into()))?;
        let num = bg.moment(bp.proj[b]) - bg.moment(bp.proj[a]);
        let den = bg.moment(bs) - bg.moment(bp.proj[a]);
        term = &(&(&term * &LinFrac::from_weight(&num)) * &LinFrac::inv_weight(&den)?) * &e.label;
    }
    Ok(term)
}

/// `P(gamma) = prod m(pi g_i, pi g_{i+1}) Theta_i / m(pi g_i, pi s) * prod_{r in SV} eta(r, pi s)`.
/// Needs the edges `(pi g_i, pi s)` in the base graph.
pub fn explicit_p(cg: &CanonicalGraph, bp: &BaseProjection, path: &Path) -> Result<LinFrac> {
    check_horizontal(cg, bp, path)?;
    let bg = bp.base.graph();
    let s = path.last();
    let bs = bp.proj[s];
    let base_path: Vec<usize> = path.vertices().iter().map(|&v| bp.proj[v]).collect();
    let missing = |a: usize| Error::NotAnEdge(bg.id(a).into(), bg.id(bs).into());
    let mut scalar = crate::exactalg::Rational::one();
    for (a, b) in path.steps() {
        let e = cg.edge(a, b).expect("canonical step");
        let (ba, bb) = (bp.proj[a], bp.proj[b]);
        let m_step = bp.base.magnitude(bg.edge_between(ba, bb).ok_or_else(|| missing(ba))?)?;
        let m_end = bp.base.magnitude(bg.edge_between(ba, bs).ok_or_else(|| missing(ba))?)?;
        scalar = &(&scalar * &(&m_step * &e.theta)) / &m_end;
    }
    let mut out = LinFrac::scalar(scalar);
    for r in skipped_vertices(&bp.base, &base_path) {
        let w = bg.weight(r, bs).ok_or_else(|| missing(r))?;
        out = &out * &LinFrac::from_weight(w);
    }
    Ok(out)
}

/// `alpha_p(q) = sum_{s over pi(q)} (sum_{gamma: p -> s horizontal} P(gamma)) * fiber(s, q)`.
pub fn fiber_decomposition(
    cg: &CanonicalGraph,
    bp: &BaseProjection,
    p: usize,
    q: usize,
    fiber: &dyn Fn(usize, usize) -> Result<Poly>,
) -> Result<Poly> {
    let m = cg.oriented().rank();
    let mut by_end: BTreeMap<usize, Vec<LinFrac>> = BTreeMap::new();
    for path in horizontal_paths(cg, bp, p) {
        let s = path.last();
        if bp.proj[s] == bp.proj[q] {
            by_end.entry(s).or_default().push(defining_p(cg, bp, &path)?);
        }
    }
    let mut terms = Vec::new();
    for (s, ps) in by_end {
        let f = fiber(s, q)?;
        if f.is_zero() {
            continue;
        }
        for l in ps {
            terms.push((l, f.clone()));
        }
    }
    linfrac_poly_sum(&terms, m)
}

/// Canonical classes of the induced subgraph over base vertex `b`, solved
/// with the single-form engine. Returns the fiber vertices and their table.
pub fn fiber_table_by_subgraph(cg: &CanonicalGraph, bp: &BaseProjection, b: usize) -> Result<(Vec<usize>, RestrictionTable)> {
    let od = cg.oriented();
    let verts = bp.fiber(b);
    let sub: GkmGraph = od.graph().induced(&verts);
    let fod = OrientedGraphData::new(sub, od.xi().clone())?;
    let fcg = CanonicalGraph::new(fod)?;
    Ok((verts, single_form_table(&fcg, false)?))
}
