//! Ordered-class engine: paths filtered by a nondecreasing separating level.

use super::{PathTerm, RestrictionTable, WeightClasses};
use crate::error::{Error, Result};
use crate::exactalg::{linfrac_sum_to_poly, LinFrac, Poly};
use crate::gkm::{CanonicalGraph, Path};

/// Value and per-path ledger of the filtered sum.
#[derive(Clone, Debug)]
pub struct OrderedResult {
    pub value: Poly,
    pub paths: Vec<PathTerm>,
}

/// Hypothesis check: `w_j(q) != w_j(p)` and `<w_j(q),xi> <= <w_j(p),xi>` must
/// force `alpha_p(q) = 0`. Returns the offending `(j, p, q)` triples.
pub fn tech_violations(cg: &CanonicalGraph, classes: &WeightClasses, table: &RestrictionTable) -> Vec<(usize, usize, usize)> {
    let od = cg.oriented();
    let xi = &od.xi().0;
    let n = od.num_vertices();
    let mut bad = Vec::new();
    for j in 0..classes.len() {
        let heights: Vec<_> = (0..n).map(|r| classes.value(j, r).dot(xi).expect("class rank")).collect();
        for p in 0..n {
            for q in 0..n {
                if classes.value(j, q) != classes.value(j, p)
                    && heights[q] <= heights[p]
                    && !table.get(p, q).is_zero()
                {
                    bad.push((j, p, q));
                }
            }
        }
    }
    bad
}

pub fn verify_tech(cg: &CanonicalGraph, classes: &WeightClasses, table: &RestrictionTable) -> bool {
    tech_violations(cg, classes, table).is_empty()
}

/// Canonical paths `p -> q` whose separating levels never decrease, with
/// the level of each step.
pub fn monotone_paths(cg: &CanonicalGraph, classes: &WeightClasses, p: usize, q: usize) -> Result<Vec<(Path, Vec<usize>)>> {
    let sep = |a: usize, b: usize| classes.separating(a, b);
    check_separated(cg, &sep, false)?;
    Ok(monotone_paths_by(cg, &sep, p, q))
}

pub(crate) fn check_separated(cg: &CanonicalGraph, sep: &dyn Fn(usize, usize) -> Option<usize>, tower: bool) -> Result<()> {
    for e in cg.edges() {
        if sep(e.src, e.dst).is_none() {
            let od = cg.oriented();
            let (a, b) = (od.id(e.src).into(), od.id(e.dst).into());
            return Err(if tower { Error::NoSeparatingLevel(a, b) } else { Error::NoSeparatingClass(a, b) });
        }
    }
    Ok(())
}

pub(crate) fn monotone_paths_by(
    cg: &CanonicalGraph,
    sep: &dyn Fn(usize, usize) -> Option<usize>,
    p: usize,
    q: usize,
) -> Vec<(Path, Vec<usize>)> {
    let mut out = Vec::new();
    let mut stack = vec![p];
    let mut levels = Vec::new();
    fn go(
        cg: &CanonicalGraph,
        sep: &dyn Fn(usize, usize) -> Option<usize>,
        q: usize,
        stack: &mut Vec<usize>,
        levels: &mut Vec<usize>,
        out: &mut Vec<(Path, Vec<usize>)>,
    ) {
        let v = *stack.last().unwrap();
        if v == q {
            out.push((Path(stack.clone()), levels.clone()));
            return;
        }
        let floor = levels.last().copied().unwrap_or(0);
        for e in cg.out_edges(v) {
            if !cg.reaches(e.dst, q) {
                continue;
            }
            let h = sep(v, e.dst).expect("separation checked");
            if h < floor {
                continue;
            }
            stack.push(e.dst);
            levels.push(h);
            go(cg, sep, q, stack, levels, out);
            levels.pop();
            stack.pop();
        }
    }
    go(cg, sep, q, &mut stack, &mut levels, &mut out);
    out
}

/// Filtered path sum with terms
/// `Lambda_q^- prod (w_h(g_{i+1}) - w_h(g_i)) / (w_h(q) - w_h(g_i)) * label`,
/// `h` the first class separating the step. Valid when [`verify_tech`] holds.
pub fn restriction_ordered(cg: &CanonicalGraph, p: usize, q: usize, classes: &WeightClasses) -> Result<OrderedResult> {
    let sep = |a: usize, b: usize| classes.separating(a, b);
    check_separated(cg, &sep, false)?;
    filtered_sum(cg, p, q, classes, &sep)
}

pub(crate) fn filtered_sum(
    cg: &CanonicalGraph,
    p: usize,
    q: usize,
    classes: &WeightClasses,
    sep: &dyn Fn(usize, usize) -> Option<usize>,
) -> Result<OrderedResult> {
    let od = cg.oriented();
    let base = od.lambda_minus_frac(q);
    let mut paths = Vec::new();
    for (path, levels) in monotone_paths_by(cg, sep, p, q) {
        let mut term = base.clone();
        for ((a, b), &h) in path.steps().zip(&levels) {
            let e = cg.edge(a, b).expect("canonical step");
            let num = classes.value(h, b) - classes.value(h, a);
            let den = classes.value(h, q) - classes.value(h, a);
            if den.is_zero() {
                return Err(Error::WellDefinednessViolation(od.id(a).into(), od.id(q).into()));
            }
            term = &(&(&term * &LinFrac::from_weight(&num)) * &LinFrac::inv_weight(&den)?) * &e.label;
        }
        paths.push(PathTerm {
            path: path.vertices().iter().map(|&v| od.id(v).to_string()).collect(),
            vertices: path,
            term,
            levels: levels.iter().map(|h| h + 1).collect(),
        });
    }
    let terms: Vec<LinFrac> = paths.iter().map(|t| t.term.clone()).collect();
    Ok(OrderedResult { value: linfrac_sum_to_poly(&terms, od.rank())?, paths })
}

/// Full table through [`restriction_ordered`].
pub fn ordered_table(cg: &CanonicalGraph, classes: &WeightClasses) -> Result<RestrictionTable> {
    let sep = |a: usize, b: usize| classes.separating(a, b);
    check_separated(cg, &sep, false)?;
    filtered_table(cg, classes, &sep)
}

pub(crate) fn filtered_table(
    cg: &CanonicalGraph,
    classes: &WeightClasses,
    sep: &dyn Fn(usize, usize) -> Option<usize>,
) -> Result<RestrictionTable> {
    let od = cg.oriented();
    let n = od.num_vertices();
    let mut t = RestrictionTable::zeros((0..n).map(|v| od.id(v).to_string()).collect(), od.rank());
    for p in 0..n {
        for q in 0..n {
            if cg.reaches(p, q) {
                t.set(p, q, filtered_sum(cg, p, q, classes, sep)?.value);
            }
        }
    }
    Ok(t)
}
