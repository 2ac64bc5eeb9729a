//! Path enumeration on GKM and canonical graphs.

use super::OrientedGraphData;
use crate::exactalg::Rational;

/// A vertex sequence `gamma_1 .. gamma_{k+1}` of length `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(pub Vec<usize>);

impl Path {
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn steps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("paths are nonempty")
    }
}

/// Graphs with directed successor lists and a height function.
pub trait PathGraph {
    fn successors(&self, v: usize) -> Vec<usize>;
    fn phi(&self, v: usize) -> &Rational;
}

impl PathGraph for OrientedGraphData {
    fn successors(&self, v: usize) -> Vec<usize> {
        self.graph().neighbors(v).collect()
    }

    fn phi(&self, v: usize) -> &Rational {
        OrientedGraphData::phi(self, v)
    }
}

/// All simple paths `p -> q`, optionally only those along which `phi` increases.
/// Order is depth-first by successor index.
pub fn enumerate_paths<G: PathGraph + ?Sized>(g: &G, p: usize, q: usize, ascending_only: bool) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = vec![p];
    let mut on_path = std::collections::HashSet::from([p]);
    fn go<G: PathGraph + ?Sized>(
        g: &G,
        q: usize,
        asc: bool,
        stack: &mut Vec<usize>,
        on_path: &mut std::collections::HashSet<usize>,
        out: &mut Vec<Path>,
    ) {
        let v = *stack.last().unwrap();
        if v == q {
            out.push(Path(stack.clone()));
            return;
        }
        if asc && g.phi(v) >= g.phi(q) {
            return;
        }
        for w in g.successors(v) {
            if on_path.contains(&w) || (asc && g.phi(w) <= g.phi(v)) {
                continue;
            }
            stack.push(w);
            on_path.insert(w);
            go(g, q, asc, stack, on_path, out);
            on_path.remove(&w);
            stack.pop();
        }
    }
    go(g, q, ascending_only, &mut stack, &mut on_path, &mut out);
    out
}
