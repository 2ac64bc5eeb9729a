//! The canonical graph: edges of a GKM graph along which the index rises by one.

use super::{OrientedGraphData, PathGraph};
use crate::error::{Error, Result};
use crate::exactalg::{LinFrac, Rational};

/// Canonical edge `src -> dst` with label `alpha_src(dst) / Lambda_dst^- = Theta / eta`.
#[derive(Clone, Debug)]
pub struct CanonicalEdge {
    pub src: usize,
    pub dst: usize,
    /// Index of the underlying GKM edge.
    pub gkm_edge: usize,
    pub theta: Rational,
    pub label: LinFrac,
    /// `(psi(dst) - psi(src)) * label`, i.e. `magnitude * Theta` as a fraction.
    pub step: LinFrac,
}

/// Canonical graph of an index-increasing oriented GKM graph. Owns the oriented data.
#[derive(Clone, Debug)]
pub struct CanonicalGraph {
    od: OrientedGraphData,
    edges: Vec<CanonicalEdge>,
    out: Vec<Vec<usize>>,
    into: Vec<Vec<usize>>,
    reach: Vec<Vec<u64>>,
}

impl CanonicalGraph {
    /// Fails with `NotIndexIncreasing` or with a `theta` error.
    pub fn new(od: OrientedGraphData) -> Result<Self> {
        if let Some((p, q)) = od.first_index_violation() {
            return Err(Error::NotIndexIncreasing(od.id(p).into(), od.id(q).into()));
        }
        let g = od.graph();
        let n = g.num_vertices();
        let mut edges = Vec::new();
        for (k, e) in g.edges().iter().enumerate() {
            if od.morse_index(e.dst) != od.morse_index(e.src) + 1 {
                continue;
            }
            let theta = od.theta(e.src, e.dst)?;
            let label = LinFrac::inv_weight(&e.weight)?.scale(&theta);
            let step = &LinFrac::from_weight(&(g.moment(e.dst) - g.moment(e.src))) * &label;
            edges.push(CanonicalEdge { src: e.src, dst: e.dst, gkm_edge: k, theta, label, step });
        }
        let mut out = vec![vec![]; n];
        let mut into = vec![vec![]; n];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push(i);
            into[e.dst].push(i);
        }
        let words = n.div_ceil(64);
        let mut reach = vec![vec![0u64; words]; n];
        for &v in od.by_phi().iter().rev() {
            let mut bits = vec![0u64; words];
            bits[v / 64] |= 1 << (v % 64);
            for &i in &out[v] {
                for (b, r) in bits.iter_mut().zip(&reach[edges[i].dst]) {
                    *b |= r;
                }
            }
            reach[v] = bits;
        }
        Ok(CanonicalGraph { od, edges, out, into, reach })
    }

    pub fn oriented(&self) -> &OrientedGraphData {
        &self.od
    }

    pub fn num_vertices(&self) -> usize {
        self.od.num_vertices()
    }

    pub fn edges(&self) -> &[CanonicalEdge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &CanonicalEdge> + '_ {
        self.out[v].iter().map(|&i| &self.edges[i])
    }

    pub fn in_edges(&self, v: usize) -> impl Iterator<Item = &CanonicalEdge> + '_ {
        self.into[v].iter().map(|&i| &self.edges[i])
    }

    pub fn edge(&self, src: usize, dst: usize) -> Option<&CanonicalEdge> {
        self.out_edges(src).find(|e| e.dst == dst)
    }

    /// Whether a canonical path `a -> ... -> b` exists (`a == b` included).
    pub fn reaches(&self, a: usize, b: usize) -> bool {
        self.reach[a][b / 64] >> (b % 64) & 1 == 1
    }

    /// Canonical edges whose `Theta` is not an integer.
    pub fn non_integral_thetas(&self) -> Vec<(usize, usize)> {
        self.edges.iter().filter(|e| !e.theta.is_integer()).map(|e| (e.src, e.dst)).collect()
    }
}

impl PathGraph for CanonicalGraph {
    fn successors(&self, v: usize) -> Vec<usize> {
        self.out_edges(v).map(|e| e.dst).collect()
    }

    fn phi(&self, v: usize) -> &Rational {
        self.od.phi(v)
    }
}
