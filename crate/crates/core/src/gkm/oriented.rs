//! A GKM graph together with a generic vector and the per-vertex data it induces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GkmGraph;
use crate::error::{Error, Result};
use crate::exactalg::{pair, rho_project, LinFrac, Poly, Rational, Weight, XiVector};

/// Graph plus certified generic `xi`, with `phi`, `lambda`, `Pi^-` and
/// `Lambda^-` cached per vertex. Immutable after construction.
#[derive(Clone, Debug)]
pub struct OrientedGraphData {
    graph: GkmGraph,
    xi: XiVector,
    phi: Vec<Rational>,
    neg_edges: Vec<Vec<usize>>,
    lambda_minus: Vec<Poly>,
    by_phi: Vec<usize>,
}

impl OrientedGraphData {
    /// Fails with `NotGeneric` if some edge weight pairs to zero with `xi`.
    pub fn new(graph: GkmGraph, xi: XiVector) -> Result<Self> {
        if xi.rank() != graph.rank() {
            return Err(Error::LengthMismatch { expected: graph.rank(), got: xi.rank() });
        }
        let mut neg_edges = vec![vec![]; graph.num_vertices()];
        for (k, e) in graph.edges().iter().enumerate() {
            let c = pair(&e.weight, &xi)?;
            if c.is_zero() {
                return Err(Error::NotGeneric(format!(
                    "weight of edge {} -> {} pairs to zero",
                    graph.id(e.src),
                    graph.id(e.dst)
                )));
            }
            if c.is_positive() {
                neg_edges[e.dst].push(k);
            }
        }
        let phi: Vec<Rational> =
            graph.vertices().iter().map(|v| pair(&v.moment, &xi)).collect::<Result<_>>()?;
        let m = graph.rank();
        let lambda_minus = neg_edges
            .iter()
            .map(|ks| ks.iter().fold(Poly::one(m), |acc, &k| &acc * &Poly::linear(&graph.edge(k).weight)))
            .collect();
        let mut by_phi: Vec<usize> = (0..graph.num_vertices()).collect();
        by_phi.sort_by(|&a, &b| phi[a].cmp(&phi[b]).then(a.cmp(&b)));
        Ok(OrientedGraphData { graph, xi, phi, neg_edges, lambda_minus, by_phi })
    }

    /// Uses [`choose_generic_xi`] with the given seed.
    pub fn with_seed(graph: GkmGraph, seed: u64) -> Result<Self> {
        let xi = choose_generic_xi(&graph, seed);
        OrientedGraphData::new(graph, xi)
    }

    pub fn graph(&self) -> &GkmGraph {
        &self.graph
    }

    pub fn xi(&self) -> &XiVector {
        &self.xi
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    pub fn id(&self, v: usize) -> &str {
        self.graph.id(v)
    }

    pub fn phi(&self, v: usize) -> &Rational {
        &self.phi[v]
    }

    /// `lambda(p)`: number of edges `(r, p)` with positive weight.
    pub fn morse_index(&self, p: usize) -> usize {
        self.neg_edges[p].len()
    }

    /// `Lambda_p^-`, the product of the positive weights `eta(r, p)`.
    pub fn lambda_minus(&self, p: usize) -> &Poly {
        &self.lambda_minus[p]
    }

    /// `Lambda_p^-` kept factored.
    pub fn lambda_minus_frac(&self, p: usize) -> LinFrac {
        self.neg_weights(p).fold(LinFrac::one(), |acc, w| &acc * &LinFrac::from_weight(w))
    }

    /// Edge indices `(r, p)` whose weights form `Pi_p^-`.
    pub fn neg_edges(&self, p: usize) -> &[usize] {
        &self.neg_edges[p]
    }

    /// The weights in `Pi_p^-`.
    pub fn neg_weights(&self, p: usize) -> impl Iterator<Item = &Weight> + '_ {
        self.neg_edges[p].iter().map(|&k| &self.graph.edge(k).weight)
    }

    /// Vertices in increasing `phi` (ties by index).
    pub fn by_phi(&self) -> &[usize] {
        &self.by_phi
    }

    /// Vertex of smallest `phi`.
    pub fn minimum(&self) -> usize {
        self.by_phi[0]
    }

    /// `phi(p) < phi(q)` implies `lambda(p) < lambda(q)` along every edge.
    pub fn is_index_increasing(&self) -> bool {
        self.first_index_violation().is_none()
    }

    pub(crate) fn first_index_violation(&self) -> Option<(usize, usize)> {
        self.graph.edges().iter().find_map(|e| {
            (self.phi[e.src] < self.phi[e.dst] && self.morse_index(e.src) >= self.morse_index(e.dst))
                .then_some((e.src, e.dst))
        })
    }

    /// Magnitude of edge `k = (r, s)`: the `m` with `psi(s) - psi(r) = m * eta(r, s)`.
    pub fn magnitude(&self, k: usize) -> Result<Rational> {
        magnitude(&self.graph, k)
    }

    /// `Theta(p, q) = rho(Lambda_p^-) / rho(Lambda_q^- / eta(p, q))` with
    /// `rho` the projection along `eta(p, q)`.
    pub fn theta(&self, p: usize, q: usize) -> Result<Rational> {
        let g = &self.graph;
        let eta = g.weight(p, q).ok_or_else(|| Error::NotAnEdge(g.id(p).into(), g.id(q).into()))?;
        let not_scalar = || Error::NotScalarRatio(g.id(p).into(), g.id(q).into());
        let m = self.rank();
        let project = |ws: &mut dyn Iterator<Item = &Weight>| -> Result<Poly> {
            let mut acc = Poly::one(m);
            for w in ws {
                acc = &acc * &Poly::linear(&rho_project(w, eta, &self.xi)?);
            }
            Ok(acc)
        };
        let top = project(&mut self.neg_weights(p))?;
        let mut skipped = false;
        let mut rest = self.neg_weights(q).filter(|w| {
            if !skipped && *w == eta {
                skipped = true;
                return false;
            }
            true
        });
        let bottom = project(&mut rest)?;
        if !skipped {
            return Err(not_scalar());
        }
        scalar_ratio(&top, &bottom).ok_or_else(not_scalar)
    }
}

/// `c` with `a = c * b` checked term by term; `None` if not proportional or either is zero.
fn scalar_ratio(a: &Poly, b: &Poly) -> Option<Rational> {
    let (lm, lb) = b.leading()?;
    let c = a.coeff(lm).checked_div(lb).ok()?;
    if c.is_zero() || a.num_terms() != b.num_terms() {
        return None;
    }
    b.terms().all(|(m, v)| a.coeff(m) == v * &c).then_some(c)
}

/// The magnitude of edge `k` of `g`.
pub fn magnitude(g: &GkmGraph, k: usize) -> Result<Rational> {
    let e = g.edge(k);
    (g.moment(e.dst) - g.moment(e.src))
        .ratio_to(&e.weight)
        .ok_or_else(|| Error::InvalidGraph(format!("edge {} -> {} has no magnitude", g.id(e.src), g.id(e.dst))))
}

fn is_generic(g: &GkmGraph, xi: &XiVector) -> bool {
    g.edges().iter().all(|e| pair(&e.weight, xi).map(|c| !c.is_zero()).unwrap_or(false))
}

/// A vector pairing nonzero with every edge weight.
///
/// Seed 0 gives `(1, B, B^2, ...)` with `B` one more than the largest
/// coordinate sum of a primitive edge weight, which separates every integral
/// weight. Other seeds draw integer vectors from a seeded ChaCha stream until
/// one is generic.
pub fn choose_generic_xi(g: &GkmGraph, seed: u64) -> XiVector {
    let m = g.rank();
    if seed == 0 {
        let mut b = Rational::one();
        for e in g.edges() {
            if let Ok((_, f)) = crate::exactalg::PrimitiveForm::split(&e.weight) {
                let s: Rational = f.weight().coords().iter().map(Rational::abs).sum();
                if s > b {
                    b = s;
                }
            }
        }
        let b = &b + &Rational::one();
        let xi = XiVector::new((0..m as u32).map(|i| b.pow(i)).collect());
        if is_generic(g, &xi) {
            return xi;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound = 8i64;
    loop {
        for _ in 0..64 {
            let xi = XiVector::new((0..m).map(|_| Rational::from_integer(rng.gen_range(-bound..=bound))).collect());
            if is_generic(g, &xi) {
                return xi;
            }
        }
        bound *= 4;
    }
}
