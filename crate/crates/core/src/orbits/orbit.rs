//! Generic coadjoint orbits: the spec, the GKM graphs of every tower level, and
//! the canonical graph of the top level.

use std::collections::HashMap;

use serde::Serialize;

use super::{weyl_elements, CartanType, RootSystem, SignedPerm};
use crate::error::{Error, Result};
use crate::exactalg::{pair, LinFrac, Rational, Weight, XiVector};
use crate::fibration::{TowerLevel, TowerSpec};
use crate::gkm::{CanonicalGraph, Edge, GkmGraph, OrientedGraphData, Vertex};

/// Type, rank and the points `mu^1 .. mu^n` (index `j - 1` holds `mu^j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSpec {
    pub cartan: CartanType,
    pub rank: usize,
    pub mu: Vec<Weight>,
}

impl OrbitSpec {
    /// `mu^j_i = i - j - 1` for `i <= j`, then constant (zero for B/C/D; for A
    /// the value `mu^j_j + 1`, then everything shifted to sum zero).
    pub fn new(cartan: CartanType, rank: usize) -> Result<Self> {
        OrbitSpec::with_spacing(cartan, rank, 1)
    }

    /// As [`OrbitSpec::new`] but with gaps of `gap` between the first `j`
    /// entries: `mu^j_i = gap * (i - j) - 1`.
    pub fn with_spacing(cartan: CartanType, rank: usize, gap: i64) -> Result<Self> {
        let rs = RootSystem::new(cartan, rank)?;
        if gap < 1 {
            return Err(Error::InvalidSpec("gap must be positive".into()));
        }
        let m = rs.dim();
        let mut mu = Vec::with_capacity(rank);
        for j in 1..=rank {
            let mut v: Vec<Rational> = (1..=m)
                .map(|i| {
                    if i <= j {
                        Rational::from_integer(gap * (i as i64 - j as i64) - 1)
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            if cartan == CartanType::A {
                let shift = v.iter().cloned().sum::<Rational>().checked_div(&Rational::from_integer(m as i64))?;
                for c in &mut v {
                    *c = &*c - &shift;
                }
            }
            mu.push(Weight::new(v));
        }
        let spec = OrbitSpec { cartan, rank, mu };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_mu(cartan: CartanType, rank: usize, mu: Vec<Weight>) -> Result<Self> {
        let spec = OrbitSpec { cartan, rank, mu };
        spec.validate()?;
        Ok(spec)
    }

    pub fn root_system(&self) -> RootSystem {
        RootSystem::new(self.cartan, self.rank).expect("validated")
    }

    pub fn level(&self, j: usize) -> &Weight {
        &self.mu[j - 1]
    }

    /// Checks the normalizations of each `mu^j`.
    pub fn validate(&self) -> Result<()> {
        let rs = RootSystem::new(self.cartan, self.rank)?;
        let bad = |j: usize, why: &str| Err(Error::InvalidSpec(format!("mu^{j}: {why}")));
        if self.mu.len() != self.rank {
            return Err(Error::InvalidSpec(format!("expected {} levels, got {}", self.rank, self.mu.len())));
        }
        for (j, w) in (1..).zip(&self.mu) {
            if w.rank() != rs.dim() {
                return bad(j, "wrong length");
            }
            let c = w.coords();
            if c[..j].windows(2).any(|p| p[0] >= p[1]) {
                return bad(j, "first entries not strictly increasing");
            }
            match self.cartan {
                CartanType::A => {
                    if c[j] != &c[j - 1] + &Rational::one() {
                        return bad(j, "mu_{j+1} must equal mu_j + 1");
                    }
                    if c[j..].iter().any(|x| x != &c[j]) {
                        return bad(j, "tail not constant");
                    }
                    if !c.iter().cloned().sum::<Rational>().is_zero() {
                        return bad(j, "coordinates do not sum to zero");
                    }
                }
                _ => {
                    if c[j - 1] != -Rational::one() {
                        return bad(j, "mu_j must be -1");
                    }
                    if c[j..].iter().any(|x| !x.is_zero()) {
                        return bad(j, "tail not zero");
                    }
                }
            }
        }
        Ok(())
    }
}

/// Vertices of level `j` with the Weyl element each one is indexed by.
struct LevelData {
    graph: GkmGraph,
    /// Level vertex of each Weyl element.
    of_element: Vec<usize>,
}

fn build_level(spec: &OrbitSpec, rs: &RootSystem, elements: &[SignedPerm], j: usize) -> Result<LevelData> {
    let mu = spec.level(j);
    let mut index: HashMap<Weight, usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut of_element = Vec::with_capacity(elements.len());
    for w in elements {
        let p = w.act(mu);
        let k = *index.entry(p.clone()).or_insert_with(|| {
            vertices.push(Vertex { id: w.to_string(), moment: p });
            vertices.len() - 1
        });
        of_element.push(k);
    }
    let mut edges = Vec::new();
    for (a, v) in vertices.iter().enumerate() {
        for alpha in rs.positive_roots() {
            let c = v.moment.dot(alpha)?;
            if c.is_zero() {
                continue;
            }
            let target = super::reflect(&v.moment, alpha)?;
            let b = *index
                .get(&target)
                .ok_or_else(|| Error::InvalidSpec(format!("orbit not closed under reflection in {alpha}")))?;
            if a < b {
                // psi(b) - psi(a) = -<P, a^v> alpha, so the weight is -sign(c) alpha.
                let weight = if c.is_negative() { alpha.clone() } else { -alpha };
                edges.push(Edge { src: a, dst: b, weight });
            }
        }
    }
    Ok(LevelData { graph: GkmGraph::new(rs.dim(), vertices, edges)?, of_element })
}

/// GKM graph of the orbit through `mu^j`. Vertex ids are the one-line
/// notation of the shortest Weyl element reaching the vertex.
pub fn build_orbit_gkm(spec: &OrbitSpec, j: usize) -> Result<GkmGraph> {
    if j == 0 || j > spec.rank {
        return Err(Error::InvalidSpec(format!("level {j} out of range 1..={}", spec.rank)));
    }
    let rs = spec.root_system();
    let elements = weyl_elements(&rs);
    Ok(build_level(spec, &rs, &elements, j)?.graph)
}

/// `(m, m-1, .., 1)`: every positive root pairs positively, and for the
/// default points this is `-mu^n` up to a multiple of `(1, .., 1)`.
pub fn orbit_xi(spec: &OrbitSpec) -> XiVector {
    XiVector(spec.root_system().dominant_xi())
}

/// Diagnostics from checking the canonical graph against the Weyl group.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CocanReport {
    pub edges: usize,
    /// Canonical edges with `Theta != 1`.
    pub theta_not_one: Vec<(String, String)>,
    /// Edges not of the form `(w, w s_beta)` with length up by one, or whose
    /// label is not `1 / w(beta)`.
    pub bad_edges: Vec<(String, String)>,
    /// Vertices with `lambda != length`.
    pub lambda_mismatch: Vec<String>,
    /// `(w, w s_beta)` with length up by one but no canonical edge.
    pub missing_edges: Vec<(String, String)>,
}

impl CocanReport {
    pub fn is_ok(&self) -> bool {
        self.theta_not_one.is_empty()
            && self.bad_edges.is_empty()
            && self.lambda_mismatch.is_empty()
            && self.missing_edges.is_empty()
    }
}

/// A generic coadjoint orbit with its tower of partial flag orbits.
pub struct Orbit {
    spec: OrbitSpec,
    rs: RootSystem,
    elements: Vec<SignedPerm>,
    lengths: Vec<usize>,
    index: HashMap<SignedPerm, usize>,
    levels: Vec<GkmGraph>,
    tower: TowerSpec,
    cg: CanonicalGraph,
}

impl Orbit {
    pub fn new(spec: OrbitSpec) -> Result<Self> {
        spec.validate()?;
        let rs = spec.root_system();
        let elements = weyl_elements(&rs);
        let n = spec.rank;
        let mut datas = Vec::with_capacity(n);
        for j in 1..=n {
            datas.push(build_level(&spec, &rs, &elements, j)?);
        }
        let top = &datas[n - 1];
        if top.graph.num_vertices() != elements.len() {
            return Err(Error::InvalidSpec("mu^n is not regular".into()));
        }
        let xi = orbit_xi(&spec);
        let mut levels = Vec::with_capacity(n);
        let mut tower_levels = Vec::with_capacity(n);
        for (j, d) in datas.iter().enumerate() {
            let projection = d.of_element.iter().map(|&k| d.graph.id(k).to_string()).collect();
            let moment = d.of_element.iter().map(|&k| d.graph.moment(k).clone()).collect();
            let cpn_fiber = j + 1 == n || fibers_complete(&datas, j);
            tower_levels.push(TowerLevel { projection, moment, cpn_fiber });
        }
        for d in datas {
            levels.push(d.graph);
        }
        let od = OrientedGraphData::new(levels[n - 1].clone(), xi)?;
        if od.minimum() != 0 {
            return Err(Error::InvalidSpec("phi is not minimal at mu^n".into()));
        }
        let cg = CanonicalGraph::new(od)?;
        let lengths = elements.iter().map(|w| w.length(&rs)).collect();
        let index = elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let tower = TowerSpec { levels: tower_levels };
        Ok(Orbit { spec, rs, elements, lengths, index, levels, tower, cg })
    }

    /// Default points for the type and rank.
    pub fn standard(cartan: CartanType, rank: usize) -> Result<Self> {
        Orbit::new(OrbitSpec::new(cartan, rank)?)
    }

    pub fn spec(&self) -> &OrbitSpec {
        &self.spec
    }

    pub fn cartan(&self) -> CartanType {
        self.spec.cartan
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Vertex `i` of the top level is `elements()[i](mu^n)`.
    pub fn elements(&self) -> &[SignedPerm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &SignedPerm {
        &self.elements[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn index_of(&self, w: &SignedPerm) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.elements.len()
    }

    /// GKM graph of level `j`, 1-based; level `n` is the orbit itself.
    pub fn level_graph(&self, j: usize) -> &GkmGraph {
        &self.levels[j - 1]
    }

    pub fn level_graphs(&self) -> &[GkmGraph] {
        &self.levels
    }

    pub fn graph(&self) -> &GkmGraph {
        self.cg.oriented().graph()
    }

    pub fn oriented(&self) -> &OrientedGraphData {
        self.cg.oriented()
    }

    pub fn canonical(&self) -> &CanonicalGraph {
        &self.cg
    }

    pub fn tower(&self) -> &TowerSpec {
        &self.tower
    }

    pub fn xi(&self) -> &XiVector {
        self.cg.oriented().xi()
    }

    pub fn id(&self, i: usize) -> &str {
        self.graph().id(i)
    }

    /// First position (1-based) where the one-line notations differ.
    pub fn first_difference(&self, a: usize, b: usize) -> Option<usize> {
        let (x, y) = (self.elements[a].one_line(), self.elements[b].one_line());
        x.iter().zip(y).position(|(u, v)| u != v).map(|i| i + 1)
    }

    /// Finds a top vertex. `w:` forces a Weyl element in one-line notation,
    /// `m:` forces moment coordinates; otherwise a moment is tried first,
    /// then a Weyl element, then a raw vertex id.
    pub fn resolve(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        let unknown = || Error::UnknownVertex(s.to_string());
        if let Some(t) = s.strip_prefix("w:") {
            let w = SignedPerm::parse(t)?;
            return self.index_of(&w).ok_or_else(unknown);
        }
        if let Some(t) = s.strip_prefix("m:") {
            return self.by_moment(&Weight::parse(t)?).ok_or_else(unknown);
        }
        if let Ok(w) = Weight::parse(s) {
            if let Some(i) = self.by_moment(&w) {
                return Ok(i);
            }
        }
        if let Ok(w) = SignedPerm::parse(s) {
            if let Some(i) = self.index_of(&w) {
                return Ok(i);
            }
        }
        self.graph().vertex_index(s)
    }

    fn by_moment(&self, w: &Weight) -> Option<usize> {
        let g = self.graph();
        (0..g.num_vertices()).find(|&i| g.moment(i) == w)
    }

    /// Checks the canonical graph against `E = {(w, w s_beta) : l up by one}`,
    /// labels `1 / w(beta)`, `Theta = 1` and `lambda = l`.
    pub fn cocan_report(&self) -> Result<CocanReport> {
        let od = self.oriented();
        let mut r = CocanReport { edges: self.cg.edges().len(), ..Default::default() };
        let refl: Vec<(Weight, SignedPerm)> = self
            .rs
            .positive_roots()
            .iter()
            .map(|b| Ok((b.clone(), SignedPerm::reflection(b)?)))
            .collect::<Result<_>>()?;
        for i in 0..self.num_vertices() {
            if od.morse_index(i) != self.lengths[i] {
                r.lambda_mismatch.push(self.id(i).into());
            }
            for (_, s) in &refl {
                let j = self.index[&self.elements[i].compose(s)];
                if self.lengths[j] == self.lengths[i] + 1 && self.cg.edge(i, j).is_none() {
                    r.missing_edges.push((self.id(i).into(), self.id(j).into()));
                }
            }
        }
        for e in self.cg.edges() {
            let pair_ids = (self.id(e.src).to_string(), self.id(e.dst).to_string());
            if !e.theta.is_one() {
                r.theta_not_one.push(pair_ids.clone());
            }
            let w = &self.elements[e.src];
            let found = refl.iter().find(|(_, s)| self.elements[e.dst] == w.compose(s));
            let ok = match found {
                Some((beta, _)) => {
                    let wb = w.act(beta);
                    self.lengths[e.dst] == self.lengths[e.src] + 1
                        && pair(&wb, self.xi())?.is_positive()
                        && e.label == LinFrac::inv_weight(&wb)?
                }
                None => false,
            };
            if !ok {
                r.bad_edges.push(pair_ids);
            }
        }
        Ok(r)
    }
}

/// Whether every fiber of level `j` over level `j - 1` induces a complete graph.
fn fibers_complete(datas: &[LevelData], j: usize) -> bool {
    let g = &datas[j].graph;
    let n = g.num_vertices();
    let below: Vec<usize> = if j == 0 {
        vec![0; n]
    } else {
        let mut b = vec![usize::MAX; n];
        for (e, &k) in datas[j].of_element.iter().enumerate() {
            b[k] = datas[j - 1].of_element[e];
        }
        b
    };
    (0..n).all(|a| (a + 1..n).all(|c| below[a] != below[c] || g.edge_between(a, c).is_some()))
}
