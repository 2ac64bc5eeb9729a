//! GKM graphs: vertices with moment images, symmetric weighted edges.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::Weight;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub moment: Weight,
}

/// Directed edge `src -> dst` labelled by the weight `eta(src, dst)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub weight: Weight,
}

/// A moment graph. Both orientations of every edge are stored; a missing
/// mirror is synthesized with the negated weight at construction.
#[derive(Clone, Debug)]
pub struct GkmGraph {
    rank: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
    out: Vec<Vec<usize>>,
    lookup: HashMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct VertexRepr {
    id: String,
    moment: Weight,
}

#[derive(Serialize, Deserialize)]
struct EdgeRepr {
    src: String,
    dst: String,
    weight: Weight,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    rank: usize,
    vertices: Vec<VertexRepr>,
    edges: Vec<EdgeRepr>,
}

impl GkmGraph {
    /// Builds a graph from vertices and edges given by vertex index.
    ///
    /// Structural problems (bad lengths, unknown or duplicate ids, loops,
    /// repeated edges) are errors; GKM axiom violations are left for
    /// [`validate_gkm`] to report.
    pub fn new(rank: usize, vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.moment.rank() != rank {
                return Err(Error::InvalidGraph(format!(
                    "vertex `{}` has moment of length {}, expected {rank}",
                    v.id,
                    v.moment.rank()
                )));
            }
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id `{}`", v.id)));
            }
        }
        let mut lookup = HashMap::new();
        let mut all = Vec::with_capacity(edges.len() * 2);
        for e in edges {
            if e.src >= vertices.len() || e.dst >= vertices.len() {
                return Err(Error::InvalidGraph("edge endpoint out of range".into()));
            }
            if e.src == e.dst {
                return Err(Error::InvalidGraph(format!("loop at `{}`", vertices[e.src].id)));
            }
            if e.weight.rank() != rank {
                return Err(Error::InvalidGraph(format!(
                    "edge {} -> {} has weight of length {}, expected {rank}",
                    vertices[e.src].id,
                    vertices[e.dst].id,
                    e.weight.rank()
                )));
            }
            if lookup.insert((e.src, e.dst), all.len()).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "repeated edge {} -> {}",
                    vertices[e.src].id, vertices[e.dst].id
                )));
            }
            all.push(e);
        }
        let given = all.len();
        for k in 0..given {
            let (s, d) = (all[k].src, all[k].dst);
            if !lookup.contains_key(&(d, s)) {
                lookup.insert((d, s), all.len());
                let w = -&all[k].weight;
                all.push(Edge { src: d, dst: s, weight: w });
            }
        }
        let mut out = vec![vec![]; vertices.len()];
        for (k, e) in all.iter().enumerate() {
            out[e.src].push(k);
        }
        for o in &mut out {
            o.sort_by_key(|&k| all[k].dst);
        }
        Ok(GkmGraph { rank, vertices, edges: all, index, out, lookup })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let r: GraphRepr = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let vertices: Vec<Vertex> = r.vertices.into_iter().map(|v| Vertex { id: v.id, moment: v.moment }).collect();
        let pos: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
        let mut edges = Vec::new();
        for e in r.edges {
            let src = *pos.get(e.src.as_str()).ok_or_else(|| Error::UnknownVertex(e.src.clone()))?;
            let dst = *pos.get(e.dst.as_str()).ok_or_else(|| Error::UnknownVertex(e.dst.clone()))?;
            edges.push(Edge { src, dst, weight: e.weight });
        }
        GkmGraph::new(r.rank, vertices, edges)
    }

    /// JSON with one entry per unordered edge (oriented from the lower index).
    pub fn to_json(&self) -> serde_json::Value {
        let r = GraphRepr {
            rank: self.rank,
            vertices: self.vertices.iter().map(|v| VertexRepr { id: v.id.clone(), moment: v.moment.clone() }).collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| e.src < e.dst)
                .map(|e| EdgeRepr {
                    src: self.vertices[e.src].id.clone(),
                    dst: self.vertices[e.dst].id.clone(),
                    weight: e.weight.clone(),
                })
                .collect(),
        };
        serde_json::to_value(r).expect("graph serializes")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn moment(&self, v: usize) -> &Weight {
        &self.vertices[v].moment
    }

    /// Both orientations of every edge.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Indices of edges leaving `v`, ordered by target.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].iter().map(|&k| self.edges[k].dst)
    }

    pub fn edge_between(&self, p: usize, q: usize) -> Option<usize> {
        self.lookup.get(&(p, q)).copied()
    }

    /// `eta(p, q)`.
    pub fn weight(&self, p: usize, q: usize) -> Option<&Weight> {
        self.edge_between(p, q).map(|k| &self.edges[k].weight)
    }

    /// Subgraph induced on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> GkmGraph {
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(Edge { src: *pos.get(&e.src)?, dst: *pos.get(&e.dst)?, weight: e.weight.clone() })
            })
            .collect();
        GkmGraph::new(self.rank, vertices, edges).expect("induced subgraph of a valid graph")
    }
}

/// A single violated GKM axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ZeroWeight { src: String, dst: String },
    Symmetry { src: String, dst: String },
    Positivity { src: String, dst: String },
    Independence { vertex: String, a: String, b: String },
    Regularity { vertex: String, valence: usize, expected: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroWeight { src, dst } => write!(f, "edge {src} -> {dst}: zero weight"),
            Violation::Symmetry { src, dst } => {
                write!(f, "edge {src} -> {dst}: mirror weight is not the negative")
            }
            Violation::Positivity { src, dst } => write!(
                f,
                "edge {src} -> {dst}: moment difference is not a positive multiple of the weight"
            ),
            Violation::Independence { vertex, a, b } => write!(
                f,
                "vertex {vertex}: weights from {a} and {b} are linearly dependent"
            ),
            Violation::Regularity { vertex, valence, expected } => {
                write!(f, "vertex {vertex}: valence {valence}, expected {expected}")
            }
        }
    }
}

/// Outcome of [`validate_gkm`]; empty `violations` means valid.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub vertices: usize,
    pub edges: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks symmetry, positivity, pairwise independence and regularity.
pub fn validate_gkm(g: &GkmGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let id = |v: usize| g.id(v).to_string();
    for e in g.edges() {
        if e.weight.is_zero() {
            violations.push(Violation::ZeroWeight { src: id(e.src), dst: id(e.dst) });
            continue;
        }
        let mirror = g.weight(e.dst, e.src).expect("mirror synthesized");
        if e.src < e.dst && *mirror != -&e.weight {
            violations.push(Violation::Symmetry { src: id(e.src), dst: id(e.dst) });
        }
        let diff = g.moment(e.dst) - g.moment(e.src);
        if !matches!(diff.ratio_to(&e.weight), Some(c) if c.is_positive()) {
            violations.push(Violation::Positivity { src: id(e.src), dst: id(e.dst) });
        }
    }
    for v in 0..g.num_vertices() {
        let ks = g.out_edges(v);
        for (i, &a) in ks.iter().enumerate() {
            for &b in &ks[i + 1..] {
                let (wa, wb) = (&g.edge(a).weight, &g.edge(b).weight);
                if !wa.is_zero() && !wb.is_zero() && wa.is_proportional(wb) {
                    violations.push(Violation::Independence {
                        vertex: id(v),
                        a: id(g.edge(a).dst),
                        b: id(g.edge(b).dst),
                    });
                }
            }
        }
    }
    if let Some(expected) = (0..g.num_vertices()).map(|v| g.out_edges(v).len()).max() {
        for v in 0..g.num_vertices() {
            let valence = g.out_edges(v).len();
            if valence != expected {
                violations.push(Violation::Regularity { vertex: id(v), valence, expected });
            }
        }
    }
    ValidationReport { vertices: g.num_vertices(), edges: g.edges().len() / 2, violations }
}
