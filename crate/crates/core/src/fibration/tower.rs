//! Towers of projections given combinatorially.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canonical::WeightClasses;
use crate::error::{Error, Result};
use crate::exactalg::Weight;
use crate::gkm::{CanonicalGraph, GkmGraph};

/// One level: vertex projection and pulled-back moment, both indexed by top vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub projection: Vec<String>,
    pub moment: Vec<Weight>,
    /// Declared: the fibers of this level have the cohomology of a projective space.
    pub cpn_fiber: bool,
}

/// Levels `1..k`; level `k` must be the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSpec {
    pub levels: Vec<TowerLevel>,
}

#[derive(Serialize, Deserialize)]
struct LevelRepr {
    projection: BTreeMap<String, String>,
    moment: BTreeMap<String, Weight>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    cpn_fiber: bool,
}

#[derive(Serialize, Deserialize)]
struct TowerRepr {
    levels: Vec<LevelRepr>,
}

impl TowerSpec {
    /// The one-level tower: identity projection, the moment map.
    pub fn trivial(g: &GkmGraph) -> Self {
        TowerSpec { levels: vec![identity_level(g)] }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Reads the JSON form against the vertex ids of `g`. If the last level is
    /// not the identity, an identity level carrying the moment map is appended.
    pub fn from_json_str(s: &str, g: &GkmGraph) -> Result<Self> {
        let r: TowerRepr = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut levels = Vec::new();
        for (j, l) in r.levels.into_iter().enumerate() {
            let mut projection = Vec::with_capacity(g.num_vertices());
            let mut moment = Vec::with_capacity(g.num_vertices());
            for v in 0..g.num_vertices() {
                let id = g.id(v);
                let missing = || Error::InvalidTower(format!("level {} has no entry for `{id}`", j + 1));
                projection.push(l.projection.get(id).ok_or_else(missing)?.clone());
                let w = l.moment.get(id).ok_or_else(missing)?.clone();
                if w.rank() != g.rank() {
                    return Err(Error::InvalidTower(format!("level {}: moment of `{id}` has wrong length", j + 1)));
                }
                moment.push(w);
            }
            levels.push(TowerLevel { projection, moment, cpn_fiber: l.cpn_fiber });
        }
        let mut t = TowerSpec { levels };
        if !t.levels.last().is_some_and(|l| is_identity(l, g)) {
            t.levels.push(identity_level(g));
        }
        Ok(t)
    }

    pub fn to_json(&self, g: &GkmGraph) -> serde_json::Value {
        let levels = self
            .levels
            .iter()
            .map(|l| LevelRepr {
                projection: (0..g.num_vertices()).map(|v| (g.id(v).to_string(), l.projection[v].clone())).collect(),
                moment: (0..g.num_vertices()).map(|v| (g.id(v).to_string(), l.moment[v].clone())).collect(),
                cpn_fiber: l.cpn_fiber,
            })
            .collect();
        serde_json::to_value(TowerRepr { levels }).expect("tower serializes")
    }

    /// `h(r, s) = min { j : pi_j(r) != pi_j(s) }` (0-based).
    pub fn h(&self, r: usize, s: usize) -> Option<usize> {
        self.levels.iter().position(|l| l.projection[r] != l.projection[s])
    }

    /// The pulled-back moments as ordered classes.
    pub fn classes(&self) -> WeightClasses {
        WeightClasses::new(self.levels.iter().map(|l| l.moment.clone()).collect())
    }

    /// Checks identity top level, factoring of projections, constancy of the
    /// pulled-back moments on fibers, separation and weight preservation on
    /// canonical edges.
    pub fn validate(&self, cg: &CanonicalGraph) -> Result<()> {
        let od = cg.oriented();
        let g = od.graph();
        let n = g.num_vertices();
        let last = self.levels.last().ok_or_else(|| Error::InvalidTower("no levels".into()))?;
        if !is_identity(last, g) {
            return Err(Error::InvalidTower("last level is not the identity".into()));
        }
        for (j, l) in self.levels.iter().enumerate() {
            if l.projection.len() != n || l.moment.len() != n {
                return Err(Error::InvalidTower(format!("level {} has the wrong size", j + 1)));
            }
        }
        for r in 0..n {
            for s in r + 1..n {
                for j in 0..self.levels.len() {
                    let l = &self.levels[j];
                    if l.projection[r] == l.projection[s] && l.moment[r] != l.moment[s] {
                        return Err(Error::InvalidTower(format!(
                            "level {}: moment differs on the fiber of `{}`",
                            j + 1,
                            l.projection[r]
                        )));
                    }
                    if j + 1 < self.levels.len() {
                        let up = &self.levels[j + 1];
                        if up.projection[r] == up.projection[s] && l.projection[r] != l.projection[s] {
                            return Err(Error::InvalidTower(format!(
                                "level {} does not factor through level {}",
                                j + 1,
                                j + 2
                            )));
                        }
                    }
                }
            }
        }
        for e in cg.edges() {
            let h = self
                .h(e.src, e.dst)
                .ok_or_else(|| Error::NoSeparatingLevel(od.id(e.src).into(), od.id(e.dst).into()))?;
            let l = &self.levels[h];
            let diff = &l.moment[e.dst] - &l.moment[e.src];
            let eta = g.weight(e.src, e.dst).expect("canonical edge is a GKM edge");
            if !matches!(diff.ratio_to(eta), Some(c) if c.is_positive()) {
                return Err(Error::WeightNotPreserved { level: h + 1, src: od.id(e.src).into(), dst: od.id(e.dst).into() });
            }
        }
        Ok(())
    }
}

fn is_identity(l: &TowerLevel, g: &GkmGraph) -> bool {
    l.projection.len() == g.num_vertices() && (0..g.num_vertices()).all(|v| l.projection[v] == g.id(v))
}

fn identity_level(g: &GkmGraph) -> TowerLevel {
    TowerLevel {
        projection: (0..g.num_vertices()).map(|v| g.id(v).to_string()).collect(),
        moment: g.vertices().iter().map(|v| v.moment.clone()).collect(),
        cpn_fiber: false,
    }
}
