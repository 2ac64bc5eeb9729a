//! Multi-engine agreement reports.

use serde::Serialize;

use crate::canonical::{brute_solve_canonical_with, ordered_table, single_form_table, RestrictionTable, WeightClasses};
use crate::error::{Error, Result};
use crate::fibration::tower_table;
use crate::gkm::CanonicalGraph;
use crate::orbits::{Orbit, TypedEngine};

use super::{billey_table, MAX_WORD_LENGTH};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub p: String,
    pub q: String,
    pub engine_a: String,
    pub value_a: String,
    pub engine_b: String,
    pub value_b: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossReport {
    pub engines: Vec<String>,
    pub pairs_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossReport {
    pub fn agree(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn summary(&self) -> String {
        format!("{} mismatches / {} pairs", self.mismatches.len(), self.pairs_checked)
    }
}

/// Compares every table against the first one, entry by entry.
pub fn compare_tables(tables: &[(String, RestrictionTable)]) -> CrossReport {
    let engines = tables.iter().map(|(n, _)| n.clone()).collect();
    let Some(((name_a, a), rest)) = tables.split_first() else {
        return CrossReport { engines, pairs_checked: 0, mismatches: vec![] };
    };
    let mut mismatches = Vec::new();
    for (name_b, b) in rest {
        for (p, q) in a.differences(b) {
            mismatches.push(Mismatch {
                p: a.ids()[p].clone(),
                q: a.ids()[q].clone(),
                engine_a: name_a.clone(),
                value_a: a.get(p, q).to_string(),
                engine_b: name_b.clone(),
                value_b: b.get(p, q).to_string(),
            });
        }
    }
    CrossReport { engines, pairs_checked: a.len() * a.len(), mismatches }
}

/// Single-form DP, moment-ordered filtered sum and brute force on a GKM graph.
pub fn cross_validate_graph(cg: &CanonicalGraph, parallel: bool) -> Result<CrossReport> {
    let od = cg.oriented();
    let tables = vec![
        ("gz".to_string(), single_form_table(cg, parallel)?),
        ("ordered".to_string(), ordered_table(cg, &WeightClasses::moment(od))?),
        ("brute".to_string(), brute_solve_canonical_with(od, parallel)?),
    ];
    Ok(compare_tables(&tables))
}

/// Every engine that applies to the orbit: gz, tower, brute, typed when a
/// closed formula exists, and billey when the longest word fits the subword cap.
pub fn cross_validate(orbit: &Orbit, parallel: bool) -> Result<CrossReport> {
    let cg = orbit.canonical();
    let mut tables = vec![
        ("gz".to_string(), single_form_table(cg, parallel)?),
        ("tower".to_string(), tower_table(cg, orbit.tower())?),
        ("brute".to_string(), brute_solve_canonical_with(orbit.oriented(), parallel)?),
    ];
    match TypedEngine::new(orbit) {
        Ok(t) => tables.push(("typed".to_string(), t.table(parallel)?)),
        Err(Error::Unsupported(_)) => {}
        Err(e) => return Err(e),
    }
    let longest = (0..orbit.num_vertices()).map(|i| orbit.length(i)).max().unwrap_or(0);
    if longest <= MAX_WORD_LENGTH {
        tables.push(("billey".to_string(), billey_table(orbit)?));
    }
    Ok(compare_tables(&tables))
}
