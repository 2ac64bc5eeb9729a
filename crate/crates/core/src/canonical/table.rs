//! Restriction tables `(p, q) -> alpha_p(q)`.

use std::fmt::Write;

use serde::ser::SerializeMap;
use serde::Serializer;

use crate::exactalg::Poly;

/// Dense table of restrictions indexed by vertex pairs; row `p`, column `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionTable {
    ids: Vec<String>,
    nvars: usize,
    entries: Vec<Poly>,
}

impl RestrictionTable {
    pub fn zeros(ids: Vec<String>, nvars: usize) -> Self {
        let n = ids.len();
        RestrictionTable { ids, nvars, entries: vec![Poly::zero(nvars); n * n] }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn get(&self, p: usize, q: usize) -> &Poly {
        &self.entries[p * self.ids.len() + q]
    }

    pub fn set(&mut self, p: usize, q: usize, v: Poly) {
        assert_eq!(v.nvars(), self.nvars);
        let n = self.ids.len();
        self.entries[p * n + q] = v;
    }

    pub fn set_column(&mut self, q: usize, col: Vec<Poly>) {
        for (p, v) in col.into_iter().enumerate() {
            self.set(p, q, v);
        }
    }

    pub fn set_row(&mut self, p: usize, row: Vec<Poly>) {
        for (q, v) in row.into_iter().enumerate() {
            self.set(p, q, v);
        }
    }

    /// Pairs `(p, q)` where the tables differ (same shape assumed).
    pub fn differences(&self, other: &RestrictionTable) -> Vec<(usize, usize)> {
        let n = self.len().min(other.len());
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if self.get(p, q) != other.get(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// JSON object keyed `"p|q"` in row-major vertex order.
    pub fn to_json_string(&self) -> String {
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::pretty(&mut buf);
        let mut map = ser.serialize_map(Some(self.entries.len())).expect("in-memory write");
        for (p, a) in self.ids.iter().enumerate() {
            for (q, b) in self.ids.iter().enumerate() {
                map.serialize_entry(&format!("{a}|{b}"), self.get(p, q)).expect("in-memory write");
            }
        }
        map.end().expect("in-memory write");
        String::from_utf8(buf).expect("utf8")
    }

    /// `p,q,degree,integral,terms,value`; degree is empty for zero entries.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("p,q,degree,integral,terms,value\n");
        for (p, a) in self.ids.iter().enumerate() {
            for (q, b) in self.ids.iter().enumerate() {
                let v = self.get(p, q);
                let deg = v.degree().map(|d| d.to_string()).unwrap_or_default();
                writeln!(s, "\"{a}\",\"{b}\",{deg},{},{},\"{v}\"", v.has_integer_coeffs(), v.num_terms()).unwrap();
            }
        }
        s
    }

    /// One `p | q : value` line per nonzero entry.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (p, a) in self.ids.iter().enumerate() {
            for (q, b) in self.ids.iter().enumerate() {
                let v = self.get(p, q);
                if !v.is_zero() {
                    writeln!(s, "{a} | {b} : {v}").unwrap();
                }
            }
        }
        s
    }
}
