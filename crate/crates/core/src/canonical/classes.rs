use crate::exactalg::Weight;
use crate::gkm::OrientedGraphData;

/// Degree-two classes given by their restrictions `w_j(r)` to every vertex.
/// A single class is the single-form mode; several form an ordered list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightClasses {
    classes: Vec<Vec<Weight>>,
}

impl WeightClasses {
    pub fn new(classes: Vec<Vec<Weight>>) -> Self {
        WeightClasses { classes }
    }

    /// The moment map itself.
    pub fn moment(od: &OrientedGraphData) -> Self {
        WeightClasses { classes: vec![od.graph().vertices().iter().map(|v| v.moment.clone()).collect()] }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, j: usize) -> &[Weight] {
        &self.classes[j]
    }

    pub fn value(&self, j: usize, r: usize) -> &Weight {
        &self.classes[j][r]
    }

    /// `min { j : w_j(r) != w_j(s) }` (0-based).
    pub fn separating(&self, r: usize, s: usize) -> Option<usize> {
        (0..self.classes.len()).find(|&j| self.classes[j][r] != self.classes[j][s])
    }
}
