use super::{Edge, GkmGraph, Vertex};
use crate::exactalg::Weight;

/// Standard graph of `CP^n`: vertices `p1..p_{n+1}` with moments `x_i`,
/// complete, `eta(p_i, p_j) = x_j - x_i`.
pub fn projective_space(n: usize) -> GkmGraph {
    let m = n + 1;
    let vertices = (0..m).map(|i| Vertex { id: format!("p{}", i + 1), moment: Weight::unit(m, i) }).collect();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            edges.push(Edge { src: i, dst: j, weight: &Weight::unit(m, j) - &Weight::unit(m, i) });
        }
    }
    GkmGraph::new(m, vertices, edges).expect("projective space graph")
}
