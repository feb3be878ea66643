use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::liealg::LieAlgebra;

/// Simple undirected graph on vertices 0..vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Graph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= vertices || b >= vertices {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b) + 1,
                    n: vertices,
                });
            }
            if a == b {
                return Err(Error::Unsupported(format!("loop at vertex {}", a + 1)));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::Unsupported(format!(
                    "repeated edge {}-{}",
                    a.min(b) + 1,
                    a.max(b) + 1
                )));
            }
        }
        Ok(Graph {
            vertices,
            edges: set,
        })
    }

    pub fn path(v: usize) -> Self {
        Graph::new(v, (1..v).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(v: usize) -> Result<Self> {
        if v < 3 {
            return Err(Error::Unsupported(
                "a cycle needs at least 3 vertices".into(),
            ));
        }
        Graph::new(v, (0..v).map(|i| (i, (i + 1) % v)))
    }

    pub fn complete(v: usize) -> Self {
        Graph::new(v, (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))))
            .expect("valid complete graph")
    }

    pub fn star(v: usize) -> Self {
        Graph::new(v, (1..v).map(|i| (0, i))).expect("valid star")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &(a, b) in &self.edges {
                let y = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn pair_bit(a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    b * (b - 1) / 2 + a
}

fn permutations(v: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..v).collect();
    heap(v, &mut cur, &mut out);
    out
}

fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(a.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, a, out);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap(k - 1, a, out);
}

/// Every connected graph on exactly `v` vertices, one per isomorphism class
/// (v ≤ 6).
pub fn connected_graphs(v: usize) -> Result<Vec<Graph>> {
    if v > 6 {
        return Err(Error::TooLarge(format!(
            "exhaustive graphs on {v} vertices"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
    let perms = permutations(v);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u64, |m, (_, &(a, b))| m | 1 << pair_bit(p[a], p[b]))
            })
            .min()
            .unwrap_or(0);
        if canon != mask || !seen.insert(canon) {
            continue;
        }
        let g = Graph::new(
            v,
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        )?;
        if g.is_connected() {
            out.push(g);
        }
    }
    Ok(out)
}

/// Random connected graph: a random spanning tree plus each remaining pair
/// with probability `extra`.
pub fn random_connected_graph<R: Rng>(v: usize, extra: f64, rng: &mut R) -> Graph {
    let mut order: Vec<usize> = (0..v).collect();
    order.shuffle(rng);
    let mut edges = BTreeSet::new();
    for i in 1..v {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        edges.insert((a.min(b), a.max(b)));
    }
    for b in 0..v {
        for a in 0..b {
            if rng.gen_bool(extra) {
                edges.insert((a, b));
            }
        }
    }
    let g = Graph::new(v, edges).expect("valid random graph");
    debug_assert!(g.is_connected());
    g
}

/// V₀ ⊕ V₁ with basis the vertices, then the edges in sorted order;
/// [v_a, v_b] = e_{ab} for each edge a < b.
pub fn graph_algebra(g: &Graph) -> LieAlgebra {
    let v = g.vertices;
    let one = Rational::from_integer(1.into());
    let terms: Vec<(usize, usize, usize, Rational)> = g
        .edges
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| (a, b, v + k, one.clone()))
        .collect();
    LieAlgebra::from_terms_unchecked(v + g.edges.len(), terms).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{check_jacobi, series_profile};

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|v| connected_graphs(v).unwrap().len())
            .collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn path3() {
        let a = graph_algebra(&Graph::path(3));
        assert_eq!(a.dim(), 5);
        assert!(check_jacobi(&a).is_none());
        let p = series_profile(&a).unwrap();
        assert_eq!(p.step, 2);
        assert_eq!(p.center_dim, 2);
    }
}
