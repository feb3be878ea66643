//! Generators for infinite families: Heisenberg, filiform, graph algebras and
//! nilradicals of parabolic subalgebras, with their Ricci-flat involutions.

mod families;
mod graph;
mod parabolic;
mod roots;

pub use families::{filiform, heisenberg};
pub use graph::{connected_graphs, graph_algebra, random_connected_graph, Graph};
pub use parabolic::{
    arrow_breaking_roots, b_index_avoidance, parabolic_nilradical, sigma_parabolic,
    standard_parabolic, standard_theta, Parabolic,
};
pub use roots::{positive_roots, Root, RootDatum, RootType};

use crate::error::{Error, Result};
use crate::involution::Involution;
use crate::liealg::LieAlgebra;

/// Output of a generator spec.
#[derive(Clone, Debug)]
pub struct Generated {
    pub algebra: LieAlgebra,
    /// Involutions supplied by the construction, possibly none.
    pub sigmas: Vec<Involution>,
    /// Basis labels, when the basis has a meaning beyond its index.
    pub labels: Option<Vec<String>>,
}

fn number(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(0, format!("expected a number for {what}, found `{s}`")))
}

fn parse_graph(spec: &str) -> Result<Graph> {
    if let Some(list) = spec.strip_prefix("edges=") {
        let mut edges = Vec::new();
        let mut v = 0;
        for item in list.split(',').filter(|s| !s.trim().is_empty()) {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| Error::parse(0, format!("edge `{item}` is not of the form a-b")))?;
            let (a, b) = (number(a, "vertex")?, number(b, "vertex")?);
            if a == 0 || b == 0 {
                return Err(Error::parse(0, "vertices are numbered from 1"));
            }
            v = v.max(a).max(b);
            edges.push((a - 1, b - 1));
        }
        return Graph::new(v, edges);
    }
    let split = spec
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(spec.len());
    let (kind, count) = spec.split_at(split);
    let v = number(count, "vertex count")?;
    match kind {
        "path" => Ok(Graph::path(v)),
        "cycle" => Graph::cycle(v),
        "complete" => Ok(Graph::complete(v)),
        "star" => Ok(Graph::star(v)),
        _ => Err(Error::parse(0, format!("unknown graph `{spec}`"))),
    }
}

/// Parses "heisenberg:3", "filiform:6", "graph:path5",
/// "graph:edges=1-2,2-3", "parabolic:A:5", "parabolic:G2".
pub fn generate(spec: &str) -> Result<Generated> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    match parts.as_slice() {
        ["heisenberg", n] => {
            let (algebra, s) = heisenberg(number(n, "heisenberg")?)?;
            Ok(Generated {
                algebra,
                sigmas: vec![s],
                labels: None,
            })
        }
        ["filiform", n] => {
            let (algebra, s) = filiform(number(n, "filiform")?)?;
            Ok(Generated {
                algebra,
                sigmas: vec![s],
                labels: None,
            })
        }
        ["graph", g] => {
            let g = parse_graph(g)?;
            let mut labels: Vec<String> = (1..=g.vertex_count()).map(|v| format!("v{v}")).collect();
            labels.extend(g.edges().map(|(a, b)| format!("v{}∧v{}", a + 1, b + 1)));
            Ok(Generated {
                algebra: graph_algebra(&g).with_name(format!("graph:{}", parts[1])),
                sigmas: Vec::new(),
                labels: Some(labels),
            })
        }
        ["parabolic", t] | ["parabolic", t, _] => {
            let kind: RootType = t.parse()?;
            let n = match parts.get(2) {
                Some(n) => number(n, "rank")?,
                None if kind == RootType::G2 => 2,
                None => return Err(Error::parse(0, "parabolic spec needs a rank")),
            };
            let (p, sigmas) = match sigma_parabolic(kind, n) {
                Ok(x) => x,
                Err(_) => (standard_parabolic(kind, n)?, Vec::new()),
            };
            Ok(Generated {
                labels: Some(p.labels()),
                algebra: p.algebra,
                sigmas,
            })
        }
        _ => Err(Error::parse(0, format!("unknown generator `{spec}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!(generate("heisenberg:3").unwrap().algebra.dim(), 7);
        assert_eq!(generate("filiform:6").unwrap().algebra.dim(), 6);
        assert_eq!(generate("graph:path5").unwrap().algebra.dim(), 9);
        assert_eq!(generate("graph:edges=1-2,2-3").unwrap().algebra.dim(), 5);
        assert_eq!(generate("parabolic:C:2").unwrap().algebra.dim(), 4);
        assert_eq!(generate("parabolic:G2").unwrap().sigmas.len(), 2);
        assert!(generate("parabolic:D:4").is_err());
        assert!(generate("graph:edges=1-1").is_err());
    }
}
