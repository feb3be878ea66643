use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    G2,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::B => "B",
            RootType::C => "C",
            RootType::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(RootType::A),
            "B" | "b" => Ok(RootType::B),
            "C" | "c" => Ok(RootType::C),
            "G2" | "g2" | "G" | "g" => Ok(RootType::G2),
            other => Err(Error::Unsupported(format!("root system type `{other}`"))),
        }
    }
}

/// A positive root, in ε-coordinates and in coordinates on the simple roots.
/// For G₂ both coordinate vectors are the simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Root {
    pub eps: Vec<i64>,
    pub simple: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RootDatum {
    pub kind: RootType,
    pub rank: usize,
    /// Ordered by height, ties by descending simple coordinates.
    pub positive_roots: Vec<Root>,
    /// Indices of the simple roots in `positive_roots`, α₁ … α_n.
    pub simple_roots: Vec<usize>,
    /// Subset of 0..rank, naming simple roots.
    pub theta: Vec<usize>,
}

fn eps_to_simple(kind: RootType, rank: usize, eps: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(rank);
    let mut acc = 0;
    for e in &eps[..rank] {
        acc += e;
        out.push(acc);
    }
    if kind == RootType::C {
        // α_n = 2ε_n
        out[rank - 1] = eps.iter().sum::<i64>() / 2;
    }
    out
}

fn unit(m: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; m];
    v[i] += c;
    v
}

fn combo(m: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; m];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

/// Positive roots of the split simple Lie algebra of the given type, with Θ = ∅.
pub fn positive_roots(kind: RootType, n: usize) -> Result<RootDatum> {
    let mut eps_list: Vec<Vec<i64>> = Vec::new();
    let rank = match kind {
        RootType::A => {
            if n < 1 {
                return Err(Error::Unsupported("A_n needs n ≥ 1".into()));
            }
            let m = n + 1;
            for i in 0..m {
                for j in i + 1..m {
                    eps_list.push(combo(m, &[(i, 1), (j, -1)]));
                }
            }
            n
        }
        RootType::B | RootType::C => {
            if n < 2 {
                return Err(Error::Unsupported(format!("{kind}_n needs n ≥ 2")));
            }
            for i in 0..n {
                for j in i + 1..n {
                    eps_list.push(combo(n, &[(i, 1), (j, -1)]));
                    eps_list.push(combo(n, &[(i, 1), (j, 1)]));
                }
                eps_list.push(unit(n, i, if kind == RootType::B { 1 } else { 2 }));
            }
            n
        }
        RootType::G2 => {
            for s in [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]] {
                eps_list.push(s.to_vec());
            }
            2
        }
    };
    let mut roots: Vec<Root> = eps_list
        .into_iter()
        .map(|eps| {
            let simple = if kind == RootType::G2 {
                eps.clone()
            } else {
                eps_to_simple(kind, rank, &eps)
            };
            Root { eps, simple }
        })
        .collect();
    roots.sort_by_key(|r| (r.height(), Reverse(r.simple.clone())));
    let simple_roots = (0..rank)
        .map(|k| {
            roots
                .iter()
                .position(|r| r.simple == unit(rank, k, 1))
                .expect("simple root present")
        })
        .collect();
    Ok(RootDatum {
        kind,
        rank,
        positive_roots: roots,
        simple_roots,
        theta: Vec::new(),
    })
}

impl RootDatum {
    pub fn with_theta(mut self, theta: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = theta.iter().find(|&&t| t >= self.rank) {
            return Err(Error::IndexOutOfRange {
                index: bad + 1,
                n: self.rank,
            });
        }
        let mut theta = theta;
        theta.sort_unstable();
        theta.dedup();
        self.theta = theta;
        Ok(self)
    }

    pub fn find(&self, eps: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.eps == eps)
    }

    pub fn is_root(&self, eps: &[i64]) -> bool {
        self.find(eps).is_some()
    }

    /// Whether the root lies in ⟨Θ⟩⁺.
    pub fn in_theta_span(&self, root: usize) -> bool {
        self.order(root) == 0
    }

    /// o(γ): sum of the coordinates on simple roots outside Θ.
    pub fn order(&self, root: usize) -> i64 {
        let r = &self.positive_roots[root];
        (0..self.rank)
            .filter(|k| !self.theta.contains(k))
            .map(|k| r.simple[k])
            .sum()
    }

    /// Π⁺ ∖ ⟨Θ⟩⁺ in basis order: by order, then height, then descending
    /// simple coordinates.
    pub fn nilradical_roots(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.positive_roots.len())
            .filter(|&r| !self.in_theta_span(r))
            .collect();
        idx.sort_by_key(|&r| {
            let root = &self.positive_roots[r];
            (self.order(r), root.height(), Reverse(root.simple.clone()))
        });
        idx
    }

    pub fn max_root(&self) -> usize {
        self.positive_roots.len() - 1
    }

    /// Human-readable name of a root, e.g. "ε1-ε3", "2ε2", "3α1+2α2".
    pub fn label(&self, root: usize) -> String {
        let r = &self.positive_roots[root];
        let sym = if self.kind == RootType::G2 {
            "α"
        } else {
            "ε"
        };
        let mut out = String::new();
        for (i, &c) in r.eps.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&format!("{sym}{}", i + 1));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(
            positive_roots(RootType::A, 3).unwrap().positive_roots.len(),
            6
        );
        for n in 2..6 {
            assert_eq!(
                positive_roots(RootType::B, n).unwrap().positive_roots.len(),
                n * n
            );
            assert_eq!(
                positive_roots(RootType::C, n).unwrap().positive_roots.len(),
                n * n
            );
        }
        let g = positive_roots(RootType::G2, 2).unwrap();
        assert_eq!(g.positive_roots.len(), 6);
        assert_eq!(g.label(g.max_root()), "3α1+2α2");
    }

    #[test]
    fn c2_order() {
        let c = positive_roots(RootType::C, 2).unwrap();
        let labels: Vec<String> = c.nilradical_roots().iter().map(|&r| c.label(r)).collect();
        assert_eq!(labels, ["ε1-ε2", "2ε2", "ε1+ε2", "2ε1"]);
    }
}
