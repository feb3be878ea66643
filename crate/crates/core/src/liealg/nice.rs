use std::collections::BTreeMap;

use serde::Serialize;

use super::algebra::LieAlgebra;
use crate::diagram::NiceDiagram;
use crate::exactmath::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NiceStructure {
    pub diagram: NiceDiagram,
    /// (i, j), i < j  ->  (k, c) with [e_i, e_j] = c e_k.
    pub coefficients: BTreeMap<(usize, usize), (usize, Rational)>,
}

impl NiceStructure {
    /// [e_i, e_j] as (k, c), with the sign for i > j.
    pub fn bracket(&self, i: usize, j: usize) -> Option<(usize, Rational)> {
        if i < j {
            self.coefficients.get(&(i, j)).cloned()
        } else {
            self.coefficients.get(&(j, i)).map(|(k, c)| (*k, -c))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum NotNice {
    /// [e_i, e_j] has several components.
    MultipleTargets {
        i: usize,
        j: usize,
        targets: Vec<usize>,
    },
    /// e_i ⌟ de^j involves several covectors e^h.
    Contraction {
        i: usize,
        j: usize,
        covectors: Vec<usize>,
    },
}

impl std::fmt::Display for NotNice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let list = |v: &[usize], p: &str| {
            v.iter()
                .map(|x| format!("{p}{}", x + 1))
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self {
            NotNice::MultipleTargets { i, j, targets } => {
                write!(f, "[e{}, e{}] spans {}", i + 1, j + 1, list(targets, "e"))
            }
            NotNice::Contraction { i, j, covectors } => write!(
                f,
                "e{} ⌟ de^{} spans {}",
                i + 1,
                j + 1,
                list(covectors, "e^")
            ),
        }
    }
}

/// Tests whether the given basis is nice.
pub fn extract_nice_structure(a: &LieAlgebra) -> Result<NiceStructure, NotNice> {
    let mut coefficients = BTreeMap::new();
    for (&(i, j), terms) in a.brackets() {
        if terms.len() > 1 {
            return Err(NotNice::MultipleTargets {
                i,
                j,
                targets: terms.iter().map(|(k, _)| *k).collect(),
            });
        }
        coefficients.insert((i, j), terms[0].clone());
    }
    // e_i ⌟ de^j = Σ_b c^j_{ib} e^b
    let mut contraction: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (&(i, j), &(k, _)) in &coefficients {
        contraction.entry((i, k)).or_default().push(j);
        contraction.entry((j, k)).or_default().push(i);
    }
    for ((i, k), mut cov) in contraction {
        if cov.len() > 1 {
            cov.sort_unstable();
            return Err(NotNice::Contraction {
                i,
                j: k,
                covectors: cov,
            });
        }
    }
    let pairs: Vec<(usize, usize, usize)> = coefficients
        .iter()
        .map(|(&(i, j), (k, _))| (i, j, *k))
        .collect();
    let diagram = NiceDiagram::from_brackets(a.dim(), &pairs).expect("indices in range");
    Ok(NiceStructure {
        diagram,
        coefficients,
    })
}
