use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, Rational};

/// Lie algebra given by structure constants on a fixed basis e1..en.
/// `brackets[(i, j)]`, i < j, lists the nonzero components of [e_i, e_j].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    dim: usize,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    name: Option<String>,
}

/// Σ_cyclic [[e_i, e_j], e_k] ≠ 0 for this triple.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct JacobiWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    #[serde(serialize_with = "ser_vec")]
    pub residual: Vec<Rational>,
}

fn ser_vec<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

impl JacobiWitness {
    fn into_error(self) -> Error {
        let res: Vec<String> = self.residual.iter().map(format_rational).collect();
        Error::Jacobi {
            i: self.i + 1,
            j: self.j + 1,
            k: self.k + 1,
            residual: format!("({})", res.join(",")),
        }
    }
}

impl LieAlgebra {
    /// Builds the algebra from terms [e_i, e_j] += c e_k without checking
    /// the Jacobi identity. Terms with i > j are stored with the sign flipped.
    pub fn from_terms_unchecked(
        dim: usize,
        terms: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
        for (i, j, k, c) in terms {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange {
                        index: idx + 1,
                        n: dim,
                    });
                }
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::Unsupported(format!(
                    "bracket [e{0}, e{0}] must vanish",
                    i + 1
                )));
            }
            let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
            *acc.entry(key)
                .or_default()
                .entry(k)
                .or_insert_with(Rational::zero) += c;
        }
        let brackets = acc
            .into_iter()
            .map(|(key, m)| {
                (
                    key,
                    m.into_iter()
                        .filter(|(_, c)| !c.is_zero())
                        .collect::<Vec<_>>(),
                )
            })
            .filter(|(_, v)| !v.is_empty())
            .collect();
        Ok(LieAlgebra {
            dim,
            brackets,
            name: None,
        })
    }

    /// As `from_terms_unchecked`, then verifies the Jacobi identity.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self> {
        let a = LieAlgebra::from_terms_unchecked(dim, terms)?;
        match check_jacobi(&a) {
            None => Ok(a),
            Some(w) => Err(w.into_error()),
        }
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            brackets: BTreeMap::new(),
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Nonzero brackets, keyed by (i, j) with i < j.
    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, Rational)>)> {
        self.brackets.iter()
    }

    /// [e_i, e_j] as sparse components.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else if i > j {
            self.brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default()
        } else {
            Vec::new()
        }
    }

    /// Coefficient of e_k in [e_i, e_j].
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.bracket_basis(i, j)
            .into_iter()
            .find(|(t, _)| *t == k)
            .map(|(_, c)| c)
            .unwrap_or_else(Rational::zero)
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), terms) in &self.brackets {
            let c = &u[i] * &v[j] - &u[j] * &v[i];
            if c.is_zero() {
                continue;
            }
            for (k, a) in terms {
                out[*k] += &c * a;
            }
        }
        out
    }

    /// Indices k occurring as targets of some bracket, ascending.
    pub fn bracket_targets(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self
            .brackets
            .values()
            .flat_map(|v| v.iter().map(|(k, _)| *k))
            .collect();
        t.sort_unstable();
        t.dedup();
        t
    }
}

pub fn check_jacobi(a: &LieAlgebra) -> Option<JacobiWitness> {
    let n = a.dim;
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::from_integer(1.into());
        v
    };
    let units: Vec<Vec<Rational>> = (0..n).map(unit).collect();
    for i in 0..n {
        for j in i + 1..n {
            let ij = a.bracket(&units[i], &units[j]);
            for k in j + 1..n {
                let jk = a.bracket(&units[j], &units[k]);
                let ki = a.bracket(&units[k], &units[i]);
                let t1 = a.bracket(&ij, &units[k]);
                let t2 = a.bracket(&jk, &units[i]);
                let t3 = a.bracket(&ki, &units[j]);
                let residual: Vec<Rational> = (0..n).map(|x| &t1[x] + &t2[x] + &t3[x]).collect();
                if residual.iter().any(|x| !x.is_zero()) {
                    return Some(JacobiWitness { i, j, k, residual });
                }
            }
        }
    }
    None
}
