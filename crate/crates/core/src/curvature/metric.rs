use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{LaurentPoly, Rational};
use crate::involution::Involution;

pub type Vector = Vec<LaurentPoly>;

/// ⟨e_i, e_j⟩ = g_i if j = σ(i), else 0, with g_{σ(i)} = g_i.
///
/// In symbolic mode index i carries the variable g_{min(i, σ(i))}; in numeric
/// mode every g_i is a nonzero rational stored as a constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SigmaMetric {
    sigma: Involution,
    coeffs: Vec<LaurentPoly>,
    inverses: Vec<LaurentPoly>,
    symbolic: bool,
}

impl SigmaMetric {
    pub fn symbolic(sigma: Involution) -> Self {
        let n = sigma.n();
        let coeffs = (0..n)
            .map(|i| LaurentPoly::var(i.min(sigma.apply(i)), 1))
            .collect();
        let inverses = (0..n)
            .map(|i| LaurentPoly::var(i.min(sigma.apply(i)), -1))
            .collect();
        SigmaMetric {
            sigma,
            coeffs,
            inverses,
            symbolic: true,
        }
    }

    /// One value per index.
    pub fn numeric(sigma: Involution, values: Vec<Rational>) -> Result<Self> {
        let n = sigma.n();
        if values.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: values.len(),
            });
        }
        for i in 0..n {
            if values[i].is_zero() {
                return Err(Error::InvalidMetric(format!("g{} is zero", i + 1)));
            }
            if values[i] != values[sigma.apply(i)] {
                return Err(Error::InvalidMetric(format!(
                    "g{} and g{} must agree",
                    i + 1,
                    sigma.apply(i) + 1
                )));
            }
        }
        let coeffs = values.iter().cloned().map(LaurentPoly::constant).collect();
        let inverses = values
            .iter()
            .map(|v| LaurentPoly::constant(v.recip()))
            .collect();
        Ok(SigmaMetric {
            sigma,
            coeffs,
            inverses,
            symbolic: false,
        })
    }

    /// Values given for some indices; a missing g_i is taken from g_{σ(i)}.
    pub fn numeric_from_assignment(
        sigma: Involution,
        assignment: &BTreeMap<usize, Rational>,
    ) -> Result<Self> {
        let n = sigma.n();
        if let Some(&bad) = assignment.keys().find(|&&k| k >= n) {
            return Err(Error::IndexOutOfRange { index: bad + 1, n });
        }
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let v = assignment
                .get(&i)
                .or_else(|| assignment.get(&sigma.apply(i)))
                .ok_or_else(|| Error::InvalidMetric(format!("no value for g{}", i + 1)))?;
            values.push(v.clone());
        }
        SigmaMetric::numeric(sigma, values)
    }

    /// Numeric metric at a point indexed by variable, matching `symbolic`.
    pub fn numeric_at_point(sigma: Involution, point: &[Rational]) -> Result<Self> {
        let values = (0..sigma.n())
            .map(|i| {
                point
                    .get(i.min(sigma.apply(i)))
                    .cloned()
                    .ok_or(Error::SizeMismatch {
                        expected: sigma.n(),
                        got: point.len(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        SigmaMetric::numeric(sigma, values)
    }

    pub fn sigma(&self) -> &Involution {
        &self.sigma
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_symbolic(&self) -> bool {
        self.symbolic
    }

    pub fn g(&self, i: usize) -> &LaurentPoly {
        &self.coeffs[i]
    }

    pub fn g_inv(&self, i: usize) -> &LaurentPoly {
        &self.inverses[i]
    }

    /// Variable index carried by e_i in symbolic mode.
    pub fn variable_of(&self, i: usize) -> usize {
        i.min(self.sigma.apply(i))
    }

    pub fn inner(&self, u: &[LaurentPoly], v: &[LaurentPoly]) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let vj = &v[self.sigma.apply(i)];
            if vj.is_zero() {
                continue;
            }
            out += &(&(ui * vj) * &self.coeffs[i]);
        }
        out
    }

    /// Vector whose inner product with e_c is α_c.
    pub fn raise(&self, alpha: &[LaurentPoly]) -> Vector {
        (0..self.n())
            .map(|b| &alpha[self.sigma.apply(b)] * &self.inverses[b])
            .collect()
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![LaurentPoly::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = LaurentPoly::one();
    v
}

pub fn rational_vector(v: &[Rational]) -> Vector {
    v.iter().cloned().map(LaurentPoly::constant).collect()
}

/// out += c · v
pub(crate) fn axpy(out: &mut [LaurentPoly], c: &LaurentPoly, v: &[LaurentPoly]) {
    if c.is_zero() {
        return;
    }
    for (o, x) in out.iter_mut().zip(v) {
        if !x.is_zero() {
            o.add_product(&Rational::from_integer(1.into()), c, x);
        }
    }
}
