use num_traits::Zero;

use super::metric::{zero_vector, Vector};
use crate::exactmath::{LaurentPoly, Rational};
use crate::liealg::LieAlgebra;

/// Dense table c(i, j, k) = coefficient of e_k in [e_i, e_j].
pub(crate) struct Consts {
    pub n: usize,
    dense: Vec<Rational>,
    /// nonzero (k, c) for each ordered (i, j)
    sparse: Vec<Vec<(usize, Rational)>>,
}

impl Consts {
    pub fn new(a: &LieAlgebra) -> Self {
        let n = a.dim();
        let mut dense = vec![Rational::zero(); n * n * n];
        let mut sparse = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in a.bracket_basis(i, j) {
                    dense[(i * n + j) * n + k] = c.clone();
                    sparse[i * n + j].push((k, c));
                }
            }
        }
        Consts { n, dense, sparse }
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.dense[(i * self.n + j) * self.n + k]
    }

    pub fn terms(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.sparse[i * self.n + j]
    }

    pub fn bracket(&self, u: &[LaurentPoly], v: &[LaurentPoly]) -> Vector {
        let n = self.n;
        let mut out = zero_vector(n);
        for (i, ui) in u.iter().enumerate().take(n) {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate().take(n) {
                if vj.is_zero() || self.terms(i, j).is_empty() {
                    continue;
                }
                let uv = ui * vj;
                for (k, c) in self.terms(i, j) {
                    out[*k].add_scaled(c, &uv);
                }
            }
        }
        out
    }
}
