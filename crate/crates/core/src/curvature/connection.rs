use num_traits::Zero;
use rayon::prelude::*;

use super::consts::Consts;
use super::metric::{axpy, unit_vector, zero_vector, SigmaMetric, Vector};
use crate::error::{Error, Result};
use crate::exactmath::{rat, LaurentPoly, QMatrix, Rational};
use crate::liealg::LieAlgebra;

/// Indices e_k spanning the commutator g′; fails if g′ is not spanned by
/// basis vectors.
pub fn commutator_basis(a: &LieAlgebra) -> Result<Vec<usize>> {
    let targets = a.bracket_targets();
    let n = a.dim();
    let rows: Vec<Vec<Rational>> = a
        .brackets()
        .map(|(_, terms)| {
            let mut v = vec![Rational::zero(); n];
            for (k, c) in terms {
                v[*k] = c.clone();
            }
            v
        })
        .collect();
    let rank = if rows.is_empty() {
        0
    } else {
        QMatrix::from_rows(n, rows)?.rank()
    };
    if rank != targets.len() {
        return Err(Error::CommutatorNotBasisSpanned(rank));
    }
    Ok(targets)
}

/// J_i: ⟨J_i u, v⟩ = ⟨[u, v], x_i⟩ with x_i = e_{σ(i)}/g_i.
pub(crate) struct JOps {
    pub targets: Vec<usize>,
    /// cols[t][x] = J_{targets[t]} e_x
    cols: Vec<Vec<Vector>>,
}

impl JOps {
    pub fn new(c: &Consts, m: &SigmaMetric, targets: Vec<usize>) -> Self {
        let n = c.n;
        let s = m.sigma();
        let cols = targets
            .iter()
            .map(|&i| {
                (0..n)
                    .map(|x| {
                        (0..n)
                            .map(|b| m.g_inv(b).scale(c.c(x, s.apply(b), i)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        JOps { targets, cols }
    }

    pub fn basis(&self, t: usize, x: usize) -> &Vector {
        &self.cols[t][x]
    }

    pub fn apply(&self, t: usize, u: &[LaurentPoly]) -> Vector {
        let mut out = zero_vector(u.len());
        for (x, ux) in u.iter().enumerate() {
            axpy(&mut out, ux, &self.cols[t][x]);
        }
        out
    }
}

/// The operator J_i as columns J_i e_1, …, J_i e_n.
pub fn j_operator(a: &LieAlgebra, m: &SigmaMetric, i: usize) -> Vec<Vector> {
    let c = Consts::new(a);
    let ops = JOps::new(&c, m, vec![i]);
    (0..a.dim()).map(|x| ops.basis(0, x).clone()).collect()
}

/// ∇_{e_s} e_t = Σ_u Γ(s, t, u) e_u.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Connection {
    n: usize,
    gamma: Vec<Vector>,
}

impl Connection {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self, s: usize, t: usize) -> &Vector {
        &self.gamma[s * self.n + t]
    }

    /// ∇_u v for constant-coefficient u, v.
    pub fn nabla(&self, u: &[LaurentPoly], v: &[LaurentPoly]) -> Vector {
        let mut out = zero_vector(self.n);
        for (s, us) in u.iter().enumerate() {
            if us.is_zero() {
                continue;
            }
            for (t, vt) in v.iter().enumerate() {
                if vt.is_zero() {
                    continue;
                }
                axpy(&mut out, &(us * vt), self.gamma(s, t));
            }
        }
        out
    }

    /// ∇_{e_s} v
    pub(crate) fn nabla_basis(&self, s: usize, v: &[LaurentPoly]) -> Vector {
        let mut out = zero_vector(self.n);
        for (t, vt) in v.iter().enumerate() {
            axpy(&mut out, vt, self.gamma(s, t));
        }
        out
    }

    /// ∇_{e_s} e_t − ∇_{e_t} e_s = [e_s, e_t] for all s, t.
    pub fn is_torsion_free(&self, a: &LieAlgebra) -> bool {
        let n = self.n;
        (0..n).all(|s| {
            (0..n).all(|t| {
                let mut diff: Vector = (0..n)
                    .map(|u| self.gamma(s, t)[u].clone() - self.gamma(t, s)[u].clone())
                    .collect();
                for (k, c) in a.bracket_basis(s, t) {
                    diff[k] -= &LaurentPoly::constant(c);
                }
                diff.iter().all(|x| x.is_zero())
            })
        })
    }

    /// ⟨∇_s e_t, e_u⟩ + ⟨e_t, ∇_s e_u⟩ = 0 for all s, t, u.
    pub fn is_metric(&self, m: &SigmaMetric) -> bool {
        let n = self.n;
        (0..n).all(|s| {
            (0..n).all(|t| {
                (0..n).all(|u| {
                    let a = m.inner(self.gamma(s, t), &unit_vector(n, u));
                    let b = m.inner(&unit_vector(n, t), self.gamma(s, u));
                    (a + b).is_zero()
                })
            })
        })
    }
}

pub(crate) fn levi_civita_with(c: &Consts, m: &SigmaMetric, j: &JOps) -> Connection {
    let n = c.n;
    let sg = m.sigma();
    let half = rat(1, 2);
    let gamma: Vec<Vector> = (0..n * n)
        .into_par_iter()
        .map(|st| {
            let (s, t) = (st / n, st % n);
            // 2∇_u v = Σ_i ⟨J_i u, v⟩ e_i − ⟨e_i, v⟩ J_i u − ⟨e_i, u⟩ J_i v
            let mut out = zero_vector(n);
            for (ti, &i) in j.targets.iter().enumerate() {
                out[i].add_scaled(&half, &LaurentPoly::constant(c.c(s, t, i).clone()));
                if i == sg.apply(t) {
                    let coef = -m.g(i).scale(&half);
                    axpy(&mut out, &coef, j.basis(ti, s));
                }
                if i == sg.apply(s) {
                    let coef = -m.g(i).scale(&half);
                    axpy(&mut out, &coef, j.basis(ti, t));
                }
            }
            out
        })
        .collect();
    Connection { n, gamma }
}

pub fn levi_civita(a: &LieAlgebra, m: &SigmaMetric) -> Result<Connection> {
    check_dims(a, m)?;
    let targets = commutator_basis(a)?;
    let c = Consts::new(a);
    let j = JOps::new(&c, m, targets);
    Ok(levi_civita_with(&c, m, &j))
}

pub(crate) fn check_dims(a: &LieAlgebra, m: &SigmaMetric) -> Result<()> {
    if a.dim() != m.n() {
        return Err(Error::SizeMismatch {
            expected: a.dim(),
            got: m.n(),
        });
    }
    Ok(())
}
