use std::fmt;

use num_traits::{One, Zero};

use super::rational::{format_rational, height, Rational};
use crate::error::{Error, Result};
use crate::involution::Involution;

/// Dense matrix over ℚ, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::SizeMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(QMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns. Pivots are chosen by
    /// smallest height among the candidate rows.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .filter(|&i| !m.get(i, c).is_zero())
                .min_by_key(|&i| height(m.get(i, c)));
            let Some(p) = best else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Rank and a kernel basis: one vector per free column, with a 1 in that
/// column and zeros in the other free columns.
pub fn rank_and_kernel(m: &QMatrix) -> (usize, Vec<Vec<Rational>>) {
    let (red, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -red.get(r, free).clone();
        }
        kernel.push(v);
    }
    (pivots.len(), kernel)
}

/// dim(span(kernel) ∩ E₋₁) where E₋₁ = {X : X_{σ(i)} = −X_i}.
pub fn antiinvariant_kernel_dim(
    kernel_basis: &[Vec<Rational>],
    sigma: &Involution,
) -> Result<usize> {
    let n = sigma.n();
    for v in kernel_basis {
        if v.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    if kernel_basis.is_empty() {
        return Ok(0);
    }
    // K c lies in E₋₁ iff (P_σ + I) K c = 0; discount the c with K c = 0
    let k = kernel_basis.len();
    let basis_rank = QMatrix::from_rows(n, kernel_basis.to_vec())?.rank();
    let mut a = QMatrix::zeros(n, k);
    for (j, v) in kernel_basis.iter().enumerate() {
        for i in 0..n {
            a.set(i, j, &v[sigma.apply(i)] + &v[i]);
        }
    }
    Ok((k - a.rank()) - (k - basis_rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn m(rows: &[&[i64]]) -> QMatrix {
        let cols = rows[0].len();
        QMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn zero_matrix() {
        let (r, k) = rank_and_kernel(&QMatrix::zeros(3, 3));
        assert_eq!(r, 0);
        assert_eq!(k.len(), 3);
        assert_eq!(k[1], vec![rat(0, 1), rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let (r, k) = rank_and_kernel(&a);
        assert_eq!(r, 2);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn antiinvariant_identity_is_zero() {
        let id = Involution::identity(3);
        let k = vec![vec![rat(1, 1), rat(0, 1), rat(2, 1)]];
        assert_eq!(antiinvariant_kernel_dim(&k, &id).unwrap(), 0);
        assert!(antiinvariant_kernel_dim(&[vec![rat(1, 1)]], &id).is_err());
    }
}
