use num_traits::{One, Zero};
use serde::Serialize;

use super::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{QMatrix, Rational};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SeriesProfile {
    /// dim g⁰ > dim g¹ > … > 0, the zero term omitted.
    pub lcs_dims: Vec<usize>,
    pub center_dim: usize,
    pub complement_dim: usize,
    pub step: usize,
    /// [gⁱ, gʲ] ⊆ g^{i+j+1} for all i, j.
    pub filtration_ok: bool,
}

/// Row basis in reduced echelon form.
fn span(rows: Vec<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return rows;
    }
    let m = QMatrix::from_rows(n, rows).expect("row length");
    let (red, pivots) = m.rref();
    (0..pivots.len()).map(|r| red.row(r).to_vec()).collect()
}

fn bracket_spaces(a: &LieAlgebra, x: &[Vec<Rational>], y: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for u in x {
        for v in y {
            let w = a.bracket(u, v);
            if w.iter().any(|c| !c.is_zero()) {
                rows.push(w);
            }
        }
    }
    span(rows, a.dim())
}

fn contained(a: &[Vec<Rational>], b: &[Vec<Rational>], n: usize) -> bool {
    let mut all = b.to_vec();
    all.extend(a.iter().cloned());
    span(all, n).len() == b.len()
}

/// g⁰ = g, gⁱ = [g, gⁱ⁻¹], as row bases, down to and excluding 0.
pub fn lower_central_series(a: &LieAlgebra) -> Result<Vec<Vec<Vec<Rational>>>> {
    let n = a.dim();
    let full: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        })
        .collect();
    let mut series = Vec::new();
    let mut cur = full.clone();
    while !cur.is_empty() {
        series.push(cur.clone());
        let next = bracket_spaces(a, &full, &cur);
        if next.len() == cur.len() {
            return Err(Error::NotNilpotent(cur.len()));
        }
        cur = next;
    }
    Ok(series)
}

pub fn center_dim(a: &LieAlgebra) -> usize {
    let n = a.dim();
    // v ↦ ([e_1, v], …, [e_n, v])
    let mut m = QMatrix::zeros(n * n, n);
    for j in 0..n {
        for x in 0..n {
            for (k, c) in a.bracket_basis(x, j) {
                m.set(x * n + k, j, c);
            }
        }
    }
    n - m.rank()
}

pub fn series_profile(a: &LieAlgebra) -> Result<SeriesProfile> {
    let n = a.dim();
    let lcs = lower_central_series(a)?;
    let mut filtration_ok = true;
    for i in 0..lcs.len() {
        for j in 0..lcs.len() {
            let br = bracket_spaces(a, &lcs[i], &lcs[j]);
            let target: &[Vec<Rational>] = lcs.get(i + j + 1).map(|v| v.as_slice()).unwrap_or(&[]);
            if !contained(&br, target, n) {
                filtration_ok = false;
            }
        }
    }
    let s = center_dim(a);
    Ok(SeriesProfile {
        lcs_dims: lcs.iter().map(|b| b.len()).collect(),
        center_dim: s,
        complement_dim: n - s,
        step: lcs.len(),
        filtration_ok,
    })
}
