use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::connection::check_dims;
use super::consts::Consts;
use super::metric::SigmaMetric;
use super::riemann::CurvatureTensor;
use crate::error::Result;
use crate::exactmath::{rat, LaurentPoly, Rational};
use crate::liealg::LieAlgebra;

/// Symmetric 2-tensor; entries keyed by (i, j), i ≤ j, zeros omitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymTensor2 {
    n: usize,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

#[derive(Serialize)]
pub struct RicciRecord {
    pub i: usize,
    pub j: usize,
    pub poly: String,
}

impl SymTensor2 {
    fn from_fn(n: usize, f: impl Fn(usize, usize) -> LaurentPoly) -> Self {
        let mut entries = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                if !v.is_zero() {
                    entries.insert((i, j), v);
                }
            }
        }
        SymTensor2 { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> LaurentPoly {
        self.entries
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn records(&self) -> Vec<RicciRecord> {
        self.entries
            .iter()
            .map(|(&(i, j), p)| RicciRecord {
                i: i + 1,
                j: j + 1,
                poly: p.to_string(),
            })
            .collect()
    }

    pub fn eval(&self, point: &[Rational]) -> Result<SymTensor2> {
        let mut entries = BTreeMap::new();
        for (k, v) in &self.entries {
            let x = v.eval(point)?;
            if !x.is_zero() {
                entries.insert(*k, LaurentPoly::constant(x));
            }
        }
        Ok(SymTensor2 { n: self.n, entries })
    }
}

impl fmt::Display for SymTensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "ric = 0");
        }
        for (&(i, j), v) in &self.entries {
            writeln!(f, "ric(e{},e{}) = {}", i + 1, j + 1, v)?;
        }
        Ok(())
    }
}

/// ric(v, w) = ½⟨dv♭, dw♭⟩ − ½⟨ad v, ad w⟩ with the induced pairings.
pub fn ricci_tensor(a: &LieAlgebra, m: &SigmaMetric) -> Result<SymTensor2> {
    check_dims(a, m)?;
    let c = Consts::new(a);
    let s = m.sigma();
    let n = a.dim();
    let quarter = rat(1, 4);
    let minus_half = rat(-1, 2);
    let pairs: Vec<(usize, usize, usize, Rational)> = a
        .brackets()
        .flat_map(|(&(i, j), terms)| terms.iter().map(move |(k, x)| (i, j, *k, x.clone())))
        .collect();
    Ok(SymTensor2::from_fn(n, |p, q| {
        let mut out = LaurentPoly::zero();
        // ¼ Σ_{i,j} ⟨[e_i,e_j], e_p⟩⟨[x_i,x_j], e_q⟩, both orders of (i, j)
        let mut first = LaurentPoly::zero();
        for (i, j, k, x) in &pairs {
            if *k != s.apply(p) {
                continue;
            }
            let y = c.c(s.apply(*i), s.apply(*j), s.apply(q));
            if y.is_zero() {
                continue;
            }
            first.add_product(&(&quarter * x * y * rat(2, 1)), m.g_inv(*i), m.g_inv(*j));
        }
        if !first.is_zero() {
            out += &(&(&first * m.g(p)) * m.g(q));
        }
        // −½ Σ_i ⟨[e_p, e_i], [e_q, x_i]⟩
        for i in 0..n {
            for (k, x) in c.terms(p, i) {
                let y = c.c(q, s.apply(i), s.apply(*k));
                if y.is_zero() {
                    continue;
                }
                out.add_product(&(&minus_half * x * y), m.g(*k), m.g_inv(i));
            }
        }
        out
    }))
}

/// ric(u, v) = −tr(x ↦ R(x, u) v).
pub fn ricci_from_riemann(r: &CurvatureTensor) -> SymTensor2 {
    let n = r.n();
    SymTensor2::from_fn(n, |u, v| {
        let mut out = LaurentPoly::zero();
        for x in 0..n {
            out -= r.component(x, u, v, x);
        }
        out
    })
}
