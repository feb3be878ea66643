use super::metric::SigmaMetric;
use crate::error::{Error, Result};
use crate::exactmath::{rat, LaurentPoly, Rational};
use crate::liealg::{extract_nice_structure, LieAlgebra, NiceStructure};

/// ⟨R(e_s,e_t)e_s, e_t⟩ from the closed form valid in a nice basis.
pub fn sectional_nice(a: &LieAlgebra, m: &SigmaMetric, s: usize, t: usize) -> Result<LaurentPoly> {
    let nice = extract_nice_structure(a).map_err(|w| Error::NotNice(w.to_string()))?;
    sectional_nice_with(&nice, m, s, t)
}

/// Index k and coefficient λ with [e_x, e_k] = λ e_target, if any.
fn find(nice: &NiceStructure, n: usize, x: usize, target: usize) -> Option<(usize, Rational)> {
    (0..n).find_map(|k| match nice.bracket(x, k) {
        Some((tg, c)) if tg == target => Some((k, c)),
        _ => None,
    })
}

pub fn sectional_nice_with(
    nice: &NiceStructure,
    m: &SigmaMetric,
    s: usize,
    t: usize,
) -> Result<LaurentPoly> {
    let n = m.n();
    if s >= n || t >= n {
        return Err(Error::IndexOutOfRange {
            index: s.max(t) + 1,
            n,
        });
    }
    let sg = |k: usize| m.sigma().apply(k);
    let fixed = |k: &Option<(usize, Rational)>| k.as_ref().is_some_and(|(k, _)| sg(*k) == *k);
    let k1 = nice.bracket(s, t);
    let k2 = find(nice, n, s, sg(t));
    let k3 = find(nice, n, t, sg(s));
    let k4 = find(nice, n, s, sg(s));
    let k5 = find(nice, n, t, sg(t));
    let (gs, gt) = (m.g(s), m.g(t));
    let mut out = LaurentPoly::zero();
    if let (true, Some((k, l1))) = (fixed(&k1), &k1) {
        out.add_product(&(rat(-3, 4) * l1 * l1), m.g(*k), &LaurentPoly::one());
    }
    if let (true, Some((k, l2))) = (fixed(&k2), &k2) {
        out.add_product(&(rat(1, 4) * l2 * l2), &(gt * gt), m.g_inv(*k));
    }
    if let (true, Some((k, l3))) = (fixed(&k3), &k3) {
        out.add_product(&(rat(1, 4) * l3 * l3), &(gs * gs), m.g_inv(*k));
    }
    if let (Some((a, l1)), Some((b, l2))) = (&k1, &k2) {
        if a == b {
            out.add_product(&(rat(-1, 2) * l1 * l2), gt, &LaurentPoly::one());
        }
    }
    if let (Some((a, l1)), Some((b, l3))) = (&k1, &k3) {
        if a == b {
            out.add_product(&(rat(1, 2) * l1 * l3), gs, &LaurentPoly::one());
        }
    }
    if let (Some((b, l2)), Some((c, l3))) = (&k2, &k3) {
        if *c == sg(*b) {
            out.add_product(&(rat(1, 2) * l2 * l3), &(gs * gt), m.g_inv(*b));
        }
    }
    if let (Some((d, m1)), Some((e, m2))) = (&k4, &k5) {
        if *e == sg(*d) {
            out.add_product(&(rat(-1, 1) * m1 * m2), &(gs * gt), m.g_inv(*d));
        }
    }
    Ok(out)
}
