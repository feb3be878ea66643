use serde::Serialize;

use super::riemann::{Component, CurvatureTensor};
use crate::diagram::NiceDiagram;
use crate::error::Result;
use crate::exactmath::LaurentPoly;
use crate::involution::Involution;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Flatness {
    IdenticallyFlat,
    /// Flat exactly where every condition vanishes.
    ConditionallyFlat {
        conditions: Vec<LaurentPoly>,
        witness: Component,
    },
    /// Some component is a single term, hence nonzero for all g.
    GenericallyNonflat {
        witness: Component,
    },
}

impl Flatness {
    pub fn is_identically_flat(&self) -> bool {
        matches!(self, Flatness::IdenticallyFlat)
    }
}

pub fn flatness_analysis(r: &CurvatureTensor) -> Flatness {
    let comps = r.components();
    let Some(first) = comps.first() else {
        return Flatness::IdenticallyFlat;
    };
    if let Some(c) = comps.iter().find(|c| c.value.is_monomial()) {
        return Flatness::GenericallyNonflat { witness: c.clone() };
    }
    let mut conditions: Vec<LaurentPoly> = Vec::new();
    for c in &comps {
        let num = c.value.numerator();
        if !conditions.contains(&num) {
            conditions.push(num);
        }
    }
    Flatness::ConditionallyFlat {
        conditions,
        witness: first.clone(),
    }
}

/// Whether R vanishes after substituting g{v+1} = value for each pair in turn.
pub fn flat_under(r: &CurvatureTensor, relations: &[(usize, LaurentPoly)]) -> Result<bool> {
    for c in r.components() {
        let mut p = c.value.numerator();
        for (v, value) in relations {
            p = p.substitute(*v, value)?.numerator();
        }
        if !p.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Criterion {
    C1,
    C2,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CriteriaWitness {
    pub s: usize,
    pub t: usize,
    pub criterion: Criterion,
}

/// Checks the two diagram-level sufficient conditions for nonflatness at (s, t).
pub fn nonflat_criteria_at(
    d: &NiceDiagram,
    sigma: &Involution,
    s: usize,
    t: usize,
) -> Option<Criterion> {
    if s == t {
        return None;
    }
    let (ss, st) = (sigma.apply(s), sigma.apply(t));
    // no k with s -[k]-> σs and t -[σk]-> σt
    let blocked = d
        .arrows()
        .any(|a| a.source == s && a.target == ss && d.has_arrow(t, sigma.apply(a.label), st));
    if blocked {
        return None;
    }
    if let Some(k1) = d.target_of(s, t) {
        if sigma.apply(k1) == k1 && !d.has_edge(t, ss) && !d.has_edge(s, st) {
            return Some(Criterion::C1);
        }
    }
    if let Some(k2) = d.label_between(s, st) {
        if sigma.apply(k2) == k2 && d.target_of(s, t).is_none() && !d.has_edge(t, ss) {
            return Some(Criterion::C2);
        }
    }
    None
}

/// First pair (s, t), s ≠ t, in lexicographic order satisfying C1 or C2.
pub fn nonflat_criteria(d: &NiceDiagram, sigma: &Involution) -> Option<CriteriaWitness> {
    let n = d.node_count();
    for s in 0..n {
        for t in 0..n {
            if let Some(criterion) = nonflat_criteria_at(d, sigma, s, t) {
                return Some(CriteriaWitness { s, t, criterion });
            }
        }
    }
    None
}
