use std::collections::{BTreeMap, HashMap};

use crate::diagram::NiceDiagram;
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::involution::{is_arrow_breaking, Involution};
use crate::liealg::{extract_nice_structure, LieAlgebra};

use super::roots::{positive_roots, RootDatum, RootType};

/// n_Θ with its basis of root vectors.
#[derive(Clone, Debug)]
pub struct Parabolic {
    pub datum: RootDatum,
    /// Basis index → index into `datum.positive_roots`.
    pub roots: Vec<usize>,
    pub algebra: LieAlgebra,
    pub diagram: NiceDiagram,
}

impl Parabolic {
    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    /// Basis index of the root with the given ε-coordinates, if it lies in n_Θ.
    pub fn index_of(&self, eps: &[i64]) -> Option<usize> {
        let r = self.datum.find(eps)?;
        self.roots.iter().position(|&x| x == r)
    }

    pub fn eps(&self, basis: usize) -> &[i64] {
        &self.datum.positive_roots[self.roots[basis]].eps
    }

    pub fn labels(&self) -> Vec<String> {
        self.roots.iter().map(|&r| self.datum.label(r)).collect()
    }
}

type Sparse = BTreeMap<(usize, usize), i64>;

fn commutator(x: &Sparse, y: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (&(a, b), &u) in x {
        for (&(c, d), &v) in y {
            if b == c {
                *out.entry((a, d)).or_insert(0) += u * v;
            }
            if d == a {
                *out.entry((c, b)).or_insert(0) -= u * v;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn sparse(entries: &[((usize, usize), i64)]) -> Sparse {
    entries.iter().copied().collect()
}

/// Root vector in the standard matrix model of the split algebra.
fn root_vector(kind: RootType, n: usize, eps: &[i64]) -> Sparse {
    let nz: Vec<(usize, i64)> = eps
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    match (kind, nz.as_slice()) {
        (RootType::A, [(i, 1), (j, -1)]) => sparse(&[((*i, *j), 1)]),
        (RootType::C, [(i, 1), (j, -1)]) | (RootType::B, [(i, 1), (j, -1)]) => {
            sparse(&[((*i, *j), 1), ((n + j, n + i), -1)])
        }
        (RootType::C, [(i, 1), (j, 1)]) => sparse(&[((*i, n + j), 1), ((*j, n + i), 1)]),
        (RootType::C, [(i, 2)]) => sparse(&[((*i, n + i), 1)]),
        (RootType::B, [(i, 1), (j, 1)]) => sparse(&[((*i, n + j), 1), ((*j, n + i), -1)]),
        (RootType::B, [(i, 1)]) => sparse(&[((*i, 2 * n), 1), ((2 * n, n + i), -1)]),
        _ => unreachable!("not a positive root of type {kind}"),
    }
}

/// Structure constants of n⁺ on positive-root indices, as (p, q, r, c) with
/// [x_p, x_q] = c x_r.
fn full_constants(d: &RootDatum) -> Vec<(usize, usize, usize, i64)> {
    let roots = &d.positive_roots;
    if d.kind == RootType::G2 {
        return vec![
            (0, 1, 2, -1),
            (0, 2, 3, 1),
            (0, 3, 4, 1),
            (1, 4, 5, 1),
            (2, 3, 5, 1),
        ];
    }
    let mats: Vec<Sparse> = roots
        .iter()
        .map(|r| root_vector(d.kind, d.rank, &r.eps))
        .collect();
    let mut out = Vec::new();
    for p in 0..roots.len() {
        for q in p + 1..roots.len() {
            let sum: Vec<i64> = roots[p]
                .eps
                .iter()
                .zip(&roots[q].eps)
                .map(|(a, b)| a + b)
                .collect();
            let Some(r) = d.find(&sum) else { continue };
            let m = commutator(&mats[p], &mats[q]);
            let (&key, &val) = mats[r].iter().next().expect("nonzero root vector");
            let c = m.get(&key).copied().unwrap_or(0) / val;
            debug_assert!(m
                .iter()
                .all(|(k, v)| mats[r].get(k).copied().unwrap_or(0) * c == *v));
            if c != 0 {
                out.push((p, q, r, c));
            }
        }
    }
    out
}

/// The nilradical n_Θ = ⊕_{γ ∈ Π⁺∖⟨Θ⟩⁺} g_γ with its root-vector basis.
pub fn parabolic_nilradical(d: &RootDatum) -> Result<Parabolic> {
    let roots = d.nilradical_roots();
    let pos: HashMap<usize, usize> = roots.iter().enumerate().map(|(b, &r)| (r, b)).collect();
    let terms: Vec<(usize, usize, usize, Rational)> = full_constants(d)
        .into_iter()
        .filter_map(|(p, q, r, c)| {
            Some((
                *pos.get(&p)?,
                *pos.get(&q)?,
                *pos.get(&r)?,
                Rational::from_integer(c.into()),
            ))
        })
        .collect();
    let name = if d.theta.is_empty() {
        format!(
            "n({}{})",
            d.kind,
            if d.kind == RootType::G2 {
                String::new()
            } else {
                d.rank.to_string()
            }
        )
    } else {
        format!("n_Θ({}{})", d.kind, d.rank)
    };
    let algebra = LieAlgebra::from_terms(roots.len(), terms)?.with_name(name);
    let diagram = extract_nice_structure(&algebra)
        .map_err(|e| Error::NotNice(e.to_string()))?
        .diagram;
    Ok(Parabolic {
        datum: d.clone(),
        roots,
        algebra,
        diagram,
    })
}

/// Θ used for the Ricci-flat constructions: {α_2, α_4, …} for A_n (n odd),
/// {α_1 … α_{n−2}} for B_n and C_n, ∅ for G₂.
pub fn standard_theta(kind: RootType, n: usize) -> Result<Vec<usize>> {
    match kind {
        RootType::A => {
            if n.is_multiple_of(2) {
                return Err(Error::Unsupported(format!("A_{n}: rank must be odd")));
            }
            Ok((1..n).step_by(2).collect())
        }
        RootType::B | RootType::C => {
            if n < 2 {
                return Err(Error::Unsupported(format!(
                    "{kind}_{n}: rank must be at least 2"
                )));
            }
            Ok((0..n - 2).collect())
        }
        RootType::G2 => Ok(Vec::new()),
    }
}

pub fn standard_parabolic(kind: RootType, n: usize) -> Result<Parabolic> {
    let n = if kind == RootType::G2 { 2 } else { n };
    let d = positive_roots(kind, n)?.with_theta(standard_theta(kind, n)?)?;
    parabolic_nilradical(&d)
}

/// Root-level arrow-breaking test: γ+δ ∈ Π⁺ ⇒ σγ+σδ ∉ Π⁺, and
/// δ−γ ∈ Π⁺∖⟨Θ⟩⁺ ⇒ σδ−σγ ∉ Π⁺∖⟨Θ⟩⁺. `s` acts on basis indices of n_Θ.
pub fn arrow_breaking_roots(r: &RootDatum, s: &Involution) -> bool {
    let roots = r.nilradical_roots();
    if s.n() != roots.len() {
        return false;
    }
    let eps = |b: usize| r.positive_roots[roots[b]].eps.as_slice();
    (0..roots.len()).all(|g| {
        (0..roots.len())
            .all(|d| g == d || !root_clash(r, eps(g), eps(d), eps(s.apply(g)), eps(s.apply(d))))
    })
}

/// The Ricci-flat involutions of the constructions: one for A, B, C; the
/// two of the example for G₂.
pub fn sigma_parabolic(kind: RootType, n: usize) -> Result<(Parabolic, Vec<Involution>)> {
    let p = standard_parabolic(kind, n)?;
    let sigmas = match kind {
        RootType::A => vec![from_root_map(&p, |e| sigma_a(n, e))?],
        RootType::B => vec![sigma_b(&p, n)?],
        RootType::C => vec![from_root_map(&p, |e| sigma_c(n, e))?],
        RootType::G2 => vec![
            Involution::from_transpositions(6, &[(0, 5), (2, 4)])?,
            Involution::from_transpositions(6, &[(0, 5), (1, 3)])?,
        ],
    };
    for s in &sigmas {
        if !is_arrow_breaking(&p.diagram, s)? || !arrow_breaking_roots(&p.datum, s) {
            return Err(Error::InvalidInvolution(format!(
                "{s} is not arrow-breaking on {}",
                p.algebra.name().unwrap_or("")
            )));
        }
    }
    Ok((p, sigmas))
}

fn from_root_map(p: &Parabolic, f: impl Fn(&[i64]) -> Vec<i64>) -> Result<Involution> {
    let map = (0..p.dim())
        .map(|b| {
            let img = f(p.eps(b));
            p.index_of(&img).ok_or_else(|| {
                Error::InvalidInvolution(format!(
                    "image of {} is not in the nilradical",
                    p.datum.label(p.roots[b])
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Involution::from_map(map)
}

fn eps_vec(m: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; m];
    for &(i, c) in terms {
        v[i - 1] += c;
    }
    v
}

/// 1-based support of an ε-vector.
fn support(e: &[i64]) -> Vec<(usize, i64)> {
    e.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (i + 1, c))
        .collect()
}

fn sigma_a(n: usize, e: &[i64]) -> Vec<i64> {
    let s = support(e);
    let (i, j) = (s[0].0, s[1].0);
    let h = if i % 2 == 1 { i + 1 } else { i + 2 };
    let sj = n + 1 + h - j;
    let row = if i == 1 {
        1
    } else if i % 2 == 0 {
        i + 1
    } else {
        i - 1
    };
    eps_vec(n + 1, &[(row, 1), (sj, -1)])
}

fn sigma_c(n: usize, e: &[i64]) -> Vec<i64> {
    match support(e).as_slice() {
        // α_i = ε_i − ε_n ↔ β_{n−i} = 2ε_{n−i}
        [(i, 1), (j, -1)] if *j == n => eps_vec(n, &[(n - i, 2)]),
        [(i, 2)] if *i != n => eps_vec(n, &[(n - i, 1), (n, -1)]),
        // γ_j = ε_j + ε_n ↔ δ_{n−j+2} = ε_1 + ε_{n−j+2}
        [(j, 1), (k, 1)] if *k == n && *j != 1 => eps_vec(n, &[(1, 1), (n - j + 2, 1)]),
        [(k, 2)] if *k == n => eps_vec(n, &[(1, 1), (2, 1)]),
        [(1, 1), (h, 1)] => {
            let j = n + 2 - h;
            if j == n {
                eps_vec(n, &[(n, 2)])
            } else {
                eps_vec(n, &[(j, 1), (n, 1)])
            }
        }
        _ => e.to_vec(),
    }
}

/// ε_i + ε_j with 1-based indices (i ≠ j), ε_i when j = 0.
fn b_root(n: usize, i: usize, j: usize) -> Vec<i64> {
    if j == 0 {
        eps_vec(n, &[(i, 1)])
    } else {
        eps_vec(n, &[(i, 1), (j, 1)])
    }
}

/// Whether σ(ε_i+ε_j), i < j < n, avoids the indices i and j.
pub fn b_index_avoidance(p: &Parabolic, n: usize, s: &Involution) -> bool {
    (0..p.dim()).all(|b| avoids(p, n, b, s.apply(b)))
}

fn sigma_b(p: &Parabolic, n: usize) -> Result<Involution> {
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "B_{n}: rank must be at least 3"
        )));
    }
    let mut map: Vec<Option<usize>> = vec![None; p.dim()];
    let idx = |e: Vec<i64>| p.index_of(&e).expect("root of the nilradical");
    let pair = |map: &mut Vec<Option<usize>>, a: Vec<i64>, b: Vec<i64>| {
        let (x, y) = (idx(a), idx(b));
        map[x] = Some(y);
        map[y] = Some(x);
    };
    let fix = |map: &mut Vec<Option<usize>>, a: Vec<i64>| {
        let x = idx(a);
        map[x] = Some(x);
    };
    let r = |i: usize, j: usize| b_root(n, i, j);
    for i in 1..n {
        pair(&mut map, eps_vec(n, &[(i, 1), (n, -1)]), r(i, 0));
    }
    match n {
        3 => {
            pair(&mut map, r(1, 2), r(3, 0));
            fix(&mut map, r(1, 3));
            fix(&mut map, r(2, 3));
        }
        4 => {
            pair(&mut map, r(1, 2), r(4, 0));
            pair(&mut map, r(1, 3), r(2, 4));
            pair(&mut map, r(2, 3), r(1, 4));
            fix(&mut map, r(3, 4));
        }
        _ => {
            for i in 4..n {
                fix(&mut map, r(i, n));
            }
            let m = n - 1;
            if m.is_multiple_of(2) {
                for a in 1..=m / 2 {
                    for b in a + 1..=m / 2 {
                        pair(&mut map, r(2 * a - 1, 2 * b - 1), r(2 * a, 2 * b));
                        pair(&mut map, r(2 * a - 1, 2 * b), r(2 * a, 2 * b - 1));
                    }
                }
                pair(&mut map, r(1, 2), r(n, 0));
                let diag: Vec<Vec<i64>> = (2..=m / 2).map(|l| r(2 * l - 1, 2 * l)).collect();
                let rest = if diag.len().is_multiple_of(2) {
                    for i in 1..=3 {
                        fix(&mut map, r(i, n));
                    }
                    &diag[..]
                } else {
                    pair(&mut map, r(3, 4), r(1, n));
                    fix(&mut map, r(2, n));
                    fix(&mut map, r(3, n));
                    &diag[1..]
                };
                for c in rest.chunks(2) {
                    pair(&mut map, c[0].clone(), c[1].clone());
                }
            } else {
                let t = (m - 1) / 2;
                for a in 1..=t {
                    for b in a + 1..=t {
                        pair(&mut map, r(2 * a - 1, 2 * b), r(2 * a, 2 * b + 1));
                        pair(&mut map, r(2 * a, 2 * b), r(2 * a - 1, 2 * b + 1));
                    }
                }
                let tri = |a: usize| {
                    [
                        r(2 * a - 1, 2 * a),
                        r(2 * a - 1, 2 * a + 1),
                        r(2 * a, 2 * a + 1),
                    ]
                };
                let first_free = if t % 2 == 1 {
                    pair(&mut map, r(1, 3), r(n, 0));
                    pair(&mut map, r(1, 2), r(3, n));
                    pair(&mut map, r(2, 3), r(1, n));
                    fix(&mut map, r(2, n));
                    2
                } else {
                    pair(&mut map, r(1, 2), r(n, 0));
                    pair(&mut map, r(3, 4), r(1, n));
                    fix(&mut map, r(2, n));
                    fix(&mut map, r(3, n));
                    3
                };
                let mut a = first_free;
                while a < t {
                    for (x, y) in tri(a).into_iter().zip(tri(a + 1)) {
                        pair(&mut map, x, y);
                    }
                    a += 2;
                }
            }
        }
    }
    if let Some(s) = complete_b(p, n, map.clone()) {
        return Ok(s);
    }
    // The literal pairing is not arrow-breaking for every rank: keep the
    // short-root pairs and the fixed ε_i+ε_n, i ≥ 4, and search the rest.
    let keep = |b: usize| match support(p.eps(b)).as_slice() {
        [(i, 1)] => *i < n,
        [(_, 1), (j, -1)] => *j == n,
        [(i, 1), (j, 1)] => *j == n && *i >= 4 && n >= 5,
        _ => false,
    };
    let base = (0..p.dim())
        .map(|b| if keep(b) { map[b] } else { None })
        .collect();
    complete_b(p, n, base)
        .ok_or_else(|| Error::InvalidInvolution(format!("no arrow-breaking completion for B_{n}")))
}

/// Fills unassigned nodes, lowest index first, preferring completions in
/// which σ(ε_i+ε_j) avoids the indices i and j.
fn complete_b(p: &Parabolic, n: usize, map: Vec<Option<usize>>) -> Option<Involution> {
    let free: Vec<usize> = (0..map.len()).filter(|&i| map[i].is_none()).collect();
    [true, false]
        .into_iter()
        .find_map(|prop| fill(p, n, &mut map.clone(), &free, prop))
}

fn avoids(p: &Parabolic, n: usize, x: usize, y: usize) -> bool {
    match support(p.eps(x)).as_slice() {
        [(i, 1), (j, 1)] if *j < n => support(p.eps(y))
            .iter()
            .all(|(h, c)| *c != 1 || *h == n || (h != i && h != j)),
        _ => true,
    }
}

fn fill(
    p: &Parabolic,
    n: usize,
    map: &mut Vec<Option<usize>>,
    free: &[usize],
    prop: bool,
) -> Option<Involution> {
    let Some(pos) = free.iter().position(|&x| map[x].is_none()) else {
        let s = Involution::from_map(map.iter().map(|x| x.expect("assigned")).collect()).ok()?;
        return arrow_breaking_roots(&p.datum, &s).then_some(s);
    };
    let x = free[pos];
    let mut cands: Vec<usize> = free[pos + 1..]
        .iter()
        .copied()
        .filter(|&y| map[y].is_none())
        .collect();
    cands.push(x);
    for y in cands {
        if prop && !(avoids(p, n, x, y) && avoids(p, n, y, x)) {
            continue;
        }
        map[x] = Some(y);
        map[y] = Some(x);
        if partial_ok(p, map, x) && partial_ok(p, map, y) {
            if let Some(s) = fill(p, n, map, free, prop) {
                return Some(s);
            }
        }
        map[x] = None;
        map[y] = None;
    }
    None
}

fn partial_ok(p: &Parabolic, map: &[Option<usize>], g: usize) -> bool {
    let sg = map[g].expect("assigned");
    (0..map.len()).all(|d| match map[d] {
        Some(sd) if d != g => {
            !root_clash(&p.datum, p.eps(g), p.eps(d), p.eps(sg), p.eps(sd))
                && !root_clash(&p.datum, p.eps(d), p.eps(g), p.eps(sd), p.eps(sg))
        }
        _ => true,
    })
}

fn in_nilradical(r: &RootDatum, v: &[i64]) -> bool {
    r.find(v).is_some_and(|x| !r.in_theta_span(x))
}

/// γ+δ and σγ+σδ both roots, or δ−γ and σδ−σγ both in the nilradical.
fn root_clash(r: &RootDatum, g: &[i64], d: &[i64], sg: &[i64], sd: &[i64]) -> bool {
    let add = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    let sub = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>();
    (r.is_root(&add(g, d)) && r.is_root(&add(sg, sd)))
        || (in_nilradical(r, &sub(d, g)) && in_nilradical(r, &sub(sd, sg)))
}
