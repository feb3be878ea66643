//! Order-two permutations of diagram nodes, the arrow-breaking predicate in
//! its two forms, and the pruned search for arrow-breaking involutions.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{pq_factors, root_matrix, Arrow, FactorSet, NiceDiagram};
use crate::error::{Error, Result};
use crate::exactmath::{antiinvariant_kernel_dim, rank_and_kernel};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Involution {
    map: Vec<usize>,
}

impl Involution {
    pub fn identity(n: usize) -> Self {
        Involution {
            map: (0..n).collect(),
        }
    }

    /// 0-based disjoint transpositions.
    pub fn from_transpositions(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b) + 1,
                    n,
                });
            }
            if a == b || map[a] != a || map[b] != b {
                return Err(Error::InvalidInvolution(format!(
                    "transposition ({} {}) is not disjoint from the others",
                    a + 1,
                    b + 1
                )));
            }
            map[a] = b;
            map[b] = a;
        }
        Ok(Involution { map })
    }

    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        for (i, &j) in map.iter().enumerate() {
            if j >= n || map[j] != i {
                return Err(Error::InvalidInvolution(format!(
                    "not an involution at {}",
                    i + 1
                )));
            }
        }
        Ok(Involution { map })
    }

    /// Cycle notation with 1-based nodes, e.g. "(3 4)(2 5)"; "()" or "id" is
    /// the identity.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "()" || t == "id" {
            return Ok(Involution::identity(n));
        }
        let mut pairs = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let pos = t.len() - rest.len();
            let inner_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::parse(pos, "expected `(`"))?;
            let close = inner_start
                .find(')')
                .ok_or_else(|| Error::parse(pos, "unclosed cycle"))?;
            let nums: Vec<&str> = inner_start[..close]
                .split([' ', ','])
                .filter(|s| !s.is_empty())
                .collect();
            let parsed: Vec<usize> = nums
                .iter()
                .map(|s| s.parse::<usize>().ok().filter(|&v| v >= 1))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::parse(pos, "cycle entries must be positive integers"))?;
            match parsed.len() {
                1 => {}
                2 => pairs.push((parsed[0] - 1, parsed[1] - 1)),
                _ => {
                    return Err(Error::InvalidInvolution(format!(
                        "cycle of length {} is not a transposition",
                        parsed.len()
                    )))
                }
            }
            rest = inner_start[close + 1..].trim_start();
        }
        Involution::from_transpositions(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_map(&self) -> &[usize] {
        &self.map
    }

    /// Transpositions (a, b), a < b, sorted.
    pub fn transpositions(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .filter(|&i| self.map[i] > i)
            .map(|i| (i, self.map[i]))
            .collect()
    }

    pub fn fixed(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.map[i] == i).collect()
    }

    pub fn k(&self) -> usize {
        self.transpositions().len()
    }

    /// φ⁻¹ σ φ for a bijection φ.
    pub fn conjugate_by(&self, phi: &[usize]) -> Involution {
        let n = self.n();
        let mut inv = vec![0; n];
        for (i, &p) in phi.iter().enumerate() {
            inv[p] = i;
        }
        Involution {
            map: (0..n).map(|i| inv[self.map[phi[i]]]).collect(),
        }
    }

    /// Key for the enumeration order: transposition count, then the list.
    pub fn order_key(&self) -> (usize, Vec<(usize, usize)>) {
        let t = self.transpositions();
        (t.len(), t)
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.transpositions();
        if t.is_empty() {
            return write!(f, "()");
        }
        for (a, b) in t {
            write!(f, "({} {})", a + 1, b + 1)?;
        }
        Ok(())
    }
}

impl Serialize for Involution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Clause {
    Incoming,
    Outgoing,
}

/// `arrow` is mapped by σ onto a pattern realized by `image`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Violation {
    pub arrow: Arrow,
    pub image: Arrow,
    pub clause: Clause,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.clause {
            Clause::Incoming => "incoming",
            Clause::Outgoing => "outgoing",
        };
        write!(f, "{} is matched by {} ({what})", self.arrow, self.image)
    }
}

fn check_size(d: &NiceDiagram, s: &Involution) -> Result<()> {
    if d.node_count() != s.n() {
        return Err(Error::SizeMismatch {
            expected: d.node_count(),
            got: s.n(),
        });
    }
    Ok(())
}

/// First violation of the arrow-breaking condition, or None if σ is
/// arrow-breaking.
pub fn arrow_breaking_violation(d: &NiceDiagram, s: &Involution) -> Result<Option<Violation>> {
    check_size(d, s)?;
    for a in d.arrows() {
        let (si, sj, sk) = (s.apply(a.source), s.apply(a.label), s.apply(a.target));
        if let Some(img) = d.arrows().find(|b| b.target == sk && b.label == sj) {
            return Ok(Some(Violation {
                arrow: *a,
                image: *img,
                clause: Clause::Incoming,
            }));
        }
        if let Some(img) = d.arrows().find(|b| b.source == si && b.label == sj) {
            return Ok(Some(Violation {
                arrow: *a,
                image: *img,
                clause: Clause::Outgoing,
            }));
        }
    }
    Ok(None)
}

pub fn is_arrow_breaking(d: &NiceDiagram, s: &Involution) -> Result<bool> {
    Ok(arrow_breaking_violation(d, s)?.is_none())
}

pub fn is_arrow_breaking_factors(f: &FactorSet, s: &Involution) -> bool {
    if f.n != s.n() {
        return false;
    }
    let ps: std::collections::HashSet<(usize, usize)> = f.p_factors.iter().copied().collect();
    let qs: std::collections::HashSet<(usize, usize)> = f.q_factors.iter().copied().collect();
    let p_clash = f.p_factors.iter().any(|&(i, j)| {
        let (a, b) = (s.apply(i), s.apply(j));
        ps.contains(&(a.min(b), a.max(b)))
    });
    let q_clash = f
        .q_factors
        .iter()
        .any(|&(i, k)| qs.contains(&(s.apply(i), s.apply(k))));
    !p_clash && !q_clash
}

#[derive(Clone, Copy, Default, Debug)]
pub struct EnumerateOptions {
    pub max_results: Option<usize>,
    pub require_fixed_count: Option<usize>,
}

/// Number of involutions of an n-set, I(n) = I(n−1) + (n−1) I(n−2).
pub fn involution_count(n: usize) -> u128 {
    let (mut a, mut b) = (1u128, 1u128);
    for m in 2..=n {
        let c = b + (m as u128 - 1) * a;
        a = b;
        b = c;
    }
    if n == 0 {
        1
    } else {
        b
    }
}

const FREE: usize = usize::MAX;

struct Pruner {
    n: usize,
    p: Vec<bool>,
    q: Vec<bool>,
    p_adj: Vec<Vec<usize>>,
    q_out: Vec<Vec<usize>>,
    q_in: Vec<Vec<usize>>,
}

impl Pruner {
    fn new(f: &FactorSet) -> Self {
        let n = f.n;
        let mut p = vec![false; n * n];
        let mut q = vec![false; n * n];
        let mut p_adj = vec![Vec::new(); n];
        let mut q_out = vec![Vec::new(); n];
        let mut q_in = vec![Vec::new(); n];
        for &(i, j) in &f.p_factors {
            p[i * n + j] = true;
            p[j * n + i] = true;
            p_adj[i].push(j);
            p_adj[j].push(i);
        }
        for &(i, k) in &f.q_factors {
            q[i * n + k] = true;
            q_out[i].push(k);
            q_in[k].push(i);
        }
        Pruner {
            n,
            p,
            q,
            p_adj,
            q_out,
            q_in,
        }
    }

    /// Checks every factor touching `x` whose nodes are all assigned.
    fn node_ok(&self, map: &[usize], x: usize) -> bool {
        let n = self.n;
        let sx = map[x];
        self.p_adj[x]
            .iter()
            .all(|&y| map[y] == FREE || !self.p[sx * n + map[y]])
            && self.q_out[x]
                .iter()
                .all(|&k| map[k] == FREE || !self.q[sx * n + map[k]])
            && self.q_in[x]
                .iter()
                .all(|&i| map[i] == FREE || !self.q[map[i] * n + sx])
    }

    fn assign(&self, map: &mut [usize], a: usize, b: usize) -> bool {
        map[a] = b;
        map[b] = a;
        self.node_ok(map, a) && (a == b || self.node_ok(map, b))
    }
}

struct Dfs<'p> {
    pr: &'p Pruner,
    limit: usize,
    out: Vec<Involution>,
}

impl Dfs<'_> {
    fn go(&mut self, map: &mut Vec<usize>, from: usize, pairs_left: usize, fixed_left: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        let Some(i) = (from..map.len()).find(|&i| map[i] == FREE) else {
            self.out.push(Involution { map: map.clone() });
            return;
        };
        if pairs_left > 0 {
            for j in i + 1..map.len() {
                if map[j] != FREE {
                    continue;
                }
                if self.pr.assign(map, i, j) {
                    self.go(map, i + 1, pairs_left - 1, fixed_left);
                }
                map[i] = FREE;
                map[j] = FREE;
                if self.out.len() >= self.limit {
                    return;
                }
            }
        }
        if fixed_left > 0 {
            if self.pr.assign(map, i, i) {
                self.go(map, i + 1, pairs_left, fixed_left - 1);
            }
            map[i] = FREE;
        }
    }
}

/// All arrow-breaking involutions, ordered by transposition count and then
/// lexicographically on the transposition list.
pub fn enumerate_arrow_breaking(d: &NiceDiagram, opts: EnumerateOptions) -> Vec<Involution> {
    let n = d.node_count();
    let pr = Pruner::new(&pq_factors(d));
    let limit = opts.max_results.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if n == 0 {
        return vec![Involution::identity(0)];
    }
    for k in 0..=n / 2 {
        let fixed = n - 2 * k;
        if opts.require_fixed_count.is_some_and(|f| f != fixed) {
            continue;
        }
        // first node: paired with j ascending, then fixed
        let mut firsts: Vec<usize> = if k > 0 { (1..n).collect() } else { Vec::new() };
        if fixed > 0 {
            firsts.push(0);
        }
        let remaining = limit - out.len();
        let branches: Vec<Vec<Involution>> = firsts
            .par_iter()
            .map(|&j| {
                let mut map = vec![FREE; n];
                let mut dfs = Dfs {
                    pr: &pr,
                    limit: remaining,
                    out: Vec::new(),
                };
                if pr.assign(&mut map, 0, j) {
                    let (p, f) = if j == 0 {
                        (k, fixed - 1)
                    } else {
                        (k - 1, fixed)
                    };
                    dfs.go(&mut map, 1, p, f);
                }
                dfs.out
            })
            .collect();
        for b in branches {
            out.extend(b);
        }
        out.truncate(limit);
        if out.len() >= limit {
            break;
        }
    }
    out
}

/// rank M − k + dim (ker M)^{−σ}.
pub fn family_parameter_count(d: &NiceDiagram, s: &Involution) -> Result<i64> {
    check_size(d, s)?;
    let (rank, kernel) = rank_and_kernel(&root_matrix(d));
    let anti = antiinvariant_kernel_dim(&kernel, s)?;
    Ok(rank as i64 - s.k() as i64 + anti as i64)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// (p, q): each transposition adds a hyperbolic plane, each fixed node its sign.
pub fn metric_signature(
    s: &Involution,
    fixed_signs: &BTreeMap<usize, Sign>,
) -> Result<(usize, usize)> {
    let k = s.k();
    let (mut p, mut q) = (k, k);
    for i in s.fixed() {
        match fixed_signs.get(&i) {
            Some(Sign::Plus) => p += 1,
            Some(Sign::Minus) => q += 1,
            None => return Err(Error::MissingSign(i + 1)),
        }
    }
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_involutions(n: usize) -> Vec<Involution> {
        let d = NiceDiagram::empty(n);
        enumerate_arrow_breaking(&d, EnumerateOptions::default())
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 0..=7 {
            let brute = (0..n)
                .map(|_| 0..n)
                .fold(vec![vec![]], |acc: Vec<Vec<usize>>, r| {
                    acc.into_iter()
                        .flat_map(|p| r.clone().map(move |x| [p.clone(), vec![x]].concat()))
                        .collect()
                })
                .into_iter()
                .filter(|m| Involution::from_map(m.clone()).is_ok())
                .count();
            assert_eq!(involution_count(n), brute as u128, "n = {n}");
            assert_eq!(all_involutions(n).len(), brute);
        }
        assert_eq!(involution_count(6), 76);
    }

    #[test]
    fn enumeration_order() {
        let v = all_involutions(4);
        let keys: Vec<_> = v.iter().map(|s| s.order_key()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(v[0], Involution::identity(4));
    }

    #[test]
    fn parse_and_print() {
        let s = Involution::parse("(3 4)(2 5)", 5).unwrap();
        assert_eq!(s.to_string(), "(2 5)(3 4)");
        assert_eq!(s.fixed(), vec![0]);
        assert_eq!(Involution::parse(&s.to_string(), 5).unwrap(), s);
        assert!(Involution::parse("(1 2)(2 3)", 3).is_err());
        assert!(Involution::parse("(1 2 3)", 3).is_err());
        assert!(Involution::parse("(1 7)", 3).is_err());
        assert_eq!(Involution::parse("()", 2).unwrap(), Involution::identity(2));
    }

    #[test]
    fn conjugation() {
        let s = Involution::parse("(1 2)", 3).unwrap();
        let phi = [2, 0, 1];
        let c = s.conjugate_by(&phi);
        for i in 0..3 {
            assert_eq!(phi[c.apply(i)], s.apply(phi[i]));
        }
    }

    #[test]
    fn signature() {
        let s = Involution::parse("(1 2)", 4).unwrap();
        let mut signs = BTreeMap::new();
        signs.insert(2, Sign::Plus);
        assert!(metric_signature(&s, &signs).is_err());
        signs.insert(3, Sign::Minus);
        assert_eq!(metric_signature(&s, &signs).unwrap(), (2, 2));
    }
}
