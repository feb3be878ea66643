//! Nice diagrams: labeled DAGs whose arrow x -[y]-> z records that [x, y] is
//! a nonzero multiple of z.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use petgraph::algo::kosaraju_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{QMatrix, Rational};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(source: usize, label: usize, target: usize) -> Self {
        Arrow {
            source,
            label,
            target,
        }
    }

    pub fn mirror(&self) -> Arrow {
        Arrow::new(self.label, self.source, self.target)
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -[{}]-> {}",
            self.source + 1,
            self.label + 1,
            self.target + 1
        )
    }
}

/// Node indices are 0-based internally and 1-based in every text form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NiceDiagram {
    n: usize,
    arrows: BTreeSet<Arrow>,
}

impl NiceDiagram {
    pub fn new(n: usize, arrows: impl IntoIterator<Item = Arrow>) -> Result<Self> {
        let arrows: BTreeSet<Arrow> = arrows.into_iter().collect();
        for a in &arrows {
            for idx in [a.source, a.label, a.target] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx + 1, n });
                }
            }
        }
        Ok(NiceDiagram { n, arrows })
    }

    pub fn empty(n: usize) -> Self {
        NiceDiagram {
            n,
            arrows: BTreeSet::new(),
        }
    }

    /// One entry (i, j, k) per bracket; both N3 arrows are added.
    pub fn from_brackets(n: usize, brackets: &[(usize, usize, usize)]) -> Result<Self> {
        NiceDiagram::new(
            n,
            brackets
                .iter()
                .flat_map(|&(i, j, k)| [Arrow::new(i, j, k), Arrow::new(j, i, k)]),
        )
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn contains(&self, a: &Arrow) -> bool {
        self.arrows.contains(a)
    }

    pub fn has_arrow(&self, source: usize, label: usize, target: usize) -> bool {
        self.arrows.contains(&Arrow::new(source, label, target))
    }

    /// Target of the arrow with this source and label, if any.
    pub fn target_of(&self, source: usize, label: usize) -> Option<usize> {
        self.arrows
            .range(Arrow::new(source, label, 0)..=Arrow::new(source, label, usize::MAX))
            .next()
            .map(|a| a.target)
    }

    /// Label of the arrow from `source` to `target`, if any.
    pub fn label_between(&self, source: usize, target: usize) -> Option<usize> {
        self.arrows
            .range(Arrow::new(source, 0, 0)..=Arrow::new(source, usize::MAX, usize::MAX))
            .find(|a| a.target == target)
            .map(|a| a.label)
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        self.label_between(source, target).is_some()
    }

    pub fn has_incoming_label(&self, target: usize, label: usize) -> Option<Arrow> {
        self.arrows
            .iter()
            .find(|a| a.target == target && a.label == label)
            .copied()
    }

    /// Unordered bracket pairs (i < j) with their target.
    pub fn bracket_pairs(&self) -> Vec<(usize, usize, usize)> {
        self.arrows
            .iter()
            .filter(|a| a.source < a.label)
            .map(|a| (a.source, a.label, a.target))
            .collect()
    }

    /// Adds the missing N3 mirrors.
    pub fn symmetric_completion(&self) -> NiceDiagram {
        let mut arrows = self.arrows.clone();
        for a in &self.arrows {
            arrows.insert(a.mirror());
        }
        NiceDiagram { n: self.n, arrows }
    }

    /// Image under the node map `phi`.
    pub fn relabel(&self, phi: &[usize]) -> NiceDiagram {
        NiceDiagram {
            n: self.n,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow::new(phi[a.source], phi[a.label], phi[a.target]))
                .collect(),
        }
    }

    pub fn out_degree(&self, x: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == x).count()
    }

    pub fn in_degree(&self, x: usize) -> usize {
        self.arrows.iter().filter(|a| a.target == x).count()
    }

    /// Parses "nodes: n" followed by "i -[j]-> k" lines; mirrors are added.
    pub fn parse(text: &str) -> Result<NiceDiagram> {
        let mut n = None;
        let mut arrows = Vec::new();
        let mut offset = 0;
        for line in text.lines() {
            let here = offset;
            offset += line.len() + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            if let Some(rest) = t.strip_prefix("nodes:") {
                n = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::parse(here, "bad node count"))?,
                );
                continue;
            }
            let bad = || Error::parse(here, format!("expected `i -[j]-> k`, got `{t}`"));
            let (src, rest) = t.split_once("-[").ok_or_else(bad)?;
            let (lab, tgt) = rest.split_once("]->").ok_or_else(bad)?;
            let idx = |s: &str| -> Result<usize> {
                let v: usize = s.trim().parse().map_err(|_| bad())?;
                if v == 0 {
                    return Err(Error::parse(here, "nodes are numbered from 1"));
                }
                Ok(v - 1)
            };
            arrows.push(Arrow::new(idx(src)?, idx(lab)?, idx(tgt)?));
        }
        let n = n.ok_or_else(|| Error::parse(0, "missing `nodes:` header"))?;
        Ok(NiceDiagram::new(n, arrows)?.symmetric_completion())
    }
}

impl fmt::Display for NiceDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes: {}", self.n)?;
        for a in &self.arrows {
            writeln!(f, "{a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum Condition {
    Acyclic,
    NoDuplicate,
    N1,
    N2,
    N3,
    N4,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Witness {
    /// Nodes of a strongly connected component (or a self-loop).
    Cycle(Vec<usize>),
    Arrows(Vec<Arrow>),
    /// x, y, z, w for which exactly one of the three relations holds.
    Quadruple([usize; 4]),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConditionResult {
    pub condition: Condition,
    pub witness: Option<Witness>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ValidationReport {
    pub results: Vec<ConditionResult>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.results.iter().all(|r| r.witness.is_none())
    }

    pub fn failure(&self, c: Condition) -> Option<&Witness> {
        self.results
            .iter()
            .find(|r| r.condition == c)
            .and_then(|r| r.witness.as_ref())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.witness {
                None => writeln!(f, "{:?}: ok", r.condition)?,
                Some(w) => writeln!(f, "{:?}: FAIL {}", r.condition, format_witness(w))?,
            }
        }
        Ok(())
    }
}

fn format_witness(w: &Witness) -> String {
    match w {
        Witness::Cycle(nodes) => {
            let v: Vec<String> = nodes.iter().map(|x| format!("e{}", x + 1)).collect();
            format!("cycle through {}", v.join(", "))
        }
        Witness::Arrows(a) => {
            let v: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            v.join("; ")
        }
        Witness::Quadruple([x, y, z, w]) => {
            format!("nodes e{} e{} e{} e{}", x + 1, y + 1, z + 1, w + 1)
        }
    }
}

pub fn validate_nice_diagram(d: &NiceDiagram) -> ValidationReport {
    let results = vec![
        ConditionResult {
            condition: Condition::Acyclic,
            witness: acyclic_witness(d),
        },
        ConditionResult {
            condition: Condition::NoDuplicate,
            witness: pair_clash(d, |a| (a.source, a.target)),
        },
        ConditionResult {
            condition: Condition::N1,
            witness: pair_clash(d, |a| (a.source, a.label)),
        },
        ConditionResult {
            condition: Condition::N2,
            witness: pair_clash(d, |a| (a.target, a.label)),
        },
        ConditionResult {
            condition: Condition::N3,
            witness: d
                .arrows
                .iter()
                .find(|a| a.source == a.label || !d.arrows.contains(&a.mirror()))
                .map(|a| Witness::Arrows(vec![*a])),
        },
        ConditionResult {
            condition: Condition::N4,
            witness: n4_witness(d),
        },
    ];
    ValidationReport { results }
}

fn acyclic_witness(d: &NiceDiagram) -> Option<Witness> {
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..d.n).map(|_| g.add_node(())).collect();
    for a in &d.arrows {
        if a.source == a.target {
            return Some(Witness::Cycle(vec![a.source]));
        }
        g.update_edge(nodes[a.source], nodes[a.target], ());
    }
    kosaraju_scc(&g).into_iter().find(|c| c.len() > 1).map(|c| {
        let mut v: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
        v.sort_unstable();
        Witness::Cycle(v)
    })
}

fn pair_clash(d: &NiceDiagram, key: impl Fn(&Arrow) -> (usize, usize)) -> Option<Witness> {
    let mut seen: BTreeMap<(usize, usize), Arrow> = BTreeMap::new();
    for a in &d.arrows {
        if let Some(prev) = seen.insert(key(a), *a) {
            return Some(Witness::Arrows(vec![prev, *a]));
        }
    }
    None
}

fn n4_witness(d: &NiceDiagram) -> Option<Witness> {
    let n = d.n;
    let mut targets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for a in &d.arrows {
        targets
            .entry((a.source, a.label))
            .or_default()
            .push(a.target);
    }
    let empty = Vec::new();
    let succ = |s: usize, l: usize| targets.get(&(s, l)).unwrap_or(&empty);
    // x -[y,z]-> w: some u with y -[z]-> u and x -[u]-> w
    let rel = |x: usize, y: usize, z: usize, w: usize| {
        x != y && y != z && x != z && succ(y, z).iter().any(|&u| succ(x, u).contains(&w))
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x == y || y == z || x == z {
                    continue;
                }
                for w in 0..n {
                    let count =
                        rel(x, y, z, w) as u8 + rel(y, z, x, w) as u8 + rel(z, x, y, w) as u8;
                    if count == 1 {
                        return Some(Witness::Quadruple([x, y, z, w]));
                    }
                }
            }
        }
    }
    None
}

/// One row per bracket pair {i, j} -> k: −1 at i and j, +1 at k.
pub fn root_matrix(d: &NiceDiagram) -> QMatrix {
    let pairs = d.bracket_pairs();
    let mut m = QMatrix::zeros(pairs.len(), d.n);
    for (r, &(i, j, k)) in pairs.iter().enumerate() {
        m.set(r, i, -Rational::one());
        m.set(r, j, -Rational::one());
        m.set(r, k, Rational::one());
    }
    debug_assert!(pairs
        .iter()
        .all(|&(i, j, _)| !m.get(0, i).is_zero() || i != j));
    m
}

/// Linear factors of P (pairs {i, j}) and Q (pairs (i, k) from arrows).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FactorSet {
    pub n: usize,
    pub p_factors: Vec<(usize, usize)>,
    pub q_factors: Vec<(usize, usize)>,
}

pub fn pq_factors(d: &NiceDiagram) -> FactorSet {
    let p_factors = d
        .bracket_pairs()
        .into_iter()
        .map(|(i, j, _)| (i, j))
        .collect();
    let mut q_factors: Vec<(usize, usize)> =
        d.arrows.iter().map(|a| (a.source, a.target)).collect();
    q_factors.sort_unstable();
    FactorSet {
        n: d.n,
        p_factors,
        q_factors,
    }
}

/// Lexicographically least bijection φ with φ(arrows of a) ⊆ arrows of b.
pub fn diagram_leq(a: &NiceDiagram, b: &NiceDiagram) -> Result<Option<Vec<usize>>> {
    if a.n != b.n {
        return Err(Error::SizeMismatch {
            expected: a.n,
            got: b.n,
        });
    }
    let n = a.n;
    if n > 10 {
        return Err(Error::TooLarge(format!(
            "diagram_leq on {n} nodes (limit 10)"
        )));
    }
    let mut in_b = vec![false; n * n * n];
    for x in &b.arrows {
        in_b[(x.source * n + x.label) * n + x.target] = true;
    }
    // arrows of a grouped by their largest node, checked once that node is placed
    let mut due: Vec<Vec<Arrow>> = vec![Vec::new(); n];
    for x in &a.arrows {
        due[x.source.max(x.label).max(x.target)].push(*x);
    }
    let deg_a: Vec<(usize, usize)> = (0..n).map(|x| (a.out_degree(x), a.in_degree(x))).collect();
    let deg_b: Vec<(usize, usize)> = (0..n).map(|x| (b.out_degree(x), b.in_degree(x))).collect();

    struct Search<'s> {
        n: usize,
        in_b: &'s [bool],
        due: &'s [Vec<Arrow>],
        deg_a: &'s [(usize, usize)],
        deg_b: &'s [(usize, usize)],
        phi: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize) -> bool {
            if i == self.n {
                return true;
            }
            for img in 0..self.n {
                if self.used[img]
                    || self.deg_a[i].0 > self.deg_b[img].0
                    || self.deg_a[i].1 > self.deg_b[img].1
                {
                    continue;
                }
                self.phi[i] = img;
                let n = self.n;
                let ok = self.due[i].iter().all(|x| {
                    self.in_b[(self.phi[x.source] * n + self.phi[x.label]) * n + self.phi[x.target]]
                });
                if !ok {
                    continue;
                }
                self.used[img] = true;
                if self.go(i + 1) {
                    return true;
                }
                self.used[img] = false;
            }
            false
        }
    }
    let mut s = Search {
        n,
        in_b: &in_b,
        due: &due,
        deg_a: &deg_a,
        deg_b: &deg_b,
        phi: vec![0; n],
        used: vec![false; n],
    };
    Ok(if s.go(0) { Some(s.phi) } else { None })
}

/// Pairs {(i,j,k), (j,i,k)}, i < j, whose addition keeps the diagram nice.
pub fn extension_candidates(d: &NiceDiagram) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..d.n {
        for j in i + 1..d.n {
            if d.target_of(i, j).is_some() {
                continue;
            }
            for k in 0..d.n {
                if k == i || k == j {
                    continue;
                }
                let mut arrows = d.arrows.clone();
                arrows.insert(Arrow::new(i, j, k));
                arrows.insert(Arrow::new(j, i, k));
                let ext = NiceDiagram { n: d.n, arrows };
                if validate_nice_diagram(&ext).passes() {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(n: usize, b: &[(usize, usize, usize)]) -> NiceDiagram {
        let b: Vec<_> = b.iter().map(|&(i, j, k)| (i - 1, j - 1, k - 1)).collect();
        NiceDiagram::from_brackets(n, &b).unwrap()
    }

    #[test]
    fn missing_mirror_is_n3_failure() {
        let d = NiceDiagram::new(3, [Arrow::new(0, 1, 2)]).unwrap();
        let r = validate_nice_diagram(&d);
        assert!(!r.passes());
        assert_eq!(
            r.failure(Condition::N3),
            Some(&Witness::Arrows(vec![Arrow::new(0, 1, 2)]))
        );
    }

    #[test]
    fn abelian_is_valid() {
        assert!(validate_nice_diagram(&NiceDiagram::empty(4)).passes());
        assert_eq!(root_matrix(&NiceDiagram::empty(4)).rows(), 0);
        let f = pq_factors(&NiceDiagram::empty(4));
        assert!(f.p_factors.is_empty() && f.q_factors.is_empty());
    }

    #[test]
    fn seven_node_example_is_nice() {
        // the diagram has no Lie algebra, but it is a valid nice diagram
        let d = diag(
            7,
            &[
                (1, 2, 3),
                (1, 3, 4),
                (1, 4, 5),
                (2, 5, 6),
                (3, 4, 6),
                (1, 6, 7),
                (3, 5, 7),
            ],
        );
        assert!(
            validate_nice_diagram(&d).passes(),
            "{}",
            validate_nice_diagram(&d)
        );
    }

    #[test]
    fn cycle_detected() {
        let d = diag(3, &[(1, 2, 3), (1, 3, 2)]);
        assert!(matches!(
            validate_nice_diagram(&d).failure(Condition::Acyclic),
            Some(Witness::Cycle(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let d = diag(4, &[(1, 2, 3), (1, 3, 4)]);
        let txt = d.to_string();
        assert!(txt.starts_with("nodes: 4\n1 -[2]-> 3\n"));
        assert_eq!(NiceDiagram::parse(&txt).unwrap(), d);
        let half = "nodes: 4\n1 -[2]-> 3\n1 -[3]-> 4\n";
        assert_eq!(NiceDiagram::parse(half).unwrap(), d);
        assert!(NiceDiagram::parse("nodes: 2\n1 -[2]-> 3\n").is_err());
    }

    #[test]
    fn leq_examples() {
        let a = diag(4, &[(1, 2, 4)]);
        let b = diag(4, &[(1, 4, 3), (1, 2, 4)]);
        assert!(diagram_leq(&a, &b).unwrap().is_some());
        assert!(diagram_leq(&b, &a).unwrap().is_none());
        assert_eq!(diagram_leq(&b, &b).unwrap(), Some(vec![0, 1, 2, 3]));
        assert!(diagram_leq(&a, &NiceDiagram::empty(5)).is_err());
    }

    #[test]
    fn extensions() {
        assert!(extension_candidates(&diag(3, &[(1, 2, 3)])).is_empty());
        let c = extension_candidates(&NiceDiagram::empty(3));
        assert!(c.contains(&(0, 1, 2)));
    }
}
