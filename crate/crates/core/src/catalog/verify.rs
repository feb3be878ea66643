use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{CatalogEntry, ClaimSpec, FlatExpect, Relations, SearchExpect, LONG_SEARCH_NODES};
use crate::curvature::{
    flat_under, flatness_analysis, nonflat_criteria_at, ricci_tensor, riemann_tensor,
    sectional_component, CurvatureTensor, Flatness, Route, SigmaMetric, SymTensor2,
};
use crate::diagram::NiceDiagram;
use crate::exactmath::{format_rational, rat, LaurentPoly, Rational};
use crate::involution::{
    enumerate_arrow_breaking, family_parameter_count, is_arrow_breaking, EnumerateOptions,
    Involution,
};
use crate::liealg::{check_jacobi, extract_nice_structure, LieAlgebra};

#[derive(Clone, Copy, Default, Debug)]
pub struct VerifyOptions {
    /// Run arrow-breaking searches on more than `LONG_SEARCH_NODES` nodes.
    pub allow_long: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Claim {
    /// Parameter value, e.g. "λ=2"; empty for entries without parameters.
    pub variant: String,
    /// Empty for claims about the algebra itself.
    pub sigma: String,
    pub what: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub claims: Vec<Claim>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.claims.iter().filter(|c| c.status == s).count()
    }
}

impl fmt::Display for EntryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for c in &self.claims {
            let mark = match c.status {
                Status::Pass => "ok  ",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            let mut ctx = String::new();
            if !c.variant.is_empty() {
                ctx.push_str(&format!("[{}] ", c.variant));
            }
            if !c.sigma.is_empty() {
                ctx.push_str(&format!("{} ", c.sigma));
            }
            write!(f, "  {mark} {ctx}{}", c.what)?;
            if c.status == Status::Fail {
                write!(f, " (expected {}, computed {})", c.expected, c.computed)?;
            } else if c.status == Status::Skipped {
                write!(f, " ({})", c.computed)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Ctx<'a> {
    variant: &'a str,
    sigma: String,
    out: &'a mut Vec<Claim>,
}

impl Ctx<'_> {
    fn push(
        &mut self,
        what: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        pass: bool,
    ) {
        self.out.push(Claim {
            variant: self.variant.to_string(),
            sigma: self.sigma.clone(),
            what: what.into(),
            expected: expected.into(),
            computed: computed.into(),
            status: if pass { Status::Pass } else { Status::Fail },
        });
    }

    fn skip(&mut self, what: impl Into<String>, why: impl Into<String>) {
        self.out.push(Claim {
            variant: self.variant.to_string(),
            sigma: self.sigma.clone(),
            what: what.into(),
            expected: String::new(),
            computed: why.into(),
            status: Status::Skipped,
        });
    }
}

pub fn verify_entry(e: &CatalogEntry) -> EntryReport {
    verify_entry_with(e, &VerifyOptions::default())
}

/// Recomputes every claim of the entry, at each parameter value.
pub fn verify_entry_with(e: &CatalogEntry, opts: &VerifyOptions) -> EntryReport {
    let mut claims = Vec::new();
    match e.algebras() {
        Err(err) => claims.push(Claim {
            variant: String::new(),
            sigma: String::new(),
            what: "structure".into(),
            expected: "parses".into(),
            computed: err.to_string(),
            status: Status::Fail,
        }),
        Ok(algebras) => {
            for (label, a) in &algebras {
                verify_algebra(e, label, a, opts, &mut claims);
            }
        }
    }
    EntryReport {
        name: e.name.clone(),
        claims,
    }
}

/// Reports ordered by entry name, computed in parallel.
pub fn verify_all(entries: &[&CatalogEntry], opts: &VerifyOptions) -> Vec<EntryReport> {
    let mut out: Vec<EntryReport> = entries
        .par_iter()
        .map(|e| verify_entry_with(e, opts))
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

fn list(sigmas: &[Involution]) -> String {
    if sigmas.is_empty() {
        return "none".into();
    }
    sigmas
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn verify_algebra(
    e: &CatalogEntry,
    label: &str,
    a: &LieAlgebra,
    opts: &VerifyOptions,
    out: &mut Vec<Claim>,
) {
    let mut cx = Ctx {
        variant: label,
        sigma: String::new(),
        out,
    };
    let jacobi = check_jacobi(a);
    cx.push(
        "Jacobi identity",
        "holds",
        jacobi
            .as_ref()
            .map_or("holds".to_string(), |w| format!("fails: {w:?}")),
        jacobi.is_none(),
    );
    if jacobi.is_some() {
        return;
    }
    let diagram: Option<NiceDiagram> = extract_nice_structure(a).ok().map(|s| s.diagram);
    cx.push(
        "nice basis",
        if e.nice { "yes" } else { "no" },
        if diagram.is_some() { "yes" } else { "no" },
        diagram.is_some() == e.nice,
    );

    let search = e.search.clone().or(if e.nice {
        Some(SearchExpect::Some)
    } else {
        None
    });
    if let (Some(expect), Some(d)) = (search, &diagram) {
        let what = "arrow-breaking search";
        if a.dim() > LONG_SEARCH_NODES && !opts.allow_long {
            cx.skip(
                what,
                format!("more than {LONG_SEARCH_NODES} nodes; needs allow_long"),
            );
        } else {
            let found = enumerate_arrow_breaking(d, EnumerateOptions::default());
            let (expected, pass) = match &expect {
                SearchExpect::Some => ("at least one".to_string(), !found.is_empty()),
                SearchExpect::None => ("none".to_string(), found.is_empty()),
                SearchExpect::Exactly(list_) => {
                    let mut want = list_.clone();
                    want.sort_by_key(|s| s.order_key());
                    let mut got = found.clone();
                    got.sort_by_key(|s| s.order_key());
                    (list(list_), want == got)
                }
            };
            let computed = if found.len() > 8 {
                format!("{} involutions", found.len())
            } else {
                list(&found)
            };
            cx.push(what, expected, computed, pass);
        }
    }

    for sc in &e.sigmas {
        cx.sigma = sc.sigma.to_string();
        let s = &sc.sigma;
        let m = SigmaMetric::symbolic(s.clone());
        let ricci: OnceCell<Result<SymTensor2, String>> = OnceCell::new();
        let riemann: OnceCell<Result<CurvatureTensor, String>> = OnceCell::new();
        let get_ricci = || ricci.get_or_init(|| ricci_tensor(a, &m).map_err(|e| e.to_string()));
        let get_riemann = || {
            riemann.get_or_init(|| riemann_tensor(a, &m, Route::Koszul).map_err(|e| e.to_string()))
        };

        for (what, claim) in &sc.claims {
            let what = what.as_str();
            match claim {
                ClaimSpec::ArrowBreaking(want) => match &diagram {
                    Some(d) => match is_arrow_breaking(d, s) {
                        Ok(got) => cx.push(what, yes_no(*want), yes_no(got), got == *want),
                        Err(err) => cx.push(what, yes_no(*want), err.to_string(), false),
                    },
                    None => cx.push(what, yes_no(*want), "no nice diagram", false),
                },
                ClaimSpec::RicciZero => match get_ricci() {
                    Ok(r) => cx.push(what, "0", first_entry(r), r.is_zero()),
                    Err(err) => cx.push(what, "0", err, false),
                },
                ClaimSpec::RicciUnder(alts) => match get_ricci() {
                    Ok(r) => {
                        let residues: Vec<String> =
                            alts.iter().map(|rels| ricci_residue(r, rels)).collect();
                        let pass = residues.iter().all(|x| x == "0");
                        cx.push(what, "0", residues.join(" | "), pass);
                    }
                    Err(err) => cx.push(what, "0", err, false),
                },
                ClaimSpec::RicciAtOnes => {
                    let ones = vec![rat(1, 1); s.n()];
                    match SigmaMetric::numeric(s.clone(), ones).and_then(|mn| ricci_tensor(a, &mn))
                    {
                        Ok(r) => cx.push(what, "0", first_entry(&r), r.is_zero()),
                        Err(err) => cx.push(what, "0", err.to_string(), false),
                    }
                }
                ClaimSpec::RicciCounterexample => {
                    let found = ricci_counterexample(a, s);
                    let pass = found.is_some();
                    cx.push(
                        what,
                        "a point with nonzero Ricci",
                        found.unwrap_or_else(|| "none found".into()),
                        pass,
                    );
                }
                ClaimSpec::Flat(expect) => match get_riemann() {
                    Ok(r) => {
                        let f = flatness_analysis(r);
                        let (expected, computed, mut pass) = compare_flatness(expect, &f);
                        if let FlatExpect::Locus(rels) = expect {
                            pass = pass && flat_under(r, rels).unwrap_or(false);
                        }
                        cx.push(what, expected, computed, pass);
                    }
                    Err(err) => cx.push(what, "", err, false),
                },
                ClaimSpec::NonflatUnder(alts) => match get_riemann() {
                    Ok(r) => {
                        let flats: Vec<bool> = alts
                            .iter()
                            .map(|rels| flat_under(r, rels).unwrap_or(true))
                            .collect();
                        let pass = flats.iter().all(|f| !f);
                        let computed = flats
                            .iter()
                            .map(|&f| if f { "flat" } else { "nonflat" })
                            .collect::<Vec<_>>()
                            .join(" | ");
                        cx.push(what, "nonflat", computed, pass);
                    }
                    Err(err) => cx.push(what, "nonflat", err, false),
                },
                ClaimSpec::NonflatAt(point) => {
                    let assignment: BTreeMap<usize, Rational> = point.iter().cloned().collect();
                    let res = SigmaMetric::numeric_from_assignment(s.clone(), &assignment)
                        .and_then(|mn| {
                            Ok((
                                ricci_tensor(a, &mn)?,
                                riemann_tensor(a, &mn, Route::Koszul)?,
                            ))
                        });
                    match res {
                        Ok((ric, r)) => {
                            let computed = format!(
                                "Ricci {}, curvature {}",
                                zero_word(ric.is_zero()),
                                zero_word(r.is_zero())
                            );
                            cx.push(
                                what,
                                "Ricci zero, curvature nonzero",
                                computed,
                                ric.is_zero() && !r.is_zero(),
                            );
                        }
                        Err(err) => cx.push(what, "nonflat", err.to_string(), false),
                    }
                }
                ClaimSpec::Plane(u, v) => match get_riemann() {
                    Ok(r) => {
                        let k = sectional_component(r, &m, u, v);
                        cx.push(what, "nonzero", k.to_string(), !k.is_zero());
                    }
                    Err(err) => cx.push(what, "nonzero", err, false),
                },
                ClaimSpec::Sectional(u, v, want) => match get_riemann() {
                    Ok(r) => {
                        let k = sectional_component(r, &m, u, v);
                        cx.push(what, want.to_string(), k.to_string(), &k == want);
                    }
                    Err(err) => cx.push(what, want.to_string(), err, false),
                },
                ClaimSpec::Params(want) => match &diagram {
                    Some(d) => match family_parameter_count(d, s) {
                        Ok(got) => cx.push(what, want.to_string(), got.to_string(), got == *want),
                        Err(err) => cx.push(what, want.to_string(), err.to_string(), false),
                    },
                    None => cx.push(what, want.to_string(), "no nice diagram", false),
                },
                ClaimSpec::Witness(crit, i, j) => match &diagram {
                    Some(d) => {
                        let got = nonflat_criteria_at(d, s, *i, *j);
                        let computed =
                            got.map_or("neither criterion".to_string(), |c| format!("{c:?}"));
                        cx.push(what, format!("{crit:?}"), computed, got == Some(*crit));
                    }
                    None => cx.push(what, format!("{crit:?}"), "no nice diagram", false),
                },
            }
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn zero_word(z: bool) -> &'static str {
    if z {
        "zero"
    } else {
        "nonzero"
    }
}

fn first_entry(r: &SymTensor2) -> String {
    match r.entries().find(|(_, v)| !v.is_zero()) {
        None => "0".into(),
        Some(((i, j), v)) => format!("ric(e{}, e{}) = {v}", i + 1, j + 1),
    }
}

fn ricci_residue(r: &SymTensor2, rels: &Relations) -> String {
    for ((i, j), v) in r.entries() {
        let mut p = v.numerator();
        for (var, value) in rels {
            match p.substitute(*var, value) {
                Ok(q) => p = q.numerator(),
                Err(err) => return err.to_string(),
            }
        }
        if !p.is_zero() {
            return format!("ric(e{}, e{}) leaves {p}", i + 1, j + 1);
        }
    }
    "0".into()
}

fn compare_flatness(expect: &FlatExpect, f: &Flatness) -> (String, String, bool) {
    let computed = match f {
        Flatness::IdenticallyFlat => "identically flat".to_string(),
        Flatness::GenericallyNonflat { .. } => "nonflat".to_string(),
        Flatness::ConditionallyFlat { conditions, .. } => format!("flat iff {}", polys(conditions)),
    };
    let (expected, pass) = match (expect, f) {
        (FlatExpect::Identically, Flatness::IdenticallyFlat) => {
            ("identically flat".to_string(), true)
        }
        (FlatExpect::Identically, _) => ("identically flat".to_string(), false),
        (FlatExpect::Nonflat, g) => (
            "nonflat".to_string(),
            matches!(g, Flatness::GenericallyNonflat { .. }),
        ),
        (FlatExpect::Locus(rels), g) => {
            let shown: Vec<String> = rels
                .iter()
                .map(|(v, p)| format!("g{} = {p}", v + 1))
                .collect();
            (
                format!("flat on {}", shown.join(", ")),
                matches!(g, Flatness::ConditionallyFlat { .. }),
            )
        }
        (FlatExpect::Conditional(want), g) => {
            let pass = match g {
                Flatness::ConditionallyFlat { conditions, .. } => {
                    let mut a: Vec<String> = conditions.iter().map(|p| p.to_string()).collect();
                    let mut b: Vec<String> = want.iter().map(|p| p.to_string()).collect();
                    a.sort();
                    b.sort();
                    a == b
                }
                _ => false,
            };
            (format!("flat iff {}", polys(want)), pass)
        }
    };
    (expected, computed, pass)
}

fn polys(ps: &[LaurentPoly]) -> String {
    ps.iter()
        .map(|p| format!("{p} = 0"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Seeded random search for a σ-diagonal metric with nonzero Ricci tensor.
fn ricci_counterexample(a: &LieAlgebra, s: &Involution) -> Option<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let n = s.n();
    for _ in 0..64 {
        let mut point = vec![rat(1, 1); n];
        for (i, slot) in point.iter_mut().enumerate() {
            if s.apply(i) >= i {
                let mag = rng.gen_range(1..=3);
                *slot = rat(if rng.gen_bool(0.5) { mag } else { -mag }, 1);
            }
        }
        let m = SigmaMetric::numeric_at_point(s.clone(), &point).ok()?;
        let r = ricci_tensor(a, &m).ok()?;
        if !r.is_zero() {
            let shown: Vec<String> = (0..n)
                .filter(|&i| s.apply(i) >= i)
                .map(|i| format!("g{}={}", i + 1, format_rational(&point[i])))
                .collect();
            return Some(format!("nonzero at {}", shown.join(", ")));
        }
    }
    None
}
