//! Named algebras with involutions and the verdicts expected of them, read
//! from `data/catalog.txt`.

mod syntax;
mod verify;

use std::sync::OnceLock;

use serde::Serialize;

pub use syntax::{parse_assignment, parse_plane, parse_relations, parse_vector};
pub use verify::{
    verify_all, verify_entry, verify_entry_with, Claim, EntryReport, Status, VerifyOptions,
};

use crate::curvature::Criterion;
use crate::error::{Error, Result};
use crate::exactmath::{parse_rational, LaurentPoly, Rational};
use crate::involution::Involution;
use crate::liealg::{
    has_pm, normalize_param_name, parse_structure_unchecked, LieAlgebra, Params, PmChoice,
};

const DATA: &str = include_str!("../../data/catalog.txt");

/// Searches over more nodes than this need an explicit opt-in.
pub const LONG_SEARCH_NODES: usize = 11;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Source {
    Table2,
    Table3,
    Example,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchExpect {
    Some,
    None,
    Exactly(Vec<Involution>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FlatExpect {
    Identically,
    Nonflat,
    Conditional(Vec<LaurentPoly>),
    /// Conditionally flat, and flat under these relations.
    Locus(Relations),
}

/// Substitutions g{v+1} = value, applied in order.
pub type Relations = Vec<(usize, LaurentPoly)>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClaimSpec {
    ArrowBreaking(bool),
    RicciZero,
    /// Ricci vanishes under each alternative.
    RicciUnder(Vec<Relations>),
    RicciAtOnes,
    RicciCounterexample,
    Flat(FlatExpect),
    NonflatUnder(Vec<Relations>),
    /// Point given by index, completed along σ.
    NonflatAt(Vec<(usize, Rational)>),
    Plane(Vec<Rational>, Vec<Rational>),
    Sectional(Vec<Rational>, Vec<Rational>, LaurentPoly),
    Params(i64),
    Witness(Criterion, usize, usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SigmaClaims {
    pub sigma: Involution,
    /// Each claim with the catalog line it came from.
    pub claims: Vec<(String, ClaimSpec)>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatalogEntry {
    /// Variant name, with the a/b suffix for ± entries.
    pub name: String,
    pub structure: String,
    pub pm: Option<PmChoice>,
    /// Parameter name and the values at which the family is checked.
    pub param: Option<(String, Vec<Rational>)>,
    pub sources: Vec<Source>,
    pub nice: bool,
    pub search: Option<SearchExpect>,
    pub sigmas: Vec<SigmaClaims>,
}

impl CatalogEntry {
    pub fn dim(&self) -> usize {
        self.sigmas.first().map(|s| s.sigma.n()).unwrap_or_else(|| {
            self.algebras()
                .ok()
                .and_then(|v| v.first().map(|(_, a)| a.dim()))
                .unwrap_or(0)
        })
    }

    pub fn in_tables(&self) -> bool {
        self.sources
            .iter()
            .any(|s| matches!(s, Source::Table2 | Source::Table3))
    }

    /// One algebra per parameter value, labelled "λ=2"; a single unlabelled
    /// algebra otherwise.
    pub fn algebras(&self) -> Result<Vec<(String, LieAlgebra)>> {
        let build = |params: &Params| {
            parse_structure_unchecked(&self.structure, params, self.pm)
                .map(|a| a.with_name(self.name.clone()))
        };
        match &self.param {
            None => Ok(vec![(String::new(), build(&Params::new())?)]),
            Some((p, values)) => values
                .iter()
                .map(|v| {
                    let params = Params::from([(p.clone(), v.clone())]);
                    Ok((
                        format!("{p}={}", crate::exactmath::format_rational(v)),
                        build(&params)?,
                    ))
                })
                .collect(),
        }
    }

    /// The algebra at the first parameter value.
    pub fn algebra(&self) -> Result<LieAlgebra> {
        Ok(self.algebras()?.remove(0).1)
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::parse(line, msg)
}

fn parse_flag(line: usize, v: &str) -> Result<bool> {
    match v {
        "yes" => Ok(true),
        "no" => Ok(false),
        _ => Err(err(line, format!("expected yes or no, found `{v}`"))),
    }
}

fn parse_alternatives(line: usize, v: &str) -> Result<Vec<Relations>> {
    v.split('|')
        .map(|alt| parse_relations(alt).map_err(|e| err(line, e.to_string())))
        .collect()
}

fn parse_claim(line: usize, key: &str, value: &str, n: usize) -> Result<ClaimSpec> {
    let wrap = |e: Error| err(line, e.to_string());
    Ok(match key {
        "arrow_breaking" => ClaimSpec::ArrowBreaking(parse_flag(line, value)?),
        "ricci" => match value {
            "zero" => ClaimSpec::RicciZero,
            "at 1" => ClaimSpec::RicciAtOnes,
            "counterexample" => ClaimSpec::RicciCounterexample,
            v => match v.strip_prefix("under ") {
                Some(rels) => ClaimSpec::RicciUnder(parse_alternatives(line, rels)?),
                None => return Err(err(line, format!("unknown ricci claim `{v}`"))),
            },
        },
        "flat" => ClaimSpec::Flat(match value {
            "identically" => FlatExpect::Identically,
            "nonflat" => FlatExpect::Nonflat,
            v if v.starts_with("locus ") => {
                FlatExpect::Locus(parse_relations(&v[6..]).map_err(wrap)?)
            }
            v => match v.strip_prefix("conditional ") {
                Some(ps) => FlatExpect::Conditional(
                    ps.split(';')
                        .map(|p| {
                            LaurentPoly::parse(p.trim())
                                .map(|p| p.numerator())
                                .map_err(wrap)
                        })
                        .collect::<Result<_>>()?,
                ),
                None => return Err(err(line, format!("unknown flat claim `{v}`"))),
            },
        }),
        "nonflat" => match value.strip_prefix("under ") {
            Some(rels) => ClaimSpec::NonflatUnder(parse_alternatives(line, rels)?),
            None => return Err(err(line, "expected `nonflat: under ...`")),
        },
        "nonflat_at" => {
            ClaimSpec::NonflatAt(parse_assignment(value).map_err(wrap)?.into_iter().collect())
        }
        "plane" => {
            let (u, v) = parse_plane(value, n).map_err(wrap)?;
            ClaimSpec::Plane(u, v)
        }
        "sectional" => {
            let (plane, expr) = value
                .split_once('=')
                .ok_or_else(|| err(line, "expected `u, v = value`"))?;
            let (u, v) = parse_plane(plane, n).map_err(wrap)?;
            ClaimSpec::Sectional(u, v, LaurentPoly::parse(expr.trim()).map_err(wrap)?)
        }
        "params" => ClaimSpec::Params(
            value
                .parse()
                .map_err(|_| err(line, "expected an integer"))?,
        ),
        "witness" => {
            let parts: Vec<&str> = value.split_whitespace().collect();
            let crit = match parts.first() {
                Some(&"C1") => Criterion::C1,
                Some(&"C2") => Criterion::C2,
                _ => return Err(err(line, "expected C1 or C2")),
            };
            let idx = |k: usize| -> Result<usize> {
                parts
                    .get(k)
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&i| i >= 1 && i <= n)
                    .map(|i| i - 1)
                    .ok_or_else(|| err(line, "expected two node indices"))
            };
            ClaimSpec::Witness(crit, idx(1)?, idx(2)?)
        }
        other => return Err(err(line, format!("unknown key `{other}`"))),
    })
}

struct Raw {
    name: String,
    structure: Option<String>,
    param: Option<(String, Vec<Rational>)>,
    sources: Vec<Source>,
    nice: bool,
    search: Option<String>,
    search_line: usize,
    sigmas: Vec<RawSigma>,
}

/// Line number, cycle text, and (line, key, value) claims.
type RawSigma = (usize, String, Vec<(usize, String, String)>);

fn finish(raw: Raw) -> Result<Vec<CatalogEntry>> {
    let structure = raw
        .structure
        .ok_or_else(|| err(0, format!("entry {} has no structure", raw.name)))?;
    let variants: Vec<(String, Option<PmChoice>)> = if has_pm(&structure) {
        let (head, tail) = match raw.name.split_once('/') {
            Some((h, t)) => (h.to_string(), format!("/{t}")),
            None => (raw.name.clone(), String::new()),
        };
        vec![
            (format!("{head}a{tail}"), Some(PmChoice::Plus)),
            (format!("{head}b{tail}"), Some(PmChoice::Minus)),
        ]
    } else {
        vec![(raw.name.clone(), None)]
    };
    let params = match &raw.param {
        Some((p, v)) => Params::from([(p.clone(), v[0].clone())]),
        None => Params::new(),
    };
    let n = parse_structure_unchecked(&structure, &params, variants[0].1)
        .map_err(|e| err(0, format!("entry {}: {e}", raw.name)))?
        .dim();
    let mut sigmas = Vec::new();
    for (line, text, claims) in &raw.sigmas {
        let sigma = Involution::parse(text, n).map_err(|e| err(*line, e.to_string()))?;
        let claims = claims
            .iter()
            .map(|(l, k, v)| Ok((format!("{k}: {v}"), parse_claim(*l, k, v, n)?)))
            .collect::<Result<_>>()?;
        sigmas.push(SigmaClaims { sigma, claims });
    }
    let search = match raw.search.as_deref() {
        None => None,
        Some("some") => Some(SearchExpect::Some),
        Some("none") => Some(SearchExpect::None),
        Some(s) => match s.strip_prefix("exactly ") {
            Some(list) => Some(SearchExpect::Exactly(
                list.split(',')
                    .map(|t| {
                        Involution::parse(t.trim(), n)
                            .map_err(|e| err(raw.search_line, e.to_string()))
                    })
                    .collect::<Result<_>>()?,
            )),
            None => {
                return Err(err(
                    raw.search_line,
                    format!("unknown search expectation `{s}`"),
                ))
            }
        },
    };
    Ok(variants
        .into_iter()
        .map(|(name, pm)| CatalogEntry {
            name,
            structure: structure.clone(),
            pm,
            param: raw.param.clone(),
            sources: raw.sources.clone(),
            nice: raw.nice,
            search: search.clone(),
            sigmas: sigmas.clone(),
        })
        .collect())
}

/// Parses text in the catalog format. Errors carry the 1-based line number.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    let mut cur: Option<Raw> = None;
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let body = full.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        if let Some(name) = body.strip_prefix("entry ") {
            if let Some(raw) = cur.take() {
                out.extend(finish(raw)?);
            }
            cur = Some(Raw {
                name: name.trim().to_string(),
                structure: None,
                param: None,
                sources: Vec::new(),
                nice: true,
                search: None,
                search_line: 0,
                sigmas: Vec::new(),
            });
            continue;
        }
        let raw = cur
            .as_mut()
            .ok_or_else(|| err(line, "expected `entry NAME`"))?;
        let (key, value) = body
            .split_once(':')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(line, "expected `key: value`"))?;
        match key {
            "structure" => raw.structure = Some(value.to_string()),
            "source" => {
                for s in value.split_whitespace() {
                    raw.sources.push(match s {
                        "table2" => Source::Table2,
                        "table3" => Source::Table3,
                        "example" => Source::Example,
                        _ => return Err(err(line, format!("unknown source `{s}`"))),
                    });
                }
            }
            "param" => {
                let (p, vals) = value
                    .split_once('=')
                    .ok_or_else(|| err(line, "expected `param: X = a | b`"))?;
                let vals = vals
                    .split('|')
                    .map(|v| {
                        parse_rational(v.trim())
                            .ok_or_else(|| err(line, format!("bad value `{}`", v.trim())))
                    })
                    .collect::<Result<Vec<_>>>()?;
                raw.param = Some((normalize_param_name(p.trim()), vals));
            }
            "nice" => raw.nice = parse_flag(line, value)?,
            "search" => {
                raw.search = Some(value.to_string());
                raw.search_line = line;
            }
            "sigma" => raw.sigmas.push((line, value.to_string(), Vec::new())),
            _ => match raw.sigmas.last_mut() {
                Some((_, _, claims)) => claims.push((line, key.to_string(), value.to_string())),
                None => return Err(err(line, format!("`{key}` must follow a `sigma:` line"))),
            },
        }
    }
    if let Some(raw) = cur.take() {
        out.extend(finish(raw)?);
    }
    Ok(out)
}

/// The built-in catalog, in file order.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(DATA).expect("built-in catalog parses"))
}

/// Looks up a variant name ("6431:2a") or a base name, which resolves to the
/// first variant.
pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    let name = name.trim();
    catalog()
        .iter()
        .find(|e| e.name == name)
        .or_else(|| variants(name).into_iter().next())
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

/// Every variant whose name, with its a/b suffix removed, equals `name`.
pub fn variants(name: &str) -> Vec<&'static CatalogEntry> {
    catalog()
        .iter()
        .filter(|e| {
            e.name == name || {
                e.pm.is_some() && {
                    let (head, tail) = e
                        .name
                        .split_once('/')
                        .map_or((e.name.as_str(), ""), |(h, t)| (h, t));
                    let base = &head[..head.len() - 1];
                    if tail.is_empty() {
                        base == name
                    } else {
                        format!("{base}/{tail}") == name
                    }
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let all = catalog();
        assert!(all.len() > 40);
        let mut names: Vec<&str> = all.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), all.len());
        for e in all {
            for (_, a) in e.algebras().unwrap() {
                assert_eq!(a.dim(), e.dim(), "{}", e.name);
            }
        }
    }

    #[test]
    fn lookups() {
        let e = lookup("52:1").unwrap();
        assert_eq!(e.structure, "(0,0,0,e^{12},e^{13})");
        assert_eq!(e.sigmas[0].sigma.to_string(), "(2 5)(3 4)");
        assert_eq!(lookup("6431:2").unwrap().name, "6431:2a");
        assert_eq!(lookup("6431:2b/T3").unwrap().pm, Some(PmChoice::Minus));
        assert_eq!(lookup("6431:2/T3").unwrap().name, "6431:2a/T3");
        assert_eq!(variants("7431:13").len(), 2);
        assert_eq!(variants("6431:2/T3").len(), 2);
        assert!(matches!(lookup("99:9"), Err(Error::UnknownEntry(_))));
        assert_eq!(lookup("64321:5").unwrap().sigmas.len(), 4);
        assert!(!lookup("N6,1,4").unwrap().nice);
    }

    #[test]
    fn bad_input() {
        assert!(parse_catalog("structure: (0)").is_err());
        assert!(parse_catalog("entry x\nstructure: (0,0,e^{12})\nplane: e1, e2").is_err());
        assert!(parse_catalog("entry x\nstructure: (0,0,e^{12})\nsigma: (1 4)").is_err());
        let e = parse_catalog("entry x\nstructure: (0,0,e^{12})\nsigma: (1 3)\n  bogus: 1");
        assert!(e.is_err());
    }
}
