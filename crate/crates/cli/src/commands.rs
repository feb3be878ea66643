use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Result};
use serde_json::{json, Value};

use nilflat::catalog::{
    catalog, lookup, parse_assignment, parse_plane, verify_all, CatalogEntry, EntryReport,
    Source as EntrySource, Status, VerifyOptions, LONG_SEARCH_NODES,
};
use nilflat::constructions::generate;
use nilflat::curvature::{
    flatness_analysis, nonflat_criteria, ricci_tensor, riemann_tensor, sectional_component,
    CurvatureTensor, Flatness, Route, SigmaMetric,
};
use nilflat::diagram::validate_nice_diagram;
use nilflat::exactmath::{rat, LaurentPoly};
use nilflat::involution::{
    enumerate_arrow_breaking, family_parameter_count, involution_count, metric_signature,
    EnumerateOptions, Involution, Sign,
};
use nilflat::liealg::{extract_nice_structure, render_structure, series_profile, LieAlgebra};

use crate::input::Loaded;
use crate::{Cli, Command, MetricArgs};

fn emit(json: bool, value: Value, text: String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    } else {
        print!("{text}");
    }
}

fn metric(l: &Loaded, args: &MetricArgs) -> Result<(Involution, SigmaMetric)> {
    let s = l.sigma(args.sigma.as_deref())?;
    let m = match &args.numeric {
        None => SigmaMetric::symbolic(s.clone()),
        Some(text) => SigmaMetric::numeric_from_assignment(s.clone(), &parse_assignment(text)?)?,
    };
    Ok((s, m))
}

fn header(a: &LieAlgebra, s: Option<&Involution>, m: Option<&SigmaMetric>) -> String {
    let mut out = String::new();
    if let Some(name) = a.name() {
        out.push_str(&format!("algebra: {name} {}\n", render_structure(a)));
    } else {
        out.push_str(&format!("algebra: {}\n", render_structure(a)));
    }
    if let Some(s) = s {
        out.push_str(&format!("sigma: {s}\n"));
    }
    if let Some(m) = m {
        if !m.is_symbolic() {
            let vals: Vec<String> = (0..m.n())
                .map(|i| format!("g{}={}", i + 1, m.g(i)))
                .collect();
            out.push_str(&format!("metric: {}\n", vals.join(", ")));
        }
    }
    out
}

fn route(name: &str) -> Route {
    if name == "j" {
        Route::JFormula
    } else {
        Route::Koszul
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    let json = cli.json;
    match &cli.command {
        Command::Validate { source } => {
            let l = source.load()?;
            let a = &l.algebra;
            let mut text = header(a, None, None);
            let profile = series_profile(a)?;
            text.push_str(&format!(
                "lower central series dims: {:?}, step {}, center dim {}\n",
                profile.lcs_dims, profile.step, profile.center_dim
            ));
            match extract_nice_structure(a) {
                Ok(nice) => {
                    let report = validate_nice_diagram(&nice.diagram);
                    let ok = report.passes();
                    text.push_str(&format!("nice: {}\n", if ok { "yes" } else { "no" }));
                    text.push_str(&format!("{}", nice.diagram));
                    text.push_str(&format!("{report}"));
                    let v = json!({
                        "structure": render_structure(a),
                        "nice": ok,
                        "diagram": nice.diagram.to_string(),
                        "conditions": report,
                        "series": profile,
                    });
                    emit(json, v, text);
                    Ok(if ok { 0 } else { 1 })
                }
                Err(why) => {
                    text.push_str(&format!("nice: no ({why:?})\n"));
                    let v = json!({ "structure": render_structure(a), "nice": false, "reason": why, "series": profile });
                    emit(json, v, text);
                    Ok(1)
                }
            }
        }
        Command::Involutions {
            source,
            max,
            fixed,
            allow_long,
        } => {
            let l = source.load()?;
            let n = l.algebra.dim();
            if n > LONG_SEARCH_NODES && !allow_long {
                bail!("{n} nodes: searches over more than {LONG_SEARCH_NODES} nodes need --allow-long");
            }
            let d = extract_nice_structure(&l.algebra)
                .map_err(|e| anyhow!("basis is not nice: {e:?}"))?
                .diagram;
            let found = enumerate_arrow_breaking(
                &d,
                EnumerateOptions {
                    max_results: *max,
                    require_fixed_count: *fixed,
                },
            );
            let searched = involution_count(n);
            let mut text = String::new();
            if found.is_empty() {
                text.push_str(&format!("none found (searched {searched} involutions)\n"));
            } else {
                for s in &found {
                    text.push_str(&format!("{s}\n"));
                }
                text.push_str(&format!(
                    "{} found (searched {searched} involutions)\n",
                    found.len()
                ));
            }
            let v = json!({ "searched": searched.to_string(), "involutions": found });
            emit(json, v, text);
            Ok(0)
        }
        Command::Ricci {
            source,
            metric: args,
        } => {
            let l = source.load()?;
            let (s, m) = metric(&l, args)?;
            let ric = ricci_tensor(&l.algebra, &m)?;
            let text = format!("{}{ric}", header(&l.algebra, Some(&s), Some(&m)));
            let v = json!({ "sigma": s, "numeric": !m.is_symbolic(), "ricci": ric.records() });
            emit(json, v, text);
            Ok(0)
        }
        Command::Riemann {
            source,
            metric: args,
            route: r,
        } => {
            let l = source.load()?;
            let (s, m) = metric(&l, args)?;
            let t = riemann_tensor(&l.algebra, &m, route(r))?;
            let text = format!("{}{t}", header(&l.algebra, Some(&s), Some(&m)));
            let comps: Vec<_> = t.components().iter().map(|c| c.record()).collect();
            let v = json!({ "sigma": s, "numeric": !m.is_symbolic(), "components": comps });
            emit(json, v, text);
            Ok(0)
        }
        Command::Sectional {
            source,
            metric: args,
            plane,
        } => {
            let l = source.load()?;
            let (s, m) = metric(&l, args)?;
            let n = l.algebra.dim();
            let t = riemann_tensor(&l.algebra, &m, Route::Koszul)?;
            let mut text = header(&l.algebra, Some(&s), Some(&m));
            let mut rows = Vec::new();
            match plane {
                Some(p) => {
                    let (u, v) = parse_plane(p, n)?;
                    let k = sectional_component(&t, &m, &u, &v);
                    text.push_str(&format!("<R(u,v)u,v> = {k}\n"));
                    rows.push(json!({ "plane": p, "value": k.to_string() }));
                }
                None => {
                    for i in 0..n {
                        for j in i + 1..n {
                            let k = basis_sectional(&t, &m, n, i, j);
                            if !k.is_zero() {
                                text.push_str(&format!(
                                    "<R(e{a},e{b})e{a},e{b}> = {k}\n",
                                    a = i + 1,
                                    b = j + 1
                                ));
                                rows.push(json!({ "plane": format!("e{},e{}", i + 1, j + 1), "value": k.to_string() }));
                            }
                        }
                    }
                    if rows.is_empty() {
                        text.push_str("every basis sectional component is 0\n");
                    }
                }
            }
            emit(json, json!({ "sigma": s, "sectional": rows }), text);
            Ok(0)
        }
        Command::Flatness {
            source,
            metric: args,
        } => {
            let l = source.load()?;
            let (s, m) = metric(&l, args)?;
            let t = riemann_tensor(&l.algebra, &m, Route::Koszul)?;
            let mut text = header(&l.algebra, Some(&s), Some(&m));
            let verdict = flatness_analysis(&t);
            let (word, detail) = match &verdict {
                Flatness::IdenticallyFlat => ("flat".to_string(), Value::Null),
                Flatness::GenericallyNonflat { witness } => {
                    text.push_str(&format!("nonflat for every metric: {witness}\n"));
                    ("nonflat".to_string(), json!(witness.record()))
                }
                Flatness::ConditionallyFlat {
                    conditions,
                    witness,
                } => {
                    let cs: Vec<String> = conditions.iter().map(|c| format!("{c} = 0")).collect();
                    text.push_str(&format!("flat exactly where {}\n", cs.join(", ")));
                    text.push_str(&format!("generic component: {witness}\n"));
                    (
                        "conditional".to_string(),
                        json!({ "conditions": cs, "witness": witness.record() }),
                    )
                }
            };
            if verdict.is_identically_flat() {
                text.push_str("identically flat\n");
            }
            let crit = extract_nice_structure(&l.algebra)
                .ok()
                .and_then(|n| nonflat_criteria(&n.diagram, &s));
            if let Some(w) = crit {
                text.push_str(&format!(
                    "diagram criterion {:?} holds at (e{}, e{})\n",
                    w.criterion,
                    w.s + 1,
                    w.t + 1
                ));
            }
            emit(
                json,
                json!({ "sigma": s, "verdict": word, "detail": detail, "criterion": crit }),
                text,
            );
            Ok(0)
        }
        Command::Params { source, sigma } => {
            let l = source.load()?;
            let s = l.sigma(sigma.as_deref())?;
            let d = extract_nice_structure(&l.algebra)
                .map_err(|e| anyhow!("basis is not nice: {e:?}"))?
                .diagram;
            let count = family_parameter_count(&d, &s)?;
            let text = format!(
                "{}parameters: {count}\n",
                header(&l.algebra, Some(&s), None)
            );
            emit(json, json!({ "sigma": s, "parameters": count }), text);
            Ok(0)
        }
        Command::Signature {
            sigma,
            nodes,
            fixed_signs,
        } => {
            let s = Involution::parse(sigma, *nodes)?;
            let fixed = s.fixed();
            let signs: Vec<Sign> = match fixed_signs {
                None => vec![Sign::Plus; fixed.len()],
                Some(text) => text
                    .split(',')
                    .map(|t| match t.trim() {
                        "+" | "+1" => Ok(Sign::Plus),
                        "-" | "-1" => Ok(Sign::Minus),
                        other => Err(anyhow!("bad sign `{other}`")),
                    })
                    .collect::<Result<_>>()?,
            };
            if signs.len() != fixed.len() {
                bail!("{} fixed nodes but {} signs", fixed.len(), signs.len());
            }
            let map: BTreeMap<usize, Sign> = fixed.into_iter().zip(signs).collect();
            let (p, q) = metric_signature(&s, &map)?;
            emit(
                json,
                json!({ "sigma": s, "p": p, "q": q }),
                format!("signature: ({p},{q})\n"),
            );
            Ok(0)
        }
        Command::Generate { spec } => {
            let g = generate(spec)?;
            let mut text = format!("structure: {}\n", render_structure(&g.algebra));
            text.push_str(&format!("dimension: {}\n", g.algebra.dim()));
            if let Some(labels) = &g.labels {
                let shown: Vec<String> = labels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| format!("e{}={l}", i + 1))
                    .collect();
                text.push_str(&format!("basis: {}\n", shown.join(" ")));
            }
            for s in &g.sigmas {
                text.push_str(&format!("sigma: {s}\n"));
            }
            let v = json!({
                "structure": render_structure(&g.algebra),
                "dim": g.algebra.dim(),
                "labels": g.labels,
                "sigmas": g.sigmas,
            });
            emit(json, v, text);
            Ok(0)
        }
        Command::Lookup { name } => match name {
            None => {
                let names: Vec<&str> = catalog().iter().map(|e| e.name.as_str()).collect();
                emit(
                    json,
                    json!(names),
                    names.iter().map(|n| format!("{n}\n")).collect(),
                );
                Ok(0)
            }
            Some(name) => {
                let e = lookup(name)?;
                emit(json, entry_json(e), entry_text(e));
                Ok(0)
            }
        },
        Command::Verify {
            names,
            all_tables,
            all,
            allow_long,
        } => {
            let mut entries: Vec<&CatalogEntry> = if *all {
                catalog().iter().collect()
            } else if *all_tables {
                catalog().iter().filter(|e| e.in_tables()).collect()
            } else {
                Vec::new()
            };
            for n in names {
                let found = nilflat::catalog::variants(n);
                if found.is_empty() {
                    entries.push(lookup(n)?);
                } else {
                    entries.extend(found);
                }
            }
            if entries.is_empty() {
                bail!("nothing to verify: give entry names, --all-tables or --all");
            }
            entries.sort_by(|a, b| a.name.cmp(&b.name));
            entries.dedup_by(|a, b| a.name == b.name);
            let reports = verify_all(
                &entries,
                &VerifyOptions {
                    allow_long: *allow_long,
                },
            );
            let ok = reports.iter().all(EntryReport::passed);
            let count = |s: Status| reports.iter().map(|r| r.count(s)).sum::<usize>();
            let mut text: String = reports.iter().map(|r| r.to_string()).collect();
            text.push_str(&format!(
                "{} entries: {} claims passed, {} failed, {} skipped\n",
                reports.len(),
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Skipped)
            ));
            emit(json, json!({ "passed": ok, "reports": reports }), text);
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn basis_sectional(
    t: &CurvatureTensor,
    m: &SigmaMetric,
    n: usize,
    i: usize,
    j: usize,
) -> LaurentPoly {
    let one = |k: usize| {
        let mut v = vec![rat(0, 1); n];
        v[k] = rat(1, 1);
        v
    };
    sectional_component(t, m, &one(i), &one(j))
}

fn sources(e: &CatalogEntry) -> Vec<&'static str> {
    e.sources
        .iter()
        .map(|s| match s {
            EntrySource::Table2 => "table2",
            EntrySource::Table3 => "table3",
            EntrySource::Example => "example",
        })
        .collect()
}

fn entry_text(e: &CatalogEntry) -> String {
    let mut out = format!(
        "entry {}\nstructure: {}\nsource: {}\n",
        e.name,
        e.structure,
        sources(e).join(" ")
    );
    if let Some(pm) = e.pm {
        out.push_str(&format!("sign: {pm:?}\n"));
    }
    if let Some((p, vals)) = &e.param {
        let vs: Vec<String> = vals
            .iter()
            .map(nilflat::exactmath::format_rational)
            .collect();
        out.push_str(&format!("param: {p} = {}\n", vs.join(" | ")));
    }
    if !e.nice {
        out.push_str("nice: no\n");
    }
    for s in &e.sigmas {
        out.push_str(&format!("sigma: {}\n", s.sigma));
        for (line, _) in &s.claims {
            out.push_str(&format!("  {line}\n"));
        }
    }
    out
}

fn entry_json(e: &CatalogEntry) -> Value {
    let sigmas: Vec<Value> = e
        .sigmas
        .iter()
        .map(|s| json!({ "sigma": s.sigma, "claims": s.claims.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>() }))
        .collect();
    json!({
        "name": e.name,
        "structure": e.structure,
        "sources": sources(e),
        "sign": e.pm.map(|p| format!("{p:?}")),
        "param": e.param.as_ref().map(|(p, v)| json!({ "name": p, "values": v.iter().map(nilflat::exactmath::format_rational).collect::<Vec<_>>() })),
        "nice": e.nice,
        "sigmas": sigmas,
    })
}
