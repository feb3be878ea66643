//! One line per acceptance criterion. Arithmetic is exact, so the only pinned
//! tolerances are the wall-clock budgets below.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use nilflat::catalog::{
    catalog, lookup, verify_all, verify_entry_with, CatalogEntry, Source, VerifyOptions,
};
use nilflat::constructions::{
    arrow_breaking_roots, connected_graphs, filiform, graph_algebra, heisenberg,
    random_connected_graph, sigma_parabolic, RootType,
};
use nilflat::curvature::*;
use nilflat::diagram::{validate_nice_diagram, NiceDiagram};
use nilflat::exactmath::{rat, LaurentPoly, Rational};
use nilflat::involution::{
    enumerate_arrow_breaking, family_parameter_count, involution_count, is_arrow_breaking,
    metric_signature, EnumerateOptions, Involution, Sign,
};
use nilflat::liealg::{extract_nice_structure, parse_structure, LieAlgebra, Params};

const SECOND: Duration = Duration::from_secs(1);

type Outcome = Result<(), Vec<String>>;

type Row = (&'static str, Duration, fn() -> Outcome);

#[derive(Default)]
struct Checks(Vec<String>);

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Display>(&mut self, what: &str, got: T, want: T) {
        self.check(got == want, || {
            format!("{what}: got {got}, expected {want}")
        });
    }

    fn done(self) -> Outcome {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(self.0)
        }
    }
}

fn alg(text: &str) -> LieAlgebra {
    parse_structure(text, &Params::new()).expect("valid structure")
}

fn sigma(text: &str, n: usize) -> Involution {
    Involution::parse(text, n).expect("valid involution")
}

fn lp(text: &str) -> LaurentPoly {
    LaurentPoly::parse(text).expect("valid polynomial")
}

fn diagram(a: &LieAlgebra) -> NiceDiagram {
    extract_nice_structure(a).expect("nice").diagram
}

fn riemann(a: &LieAlgebra, m: &SigmaMetric) -> CurvatureTensor {
    riemann_tensor(a, m, Route::Koszul).expect("curvature")
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![rat(0, 1); n];
    v[i] = rat(1, 1);
    v
}

fn c1_riemann() -> Outcome {
    let mut c = Checks::default();
    let a = alg("(0,0,e^{12},e^{13},e^{14}+e^{23},e^{15}+e^{24})");
    let m = SigmaMetric::symbolic(sigma("(3 4)(2 5)(1 6)", 6));
    let r = riemann(&a, &m);
    let expected = [
        ((0, 1, 0, 3), "(g1-g3)/g3"),
        ((0, 2, 0, 4), "(g1-g3)/g2"),
        ((0, 1, 2, 5), "-(g1-g3)/g1"),
        ((0, 2, 1, 5), "-(g1-g3)/g1"),
    ];
    let got: Vec<((usize, usize, usize, usize), LaurentPoly)> = r
        .components()
        .into_iter()
        .map(|x| ((x.s, x.t, x.u, x.k), x.value))
        .collect();
    let mut want: Vec<((usize, usize, usize, usize), LaurentPoly)> =
        expected.iter().map(|&(k, p)| (k, lp(p))).collect();
    want.sort_by_key(|w| w.0);
    c.check(got == want, || {
        let list: Vec<String> = r.components().iter().map(|x| x.to_string()).collect();
        format!("tensor differs: {}", list.join("; "))
    });
    match flatness_analysis(&r) {
        Flatness::ConditionallyFlat { conditions, .. } => c
            .check(conditions == vec![lp("g1 - g3")], || {
                format!("flat locus {conditions:?}")
            }),
        other => c.0.push(format!("flatness verdict {other:?}")),
    }
    c.done()
}

fn c2_ricci() -> Outcome {
    let mut c = Checks::default();
    let a = alg("(0,0,-e^{12},e^{13},e^{14}+e^{23},e^{25}+e^{34})");
    let s = sigma("(1 3)(4 5)", 6);
    let ric = ricci_tensor(&a, &SigmaMetric::symbolic(s.clone())).expect("ricci");
    let want = [
        ((0, 3), "(g1+g2)*g4/(2*g1*g2)"),
        ((1, 2), "g4/(2*g1) - g6/(2*g4)"),
        ((4, 4), "-(g4^2/(2*g1^2) + g6/(2*g2))"),
    ];
    let got: Vec<(usize, usize)> = ric.entries().map(|(k, _)| *k).collect();
    c.check(got == want.iter().map(|w| w.0).collect::<Vec<_>>(), || {
        format!("nonzero entries {got:?}")
    });
    for ((i, j), p) in want {
        c.eq(&format!("ric(e{},e{})", i + 1, j + 1), ric.get(i, j), lp(p));
    }
    for (_, p) in ric.entries() {
        let q = p
            .numerator()
            .substitute(1, &lp("-g1"))
            .and_then(|q| q.numerator().substitute(5, &lp("g4^2/g1")))
            .expect("substitution");
        c.check(q.is_zero(), || {
            format!("{p} does not vanish under g2=-g1, g6=g4^2/g1")
        });
    }
    let d = diagram(&a);
    c.eq(
        "criterion at (e2,e5)",
        format!("{:?}", nonflat_criteria_at(&d, &s, 1, 4)),
        "Some(C1)".to_string(),
    );
    c.done()
}

fn c3_counts() -> Outcome {
    let mut c = Checks::default();
    for (text, s, want) in [
        ("(0,0,0,e^{12},e^{13})", "(3 4)(2 5)", 1),
        (
            "(0,0,e^{12},e^{13},e^{14}+e^{23},e^{15}+e^{24})",
            "(3 4)(2 5)(1 6)",
            2,
        ),
        ("(0,0,0,0,0,e^{12})", "(1 6)", 0),
    ] {
        let a = alg(text);
        let got = family_parameter_count(&diagram(&a), &sigma(s, a.dim())).expect("count");
        c.eq(&format!("{text} {s}"), got, want);
    }
    c.done()
}

fn c4_enumeration() -> Outcome {
    let mut c = Checks::default();
    for (text, want) in [
        (
            "(0,0,-e^{12},e^{13},e^{14},e^{25}+e^{34})",
            vec!["(1 6)(3 5)", "(1 6)(2 4)"],
        ),
        ("(0,0,e^{12},e^{13})", vec!["(1 4)(2 3)"]),
        ("(0,0,-e^{12},e^{13},e^{14}+e^{23},e^{25}+e^{34})", vec![]),
    ] {
        let t = Instant::now();
        let mut got: Vec<String> =
            enumerate_arrow_breaking(&diagram(&alg(text)), EnumerateOptions::default())
                .iter()
                .map(|s| s.to_string())
                .collect();
        let elapsed = t.elapsed();
        got.sort();
        let mut want: Vec<String> = want.into_iter().map(String::from).collect();
        want.sort();
        c.check(got == want, || {
            format!("{text}: {got:?}, expected {want:?}")
        });
        c.check(elapsed < SECOND, || format!("{text}: {elapsed:?}"));
    }
    c.eq("involutions searched on six nodes", involution_count(6), 76);
    c.done()
}

fn c5_sectional() -> Outcome {
    let mut c = Checks::default();
    let a = alg("(0,0,-e^{12},e^{13},e^{14},e^{25}+e^{34})");
    for (s, want) in [
        ("(1 6)(3 5)", "(g1+g3)^2/(4*g2)"),
        ("(1 6)(2 4)", "g1*g5/(2*g2)"),
    ] {
        let m = SigmaMetric::symbolic(sigma(s, 6));
        let k = sectional_component(&riemann(&a, &m), &m, &unit(6, 0), &unit(6, 4));
        c.eq(&format!("G2 {s} <R(e1,e5)e1,e5>"), k, lp(want));
    }
    for n in 5..=8 {
        let (a, s) = filiform(n).expect("filiform");
        let m = SigmaMetric::symbolic(s);
        let r = riemann(&a, &m);
        let mut want = vec![LaurentPoly::zero(); n];
        want[n - 1] = laurent(m.g(2), m.g(3), m.g(0));
        let got = r.get(0, 1, n - 4);
        c.check(*got == want, || {
            let terms: Vec<String> = got
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| format!("({x})·e{}", k + 1))
                .collect();
            format!(
                "filiform n={n}: R(e1,e2)e{} = {}, expected ({})·e{n}",
                n - 3,
                terms.join(" + "),
                want[n - 1]
            )
        });
    }
    c.done()
}

/// (x + y) / (2z) for monomials x, y, z.
fn laurent(x: &LaurentPoly, y: &LaurentPoly, z: &LaurentPoly) -> LaurentPoly {
    let mut sum = x.clone();
    sum.add_scaled(&rat(1, 1), y);
    sum.div_by_monomial(z).expect("monomial").scale(&rat(1, 2))
}

fn c6_flat() -> Outcome {
    let mut c = Checks::default();
    let verdict = |a: &LieAlgebra, s: &Involution| {
        flatness_analysis(&riemann(a, &SigmaMetric::symbolic(s.clone())))
    };
    let a = alg("(0,0,0,0,0,e^{12})");
    c.check(
        verdict(&a, &sigma("(1 6)", 6)).is_identically_flat(),
        || "61:1 (1 6) not flat".into(),
    );
    let (h3, s) = heisenberg(1).expect("h3");
    c.check(verdict(&h3, &s).is_identically_flat(), || {
        "h3 not flat".into()
    });
    for n in [2, 3] {
        let (p, s) = sigma_parabolic(RootType::C, n).expect("parabolic");
        let v = verdict(&p.algebra, &s[0]);
        c.check(v.is_identically_flat(), || {
            format!("C{n} nilradical {} with {}: {v:?}", p.algebra.dim(), s[0])
        });
    }
    let a = alg("(0,0,-e^{12},e^{13},e^{14},e^{25}+e^{34})");
    let r = riemann(&a, &SigmaMetric::symbolic(sigma("(1 6)(3 5)", 6)));
    let conditional = matches!(flatness_analysis(&r), Flatness::ConditionallyFlat { .. });
    let on_locus = flat_under(&r, &[(2, lp("-g1"))]).expect("substitution");
    c.check(conditional && on_locus, || {
        let on_smaller = flat_under(&r, &[(2, lp("-g1")), (3, lp("4/3*g1"))]).unwrap_or(false);
        format!("G2 (1 6)(3 5): conditional {conditional}, flat on g3=-g1 {on_locus}, flat on g3=-g1, g4=4g1/3 {on_smaller}")
    });
    c.done()
}

fn table_entries() -> Vec<&'static CatalogEntry> {
    catalog().iter().filter(|e| e.in_tables()).collect()
}

fn c7_tables() -> Outcome {
    let mut c = Checks::default();
    let entries = table_entries();
    for r in verify_all(&entries, &VerifyOptions::default()) {
        c.check(r.passed(), || r.to_string());
        let e = entries
            .iter()
            .find(|e| e.name == r.name)
            .expect("report for a listed entry");
        let mut required = vec!["arrow_breaking", "ricci"];
        if e.sources.contains(&Source::Table3) {
            required.push("plane");
        }
        for what in required {
            c.check(
                r.claims.iter().any(|x| x.what.contains(what)) || r.name == "64321:5",
                || format!("{} has no {what} claim", r.name),
            );
        }
    }
    let pm = entries.iter().filter(|e| e.pm.is_some()).count();
    c.check(pm > 0, || "no ± variants".into());
    for e in entries.iter().filter(|e| e.param.is_some()) {
        let n = e.algebras().map(|v| v.len()).unwrap_or(0);
        c.check(n == 3, || {
            format!("{} evaluated at {n} parameter values", e.name)
        });
    }
    c.done()
}

fn c8_dichotomy() -> Outcome {
    let mut c = Checks::default();
    let mut lacking = Vec::new();
    for e in catalog().iter().filter(|e| e.nice && e.dim() <= 7) {
        for (v, a) in e.algebras().expect("catalog algebras") {
            let found = enumerate_arrow_breaking(
                &diagram(&a),
                EnumerateOptions {
                    max_results: Some(1),
                    ..Default::default()
                },
            );
            if found.is_empty() {
                lacking.push(format!(
                    "{}{}",
                    e.name,
                    if v.is_empty() {
                        String::new()
                    } else {
                        format!(" {v}")
                    }
                ));
            }
        }
    }
    c.check(lacking == ["64321:5"], || {
        format!("without arrow-breaking involution: {lacking:?}")
    });
    c.done()
}

fn oracle_pair(a: &LieAlgebra, s: &Involution) -> Vec<String> {
    let mut c = Checks::default();
    let n = a.dim();
    let m = SigmaMetric::symbolic(s.clone());
    let r = riemann(a, &m);
    let rj = riemann_tensor(a, &m, Route::JFormula).expect("curvature");
    c.check(r == rj, || "Koszul and J-formula routes differ".into());
    let nice = extract_nice_structure(a).ok();
    if let Some(nice) = &nice {
        for s in 0..n {
            for t in 0..n {
                let closed = sectional_nice_with(nice, &m, s, t).expect("sectional");
                let direct = sectional_component(&r, &m, &unit(n, s), &unit(n, t));
                c.check(closed == direct, || {
                    format!("sectional ({}, {}): {closed} vs {direct}", s + 1, t + 1)
                });
            }
        }
    }
    let ric = ricci_tensor(a, &m).expect("ricci");
    c.check(ricci_from_riemann(&r) == ric, || {
        "trace Ricci differs from formula Ricci".into()
    });
    let lc = levi_civita(a, &m).expect("connection");
    c.check(lc.is_torsion_free(a), || "torsion".into());
    c.check(lc.is_metric(&m), || "not metric".into());
    let point: Vec<Rational> = (0..n)
        .map(|i| {
            rat(
                if i % 2 == 0 {
                    i as i64 + 1
                } else {
                    -(i as i64) - 1
                },
                2,
            )
        })
        .collect();
    let num = SigmaMetric::numeric_at_point(s.clone(), &point).expect("numeric metric");
    c.check(r.eval(&point).expect("eval") == riemann(a, &num), || {
        "Riemann evaluation does not commute".into()
    });
    c.check(
        ric.eval(&point).expect("eval") == ricci_tensor(a, &num).expect("ricci"),
        || "Ricci evaluation does not commute".into(),
    );
    c.0
}

fn c9_oracles() -> Outcome {
    let mut pairs = Vec::new();
    for e in catalog() {
        for (v, a) in e.algebras().expect("catalog algebras") {
            for s in &e.sigmas {
                pairs.push((
                    format!("{} {v} {}", e.name, s.sigma),
                    a.clone(),
                    s.sigma.clone(),
                ));
            }
        }
    }
    let failures: Vec<String> = pairs
        .par_iter()
        .flat_map_iter(|(name, a, s)| {
            oracle_pair(a, s)
                .into_iter()
                .map(move |f| format!("{name}: {f}"))
        })
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}

fn c10_families() -> Outcome {
    let mut c = Checks::default();
    for n in 1..=5 {
        let (a, s) = heisenberg(n).expect("heisenberg");
        let flat = flatness_analysis(&riemann(&a, &SigmaMetric::symbolic(s.clone())))
            .is_identically_flat();
        c.eq(&format!("h{} flat", 2 * n + 1), flat, n == 1);
        let fixed: BTreeMap<usize, Sign> =
            s.fixed().into_iter().map(|i| (i, Sign::Minus)).collect();
        let sig = metric_signature(&s, &fixed).expect("signature");
        c.check(sig == (n, n + 1), || {
            format!("h{} signature {sig:?}", 2 * n + 1)
        });
    }
    let cases = [
        (RootType::A, 3),
        (RootType::A, 5),
        (RootType::A, 7),
        (RootType::B, 3),
        (RootType::B, 4),
        (RootType::B, 5),
        (RootType::B, 6),
        (RootType::C, 2),
        (RootType::C, 3),
        (RootType::C, 4),
        (RootType::C, 5),
    ];
    for (kind, n) in cases {
        let name = format!("{kind}{n}");
        let Ok((p, sigmas)) = sigma_parabolic(kind, n) else {
            c.0.push(format!("{name}: construction failed"));
            continue;
        };
        let s = &sigmas[0];
        c.check(p.roots.len() == p.dim(), || format!("{name}: root count"));
        let nice = extract_nice_structure(&p.algebra);
        c.check(
            nice.as_ref()
                .is_ok_and(|x| validate_nice_diagram(&x.diagram).passes()),
            || format!("{name}: not nice"),
        );
        c.check(is_arrow_breaking(&p.diagram, s).unwrap_or(false), || {
            format!("{name}: {s} not arrow-breaking")
        });
        c.check(arrow_breaking_roots(&p.datum, s), || {
            format!("{name}: root-level test rejects {s}")
        });
        let should_be_flat = kind == RootType::C && n <= 3;
        if should_be_flat {
            let v = flatness_analysis(&riemann(&p.algebra, &SigmaMetric::symbolic(s.clone())));
            c.check(v.is_identically_flat(), || {
                format!("{name}: expected flat, got {v:?}")
            });
        } else if nonflat_criteria(&p.diagram, s).is_none() {
            let v = flatness_analysis(&riemann(&p.algebra, &SigmaMetric::symbolic(s.clone())));
            c.check(!v.is_identically_flat(), || format!("{name}: flat"));
        }
    }
    c.done()
}

fn c11_counterexamples() -> Outcome {
    let mut c = Checks::default();
    for (name, budget) in [("11:rs5", 60 * SECOND), ("16:rs4", 30 * 60 * SECOND)] {
        let e = lookup(name).expect("catalog entry");
        let t = Instant::now();
        let found = enumerate_arrow_breaking(
            &diagram(&e.algebra().expect("algebra")),
            EnumerateOptions {
                max_results: Some(1),
                ..Default::default()
            },
        );
        let elapsed = t.elapsed();
        c.check(found.is_empty(), || format!("{name}: found {}", found[0]));
        c.check(elapsed < budget, || {
            format!("{name}: search took {elapsed:?}")
        });
        let a = e.algebra().expect("algebra");
        let s = e.sigmas[0].sigma.clone();
        let ones = vec![rat(1, 1); a.dim()];
        let m = SigmaMetric::numeric(s.clone(), ones).expect("metric");
        c.check(ricci_tensor(&a, &m).expect("ricci").is_zero(), || {
            format!("{name}: Ricci at g=1 nonzero")
        });
        let r = verify_entry_with(e, &VerifyOptions { allow_long: true });
        c.check(r.passed(), || r.to_string());
    }
    c.done()
}

fn graph_has_breaking(g: &nilflat::constructions::Graph) -> bool {
    let d = diagram(&graph_algebra(g));
    !enumerate_arrow_breaking(
        &d,
        EnumerateOptions {
            max_results: Some(1),
            ..Default::default()
        },
    )
    .is_empty()
}

fn c12_graphs() -> Outcome {
    let mut graphs = Vec::new();
    for v in 1..=6 {
        graphs.extend(connected_graphs(v).expect("graphs"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..100 {
        graphs.push(random_connected_graph(7 + i % 2, 0.3, &mut rng));
    }
    let failures: Vec<String> = graphs
        .par_iter()
        .filter(|g| !graph_has_breaking(g))
        .map(|g| {
            format!(
                "no arrow-breaking involution for edges {:?}",
                g.edges().collect::<Vec<_>>()
            )
        })
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}

fn main() -> ExitCode {
    let criteria: [Row; 12] = [
        ("Riemann tensor of 64321:4", SECOND, c1_riemann),
        ("Ricci tensor of 64321:5", SECOND, c2_ricci),
        ("family parameter counts", SECOND, c3_counts),
        ("enumeration exactness", 3 * SECOND, c4_enumeration),
        ("sectional values", 5 * SECOND, c5_sectional),
        ("flat verdicts", 5 * SECOND, c6_flat),
        ("table sweep", 120 * SECOND, c7_tables),
        ("dichotomy up to dimension 7", 60 * SECOND, c8_dichotomy),
        ("oracle equivalences", 300 * SECOND, c9_oracles),
        ("infinite families", 120 * SECOND, c10_families),
        ("counterexample pair", 31 * 60 * SECOND, c11_counterexamples),
        ("graph algebras", 180 * SECOND, c12_graphs),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut outcome = f();
        let elapsed = t.elapsed();
        if elapsed > *budget {
            let msg = format!("runtime {elapsed:?} exceeds {budget:?}");
            match &mut outcome {
                Ok(()) => outcome = Err(vec![msg]),
                Err(v) => v.push(msg),
            }
        }
        let mark = if outcome.is_ok() { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {mark}  {name} ({:.2?})", i + 1, elapsed);
        if let Err(details) = outcome {
            failed += 1;
            for d in details.iter().take(10) {
                println!("      {d}");
            }
            if details.len() > 10 {
                println!("      ... {} more", details.len() - 10);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
