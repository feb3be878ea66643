use nilflat::catalog::*;
use nilflat::diagram::{diagram_leq, validate_nice_diagram, NiceDiagram};
use nilflat::involution::{enumerate_arrow_breaking, EnumerateOptions};
use nilflat::liealg::extract_nice_structure;

fn nice_diagrams() -> Vec<(String, NiceDiagram)> {
    catalog()
        .iter()
        .filter(|e| e.nice)
        .flat_map(|e| {
            e.algebras().unwrap().into_iter().map(move |(v, a)| {
                (
                    format!("{} {v}", e.name),
                    extract_nice_structure(&a).unwrap().diagram,
                )
            })
        })
        .collect()
}

fn claim<'a>(r: &'a EntryReport, what: &str) -> &'a Claim {
    r.claims
        .iter()
        .find(|c| c.what.starts_with(what))
        .unwrap_or_else(|| panic!("{} has no claim {what}", r.name))
}

#[test]
fn every_entry_verifies() {
    let all: Vec<&CatalogEntry> = catalog().iter().collect();
    let reports = verify_all(&all, &VerifyOptions::default());
    let names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
    for r in &reports {
        assert!(r.passed(), "{r}");
    }
    let skipped: Vec<&str> = reports
        .iter()
        .filter(|r| r.count(Status::Skipped) > 0)
        .map(|r| r.name.as_str())
        .collect();
    assert_eq!(skipped, ["16:rs4"]);
}

#[test]
fn table_rows_have_plane_claims() {
    for e in catalog().iter().filter(|e| e.in_tables()) {
        if e.name == "64321:5" {
            continue;
        }
        let first = &e.sigmas[0];
        assert!(
            first
                .claims
                .iter()
                .any(|(_, c)| *c == ClaimSpec::ArrowBreaking(true)),
            "{}",
            e.name
        );
    }
    let r = verify_entry(lookup("5321:2").unwrap());
    assert_eq!(claim(&r, "arrow_breaking").status, Status::Pass);
    assert_eq!(claim(&r, "ricci").status, Status::Pass);
    assert_eq!(claim(&r, "plane").status, Status::Pass);
    assert_ne!(claim(&r, "plane").computed, "0");
    let r = verify_entry(lookup("754321:7").unwrap());
    assert!(r.passed());
    assert_eq!(claim(&r, "plane").status, Status::Pass);
}

#[test]
fn eleven_dimensional_example() {
    let r = verify_entry(lookup("11:rs5").unwrap());
    assert!(r.passed(), "{r}");
    assert_eq!(claim(&r, "arrow-breaking search").computed, "none");
    assert_eq!(claim(&r, "arrow_breaking").computed, "no");
    assert_eq!(claim(&r, "ricci: at 1").computed, "0");
}

#[test]
fn pm_variants_and_parameters() {
    assert_eq!(variants("6431:2").len(), 2);
    assert_eq!(
        variants("73:7")
            .iter()
            .map(|e| e.name.as_str())
            .collect::<Vec<_>>(),
        ["73:7a", "73:7b"]
    );
    let fam = lookup("754321:9").unwrap();
    assert_eq!(fam.algebras().unwrap().len(), 3);
    let r = verify_entry(lookup("7431:13b").unwrap());
    let labels: Vec<&str> = r
        .claims
        .iter()
        .filter(|c| c.what == "nice basis")
        .map(|c| c.variant.as_str())
        .collect();
    assert_eq!(labels, ["A=2", "A=-1", "A=1/2"]);
}

#[test]
fn diagrams_validate() {
    for (name, d) in nice_diagrams() {
        assert!(validate_nice_diagram(&d).passes(), "{name}");
    }
}

#[test]
fn leq_reflexive_and_transitive() {
    let ds: Vec<NiceDiagram> = nice_diagrams()
        .into_iter()
        .map(|(_, d)| d)
        .filter(|d| d.node_count() <= 6)
        .collect();
    let leq = |a: &NiceDiagram, b: &NiceDiagram| {
        a.node_count() == b.node_count() && diagram_leq(a, b).unwrap().is_some()
    };
    for a in &ds {
        assert!(leq(a, a));
    }
    for a in &ds {
        for b in &ds {
            if !leq(a, b) {
                continue;
            }
            for c in &ds {
                if leq(b, c) {
                    assert!(leq(a, c));
                }
            }
        }
    }
}

#[test]
fn dichotomy_up_to_seven() {
    for e in catalog().iter().filter(|e| e.nice) {
        for (v, a) in e.algebras().unwrap() {
            if a.dim() > 7 {
                continue;
            }
            let d = extract_nice_structure(&a).unwrap().diagram;
            let found = enumerate_arrow_breaking(
                &d,
                EnumerateOptions {
                    max_results: Some(1),
                    ..Default::default()
                },
            );
            assert_eq!(found.is_empty(), e.name == "64321:5", "{} {v}", e.name);
        }
    }
}

#[test]
fn custom_catalog_text() {
    let text = "entry t\nstructure: (0,0,e^{12})\nsource: example\nsigma: (1 3)\n  ricci: zero\n  flat: nonflat\n";
    let e = parse_catalog(text).unwrap();
    let r = verify_entry(&e[0]);
    assert!(!r.passed());
    assert_eq!(claim(&r, "flat").status, Status::Fail);
    assert_eq!(claim(&r, "flat").computed, "identically flat");
}
