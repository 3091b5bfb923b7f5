//! Exit criteria. Runs without the libtest harness and prints one line per
//! criterion; the process fails if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_rational::Ratio;
use reg235::checks::{dualities, matches_brute_force, orthogonality, poincare_identity};
use reg235::families::families;
use reg235::frobcount::{brute_force_triple_count, builtin, elements, fixed_dim_identity, triple_count};
use reg235::ineq::{diff_table24, fusion, golden_table24, table_24, verify_prop22_all, SubgroupData};
use reg235::rootsys::TypeLabel;
use reg235::torsion::{enumerate_235_triples, hom_count, Torsion, TripleList};
use reg235::weylchar::{group, DataSource};

type Outcome = Result<String, String>;

fn label(s: &str) -> TypeLabel {
    s.parse().expect("valid label")
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Simple types of rank at most 8.
fn small_types() -> Vec<String> {
    let mut v: Vec<String> = (1..=8).map(|n| format!("A{n}")).collect();
    v.extend((4..=8).map(|n| format!("D{n}")));
    v.extend(["E6", "E7", "E8"].map(String::from));
    v
}

fn regular_types(list: &TripleList) -> Vec<String> {
    let mut v: Vec<String> = list.regular().map(|t| t.types_compact()).collect();
    v.sort();
    v
}

fn table_reproduction(src: &DataSource) -> Outcome {
    let golden = golden_table24().map_err(err)?;
    let computed = table_24(src).map_err(err)?;
    let d = diff_table24(&golden, &computed);
    if d.is_empty() {
        Ok(format!("{} lines identical", golden.len()))
    } else {
        Err(format!(
            "{} computed vs {} reference lines\n{}",
            computed.len(),
            golden.len(),
            d.to_string().trim_end()
        ))
    }
}

fn inequalities(src: &DataSource) -> Outcome {
    let mut checked = 0;
    let mut skipped_total = 0;
    for l in small_types() {
        let (reports, skipped) = verify_prop22_all(&label(&l), false, src).map_err(err)?;
        ensure(l == "E8" || skipped.is_empty(), || format!("{l}: {} triples skipped", skipped.len()))?;
        ensure(skipped.iter().all(|t| !t.regular), || format!("{l}: a regular triple was skipped"))?;
        for r in &reports {
            ensure(r.passed(), || format!("{l} {:?}: {:?}", r.triple_types, r.falsifications))?;
        }
        checked += reports.len();
        skipped_total += skipped.len();
    }
    Ok(format!("{checked} triples checked, {skipped_total} non-regular E8 triples outside the hypothesis"))
}

fn regular_tables() -> Outcome {
    let a: [(&str, &[&str]); 5] = [
        ("A1", &["(∅,∅,∅)"; 2]),
        ("A2", &["(A1,∅,∅)"; 2]),
        ("A3", &["(A1^2,A1,∅)"]),
        ("A4", &["(A2A1,A1^2,∅)"]),
        ("A5", &["(A2^2,A1^3,A1)"]),
    ];
    let e: [(&str, &[&str]); 3] = [
        ("E6", &["(A5A1,A2^3,A2A1^2)"; 2]),
        ("E7", &["(A7,A5A2,A3A2A1)"; 2]),
        ("E8", &["(D8,A8,A4^2)"]),
    ];
    for (g, want) in a.iter().chain(&e) {
        let got = regular_types(&enumerate_235_triples(&label(g)).map_err(err)?);
        ensure(got == *want, || format!("{g}: {got:?}"))?;
    }
    for n in 7..=12 {
        let g = format!("A{}", n - 1);
        let k = enumerate_235_triples(&label(&g)).map_err(err)?.regular().count();
        ensure(k == 0, || format!("{g}: {k} regular triples"))?;
    }
    for (g, want) in [("D4", 4), ("D5", 1), ("D6", 3), ("D7", 0), ("D8", 1), ("D10", 0), ("D11", 0), ("D12", 0)] {
        let k = enumerate_235_triples(&label(g)).map_err(err)?.regular().count();
        ensure(k == want, || format!("{g}: {k} regular triples, expected {want}"))?;
    }
    let d9 = enumerate_235_triples(&label("D9")).map_err(err)?.regular().count();
    Ok(format!("A1-A11, D4-D12 and E6-E8 as expected; D9 has {d9} regular triples"))
}

fn hom_counts() -> Outcome {
    let want = [
        ("A1", 1),
        ("A2", 1),
        ("A3", 2),
        ("A4", 1),
        ("A5", 1),
        ("D4", 1),
        ("D5", 2),
        ("D6", 1),
        ("D8", 1),
        ("E6", 1),
        ("E7", 1),
        ("E8", 1),
    ];
    let mut totals = BTreeMap::new();
    for (g, n) in want {
        let list = enumerate_235_triples(&label(g)).map_err(err)?;
        let mut total = Ratio::from_integer(0);
        for t in list.regular() {
            let c = hom_count(t).map_err(err)?;
            ensure(c == Ratio::from_integer(n), || format!("{g} {}: {c}, expected {n}", t.types_compact()))?;
            total += c;
        }
        totals.insert(g, total);
    }
    for (g, n) in [("D4", 4), ("D5", 2)] {
        ensure(totals[g] == Ratio::from_integer(n), || format!("{g} total {}, expected {n}", totals[g]))?;
    }
    Ok("per-triple counts and D4/D5 totals as expected".into())
}

fn duality_suites(src: &DataSource) -> Outcome {
    let mut identities = 0;
    let mut subgroups = 0;
    for l in small_types() {
        let lab = label(&l);
        let fs = families(&lab, src).map_err(err)?;
        identities += dualities(&fs).map_err(err)?;
        let torsion = Torsion::new(&lab).map_err(err)?;
        let list = torsion.triples().map_err(err)?;
        for t in list.regular() {
            for k in 0..3 {
                let sub = torsion.centralizer(&list.class(t, k).kac).map_err(err)?;
                let data = SubgroupData::new(&fs.group, fusion(&fs.group, &sub, src).map_err(err)?).map_err(err)?;
                data.check_duality(&fs.group).map_err(err)?;
                subgroups += 1;
            }
        }
    }
    Ok(format!("{identities} group identities, {subgroups} regular-triple subgroups"))
}

fn poincare(src: &DataSource) -> Outcome {
    for l in small_types() {
        poincare_identity(&*group(&label(&l), src).map_err(err)?).map_err(err)?;
    }
    Ok("A1-A8, D4-D8, E6-E8".into())
}

fn table_integrity(src: &DataSource) -> Outcome {
    for l in small_types() {
        orthogonality(&*group(&label(&l), src).map_err(err)?).map_err(err)?;
    }
    let brute = ["A1", "A2", "A3", "A4", "A5", "D4", "D5"];
    for l in brute {
        matches_brute_force(&*group(&label(l), src).map_err(err)?, 50_000).map_err(err)?;
    }
    Ok(format!("orthogonality on {} tables, enumeration on {}", small_types().len(), brute.len()))
}

fn frobenius_oracle() -> Outcome {
    let mut detail = Vec::new();
    for name in ["A5", "S5", "SL2_5"] {
        let t = builtin(name).map_err(err)?;
        let e = elements(&t).map_err(err)?;
        let k = t.classes.len();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let formula = triple_count(&t, a, b, c).map_err(err)?;
                    let brute = brute_force_triple_count(&e, a, b, c);
                    ensure(formula == brute, || format!("{name} ({a},{b},{c}): {formula} vs {brute}"))?;
                }
            }
        }
        detail.push(format!("{name} {}", k * k * k));
    }
    let a5 = builtin("A5").map_err(err)?;
    let idx = |n: &str| a5.class_index(n).map_err(err);
    let n = triple_count(&a5, idx("2a")?, idx("3a")?, idx("5a")?).map_err(err)?;
    ensure(n == 60, || format!("A5 (2a,3a,5a) gives {n}"))?;
    Ok(format!("class triples: {}; A5 (2a,3a,5a) = 60", detail.join(", ")))
}

fn fixed_dimensions() -> Outcome {
    let t = builtin("A5").map_err(err)?;
    let mut degrees = Vec::new();
    for (lab, chi) in &t.chars {
        let r = fixed_dim_identity(&t, chi).map_err(err)?;
        ensure(r.holds, || format!("{lab}: {r:?}"))?;
        degrees.push(r.dim);
    }
    degrees.sort();
    ensure(degrees == [1, 3, 3, 4, 5], || format!("degrees {degrees:?}"))?;
    Ok("all 5 irreducibles of A5".into())
}

fn iota_involution() -> Outcome {
    let mut groups: Vec<String> = (1..=11).map(|n| format!("A{n}")).collect();
    groups.extend((4..=12).map(|n| format!("D{n}")));
    groups.extend(["E6", "E7", "E8"].map(String::from));
    let mut swapped = BTreeMap::new();
    for g in &groups {
        let list = enumerate_235_triples(&label(g)).map_err(err)?;
        let mut moved = 0;
        for t in list.regular() {
            let i = list.iota_image(t);
            ensure(i.regular, || format!("{g}: image of {} is not regular", t.types_compact()))?;
            ensure(list.iota_image(i) == t, || format!("{g}: not an involution at {}", t.types_compact()))?;
            ensure(i.triple_types == t.triple_types, || format!("{g}: type changes under the involution"))?;
            moved += usize::from(i != t);
        }
        swapped.insert(g.as_str(), moved);
    }
    for (g, want) in [("A1", 2), ("A2", 2), ("D4", 4), ("D6", 2), ("E6", 2), ("E7", 2), ("E8", 0)] {
        ensure(swapped[g] == want, || format!("{g}: {} triples moved, expected {want}", swapped[g]))?;
    }
    Ok(format!("{} groups; E6/E7 pairs swapped, E8 fixed, D4 two pairs swapped", groups.len()))
}

fn main() -> ExitCode {
    let src = DataSource::packaged();
    let criteria: [(&str, Box<dyn Fn() -> Outcome>); 10] = [
        ("E8 family table", Box::new(|| table_reproduction(&src))),
        ("inequalities for rank <= 8", Box::new(|| inequalities(&src))),
        ("regular triple tables", Box::new(regular_tables)),
        ("regular homomorphism counts", Box::new(hom_counts)),
        ("duality identities", Box::new(|| duality_suites(&src))),
        ("fake degree identity", Box::new(|| poincare(&src))),
        ("character table integrity", Box::new(|| table_integrity(&src))),
        ("Frobenius counting oracle", Box::new(frobenius_oracle)),
        ("fixed-space dimensions on A5", Box::new(fixed_dimensions)),
        ("involution on regular triples", Box::new(iota_involution)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
