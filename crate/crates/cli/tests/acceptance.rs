//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use adgroup::chartab::{degree_oracle_numeric, dixon_degrees, DEFAULT_NUMERIC_CAP};
use adgroup::classes::{commuting_pair_count, cp, DEFAULT_BRUTE_FORCE_CAP};
use adgroup::corpus::{build_entries, bundled_catalog, scan, Recipe, ScanOptions, ScanReport};
use adgroup::families::{make_family, FamilyKind, FamilySpec};
use adgroup::group::DEFAULT_ORDER_CAP;
use adgroup::invariants::{ad, closed_form_ad, gap_classify, solvability_threshold};
use adgroup::rational::{q, qi};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn fam(kind: FamilyKind, params: &[u64]) -> FamilySpec {
    FamilySpec::new(kind, params)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_values() -> Outcome {
    use FamilyKind::*;
    let ads = [
        (fam(Alternating, &[5]), q(61, 15)),
        (fam(Symmetric, &[4]), q(8, 3)),
        (fam(Alternating, &[4]), q(5, 2)),
        (fam(Sl2, &[3]), q(9, 4)),
        (fam(Gl2_3, &[]), qi(3)),
        (fam(Sl2, &[5]), q(9, 2)),
        (fam(Psl2_7, &[]), q(563, 84)),
    ];
    for (spec, want) in &ads {
        let got = ad(&make_family(spec).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(&got == want, || format!("AD({spec}) = {got}, expected {want}"))?;
    }
    for (spec, want) in [(fam(Alternating, &[5]), q(1, 12)), (fam(Psl2_7, &[]), q(1, 28))] {
        let got = cp(&make_family(&spec).map_err(|e| e.to_string())?);
        ensure(got == want, || format!("cp({spec}) = {got}, expected {want}"))?;
    }
    Ok(format!("{} values exact", ads.len() + 2))
}

fn closed_forms() -> Outcome {
    let mut specs: Vec<FamilySpec> = (1..=20).map(|k| fam(FamilyKind::Dihedral, &[k])).collect();
    for (p, n) in [(2, 1), (2, 2), (3, 1), (5, 1)] {
        specs.push(fam(FamilyKind::Extraspecial, &[p, n]));
    }
    for qq in [3, 4, 5, 7, 8, 9] {
        specs.push(fam(FamilyKind::Affine, &[qq]));
    }
    for qq in [2, 3, 4, 5, 7] {
        specs.push(fam(FamilyKind::Sl2, &[qq]));
    }
    for spec in &specs {
        let g = make_family(spec).map_err(|e| e.to_string())?;
        let computed = ad(&g).map_err(|e| e.to_string())?;
        let closed = closed_form_ad(spec).map_err(|e| e.to_string())?;
        ensure(computed == closed, || format!("{spec}: computed {computed}, closed form {closed}"))?;
    }
    Ok(format!("{} parameter sets", specs.len()))
}

fn gap_theorem(scan: &ScanReport) -> Outcome {
    let entries = bundled_catalog();
    let mut witnessed = 0;
    let mut dihedral = 0;
    for (entry, row) in entries.iter().zip(&scan.rows) {
        let r = row.report.as_ref().ok_or_else(|| format!("{}: not constructed", row.name))?;
        if r.ad > qi(2) {
            continue;
        }
        witnessed += 1;
        let n = gap_classify(&r.ad).n.ok_or_else(|| format!("{}: AD {} not in gap set", r.name, r.ad))?;
        if let Recipe::Family(spec) = &entry.recipe {
            if spec.kind == FamilyKind::Dihedral {
                let k = spec.params[0];
                let want = if k % 2 == 1 { k } else { k / 2 };
                ensure(n == want, || format!("{}: n = {n}, expected {want}", r.name))?;
                dihedral += 1;
            }
        }
    }
    Ok(format!("{witnessed} groups with AD <= 2, {dihedral} dihedral n values matched"))
}

fn solvability(scan: &ScanReport) -> Outcome {
    let threshold = solvability_threshold();
    let mut below = 0;
    let mut perfect = Vec::new();
    for r in scan.reports() {
        if r.ad < threshold {
            below += 1;
            ensure(r.is_solvable, || format!("{}: AD {} but not solvable", r.name, r.ad))?;
        }
        if r.is_nontrivial_perfect() {
            ensure(r.ad >= threshold, || format!("{}: perfect with AD {}", r.name, r.ad))?;
            ensure((r.ad == threshold) == r.has_a5_certificate(), || {
                format!("{}: equality does not match the A5 certificate", r.name)
            })?;
            if r.ad == threshold {
                perfect.push(r.name.clone());
            }
        }
    }
    ensure(!perfect.is_empty(), || "no A5-certificate entry in the catalog".into())?;
    Ok(format!("{below} solvable below 61/15, equality at {}", perfect.join(", ")))
}

fn structural(scan: &ScanReport) -> Outcome {
    const CHECKS: [&str; 6] = [
        "degree_square_sum",
        "linear_characters",
        "class_count",
        "holder",
        "gallagher_derived",
        "gallagher_center",
    ];
    for row in &scan.rows {
        let r = row.report.as_ref().ok_or_else(|| format!("{}: not constructed", row.name))?;
        let square_sum: u64 = r.irr_counts.iter().map(|(d, c)| d * d * c).sum();
        ensure(square_sum == r.order, || format!("{}: sum n^2 |Irr_n| = {square_sum}", r.name))?;
        ensure(r.irr(1) * r.derived_order == r.order, || format!("{}: |Irr_1| != [G:G']", r.name))?;
        ensure(r.irr_counts.values().sum::<u64>() == r.k, || format!("{}: class count", r.name))?;
        let holder = &r.ad * &r.ad * &r.cp;
        ensure(holder >= qi(1) && (holder > qi(1)) == !r.is_abelian, || format!("{}: Holder", r.name))?;
        for name in CHECKS {
            let c = row.checks.iter().find(|c| c.bound_name == name);
            ensure(c.is_some_and(|c| c.applicable && c.holds), || format!("{}: {name}", r.name))?;
        }
    }
    Ok(format!("{} groups, {} identities each", scan.rows.len(), CHECKS.len() + 1))
}

fn oracles() -> Outcome {
    let entries = bundled_catalog();
    let built = build_entries(&entries, DEFAULT_ORDER_CAP);
    let (mut numeric, mut pairs) = (0, 0);
    for (entry, b) in entries.iter().zip(built) {
        let g = b.map_err(|e| format!("{}: {e}", entry.name))?.group;
        let n = g.order();
        if n <= DEFAULT_NUMERIC_CAP {
            let exact = dixon_degrees(&g).map_err(|e| e.to_string())?;
            let float = degree_oracle_numeric(&g, 0).map_err(|e| format!("{}: {e}", entry.name))?;
            ensure(exact == float, || format!("{}: {exact} vs {float}", entry.name))?;
            numeric += 1;
        }
        if n <= DEFAULT_BRUTE_FORCE_CAP {
            let count = commuting_pair_count(&g, DEFAULT_BRUTE_FORCE_CAP).map_err(|e| e.to_string())?;
            let nn = qi(n as i64);
            ensure(qi(count) / (&nn * &nn) == cp(&g), || format!("{}: commuting pairs", entry.name))?;
            pairs += 1;
        }
    }
    Ok(format!("{numeric} degree oracles, {pairs} commuting-pair counts"))
}

fn bound_suites(scan: &ScanReport) -> Outcome {
    const BOUNDS: [&str; 16] = [
        "hammer",
        "minimal_ad",
        "two_not_in_cd",
        "maxdeg_at_least_three",
        "maxdeg_linear",
        "maxdeg_at_most_two",
        "holder",
        "p_group",
        "odd_order",
        "multiplicativity",
        "solvability",
        "perfect_minimum",
        "perfect_cp",
        "center_index",
        "gap",
        "index_two_inheritance",
    ];
    let mut applicable = 0;
    for row in &scan.rows {
        ensure(row.error.is_none(), || format!("{}: {}", row.name, row.error.clone().unwrap_or_default()))?;
        for name in BOUNDS {
            let c = row
                .checks
                .iter()
                .find(|c| c.bound_name == name)
                .ok_or_else(|| format!("{}: {name} missing", row.name))?;
            ensure(!c.is_violation(), || format!("{}: {c}", row.name))?;
            applicable += usize::from(c.applicable);
        }
    }
    let sl23 = scan
        .rows
        .iter()
        .find(|r| r.name == "SL(2,3)")
        .ok_or_else(|| "SL(2,3) missing from catalog".to_string())?;
    let r = sl23.report.as_ref().ok_or("SL(2,3) not constructed")?;
    ensure(r.irr(1) == 3 && r.irr(1) == 3 * r.irr(3), || "SL(2,3): |Irr_1| != 3|Irr_3|".into())?;
    let irr3 = sl23.checks.iter().find(|c| c.bound_name == "irr3_bound").ok_or("irr3_bound missing")?;
    ensure(irr3.applicable && irr3.holds && irr3.lhs == irr3.rhs, || format!("SL(2,3): {irr3}"))?;
    ensure(applicable >= 100, || format!("only {applicable} applicable instance checks"))?;
    Ok(format!("{applicable} applicable instance checks, 0 violations"))
}

fn support(scan: &ScanReport) -> Outcome {
    let mut tested = Vec::new();
    for row in &scan.rows {
        let Some(c) = row.checks.iter().find(|c| c.bound_name == "support_lemma") else {
            return Err(format!("{}: support_lemma missing", row.name));
        };
        let r = row.report.as_ref().ok_or_else(|| format!("{}: not constructed", row.name))?;
        let has_index_two = row
            .checks
            .iter()
            .any(|c| c.bound_name == "index_two_degrees" && c.applicable);
        let eligible = r.irr(2) > 0 && !has_index_two;
        if eligible {
            ensure(c.applicable && c.holds, || format!("{}: {c}", row.name))?;
            tested.push(row.name.clone());
        }
    }
    ensure(!tested.is_empty(), || "no eligible group".into())?;
    Ok(format!("beta passes at d = 3 for {}", tested.join(", ")))
}

fn quotient_regression() -> Outcome {
    let g = make_family(&fam(FamilyKind::Sl2, &[3])).map_err(|e| e.to_string())?;
    let (a4, _) = g.quotient(&g.center()).map_err(|e| e.to_string())?;
    let a4_direct = make_family(&fam(FamilyKind::Alternating, &[4])).map_err(|e| e.to_string())?;
    let (small, big) = (ad(&g).map_err(|e| e.to_string())?, ad(&a4).map_err(|e| e.to_string())?);
    ensure(a4.order() == 12, || "SL(2,3)/Z has wrong order".into())?;
    ensure(big == ad(&a4_direct).map_err(|e| e.to_string())?, || "SL(2,3)/Z differs from A4".into())?;
    ensure(small < big, || format!("AD(SL(2,3)) = {small}, AD(A4) = {big}"))?;
    Ok(format!("{small} < {big}"))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("adgroup-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let run = |tag: &str| -> Result<(Vec<u8>, Vec<u8>), String> {
        let csv: PathBuf = dir.join(format!("{tag}.csv"));
        let out = Command::new(env!("CARGO_BIN_EXE_adgroup"))
            .args(["verify", "bundled", "--csv"])
            .arg(&csv)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || format!("verify exited with {:?}", out.status.code()))?;
        Ok((std::fs::read(&csv).map_err(|e| e.to_string())?, out.stdout))
    };
    let first = run("first")?;
    let second = run("second")?;
    let _ = std::fs::remove_dir_all(&dir);
    ensure(first.0 == second.0, || "CSV output differs between runs".into())?;
    ensure(first.1 == second.1, || "summary output differs between runs".into())?;
    ensure(
        String::from_utf8_lossy(&first.0).lines().any(|l| l.starts_with("A5,60,61/15,")),
        || "A5 row missing from CSV".into(),
    )?;
    Ok(format!("{} CSV bytes, {} summary bytes identical", first.0.len(), first.1.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let report = scan(&bundled_catalog(), &ScanOptions::default());
    let criteria: Vec<Criterion> = vec![
        ("golden values", Box::new(golden_values)),
        ("closed forms", Box::new(closed_forms)),
        ("gap theorem", Box::new(|| gap_theorem(&report))),
        ("solvability threshold", Box::new(|| solvability(&report))),
        ("structural identities", Box::new(|| structural(&report))),
        ("oracle equivalence", Box::new(oracles)),
        ("bound suites", Box::new(|| bound_suites(&report))),
        ("support lemma", Box::new(|| support(&report))),
        ("non-monotone quotient", Box::new(quotient_regression)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = BTreeSet::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
                failed.insert(i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed in {:.1?}",
        criteria.len() - failed.len(),
        criteria.len(),
        start.elapsed()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
