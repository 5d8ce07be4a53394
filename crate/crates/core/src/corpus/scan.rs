use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{build_entries, BuiltEntry, CatalogEntry};
use crate::chartab::{degree_oracle_numeric, DEFAULT_NUMERIC_CAP, DEFAULT_TABLE_CAP};
use crate::classes::{commuting_pair_count, DEFAULT_BRUTE_FORCE_CAP};
use crate::error::Result;
use crate::group::DEFAULT_ORDER_CAP;
use crate::invariants::{
    ad, ad_from_degrees, bound_suite_with, invariant_report, structural_suite, threshold_suite_with,
    BoundCheckResult, InvariantReport, Relation, StructuralOptions, MONOTONICITY_SAMPLES,
};
use crate::rational::{format_frac, qi, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub cap: usize,
    pub seed: u64,
    pub samples: usize,
    pub table_cap: usize,
    pub numeric_cap: usize,
    pub brute_force_cap: usize,
    pub parallel: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            cap: DEFAULT_ORDER_CAP,
            seed: 0,
            samples: MONOTONICITY_SAMPLES,
            table_cap: DEFAULT_TABLE_CAP,
            numeric_cap: DEFAULT_NUMERIC_CAP,
            brute_force_cap: DEFAULT_BRUTE_FORCE_CAP,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanRow {
    pub name: String,
    pub report: Option<InvariantReport>,
    pub checks: Vec<BoundCheckResult>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub group: String,
    pub bound: String,
    pub lhs: Q,
    pub rhs: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSummary {
    pub entries: usize,
    pub constructed: usize,
    pub construction_errors: usize,
    pub checks_evaluated: usize,
    pub checks_applicable: usize,
    pub violations: usize,
    pub seed: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub violations: Vec<Violation>,
    pub summary: ScanSummary,
}

impl ScanReport {
    pub fn reports(&self) -> impl Iterator<Item = &InvariantReport> {
        self.rows.iter().filter_map(|r| r.report.as_ref())
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.summary.construction_errors == 0
    }
}

pub fn scan(entries: &[CatalogEntry], opts: &ScanOptions) -> ScanReport {
    let start = Instant::now();
    let built = build_entries(entries, opts.cap);
    let work = |(entry, b): (&CatalogEntry, &Result<BuiltEntry>)| -> ScanRow {
        match b.as_ref().map_err(|e| e.to_string()).and_then(|b| {
            evaluate(b, opts).map_err(|e| e.to_string())
        }) {
            Ok((report, checks)) => ScanRow {
                name: entry.name.clone(),
                report: Some(report),
                checks,
                error: None,
            },
            Err(e) => ScanRow {
                name: entry.name.clone(),
                report: None,
                checks: Vec::new(),
                error: Some(e),
            },
        }
    };
    let rows: Vec<ScanRow> = if opts.parallel {
        entries.par_iter().zip(built.par_iter()).map(work).collect()
    } else {
        entries.iter().zip(built.iter()).map(work).collect()
    };

    let violations: Vec<Violation> = rows
        .iter()
        .flat_map(|row| {
            row.checks.iter().filter(|c| c.is_violation()).map(|c| Violation {
                group: row.name.clone(),
                bound: c.bound_name.clone(),
                lhs: c.lhs.clone(),
                rhs: c.rhs.clone(),
            })
        })
        .collect();
    let summary = ScanSummary {
        entries: rows.len(),
        constructed: rows.iter().filter(|r| r.report.is_some()).count(),
        construction_errors: rows.iter().filter(|r| r.error.is_some()).count(),
        checks_evaluated: rows.iter().map(|r| r.checks.len()).sum(),
        checks_applicable: rows.iter().flat_map(|r| &r.checks).filter(|c| c.applicable).count(),
        violations: violations.len(),
        seed: opts.seed,
        elapsed: start.elapsed(),
    };
    ScanReport {
        rows,
        violations,
        summary,
    }
}

fn evaluate(b: &BuiltEntry, opts: &ScanOptions) -> Result<(InvariantReport, Vec<BoundCheckResult>)> {
    let g = &b.group;
    let report = invariant_report(g)?;
    let factor_ads = match &b.factors {
        Some(fs) => Some(fs.iter().map(ad).collect::<Result<Vec<Q>>>()?),
        None => None,
    };
    let mut checks = bound_suite_with(&report, factor_ads.as_deref());
    checks.extend(threshold_suite_with(g, &report)?);
    let structural = StructuralOptions {
        seed: opts.seed,
        samples: opts.samples,
        table_cap: opts.table_cap,
    };
    checks.extend(structural_suite(g, &report, &structural)?);

    let n = g.order();
    checks.push(if n <= opts.numeric_cap {
        let oracle = degree_oracle_numeric(g, opts.seed)?;
        let same = oracle == report.degrees();
        BoundCheckResult::decided(
            "numeric_oracle",
            ad_from_degrees(&oracle, n),
            Relation::Eq,
            report.ad.clone(),
            same,
        )
        .with_witness(format!("degrees {oracle}"))
    } else {
        BoundCheckResult::not_applicable("numeric_oracle", Relation::Eq)
    });
    checks.push(if n <= opts.brute_force_cap {
        let pairs = commuting_pair_count(g, opts.brute_force_cap)?;
        let nn = qi(n as i64);
        BoundCheckResult::compare(
            "commuting_pairs",
            qi(pairs) / (&nn * &nn),
            Relation::Eq,
            report.cp.clone(),
        )
    } else {
        BoundCheckResult::not_applicable("commuting_pairs", Relation::Eq)
    });
    Ok((report, checks))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckTally {
    pub name: String,
    pub evaluated: usize,
    pub applicable: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Per-check pass/fail counts over a scan, with witness lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremSummary {
    pub seed: u64,
    pub entries: usize,
    pub tallies: Vec<CheckTally>,
    /// Groups with `AD <= 2`: name, AD, and `n` with `AD = 2 - 1/n`.
    pub gap_witnesses: Vec<(String, Q, Option<u64>)>,
    pub perfect: Vec<(String, Q)>,
    pub below_threshold: usize,
    pub construction_errors: Vec<(String, String)>,
    pub violations: Vec<Violation>,
}

fn describe(check: &str) -> &'static str {
    match check {
        "hammer" => "AD >= 1 + (mindeg-1)(1 - 1/|G'|)",
        "minimal_ad" => "AD = 3/2 iff cd = {1,2} and |G'| = 2",
        "two_not_in_cd" => "2 not a degree => AD >= 7/3",
        "maxdeg_at_least_three" => "maxdeg >= 3 => AD >= 2 + 1/|G'|",
        "maxdeg_linear" => "AD >= 2 + (maxdeg-3)/|G'|",
        "maxdeg_at_most_two" => "maxdeg <= 2 => AD = 2 - 1/|G'|",
        "holder" => "Holder: AD^2 cp >= 1, strict iff nonabelian",
        "p_group" => "nonabelian p-group => AD >= p - 1 + 1/p",
        "odd_order" => "nonabelian of odd order => AD >= 7/3",
        "multiplicativity" => "AD(G x H) = AD(G) AD(H)",
        "solvability" => "solvability threshold: AD < 61/15 => solvable",
        "perfect_minimum" => "perfect => AD >= 61/15; AD^2 <= 20 => A5",
        "perfect_cp" => "perfect, cp > 1/20 => A5 or SL(2,5)",
        "center_index" => "appendix: cd = {1,2}, |G'| = 2 iff [G:Z] = 4",
        "gap" => "gap theorem: AD <= 2 => AD = 2 - 1/n",
        "index_two_inheritance" => "AD < 7/3, cd = {1,2,3} passes to index 2",
        "degree_square_sum" => "sum n^2 |Irr_n| = |G|",
        "linear_characters" => "|Irr_1| = [G:G']",
        "class_count" => "sum |Irr_n| = k(G)",
        "gallagher_derived" => "Gallagher with N = G'",
        "gallagher_center" => "Gallagher with N = Z(G)",
        "derived_order_two_even" => "|G'| = 2 => nonlinear degrees even",
        "crude_irr_n" => "|Irr_n| >= |Irr_1|/n^2",
        "simple_group" => "simple => AD > 4",
        "index_two_degrees" => "index-2 subgroup degree lemma",
        "monotonicity" => "AD(H) <= AD(G) for subgroups",
        "index_two_descent" => "index-2 descent ends with AD >= 2 + 2/|H'|",
        "irr3_bound" => "no index 2, 2 a degree => |Irr_3| >= |Irr_1|/3",
        "perfect_central_class_bound" => "12 cp(G) <= k_G(Z)/|Z|",
        "orbit_method" => "|Irr_n| >= |Irr_1| / [G:K]",
        "tensor_trivial_multiplicity" => "<psi psi-bar, 1> = 1 for degree 2",
        "tensor_index_two" => "reducible psi psi-bar - 1 => index-2 subgroup",
        "support_lemma" => "|supp(beta)| >= |G|/3",
        "numeric_oracle" => "modular degrees = floating-point degrees",
        "commuting_pairs" => "cp = commuting pairs / |G|^2",
        _ => "",
    }
}

impl TheoremSummary {
    pub fn from_report(report: &ScanReport) -> Self {
        let mut tallies: Vec<CheckTally> = Vec::new();
        for row in &report.rows {
            for c in &row.checks {
                let pos = match tallies.iter().position(|t| t.name == c.bound_name) {
                    Some(p) => p,
                    None => {
                        tallies.push(CheckTally {
                            name: c.bound_name.clone(),
                            evaluated: 0,
                            applicable: 0,
                            passed: 0,
                            failed: 0,
                        });
                        tallies.len() - 1
                    }
                };
                let t = &mut tallies[pos];
                t.evaluated += 1;
                if c.applicable {
                    t.applicable += 1;
                    if c.holds {
                        t.passed += 1;
                    } else {
                        t.failed += 1;
                    }
                }
            }
        }
        let threshold = crate::invariants::solvability_threshold();
        TheoremSummary {
            seed: report.summary.seed,
            entries: report.rows.len(),
            tallies,
            gap_witnesses: report
                .reports()
                .filter(|r| r.ad <= qi(2))
                .map(|r| (r.name.clone(), r.ad.clone(), r.gap_n))
                .collect(),
            perfect: report
                .reports()
                .filter(|r| r.is_nontrivial_perfect())
                .map(|r| (r.name.clone(), r.ad.clone()))
                .collect(),
            below_threshold: report.reports().filter(|r| r.ad < threshold).count(),
            construction_errors: report
                .rows
                .iter()
                .filter_map(|r| r.error.as_ref().map(|e| (r.name.clone(), e.clone())))
                .collect(),
            violations: report.violations.clone(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.construction_errors.is_empty()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "Instance verification over {} catalog entries (sampling seed {})",
            self.entries, self.seed
        );
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:<28} {:>6} {:>6} {:>6}  statement",
            "check", "appl", "pass", "fail"
        );
        for t in &self.tallies {
            let _ = writeln!(
                s,
                "{:<28} {:>6} {:>6} {:>6}  {}",
                t.name,
                t.applicable,
                t.passed,
                t.failed,
                describe(&t.name)
            );
        }
        let _ = writeln!(s);
        let gap: Vec<String> = self
            .gap_witnesses
            .iter()
            .map(|(name, v, n)| match n {
                Some(n) => format!("{name} (AD {}, n = {n})", format_frac(v)),
                None => format!("{name} (AD {}, NOT IN GAP SET)", format_frac(v)),
            })
            .collect();
        let _ = writeln!(s, "gap witnesses (AD <= 2): {}", gap.join(", "));
        let _ = writeln!(
            s,
            "groups with AD < 61/15: {}, all solvable: {}",
            self.below_threshold,
            self.tallies
                .iter()
                .find(|t| t.name == "solvability")
                .is_none_or(|t| t.failed == 0)
        );
        let perfect: Vec<String> = self
            .perfect
            .iter()
            .map(|(name, v)| format!("{name} (AD {})", format_frac(v)))
            .collect();
        let _ = writeln!(s, "nontrivial perfect groups: {}", perfect.join(", "));
        for (name, e) in &self.construction_errors {
            let _ = writeln!(s, "construction error: {name}: {e}");
        }
        for v in &self.violations {
            let _ = writeln!(
                s,
                "VIOLATION: {} {}: lhs {} rhs {}",
                v.group,
                v.bound,
                format_frac(&v.lhs),
                format_frac(&v.rhs)
            );
        }
        let applicable: usize = self.tallies.iter().map(|t| t.applicable).sum();
        let _ = writeln!(
            s,
            "result: {} ({} applicable checks, {} violations, {} construction errors)",
            if self.passed() { "PASS" } else { "FAIL" },
            applicable,
            self.violations.len(),
            self.construction_errors.len()
        );
        s
    }
}

/// Scans the entries and summarizes every check.
pub fn verify_theorems(entries: &[CatalogEntry], opts: &ScanOptions) -> (ScanReport, TheoremSummary) {
    let report = scan(entries, opts);
    let summary = TheoremSummary::from_report(&report);
    (report, summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::parse_catalog;

    #[test]
    fn empty_catalog_passes() {
        let (report, summary) = verify_theorems(&[], &ScanOptions::default());
        assert!(report.rows.is_empty() && summary.passed());
    }

    #[test]
    fn abelian_rows_have_ad_one() {
        let es = parse_catalog(
            r#"[{"name":"C4","kind":"cyclic","params":[4]},{"name":"V","kind":"product","params":[2,2]},{"name":"C4xV","product":["C4","V"]}]"#,
        )
        .unwrap();
        let report = scan(&es, &ScanOptions::default());
        assert!(report.is_clean());
        assert!(report.reports().all(|r| r.ad == qi(1)));
        let m = report.rows[2].checks.iter().find(|c| c.bound_name == "multiplicativity").unwrap();
        assert!(m.applicable && m.holds);
    }

    #[test]
    fn corrupted_table_is_isolated() {
        let es = parse_catalog(
            r#"[{"name":"S3","kind":"symmetric","params":[3]},{"name":"Bad","cayley":[[0,1],[1,1]]},{"name":"C3","kind":"cyclic","params":[3]}]"#,
        )
        .unwrap();
        let report = scan(&es, &ScanOptions::default());
        assert_eq!(report.summary.construction_errors, 1);
        assert!(report.rows[1].error.is_some());
        assert!(report.rows[0].report.is_some() && report.rows[2].report.is_some());
        assert!(report.violations.is_empty());
        let summary = TheoremSummary::from_report(&report);
        assert!(!summary.passed());
        assert!(summary.render().contains("construction error: Bad"));
    }

    #[test]
    fn dihedral_gap_witnesses() {
        let es = parse_catalog(
            r#"[{"name":"D6","kind":"dihedral","params":[3]},{"name":"D8","kind":"dihedral","params":[4]},{"name":"D10","kind":"dihedral","params":[5]}]"#,
        )
        .unwrap();
        let (_, summary) = verify_theorems(&es, &ScanOptions::default());
        let ns: Vec<_> = summary.gap_witnesses.iter().map(|(n, _, k)| (n.as_str(), *k)).collect();
        assert_eq!(ns, vec![("D6", Some(3)), ("D8", Some(2)), ("D10", Some(5))]);
        assert!(summary.passed());
    }
}
