//! Lower bounds on AD and the threshold statements built on them.

use num_traits::One;

use super::{
    gap_classify, hammer_bound, invariant_report, solvability_threshold, BoundCheckResult,
    InvariantReport, Relation,
};
use crate::arith::prime_power;
use crate::chartab::dixon_degrees;
use crate::error::Result;
use crate::group::Group;
use crate::rational::{format_frac, q, qi, Q};

pub fn bound_suite(g: &Group) -> Result<Vec<BoundCheckResult>> {
    Ok(bound_suite_with(&invariant_report(g)?, None))
}

/// `factors` holds the AD values of the direct factors when the group was
/// built as a direct product.
pub fn bound_suite_with(r: &InvariantReport, factors: Option<&[Q]>) -> Vec<BoundCheckResult> {
    let nonabelian = !r.is_abelian;
    let derived = qi(r.derived_order as i64);
    let ad = r.ad.clone();
    let mut out = Vec::with_capacity(10);

    out.push(match r.mindeg {
        Some(m) if nonabelian => {
            let rhs = hammer_bound(m, r.derived_order).expect("nonabelian: m, |G'| >= 2");
            BoundCheckResult::compare("hammer", ad.clone(), Relation::Ge, rhs)
                .with_witness(format!("mindeg = {m}, |G'| = {}", r.derived_order))
        }
        _ => BoundCheckResult::not_applicable("hammer", Relation::Ge),
    });

    out.push(if nonabelian {
        let minimal = r.cd_set == [1, 2] && r.derived_order == 2;
        let three_halves = q(3, 2);
        let holds = ad >= three_halves && ((ad == three_halves) == minimal);
        BoundCheckResult::decided("minimal_ad", ad.clone(), Relation::Iff, three_halves, holds)
            .with_witness(format!("cd = {{1,2}} and |G'| = 2: {minimal}"))
    } else {
        BoundCheckResult::not_applicable("minimal_ad", Relation::Iff)
    });

    out.push(if nonabelian && !r.cd_set.contains(&2) {
        BoundCheckResult::compare("two_not_in_cd", ad.clone(), Relation::Ge, q(7, 3))
    } else {
        BoundCheckResult::not_applicable("two_not_in_cd", Relation::Ge)
    });

    out.push(if r.maxdeg >= 3 {
        BoundCheckResult::compare(
            "maxdeg_at_least_three",
            ad.clone(),
            Relation::Ge,
            qi(2) + Q::one() / &derived,
        )
    } else {
        BoundCheckResult::not_applicable("maxdeg_at_least_three", Relation::Ge)
    });

    out.push(if nonabelian {
        let rhs = qi(2) + (qi(r.maxdeg as i64) - qi(3)) / &derived;
        BoundCheckResult::compare("maxdeg_linear", ad.clone(), Relation::Ge, rhs)
            .with_witness(format!("maxdeg = {}", r.maxdeg))
    } else {
        BoundCheckResult::not_applicable("maxdeg_linear", Relation::Ge)
    });

    out.push(if r.maxdeg <= 2 {
        BoundCheckResult::compare(
            "maxdeg_at_most_two",
            ad.clone(),
            Relation::Eq,
            qi(2) - Q::one() / &derived,
        )
    } else {
        BoundCheckResult::not_applicable("maxdeg_at_most_two", Relation::Eq)
    });

    let holder = &ad * &ad * &r.cp;
    let strict = holder > Q::one();
    out.push(BoundCheckResult::decided(
        "holder",
        holder.clone(),
        Relation::Ge,
        Q::one(),
        holder >= Q::one() && strict == nonabelian,
    ));

    out.push(match prime_power(r.order) {
        Some((p, _)) if nonabelian => {
            let p = p as i64;
            // the hammer bound with m = n = p
            BoundCheckResult::compare("p_group", ad.clone(), Relation::Ge, qi(p - 1) + q(1, p))
                .with_witness(format!("p = {p}"))
        }
        _ => BoundCheckResult::not_applicable("p_group", Relation::Ge),
    });

    out.push(if nonabelian && r.order % 2 == 1 {
        BoundCheckResult::compare("odd_order", ad.clone(), Relation::Ge, q(7, 3))
    } else {
        BoundCheckResult::not_applicable("odd_order", Relation::Ge)
    });

    out.push(match factors {
        Some(fs) if !fs.is_empty() => {
            let product: Q = fs.iter().product();
            let shown: Vec<String> = fs.iter().map(format_frac).collect();
            BoundCheckResult::compare("multiplicativity", ad, Relation::Eq, product)
                .with_witness(format!("factors {}", shown.join(" * ")))
        }
        _ => BoundCheckResult::not_applicable("multiplicativity", Relation::Eq),
    });
    out
}

pub fn threshold_suite(g: &Group) -> Result<Vec<BoundCheckResult>> {
    threshold_suite_with(g, &invariant_report(g)?)
}

pub fn threshold_suite_with(g: &Group, r: &InvariantReport) -> Result<Vec<BoundCheckResult>> {
    let ad = r.ad.clone();
    let threshold = solvability_threshold();
    let mut out = Vec::with_capacity(6);

    out.push(if ad < threshold {
        BoundCheckResult::decided("solvability", ad.clone(), Relation::Ge, threshold.clone(), r.is_solvable)
            .with_witness(format!("solvable = {}", r.is_solvable))
    } else {
        BoundCheckResult::not_applicable("solvability", Relation::Ge)
    });

    out.push(if r.is_nontrivial_perfect() {
        let small = &ad * &ad <= qi(20);
        let certified = r.has_a5_certificate();
        let holds = ad >= threshold && (!small || certified);
        BoundCheckResult::decided("perfect_minimum", ad.clone(), Relation::Ge, threshold.clone(), holds)
            .with_witness(if small {
                format!("AD^2 <= 20, A5 certificate: {certified}")
            } else {
                "AD^2 > 20".to_string()
            })
    } else {
        BoundCheckResult::not_applicable("perfect_minimum", Relation::Ge)
    });

    let twentieth = q(1, 20);
    out.push(if r.is_nontrivial_perfect() && r.cp > twentieth {
        let which = if r.has_a5_certificate() {
            Some("A5")
        } else if r.has_sl25_certificate() {
            Some("SL(2,5)")
        } else {
            None
        };
        BoundCheckResult::decided("perfect_cp", r.cp.clone(), Relation::Gt, twentieth, which.is_some())
            .with_witness(format!("certificate: {}", which.unwrap_or("none")))
    } else {
        BoundCheckResult::not_applicable("perfect_cp", Relation::Gt)
    });

    let minimal = r.cd_set == [1, 2] && r.derived_order == 2;
    out.push(BoundCheckResult::decided(
        "center_index",
        qi(r.center_index as i64),
        Relation::Iff,
        qi(4),
        minimal == (r.center_index == 4),
    )
    .with_witness(format!("cd = {{1,2}} and |G'| = 2: {minimal}")));

    out.push(if ad <= qi(2) {
        let gap = gap_classify(&ad);
        let mut res = BoundCheckResult::decided("gap", ad.clone(), Relation::Le, qi(2), gap.in_gap_set);
        if let Some(n) = gap.n {
            res = res.with_witness(format!("n = {n}"));
        }
        res
    } else {
        BoundCheckResult::not_applicable("gap", Relation::Le)
    });

    out.push(if ad < q(7, 3) && r.cd_set == [1, 2, 3] {
        let subgroups = g.index_two_subgroups();
        let mut good = 0;
        for h in &subgroups {
            let (hg, _) = h.to_group("H");
            if dixon_degrees(&hg)?.cd_set() == [1, 2, 3] {
                good += 1;
            }
        }
        BoundCheckResult::compare(
            "index_two_inheritance",
            qi(good),
            Relation::Eq,
            qi(subgroups.len() as i64),
        )
        .with_witness(format!("{} index-2 subgroups", subgroups.len()))
    } else {
        BoundCheckResult::not_applicable("index_two_inheritance", Relation::Eq)
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{direct_product, make_family, FamilyKind, FamilySpec};

    fn fam(kind: FamilyKind, params: &[u64]) -> Group {
        make_family(&FamilySpec::new(kind, params)).unwrap()
    }

    fn find<'a>(rs: &'a [BoundCheckResult], name: &str) -> &'a BoundCheckResult {
        rs.iter().find(|r| r.bound_name == name).unwrap()
    }

    #[test]
    fn heisenberg_p_group_equality() {
        let rs = bound_suite(&fam(FamilyKind::Extraspecial, &[3, 1])).unwrap();
        let p = find(&rs, "p_group");
        assert!(p.applicable && p.holds);
        assert_eq!((p.lhs.clone(), p.rhs.clone()), (q(7, 3), q(7, 3)));
        assert!(rs.iter().all(|r| r.holds));
    }

    #[test]
    fn d8_minimal() {
        let rs = bound_suite(&fam(FamilyKind::Dihedral, &[4])).unwrap();
        let b = find(&rs, "minimal_ad");
        assert!(b.holds);
        assert_eq!(b.lhs, q(3, 2));
    }

    #[test]
    fn a5_strict() {
        let rs = bound_suite(&fam(FamilyKind::Alternating, &[5])).unwrap();
        for name in ["maxdeg_at_least_three", "maxdeg_linear", "holder"] {
            let b = find(&rs, name);
            assert!(b.applicable && b.holds && b.lhs > b.rhs, "{name}");
        }
        assert_eq!(rs.len(), 10);
    }

    #[test]
    fn multiplicativity() {
        let a = fam(FamilyKind::Symmetric, &[3]);
        let b = fam(FamilyKind::Alternating, &[4]);
        let r = invariant_report(&direct_product(&a, &b).unwrap()).unwrap();
        let factors = [q(5, 3), q(5, 2)];
        let rs = bound_suite_with(&r, Some(&factors));
        let m = find(&rs, "multiplicativity");
        assert!(m.applicable && m.holds);
        let wrong = [q(5, 3), q(5, 3)];
        assert!(find(&bound_suite_with(&r, Some(&wrong)), "multiplicativity").is_violation());
    }

    #[test]
    fn thresholds() {
        let rs = threshold_suite(&fam(FamilyKind::Sl2, &[5])).unwrap();
        let b = find(&rs, "perfect_minimum");
        assert!(b.holds && b.witness.as_deref() == Some("AD^2 > 20"));
        let c = find(&rs, "perfect_cp");
        assert!(c.holds);
        assert_eq!(c.lhs, q(3, 40));
        assert_eq!(c.witness.as_deref(), Some("certificate: SL(2,5)"));

        let rs = threshold_suite(&fam(FamilyKind::Alternating, &[5])).unwrap();
        assert!(find(&rs, "perfect_minimum").holds);
        assert!(!find(&rs, "solvability").applicable);

        let rs = threshold_suite(&fam(FamilyKind::Cyclic, &[7])).unwrap();
        assert!(rs.iter().all(|r| r.holds));
        assert_eq!(find(&rs, "gap").witness.as_deref(), Some("n = 1"));
    }

    #[test]
    fn index_two_inheritance_on_sl23_times_c2() {
        let g = direct_product(&fam(FamilyKind::Sl2, &[3]), &fam(FamilyKind::Cyclic, &[2])).unwrap();
        let rs = threshold_suite(&g).unwrap();
        let b = find(&rs, "index_two_inheritance");
        assert!(b.applicable && b.holds);
    }
}
