//! Identities and lemmas that tie the degree data to subgroup structure.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ad, support_bound_check_cyclotomic, BoundCheckResult, InvariantReport, Relation};
use crate::chartab::{character_support, character_table, dixon_degrees, CharacterTable, DEFAULT_TABLE_CAP};
use crate::classes::{conjugacy_classes, cp};
use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::group::{Group, SubgroupSet};
use crate::rational::{format_frac, q, qi, Q};

pub const MONOTONICITY_SAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralOptions {
    pub seed: u64,
    pub samples: usize,
    /// Character-table checks are skipped above this order.
    pub table_cap: usize,
}

impl Default for StructuralOptions {
    fn default() -> Self {
        StructuralOptions {
            seed: 0,
            samples: MONOTONICITY_SAMPLES,
            table_cap: DEFAULT_TABLE_CAP,
        }
    }
}

pub fn structural_suite(
    g: &Group,
    r: &InvariantReport,
    opts: &StructuralOptions,
) -> Result<Vec<BoundCheckResult>> {
    let n = g.order() as i64;
    let degrees = r.degrees();
    let mut out = Vec::new();

    out.push(BoundCheckResult::compare(
        "degree_square_sum",
        qi(degrees.sum_of_powers(2)),
        Relation::Eq,
        qi(n),
    ));
    out.push(BoundCheckResult::compare(
        "linear_characters",
        qi(r.irr(1)),
        Relation::Eq,
        qi(n / r.derived_order as i64),
    ));
    out.push(BoundCheckResult::compare(
        "class_count",
        qi(degrees.total()),
        Relation::Eq,
        qi(r.k),
    ));

    let g_cp = r.cp.clone();
    out.push(gallagher(g, "gallagher_derived", &g.derived_subgroup(), &g_cp)?);
    out.push(gallagher(g, "gallagher_center", &g.center(), &g_cp)?);

    out.push(if r.derived_order == 2 {
        let odd = r.cd_set.iter().filter(|&&d| d > 1 && d % 2 == 1).count();
        BoundCheckResult::compare("derived_order_two_even", qi(odd as i64), Relation::Eq, Q::zero())
            .with_witness("odd nonlinear degrees")
    } else {
        BoundCheckResult::not_applicable("derived_order_two_even", Relation::Eq)
    });

    out.push(tightest(
        "crude_irr_n",
        r.cd_set.iter().map(|&d| {
            (
                qi(r.irr(d)),
                Q::new(r.irr(1).into(), (d * d).into()),
                format!("n = {d}"),
            )
        }),
    ));

    out.push(simple_group_check(g, r));

    let index_two = g.index_two_subgroups();
    out.push(index_two_degrees(r, &index_two)?);
    out.push(monotonicity(g, r, &index_two, opts)?);
    out.push(index_two_descent(g, r)?);

    out.push(if index_two.is_empty() && r.cd_set.contains(&2) {
        let rhs = q(r.irr(1) as i64, 3);
        let mut res = BoundCheckResult::compare("irr3_bound", qi(r.irr(3)), Relation::Ge, rhs.clone());
        if qi(r.irr(3)) == rhs {
            res = res.with_witness("equality");
        }
        res
    } else {
        BoundCheckResult::not_applicable("irr3_bound", Relation::Ge)
    });

    out.push(perfect_central_class_bound(g, r)?);

    if g.order() <= opts.table_cap {
        let table = character_table(g)?;
        out.extend(table_checks(g, r, &table, !index_two.is_empty())?);
    } else {
        for (name, rel) in [
            ("orbit_method", Relation::Ge),
            ("tensor_trivial_multiplicity", Relation::Eq),
            ("tensor_index_two", Relation::Eq),
            ("support_lemma", Relation::Ge),
        ] {
            out.push(BoundCheckResult::not_applicable(name, rel).with_witness("order above table cap"));
        }
    }
    Ok(out)
}

/// Collapses `(lhs, rhs, label)` instances of `lhs >= rhs` into the one
/// with least slack, failing if any instance fails.
fn tightest(name: &str, items: impl Iterator<Item = (Q, Q, String)>) -> BoundCheckResult {
    let mut best: Option<(Q, Q, String)> = None;
    let mut count = 0;
    for (l, rh, label) in items {
        count += 1;
        let better = match &best {
            None => true,
            Some((bl, br, _)) => &l - &rh < bl - br,
        };
        if better {
            best = Some((l, rh, label));
        }
    }
    match best {
        None => BoundCheckResult::not_applicable(name, Relation::Ge),
        Some((l, rh, label)) => BoundCheckResult::compare(name, l, Relation::Ge, rh)
            .with_witness(format!("tightest of {count}: {label}")),
    }
}

fn gallagher(g: &Group, name: &str, n: &SubgroupSet<'_>, g_cp: &Q) -> Result<BoundCheckResult> {
    let (quot, _) = g.quotient(n)?;
    let (sub, _) = n.to_group("N");
    let (cq, cn) = (cp(&quot), cp(&sub));
    let prod = &cq * &cn;
    let holds = cq.clone().min(cn.clone()) >= prod && prod >= *g_cp;
    Ok(
        BoundCheckResult::decided(name, prod, Relation::Ge, g_cp.clone(), holds).with_witness(format!(
            "cp(G/N) = {}, cp(N) = {}",
            format_frac(&cq),
            format_frac(&cn)
        )),
    )
}

fn is_simple(g: &Group) -> bool {
    let part = conjugacy_classes(g);
    g.order() > 1
        && part.reps()[1..]
            .iter()
            .all(|&x| g.normal_closure(&[x]).order() == g.order())
}

fn simple_group_check(g: &Group, r: &InvariantReport) -> BoundCheckResult {
    const NAME: &str = "simple_group";
    let (Some(m), false) = (r.mindeg, r.is_abelian) else {
        return BoundCheckResult::not_applicable(NAME, Relation::Ge);
    };
    if !is_simple(g) {
        return BoundCheckResult::not_applicable(NAME, Relation::Ge);
    }
    let m = m as i64;
    let lhs = &r.ad - qi(m);
    let rhs = q((m + 1) * (m + 1) - (m - 1), r.order as i64);
    let holds = lhs >= rhs && r.ad > qi(4);
    BoundCheckResult::decided(NAME, lhs, Relation::Ge, rhs, holds)
        .with_witness(format!("mindeg = {m}, AD > 4: {}", r.ad > qi(4)))
}

fn index_two_degrees(r: &InvariantReport, subgroups: &[SubgroupSet<'_>]) -> Result<BoundCheckResult> {
    const NAME: &str = "index_two_degrees";
    if subgroups.is_empty() {
        return Ok(BoundCheckResult::not_applicable(NAME, Relation::Eq));
    }
    let mut good = 0;
    for h in subgroups {
        let cd = dixon_degrees(&h.to_group("H").0)?.cd_set();
        let maxdeg_ok = cd.last().copied().unwrap_or(1) <= r.maxdeg;
        let covered = r
            .cd_set
            .iter()
            .all(|d| cd.contains(d) || (d % 2 == 0 && cd.contains(&(d / 2))));
        if maxdeg_ok && covered {
            good += 1;
        }
    }
    Ok(BoundCheckResult::compare(NAME, qi(good), Relation::Eq, qi(subgroups.len() as i64)))
}

fn monotonicity(
    g: &Group,
    r: &InvariantReport,
    index_two: &[SubgroupSet<'_>],
    opts: &StructuralOptions,
) -> Result<BoundCheckResult> {
    const NAME: &str = "monotonicity";
    let n = g.order();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut subgroups: Vec<SubgroupSet<'_>> = index_two.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let x = rng.random_range(0..n);
        let y = rng.random_range(0..n);
        subgroups.push(g.subgroup_generated(&[x, y]));
    }
    let mut worst: Option<Q> = None;
    let mut checked = 0;
    for h in subgroups {
        if h.order() == n || !seen.insert(h.elements().to_vec()) {
            continue;
        }
        let value = ad(&h.to_group("H").0)?;
        checked += 1;
        if worst.as_ref().is_none_or(|w| value > *w) {
            worst = Some(value);
        }
    }
    Ok(match worst {
        None => BoundCheckResult::not_applicable(NAME, Relation::Le),
        Some(w) => BoundCheckResult::compare(NAME, w, Relation::Le, r.ad.clone())
            .with_witness(format!("{checked} proper subgroups, seed {}", opts.seed)),
    })
}

/// Follows a chain of index-2 subgroups from a group with `cd = {1,2,3}`
/// and `AD < 7/3`; the last one must satisfy `AD >= 2 + 2/|H'|`.
fn index_two_descent(g: &Group, r: &InvariantReport) -> Result<BoundCheckResult> {
    const NAME: &str = "index_two_descent";
    if !(r.cd_set == [1, 2, 3] && r.ad < q(7, 3)) {
        return Ok(BoundCheckResult::not_applicable(NAME, Relation::Ge));
    }
    let mut current = g.clone();
    let mut steps = 0;
    loop {
        if dixon_degrees(&current)?.cd_set() != [1, 2, 3] {
            return Ok(BoundCheckResult::decided(NAME, Q::zero(), Relation::Ge, Q::zero(), false)
                .with_witness(format!("c.d. not inherited after {steps} steps")));
        }
        let next = current.index_two_subgroups().first().map(|h| h.to_group("H").0);
        match next {
            Some(h) => {
                current = h;
                steps += 1;
            }
            None => break,
        }
    }
    let derived = current.derived_subgroup().order() as i64;
    Ok(BoundCheckResult::compare(NAME, ad(&current)?, Relation::Ge, qi(2) + q(2, derived))
        .with_witness(format!("{steps} steps to order {}", current.order())))
}

/// `12 cp(G) <= k_G(Z)/|Z|` for perfect central extensions of A5.
fn perfect_central_class_bound(g: &Group, r: &InvariantReport) -> Result<BoundCheckResult> {
    const NAME: &str = "perfect_central_class_bound";
    let z = g.center();
    if !r.is_nontrivial_perfect() || z.order() == 1 {
        return Ok(BoundCheckResult::not_applicable(NAME, Relation::Le));
    }
    let (quot, _) = g.quotient(&z)?;
    let qd = dixon_degrees(&quot)?;
    if !(quot.order() == 60 && qd.degrees() == [1, 3, 3, 4, 5]) {
        return Ok(BoundCheckResult::not_applicable(NAME, Relation::Le));
    }
    let part = conjugacy_classes(g);
    let inside = part.count_inside(|x| z.contains(x)) as i64;
    Ok(BoundCheckResult::compare(
        NAME,
        qi(12) * &r.cp,
        Relation::Le,
        q(inside, z.order() as i64),
    ))
}

fn table_checks(
    g: &Group,
    r: &InvariantReport,
    table: &CharacterTable,
    has_index_two: bool,
) -> Result<Vec<BoundCheckResult>> {
    let ring = table.ring();
    let part = table.classes();
    let mut out = Vec::new();

    let mut orbit = Vec::new();
    for row in 0..table.k() {
        let supp = character_support(table, row)?;
        let kernel_index = g.order() / g.normal_closure(&supp.elements).order();
        let d = table.degrees()[row];
        orbit.push((
            qi(r.irr(d)),
            q(r.irr(1) as i64, kernel_index as i64),
            format!("row {row}, [G:K] = {kernel_index}"),
        ));
    }
    out.push(tightest("orbit_method", orbit.into_iter()));

    let two: Vec<usize> = (0..table.k()).filter(|&i| table.degrees()[i] == 2).collect();
    if two.is_empty() {
        out.push(BoundCheckResult::not_applicable("tensor_trivial_multiplicity", Relation::Eq));
        out.push(BoundCheckResult::not_applicable("tensor_index_two", Relation::Eq));
        out.push(BoundCheckResult::not_applicable("support_lemma", Relation::Ge));
        return Ok(out);
    }

    let one = ring.integer(1);
    let mut trivial_ok = 0;
    let mut reducible = 0;
    let mut support: Option<BoundCheckResult> = None;
    for &row in &two {
        let psi = table.row(row);
        let norm_sq: Vec<_> = psi.iter().map(|v| ring.mul(v, &ring.conj(v))).collect();
        let trivial_row = table.row(0);
        if table.inner_product(&norm_sq, trivial_row) == Some(Q::one()) {
            trivial_ok += 1;
        }
        let beta: Vec<_> = norm_sq.iter().map(|v| ring.sub(v, &one)).collect();
        if table.inner_product(&beta, &beta) != Some(Q::one()) {
            reducible += 1;
        }
        if !has_index_two {
            let pointwise: Vec<_> = (0..g.order()).map(|x| beta[part.class_of(x)].clone()).collect();
            let res = match support_bound_check_cyclotomic(ring, &pointwise, 3) {
                Ok(res) => res.with_witness(format!(
                    "row {row}: {}",
                    support_witness_tail(&pointwise)
                )),
                Err(Error::HypothesisViolated(msg)) => {
                    BoundCheckResult::decided("support_lemma", Q::zero(), Relation::Ge, Q::zero(), false)
                        .with_witness(format!("row {row}: {msg}"))
                }
                Err(e) => return Err(e),
            };
            let replace = match &support {
                None => true,
                Some(prev) => prev.holds && (!res.holds || &res.lhs - &res.rhs < &prev.lhs - &prev.rhs),
            };
            if replace {
                support = Some(res);
            }
        }
    }
    out.push(BoundCheckResult::compare(
        "tensor_trivial_multiplicity",
        qi(trivial_ok),
        Relation::Eq,
        qi(two.len() as i64),
    ));
    out.push(if reducible > 0 {
        BoundCheckResult::decided("tensor_index_two", qi(reducible), Relation::Eq, qi(reducible), has_index_two)
            .with_witness(format!("{reducible} reducible, index-2 subgroup: {has_index_two}"))
    } else {
        BoundCheckResult::not_applicable("tensor_index_two", Relation::Eq)
    });
    out.push(support.unwrap_or_else(|| {
        BoundCheckResult::not_applicable("support_lemma", Relation::Ge).with_witness("has an index-2 subgroup")
    }));
    Ok(out)
}

fn support_witness_tail(values: &[CycInt]) -> String {
    let size = values.iter().filter(|v| !v.is_zero()).count();
    let rational = values.iter().all(|v| v.as_integer().is_some());
    format!("|supp| = {size}, values rational: {rational}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_family, FamilyKind, FamilySpec};
    use crate::invariants::invariant_report;

    fn suite(kind: FamilyKind, params: &[u64]) -> Vec<BoundCheckResult> {
        let g = make_family(&FamilySpec::new(kind, params)).unwrap();
        let r = invariant_report(&g).unwrap();
        structural_suite(&g, &r, &StructuralOptions::default()).unwrap()
    }

    fn find<'a>(rs: &'a [BoundCheckResult], name: &str) -> &'a BoundCheckResult {
        rs.iter().find(|r| r.bound_name == name).unwrap()
    }

    #[test]
    fn sl23_support_and_irr3_equality() {
        let rs = suite(FamilyKind::Sl2, &[3]);
        assert!(rs.iter().all(|r| r.holds), "{rs:#?}");
        let s = find(&rs, "support_lemma");
        assert!(s.applicable && s.lhs >= qi(8));
        let i = find(&rs, "irr3_bound");
        assert_eq!(i.witness.as_deref(), Some("equality"));
        assert_eq!((i.lhs.clone(), i.rhs.clone()), (qi(1), qi(1)));
    }

    #[test]
    fn sl25_irrational_support() {
        let rs = suite(FamilyKind::Sl2, &[5]);
        assert!(rs.iter().all(|r| r.holds), "{rs:#?}");
        assert!(find(&rs, "support_lemma").applicable);
        let p = find(&rs, "perfect_central_class_bound");
        assert!(p.applicable);
        assert_eq!((p.lhs.clone(), p.rhs.clone()), (q(9, 10), qi(1)));
    }

    #[test]
    fn simple_groups() {
        for (kind, params) in [(FamilyKind::Alternating, vec![5]), (FamilyKind::Psl2_7, vec![])] {
            let rs = suite(kind, &params);
            let s = find(&rs, "simple_group");
            assert!(s.applicable && s.holds);
        }
        assert!(!find(&suite(FamilyKind::Sl2, &[5]), "simple_group").applicable);
    }

    #[test]
    fn assorted_groups_pass() {
        for (kind, params) in [
            (FamilyKind::Symmetric, vec![4]),
            (FamilyKind::Dihedral, vec![6]),
            (FamilyKind::Extraspecial, vec![2, 2]),
            (FamilyKind::Gl2_3, vec![]),
            (FamilyKind::Cyclic, vec![6]),
            (FamilyKind::Affine, vec![7]),
        ] {
            let rs = suite(kind, &params);
            assert!(rs.iter().all(|r| r.holds), "{kind:?}: {rs:#?}");
        }
    }
}
