//! The anti-diagonal constant `AD(G) = sum d^3 / |G|` and the checkable
//! bounds and thresholds relating it to group structure.

mod bounds;
mod structural;
mod support;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::chartab::{dixon_degrees_with, DegreeMultiset};
use crate::classes::{conjugacy_classes, cp_from_classes};
use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilySpec};
use crate::group::Group;
use crate::rational::{format_frac, q, qi, Q};

pub use bounds::{bound_suite, bound_suite_with, threshold_suite, threshold_suite_with};
pub use structural::{structural_suite, StructuralOptions, MONOTONICITY_SAMPLES};
pub use support::{support_bound_check, support_bound_check_cyclotomic};

/// AD(A5), the solvability threshold.
pub fn solvability_threshold() -> Q {
    q(61, 15)
}

pub(crate) fn serialize_q<S: Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_frac(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub name: String,
    pub order: u64,
    #[serde(serialize_with = "serialize_q")]
    pub ad: Q,
    #[serde(serialize_with = "serialize_q")]
    pub cp: Q,
    #[serde(serialize_with = "serialize_q")]
    pub f: Q,
    /// Number of conjugacy classes.
    pub k: u64,
    pub cd_set: Vec<u64>,
    pub irr_counts: BTreeMap<u64, u64>,
    pub mindeg: Option<u64>,
    pub maxdeg: u64,
    pub derived_order: u64,
    pub center_index: u64,
    pub is_abelian: bool,
    pub is_solvable: bool,
    pub is_perfect: bool,
    /// `n` with `AD = 2 - 1/n`, when there is one.
    pub gap_n: Option<u64>,
}

impl InvariantReport {
    pub fn degrees(&self) -> DegreeMultiset {
        DegreeMultiset::from_degrees(
            self.irr_counts
                .iter()
                .flat_map(|(&d, &c)| std::iter::repeat_n(d, c as usize)),
        )
    }

    pub fn irr(&self, n: u64) -> u64 {
        self.irr_counts.get(&n).copied().unwrap_or(0)
    }

    pub fn is_nontrivial_perfect(&self) -> bool {
        self.is_perfect && self.order > 1
    }

    /// Order 60, perfect, degrees 1, 3, 3, 4, 5.
    pub fn has_a5_certificate(&self) -> bool {
        self.order == 60 && self.is_perfect && self.degrees().degrees() == [1, 3, 3, 4, 5]
    }

    /// Order 120, perfect, degrees 1, 2, 2, 3, 3, 4, 4, 5, 6.
    pub fn has_sl25_certificate(&self) -> bool {
        self.order == 120
            && self.is_perfect
            && self.degrees().degrees() == [1, 2, 2, 3, 3, 4, 4, 5, 6]
    }
}

pub fn ad_from_degrees(degrees: &DegreeMultiset, order: usize) -> Q {
    Q::new(degrees.sum_of_powers(3).into(), BigInt::from(order))
}

pub fn f_from_degrees(degrees: &DegreeMultiset, order: usize) -> Q {
    Q::new(degrees.sum_of_powers(1).into(), BigInt::from(order))
}

pub fn ad(g: &Group) -> Result<Q> {
    let part = conjugacy_classes(g);
    Ok(ad_from_degrees(&dixon_degrees_with(g, &part)?, g.order()))
}

pub fn invariant_report(g: &Group) -> Result<InvariantReport> {
    let part = conjugacy_classes(g);
    let degrees = dixon_degrees_with(g, &part)?;
    let n = g.order();
    let flags = g.structure_flags();
    let ad = ad_from_degrees(&degrees, n);
    let cp = cp_from_classes(g, &part);
    let report = InvariantReport {
        name: g.name().to_string(),
        order: n as u64,
        f: f_from_degrees(&degrees, n),
        k: part.k() as u64,
        cd_set: degrees.cd_set(),
        irr_counts: degrees.counts().clone(),
        mindeg: degrees.mindeg(),
        maxdeg: degrees.maxdeg(),
        derived_order: g.derived_subgroup().order() as u64,
        center_index: g.center().index() as u64,
        is_abelian: flags.is_abelian,
        is_solvable: flags.is_solvable,
        is_perfect: flags.is_perfect,
        gap_n: gap_classify(&ad).n,
        ad,
        cp,
    };
    check_report(&report)?;
    Ok(report)
}

fn check_report(r: &InvariantReport) -> Result<()> {
    let one = Q::one();
    if (r.ad == one) != r.is_abelian || r.ad < one {
        return Err(Error::Inconsistent(format!(
            "{}: AD = {} but abelian = {}",
            r.name,
            format_frac(&r.ad),
            r.is_abelian
        )));
    }
    if !r.is_abelian && r.ad < q(3, 2) {
        return Err(Error::Inconsistent(format!("{}: nonabelian with AD < 3/2", r.name)));
    }
    let holder = &r.ad * &r.ad * &r.cp;
    if holder < one || (holder == one) != r.is_abelian {
        return Err(Error::Inconsistent(format!(
            "{}: AD^2 cp = {}",
            r.name,
            format_frac(&holder)
        )));
    }
    Ok(())
}

/// `1 + (m - 1)(1 - 1/n)`, the lower bound for nonabelian groups with
/// `mindeg >= m` and `|G'| >= n`.
pub fn hammer_bound(m: u64, n: u64) -> Result<Q> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgs(format!(
            "hammer bound needs m, n >= 2, got m = {m}, n = {n}"
        )));
    }
    Ok(qi(1) + qi(m - 1) * (qi(1) - Q::new(1.into(), n.into())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapClassification {
    pub value: Q,
    pub in_gap_set: bool,
    pub n: Option<u64>,
}

/// Membership in `{2 - 1/n : n >= 1}`.
pub fn gap_classify(v: &Q) -> GapClassification {
    let rest = qi(2) - v;
    let n = (rest.is_positive() && rest.numer().is_one())
        .then(|| rest.denom().to_u64())
        .flatten();
    GapClassification {
        value: v.clone(),
        in_gap_set: n.is_some(),
        n,
    }
}

/// Closed-form AD for the dihedral, extraspecial, affine and SL(2,q) families.
pub fn closed_form_ad(spec: &FamilySpec) -> Result<Q> {
    spec.expected_order()?;
    let p = &spec.params;
    let v = match spec.kind {
        FamilyKind::Dihedral => {
            let k = p[0] as i64;
            if k % 2 == 1 {
                qi(2) - q(1, k)
            } else {
                qi(2) - q(2, k)
            }
        }
        FamilyKind::Extraspecial => {
            let (prime, n) = (p[0] as i64, p[1] as u32);
            qi(prime.pow(n - 1) * (prime - 1)) + q(1, prime)
        }
        FamilyKind::Affine => {
            let qq = p[0] as i64;
            qi(qq - 2) + q(2, qq)
        }
        FamilyKind::Sl2 => {
            let qq = p[0] as i64;
            if qq % 2 == 0 {
                q(qq.pow(3) - 3, qq * qq - 1)
            } else {
                q(2 * qq.pow(3) - qq * qq - 9, 2 * (qq * qq - 1))
            }
        }
        other => return Err(Error::UnsupportedFamily(other.to_string())),
    };
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Ge,
    Gt,
    Le,
    Eq,
    /// Two conditions hold together or not at all.
    Iff,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Iff => "<=>",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheckResult {
    pub bound_name: String,
    pub applicable: bool,
    #[serde(serialize_with = "serialize_q")]
    pub lhs: Q,
    #[serde(serialize_with = "serialize_q")]
    pub rhs: Q,
    pub relation: Relation,
    pub holds: bool,
    pub witness: Option<String>,
}

impl BoundCheckResult {
    /// A comparison `lhs rel rhs`, evaluated exactly.
    pub fn compare(name: &str, lhs: Q, relation: Relation, rhs: Q) -> Self {
        let holds = match relation {
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Iff => unreachable!("use BoundCheckResult::decided"),
        };
        BoundCheckResult {
            bound_name: name.to_string(),
            applicable: true,
            lhs,
            rhs,
            relation,
            holds,
            witness: None,
        }
    }

    /// A check whose outcome is computed by the caller.
    pub fn decided(name: &str, lhs: Q, relation: Relation, rhs: Q, holds: bool) -> Self {
        BoundCheckResult {
            bound_name: name.to_string(),
            applicable: true,
            lhs,
            rhs,
            relation,
            holds,
            witness: None,
        }
    }

    pub fn not_applicable(name: &str, relation: Relation) -> Self {
        BoundCheckResult {
            bound_name: name.to_string(),
            applicable: false,
            lhs: Q::zero(),
            rhs: Q::zero(),
            relation,
            holds: true,
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn is_violation(&self) -> bool {
        self.applicable && !self.holds
    }
}

impl fmt::Display for BoundCheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.applicable {
            return write!(f, "{}: n/a", self.bound_name);
        }
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.bound_name,
            format_frac(&self.lhs),
            self.relation,
            format_frac(&self.rhs),
            if self.holds { "ok" } else { "FAIL" }
        )?;
        if let Some(w) = &self.witness {
            write!(f, " ({w})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make_family;

    fn fam(kind: FamilyKind, params: &[u64]) -> Group {
        make_family(&FamilySpec::new(kind, params)).unwrap()
    }

    #[test]
    fn golden_values() {
        assert_eq!(ad(&fam(FamilyKind::Alternating, &[5])).unwrap(), q(61, 15));
        assert_eq!(ad(&fam(FamilyKind::Symmetric, &[4])).unwrap(), q(8, 3));
        assert_eq!(ad(&fam(FamilyKind::Sl2, &[3])).unwrap(), q(9, 4));
        assert_eq!(ad(&fam(FamilyKind::Gl2_3, &[])).unwrap(), qi(3));
        assert_eq!(ad(&fam(FamilyKind::Cyclic, &[10])).unwrap(), qi(1));
    }

    #[test]
    fn reports() {
        let r = invariant_report(&fam(FamilyKind::Alternating, &[5])).unwrap();
        assert_eq!((r.ad.clone(), r.cp.clone(), r.f.clone()), (q(61, 15), q(1, 12), q(4, 15)));
        assert_eq!(r.cd_set, vec![1, 3, 4, 5]);
        assert!(r.is_perfect && !r.is_solvable && r.has_a5_certificate());
        assert_eq!(r.mindeg, Some(3));

        let r = invariant_report(&fam(FamilyKind::Dihedral, &[5])).unwrap();
        assert_eq!(r.ad, q(9, 5));
        assert_eq!(r.cd_set, vec![1, 2]);
        assert_eq!(r.derived_order, 5);
        assert_eq!(r.gap_n, Some(5));

        let r = invariant_report(&Group::trivial()).unwrap();
        assert_eq!((r.ad.clone(), r.cp.clone(), r.f.clone()), (qi(1), qi(1), qi(1)));
        assert_eq!(r.mindeg, None);
    }

    #[test]
    fn hammer() {
        assert_eq!(hammer_bound(2, 2).unwrap(), q(3, 2));
        assert_eq!(hammer_bound(2, 3).unwrap(), q(5, 3));
        assert_eq!(hammer_bound(4, 2).unwrap(), q(5, 2));
        assert_eq!(hammer_bound(3, 3).unwrap(), q(7, 3));
        assert!(hammer_bound(1, 5).is_err());
        assert!(hammer_bound(5, 1).is_err());
    }

    #[test]
    fn gap_membership() {
        assert_eq!(gap_classify(&q(3, 2)).n, Some(2));
        assert_eq!(gap_classify(&q(9, 5)).n, Some(5));
        assert_eq!(gap_classify(&qi(1)).n, Some(1));
        assert!(!gap_classify(&q(12, 7)).in_gap_set);
        assert!(!gap_classify(&qi(2)).in_gap_set);
        assert!(!gap_classify(&q(5, 2)).in_gap_set);
    }

    #[test]
    fn gap_membership_matches_enumeration() {
        // 2 - 1/n = (2n - 1)/n is already in lowest terms
        let members: std::collections::HashSet<(u64, u64)> =
            (1..=1_000_000u64).map(|n| (2 * n - 1, n)).filter(|&(_, d)| d <= 1000).collect();
        for den in 1..=1000u64 {
            for num in 0..=2 * den {
                if crate::arith::gcd(num, den) != 1 {
                    continue;
                }
                let v = q(num as i64, den as i64);
                assert_eq!(gap_classify(&v).in_gap_set, members.contains(&(num, den)), "{num}/{den}");
            }
        }
    }

    #[test]
    fn closed_forms() {
        let ex = |p, n| closed_form_ad(&FamilySpec::new(FamilyKind::Extraspecial, &[p, n])).unwrap();
        assert_eq!(ex(2, 2), q(5, 2));
        assert_eq!(closed_form_ad(&FamilySpec::new(FamilyKind::Affine, &[3])).unwrap(), q(5, 3));
        assert_eq!(closed_form_ad(&FamilySpec::new(FamilyKind::Sl2, &[5])).unwrap(), q(9, 2));
        assert_eq!(closed_form_ad(&FamilySpec::new(FamilyKind::Sl2, &[4])).unwrap(), q(61, 15));
        assert_eq!(closed_form_ad(&FamilySpec::new(FamilyKind::Sl2, &[7])).unwrap(), q(1099, 168));
        assert!(matches!(
            closed_form_ad(&FamilySpec::new(FamilyKind::Cyclic, &[3])),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn closed_forms_match_computed() {
        let mut specs: Vec<FamilySpec> =
            (1..=20).map(|k| FamilySpec::new(FamilyKind::Dihedral, &[k])).collect();
        for (p, n) in [(2, 1), (2, 2), (3, 1), (5, 1)] {
            specs.push(FamilySpec::new(FamilyKind::Extraspecial, &[p, n]));
        }
        for qq in [3, 4, 5, 7, 8, 9] {
            specs.push(FamilySpec::new(FamilyKind::Affine, &[qq]));
        }
        for qq in [2, 3, 4, 5, 7] {
            specs.push(FamilySpec::new(FamilyKind::Sl2, &[qq]));
        }
        for spec in specs {
            let g = make_family(&spec).unwrap();
            assert_eq!(ad(&g).unwrap(), closed_form_ad(&spec).unwrap(), "{spec}");
        }
    }

    #[test]
    fn quotient_can_increase_ad() {
        let g = fam(FamilyKind::Sl2, &[3]);
        let (a4, _) = g.quotient(&g.center()).unwrap();
        assert_eq!(a4.order(), 12);
        let (big, small) = (ad(&a4).unwrap(), ad(&g).unwrap());
        assert_eq!((small.clone(), big.clone()), (q(9, 4), q(5, 2)));
        assert!(small < big);
    }
}
