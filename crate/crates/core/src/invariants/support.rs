//! A function `f: X -> [-1, d]` with mean 0 and variance 1 is supported on
//! at least `|X| / d` points.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{BoundCheckResult, Relation};
use crate::cyclotomic::{CycInt, CyclotomicRing};
use crate::error::{Error, Result};
use crate::rational::{format_frac, qi, Q};

const NAME: &str = "support_lemma";

/// Sizes of the negative part, the part in `(0, c]` and the part above `c`.
fn partition_result(x_len: usize, d: &Q, n: usize, p: usize, r: usize) -> BoundCheckResult {
    let supp = n + p + r;
    let c = d - Q::one();
    BoundCheckResult::compare(NAME, qi(supp as i64), Relation::Ge, qi(x_len as i64) / d)
        .with_witness(format!("N = {n}, P = {p}, R = {r} at c = {}", format_frac(&c)))
}

pub fn support_bound_check(values: &[Q], d: &Q) -> Result<BoundCheckResult> {
    if values.is_empty() || *d < Q::one() {
        return Err(Error::HypothesisViolated("need nonempty X and d >= 1".into()));
    }
    let lo = -Q::one();
    if let Some(v) = values.iter().find(|v| **v < lo || *v > d) {
        return Err(Error::HypothesisViolated(format!(
            "value {} outside [-1, {}]",
            format_frac(v),
            format_frac(d)
        )));
    }
    let sum: Q = values.iter().sum();
    let sum_sq: Q = values.iter().map(|v| v * v).sum();
    if !sum.is_zero() || sum_sq != qi(values.len() as i64) {
        return Err(Error::HypothesisViolated(format!(
            "mean/variance: sum = {}, sum of squares = {}",
            format_frac(&sum),
            format_frac(&sum_sq)
        )));
    }
    let c = d - Q::one();
    let n = values.iter().filter(|v| **v < Q::zero()).count();
    let p = values.iter().filter(|v| **v > Q::zero() && **v <= c).count();
    let r = values.iter().filter(|v| **v > c).count();
    Ok(partition_result(values.len(), d, n, p, r))
}

/// The same check for real cyclotomic values, with an integer `d`.
pub fn support_bound_check_cyclotomic(
    ring: &CyclotomicRing,
    values: &[CycInt],
    d: u64,
) -> Result<BoundCheckResult> {
    if values.is_empty() || d < 1 {
        return Err(Error::HypothesisViolated("need nonempty X and d >= 1".into()));
    }
    let sign = |v: &CycInt| {
        ring.sign(v)
            .ok_or_else(|| Error::HypothesisViolated("value is not real".into()))
    };
    let top = ring.integer(d);
    let c = ring.integer(d - 1);
    let minus_one = ring.integer(-1);
    let (mut sum, mut sum_sq) = (ring.zero(), ring.zero());
    let (mut n, mut p, mut r) = (0, 0, 0);
    for v in values {
        if sign(&ring.sub(v, &minus_one))? == Ordering::Less
            || sign(&ring.sub(v, &top))? == Ordering::Greater
        {
            return Err(Error::HypothesisViolated(format!(
                "value {} outside [-1, {d}]",
                ring.format(v, "z")
            )));
        }
        sum = ring.add(&sum, v);
        sum_sq = ring.add(&sum_sq, &ring.mul(v, v));
        match sign(v)? {
            Ordering::Less => n += 1,
            Ordering::Equal => {}
            Ordering::Greater => {
                if sign(&ring.sub(v, &c))? == Ordering::Greater {
                    r += 1;
                } else {
                    p += 1;
                }
            }
        }
    }
    if !sum.is_zero() || sum_sq != ring.integer(values.len() as u64) {
        return Err(Error::HypothesisViolated(format!(
            "mean/variance: sum = {}, sum of squares = {}",
            ring.format(&sum, "z"),
            ring.format(&sum_sq, "z")
        )));
    }
    Ok(partition_result(values.len(), &qi(d as i64), n, p, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn equality_cases() {
        let r = support_bound_check(&ints(&[-1, -1, 1, 1]), &qi(1)).unwrap();
        assert!(r.holds);
        assert_eq!((r.lhs, r.rhs), (qi(4), qi(4)));

        let mut f = ints(&[3, -1, -1, -1]);
        f.extend(ints(&[0; 8]));
        let r = support_bound_check(&f, &qi(3)).unwrap();
        assert!(r.holds);
        assert_eq!((r.lhs, r.rhs), (qi(4), qi(4)));
        assert_eq!(r.witness.as_deref(), Some("N = 3, P = 0, R = 1 at c = 2"));
    }

    #[test]
    fn hypotheses_are_enforced() {
        for (f, d) in [
            (ints(&[-2, 2]), qi(2)),
            (ints(&[1, 1]), qi(1)),
            (ints(&[-1, 1, 0]), qi(1)),
            (ints(&[]), qi(1)),
            (ints(&[-1, 1]), q(1, 2)),
        ] {
            assert!(matches!(
                support_bound_check(&f, &d),
                Err(Error::HypothesisViolated(_))
            ));
        }
    }

    #[test]
    fn cyclotomic_matches_rational() {
        let ring = CyclotomicRing::new(3);
        let mut f: Vec<CycInt> = [3, -1, -1, -1].iter().map(|&x| ring.integer(x)).collect();
        f.extend(std::iter::repeat_n(ring.zero(), 8));
        let r = support_bound_check_cyclotomic(&ring, &f, 3).unwrap();
        assert!(r.holds);
        assert_eq!((r.lhs, r.rhs), (qi(4), qi(4)));
        assert!(support_bound_check_cyclotomic(&ring, &[ring.root(1), ring.root(2)], 1).is_err());
    }
}
