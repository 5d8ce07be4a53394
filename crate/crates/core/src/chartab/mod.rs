//! Irreducible characters by the Burnside–Dixon method.
//!
//! The class sums of `G` span the centre of the group algebra, and each
//! irreducible character `chi` gives a common eigenvector of the class-sum
//! multiplication matrices, with eigenvalues `omega_j = |C_j| chi(g_j) / chi(1)`.
//! Working modulo a prime `p = 1 (mod exp G)` with `p > 2 sqrt|G|`, the
//! common eigenvectors are found by splitting F_p^k with one class matrix at
//! a time. The degree follows from the first orthogonality relation
//! `chi(1)^2 sum_j omega_j omega_j* / |C_j| = |G|`, and lifts uniquely from
//! F_p because two candidate degrees differ by less than `p`. Character
//! values are recovered from the eigenvalue multiplicities of `rho(g)`,
//! which are integers in `[0, chi(1)]` and so also lift uniquely.

mod numeric;

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::{inv_mod, isqrt, pow_mod, primitive_root, is_prime};
use crate::classes::{class_matrix, conjugacy_classes, ClassPartition};
use crate::cyclotomic::{CycInt, CyclotomicRing};
use crate::error::{Error, Result};
use crate::group::{ElementIndex, Group};
use crate::modp::{charpoly, nullspace, roots, rref, Fp, Mat};

pub use numeric::{degree_oracle_numeric, DEFAULT_NUMERIC_CAP};

pub const DEFAULT_TABLE_CAP: usize = 2048;

/// Primes are searched below this bound.
pub const PRIME_SEARCH_LIMIT: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DixonParams {
    pub exponent: u64,
    pub prime: u64,
    /// Fixed primitive `exponent`-th root of unity modulo `prime`.
    pub root: u64,
}

impl DixonParams {
    /// Smallest prime `p = 1 (mod exponent)` with `p^2 > 4 * order`.
    pub fn choose(order: usize, exponent: u64) -> Result<Self> {
        Self::choose_below(order, exponent, PRIME_SEARCH_LIMIT)
    }

    pub fn choose_below(order: usize, exponent: u64, limit: u64) -> Result<Self> {
        let bound = 4 * order as u64;
        let mut p = exponent + 1;
        while p < limit {
            if p * p > bound && is_prime(p) {
                let g = primitive_root(p);
                let root = pow_mod(g, (p - 1) / exponent, p);
                return Ok(DixonParams {
                    exponent,
                    prime: p,
                    root,
                });
            }
            p += exponent;
        }
        Err(Error::NoPrimeFound { exponent, order })
    }
}

/// Irreducible degrees with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeMultiset {
    counts: BTreeMap<u64, u64>,
}

impl DegreeMultiset {
    pub fn from_degrees(degrees: impl IntoIterator<Item = u64>) -> Self {
        let mut counts = BTreeMap::new();
        for d in degrees {
            *counts.entry(d).or_insert(0) += 1;
        }
        DegreeMultiset { counts }
    }

    /// `|Irr_n(G)|`
    pub fn count(&self, n: u64) -> u64 {
        self.counts.get(&n).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    /// Number of irreducible characters, `k(G)`.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn sum_of_powers(&self, power: u32) -> u64 {
        self.counts.iter().map(|(d, c)| d.pow(power) * c).sum()
    }

    /// Distinct degrees, ascending.
    pub fn cd_set(&self) -> Vec<u64> {
        self.counts.keys().copied().collect()
    }

    /// All degrees with multiplicity, ascending.
    pub fn degrees(&self) -> Vec<u64> {
        self.counts
            .iter()
            .flat_map(|(&d, &c)| std::iter::repeat_n(d, c as usize))
            .collect()
    }

    pub fn maxdeg(&self) -> u64 {
        self.counts.keys().next_back().copied().unwrap_or(1)
    }

    /// Smallest degree greater than one; `None` for abelian groups.
    pub fn mindeg(&self) -> Option<u64> {
        self.counts.keys().copied().find(|&d| d >= 2)
    }
}

impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|(d, c)| format!("{d}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// One irreducible character as seen modulo p: central character and degree.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ModularCharacter {
    omega: Vec<u64>,
    degree: u64,
}

/// Common eigenvectors of the class matrices over F_p, each normalized so
/// that the identity-class coordinate is 1.
fn central_characters(
    g: &Group,
    part: &ClassPartition,
    params: &DixonParams,
) -> Result<Vec<Vec<u64>>> {
    let f = Fp::new(params.prime);
    let k = part.k();
    // each space is a basis in reduced row echelon form, with its pivots
    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect();
    let mut spaces: Vec<Space> = vec![(identity, (0..k).collect())];

    for j in 1..k {
        if spaces.iter().all(|(b, _)| b.len() == 1) {
            break;
        }
        let m: Vec<u64> = class_matrix(g, part, j)
            .into_iter()
            .map(|x| x % params.prime)
            .collect();
        let mut next = Vec::with_capacity(spaces.len());
        for (basis, pivots) in spaces {
            if basis.len() == 1 {
                next.push((basis, pivots));
                continue;
            }
            next.extend(split_space(f, &m, k, basis, pivots)?);
        }
        spaces = next;
    }
    if let Some((b, _)) = spaces.iter().find(|(b, _)| b.len() > 1) {
        return Err(Error::DegenerateEigenspace(b.len()));
    }
    spaces
        .into_iter()
        .map(|(mut b, _)| {
            let v = b.pop().unwrap();
            if v[0] == 0 {
                return Err(Error::Inconsistent(
                    "common eigenvector vanishes on the identity class".into(),
                ));
            }
            let inv = f.inv(v[0]);
            Ok(v.into_iter().map(|x| f.mul(x, inv)).collect())
        })
        .collect()
}

/// A subspace as RREF basis rows with their pivot columns.
type Space = (Vec<Vec<u64>>, Vec<usize>);

/// Splits an invariant subspace into eigenspaces of the class matrix `m`.
fn split_space(
    f: Fp,
    m: &[u64],
    k: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
) -> Result<Vec<Space>> {
    let r = basis.len();
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|t| {
                    let row = &m[t * k..(t + 1) * k];
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
                })
                .collect()
        })
        .collect();
    // restriction to the subspace, read off at the pivot coordinates
    let mut restricted = Mat::zeros(r);
    for (i, img) in images.iter().enumerate() {
        for (l, &pc) in pivots.iter().enumerate() {
            restricted.set(l, i, img[pc]);
        }
    }
    let eigenvalues = roots(f, &charpoly(f, &restricted));
    if eigenvalues.len() == 1 {
        return Ok(vec![(basis, pivots)]);
    }
    let mut out = Vec::with_capacity(eigenvalues.len());
    let mut dims = 0;
    for lambda in eigenvalues {
        let mut shifted = restricted.clone();
        for i in 0..r {
            shifted.set(i, i, f.sub(shifted.at(i, i), lambda));
        }
        let mut rows: Vec<Vec<u64>> = nullspace(f, &shifted)
            .into_iter()
            .map(|c| {
                let mut w = vec![0u64; k];
                for (ci, b) in c.iter().zip(&basis) {
                    if *ci == 0 {
                        continue;
                    }
                    for (wt, &bt) in w.iter_mut().zip(b) {
                        *wt = f.add(*wt, f.mul(*ci, bt));
                    }
                }
                w
            })
            .collect();
        let piv = rref(f, &mut rows, k);
        dims += rows.len();
        out.push((rows, piv));
    }
    if dims != r {
        return Err(Error::DegenerateEigenspace(r));
    }
    Ok(out)
}

fn modular_characters(
    g: &Group,
    part: &ClassPartition,
    params: &DixonParams,
) -> Result<Vec<ModularCharacter>> {
    let f = Fp::new(params.prime);
    let order = g.order() as u64;
    let sizes = part.sizes();
    let size_inv: Vec<u64> = sizes
        .iter()
        .map(|&s| inv_mod(s as u64 % params.prime, params.prime))
        .collect();
    let max_degree = isqrt(order);
    let mut chars = Vec::new();
    for omega in central_characters(g, part, params)? {
        let mut norm = 0u64;
        for c in 0..part.k() {
            let term = f.mul(f.mul(omega[c], omega[part.inverse_class(c)]), size_inv[c]);
            norm = f.add(norm, term);
        }
        if norm == 0 {
            return Err(Error::Inconsistent("zero norm for a central character".into()));
        }
        let d_squared = f.mul(order % params.prime, f.inv(norm));
        let degree = (1..=max_degree)
            .find(|&d| d * d % params.prime == d_squared)
            .ok_or_else(|| Error::Inconsistent("degree does not lift".into()))?;
        if !order.is_multiple_of(degree) {
            return Err(Error::Inconsistent(format!(
                "lifted degree {degree} does not divide {order}"
            )));
        }
        chars.push(ModularCharacter { omega, degree });
    }
    let trivial: Vec<u64> = sizes.iter().map(|&s| s as u64 % params.prime).collect();
    chars.sort_by(|a, b| {
        (a.degree, a.omega != trivial, &a.omega).cmp(&(b.degree, b.omega != trivial, &b.omega))
    });
    Ok(chars)
}

fn check_degrees(g: &Group, part: &ClassPartition, degrees: &DegreeMultiset) -> Result<()> {
    let order = g.order() as u64;
    if degrees.sum_of_powers(2) != order {
        return Err(Error::Inconsistent(format!(
            "sum of squared degrees {} != {order}",
            degrees.sum_of_powers(2)
        )));
    }
    let linear = order / g.derived_subgroup().order() as u64;
    if degrees.count(1) != linear {
        return Err(Error::Inconsistent(format!(
            "{} linear characters but [G:G'] = {linear}",
            degrees.count(1)
        )));
    }
    if degrees.total() != part.k() as u64 {
        return Err(Error::Inconsistent(format!(
            "{} characters but {} classes",
            degrees.total(),
            part.k()
        )));
    }
    Ok(())
}

pub fn dixon_degrees(g: &Group) -> Result<DegreeMultiset> {
    let part = conjugacy_classes(g);
    dixon_degrees_with(g, &part)
}

pub fn dixon_degrees_with(g: &Group, part: &ClassPartition) -> Result<DegreeMultiset> {
    let degrees = if g.is_abelian() {
        DegreeMultiset::from_degrees(std::iter::repeat_n(1, g.order()))
    } else {
        let params = DixonParams::choose(g.order(), g.exponent())?;
        DegreeMultiset::from_degrees(
            modular_characters(g, part, &params)?
                .into_iter()
                .map(|c| c.degree),
        )
    };
    check_degrees(g, part, &degrees)?;
    Ok(degrees)
}

/// Exact character table. Rows are characters sorted by degree (trivial
/// first), columns follow the class partition.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    order: usize,
    params: DixonParams,
    ring: CyclotomicRing,
    part: ClassPartition,
    degrees: Vec<u64>,
    values: Vec<Vec<CycInt>>,
}

impl CharacterTable {
    pub fn params(&self) -> &DixonParams {
        &self.params
    }

    pub fn ring(&self) -> &CyclotomicRing {
        &self.ring
    }

    pub fn classes(&self) -> &ClassPartition {
        &self.part
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree_multiset(&self) -> DegreeMultiset {
        DegreeMultiset::from_degrees(self.degrees.iter().copied())
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }

    pub fn value(&self, row: usize, class: usize) -> &CycInt {
        &self.values[row][class]
    }

    pub fn row(&self, row: usize) -> &[CycInt] {
        &self.values[row]
    }

    /// `(1/|G|) sum_x a(x) conj(b(x))` for class functions given per class.
    /// Returns the exact value when it is rational.
    pub fn inner_product(&self, a: &[CycInt], b: &[CycInt]) -> Option<crate::rational::Q> {
        let ring = &self.ring;
        let mut acc = ring.zero();
        for c in 0..self.part.k() {
            let term = ring.mul(&a[c], &ring.conj(&b[c]));
            acc = ring.add(&acc, &ring.scale(&term, &(self.part.sizes()[c] as u64).into()));
        }
        acc.as_integer()
            .map(|n| crate::rational::Q::new(n, (self.order as u64).into()))
    }
}

pub fn character_table(g: &Group) -> Result<CharacterTable> {
    character_table_capped(g, DEFAULT_TABLE_CAP)
}

pub fn character_table_capped(g: &Group, cap: usize) -> Result<CharacterTable> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            order: g.order(),
            cap,
        });
    }
    let part = conjugacy_classes(g);
    let exponent = g.exponent();
    let params = DixonParams::choose(g.order(), exponent)?;
    let chars = modular_characters(g, &part, &params)?;
    let e = exponent as usize;
    let f = Fp::new(params.prime);
    let ring = CyclotomicRing::new(e);
    let k = part.k();

    // power classes: powers[c][i] = class of rep_c^i, for i < order(rep_c)
    let powers: Vec<Vec<usize>> = part
        .reps()
        .iter()
        .map(|&r| power_classes(g, &part, r))
        .collect();
    let size_inv: Vec<u64> = part
        .sizes()
        .iter()
        .map(|&s| f.inv(s as u64 % f.p))
        .collect();

    // raw[x][c] = sparse eigenvalue multiplicities: (exponent of zeta_e, count)
    let mut raw: Vec<Vec<Vec<(usize, i64)>>> = Vec::with_capacity(chars.len());
    for ch in &chars {
        let theta: Vec<u64> = (0..k)
            .map(|c| f.mul(f.mul(ch.omega[c], ch.degree % f.p), size_inv[c]))
            .collect();
        let mut row = Vec::with_capacity(k);
        for pc in &powers {
            let o = pc.len();
            let w = pow_mod(params.root, (e / o) as u64, f.p);
            let w_inv = f.inv(w);
            let o_inv = f.inv(o as u64 % f.p);
            let mut entries = Vec::new();
            let mut total = 0u64;
            for t in 0..o {
                // m_t = (1/o) sum_i theta(g^i) w^(-i t)
                let step = pow_mod(w_inv, t as u64, f.p);
                let mut acc = 0u64;
                let mut wpow = 1u64;
                for &cls in pc {
                    acc = f.add(acc, f.mul(theta[cls], wpow));
                    wpow = f.mul(wpow, step);
                }
                let mult = f.mul(acc, o_inv);
                if mult > ch.degree {
                    return Err(Error::Inconsistent(format!(
                        "eigenvalue multiplicity {mult} exceeds degree {}",
                        ch.degree
                    )));
                }
                total += mult;
                if mult > 0 {
                    entries.push((t * (e / o), mult as i64));
                }
            }
            if total != ch.degree {
                return Err(Error::Inconsistent("multiplicities do not sum to the degree".into()));
            }
            row.push(entries);
        }
        raw.push(row);
    }

    check_orthogonality(&ring, &part, g.order(), &raw)?;

    let values: Vec<Vec<CycInt>> = raw
        .iter()
        .map(|row| {
            row.iter()
                .map(|entries| {
                    let mut v = vec![0i64; e];
                    for &(j, m) in entries {
                        v[j] += m;
                    }
                    ring.from_exponents(&v)
                })
                .collect()
        })
        .collect();
    let degrees: Vec<u64> = chars.iter().map(|c| c.degree).collect();

    let one = ring.integer(1);
    if values[0].iter().any(|v| *v != one) {
        return Err(Error::Inconsistent("first row is not the trivial character".into()));
    }
    for (row, &d) in values.iter().zip(&degrees) {
        if row[0] != ring.integer(d) {
            return Err(Error::Inconsistent("identity column differs from degrees".into()));
        }
    }
    let table = CharacterTable {
        order: g.order(),
        params,
        ring,
        part,
        degrees,
        values,
    };
    check_degrees(g, &table.part, &table.degree_multiset())?;
    Ok(table)
}

fn power_classes(g: &Group, part: &ClassPartition, r: ElementIndex) -> Vec<usize> {
    let mut out = vec![0];
    let mut x = r;
    while x != 0 {
        out.push(part.class_of(x));
        x = g.mul(x, r);
    }
    out
}

/// Exact first orthogonality relation, accumulated in Z[x]/(x^e - 1) and
/// reduced once per pair.
fn check_orthogonality(
    ring: &CyclotomicRing,
    part: &ClassPartition,
    order: usize,
    raw: &[Vec<Vec<(usize, i64)>>],
) -> Result<()> {
    let e = ring.order();
    for a in 0..raw.len() {
        for b in a..raw.len() {
            let mut acc = vec![0i64; e];
            for c in 0..part.k() {
                let size = part.sizes()[c] as i64;
                for &(ea, ma) in &raw[a][c] {
                    for &(eb, mb) in &raw[b][part.inverse_class(c)] {
                        acc[(ea + eb) % e] += size * ma * mb;
                    }
                }
            }
            let expected = if a == b { order as i64 } else { 0 };
            if ring.from_exponents(&acc) != ring.integer(expected) {
                return Err(Error::Inconsistent(format!(
                    "rows {a} and {b} are not orthogonal"
                )));
            }
        }
    }
    Ok(())
}

/// Classes and elements where a character is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub classes: Vec<usize>,
    pub elements: Vec<ElementIndex>,
}

pub fn character_support(tab: &CharacterTable, row: usize) -> Result<Support> {
    if row >= tab.k() {
        return Err(Error::InvalidArgs(format!("row {row} out of range")));
    }
    let classes: Vec<usize> = (0..tab.k())
        .filter(|&c| !tab.value(row, c).is_zero())
        .collect();
    let mut elements: Vec<ElementIndex> = classes
        .iter()
        .flat_map(|&c| tab.classes().members(c).iter().copied())
        .collect();
    elements.sort_unstable();
    Ok(Support { classes, elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_family, FamilyKind, FamilySpec};
    use crate::rational::q;

    fn fam(kind: FamilyKind, params: &[u64]) -> Group {
        make_family(&FamilySpec::new(kind, params)).unwrap()
    }

    fn degrees(kind: FamilyKind, params: &[u64]) -> Vec<u64> {
        dixon_degrees(&fam(kind, params)).unwrap().degrees()
    }

    #[test]
    fn prime_choice() {
        let p = DixonParams::choose(60, 30).unwrap();
        assert_eq!(p.prime, 31);
        assert_eq!(pow_mod(p.root, 30, 31), 1);
        assert!((1..30).all(|i| pow_mod(p.root, i, 31) != 1));
        // p must exceed 2 sqrt|G|: for |G| = 3600, e = 30 the first candidate is 151
        assert_eq!(DixonParams::choose(3600, 30).unwrap().prime, 151);
        assert!(matches!(
            DixonParams::choose_below(60, 30, 31),
            Err(Error::NoPrimeFound { .. })
        ));
    }

    #[test]
    fn known_degree_multisets() {
        assert_eq!(degrees(FamilyKind::Alternating, &[5]), vec![1, 3, 3, 4, 5]);
        assert_eq!(degrees(FamilyKind::Sl2, &[5]), vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
        assert_eq!(degrees(FamilyKind::Symmetric, &[4]), vec![1, 1, 2, 3, 3]);
        assert_eq!(degrees(FamilyKind::Alternating, &[4]), vec![1, 1, 1, 3]);
        assert_eq!(degrees(FamilyKind::Gl2_3, &[]), vec![1, 1, 2, 2, 2, 3, 3, 4]);
        assert_eq!(degrees(FamilyKind::Psl2_7, &[]), vec![1, 3, 3, 6, 7, 8]);
        assert_eq!(degrees(FamilyKind::Cyclic, &[7]), vec![1; 7]);
    }

    #[test]
    fn c2_table() {
        let t = character_table(&fam(FamilyKind::Cyclic, &[2])).unwrap();
        let r = t.ring();
        assert_eq!(t.value(0, 1), &r.integer(1));
        assert_eq!(t.value(1, 0), &r.integer(1));
        assert_eq!(t.value(1, 1), &r.integer(-1));
    }

    #[test]
    fn s3_table() {
        let g = fam(FamilyKind::Symmetric, &[3]);
        let t = character_table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        let transp = (0..3).find(|&c| t.classes().sizes()[c] == 3).unwrap();
        assert!(t.value(2, transp).is_zero());
        let s = character_support(&t, 2).unwrap();
        assert_eq!(s.elements.len(), 3);
        assert_eq!(character_support(&t, 0).unwrap().classes, vec![0, 1, 2]);
        assert!(character_support(&t, 3).is_err());
    }

    #[test]
    fn c4_table_uses_powers_of_i() {
        let t = character_table(&fam(FamilyKind::Cyclic, &[4])).unwrap();
        let r = t.ring();
        let i = r.root(1);
        let minus_i = r.root(3);
        let gen_values: Vec<_> = (0..4).map(|row| t.value(row, 1).clone()).collect();
        assert!(gen_values.contains(&i));
        assert!(gen_values.contains(&minus_i));
        assert!(gen_values.contains(&r.integer(-1)));
    }

    #[test]
    fn degree_two_character_inner_products() {
        let g = fam(FamilyKind::Sl2, &[3]);
        let t = character_table(&g).unwrap();
        for row in 0..t.k() {
            assert_eq!(t.inner_product(t.row(row), t.row(row)), Some(q(1, 1)));
        }
        assert_eq!(t.inner_product(t.row(0), t.row(1)), Some(q(0, 1)));
    }

    #[test]
    fn table_cap() {
        let g = fam(FamilyKind::Alternating, &[5]);
        assert!(matches!(
            character_table_capped(&g, 59),
            Err(Error::CapExceeded { order: 60, cap: 59 })
        ));
    }
}
