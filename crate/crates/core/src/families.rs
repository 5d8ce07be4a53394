//! Constructions of the named group families, and direct products.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_power, FiniteField};
use crate::error::{Error, Result};
use crate::group::{Group, DEFAULT_ORDER_CAP};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
    Sl2,
    Gl2_3,
    Psl2_7,
    Extraspecial,
    Affine,
    /// Direct product of cyclic groups with the given orders.
    Product,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 10] = [
        FamilyKind::Cyclic,
        FamilyKind::Dihedral,
        FamilyKind::Symmetric,
        FamilyKind::Alternating,
        FamilyKind::Sl2,
        FamilyKind::Gl2_3,
        FamilyKind::Psl2_7,
        FamilyKind::Extraspecial,
        FamilyKind::Affine,
        FamilyKind::Product,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Cyclic => "cyclic",
            FamilyKind::Dihedral => "dihedral",
            FamilyKind::Symmetric => "symmetric",
            FamilyKind::Alternating => "alternating",
            FamilyKind::Sl2 => "sl2",
            FamilyKind::Gl2_3 => "gl2_3",
            FamilyKind::Psl2_7 => "psl2_7",
            FamilyKind::Extraspecial => "extraspecial",
            FamilyKind::Affine => "affine",
            FamilyKind::Product => "product",
        }
    }

    /// Parameter names and the order formula, for `families` listings.
    pub fn describe(self) -> (&'static str, &'static str) {
        match self {
            FamilyKind::Cyclic => ("n", "n"),
            FamilyKind::Dihedral => ("k", "2k"),
            FamilyKind::Symmetric => ("n", "n!"),
            FamilyKind::Alternating => ("n", "n!/2"),
            FamilyKind::Sl2 => ("q (prime power)", "q^3 - q"),
            FamilyKind::Gl2_3 => ("(none)", "48"),
            FamilyKind::Psl2_7 => ("(none)", "168"),
            FamilyKind::Extraspecial => ("p n (p prime)", "p^(2n+1)"),
            FamilyKind::Affine => ("q (prime power)", "q(q-1)"),
            FamilyKind::Product => ("n1 n2 ... (cyclic factor orders)", "n1*n2*..."),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidArgs(format!("unknown family kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub params: Vec<u64>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, params: &[u64]) -> Self {
        FamilySpec {
            kind,
            params: params.to_vec(),
        }
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidParams {
            kind: self.kind.to_string(),
            reason: reason.into(),
        }
    }

    fn single(&self) -> Result<u64> {
        match self.params.as_slice() {
            [n] => Ok(*n),
            _ => Err(self.invalid(format!("expected one parameter, got {:?}", self.params))),
        }
    }

    fn positive(&self) -> Result<u64> {
        let n = self.single()?;
        if n < 1 {
            return Err(self.invalid("n < 1"));
        }
        Ok(n)
    }

    fn prime_power_param(&self) -> Result<u64> {
        let q = self.single()?;
        if prime_power(q).is_none() {
            return Err(self.invalid(format!("{q} is not a prime power")));
        }
        Ok(q)
    }

    fn no_params(&self) -> Result<()> {
        if self.params.is_empty() {
            Ok(())
        } else {
            Err(self.invalid("takes no parameters"))
        }
    }

    /// Checks the parameters and returns the order of the group they describe.
    pub fn expected_order(&self) -> Result<u64> {
        let order = match self.kind {
            FamilyKind::Cyclic => self.positive()?,
            FamilyKind::Dihedral => 2 * self.positive()?,
            FamilyKind::Symmetric => (1..=self.positive()?).product(),
            FamilyKind::Alternating => {
                let n = self.positive()?;
                let f: u64 = (1..=n).product();
                if n >= 2 {
                    f / 2
                } else {
                    1
                }
            }
            FamilyKind::Sl2 => {
                let q = self.prime_power_param()?;
                q * q * q - q
            }
            FamilyKind::Affine => {
                let q = self.prime_power_param()?;
                q * (q - 1)
            }
            FamilyKind::Gl2_3 => {
                self.no_params()?;
                48
            }
            FamilyKind::Psl2_7 => {
                self.no_params()?;
                168
            }
            FamilyKind::Extraspecial => {
                let [p, n] = self.params[..] else {
                    return Err(self.invalid("expected parameters p n"));
                };
                if !is_prime(p) {
                    return Err(self.invalid(format!("{p} is not prime")));
                }
                if n < 1 {
                    return Err(self.invalid("n < 1"));
                }
                p.checked_pow(2 * n as u32 + 1)
                    .ok_or_else(|| self.invalid("order overflows"))?
            }
            FamilyKind::Product => {
                if self.params.is_empty() {
                    return Err(self.invalid("expected at least one factor"));
                }
                if self.params.contains(&0) {
                    return Err(self.invalid("factor order 0"));
                }
                self.params.iter().product()
            }
        };
        Ok(order)
    }

    pub fn default_name(&self) -> String {
        let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        match self.kind {
            FamilyKind::Cyclic => format!("C{}", ps.join("")),
            FamilyKind::Dihedral => format!("D{}", 2 * self.params.first().copied().unwrap_or(0)),
            FamilyKind::Symmetric => format!("S{}", ps.join("")),
            FamilyKind::Alternating => format!("A{}", ps.join("")),
            FamilyKind::Sl2 => format!("SL(2,{})", ps.join("")),
            FamilyKind::Gl2_3 => "GL(2,3)".into(),
            FamilyKind::Psl2_7 => "PSL(2,7)".into(),
            FamilyKind::Extraspecial => format!("Extraspecial({})", ps.join(",")),
            FamilyKind::Affine => format!("AGL(1,{})", ps.join("")),
            FamilyKind::Product => ps
                .iter()
                .map(|p| format!("C{p}"))
                .collect::<Vec<_>>()
                .join(" x "),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(f, "{}({})", self.kind, ps.join(","))
    }
}

pub fn make_family(spec: &FamilySpec) -> Result<Group> {
    make_family_capped(spec, DEFAULT_ORDER_CAP)
}

pub fn make_family_capped(spec: &FamilySpec, cap: usize) -> Result<Group> {
    let expected = spec.expected_order()?;
    if expected > cap as u64 {
        return Err(Error::ClosureExceedsCap { cap });
    }
    let name = spec.default_name();
    let g = match spec.kind {
        FamilyKind::Cyclic => cyclic(spec.params[0] as usize, name)?,
        FamilyKind::Dihedral => dihedral(spec.params[0] as usize, name)?,
        FamilyKind::Symmetric => symmetric(spec.params[0] as usize, name, cap)?,
        FamilyKind::Alternating => alternating(spec.params[0] as usize, name, cap)?,
        FamilyKind::Sl2 => matrix_group(&FiniteField::new(spec.params[0])?, false, name, cap)?,
        FamilyKind::Gl2_3 => matrix_group(&FiniteField::new(3)?, true, name, cap)?,
        FamilyKind::Psl2_7 => {
            let sl = matrix_group(&FiniteField::new(7)?, false, "SL(2,7)".into(), cap)?;
            let z = sl.center();
            sl.quotient(&z)?.0.with_name(name)
        }
        FamilyKind::Extraspecial => {
            extraspecial(spec.params[0] as u32, spec.params[1] as usize, name, cap)?
        }
        FamilyKind::Affine => affine(&FiniteField::new(spec.params[0])?, name, cap)?,
        FamilyKind::Product => {
            let mut acc = Group::trivial();
            for &n in &spec.params {
                acc = direct_product_capped(&acc, &cyclic(n as usize, format!("C{n}"))?, cap)?;
            }
            acc.with_name(name)
        }
    };
    if g.order() as u64 != expected {
        return Err(Error::Inconsistent(format!(
            "{spec} constructed order {}, expected {expected}",
            g.order()
        )));
    }
    Ok(g)
}

fn cyclic(n: usize, name: String) -> Result<Group> {
    Group::from_closure(
        0usize,
        &[1 % n],
        |a, b| (a + b) % n,
        |a| format!("a^{a}"),
        name,
        usize::MAX,
    )
}

/// Elements `r^i s^j` as pairs `(i, j)`.
fn dihedral(k: usize, name: String) -> Result<Group> {
    Group::from_closure(
        (0usize, 0usize),
        &[(1 % k, 0), (0, 1)],
        |&(i, a), &(j, b)| {
            let j = if a == 1 { (k - j) % k } else { j };
            ((i + j) % k, (a + b) % 2)
        },
        |&(i, j)| match j {
            0 => format!("r^{i}"),
            _ => format!("r^{i}s"),
        },
        name,
        usize::MAX,
    )
}

fn symmetric(n: usize, name: String, cap: usize) -> Result<Group> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
    }
    if n >= 3 {
        let cycle: Vec<usize> = (0..n).collect();
        gens.push(Permutation::from_cycles(n, &[&cycle])?);
    }
    Group::from_permutation_generators_capped(&gens, name, cap)
}

fn alternating(n: usize, name: String, cap: usize) -> Result<Group> {
    let gens = (2..n)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]))
        .collect::<Result<Vec<_>>>()?;
    Group::from_permutation_generators_capped(&gens, name, cap)
}

type Mat2 = [u32; 4];

fn mat_mul(f: &FiniteField, a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |x: u32, y: u32, z: u32, w: u32| f.add(f.mul(x, y), f.mul(z, w));
    [
        e(a[0], b[0], a[1], b[2]),
        e(a[0], b[1], a[1], b[3]),
        e(a[2], b[0], a[3], b[2]),
        e(a[2], b[1], a[3], b[3]),
    ]
}

fn mat_label(a: &Mat2) -> String {
    format!("[{} {};{} {}]", a[0], a[1], a[2], a[3])
}

/// SL(2,q), or GL(2,q) when `general` is set. Generated by the elementary
/// transvections over an additive basis of F_q, plus `diag(g, 1)` for GL.
fn matrix_group(f: &FiniteField, general: bool, name: String, cap: usize) -> Result<Group> {
    let mut gens: Vec<Mat2> = Vec::new();
    for b in f.basis() {
        gens.push([1, b, 0, 1]);
        gens.push([1, 0, b, 1]);
    }
    if general {
        gens.push([f.primitive_element(), 0, 0, 1]);
    }
    Group::from_closure([1, 0, 0, 1], &gens, |a, b| mat_mul(f, a, b), mat_label, name, cap)
}

/// `x -> a x + b` as pairs `(a, b)`; composition applies the left factor first.
fn affine(f: &FiniteField, name: String, cap: usize) -> Result<Group> {
    let gens = [(f.primitive_element(), 0u32), (1u32, 1u32)];
    Group::from_closure(
        (1u32, 0u32),
        &gens,
        |&(a1, b1), &(a2, b2)| (f.mul(a2, a1), f.add(f.mul(a2, b1), b2)),
        |&(a, b)| format!("x->{a}x+{b}"),
        name,
        cap,
    )
}

/// Heisenberg-type group on `(a, b, c)` with `a, b` in F_p^n, `c` in F_p and
/// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b')`. Extraspecial of order
/// p^(2n+1); for p = 2 it is the central product of n copies of D8.
fn extraspecial(p: u32, n: usize, name: String, cap: usize) -> Result<Group> {
    let zero = vec![0u32; 2 * n + 1];
    let mut gens = Vec::new();
    for i in 0..2 * n {
        let mut g = zero.clone();
        g[i] = 1;
        gens.push(g);
    }
    Group::from_closure(
        zero,
        &gens,
        |x, y| {
            let mut out: Vec<u32> = x.iter().zip(y).map(|(a, b)| (a + b) % p).collect();
            let dot: u32 = (0..n).map(|i| x[i] * y[n + i]).sum();
            out[2 * n] = (out[2 * n] + dot) % p;
            out
        },
        |x| format!("{x:?}"),
        name,
        cap,
    )
}

pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    direct_product_capped(g, h, DEFAULT_ORDER_CAP)
}

/// Element `(a, b)` is stored at index `a * |H| + b`.
pub fn direct_product_capped(g: &Group, h: &Group, cap: usize) -> Result<Group> {
    let (m, n) = (g.order(), h.order());
    if m * n > cap {
        return Err(Error::ClosureExceedsCap { cap });
    }
    let size = m * n;
    let mut table = Vec::with_capacity(size * size);
    for x in 0..size {
        let (a, b) = (x / n, x % n);
        for y in 0..size {
            table.push((g.mul(a, y / n) * n + h.mul(b, y % n)) as u32);
        }
    }
    let labels = (0..size)
        .map(|x| format!("({}, {})", g.label(x / n), h.label(x % n)))
        .collect();
    Group::from_flat(table, labels, format!("{} x {}", g.name(), h.name()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(kind: FamilyKind, params: &[u64]) -> usize {
        make_family(&FamilySpec::new(kind, params)).unwrap().order()
    }

    #[test]
    fn documented_orders() {
        assert_eq!(order(FamilyKind::Cyclic, &[1]), 1);
        assert_eq!(order(FamilyKind::Cyclic, &[12]), 12);
        assert_eq!(order(FamilyKind::Dihedral, &[3]), 6);
        assert_eq!(order(FamilyKind::Dihedral, &[1]), 2);
        assert_eq!(order(FamilyKind::Symmetric, &[4]), 24);
        assert_eq!(order(FamilyKind::Symmetric, &[1]), 1);
        assert_eq!(order(FamilyKind::Alternating, &[5]), 60);
        assert_eq!(order(FamilyKind::Alternating, &[2]), 1);
        assert_eq!(order(FamilyKind::Sl2, &[2]), 6);
        assert_eq!(order(FamilyKind::Sl2, &[4]), 60);
        assert_eq!(order(FamilyKind::Sl2, &[5]), 120);
        assert_eq!(order(FamilyKind::Sl2, &[9]), 720);
        assert_eq!(order(FamilyKind::Affine, &[8]), 56);
        assert_eq!(order(FamilyKind::Affine, &[9]), 72);
        assert_eq!(order(FamilyKind::Extraspecial, &[3, 1]), 27);
        assert_eq!(order(FamilyKind::Extraspecial, &[2, 2]), 32);
        assert_eq!(order(FamilyKind::Gl2_3, &[]), 48);
        assert_eq!(order(FamilyKind::Psl2_7, &[]), 168);
        assert_eq!(order(FamilyKind::Product, &[2, 2, 3]), 12);
    }

    #[test]
    fn invalid_params() {
        let bad = [
            FamilySpec::new(FamilyKind::Sl2, &[6]),
            FamilySpec::new(FamilyKind::Affine, &[1]),
            FamilySpec::new(FamilyKind::Extraspecial, &[4, 1]),
            FamilySpec::new(FamilyKind::Extraspecial, &[3, 0]),
            FamilySpec::new(FamilyKind::Cyclic, &[0]),
            FamilySpec::new(FamilyKind::Dihedral, &[]),
            FamilySpec::new(FamilyKind::Gl2_3, &[3]),
        ];
        for spec in bad {
            assert!(
                matches!(make_family(&spec), Err(Error::InvalidParams { .. })),
                "{spec}"
            );
        }
    }

    #[test]
    fn extraspecial_two_is_dihedral_type() {
        // D8 has 5 involutions, Q8 only 1
        let g = make_family(&FamilySpec::new(FamilyKind::Extraspecial, &[2, 1])).unwrap();
        let involutions = (1..8).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions, 5);
        assert_eq!(g.center().order(), 2);
        assert_eq!(g.derived_subgroup().order(), 2);
    }

    #[test]
    fn heisenberg_three_has_exponent_three() {
        let g = make_family(&FamilySpec::new(FamilyKind::Extraspecial, &[3, 1])).unwrap();
        assert_eq!(g.exponent(), 3);
        assert_eq!(g.center().order(), 3);
    }

    #[test]
    fn products() {
        let c2 = make_family(&FamilySpec::new(FamilyKind::Cyclic, &[2])).unwrap();
        let c3 = make_family(&FamilySpec::new(FamilyKind::Cyclic, &[3])).unwrap();
        let d6 = make_family(&FamilySpec::new(FamilyKind::Dihedral, &[3])).unwrap();
        let p = direct_product(&c2, &c3).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        assert_eq!(direct_product(&d6, &c2).unwrap().order(), 12);
        assert!(direct_product_capped(&d6, &d6, 30).is_err());
    }

    #[test]
    fn kind_names_roundtrip() {
        for k in FamilyKind::ALL {
            assert_eq!(k.as_str().parse::<FamilyKind>().unwrap(), k);
        }
        assert!("quaternion".parse::<FamilyKind>().is_err());
    }
}
