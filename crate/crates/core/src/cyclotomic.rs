//! Exact arithmetic in Z[zeta_e], with elements reduced modulo the e-th
//! cyclotomic polynomial so that zero has a unique representation.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    coeffs: Vec<BigInt>,
}

impl CycInt {
    /// Coefficients in the power basis `1, zeta, ..., zeta^(phi(e)-1)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as an integer, when it is rational.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_default())
        } else {
            None
        }
    }
}

/// The ring Z[x]/(Phi_e(x)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicRing {
    e: usize,
    /// Monic Phi_e, low-order coefficient first.
    modulus: Vec<i64>,
}

impl CyclotomicRing {
    pub fn new(e: usize) -> Self {
        assert!(e >= 1);
        CyclotomicRing {
            e,
            modulus: cyclotomic_polynomial(e),
        }
    }

    pub fn order(&self) -> usize {
        self.e
    }

    /// Euler phi of the order: the rank of the ring.
    pub fn rank(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub fn zero(&self) -> CycInt {
        CycInt {
            coeffs: vec![BigInt::zero(); self.rank()],
        }
    }

    pub fn integer(&self, n: impl Into<BigInt>) -> CycInt {
        let mut z = self.zero();
        z.coeffs[0] = n.into();
        z
    }

    /// `zeta^k`
    pub fn root(&self, k: usize) -> CycInt {
        let mut v = vec![0i64; self.e];
        v[k % self.e] = 1;
        self.from_exponents(&v)
    }

    /// Reduces `sum_j v[j] zeta^j` for a polynomial of any length.
    pub fn reduce(&self, mut v: Vec<BigInt>) -> CycInt {
        let r = self.rank();
        for deg in (r..v.len()).rev() {
            let c = std::mem::take(&mut v[deg]);
            if c.is_zero() {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate().take(r) {
                if m != 0 {
                    v[deg - r + i] -= &c * m;
                }
            }
        }
        v.resize(r, BigInt::zero());
        CycInt { coeffs: v }
    }

    pub fn from_exponents(&self, v: &[i64]) -> CycInt {
        self.reduce(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn add(&self, a: &CycInt, b: &CycInt) -> CycInt {
        CycInt {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &CycInt, b: &CycInt) -> CycInt {
        CycInt {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, a: &CycInt, s: &BigInt) -> CycInt {
        CycInt {
            coeffs: a.coeffs.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul(&self, a: &CycInt, b: &CycInt) -> CycInt {
        let r = self.rank();
        let mut prod = vec![BigInt::zero(); 2 * r];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    /// Complex conjugate, `zeta -> zeta^-1`.
    pub fn conj(&self, a: &CycInt) -> CycInt {
        let mut v = vec![BigInt::zero(); self.e];
        for (j, c) in a.coeffs.iter().enumerate() {
            v[(self.e - j) % self.e] += c;
        }
        self.reduce(v)
    }

    pub fn to_complex(&self, a: &CycInt) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in a.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * PI * j as f64 / self.e as f64;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        (re, im)
    }

    pub fn is_real(&self, a: &CycInt) -> bool {
        self.conj(a) == *a
    }

    /// Exact sign of a real element; `None` if `a` is not real.
    ///
    /// A nonzero real algebraic integer has norm at least 1 down to the
    /// maximal real subfield, whose degree is at most `rank / 2`, and every
    /// conjugate is bounded by the coefficient 1-norm `b`, so
    /// `|a| >= b^(1 - rank/2)`. The floating-point estimate is only trusted
    /// when its error is well below that separation.
    pub fn sign(&self, a: &CycInt) -> Option<Ordering> {
        if !self.is_real(a) {
            return None;
        }
        if let Some(n) = a.as_integer() {
            return Some(n.cmp(&BigInt::zero()));
        }
        let b = a
            .coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .sum::<f64>()
            .max(1.0);
        let separation = b.powi(1 - (self.rank() / 2).max(1) as i32);
        let error = 1e-13 * b * self.rank() as f64;
        assert!(
            separation > 4.0 * error,
            "real cyclotomic integer too large for an exact sign test"
        );
        let (re, _) = self.to_complex(a);
        Some(if re > 0.0 { Ordering::Greater } else { Ordering::Less })
    }

    /// Renders as an integer combination of powers of `zeta` (`z` with
    /// `ascii`), e.g. `-1 - z^2 + 2z^3`.
    pub fn format(&self, a: &CycInt, symbol: &str) -> String {
        let mut out = String::new();
        for (j, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match j {
                0 => String::new(),
                1 => symbol.to_string(),
                _ => format!("{symbol}^{j}"),
            };
            if j == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&power);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd] / den[dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Phi_n as `(x^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut known: Vec<(usize, Vec<i64>)> = Vec::with_capacity(divisors.len());
    for &m in &divisors {
        let mut num = vec![0i64; m + 1];
        num[0] = -1;
        num[m] = 1;
        for (d, phi_d) in &known {
            if m % d == 0 {
                num = poly_div_exact(&num, phi_d);
            }
        }
        known.push((m, num));
    }
    known.pop().unwrap().1
}
