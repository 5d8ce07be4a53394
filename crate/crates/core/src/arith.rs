//! Integer number theory and small finite fields.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` when `q = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of the multiplicative group of the prime field F_p.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
        .expect("prime field has a primitive root")
}

/// The finite field with `p^k` elements. An element is encoded as the integer
/// whose base-`p` digits are its coefficients in the polynomial basis.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    k: u32,
    size: usize,
    modulus: Vec<u64>,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidParams {
            kind: "field".into(),
            reason: format!("{q} is not a prime power"),
        })?;
        if q > 1 << 12 {
            return Err(Error::InvalidParams {
                kind: "field".into(),
                reason: format!("field of order {q} is too large for table arithmetic"),
            });
        }
        let modulus = least_irreducible(p, k as usize);
        let size = q as usize;
        let digits = |x: usize| -> Vec<u64> {
            let mut v = vec![0; k as usize];
            let mut x = x as u64;
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let encode = |v: &[u64]| -> u32 {
            v.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
        };
        let mut add = vec![0u32; size * size];
        let mut mul = vec![0u32; size * size];
        for a in 0..size {
            let da = digits(a);
            for b in 0..size {
                let db = digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * size + b] = encode(&sum);
                let prod = poly_mulmod(&da, &db, &modulus, p);
                mul[a * size + b] = encode(&prod);
            }
        }
        Ok(FiniteField {
            p,
            k,
            size,
            modulus,
            add,
            mul,
        })
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Monic defining polynomial, low-order coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.size as u32)
            .find(|&b| self.add(a, b) == 0)
            .expect("additive inverse")
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (1..self.size as u32).find(|&b| self.mul(a, b) == 1)
    }

    /// Polynomial basis 1, x, ..., x^(k-1) over the prime field.
    pub fn basis(&self) -> Vec<u32> {
        (0..self.k).map(|i| self.p.pow(i) as u32).collect()
    }

    /// Least generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        let n = self.size as u64 - 1;
        let factors = prime_factors(n);
        (1..self.size as u32)
            .find(|&g| factors.iter().all(|&f| self.pow(g, n / f) != 1))
            .expect("finite field has a primitive element")
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
        }
    }
    prod.truncate(k);
    prod
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let c = *r.last().unwrap() * lead_inv % p;
        let shift = r.len() - 1 - db;
        for (i, &m) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * m % p) % p;
        }
        r.pop();
    }
    r
}

/// Monic polynomials of degree `deg` in lexicographic order of their
/// lower coefficients read as a base-`p` integer.
fn monic_polys(p: u64, deg: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(deg as u32);
    (0..count).map(move |mut code| {
        let mut v = vec![0u64; deg + 1];
        for c in v.iter_mut().take(deg) {
            *c = code % p;
            code /= p;
        }
        v[deg] = 1;
        v
    })
}

/// Lexicographically least monic irreducible polynomial of degree `k` over F_p.
pub fn least_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    monic_polys(p, k)
        .find(|f| {
            (1..=k / 2).all(|d| {
                monic_polys(p, d).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0))
            })
        })
        .expect("irreducible polynomials exist in every degree")
}
