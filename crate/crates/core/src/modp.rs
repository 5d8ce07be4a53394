//! Dense linear algebra over a prime field F_p with p < 2^32.

use crate::arith::inv_mod;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p < 1 << 32, "modulus too large for u64 products");
        Fp { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(self, a: u64) -> u64 {
        inv_mod(a, self.p)
    }

    pub fn neg(self, a: u64) -> u64 {
        self.sub(0, a)
    }

    pub fn reduce_signed(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
}

/// Square matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub n: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Mat {
            n,
            data: vec![0; n * n],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.n + j] = v;
    }
}

/// Characteristic polynomial `det(X I - A)`, low-order coefficient first,
/// via reduction to upper Hessenberg form.
pub fn charpoly(f: Fp, a: &Mat) -> Vec<u64> {
    let n = a.n;
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| h.at(i, m - 1) != 0) else {
            continue;
        };
        if piv != m {
            for j in 0..n {
                h.data.swap(piv * n + j, m * n + j);
            }
            for i in 0..n {
                h.data.swap(i * n + piv, i * n + m);
            }
        }
        let t_inv = f.inv(h.at(m, m - 1));
        for i in m + 1..n {
            let u = f.mul(h.at(i, m - 1), t_inv);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let v = f.sub(h.at(i, j), f.mul(u, h.at(m, j)));
                h.set(i, j, v);
            }
            for j in 0..n {
                let v = f.add(h.at(j, m), f.mul(u, h.at(j, i)));
                h.set(j, m, v);
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut pm = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            pm[d + 1] = f.add(pm[d + 1], c);
            pm[d] = f.sub(pm[d], f.mul(h.at(m - 1, m - 1), c));
        }
        let mut t = 1u64;
        for i in 1..m {
            t = f.mul(t, h.at(m - i, m - i - 1));
            let coef = f.mul(t, h.at(m - i - 1, m - 1));
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[m - i - 1].iter().enumerate() {
                pm[d] = f.sub(pm[d], f.mul(coef, c));
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

pub fn eval_poly(f: Fp, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Roots in F_p by exhaustive evaluation, ascending.
pub fn roots(f: Fp, poly: &[u64]) -> Vec<u64> {
    (0..f.p).filter(|&x| eval_poly(f, poly, x) == 0).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(f: Fp, rows: &mut Vec<Vec<u64>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                let pivot_row = rows[r].clone();
                for (x, &y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(f: Fp, a: &Mat) -> Vec<Vec<u64>> {
    let n = a.n;
    let mut rows: Vec<Vec<u64>> = (0..n).map(|i| a.data[i * n..(i + 1) * n].to_vec()).collect();
    let pivots = rref(f, &mut rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[r][fc]);
            }
            v
        })
        .collect()
}

pub fn det(f: Fp, a: &Mat) -> u64 {
    let n = a.n;
    let mut m = a.clone();
    let mut d = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| m.at(i, c) != 0) else {
            return 0;
        };
        if piv != c {
            for j in 0..n {
                m.data.swap(piv * n + j, c * n + j);
            }
            d = f.neg(d);
        }
        d = f.mul(d, m.at(c, c));
        let inv = f.inv(m.at(c, c));
        for i in c + 1..n {
            let u = f.mul(m.at(i, c), inv);
            if u == 0 {
                continue;
            }
            for j in c..n {
                let v = f.sub(m.at(i, j), f.mul(u, m.at(c, j)));
                m.set(i, j, v);
            }
        }
    }
    d
}
