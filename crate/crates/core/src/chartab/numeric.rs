//! Floating-point degree oracle, independent of modular arithmetic.
//!
//! With `D = diag(sqrt|C_i|)`, each `D^-1 (M_j + M_j*) D` is real symmetric
//! and all of them share the orthonormal eigenvectors
//! `u_chi(i) = sqrt(|C_i| / |G|) conj(chi(g_i))`, up to mixing of `chi` with
//! its complex conjugate. A random combination separates the remaining
//! pairs, and `chi(1)^2 = |G| u_chi(0)^2` recovers the degrees.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DegreeMultiset;
use crate::classes::{class_matrix, conjugacy_classes};
use crate::error::{Error, Result};
use crate::group::Group;

pub const DEFAULT_NUMERIC_CAP: usize = 512;

const ATTEMPTS: usize = 5;

pub fn degree_oracle_numeric(g: &Group, seed: u64) -> Result<DegreeMultiset> {
    if g.order() > DEFAULT_NUMERIC_CAP {
        return Err(Error::CapExceeded {
            order: g.order(),
            cap: DEFAULT_NUMERIC_CAP,
        });
    }
    let part = conjugacy_classes(g);
    let k = part.k();
    let n = g.order() as f64;
    let sqrt_sizes: Vec<f64> = part.sizes().iter().map(|&s| (s as f64).sqrt()).collect();
    let sym: Vec<DMatrix<f64>> = (0..k)
        .map(|j| {
            let m = class_matrix(g, &part, j);
            let mi = class_matrix(g, &part, part.inverse_class(j));
            DMatrix::from_fn(k, k, |r, c| {
                (m[r * k + c] + mi[r * k + c]) as f64 * sqrt_sizes[c] / sqrt_sizes[r]
            })
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let mut s = DMatrix::<f64>::zeros(k, k);
        for m in &sym {
            let coeff = rng.random_range(-50i32..=50) as f64 / rng.random_range(1i32..=10) as f64;
            s += m * coeff;
        }
        // symmetrize against rounding in the scaling
        let s = (&s + s.transpose()) * 0.5;
        if let Some(d) = degrees_from(&s, n, k) {
            return Ok(d);
        }
    }
    Err(Error::IllConditioned(ATTEMPTS))
}

fn degrees_from(s: &DMatrix<f64>, n: f64, k: usize) -> Option<DegreeMultiset> {
    let eig = SymmetricEigen::new(s.clone());
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-7 * scale;

    let mut degrees = Vec::with_capacity(k);
    let mut start = 0;
    while start < k {
        let mut end = start + 1;
        while end < k
            && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] < tol
        {
            end += 1;
        }
        let size = end - start;
        if size > 2 {
            return None;
        }
        let weight: f64 = order[start..end]
            .iter()
            .map(|&c| eig.eigenvectors[(0, c)].powi(2))
            .sum();
        let d_squared = n * weight / size as f64;
        let d = d_squared.sqrt().round();
        if d < 1.0 || (d * d - d_squared).abs() > 1e-6 * n {
            return None;
        }
        degrees.extend(std::iter::repeat_n(d as u64, size));
        start = end;
    }
    let multiset = DegreeMultiset::from_degrees(degrees);
    (multiset.sum_of_powers(2) == n as u64).then_some(multiset)
}
