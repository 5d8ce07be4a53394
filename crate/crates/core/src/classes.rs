//! Conjugacy classes, class-sum structure constants and commuting probability.

use crate::error::{Error, Result};
use crate::group::{ElementIndex, Group, FULL_ASSOCIATIVITY_LIMIT, IDENTITY};
use crate::rational::{q, Q};

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    class_of: Vec<usize>,
    reps: Vec<ElementIndex>,
    sizes: Vec<usize>,
    inverse_class: Vec<usize>,
    members: Vec<Vec<ElementIndex>>,
}

impl ClassPartition {
    /// Number of classes.
    pub fn k(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, x: ElementIndex) -> usize {
        self.class_of[x]
    }

    pub fn reps(&self) -> &[ElementIndex] {
        &self.reps
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn members(&self, c: usize) -> &[ElementIndex] {
        &self.members[c]
    }

    /// Classes of `g` lying entirely inside the (normal) subset `contains`.
    pub fn count_inside(&self, contains: impl Fn(ElementIndex) -> bool) -> usize {
        self.reps.iter().filter(|&&r| contains(r)).count()
    }
}

/// Classes are numbered by their least element, so the identity class is 0.
pub fn conjugacy_classes(g: &Group) -> ClassPartition {
    let n = g.order();
    let gens = g.generators();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut members: Vec<Vec<ElementIndex>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        class_of[x] = c;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            for &s in gens {
                let y = g.conj(orbit[i], s);
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    let sizes: Vec<usize> = members.iter().map(Vec::len).collect();
    let inverse_class = reps.iter().map(|&r| class_of[g.inv(r)]).collect();
    ClassPartition {
        class_of,
        reps,
        sizes,
        inverse_class,
        members,
    }
}

/// k(G)/|G|, in lowest terms.
pub fn cp(g: &Group) -> Q {
    cp_from_classes(g, &conjugacy_classes(g))
}

pub fn cp_from_classes(g: &Group, part: &ClassPartition) -> Q {
    q(part.k() as i64, g.order() as i64)
}

/// Number of commuting ordered pairs, by exhaustive enumeration.
pub fn commuting_pair_count(g: &Group, cap: usize) -> Result<u64> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded { order: n, cap });
    }
    let mut count = 0u64;
    for x in 0..n {
        for y in 0..n {
            if g.mul(x, y) == g.mul(y, x) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Class-sum structure constants: `C_i C_j = sum_k a[i][j][k] C_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassConstants {
    k: usize,
    a: Vec<u64>,
}

impl ClassConstants {
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.a[(i * self.k + j) * self.k + k]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The matrix of multiplication by class sum `j`, as `m[i][k] = a[j][i][k]`.
    pub fn matrix(&self, j: usize) -> Vec<u64> {
        self.a[j * self.k * self.k..(j + 1) * self.k * self.k].to_vec()
    }
}

/// `m[i][k] = |{(x, y) in C_j x C_i : x y = z_k}|`, row-major over `(i, k)`.
/// Depends only on `C_j`, so it can be built one class at a time.
pub fn class_matrix(g: &Group, part: &ClassPartition, j: usize) -> Vec<u64> {
    class_matrix_at(g, part, j, |k| part.reps[k])
}

fn class_matrix_at(
    g: &Group,
    part: &ClassPartition,
    j: usize,
    target: impl Fn(usize) -> ElementIndex,
) -> Vec<u64> {
    let k = part.k();
    let mut m = vec![0u64; k * k];
    for col in 0..k {
        let z = target(col);
        for &x in part.members(j) {
            let y = g.mul(g.inv(x), z);
            m[part.class_of(y) * k + col] += 1;
        }
    }
    m
}

pub fn class_constants(g: &Group, part: &ClassPartition) -> ClassConstants {
    let k = part.k();
    let mut a = Vec::with_capacity(k * k * k);
    for j in 0..k {
        let m = class_matrix(g, part, j);
        if g.order() <= FULL_ASSOCIATIVITY_LIMIT {
            // any other representative of C_k gives the same counts
            let other = class_matrix_at(g, part, j, |c| *part.members(c).last().unwrap());
            assert_eq!(m, other, "structure constants depend on the representative");
        }
        a.extend(m);
    }
    ClassConstants { k, a }
}

/// Number of classes of `g` contained in the identity-containing subset.
pub fn classes_inside(part: &ClassPartition, contains: impl Fn(ElementIndex) -> bool) -> usize {
    debug_assert!(contains(IDENTITY));
    part.count_inside(contains)
}
