//! Finite groups stored as validated Cayley tables, with subgroup, quotient
//! and derived-series machinery.

use std::collections::HashMap;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::lcm;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Index of an element inside its group. Index 0 is always the identity.
pub type ElementIndex = usize;

pub const IDENTITY: ElementIndex = 0;

pub const DEFAULT_ORDER_CAP: usize = 20_000;

/// Groups up to this order get an exhaustive associativity check.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 512;

const SAMPLED_TRIPLES: usize = 100_000;

#[derive(Debug, Clone)]
pub struct Group {
    name: String,
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    gens: Vec<ElementIndex>,
}

impl Group {
    /// Validates a Cayley table and wraps it. Labels default to `g0, g1, ...`.
    pub fn from_cayley_table(
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
        name: impl Into<String>,
    ) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotLatinSquare("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotLatinSquare(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::NotLatinSquare(format!("entry {x} out of range")));
                }
                flat.push(x as u32);
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::InvalidArgs(format!(
                    "{} labels for {n} elements",
                    l.len()
                )))
            }
            None => (0..n).map(|i| format!("g{i}")).collect(),
        };
        Group::from_flat(flat, labels, name.into())
    }

    pub(crate) fn from_flat(table: Vec<u32>, labels: Vec<String>, name: String) -> Result<Group> {
        let n = labels.len();
        check_latin(&table, n)?;
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(Error::NoIdentity);
            }
        }
        let mut inv = vec![0u32; n];
        for x in 0..n {
            let row = &table[x * n..(x + 1) * n];
            let y = row.iter().position(|&v| v == 0).expect("latin row contains 0");
            inv[x] = y as u32;
        }
        check_associative(&table, n)?;
        let mut g = Group {
            name,
            order: n,
            table,
            inv,
            labels,
            gens: Vec::new(),
        };
        g.gens = g.greedy_generators(&(0..n).collect::<Vec<_>>());
        Ok(g)
    }

    /// Breadth-first closure of `gens` under the product `mul`, identity first.
    /// Elements are discovered in order of word length, generators tried in
    /// the order given.
    pub fn from_closure<T, M, L>(
        identity: T,
        gens: &[T],
        mul: M,
        label: L,
        name: impl Into<String>,
        cap: usize,
    ) -> Result<Group>
    where
        T: Clone + Eq + Hash,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut elems = vec![identity.clone()];
        index.insert(identity, 0);
        // right[g][i] = index of elems[i] * gens[g]
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        // parent[j] = (i, g) with elems[j] = elems[i] * gens[g]
        let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
        let mut i = 0;
        while i < elems.len() {
            for (gi, g) in gens.iter().enumerate() {
                let prod = mul(&elems[i], g);
                let j = match index.get(&prod) {
                    Some(&j) => j,
                    None => {
                        let j = elems.len();
                        if j >= cap {
                            return Err(Error::ClosureExceedsCap { cap });
                        }
                        index.insert(prod.clone(), j);
                        elems.push(prod);
                        parent.push((i, gi));
                        j
                    }
                };
                right[gi].push(j as u32);
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            table[x * n] = x as u32;
        }
        for j in 1..n {
            let (p, gi) = parent[j];
            for x in 0..n {
                let xp = table[x * n + p] as usize;
                table[x * n + j] = right[gi][xp];
            }
        }
        let labels = elems.iter().map(&label).collect();
        Group::from_flat(table, labels, name.into())
    }

    pub fn from_permutation_generators(
        gens: &[Permutation],
        name: impl Into<String>,
    ) -> Result<Group> {
        Self::from_permutation_generators_capped(gens, name, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutation_generators_capped(
        gens: &[Permutation],
        name: impl Into<String>,
        cap: usize,
    ) -> Result<Group> {
        let degree = gens.first().map_or(0, Permutation::degree);
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(
                "generators have different degrees".into(),
            ));
        }
        Group::from_closure(
            Permutation::identity(degree),
            gens,
            |a, b| a.then(b),
            |p| p.to_string(),
            name,
            cap,
        )
    }

    pub fn trivial() -> Group {
        Group::from_cayley_table(&[vec![0]], Some(vec!["e".into()]), "C1").expect("trivial table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Group {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: ElementIndex) -> ElementIndex {
        self.inv[a] as usize
    }

    /// `b^-1 a b`
    pub fn conj(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: ElementIndex, k: usize) -> ElementIndex {
        let mut acc = IDENTITY;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn label(&self, a: ElementIndex) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// A small generating set chosen greedily in index order.
    pub fn generators(&self) -> &[ElementIndex] {
        &self.gens
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn element_order(&self, a: ElementIndex) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1, |acc, x| lcm(acc, self.element_order(x) as u64))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> SubgroupSet<'_> {
        SubgroupSet::from_sorted(self, (0..self.order).collect())
    }

    pub fn trivial_subgroup(&self) -> SubgroupSet<'_> {
        SubgroupSet::from_sorted(self, vec![IDENTITY])
    }

    fn closure_members(&self, seeds: &[ElementIndex]) -> Vec<ElementIndex> {
        let mut member = vec![false; self.order];
        member[IDENTITY] = true;
        let mut list = vec![IDENTITY];
        let seeds: Vec<_> = seeds.iter().copied().filter(|&s| s != IDENTITY).collect();
        let mut i = 0;
        while i < list.len() {
            for &s in &seeds {
                let y = self.mul(list[i], s);
                if !member[y] {
                    member[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    fn greedy_generators(&self, elements: &[ElementIndex]) -> Vec<ElementIndex> {
        let mut gens = Vec::new();
        let mut member = vec![false; self.order];
        member[IDENTITY] = true;
        let mut size = 1;
        for &x in elements {
            if size == elements.len() {
                break;
            }
            if !member[x] {
                gens.push(x);
                let h = self.closure_members(&gens);
                size = h.len();
                for y in h {
                    member[y] = true;
                }
            }
        }
        gens
    }

    /// Smallest subgroup containing `seeds`.
    pub fn subgroup_generated(&self, seeds: &[ElementIndex]) -> SubgroupSet<'_> {
        let h = SubgroupSet::from_sorted(self, self.closure_members(seeds));
        assert_eq!(self.order % h.order(), 0, "Lagrange violated");
        h
    }

    /// Closure of `seeds` under multiplication and conjugation by `conjugators`.
    fn closure_under_conjugation(
        &self,
        seeds: &[ElementIndex],
        conjugators: &[ElementIndex],
    ) -> Vec<ElementIndex> {
        let mut gens: Vec<ElementIndex> = Vec::new();
        for &s in seeds {
            if s != IDENTITY && !gens.contains(&s) {
                gens.push(s);
            }
        }
        let mut members = self.closure_members(&gens);
        let mut member = membership(self.order, &members);
        let mut i = 0;
        while i < gens.len() {
            for &g in conjugators {
                let c = self.conj(gens[i], g);
                if !member[c] {
                    gens.push(c);
                    members = self.closure_members(&gens);
                    member = membership(self.order, &members);
                }
            }
            i += 1;
        }
        members
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[ElementIndex]) -> SubgroupSet<'_> {
        SubgroupSet::from_sorted(self, self.closure_under_conjugation(seeds, &self.gens))
    }

    pub fn derived_subgroup(&self) -> SubgroupSet<'_> {
        self.whole().derived()
    }

    pub fn center(&self) -> SubgroupSet<'_> {
        let elems = (0..self.order)
            .filter(|&x| self.gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect();
        SubgroupSet::from_sorted(self, elems)
    }

    pub fn is_normal(&self, n: &SubgroupSet<'_>) -> bool {
        n.elements
            .iter()
            .all(|&h| self.gens.iter().all(|&g| n.contains(self.conj(h, g))))
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their least
    /// element, so the identity coset is 0. Also returns the projection.
    pub fn quotient(&self, n: &SubgroupSet<'_>) -> Result<(Group, Vec<ElementIndex>)> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &h in &n.elements {
                coset[self.mul(x, h)] = c;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (a, &ra) in reps.iter().enumerate() {
            for (b, &rb) in reps.iter().enumerate() {
                table[a * m + b] = coset[self.mul(ra, rb)] as u32;
            }
        }
        let labels = reps.iter().map(|&r| format!("{}N", self.labels[r])).collect();
        let name = format!("{}/N", self.name);
        Ok((Group::from_flat(table, labels, name)?, coset))
    }

    /// Derived series, terminating at the first repeated term.
    pub fn derived_series(&self) -> Vec<SubgroupSet<'_>> {
        let mut series = vec![self.whole()];
        loop {
            let next = series.last().unwrap().derived();
            if next.order() == series.last().unwrap().order() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn structure_flags(&self) -> StructureFlags<'_> {
        let series = self.derived_series();
        let derived_length = series.len() - 1;
        let perfect_core = series.last().unwrap().clone();
        StructureFlags {
            is_abelian: self.is_abelian(),
            is_solvable: perfect_core.order() == 1,
            is_perfect: derived_length == 0,
            perfect_core,
            derived_length,
        }
    }

    /// All subgroups of index 2, as kernels of the surjections onto C2.
    /// Ordered by the functional on G/G'G^2 that defines them.
    pub fn index_two_subgroups(&self) -> Vec<SubgroupSet<'_>> {
        let mut seeds = Vec::new();
        for &a in &self.gens {
            seeds.push(self.mul(a, a));
            for &b in &self.gens {
                seeds.push(self.commutator(a, b));
            }
        }
        let frattini_like = SubgroupSet::from_sorted(
            self,
            self.closure_under_conjugation(&seeds, &self.gens),
        );
        let (quot, proj) = self
            .quotient(&frattini_like)
            .expect("G'G^2 is normal");
        // quotient is elementary abelian of order 2^r; coordinates in the greedy basis
        let basis = quot.generators().to_vec();
        let mut coords = vec![0u64; quot.order()];
        let mut span = vec![(IDENTITY, 0u64)];
        for (i, &b) in basis.iter().enumerate() {
            let mut extra = Vec::with_capacity(span.len());
            for &(e, m) in &span {
                extra.push((quot.mul(e, b), m | (1 << i)));
            }
            span.extend(extra);
        }
        for (e, m) in span {
            coords[e] = m;
        }
        let r = basis.len();
        (1u64..(1 << r))
            .map(|f| {
                let elems = (0..self.order)
                    .filter(|&x| (coords[proj[x]] & f).count_ones() % 2 == 0)
                    .collect();
                SubgroupSet::from_sorted(self, elems)
            })
            .collect()
    }
}

pub struct StructureFlags<'a> {
    pub is_abelian: bool,
    pub is_solvable: bool,
    pub is_perfect: bool,
    pub perfect_core: SubgroupSet<'a>,
    pub derived_length: usize,
}

fn membership(n: usize, elems: &[ElementIndex]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &x in elems {
        m[x] = true;
    }
    m
}

fn check_latin(table: &[u32], n: usize) -> Result<()> {
    let mut seen = vec![0usize; n];
    let mut stamp = 0;
    for r in 0..n {
        stamp += 1;
        for c in 0..n {
            let v = table[r * n + c] as usize;
            if seen[v] == stamp {
                return Err(Error::NotLatinSquare(format!("row {r} repeats {v}")));
            }
            seen[v] = stamp;
        }
    }
    for c in 0..n {
        stamp += 1;
        for r in 0..n {
            let v = table[r * n + c] as usize;
            if seen[v] == stamp {
                return Err(Error::NotLatinSquare(format!("column {c} repeats {v}")));
            }
            seen[v] = stamp;
        }
    }
    Ok(())
}

fn check_associative(table: &[u32], n: usize) -> Result<()> {
    let at = |a: usize, b: usize| table[a * n + b] as usize;
    if n <= FULL_ASSOCIATIVITY_LIMIT {
        for x in 0..n {
            for y in 0..n {
                let xy = at(x, y);
                let row_xy = &table[xy * n..(xy + 1) * n];
                let row_y = &table[y * n..(y + 1) * n];
                let row_x = &table[x * n..(x + 1) * n];
                for z in 0..n {
                    if row_xy[z] != row_x[row_y[z] as usize] {
                        return Err(Error::NotAssociative(x, y, z));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..SAMPLED_TRIPLES {
            let (x, y, z) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            if at(at(x, y), z) != at(x, at(y, z)) {
                return Err(Error::NotAssociative(x, y, z));
            }
        }
    }
    Ok(())
}

/// A subgroup of a parent group, as a sorted list of parent indices.
#[derive(Debug, Clone)]
pub struct SubgroupSet<'a> {
    parent: &'a Group,
    elements: Vec<ElementIndex>,
    member: Vec<bool>,
}

impl<'a> SubgroupSet<'a> {
    fn from_sorted(parent: &'a Group, elements: Vec<ElementIndex>) -> Self {
        let member = membership(parent.order, &elements);
        SubgroupSet {
            parent,
            elements,
            member,
        }
    }

    pub fn parent(&self) -> &'a Group {
        self.parent
    }

    pub fn elements(&self) -> &[ElementIndex] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order / self.elements.len()
    }

    pub fn contains(&self, x: ElementIndex) -> bool {
        self.member[x]
    }

    pub fn is_subset_of(&self, other: &SubgroupSet<'_>) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn generators(&self) -> Vec<ElementIndex> {
        self.parent.greedy_generators(&self.elements)
    }

    /// Commutator subgroup of this subgroup.
    pub fn derived(&self) -> SubgroupSet<'a> {
        let g = self.parent;
        let gens = self.generators();
        let mut seeds = Vec::new();
        for &a in &gens {
            for &b in &gens {
                seeds.push(g.commutator(a, b));
            }
        }
        SubgroupSet::from_sorted(g, g.closure_under_conjugation(&seeds, &gens))
    }

    /// Normal in the given subgroup (typically a predecessor in a series).
    pub fn is_normal_in(&self, ambient: &SubgroupSet<'_>) -> bool {
        let g = self.parent;
        let gens = ambient.generators();
        self.is_subset_of(ambient)
            && self
                .elements
                .iter()
                .all(|&h| gens.iter().all(|&a| self.contains(g.conj(h, a))))
    }

    /// The subgroup as a standalone group, with the embedding into the parent.
    pub fn to_group(&self, name: impl Into<String>) -> (Group, Vec<ElementIndex>) {
        let g = self.parent;
        let m = self.elements.len();
        let mut local = vec![usize::MAX; g.order];
        for (i, &x) in self.elements.iter().enumerate() {
            local[x] = i;
        }
        let mut table = vec![0u32; m * m];
        for (i, &a) in self.elements.iter().enumerate() {
            for (j, &b) in self.elements.iter().enumerate() {
                table[i * m + j] = local[g.mul(a, b)] as u32;
            }
        }
        let labels = self.elements.iter().map(|&x| g.labels[x].clone()).collect();
        let group = Group::from_flat(table, labels, name.into())
            .expect("a subgroup table is a valid group table");
        (group, self.elements.clone())
    }
}

impl PartialEq for SubgroupSet<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.elements == other.elements
    }
}
