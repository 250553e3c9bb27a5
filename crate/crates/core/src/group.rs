//! Finite abelian groups given as products of cyclic factors.
//!
//! A group is *presented*: the declared factor order fixes the coordinates of
//! every element, and isomorphisms between presentations are explicit
//! generator-image maps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Enumeration-based operations refuse groups larger than this.
pub const MAX_ENUMERABLE: u64 = 1 << 22;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_power_of_two(n: u64) -> bool {
    n != 0 && n & (n - 1) == 0
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (m as i64, (a % m) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} not invertible mod {m}");
    t.rem_euclid(m as i64) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    exponents: Vec<u32>,
}

/// Images of the declared generators of a source group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAutomorphism {
    pub images: Vec<GroupElement>,
}

/// A homomorphism given by generator images, used between different presentations.
pub type GroupIsomorphism = GroupAutomorphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryFactor {
    pub prime: u64,
    pub exponent: u32,
    pub multiplicity: usize,
}

/// One element of the primary basis: generates a cyclic summand of order `prime^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryBasisElement {
    pub prime: u64,
    pub exponent: u32,
    pub factor: usize,
    pub element: GroupElement,
}

impl GroupElement {
    pub fn new(exponents: Vec<u32>) -> Self {
        GroupElement { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(orders.len());
        for &n in orders {
            if n <= 0 || n > u32::MAX as i64 {
                return Err(Error::InvalidGroup(format!("cyclic order {n} must be at least 1")));
            }
            out.push(n as u32);
        }
        Ok(FiniteAbelianGroup { orders: out })
    }

    pub fn from_orders(orders: Vec<u32>) -> Result<Self> {
        if let Some(&n) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidGroup(format!("cyclic order {n} must be at least 1")));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: Vec::new() }
    }

    pub fn cyclic(n: u32) -> Self {
        assert!(n >= 1);
        FiniteAbelianGroup { orders: vec![n] }
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn cardinality(&self) -> u64 {
        self.orders.iter().map(|&n| n as u64).product()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &n| lcm(acc, n as u64))
    }

    pub fn is_two_group(&self) -> bool {
        self.orders.iter().all(|&n| is_power_of_two(n as u64))
    }

    /// Direct product, factors of `self` first.
    pub fn product(&self, other: &Self) -> Self {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FiniteAbelianGroup { orders }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { exponents: vec![0; self.rank()] }
    }

    pub fn basis(&self, i: usize) -> GroupElement {
        let mut g = self.identity();
        g.exponents[i] = 1 % self.orders[i];
        g
    }

    pub fn element(&self, exps: &[i64]) -> GroupElement {
        assert_eq!(exps.len(), self.rank(), "element rank mismatch");
        GroupElement {
            exponents: exps
                .iter()
                .zip(&self.orders)
                .map(|(&e, &n)| e.rem_euclid(n as i64) as u32)
                .collect(),
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.exponents.len() == self.rank() && g.exponents.iter().zip(&self.orders).all(|(e, n)| e < n)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            exponents: a
                .exponents
                .iter()
                .zip(&b.exponents)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| ((x as u64 + y as u64) % n as u64) as u32)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            exponents: a.exponents.iter().zip(&self.orders).map(|(&x, &n)| (n - x) % n).collect(),
        }
    }

    pub fn scale(&self, k: u64, a: &GroupElement) -> GroupElement {
        GroupElement {
            exponents: a
                .exponents
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| ((x as u64 % n as u64) * (k % n as u64) % n as u64) as u32)
                .collect(),
        }
    }

    /// Σ coeffs[i]·gens[i].
    pub fn combine(&self, coeffs: &[u32], gens: &[GroupElement]) -> GroupElement {
        let mut acc = self.identity();
        for (&c, g) in coeffs.iter().zip(gens) {
            if c != 0 {
                acc = self.add(&acc, &self.scale(c as u64, g));
            }
        }
        acc
    }

    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.exponents
            .iter()
            .zip(&self.orders)
            .fold(1, |acc, (&e, &n)| lcm(acc, n as u64 / gcd(n as u64, e as u64)))
    }

    /// Mixed-radix index, first coordinate fastest.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (&e, &n) in g.exponents.iter().zip(&self.orders).rev() {
            idx = idx * n as usize + e as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut exponents = Vec::with_capacity(self.rank());
        for &n in &self.orders {
            exponents.push((idx % n as usize) as u32);
            idx /= n as usize;
        }
        GroupElement { exponents }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.cardinality() as usize).map(move |i| self.element_at(i))
    }

    fn check_enumerable(&self, what: &str) -> Result<()> {
        if self.cardinality() > MAX_ENUMERABLE {
            return Err(Error::BudgetExceeded(format!(
                "{what} over a group of order {}",
                self.cardinality()
            )));
        }
        Ok(())
    }

    /// Sorted by prime, then exponent.
    pub fn primary_decomposition(&self) -> Vec<PrimaryFactor> {
        let mut parts: Vec<(u64, u32)> = Vec::new();
        for &n in &self.orders {
            parts.extend(factorize(n as u64));
        }
        parts.sort();
        let mut out: Vec<PrimaryFactor> = Vec::new();
        for (p, e) in parts {
            match out.last_mut() {
                Some(last) if last.prime == p && last.exponent == e => last.multiplicity += 1,
                _ => out.push(PrimaryFactor { prime: p, exponent: e, multiplicity: 1 }),
            }
        }
        out
    }

    /// Orders of the primary cyclic summands, sorted.
    pub fn primary_orders(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for f in self.primary_decomposition() {
            for _ in 0..f.multiplicity {
                out.push(f.prime.pow(f.exponent) as u32);
            }
        }
        out
    }

    /// The isomorphic group presented by its primary summands.
    pub fn canonical(&self) -> Self {
        FiniteAbelianGroup { orders: self.primary_orders() }
    }

    /// n_1 | n_2 | ... | n_r with every n_i > 1.
    pub fn invariant_factors(&self) -> Vec<u64> {
        invariant_factors_of(&self.primary_decomposition())
    }

    pub fn two_part(&self) -> Self {
        FiniteAbelianGroup {
            orders: self.primary_orders().into_iter().filter(|n| n % 2 == 0).collect(),
        }
    }

    pub fn odd_part(&self) -> Self {
        FiniteAbelianGroup {
            orders: self.primary_orders().into_iter().filter(|n| n % 2 == 1).collect(),
        }
    }

    /// Generators of the primary summands, sorted by (prime, exponent, factor).
    pub fn primary_basis(&self) -> Vec<PrimaryBasisElement> {
        let mut out = Vec::new();
        for (i, &n) in self.orders.iter().enumerate() {
            for (p, e) in factorize(n as u64) {
                let q = p.pow(e);
                let cofactor = n as u64 / q;
                // CRT lift of (1 mod q, 0 mod cofactor).
                let lift = cofactor * inv_mod(cofactor % q, q) % n as u64;
                let mut g = self.identity();
                g.exponents[i] = lift as u32;
                out.push(PrimaryBasisElement { prime: p, exponent: e, factor: i, element: g });
            }
        }
        out.sort_by_key(|b| (b.prime, b.exponent, b.factor));
        out
    }

    /// Coordinates of g in the primary basis.
    pub fn primary_coords(&self, g: &GroupElement) -> Vec<u32> {
        self.primary_basis()
            .iter()
            .map(|b| {
                let q = b.prime.pow(b.exponent);
                (g.exponents[b.factor] as u64 % q) as u32
            })
            .collect()
    }

    /// Whether generator images define an isomorphism `self → target`.
    pub fn is_isomorphism(&self, target: &Self, images: &[GroupElement]) -> bool {
        if images.len() != self.rank() || self.cardinality() != target.cardinality() {
            return false;
        }
        for (img, &n) in images.iter().zip(&self.orders) {
            if !target.contains(img) || n as u64 % target.element_order(img) != 0 {
                return false;
            }
        }
        let src_basis = self.primary_basis();
        let tgt_basis = target.primary_basis();
        for (p, _) in factorize(self.cardinality()) {
            let rows: Vec<Vec<u64>> = src_basis
                .iter()
                .filter(|b| b.prime == p)
                .map(|b| {
                    let img = target.combine(&b.element.exponents, images);
                    tgt_basis
                        .iter()
                        .filter(|t| t.prime == p)
                        .map(|t| {
                            let q = p.pow(t.exponent);
                            (img.exponents[t.factor] as u64 % q) % p
                        })
                        .collect()
                })
                .collect();
            let width = tgt_basis.iter().filter(|t| t.prime == p).count();
            if rows.len() != width || rank_mod_p(rows, p) != width {
                return false;
            }
        }
        true
    }

    pub fn is_automorphism(&self, images: &[GroupElement]) -> bool {
        self.is_isomorphism(self, images)
    }

    /// An explicit isomorphism `self → other`, if one exists.
    pub fn isomorphic(&self, other: &Self) -> Option<GroupIsomorphism> {
        if self.primary_orders() != other.primary_orders() {
            return None;
        }
        let src = self.primary_basis();
        let tgt = other.primary_basis();
        let tgt_elems: Vec<GroupElement> = tgt.iter().map(|b| b.element.clone()).collect();
        let images = (0..self.rank())
            .map(|i| other.combine(&self.primary_coords(&self.basis(i)), &tgt_elems))
            .collect();
        debug_assert_eq!(src.len(), tgt.len());
        Some(GroupAutomorphism { images })
    }

    pub fn subgroup_generated(&self, gens: &[GroupElement]) -> Subgroup {
        let size = self.cardinality() as usize;
        let mut members = vec![false; size];
        let mut list = vec![self.identity()];
        members[0] = true;
        let mut head = 0;
        while head < list.len() {
            let cur = list[head].clone();
            head += 1;
            for g in gens {
                let next = self.add(&cur, g);
                let idx = self.index_of(&next);
                if !members[idx] {
                    members[idx] = true;
                    list.push(next);
                }
            }
        }
        Subgroup::from_members(self.clone(), members)
    }

    /// Calls `visit` with the generator images of every automorphism until it returns false.
    pub fn for_each_automorphism(
        &self,
        limit: u64,
        mut visit: impl FnMut(&[GroupElement]) -> bool,
    ) -> Result<u64> {
        self.check_enumerable("automorphism enumeration")?;
        let candidates: Vec<Vec<GroupElement>> = self
            .orders
            .iter()
            .map(|&n| self.elements().filter(|g| self.element_order(g) == n as u64).collect())
            .collect();
        let mut count = 0u64;
        let mut chosen = Vec::with_capacity(self.rank());
        let span = Span::trivial(self);
        let mut stop = false;
        self.automorphism_dfs(&candidates, &span, &mut chosen, &mut count, limit, &mut visit, &mut stop)?;
        Ok(count)
    }

    #[allow(clippy::too_many_arguments)]
    fn automorphism_dfs(
        &self,
        candidates: &[Vec<GroupElement>],
        span: &Span,
        chosen: &mut Vec<GroupElement>,
        count: &mut u64,
        limit: u64,
        visit: &mut impl FnMut(&[GroupElement]) -> bool,
        stop: &mut bool,
    ) -> Result<()> {
        let i = chosen.len();
        if i == self.rank() {
            *count += 1;
            if *count > limit {
                return Err(Error::BudgetExceeded(format!(
                    "more than {limit} automorphisms of a group of order {}",
                    self.cardinality()
                )));
            }
            if !visit(chosen) {
                *stop = true;
            }
            return Ok(());
        }
        for h in &candidates[i] {
            if let Some(next) = span.extend(self, h, self.orders[i]) {
                chosen.push(h.clone());
                self.automorphism_dfs(candidates, &next, chosen, count, limit, visit, stop)?;
                chosen.pop();
                if *stop {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    pub fn enumerate_automorphisms(&self, limit: u64) -> Result<Vec<GroupAutomorphism>> {
        let mut out = Vec::new();
        self.for_each_automorphism(limit, |imgs| {
            out.push(GroupAutomorphism { images: imgs.to_vec() });
            true
        })?;
        Ok(out)
    }

    /// Canonical literal of the primary decomposition, e.g. `Z2xZ3`; `1` when trivial.
    pub fn label(&self) -> String {
        self.canonical().to_string()
    }
}

fn invariant_factors_of(parts: &[PrimaryFactor]) -> Vec<u64> {
    let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for f in parts {
        if f.exponent == 0 {
            continue;
        }
        match by_prime.last_mut() {
            Some((p, v)) if *p == f.prime => v.extend(std::iter::repeat(f.exponent).take(f.multiplicity)),
            _ => by_prime.push((f.prime, vec![f.exponent; f.multiplicity])),
        }
    }
    let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (j, e) in exps.into_iter().enumerate() {
            out[len - 1 - j] *= p.pow(e);
        }
    }
    out
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col] % p, p);
        for c in 0..width {
            rows[rank][c] = rows[rank][c] * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] % p != 0 {
                let factor = rows[r][col] % p;
                for c in 0..width {
                    rows[r][c] = (rows[r][c] + (p - factor) * rows[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A subgroup spanned by independent cyclic pieces; used to build bases incrementally.
#[derive(Clone, Debug)]
pub(crate) struct Span {
    members: Vec<bool>,
    list: Vec<GroupElement>,
}

impl Span {
    pub(crate) fn trivial(group: &FiniteAbelianGroup) -> Span {
        let mut members = vec![false; group.cardinality() as usize];
        members[0] = true;
        Span { members, list: vec![group.identity()] }
    }

    /// span + ⟨h⟩ when h has order n and ⟨h⟩ meets the span trivially.
    pub(crate) fn extend(&self, group: &FiniteAbelianGroup, h: &GroupElement, n: u32) -> Option<Span> {
        if group.element_order(h) != n as u64 {
            return None;
        }
        let mut multiple = h.clone();
        for _ in 1..n {
            if self.members[group.index_of(&multiple)] {
                return None;
            }
            multiple = group.add(&multiple, h);
        }
        let mut members = self.members.clone();
        let mut list = Vec::with_capacity(self.list.len() * n as usize);
        let mut shift = group.identity();
        for _ in 0..n {
            for s in &self.list {
                let x = group.add(s, &shift);
                members[group.index_of(&x)] = true;
                list.push(x);
            }
            shift = group.add(&shift, h);
        }
        Some(Span { members, list })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    group: FiniteAbelianGroup,
    members: Vec<bool>,
    cardinality: u64,
    invariant_factors: Vec<u64>,
}

impl Subgroup {
    pub(crate) fn from_members(group: FiniteAbelianGroup, members: Vec<bool>) -> Subgroup {
        let cardinality = members.iter().filter(|&&m| m).count() as u64;
        let elems: Vec<GroupElement> =
            members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| group.element_at(i)).collect();
        // |H[p^j]| = p^{Σ min(j, a_i)} recovers the primary exponents a_i.
        let mut parts = Vec::new();
        for (p, total) in factorize(cardinality) {
            let mut logs = vec![0u32];
            let mut q = 1u64;
            while *logs.last().unwrap() < total {
                q *= p;
                let mut killed = elems.iter().filter(|g| q % group.element_order(g) == 0).count() as u64;
                let mut l = 0;
                while killed > 1 {
                    killed /= p;
                    l += 1;
                }
                logs.push(l);
            }
            let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
            for (j, &cnt) in at_least.iter().enumerate() {
                let exactly = cnt - at_least.get(j + 1).copied().unwrap_or(0);
                if exactly > 0 {
                    parts.push(PrimaryFactor { prime: p, exponent: j as u32 + 1, multiplicity: exactly as usize });
                }
            }
        }
        let invariant_factors = invariant_factors_of(&parts);
        Subgroup { group, members, cardinality, invariant_factors }
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.group.contains(g) && self.members[self.group.index_of(g)]
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.group.element_at(i))
            .collect()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// `Z4xZ2` means orders [4, 2]; `1` is the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "1" || s.is_empty() {
            return Ok(FiniteAbelianGroup::trivial());
        }
        let mut orders = Vec::new();
        for part in s.split(['x', 'X']) {
            let digits = part
                .strip_prefix('Z')
                .ok_or_else(|| Error::InvalidGroup(format!("expected `Z<n>`, found `{part}`")))?;
            let n: i64 = digits
                .parse()
                .map_err(|_| Error::InvalidGroup(format!("bad cyclic order `{digits}`")))?;
            orders.push(n);
        }
        FiniteAbelianGroup::new(&orders)
    }
}
