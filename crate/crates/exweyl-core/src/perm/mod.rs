//! Permutations and permutation groups with strong generating sets.
//!
//! Conventions, fixed once and used everywhere:
//! - points are 0-based u16 indices;
//! - products compose left to right: (p * q) means "apply p, then q",
//!   so (p * q)[x] = q[p[x]];
//! - conjugation is x^g = g^-1 * x * g, matching the product order.

mod backtrack;
mod bsgs;
mod store;

pub use backtrack::{centralizer_backtrack, conjugating_element};
pub use bsgs::Bsgs;
pub use store::{conj_row, inv_row, mul_rows, ElementStore};

use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation of 0..degree, stored as its image table. Serializes as
/// the bare image array; deserialization re-validates bijectivity so a
/// corrupted cache cannot smuggle in a non-permutation.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u16>", into = "Vec<u16>")]
pub struct Permutation {
    images: Vec<u16>,
}

impl TryFrom<Vec<u16>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u16>) -> Result<Self> {
        Permutation::try_from_images(images)
    }
}

impl From<Permutation> for Vec<u16> {
    fn from(p: Permutation) -> Vec<u16> {
        p.images
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u16).collect() }
    }

    /// Builds from an image table, validating bijectivity.
    pub fn from_images(images: Vec<u16>) -> Self {
        let mut seen = vec![false; images.len()];
        for &im in &images {
            assert!(
                (im as usize) < images.len() && !seen[im as usize],
                "image table is not a bijection"
            );
            seen[im as usize] = true;
        }
        Permutation { images }
    }

    pub fn try_from_images(images: Vec<u16>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &im in &images {
            if im as usize >= images.len() || seen[im as usize] {
                return Err(Error::input("image table is not a bijection"));
            }
            seen[im as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u16 == im)
    }

    /// self then rhs.
    pub fn mul(&self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), rhs.degree());
        Permutation {
            images: self.images.iter().map(|&m| rhs.images[m as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u16;
        }
        Permutation { images }
    }

    /// g^-1 * self * g.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut images = vec![0u16; self.images.len()];
        for q in 0..self.images.len() {
            images[g.images[q] as usize] = g.images[self.images[q] as usize];
        }
        Permutation { images }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        (0..self.degree()).all(|x| {
            self.images[other.images[x] as usize] == other.images[self.images[x] as usize]
        })
    }

    /// Multiplicative order: lcm of cycle lengths. Fits u64 comfortably at
    /// the degrees used here (Landau's function at 240 is ~6e15).
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut ord: u64 = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            ord = crate::exact::arith::lcm64(ord, len);
        }
        ord
    }

    /// Sorted cycle type as (length, multiplicity), longest first.
    pub fn cycle_type(&self) -> Vec<(u32, u32)> {
        let mut seen = vec![false; self.degree()];
        let mut counts: std::collections::BTreeMap<u32, u32> = Default::default();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            *counts.entry(len).or_insert(0) += 1;
        }
        counts.into_iter().rev().collect()
    }

    /// Cycles of length >= 2, each starting at its minimal point, sorted by
    /// (length desc, leader asc). Used by the backtrack searches to choose
    /// bases with maximal forcing.
    pub fn nontrivial_cycles(&self) -> Vec<Vec<u16>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x as u16);
                x = self.apply(x);
            }
            if cyc.len() >= 2 {
                cycles.push(cyc);
            }
        }
        cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        cycles
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// 128-bit sequence hash of the image table. Shared with the packed
    /// element store, so hashes agree across representations.
    pub fn hash128(&self) -> u128 {
        hash128_points(self.images.iter().map(|&x| x as u64))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // cycle notation, fixed points omitted
        let mut seen = vec![false; self.degree()];
        let mut wrote = false;
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.apply(x);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Order-dependent 128-bit hash of a point sequence (two decoupled 64-bit
/// polynomial lanes with strong mixing).
pub fn hash128_points(points: impl Iterator<Item = u64>) -> u128 {
    #[inline]
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
    let mut h1: u64 = 0x243f6a8885a308d3;
    let mut h2: u64 = 0x13198a2e03707344;
    for (i, x) in points.enumerate() {
        let v = mix(x.wrapping_add(0x9e3779b97f4a7c15).wrapping_mul(i as u64 | 1));
        h1 = h1.wrapping_mul(0x100000001b3) ^ v;
        h2 = h2.wrapping_mul(0xc2b2ae3d27d4eb4f) ^ mix(v ^ x);
    }
    ((mix(h1) as u128) << 64) | mix(h2) as u128
}

/// Deterministic RNG for sampling; every consumer that needs randomness
/// takes an explicit seed so reruns are reproducible.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A permutation group held with its strong generating set. Construction
/// runs a randomized Schreier-Sims warmup followed by full deterministic
/// verification, so the order is exact.
#[derive(Clone, Debug)]
pub struct PermGroup {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub bsgs: Bsgs,
}

/// Build a group from generators. `seed` drives the randomized warmup and
/// nothing else; any seed yields the same group and the same order.
pub fn group_from_generators(degree: usize, generators: &[Permutation], seed: u64) -> PermGroup {
    PermGroup::with_base_hint(degree, generators, &[], seed)
}

impl PermGroup {
    pub fn with_base_hint(
        degree: usize,
        generators: &[Permutation],
        base_hint: &[u16],
        seed: u64,
    ) -> PermGroup {
        for g in generators {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }
        let bsgs = Bsgs::build(degree, generators, base_hint, seed);
        PermGroup { degree, generators: generators.to_vec(), bsgs }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        group_from_generators(degree, &[], 0)
    }

    pub fn order(&self) -> u128 {
        self.bsgs.order()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.bsgs.sift(p).is_none()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Exactly uniform random element: one transversal representative per
    /// stabilizer level, multiplied deepest-first.
    pub fn uniform_element(&self, rng: &mut impl Rng) -> Permutation {
        self.bsgs.uniform_element(rng)
    }

    /// Deterministic product-replacement stream seeded by `seed`.
    pub fn random_stream(&self, seed: u64) -> ProductReplacer {
        ProductReplacer::new(self.degree, &self.generators, seed)
    }
}

/// Product-replacement ("rattle") pseudo-random element generator.
/// Deterministic given the seed.
pub struct ProductReplacer {
    state: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
}

impl ProductReplacer {
    pub fn new(degree: usize, generators: &[Permutation], seed: u64) -> Self {
        let mut state: Vec<Permutation> = Vec::new();
        if generators.is_empty() {
            state.push(Permutation::identity(degree));
        } else {
            while state.len() < generators.len().max(10) {
                state.push(generators[state.len() % generators.len()].clone());
            }
        }
        let mut pr = ProductReplacer {
            state,
            acc: Permutation::identity(degree),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..60 {
            pr.step();
        }
        pr
    }

    fn step(&mut self) {
        let n = self.state.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let rhs = if self.rng.gen_bool(0.5) {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        self.state[i] = if self.rng.gen_bool(0.5) {
            self.state[i].mul(&rhs)
        } else {
            rhs.mul(&self.state[i])
        };
        self.acc = self.acc.mul(&self.state[i]);
    }

    pub fn next_element(&mut self) -> Permutation {
        self.step();
        self.acc.clone()
    }
}
