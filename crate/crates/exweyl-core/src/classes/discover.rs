//! Conjugacy classes by fingerprinted random search, for groups too large to
//! enumerate.
//!
//! Candidates come from structured sources (parabolic subset products of the
//! simple reflections, the root negation when present, powers and pairwise
//! products of everything found so far) and from exactly-uniform random
//! draws. Each genuinely new class costs one exhaustive centralizer
//! backtrack, which yields the exact class size |G|/|C|.
//!
//! Completeness certificate: class sizes are exact and distinct classes are
//! never merged (fingerprints are conjugation-invariant, and fingerprint
//! collisions are either resolved by an exact transporter search or left
//! split), so the running size total never overshoots |G|. The search is
//! done precisely when the total reaches |G|.
//!
//! Fingerprint matches are treated optimistically (no transporter call)
//! while the total still grows: if two distinct classes shared a
//! fingerprint, the optimistic merge would leave the total short of |G| and
//! the stalled search escalates to exact transporter resolution. Soundness
//! never depends on the optimism.

use std::collections::HashMap;

use super::fingerprint::Fingerprint;
use crate::perm::{centralizer_backtrack, conjugating_element, PermGroup, Permutation};
use crate::rootsys::RootSystem;
use crate::{Error, Result};

pub(crate) struct Discovered {
    pub reps: Vec<Permutation>,
    pub fingerprints: Vec<Fingerprint>,
    pub sizes: Vec<u64>,
    pub centralizers: Vec<PermGroup>,
}

struct Searcher<'a> {
    rs: &'a RootSystem,
    g: &'a PermGroup,
    total: u128,
    found_sum: u128,
    reps: Vec<Permutation>,
    fps: Vec<Fingerprint>,
    sizes: Vec<u64>,
    cents: Vec<PermGroup>,
    buckets: HashMap<Vec<u8>, Vec<usize>>,
    exact_resolution: bool,
    transporter_nodes: u64,
    centralizer_nodes: u64,
    seed: u64,
}

impl<'a> Searcher<'a> {
    fn done(&self) -> bool {
        self.found_sum == self.total
    }

    /// Returns true if the candidate opened a new class.
    fn offer(&mut self, x: Permutation) -> Result<bool> {
        if self.done() {
            return Ok(false);
        }
        let fp = Fingerprint::of(self.rs, &x);
        let key = fp.to_bytes();
        if let Some(ids) = self.buckets.get(&key) {
            if !self.exact_resolution {
                return Ok(false);
            }
            let ids = ids.clone();
            for idx in ids {
                if conjugating_element(self.g, &x, &self.reps[idx], self.transporter_nodes, self.seed)?
                    .is_some()
                {
                    return Ok(false);
                }
            }
        }
        let cent = centralizer_backtrack(self.g, &x, self.centralizer_nodes, self.seed)?;
        let cent_order = cent.order();
        if self.total % cent_order != 0 {
            return Err(Error::mismatch(format!(
                "centralizer order {cent_order} does not divide group order {}",
                self.total
            )));
        }
        let size = (self.total / cent_order) as u64;
        let idx = self.reps.len();
        self.found_sum += size as u128;
        if self.found_sum > self.total {
            return Err(Error::mismatch(
                "class sizes overshot the group order; a class was double-counted",
            ));
        }
        self.buckets.entry(key).or_default().push(idx);
        self.reps.push(x);
        self.fps.push(fp);
        self.sizes.push(size);
        self.cents.push(cent);
        Ok(true)
    }
}

pub(crate) fn discover_classes(
    rs: &RootSystem,
    g: &PermGroup,
    draw_budget: u64,
    transporter_nodes: u64,
    centralizer_nodes: u64,
    seed: u64,
) -> Result<Discovered> {
    let mut s = Searcher {
        rs,
        g,
        total: g.order(),
        found_sum: 0,
        reps: Vec::new(),
        fps: Vec::new(),
        sizes: Vec::new(),
        cents: Vec::new(),
        buckets: HashMap::new(),
        exact_resolution: false,
        transporter_nodes,
        centralizer_nodes,
        seed,
    };
    let degree = g.degree;

    // Structured candidates: identity, parabolic subset products (in index
    // order), root negation if it lies in the group, and the negation times
    // each subset product.
    s.offer(Permutation::identity(degree))?;
    let rank = g.generators.len();
    let mut subset_products = Vec::with_capacity(1 << rank);
    for mask in 1u32..(1 << rank) {
        let mut p = Permutation::identity(degree);
        for (i, gen) in g.generators.iter().enumerate() {
            if mask & (1 << i) != 0 {
                p = p.mul(gen);
            }
        }
        subset_products.push(p);
    }
    for p in &subset_products {
        s.offer(p.clone())?;
    }
    let neg = rs.negation_perm();
    if g.contains(&neg) {
        s.offer(neg.clone())?;
        for p in &subset_products {
            s.offer(neg.mul(p))?;
        }
    }

    // Closure rounds: powers of found representatives, then pairwise
    // products, interleaved with uniform random draws. Escalate to exact
    // fingerprint-collision resolution once random progress stalls.
    let mut rng = crate::perm::seeded_rng(seed ^ 0x9e3779b97f4a7c15);
    let mut draws: u64 = 0;
    let mut stall = 0u32;
    loop {
        if s.done() {
            break;
        }
        let before = s.reps.len();

        let reps_now: Vec<Permutation> = s.reps.clone();
        for r in &reps_now {
            let m = r.order();
            for k in 2..m {
                s.offer(r.pow(k))?;
                if s.done() {
                    break;
                }
            }
        }
        let reps_now: Vec<Permutation> = s.reps.clone();
        'pairs: for a in &reps_now {
            for b in &reps_now {
                s.offer(a.mul(b))?;
                if s.done() {
                    break 'pairs;
                }
            }
        }

        let batch = 512.min(draw_budget.saturating_sub(draws));
        for _ in 0..batch {
            draws += 1;
            s.offer(g.uniform_element(&mut rng))?;
            if s.done() {
                break;
            }
        }

        if s.done() {
            break;
        }
        if s.reps.len() == before {
            stall += 1;
            if stall >= 2 && !s.exact_resolution {
                s.exact_resolution = true;
            } else if draws >= draw_budget {
                return Err(Error::budget(format!(
                    "class discovery stalled after {draws} draws: {} classes totaling {} of {}",
                    s.reps.len(),
                    s.found_sum,
                    s.total
                )));
            }
        } else {
            stall = 0;
        }
    }

    Ok(Discovered {
        reps: s.reps,
        fingerprints: s.fps,
        sizes: s.sizes,
        centralizers: s.cents,
    })
}
