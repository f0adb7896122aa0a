//! Backtrack searches over a stabilizer chain: centralizers (subgroup
//! search) and conjugating elements (coset search). Both walk base images
//! down a chain whose base is adapted to the cycles of the fixed element,
//! so assigning one image forces the whole cycle and the tree collapses.
//!
//! The searched condition is x * h = h * y pointwise, i.e. h conjugates x
//! to y (y = x for centralizers); products compose left to right.
//!
//! Soundness: constraints only prune branches that provably violate the
//! condition, and every surviving leaf is re-verified in full. For the
//! subgroup search, leaves come in cosets h*K of the known subgroup K, and
//! the image tuple of h*k is the pointwise k-image of h's tuple; the search
//! keeps only the lexicographically least tuple per coset by requiring each
//! base image to be minimal in its orbit under (a subgroup of) the
//! stabilizer in K of the images chosen so far. Filtering K's generators
//! along the path gives such a subgroup cheaply: pruning with a subgroup
//! only weakens the test, never misses the per-coset minimum, so each
//! restart either grows K or certifies K complete.

use super::{Bsgs, PermGroup, Permutation};
use crate::{Error, Result};

/// Assignment record for undo.
struct Frame {
    assigned: Vec<u16>,
}

struct Search<'a> {
    degree: usize,
    chain: &'a Bsgs,
    x: &'a Permutation,
    y: &'a Permutation,
    x_cycle_len: Vec<u32>,
    y_cycle_len: Vec<u32>,
    /// partial image commitments: img[p] = q means h[p] must be q; -1 unset
    img: Vec<i32>,
    pre: Vec<i32>,
    nodes: u64,
    budget: u64,
}

enum Outcome {
    /// A non-identity element satisfying the condition (leaf hit).
    Found(Permutation),
    Exhausted,
}

impl<'a> Search<'a> {
    fn new(
        chain: &'a Bsgs,
        degree: usize,
        x: &'a Permutation,
        y: &'a Permutation,
        budget: u64,
    ) -> Self {
        Search {
            degree,
            chain,
            x,
            y,
            x_cycle_len: cycle_length_table(x),
            y_cycle_len: cycle_length_table(y),
            img: vec![-1; degree],
            pre: vec![-1; degree],
            nodes: 0,
            budget,
        }
    }

    /// Commit h[b] = q and propagate along the x-cycle of b: the condition
    /// forces h[x^m(b)] = y^m(q). Returns None on conflict (nothing to undo:
    /// partial assignments are rolled back here).
    fn assign_cycle(&mut self, b: u16, q: u16) -> Option<Frame> {
        if self.x_cycle_len[b as usize] != self.y_cycle_len[q as usize] {
            return None;
        }
        let mut frame = Frame { assigned: Vec::new() };
        let mut p = b;
        let mut v = q;
        loop {
            match self.img[p as usize] {
                -1 => {
                    if self.pre[v as usize] != -1 {
                        self.undo(&frame);
                        return None;
                    }
                    self.img[p as usize] = v as i32;
                    self.pre[v as usize] = p as i32;
                    frame.assigned.push(p);
                }
                set if set == v as i32 => {}
                _ => {
                    self.undo(&frame);
                    return None;
                }
            }
            p = self.x.apply(p as usize) as u16;
            v = self.y.apply(v as usize) as u16;
            if p == b {
                // equal cycle lengths close v back onto q at the same step
                break;
            }
        }
        Some(frame)
    }

    fn undo(&mut self, frame: &Frame) {
        for &p in &frame.assigned {
            let v = self.img[p as usize];
            self.img[p as usize] = -1;
            if v >= 0 {
                self.pre[v as usize] = -1;
            }
        }
    }

    /// Depth-first walk from `level`, with running partial products t and
    /// t^-1. `known` carries the subgroup-search pruning state; None for
    /// coset (transporter) searches. `kgens` are the known subgroup's
    /// generators filtered to those fixing every image chosen above this
    /// level: they generate a subgroup of the true image stabilizer, which
    /// keeps the per-coset-minimum pruning sound. Stops at the first
    /// satisfying leaf.
    fn dfs(
        &mut self,
        level: usize,
        t: &Permutation,
        t_inv: &Permutation,
        known: Option<&Known>,
        kgens: &[Permutation],
    ) -> Result<Outcome> {
        if level == self.chain.num_levels() {
            // leaf: h = t; full re-verification of x * h = h * y
            let h = t.clone();
            if h.is_identity() {
                return Ok(Outcome::Exhausted);
            }
            let ok = (0..self.degree)
                .all(|p| h.apply(self.x.apply(p)) == self.y.apply(h.apply(p)));
            if !ok {
                return Ok(Outcome::Exhausted);
            }
            if let Some(k) = known {
                if k.group.contains(&h) {
                    return Ok(Outcome::Exhausted);
                }
            }
            return Ok(Outcome::Found(h));
        }
        let lvl = &self.chain.levels()[level];
        let b = lvl.point;
        let forced = self.img[b as usize];
        for m in 0..lvl.orbit.len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::budget(format!(
                    "backtrack search exceeded {} nodes",
                    self.budget
                )));
            }
            let gamma = lvl.orbit[m];
            let delta = t.apply(gamma as usize) as u16;
            if forced >= 0 {
                if delta as i32 != forced {
                    continue;
                }
            } else {
                if self.x_cycle_len[b as usize] != self.y_cycle_len[delta as usize] {
                    continue;
                }
                if self.pre[delta as usize] != -1 {
                    continue;
                }
            }
            // Per-coset-minimum pruning: the least image tuple in h*K has
            // every delta minimal under the stabilizer of the earlier
            // images, so this prunes forced and free levels alike.
            if known.is_some() && !orbit_min(kgens, delta, self.degree) {
                continue;
            }
            let frame = match self.assign_cycle(b, delta) {
                Some(f) => f,
                None => continue,
            };
            let u = &lvl.transversal[m];
            let t_next = u.mul(t);
            let t_next_inv = t_inv.mul(&u.inverse());
            let kgens_next: Vec<Permutation> = if known.is_some() {
                kgens
                    .iter()
                    .filter(|s| s.apply(delta as usize) == delta as usize)
                    .cloned()
                    .collect()
            } else {
                Vec::new()
            };
            let out = self.dfs(level + 1, &t_next, &t_next_inv, known, &kgens_next)?;
            self.undo(&frame);
            if let Outcome::Found(h) = out {
                return Ok(Outcome::Found(h));
            }
        }
        Ok(Outcome::Exhausted)
    }
}

/// Known-subgroup state for the centralizer search.
struct Known {
    group: PermGroup,
}

/// Is delta the minimum of its orbit under the group generated by `gens`?
fn orbit_min(gens: &[Permutation], delta: u16, degree: usize) -> bool {
    if gens.is_empty() {
        return true;
    }
    let mut seen = vec![false; degree];
    let mut stack = vec![delta];
    seen[delta as usize] = true;
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.apply(p as usize) as u16;
            if q < delta {
                return false;
            }
            if !seen[q as usize] {
                seen[q as usize] = true;
                stack.push(q);
            }
        }
    }
    true
}

/// Base hint adapted to x: leaders of the longest cycles first, so image
/// choices force as many points as possible.
fn adapted_base(x: &Permutation) -> Vec<u16> {
    x.nontrivial_cycles().iter().map(|c| c[0]).collect()
}

fn cycle_length_table(p: &Permutation) -> Vec<u32> {
    let mut len = vec![0u32; p.degree()];
    let mut seen = vec![false; p.degree()];
    for start in 0..p.degree() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut q = start;
        while !seen[q] {
            seen[q] = true;
            cyc.push(q);
            q = p.apply(q);
        }
        for &q in &cyc {
            len[q] = cyc.len() as u32;
        }
    }
    len
}

/// The centralizer C_G(x) by subgroup backtrack search. Exact; returns the
/// centralizer with its own verified BSGS. `node_budget` bounds the search
/// tree per pass and trips a loud Budget error, never a wrong answer.
pub fn centralizer_backtrack(
    g: &PermGroup,
    x: &Permutation,
    node_budget: u64,
    seed: u64,
) -> Result<PermGroup> {
    assert_eq!(g.degree, x.degree());
    if x.is_identity() || g.generators.iter().all(|h| h.commutes_with(x)) {
        return Ok(g.clone());
    }
    let hint = adapted_base(x);
    let chain = Bsgs::build(g.degree, &g.generators, &hint, seed);
    debug_assert_eq!(chain.order(), g.order());
    let mut kgens: Vec<Permutation> = vec![x.clone()];
    // powers of x come free with the closure; generators that happen to
    // commute with x are free seeds too
    for h in &g.generators {
        if h.commutes_with(x) {
            kgens.push(h.clone());
        }
    }
    loop {
        let kgroup = PermGroup::with_base_hint(g.degree, &kgens, &hint, seed);
        let kstrong = kgroup.bsgs.strong_generators().to_vec();
        let known = Known { group: kgroup };
        let mut search = Search::new(&chain, g.degree, x, x, node_budget);
        let id = Permutation::identity(g.degree);
        match search.dfs(0, &id, &id, Some(&known), &kstrong)? {
            Outcome::Found(h) => {
                debug_assert!(h.commutes_with(x));
                kgens.push(h);
            }
            Outcome::Exhausted => return Ok(known.group),
        }
    }
}

/// Some h in G with x^h = h^-1 x h = y, or None (a proof of non-conjugacy:
/// the search is exhaustive). Budget trips an error, never a wrong None.
pub fn conjugating_element(
    g: &PermGroup,
    x: &Permutation,
    y: &Permutation,
    node_budget: u64,
    seed: u64,
) -> Result<Option<Permutation>> {
    assert_eq!(g.degree, x.degree());
    assert_eq!(g.degree, y.degree());
    if x.cycle_type() != y.cycle_type() {
        return Ok(None);
    }
    if x == y {
        return Ok(Some(Permutation::identity(g.degree)));
    }
    let hint = adapted_base(x);
    let chain = Bsgs::build(g.degree, &g.generators, &hint, seed);
    let mut search = Search::new(&chain, g.degree, x, y, node_budget);
    let id = Permutation::identity(g.degree);
    match search.dfs(0, &id, &id, None, &[])? {
        Outcome::Found(h) => {
            debug_assert_eq!(&x.conjugate_by(&h), y);
            Ok(Some(h))
        }
        Outcome::Exhausted => Ok(None),
    }
}
