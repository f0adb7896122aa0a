//! Base and strong generating set via Schreier-Sims: a randomized warmup
//! (sifting product-replacement elements) followed by the deterministic
//! completion pass, so the resulting chain is verified, not probabilistic.
//!
//! Degrees here are at most 240 and base lengths at most ~10, so explicit
//! transversals are cheap and nothing needs Schreier vectors.

use super::{Permutation, ProductReplacer};
use rand::Rng;

#[derive(Clone, Debug)]
pub struct Level {
    pub point: u16,
    /// Basic orbit of `point`, discovery order; orbit[0] == point.
    pub orbit: Vec<u16>,
    /// point -> orbit position + 1 (0 = not in orbit).
    pos: Vec<u32>,
    /// transversal[m] maps `point` to orbit[m].
    pub transversal: Vec<Permutation>,
}

impl Level {
    fn new(degree: usize, point: u16) -> Self {
        Level {
            point,
            orbit: vec![point],
            pos: {
                let mut p = vec![0u32; degree];
                p[point as usize] = 1;
                p
            },
            transversal: vec![Permutation::identity(degree)],
        }
    }

    pub fn contains_point(&self, p: u16) -> bool {
        self.pos[p as usize] != 0
    }

    pub fn transversal_to(&self, p: u16) -> Option<&Permutation> {
        match self.pos[p as usize] {
            0 => None,
            m => Some(&self.transversal[m as usize - 1]),
        }
    }
}

/// Strong generating set with explicit per-level transversals. `strong[i]`
/// is a generator together with the deepest level whose base prefix it
/// fixes pointwise; the generating set of the k-th stabilizer is every
/// strong generator with level >= k.
#[derive(Clone, Debug)]
pub struct Bsgs {
    pub degree: usize,
    levels: Vec<Level>,
    strong: Vec<(usize, Permutation)>,
}

impl Bsgs {
    pub fn build(degree: usize, generators: &[Permutation], base_hint: &[u16], seed: u64) -> Bsgs {
        let mut b = Bsgs { degree, levels: Vec::new(), strong: Vec::new() };
        let gens: Vec<Permutation> =
            generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            b.insert_generator(0, g.clone(), base_hint);
        }
        if !gens.is_empty() {
            // Randomized warmup: residues of random subproducts tend to land
            // deep in the chain and cut the number of deterministic passes.
            let mut pr = ProductReplacer::new(degree, &gens, seed);
            for _ in 0..24 {
                let r = pr.next_element();
                if let Some((j, residue)) = b.sift_from(0, r) {
                    b.insert_generator(j, residue, base_hint);
                }
            }
        }
        b.complete(base_hint);
        b
    }

    pub fn base(&self) -> Vec<u16> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Strong generators fixing base[..k] pointwise.
    pub fn level_generators(&self, k: usize) -> Vec<&Permutation> {
        self.strong
            .iter()
            .filter(|(lvl, _)| *lvl >= k)
            .map(|(_, g)| g)
            .collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.strong.iter().map(|(_, g)| g.clone()).collect()
    }

    pub fn order(&self) -> u128 {
        let mut n: u128 = 1;
        for l in &self.levels {
            n = n.checked_mul(l.orbit.len() as u128).expect("group order exceeds u128");
        }
        n
    }

    /// Strips p through the chain. None means p is in the group; otherwise
    /// returns the level at which stripping failed together with the
    /// residue (which fixes base[..level] pointwise).
    pub fn sift(&self, p: &Permutation) -> Option<(usize, Permutation)> {
        self.sift_from(0, p.clone())
    }

    fn sift_from(&self, start: usize, mut x: Permutation) -> Option<(usize, Permutation)> {
        for k in start..self.levels.len() {
            let l = &self.levels[k];
            let delta = x.apply(l.point as usize) as u16;
            match l.transversal_to(delta) {
                None => return Some((k, x)),
                Some(u) => x = x.mul(&u.inverse()),
            }
        }
        if x.is_identity() {
            None
        } else {
            Some((self.levels.len(), x))
        }
    }

    fn insert_generator(&mut self, level: usize, g: Permutation, base_hint: &[u16]) {
        if g.is_identity() {
            return;
        }
        debug_assert!(level <= self.levels.len());
        if self
            .strong
            .iter()
            .any(|(lvl, h)| *lvl >= level && h == &g)
        {
            return;
        }
        if level == self.levels.len() {
            // New base point: prefer the hint order, then the first moved point.
            let existing: Vec<u16> = self.base();
            let hinted = base_hint
                .iter()
                .copied()
                .find(|&p| !existing.contains(&p) && g.apply(p as usize) != p as usize);
            let point = hinted.unwrap_or_else(|| {
                (0..self.degree as u16)
                    .find(|&p| g.apply(p as usize) != p as usize)
                    .expect("non-identity permutation moves a point")
            });
            self.levels.push(Level::new(self.degree, point));
        }
        self.strong.push((level, g));
        for k in (0..=level).rev() {
            self.rebuild_orbit(k);
        }
    }

    fn rebuild_orbit(&mut self, k: usize) {
        let gens: Vec<Permutation> = self.level_generators(k).into_iter().cloned().collect();
        let point = self.levels[k].point;
        let mut level = Level::new(self.degree, point);
        let mut head = 0;
        while head < level.orbit.len() {
            let gamma = level.orbit[head];
            let u_gamma = level.transversal[head].clone();
            head += 1;
            for g in &gens {
                let delta = g.apply(gamma as usize) as u16;
                if !level.contains_point(delta) {
                    level.pos[delta as usize] = level.orbit.len() as u32 + 1;
                    level.orbit.push(delta);
                    level.transversal.push(u_gamma.mul(g));
                }
            }
        }
        self.levels[k] = level;
    }

    /// Deterministic Schreier-Sims completion: verifies every Schreier
    /// generator of every level strips to the identity, inserting residues
    /// until that holds. On exit the chain is a true BSGS.
    fn complete(&mut self, base_hint: &[u16]) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            match self.check_level(i as usize) {
                Some((j, residue)) => {
                    self.insert_generator(j, residue, base_hint);
                    i = j.min(self.levels.len() - 1) as isize;
                }
                None => i -= 1,
            }
        }
        debug_assert!(self.verify());
    }

    /// First Schreier generator at level k that fails to strip, if any.
    fn check_level(&self, k: usize) -> Option<(usize, Permutation)> {
        let gens: Vec<Permutation> = self.level_generators(k).into_iter().cloned().collect();
        let level = &self.levels[k];
        for (m, &gamma) in level.orbit.iter().enumerate() {
            let u_gamma = &level.transversal[m];
            for g in &gens {
                let delta = g.apply(gamma as usize) as u16;
                let u_delta = level
                    .transversal_to(delta)
                    .expect("orbit closed under level generators");
                let schreier = u_gamma.mul(g).mul(&u_delta.inverse());
                if schreier.is_identity() {
                    continue;
                }
                if let Some((j, residue)) = self.sift_from(k + 1, schreier) {
                    return Some((j, residue));
                }
            }
        }
        None
    }

    /// Full verification pass (used in debug builds and tests): every
    /// Schreier generator of every level strips to the identity.
    pub fn verify(&self) -> bool {
        (0..self.levels.len()).all(|k| self.check_level(k).is_none())
    }

    /// Exactly uniform element: independent uniform transversal choice at
    /// each level, multiplied deepest level first.
    pub fn uniform_element(&self, rng: &mut impl Rng) -> Permutation {
        let mut x = Permutation::identity(self.degree);
        for l in self.levels.iter().rev() {
            let m = rng.gen_range(0..l.transversal.len());
            x = x.mul(&l.transversal[m]);
        }
        x
    }
}
