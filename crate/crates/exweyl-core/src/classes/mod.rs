//! Conjugacy class data: classes with canonical labels, centralizers, power
//! maps, realness, centers, and the class fusion under outer automorphisms
//! (diagram symmetries and central twists).
//!
//! Two construction routes share one interface: groups of order at most the
//! enumeration budget are partitioned exhaustively over a packed element
//! store; larger groups (in practice only W(E8)) go through fingerprinted
//! random discovery where every class size comes from an exhaustive
//! centralizer backtrack and completeness is certified by the sizes summing
//! to |G|.
//!
//! Class labels are canonical for the library, sorted by (element order,
//! class size, fingerprint bytes): external tools number the same classes
//! differently, so any comparison with outside data must go through
//! conjugation invariants, never raw label positions.

mod autos;
mod discover;
pub(crate) mod enumerate;
mod fingerprint;

pub use autos::{diagram_automorphism, graph_symmetry, ColorSign, DiagramAut};
pub use fingerprint::Fingerprint;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::perm::{conjugating_element, ElementStore, PermGroup, Permutation};
use crate::rootsys::{ExcType, RootSystem};
use crate::{Error, Result};

/// Search and memory budgets. Exceeding any of them is a reported
/// `Error::Budget`, never a silently wrong answer.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest group order that is fully enumerated (packed rows in memory).
    pub enumerate_limit: u128,
    /// Uniform random draws allowed during class discovery.
    pub discover_draws: u64,
    /// Node budget per conjugacy (transporter) backtrack.
    pub transporter_nodes: u64,
    /// Node budget per centralizer backtrack.
    pub centralizer_nodes: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            enumerate_limit: 10_000_000,
            discover_draws: 200_000,
            transporter_nodes: 200_000_000,
            centralizer_nodes: 500_000_000,
        }
    }
}

/// One conjugacy class.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub label: String,
    pub representative: Permutation,
    pub order: u32,
    pub size: u64,
    pub centralizer_order: u128,
    pub fingerprint: Fingerprint,
}

enum Backend {
    Enumerated {
        store: ElementStore,
        /// Canonical class index per element id.
        class_of_id: Vec<u16>,
        /// Per canonical class: store id of its representative.
        rep_ids: Vec<u32>,
    },
    Discovered {
        centralizers: Vec<PermGroup>,
    },
}

pub struct ClassData {
    pub etype: ExcType,
    pub rs: RootSystem,
    pub group: PermGroup,
    pub classes: Vec<ConjClass>,
    /// Per class: class of rep^k for k = 0..order (period-compressed; use
    /// `power_class` for arbitrary exponents).
    pub power_maps: Vec<Vec<usize>>,
    pub inverse_map: Vec<usize>,
    backend: Backend,
    buckets: HashMap<Vec<u8>, Vec<usize>>,
    budgets: Budgets,
    seed: u64,
}

impl ClassData {
    /// Build class data for the Weyl group of `rs`. The `seed` drives every
    /// randomized search; the resulting classes, labels, and representatives
    /// are deterministic given (version, seed).
    pub fn build(rs: &RootSystem, group: PermGroup, budgets: Budgets, seed: u64) -> Result<ClassData> {
        let order = group.order();

        // Raw per-class tuples plus the route-specific leftovers.
        struct Raw {
            rep: Permutation,
            fp: Fingerprint,
            size: u64,
            cent_order: u128,
            rep_id: u32,                 // enumerated route only
            centralizer: Option<PermGroup>, // discovered route only
        }
        let mut raw: Vec<Raw>;
        let enumerated = order <= budgets.enumerate_limit;
        let mut partition = None;
        if enumerated {
            let part = enumerate::partition_classes(&group)?;
            raw = part
                .rep_ids
                .iter()
                .zip(&part.sizes)
                .map(|(&rid, &size)| {
                    let rep = part.store.perm(rid);
                    let fp = Fingerprint::of(rs, &rep);
                    Raw {
                        rep,
                        fp,
                        size,
                        cent_order: order / size as u128,
                        rep_id: rid,
                        centralizer: None,
                    }
                })
                .collect();
            partition = Some(part);
        } else {
            let d = discover::discover_classes(
                rs,
                &group,
                budgets.discover_draws,
                budgets.transporter_nodes,
                budgets.centralizer_nodes,
                seed,
            )?;
            raw = d
                .reps
                .into_iter()
                .zip(d.fingerprints)
                .zip(d.sizes)
                .zip(d.centralizers)
                .map(|(((rep, fp), size), cent)| Raw {
                    rep,
                    fp,
                    size,
                    cent_order: cent.order(),
                    rep_id: 0,
                    centralizer: Some(cent),
                })
                .collect();
        }

        // Canonical order. The representative-image tie-break only matters
        // if two distinct classes agree on order, size, and fingerprint; it
        // keeps labels reproducible for a fixed seed even then.
        raw.sort_by(|a, b| {
            (a.fp.order, a.size, a.fp.to_bytes(), a.rep.images())
                .cmp(&(b.fp.order, b.size, b.fp.to_bytes(), b.rep.images()))
        });

        let width = raw.len().to_string().len();
        let mut classes = Vec::with_capacity(raw.len());
        let mut buckets: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
        let mut rep_ids = Vec::with_capacity(raw.len());
        let mut centralizers = Vec::with_capacity(raw.len());
        for (new, r) in raw.into_iter().enumerate() {
            buckets.entry(r.fp.to_bytes()).or_default().push(new);
            rep_ids.push(r.rep_id);
            if let Some(c) = r.centralizer {
                centralizers.push(c);
            }
            classes.push(ConjClass {
                label: format!("c{:0width$}", new + 1),
                representative: r.rep,
                order: r.fp.order,
                size: r.size,
                centralizer_order: r.cent_order,
                fingerprint: r.fp,
            });
        }

        let backend = if let Some(part) = partition {
            // Re-derive element -> canonical class from the store: the
            // partition's indices predate the sort, so map old -> new via
            // representative ids.
            let mut new_of_old = vec![usize::MAX; classes.len()];
            for (old, &rid) in part.rep_ids.iter().enumerate() {
                let new = rep_ids
                    .iter()
                    .position(|&r| r == rid)
                    .expect("representative survived the sort");
                new_of_old[old] = new;
            }
            let class_of_id = part
                .class_of_id
                .iter()
                .map(|&old| new_of_old[old as usize] as u16)
                .collect();
            Backend::Enumerated {
                store: part.store,
                class_of_id,
                rep_ids,
            }
        } else {
            Backend::Discovered { centralizers }
        };

        let mut cd = ClassData {
            etype: rs.etype,
            rs: rs.clone(),
            group,
            classes,
            power_maps: Vec::new(),
            inverse_map: Vec::new(),
            backend,
            buckets,
            budgets,
            seed,
        };
        cd.power_maps = cd.build_power_maps()?;
        cd.inverse_map = cd
            .power_maps
            .iter()
            .enumerate()
            .map(|(c, pm)| pm[(cd.classes[c].order as usize - 1) % pm.len()])
            .collect();
        for (c, &ic) in cd.inverse_map.iter().enumerate() {
            if cd.inverse_map[ic] != c {
                return Err(Error::mismatch("inverse map is not an involution"));
            }
        }
        Ok(cd)
    }

    fn build_power_maps(&self) -> Result<Vec<Vec<usize>>> {
        let mut maps = Vec::with_capacity(self.classes.len());
        for cls in &self.classes {
            let m = cls.order as u64;
            let mut row = Vec::with_capacity(m as usize);
            for k in 0..m {
                row.push(self.class_of(&cls.representative.pow(k))?);
            }
            maps.push(row);
        }
        Ok(maps)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, c: usize) -> &ConjClass {
        &self.classes[c]
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn budgets(&self) -> &Budgets {
        &self.budgets
    }

    /// Exponent of the group: lcm of the class orders.
    pub fn exponent(&self) -> u64 {
        self.classes
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.order as u64))
    }

    /// Canonical class index of an arbitrary group element.
    pub fn class_of(&self, p: &Permutation) -> Result<usize> {
        match &self.backend {
            Backend::Enumerated {
                store, class_of_id, ..
            } => {
                let id = store
                    .index_of(p)
                    .ok_or_else(|| Error::input("element is not in the group"))?;
                Ok(class_of_id[id as usize] as usize)
            }
            Backend::Discovered { .. } => {
                if p.degree() != self.group.degree || !self.group.contains(p) {
                    return Err(Error::input("element is not in the group"));
                }
                let fp = Fingerprint::of(&self.rs, p);
                let key = fp.to_bytes();
                let candidates = self
                    .buckets
                    .get(&key)
                    .ok_or_else(|| Error::input("element matches no class fingerprint"))?;
                if candidates.len() == 1 {
                    return Ok(candidates[0]);
                }
                for &c in candidates {
                    if conjugating_element(
                        &self.group,
                        p,
                        &self.classes[c].representative,
                        self.budgets.transporter_nodes,
                        self.seed,
                    )?
                    .is_some()
                    {
                        return Ok(c);
                    }
                }
                Err(Error::mismatch(
                    "element conjugate to no class despite matching fingerprints",
                ))
            }
        }
    }

    /// The centralizer subgroup of the class representative, with certified
    /// exact order.
    pub fn centralizer(&self, c: usize) -> Result<PermGroup> {
        let cls = &self.classes[c];
        if cls.size == 1 {
            return Ok(self.group.clone());
        }
        match &self.backend {
            Backend::Enumerated { store, rep_ids, .. } => enumerate::schreier_centralizer(
                &self.group,
                store,
                rep_ids[c],
                cls.size,
                self.seed,
            ),
            Backend::Discovered { centralizers } => Ok(centralizers[c].clone()),
        }
    }

    pub(crate) fn enumerated_store(&self) -> Option<&ElementStore> {
        match &self.backend {
            Backend::Enumerated { store, .. } => Some(store),
            Backend::Discovered { .. } => None,
        }
    }

    pub(crate) fn class_of_store_id(&self, id: u32) -> Option<usize> {
        match &self.backend {
            Backend::Enumerated { class_of_id, .. } => Some(class_of_id[id as usize] as usize),
            Backend::Discovered { .. } => None,
        }
    }

    /// Class ids of size-1 classes: the center.
    pub fn center(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| self.classes[c].size == 1)
            .collect()
    }

    pub fn is_real_class(&self, c: usize) -> bool {
        self.inverse_map[c] == c
    }

    /// Class of rep_c^k for any k >= 0.
    pub fn power_class(&self, c: usize, k: u64) -> usize {
        let pm = &self.power_maps[c];
        pm[(k % pm.len() as u64) as usize]
    }

    /// Number of conjugacy classes of G / <z> for a central element z:
    /// orbits of the class set under multiplication by z.
    pub fn quotient_class_count(&self, z: &Permutation) -> Result<usize> {
        for gen in &self.group.generators {
            if !z.commutes_with(gen) {
                return Err(Error::input("quotient counting requires a central element"));
            }
        }
        let map: Vec<usize> = self
            .classes
            .iter()
            .map(|cls| self.class_of(&cls.representative.mul(z)))
            .collect::<Result<_>>()?;
        if !is_permutation(&map) {
            return Err(Error::mismatch(
                "multiplication by a central element did not permute the classes",
            ));
        }
        Ok(count_cycles(&map))
    }

    /// The permutation of class ids induced by transporting representatives
    /// along a root permutation that normalizes the group.
    pub fn class_action(&self, f: &Permutation) -> Result<Vec<usize>> {
        for gen in &self.group.generators {
            if !self.group.contains(&gen.conjugate_by(f)) {
                return Err(Error::input(
                    "root map does not normalize the group; no class action",
                ));
            }
        }
        let map: Vec<usize> = self
            .classes
            .iter()
            .map(|cls| self.class_of(&cls.representative.conjugate_by(f)))
            .collect::<Result<_>>()?;
        if !is_permutation(&map) {
            return Err(Error::mismatch("automorphism did not permute the classes"));
        }
        Ok(map)
    }

    /// The class permutation induced by the central twist w -> w z^chi(w),
    /// where z is the representative of the size-1 class `z_class` and chi
    /// is the given linear character. The twist is an automorphism exactly
    /// when chi(z) = 1 (otherwise z and 1 collide); classes with chi = -1
    /// move to their z-translates, the rest stay put.
    pub fn central_twist_action(&self, z_class: usize, chi: &ColorSign) -> Result<Vec<usize>> {
        let zc = &self.classes[z_class];
        if zc.size != 1 {
            return Err(Error::input(format!(
                "class {} has size {}, not central",
                zc.label, zc.size
            )));
        }
        let z = &zc.representative;
        if zc.order > 2 {
            return Err(Error::input("central twists here need an involution"));
        }
        if chi.is_minus_on(z) {
            return Err(Error::input(format!(
                "chi({}) = -1: the twist by {} is not injective",
                zc.label,
                chi.label()
            )));
        }
        let mut map = Vec::with_capacity(self.classes.len());
        for cls in &self.classes {
            if chi.is_minus_on(&cls.representative) {
                map.push(self.class_of(&cls.representative.mul(z))?);
            } else {
                map.push(self.class_of(&cls.representative)?);
            }
        }
        if !is_permutation(&map) {
            return Err(Error::mismatch("central twist did not permute the classes"));
        }
        for (c, &img) in map.iter().enumerate() {
            if self.classes[c].order != self.classes[img].order
                || self.classes[c].size != self.classes[img].size
            {
                return Err(Error::mismatch(
                    "central twist image has mismatched order or size",
                ));
            }
        }
        Ok(map)
    }

    /// Class actions of every outer automorphism source this library knows:
    /// the diagram symmetry (when the graph has one) and the central twists
    /// by each linear character that is trivial on the central involution.
    /// Inner automorphisms fix classes, so these actions are what decides
    /// which classes fuse under the full automorphism group.
    pub fn automorphism_actions(&self) -> Result<Vec<Vec<usize>>> {
        let mut actions = Vec::new();
        if let Some(aut) = autos::diagram_automorphism(&self.rs)? {
            actions.push(self.class_action(&aut.root_map)?);
        }
        let characters = ColorSign::all_characters(&self.rs)?;
        for z_class in self.center() {
            if self.classes[z_class].order != 2 {
                continue;
            }
            for chi in &characters {
                if !chi.is_minus_on(&self.classes[z_class].representative) {
                    actions.push(self.central_twist_action(z_class, chi)?);
                }
            }
        }
        Ok(actions)
    }

    /// Orbits of class ids under the group generated by the given class
    /// actions, each orbit sorted, orbits sorted by first member.
    pub fn iso_conjugacy_orbits(&self, actions: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let n = self.classes.len();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let cur = orbit[head];
                head += 1;
                for action in actions {
                    let img = action[cur];
                    if !seen[img] {
                        seen[img] = true;
                        orbit.push(img);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Plain serializable summary (what the cache and the CLI export).
    pub fn summary(&self) -> ClassSummary {
        ClassSummary {
            group: format!("{:?}", self.etype),
            group_order: self.group.order().to_string(),
            seed: self.seed,
            classes: self
                .classes
                .iter()
                .map(|c| ClassRow {
                    label: c.label.clone(),
                    order: c.order,
                    size: c.size,
                    centralizer_order: c.centralizer_order.to_string(),
                    fingerprint_hash: format!("{:032x}", c.fingerprint.hash()),
                })
                .collect(),
            power_maps: self.power_maps.clone(),
            inverse_map: self.inverse_map.clone(),
        }
    }
}

fn is_permutation(map: &[usize]) -> bool {
    let mut hit = vec![false; map.len()];
    for &m in map {
        if m >= map.len() || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    true
}

fn count_cycles(map: &[usize]) -> usize {
    let mut seen = vec![false; map.len()];
    let mut cycles = 0;
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = map[cur];
        }
    }
    cycles
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassSummary {
    pub group: String,
    pub group_order: String,
    pub seed: u64,
    pub classes: Vec<ClassRow>,
    pub power_maps: Vec<Vec<usize>>,
    pub inverse_map: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassRow {
    pub label: String,
    pub order: u32,
    pub size: u64,
    pub centralizer_order: String,
    pub fingerprint_hash: String,
}
