//! Conjugacy classes by full element enumeration.
//!
//! Every element of the group is materialized in a packed `ElementStore`;
//! classes are the weakly connected components of the conjugation graph
//! whose edges are conjugation by the group generators. Forward BFS closure
//! suffices: each edge map is a bijection of a finite set, so a
//! forward-closed set is automatically backward-closed.
//!
//! The store id order is deterministic (BFS from the identity over the
//! generator list), so "smallest id in the class" is a reproducible choice
//! of representative.

use crate::perm::{conj_row, mul_rows, ElementStore, PermGroup, Permutation};
use crate::{Error, Result};

pub(crate) struct Partition {
    pub store: ElementStore,
    /// Class index (pre-canonicalization) per element id.
    pub class_of_id: Vec<u16>,
    /// Per class: store id of the minimal element.
    pub rep_ids: Vec<u32>,
    pub sizes: Vec<u64>,
}

pub(crate) fn partition_classes(g: &PermGroup) -> Result<Partition> {
    let order = g.order();
    let limit = usize::try_from(order)
        .map_err(|_| Error::budget(format!("group order {order} exceeds addressable store")))?;
    let store = ElementStore::enumerate(g.degree, &g.generators, limit)?;
    if store.len() as u128 != order {
        return Err(Error::mismatch(format!(
            "store closure found {} elements, BSGS order says {}",
            store.len(),
            order
        )));
    }

    let n = store.len();
    let degree = store.degree();
    let gen_rows: Vec<Vec<u8>> = g
        .generators
        .iter()
        .map(|p| p.images().iter().map(|&x| x as u8).collect())
        .collect();

    let mut class_of_id = vec![u16::MAX; n];
    let mut rep_ids = Vec::new();
    let mut sizes = Vec::new();
    let mut queue: Vec<u32> = Vec::new();
    let mut scratch = vec![0u8; degree];

    for start in 0..n as u32 {
        if class_of_id[start as usize] != u16::MAX {
            continue;
        }
        let class_idx = rep_ids.len() as u16;
        if class_idx == u16::MAX {
            return Err(Error::budget("more than 65534 classes"));
        }
        rep_ids.push(start);
        queue.clear();
        queue.push(start);
        class_of_id[start as usize] = class_idx;
        let mut head = 0usize;
        while head < queue.len() {
            let cur = queue[head];
            head += 1;
            for grow in &gen_rows {
                conj_row(store.row(cur), grow, &mut scratch);
                let img = store
                    .index_of_row(&scratch)
                    .ok_or_else(|| Error::mismatch("conjugate left the element store"))?;
                if class_of_id[img as usize] == u16::MAX {
                    class_of_id[img as usize] = class_idx;
                    queue.push(img);
                }
            }
        }
        sizes.push(queue.len() as u64);
    }

    let total: u128 = sizes.iter().map(|&s| s as u128).sum();
    if total != order {
        return Err(Error::mismatch(format!(
            "class sizes sum to {total}, group order is {order}"
        )));
    }
    Ok(Partition {
        store,
        class_of_id,
        rep_ids,
        sizes,
    })
}

/// Centralizer of the class representative with the given store id, built
/// from Schreier generators of the conjugation orbit. The expected order
/// |G| / class_size is known in advance, which gives both an early stop and
/// an exactness certificate.
pub(crate) fn schreier_centralizer(
    g: &PermGroup,
    store: &ElementStore,
    rep_id: u32,
    class_size: u64,
    seed: u64,
) -> Result<PermGroup> {
    let order = g.order();
    let target = order / class_size as u128;
    let degree = g.degree;
    let gen_rows: Vec<Vec<u8>> = g
        .generators
        .iter()
        .map(|p| p.images().iter().map(|&x| x as u8).collect())
        .collect();

    // BFS the orbit again, now keeping a transversal permutation per member:
    // trans[x] conjugates the representative to x.
    let mut trans: std::collections::HashMap<u32, Permutation> = std::collections::HashMap::new();
    trans.insert(rep_id, Permutation::identity(degree));
    let mut queue = vec![rep_id];
    let mut head = 0;
    let mut scratch = vec![0u8; degree];
    let mut edges: Vec<(u32, usize, u32)> = Vec::new();
    while head < queue.len() {
        let cur = queue[head];
        head += 1;
        for (k, grow) in gen_rows.iter().enumerate() {
            conj_row(store.row(cur), grow, &mut scratch);
            let img = store
                .index_of_row(&scratch)
                .ok_or_else(|| Error::mismatch("conjugate left the element store"))?;
            if trans.contains_key(&img) {
                edges.push((cur, k, img));
            } else {
                let t = trans[&cur].mul(&g.generators[k]);
                trans.insert(img, t);
                queue.push(img);
            }
        }
    }
    if queue.len() as u64 != class_size {
        return Err(Error::mismatch(format!(
            "conjugation orbit has {} members, partition says {}",
            queue.len(),
            class_size
        )));
    }

    // Schreier generators close the stabilizer; add them until the BSGS
    // order reaches the known target.
    let rep = store.perm(rep_id);
    let mut cgens: Vec<Permutation> = Vec::new();
    let mut cgroup = PermGroup::trivial(degree);
    if !rep.is_identity() {
        cgens.push(rep.clone());
        cgroup = crate::perm::group_from_generators(degree, &cgens, seed);
    }
    if cgroup.order() < target {
        for &(y, k, z) in &edges {
            let s = trans[&y].mul(&g.generators[k]).mul(&trans[&z].inverse());
            if s.is_identity() || cgroup.contains(&s) {
                continue;
            }
            cgens.push(s);
            cgroup = crate::perm::group_from_generators(degree, &cgens, seed);
            if cgroup.order() >= target {
                break;
            }
        }
    }
    if cgroup.order() != target {
        return Err(Error::mismatch(format!(
            "Schreier closure built order {} centralizer, expected {}",
            cgroup.order(),
            target
        )));
    }
    Ok(cgroup)
}

/// Number of conjugacy classes of G / <z> for an enumerated partition of G
/// and a central z: classes of the quotient correspond to orbits of the
/// class set under multiplication by z, so we count cycles of the induced
/// map. The caller guarantees centrality; the permutation check below
/// catches violations anyway, because multiplication by a non-central
/// element does not act on classes.
pub(crate) fn quotient_class_count(part: &Partition, z: &Permutation) -> Result<usize> {
    let degree = part.store.degree();
    let zrow: Vec<u8> = z.images().iter().map(|&v| v as u8).collect();
    let mut out = vec![0u8; degree];
    let map: Vec<usize> = part
        .rep_ids
        .iter()
        .map(|&rep| {
            mul_rows(part.store.row(rep), &zrow, &mut out);
            let id = part.store.index_of_row(&out).ok_or_else(|| {
                Error::mismatch("central translate left the enumerated group")
            })?;
            Ok(part.class_of_id[id as usize] as usize)
        })
        .collect::<Result<_>>()?;
    if !super::is_permutation(&map) {
        return Err(Error::mismatch(
            "multiplication by a central element did not permute the classes",
        ));
    }
    Ok(super::count_cycles(&map))
}
