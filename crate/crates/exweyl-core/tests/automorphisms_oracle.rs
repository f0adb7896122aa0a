//! Exhaustive ground truth for the class fusion under the full automorphism
//! group, at orders where every automorphism can be enumerated.
//!
//! An automorphism is exactly an ordered tuple (t_1..t_r) of elements that
//! satisfies the defining Coxeter orders with equality and generates the
//! whole group: images of the standard generators determine the map, exact
//! orders are forced because automorphisms preserve element orders, and any
//! relation-satisfying generating tuple extends to a surjective (hence
//! bijective) endomorphism. Enumerating all such tuples therefore yields
//! all of Aut(W), with no appeal to its structure. The induced fusion of
//! conjugacy classes is then compared against what the library's supply of
//! automorphism actions (diagram symmetry plus central twists) produces:
//! the two partitions must agree, or the supply is incomplete.

use std::collections::{HashMap, HashSet};

use exweyl_core::classes::{Budgets, ClassData};
use exweyl_core::perm::{group_from_generators, Permutation};
use exweyl_core::rootsys::{build_root_system, ExcType};

/// Breadth-first closure of the group with one parent edge per element, so
/// each element gets a word in the generators (index list, applied left to
/// right with the library's composition order).
struct Words {
    elements: Vec<Permutation>,
    index: HashMap<Vec<u16>, usize>,
    parent: Vec<(usize, usize)>,
}

fn bfs_words(gens: &[Permutation], degree: usize) -> Words {
    let id = Permutation::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id.images().to_vec(), 0usize);
    let mut parent = vec![(usize::MAX, usize::MAX)];
    let mut head = 0;
    while head < elements.len() {
        let cur = elements[head].clone();
        for (k, g) in gens.iter().enumerate() {
            let nxt = cur.mul(g);
            if !index.contains_key(nxt.images()) {
                index.insert(nxt.images().to_vec(), elements.len());
                elements.push(nxt);
                parent.push((head, k));
            }
        }
        head += 1;
    }
    Words { elements, index, parent }
}

impl Words {
    fn word_of(&self, p: &Permutation) -> Vec<usize> {
        let mut idx = *self.index.get(p.images()).expect("element not in group");
        let mut rev = Vec::new();
        while idx != 0 {
            let (prev, gen) = self.parent[idx];
            rev.push(gen);
            idx = prev;
        }
        rev.reverse();
        rev
    }
}

fn apply_word(tuple: &[&Permutation], word: &[usize], degree: usize) -> Permutation {
    let mut acc = Permutation::identity(degree);
    for &k in word {
        acc = acc.mul(tuple[k]);
    }
    acc
}

/// All automorphisms of the group, as the class permutations they induce.
/// `coxeter` lists (i, j, m) for i < j; ord(t_i t_j) must equal m exactly.
fn exhaustive_class_actions(
    cd: &ClassData,
    coxeter: &[(usize, usize, u64)],
    rank: usize,
) -> (usize, HashSet<Vec<usize>>) {
    let degree = cd.group.generators[0].degree();
    let order = cd.group.order();
    let words = bfs_words(&cd.group.generators, degree);
    assert_eq!(words.elements.len() as u128, order);

    let invs: Vec<&Permutation> = words
        .elements
        .iter()
        .filter(|p| !p.is_identity() && p.mul(p).is_identity())
        .collect();
    let n = invs.len();
    // ord(invs[i] * invs[j]) for every pair; 0 stands for "too large to care".
    let mut pair_ord = vec![vec![0u8; n]; n];
    for i in 0..n {
        for j in 0..n {
            let o = invs[i].mul(invs[j]).order();
            pair_ord[i][j] = if o <= 6 { o as u8 } else { 0 };
        }
    }

    let rep_words: Vec<Vec<usize>> = cd
        .classes
        .iter()
        .map(|c| words.word_of(&c.representative))
        .collect();

    let mut stack: Vec<usize> = Vec::with_capacity(rank);
    let mut tuple_count = 0usize;
    let mut actions: HashSet<Vec<usize>> = HashSet::new();
    // Depth-first over involution indices with the exact-order constraints;
    // a completed tuple still must generate the whole group.
    fn dfs(
        stack: &mut Vec<usize>,
        invs: &[&Permutation],
        pair_ord: &[Vec<u8>],
        coxeter: &[(usize, usize, u64)],
        rank: usize,
        degree: usize,
        order: u128,
        cd: &ClassData,
        rep_words: &[Vec<usize>],
        tuple_count: &mut usize,
        actions: &mut HashSet<Vec<usize>>,
    ) {
        let level = stack.len();
        if level == rank {
            let tuple: Vec<&Permutation> = stack.iter().map(|&i| invs[i]).collect();
            let gens: Vec<Permutation> = tuple.iter().map(|p| (*p).clone()).collect();
            if group_from_generators(degree, &gens, 7).order() != order {
                return;
            }
            *tuple_count += 1;
            let map: Vec<usize> = rep_words
                .iter()
                .map(|w| cd.class_of(&apply_word(&tuple, w, degree)).unwrap())
                .collect();
            actions.insert(map);
            return;
        }
        'cand: for c in 0..invs.len() {
            // Constraints are listed with i < j and slots fill in order, so
            // only pairs whose later slot is this level are checkable.
            for &(i, j, m) in coxeter {
                if j == level && pair_ord[stack[i]][c] as u64 != m {
                    continue 'cand;
                }
            }
            stack.push(c);
            dfs(
                stack, invs, pair_ord, coxeter, rank, degree, order, cd, rep_words,
                tuple_count, actions,
            );
            stack.pop();
        }
    }
    dfs(
        &mut stack,
        &invs,
        &pair_ord,
        coxeter,
        rank,
        degree,
        cd.group.order(),
        cd,
        &rep_words,
        &mut tuple_count,
        &mut actions,
    );
    (tuple_count, actions)
}

fn sorted_orbits(cd: &ClassData, actions: &[Vec<usize>]) -> Vec<Vec<usize>> {
    cd.iso_conjugacy_orbits(actions)
}

#[test]
fn g2_every_automorphism_is_accounted_for() {
    let rs = build_root_system(ExcType::G2).unwrap();
    let g = group_from_generators(rs.num_roots(), &rs.simple_reflections(), 7);
    let cd = ClassData::build(&rs, g, Budgets::default(), 7).unwrap();
    // Dihedral of order 12: relations ord(t1)=ord(t2)=2, ord(t1 t2)=6.
    let (count, actions) = exhaustive_class_actions(&cd, &[(0, 1, 6)], 2);
    // |Aut| = 12 (holomorph of the rotation subgroup); |Inn| = 6.
    assert_eq!(count, 12);
    let exhaustive: Vec<Vec<usize>> = actions.into_iter().collect();
    let orbits = sorted_orbits(&cd, &exhaustive);
    assert_eq!(orbits.len(), 5);

    let supply = cd.automorphism_actions().unwrap();
    for a in &supply {
        assert!(exhaustive.contains(a), "supply action not induced by any automorphism");
    }
    assert_eq!(orbits, sorted_orbits(&cd, &supply));
}

#[test]
fn f4_every_automorphism_is_accounted_for() {
    let rs = build_root_system(ExcType::F4).unwrap();
    let g = group_from_generators(rs.num_roots(), &rs.simple_reflections(), 7);
    let cd = ClassData::build(&rs, g, Budgets::default(), 7).unwrap();
    // Coxeter orders along the F4 diagram: 3, 4, 3; disconnected pairs
    // commute.
    let relations = [
        (0, 1, 3),
        (1, 2, 4),
        (2, 3, 3),
        (0, 2, 2),
        (0, 3, 2),
        (1, 3, 2),
    ];
    let (count, actions) = exhaustive_class_actions(&cd, &relations, 4);
    // |Inn| = 1152/2; the quotient is the outer automorphism group.
    assert_eq!(count % 576, 0);
    assert_eq!(
        count / 576,
        8,
        "outer automorphism group order changed; fusion claims must be re-derived"
    );
    let exhaustive: Vec<Vec<usize>> = actions.into_iter().collect();
    let orbits = sorted_orbits(&cd, &exhaustive);
    assert_eq!(orbits.len(), 15);
    let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 4, 4]);

    let supply = cd.automorphism_actions().unwrap();
    for a in &supply {
        assert!(exhaustive.contains(a), "supply action not induced by any automorphism");
    }
    assert_eq!(orbits, sorted_orbits(&cd, &supply));
}
