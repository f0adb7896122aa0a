//! Class data for the two smallest groups, checked against hand oracles and
//! against an independently computed brute-force partition.

use exweyl_core::classes::{diagram_automorphism, Budgets, ClassData};
use exweyl_core::perm::{group_from_generators, ElementStore};
use exweyl_core::rootsys::{build_root_system, ExcType};

fn class_data(t: ExcType, budgets: Budgets) -> ClassData {
    let rs = build_root_system(t).unwrap();
    let g = group_from_generators(rs.num_roots(), &rs.simple_reflections(), 7);
    ClassData::build(&rs, g, budgets, 7).unwrap()
}

#[test]
fn g2_has_six_classes_with_known_orders_and_sizes() {
    let cd = class_data(ExcType::G2, Budgets::default());
    assert_eq!(cd.num_classes(), 6);
    let mut orders: Vec<u32> = cd.classes.iter().map(|c| c.order).collect();
    orders.sort_unstable();
    assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    let total: u64 = cd.classes.iter().map(|c| c.size).sum();
    assert_eq!(total, 12);
    // Dihedral of order 12: 1, rot^3 | rot, rot^2 | two reflection classes.
    let mut sizes: Vec<u64> = cd.classes.iter().map(|c| c.size).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 2, 2, 3, 3]);
}

#[test]
fn f4_has_25_classes_with_known_order_multiset() {
    let cd = class_data(ExcType::F4, Budgets::default());
    assert_eq!(cd.num_classes(), 25);
    let mut orders: Vec<u32> = cd.classes.iter().map(|c| c.order).collect();
    orders.sort_unstable();
    assert_eq!(
        orders,
        vec![1, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 4, 4, 4, 4, 4, 6, 6, 6, 6, 6, 6, 6, 8, 12]
    );
    let total: u64 = cd.classes.iter().map(|c| c.size).sum();
    assert_eq!(total, 1152);
    for c in &cd.classes {
        assert_eq!(1152 % c.size, 0, "class size must divide the group order");
    }
}

#[test]
fn centralizer_orders_match_brute_force_commutant_counts() {
    for t in [ExcType::G2, ExcType::F4] {
        let rs = build_root_system(t).unwrap();
        let gens = rs.simple_reflections();
        let g = group_from_generators(rs.num_roots(), &gens, 7);
        let store = ElementStore::enumerate(rs.num_roots(), &gens, t.group_order() as usize).unwrap();
        let cd = ClassData::build(&rs, g, Budgets::default(), 7).unwrap();
        for c in 0..cd.num_classes() {
            let rep = &cd.classes[c].representative;
            let brute = (0..store.len() as u32)
                .filter(|&id| store.perm(id).commutes_with(rep))
                .count() as u128;
            assert_eq!(brute, cd.classes[c].centralizer_order, "{t:?} class {c}");
            let cent = cd.centralizer(c).unwrap();
            assert_eq!(cent.order(), brute);
            for gen in &cent.generators {
                assert!(gen.commutes_with(rep));
            }
        }
    }
}

#[test]
fn g2_reflection_centralizer_has_order_four() {
    let cd = class_data(ExcType::G2, Budgets::default());
    for c in 0..cd.num_classes() {
        let cls = &cd.classes[c];
        if cls.order == 2 && cls.size > 1 {
            assert_eq!(cls.centralizer_order, 4, "reflection class {}", cls.label);
        }
    }
}

#[test]
fn centers_match_known_sizes() {
    let g2 = class_data(ExcType::G2, Budgets::default());
    let z = g2.center();
    assert_eq!(z.len(), 2);
    let mut zorders: Vec<u32> = z.iter().map(|&c| g2.classes[c].order).collect();
    zorders.sort_unstable();
    assert_eq!(zorders, vec![1, 2]);

    let f4 = class_data(ExcType::F4, Budgets::default());
    let z = f4.center();
    assert_eq!(z.len(), 2);
    let mut zorders: Vec<u32> = z.iter().map(|&c| f4.classes[c].order).collect();
    zorders.sort_unstable();
    assert_eq!(zorders, vec![1, 2]);
}

#[test]
fn every_class_is_real() {
    for t in [ExcType::G2, ExcType::F4] {
        let cd = class_data(t, Budgets::default());
        for c in 0..cd.num_classes() {
            assert!(cd.is_real_class(c), "{t:?} class {c} should be real");
        }
    }
}

#[test]
fn class_of_is_constant_on_random_conjugates() {
    for t in [ExcType::G2, ExcType::F4] {
        let cd = class_data(t, Budgets::default());
        let mut rng = exweyl_core::perm::seeded_rng(99);
        for c in 0..cd.num_classes() {
            let rep = cd.classes[c].representative.clone();
            for _ in 0..50 {
                let h = cd.group.uniform_element(&mut rng);
                let conj = rep.conjugate_by(&h);
                assert_eq!(cd.class_of(&conj).unwrap(), c);
            }
        }
    }
}

#[test]
fn power_maps_close_and_identify_inverses() {
    let cd = class_data(ExcType::F4, Budgets::default());
    for c in 0..cd.num_classes() {
        assert_eq!(cd.power_class(c, 1), c);
        assert_eq!(cd.power_class(c, 0), cd.class_of(&exweyl_core::perm::Permutation::identity(48)).unwrap());
        let m = cd.classes[c].order as u64;
        assert_eq!(cd.power_class(c, m), cd.power_class(c, 0));
        let inv = cd.classes[c].representative.inverse();
        assert_eq!(cd.class_of(&inv).unwrap(), cd.inverse_map[c]);
    }
}

#[test]
fn quotient_by_longest_element_counts_known_classes() {
    // W(G2)/<w0> is the symmetric group S3 (3 classes); the F4 quotient has
    // 16, matching 25 total minus 9 characters that negate the center.
    let g2 = class_data(ExcType::G2, Budgets::default());
    let rs = build_root_system(ExcType::G2).unwrap();
    assert_eq!(g2.quotient_class_count(&rs.negation_perm()).unwrap(), 3);

    let f4 = class_data(ExcType::F4, Budgets::default());
    let rs = build_root_system(ExcType::F4).unwrap();
    assert_eq!(f4.quotient_class_count(&rs.negation_perm()).unwrap(), 16);
}

#[test]
fn quotient_by_identity_is_a_no_op() {
    let cd = class_data(ExcType::G2, Budgets::default());
    let id = exweyl_core::perm::Permutation::identity(12);
    assert_eq!(cd.quotient_class_count(&id).unwrap(), 6);
}

#[test]
fn quotient_rejects_non_central_elements() {
    let cd = class_data(ExcType::G2, Budgets::default());
    let rs = build_root_system(ExcType::G2).unwrap();
    assert!(cd.quotient_class_count(&rs.simple_reflection(0)).is_err());
}

#[test]
fn discovery_route_agrees_with_enumeration_on_f4() {
    // Shrink the enumeration budget so F4 is forced through the random
    // discovery path, then compare against the enumerated ground truth.
    let tiny = Budgets {
        enumerate_limit: 100,
        ..Budgets::default()
    };
    let by_discovery = class_data(ExcType::F4, tiny);
    let by_enumeration = class_data(ExcType::F4, Budgets::default());
    assert_eq!(by_discovery.num_classes(), by_enumeration.num_classes());
    let key = |cd: &ClassData| {
        let mut v: Vec<(u32, u64, u128, Vec<u8>)> = cd
            .classes
            .iter()
            .map(|c| (c.order, c.size, c.centralizer_order, c.fingerprint.to_bytes()))
            .collect();
        v.sort();
        v
    };
    assert_eq!(key(&by_discovery), key(&by_enumeration));
    // Labels are canonical, so class <-> class correspondence should be the
    // label order itself whenever fingerprints are collision-free.
    for (a, b) in by_discovery.classes.iter().zip(&by_enumeration.classes) {
        assert_eq!(a.order, b.order);
        assert_eq!(a.size, b.size);
    }
}

#[test]
fn discovery_route_agrees_on_g2() {
    let tiny = Budgets {
        enumerate_limit: 1,
        ..Budgets::default()
    };
    let cd = class_data(ExcType::G2, tiny);
    assert_eq!(cd.num_classes(), 6);
    let total: u64 = cd.classes.iter().map(|c| c.size).sum();
    assert_eq!(total, 12);
}

#[test]
fn g2_swap_automorphism_merges_the_reflection_classes() {
    let rs = build_root_system(ExcType::G2).unwrap();
    let cd = class_data(ExcType::G2, Budgets::default());
    let aut = diagram_automorphism(&rs).unwrap().expect("G2 has a graph symmetry");
    let action = cd.class_action(&aut.root_map).unwrap();
    let orbits = cd.iso_conjugacy_orbits(std::slice::from_ref(&action));
    assert_eq!(orbits.len(), 5);
    let merged: Vec<&Vec<usize>> = orbits.iter().filter(|o| o.len() == 2).collect();
    assert_eq!(merged.len(), 1);
    let pair = merged[0];
    // The merged classes are the two reflection classes: order 2, size 3.
    for &c in pair {
        assert_eq!(cd.classes[c].order, 2);
        assert_eq!(cd.classes[c].size, 3);
    }
    // The central twist by the determinant also swaps the reflection
    // classes (s w0 is the other-colored reflection in a dihedral group),
    // so the full supply fuses nothing further.
    let all = cd.automorphism_actions().unwrap();
    assert!(all.len() >= 2);
    assert_eq!(cd.iso_conjugacy_orbits(&all).len(), 5);
}

#[test]
fn f4_duality_alone_fuses_seven_class_pairs() {
    let rs = build_root_system(ExcType::F4).unwrap();
    let cd = class_data(ExcType::F4, Budgets::default());
    let aut = diagram_automorphism(&rs).unwrap().expect("F4 has a graph symmetry");
    let action = cd.class_action(&aut.root_map).unwrap();
    let orbits = cd.iso_conjugacy_orbits(std::slice::from_ref(&action));
    // The graph symmetry swaps long and short: seven class pairs fuse,
    // matching the character-table fusion of the long/short flip.
    assert_eq!(orbits.len(), 18);
    assert_eq!(orbits.iter().filter(|o| o.len() == 2).count(), 7);
    for orbit in &orbits {
        for w in orbit.windows(2) {
            assert_eq!(cd.classes[w[0]].order, cd.classes[w[1]].order);
            assert_eq!(cd.classes[w[0]].size, cd.classes[w[1]].size);
        }
    }
}

#[test]
fn f4_full_automorphism_supply_yields_fifteen_orbits() {
    let cd = class_data(ExcType::F4, Budgets::default());
    // -1 is central and every positive root count per length is even
    // (12 long, 12 short), so all three nontrivial central twists exist
    // alongside the duality: 4 actions in total.
    let actions = cd.automorphism_actions().unwrap();
    assert_eq!(actions.len(), 4);
    let orbits = cd.iso_conjugacy_orbits(&actions);
    assert_eq!(orbits.len(), 15);
    // Two orbits of four (a reflection-type family and its twist partners
    // fused across both duality and negation), four pairs, nine fixed
    // classes. The exhaustive generating-tuple oracle confirms this is the
    // complete fusion under the full automorphism group.
    let mut sizes: Vec<usize> = orbits.iter().map(|o| o.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 4, 4]);
    for orbit in &orbits {
        for w in orbit.windows(2) {
            assert_eq!(cd.classes[w[0]].order, cd.classes[w[1]].order);
            assert_eq!(cd.classes[w[0]].size, cd.classes[w[1]].size);
        }
    }
}

#[test]
fn exponents_match_the_order_lattice() {
    assert_eq!(class_data(ExcType::G2, Budgets::default()).exponent(), 6);
    assert_eq!(class_data(ExcType::F4, Budgets::default()).exponent(), 24);
}
