//! The conjugation backtrack searches (centralizer and transporter) checked
//! against brute force on the small groups and against class data on E6.
//! These two searches certify every class size at the largest scale, so
//! they get the most direct oracles in the suite.

use exweyl_core::classes::{Budgets, ClassData};
use exweyl_core::perm::{
    centralizer_backtrack, conjugating_element, group_from_generators, ElementStore, Permutation,
};
use exweyl_core::rootsys::{build_root_system, ExcType};
use exweyl_core::Error;

#[test]
fn centralizer_backtrack_matches_brute_force_on_small_groups() {
    for t in [ExcType::G2, ExcType::F4] {
        let rs = build_root_system(t).unwrap();
        let gens = rs.simple_reflections();
        let g = group_from_generators(rs.num_roots(), &gens, 5);
        let store =
            ElementStore::enumerate(rs.num_roots(), &gens, t.group_order() as usize).unwrap();
        // Every 17th element keeps F4 affordable while hitting varied cycle
        // structures; G2 is covered completely.
        let step = if t == ExcType::G2 { 1 } else { 17 };
        for id in (0..store.len() as u32).step_by(step) {
            let x = store.perm(id);
            let brute: Vec<u32> = (0..store.len() as u32)
                .filter(|&j| store.perm(j).commutes_with(&x))
                .collect();
            let cent = centralizer_backtrack(&g, &x, 10_000_000, 5).unwrap();
            assert_eq!(cent.order(), brute.len() as u128, "{t:?} element {id}");
            for j in brute {
                assert!(cent.contains(&store.perm(j)));
            }
        }
    }
}

#[test]
fn centralizer_backtrack_matches_class_sizes_on_e6() {
    let rs = build_root_system(ExcType::E6).unwrap();
    let g = group_from_generators(rs.num_roots(), &rs.simple_reflections(), 5);
    let cd = ClassData::build(&rs, g.clone(), Budgets::default(), 5).unwrap();
    for c in (0..cd.num_classes()).step_by(3) {
        let cls = &cd.classes[c];
        let cent = centralizer_backtrack(&g, &cls.representative, 200_000_000, 5).unwrap();
        assert_eq!(cent.order(), cls.centralizer_order, "class {}", cls.label);
    }
}

#[test]
fn transporter_finds_known_conjugations() {
    let rs = build_root_system(ExcType::F4).unwrap();
    let g = group_from_generators(rs.num_roots(), &rs.simple_reflections(), 5);
    let mut rng = exweyl_core::perm::seeded_rng(42);
    for _ in 0..40 {
        let x = g.uniform_element(&mut rng);
        let t = g.uniform_element(&mut rng);
        let y = x.conjugate_by(&t);
        let h = conjugating_element(&g, &x, &y, 10_000_000, 5)
            .unwrap()
            .expect("conjugates must be found");
        assert_eq!(x.conjugate_by(&h), y);
        assert!(g.contains(&h));
    }
}

#[test]
fn transporter_refutes_cross_class_pairs() {
    let rs = build_root_system(ExcType::F4).unwrap();
    let g = group_from_generators(rs.num_roots(), &rs.simple_reflections(), 5);
    let cd = ClassData::build(&rs, g.clone(), Budgets::default(), 5).unwrap();
    for a in 0..cd.num_classes() {
        for b in (a + 1)..cd.num_classes() {
            let x = &cd.classes[a].representative;
            let y = &cd.classes[b].representative;
            let res = conjugating_element(&g, x, y, 50_000_000, 5).unwrap();
            assert!(res.is_none(), "classes {a} and {b} are distinct");
        }
    }
}

#[test]
fn searches_report_budget_exhaustion_instead_of_guessing() {
    let rs = build_root_system(ExcType::F4).unwrap();
    let g = group_from_generators(rs.num_roots(), &rs.simple_reflections(), 5);
    let mut rng = exweyl_core::perm::seeded_rng(43);
    let x = g.uniform_element(&mut rng);
    let y = x.conjugate_by(&g.uniform_element(&mut rng));
    // A handful of nodes cannot certify anything on a group this size.
    match conjugating_element(&g, &x, &y, 2, 5) {
        Err(Error::Budget(_)) => {}
        Ok(Some(h)) => {
            // Finding the conjugator within two nodes is legal (lucky leaf);
            // it must still be correct.
            assert_eq!(x.conjugate_by(&h), y);
        }
        other => panic!("expected budget error or verified hit, got {other:?}"),
    }
}

#[test]
fn central_elements_centralize_everything() {
    let rs = build_root_system(ExcType::F4).unwrap();
    let g = group_from_generators(rs.num_roots(), &rs.simple_reflections(), 5);
    let neg = rs.negation_perm();
    let cent = centralizer_backtrack(&g, &neg, 1_000, 5).unwrap();
    assert_eq!(cent.order(), g.order());
    let id = Permutation::identity(rs.num_roots());
    let cent = centralizer_backtrack(&g, &id, 1_000, 5).unwrap();
    assert_eq!(cent.order(), g.order());
}
