//! Braiding and graded-dimension checks against closed forms: diagonal
//! braidings have product-of-truncated-polynomial profiles, the order-6
//! class of the order-12 dihedral group gives the known 4-dimensional
//! algebra, and the central scalar predicates reduce to root-of-unity
//! arithmetic that is verified here by a second route.

use exweyl_core::braided::{
    braiding_matrix, build_yd_module, central_qls_dimension, nichols_graded_dims,
    quantum_symmetry_predicates, scalar_braiding, BraidBudget, BraidingMatrix, QlsFactor,
};
use exweyl_core::chartab::EvalTable;
use exweyl_core::classes::{Budgets, ClassData};
use exweyl_core::exact::IntCyc;
use exweyl_core::perm::group_from_generators;
use exweyl_core::rootsys::{build_root_system, ExcType};

fn class_data(etype: ExcType) -> ClassData {
    let rs = build_root_system(etype).unwrap();
    let g = group_from_generators(rs.num_roots(), &rs.simple_reflections(), 7);
    ClassData::build(&rs, g, Budgets::default(), 7).unwrap()
}

fn find_class(cd: &ClassData, order: u32, size: u64) -> usize {
    let hits: Vec<usize> = (0..cd.num_classes())
        .filter(|&c| cd.class(c).order == order && cd.class(c).size == size)
        .collect();
    assert_eq!(hits.len(), 1, "expected a unique class of order {order} size {size}");
    hits[0]
}

fn find_classes(cd: &ClassData, order: u32, size: u64) -> Vec<usize> {
    (0..cd.num_classes())
        .filter(|&c| cd.class(c).order == order && cd.class(c).size == size)
        .collect()
}

/// Rows of `ct` whose character has the given degree and takes the given
/// integer value at `p`.
fn rows_with_value(ct: &EvalTable, degree: u64, p: &exweyl_core::perm::Permutation, v: i128) -> Vec<usize> {
    (0..ct.table().num_chars())
        .filter(|&r| ct.table().degree(r) == degree && ct.value_at(r, p).unwrap().equals_integer(v))
        .collect()
}

fn dims_of(b: &BraidingMatrix, max_degree: usize) -> Vec<u64> {
    nichols_graded_dims(b, max_degree, &BraidBudget::default())
        .unwrap()
        .dims
}

/// Graded dimensions of a scalar braiding of order `n_ord` in dimension
/// `dim`: the coefficients of (1 + t + ... + t^(n_ord-1))^dim, followed by
/// the zero where the series stops.
fn truncated_power_profile(n_ord: usize, dim: usize) -> Vec<u64> {
    let mut p = vec![1u64];
    for _ in 0..dim {
        let mut q = vec![0u64; p.len() + n_ord - 1];
        for (i, &a) in p.iter().enumerate() {
            for j in 0..n_ord {
                q[i + j] += a;
            }
        }
        p = q;
    }
    p.push(0);
    p
}

#[test]
fn minus_one_scalar_braidings_terminate_like_exterior_algebras() {
    for dim in 1..=3usize {
        let b = scalar_braiding(2, 1, dim).unwrap();
        assert!(b.braid_relation_holds());
        assert!(b.scalar_flip().unwrap().equals_integer(-1));
        let g = nichols_graded_dims(&b, dim + 1, &BraidBudget::default()).unwrap();
        assert_eq!(g.dims, truncated_power_profile(2, dim));
        assert_eq!(g.total(), Some(1u128 << dim));
    }
}

#[test]
fn q_one_scalar_braiding_grows_like_a_polynomial_ring() {
    let b = scalar_braiding(1, 0, 1).unwrap();
    assert!(b.scalar_flip().unwrap().equals_integer(1));
    let g = nichols_graded_dims(&b, 6, &BraidBudget::default()).unwrap();
    assert_eq!(g.dims, vec![1, 1, 1, 1, 1, 1, 1]);
    assert!(!g.truncated);
    // The series never reaches zero, so no total can be claimed.
    assert_eq!(g.total(), None);
}

/// Diagonal braiding with self-scalars of the given orders and all cross
/// scalars 1: the basis vectors generate independent truncated
/// polynomial factors.
fn diagonal_braiding(orders: &[u32]) -> BraidingMatrix {
    let l = orders
        .iter()
        .fold(1u64, |acc, &n| exweyl_core::exact::arith::lcm64(acc, n as u64))
        as u32;
    let dim = orders.len();
    let tgt: Vec<Vec<usize>> = (0..dim).map(|_| (0..dim).collect()).collect();
    let mut phase = vec![vec![0u32; dim]; dim];
    for (a, &n) in orders.iter().enumerate() {
        phase[a][a] = l / n;
    }
    BraidingMatrix::from_parts(l, dim, tgt, phase).unwrap()
}

/// Coefficients of prod_a (1 + t + ... + t^(orders[a]-1)), then the zero
/// the series reaches past the top degree.
fn product_profile(orders: &[u32]) -> Vec<u64> {
    let mut p = vec![1u64];
    for &n in orders {
        let mut q = vec![0u64; p.len() + n as usize - 1];
        for (i, &a) in p.iter().enumerate() {
            for j in 0..n as usize {
                q[i + j] += a;
            }
        }
        p = q;
    }
    p.push(0);
    p
}

#[test]
fn diagonal_braidings_multiply_truncated_polynomial_factors() {
    // Scalar q*flip only forms a product of truncated factors when
    // q*q = 1, so orders above two need the diagonal shape with trivial
    // cross scalars. Cases capped by the default matrix budget; the top
    // degree is sum(ord - 1) and the terminating zero needs one more.
    let cases: [&[u32]; 12] = [
        &[2],
        &[3],
        &[4],
        &[6],
        &[8],
        &[2, 2],
        &[2, 3],
        &[2, 4],
        &[3, 3],
        &[3, 4],
        &[2, 2, 3],
        &[2, 2, 2, 2],
    ];
    for orders in cases {
        let b = diagonal_braiding(orders);
        let need = orders.iter().map(|&n| n as usize - 1).sum::<usize>() + 1;
        let g = nichols_graded_dims(&b, need, &BraidBudget::default()).unwrap();
        assert_eq!(g.dims, product_profile(orders), "profile mismatch at orders {orders:?}");
        let expected: u128 = orders.iter().map(|&n| n as u128).product();
        assert_eq!(g.total(), Some(expected));
    }

    // Exterior dims arrive by two distinct braidings: scalar -flip
    // (cross scalars -1) and the diagonal with cross scalars 1.
    let via_scalar = dims_of(&scalar_braiding(2, 1, 2).unwrap(), 3);
    let via_diag = dims_of(&diagonal_braiding(&[2, 2]), 3);
    assert_eq!(via_scalar, via_diag);
    assert_eq!(via_scalar, vec![1, 2, 1, 0]);
}

#[test]
fn g2_order_six_class_braiding_is_minus_flip_in_dimension_two() {
    let cd = class_data(ExcType::G2);
    let c = find_class(&cd, 6, 2);
    let s = cd.class(c).representative.clone();
    let ct = EvalTable::build(&cd.centralizer(c).unwrap(), 7).unwrap();

    // The centralizer is cyclic of order 6; exactly one of its six linear
    // characters sends s to -1.
    assert_eq!(ct.table().num_chars(), 6);
    let rows = rows_with_value(&ct, 1, &s, -1);
    assert_eq!(rows.len(), 1);

    let m = build_yd_module(&cd, &ct, c, rows[0]).unwrap();
    assert_eq!(m.dim(), 2);
    assert_eq!(m.cosets.len(), 2);
    for (g, t) in m.cosets.iter().zip(&m.supports) {
        assert_eq!(&g.mul(&s).mul(&g.inverse()), t);
        assert_eq!(t.order(), 6);
    }
    assert_ne!(m.supports[0], m.supports[1]);

    let b = braiding_matrix(&m).unwrap();
    assert!(b.braid_relation_holds());

    // All four nonzero entries of the 4x4 matrix are -1, sitting on the
    // flip permutation: the class is abelian, so the coset index is only
    // swapped, and every action scalar is chi at an odd power of the
    // rotation.
    let dense = b.entries();
    let mut nonzero = 0;
    for row in &dense {
        for v in row {
            if !v.is_zero() {
                nonzero += 1;
                assert!(v.equals_integer(-1));
            }
        }
    }
    assert_eq!(nonzero, 4);
    assert!(b.scalar_flip().unwrap().equals_integer(-1));

    let g = nichols_graded_dims(&b, 6, &BraidBudget::default()).unwrap();
    assert_eq!(g.dims, vec![1, 2, 1, 0]);
    assert_eq!(g.total(), Some(4));
}

#[test]
fn g2_reflection_class_modules_have_dimension_three() {
    let cd = class_data(ExcType::G2);
    let classes = find_classes(&cd, 2, 3);
    assert_eq!(classes.len(), 2);
    for c in classes {
        let r = cd.class(c).representative.clone();
        let ct = EvalTable::build(&cd.centralizer(c).unwrap(), 7).unwrap();
        assert_eq!(ct.table().order(), 4);
        let rows = rows_with_value(&ct, 1, &r, -1);
        assert_eq!(rows.len(), 2);
        for row in rows {
            let m = build_yd_module(&cd, &ct, c, row).unwrap();
            assert_eq!(m.dim(), 3);
            let b = braiding_matrix(&m).unwrap();
            assert!(b.braid_relation_holds());
            // Non-abelian class: the braiding genuinely permutes coset
            // pairs, it is not a scalar times the flip.
            assert!(b.scalar_flip().is_none());
            // Both sign choices on the central part of the centralizer
            // give the familiar twelve-dimensional algebra over three
            // reflections.
            let g = nichols_graded_dims(&b, 5, &BraidBudget::default()).unwrap();
            assert_eq!(g.dims, vec![1, 3, 4, 3, 1, 0]);
            assert_eq!(g.total(), Some(12));
        }
    }
}

#[test]
fn central_modules_from_the_full_group_table() {
    let cd = class_data(ExcType::G2);
    let ct = EvalTable::build(&cd.group, 7).unwrap();
    let w0_class = find_class(&cd, 2, 1);
    let w0 = cd.class(w0_class).representative.clone();

    // Identity class, trivial character: the braiding is the plain flip.
    let id_class = find_class(&cd, 1, 1);
    let trivial: Vec<usize> = (0..ct.table().num_chars())
        .filter(|&r| ct.table().degree(r) == 1 && ct.value_at(r, &w0).unwrap().equals_integer(1))
        .collect();
    let m = build_yd_module(&cd, &ct, id_class, trivial[0]).unwrap();
    assert_eq!(m.dim(), 1);
    let b = braiding_matrix(&m).unwrap();
    assert!(b.scalar_flip().unwrap().equals_integer(1));

    // Degree-2 character at the central class: module dimension equals
    // the degree, and the braiding is -1 times the flip.
    let deg2 = rows_with_value(&ct, 2, &w0, -2);
    assert_eq!(deg2.len(), 1);
    let m2 = build_yd_module(&cd, &ct, w0_class, deg2[0]).unwrap();
    assert_eq!(m2.dim(), 2);
    let b2 = braiding_matrix(&m2).unwrap();
    assert!(b2.scalar_flip().unwrap().equals_integer(-1));
    let g2 = nichols_graded_dims(&b2, 3, &BraidBudget::default()).unwrap();
    assert_eq!(g2.dims, vec![1, 2, 1, 0]);
    assert_eq!(g2.total(), Some(4));

    // Degree-1 characters with value -1 at the central element.
    let deg1 = rows_with_value(&ct, 1, &w0, -1);
    assert_eq!(deg1.len(), 2);
    let m1 = build_yd_module(&cd, &ct, w0_class, deg1[0]).unwrap();
    assert_eq!(m1.dim(), 1);
    let b1 = braiding_matrix(&m1).unwrap();
    assert!(b1.scalar_flip().unwrap().equals_integer(-1));
    assert_eq!(
        nichols_graded_dims(&b1, 2, &BraidBudget::default()).unwrap().total(),
        Some(2)
    );
}

#[test]
fn central_qls_dimension_matches_the_symmetrizer_route() {
    let minus_one = IntCyc::integer(2, -1);
    let f = |deg: u64, mult: u64| QlsFactor {
        q: minus_one.clone(),
        char_degree: deg,
        class_size: 1,
        multiplicity: mult,
    };

    // One linear factor.
    assert_eq!(central_qls_dimension(&[f(1, 1)]).unwrap().value, Some(2));

    // One degree-2 factor: 2^2, cross-checked against the rank route on
    // the scalar braiding of the same dimension.
    let d = central_qls_dimension(&[f(2, 1)]).unwrap();
    assert_eq!(d.value, Some(4));
    let b = scalar_braiding(2, 1, 2).unwrap();
    assert_eq!(
        nichols_graded_dims(&b, 3, &BraidBudget::default()).unwrap().total(),
        Some(4)
    );

    // Three linear factors: 2^3, same cross-check in dimension 3.
    let d3 = central_qls_dimension(&[f(1, 1), f(1, 1), f(1, 1)]).unwrap();
    assert_eq!(d3.value, Some(8));
    assert_eq!(d3.log2, 3);
    let b3 = scalar_braiding(2, 1, 3).unwrap();
    assert_eq!(
        nichols_graded_dims(&b3, 4, &BraidBudget::default()).unwrap().total(),
        Some(8)
    );

    // Multiplicity enters the exponent.
    assert_eq!(central_qls_dimension(&[f(1, 2)]).unwrap().value, Some(4));

    // q = 1 is rejected: the closed form only covers scalar -1.
    let bad = QlsFactor {
        q: IntCyc::integer(2, 1),
        char_degree: 1,
        class_size: 1,
        multiplicity: 1,
    };
    assert!(central_qls_dimension(&[bad]).is_err());

    // A non-central class size is rejected.
    let off_center = QlsFactor {
        q: minus_one.clone(),
        char_degree: 1,
        class_size: 2,
        multiplicity: 1,
    };
    assert!(central_qls_dimension(&[off_center]).is_err());
}

#[test]
fn quantum_symmetry_predicates_on_g2_central_data() {
    let cd = class_data(ExcType::G2);
    let ct = EvalTable::build(&cd.group, 7).unwrap();
    let w0_class = find_class(&cd, 2, 1);
    let w0 = cd.class(w0_class).representative.clone();

    // All three characters with chi(w0) = -deg: two linear, one of
    // degree 2.
    let mut rows = rows_with_value(&ct, 1, &w0, -1);
    rows.extend(rows_with_value(&ct, 2, &w0, -2));
    assert_eq!(rows.len(), 3);
    let mods: Vec<_> = rows
        .iter()
        .map(|&r| build_yd_module(&cd, &ct, w0_class, r).unwrap())
        .collect();

    let rep = quantum_symmetry_predicates(&mods).unwrap();
    assert!(rep.all_hold);
    assert_eq!(rep.self_orders, vec![2, 2, 2]);
    assert!(rep.self_admissible.iter().all(|&x| x));
    assert!(rep.pair_symmetric.iter().flatten().all(|&x| x));

    // Adding the trivial character breaks both conditions: its self
    // scalar has order 1, and sigma^2 against a -1-type factor is the
    // scalar -1, not the identity.
    let trivial: Vec<usize> = (0..ct.table().num_chars())
        .filter(|&r| {
            ct.table().degree(r) == 1 && ct.value_at(r, &w0).unwrap().equals_integer(1)
                && ct.value_at(r, &cd.group.generators[0]).unwrap().equals_integer(1)
        })
        .collect();
    let mut with_trivial = mods;
    with_trivial.push(build_yd_module(&cd, &ct, w0_class, trivial[0]).unwrap());
    let rep2 = quantum_symmetry_predicates(&with_trivial).unwrap();
    assert!(!rep2.all_hold);
    assert_eq!(rep2.self_orders[3], 1);
    assert!(!rep2.self_admissible[3]);
    assert!(!rep2.pair_symmetric[0][3]);

    // Second route: for central scalar factors, sigma^2 = id is exactly
    // q_i * q_j = 1.
    let qs: Vec<IntCyc> = with_trivial
        .iter()
        .map(|m| braiding_matrix(m).unwrap().scalar_flip().unwrap())
        .collect();
    for (i, qi) in qs.iter().enumerate() {
        for (j, qj) in qs.iter().enumerate() {
            assert_eq!(
                rep2.pair_symmetric[i][j],
                qi.mul(qj).equals_integer(1),
                "sigma^2 and scalar routes disagree at pair ({i}, {j})"
            );
        }
    }
}

#[test]
fn quantum_symmetry_predicates_on_f4_central_data() {
    let cd = class_data(ExcType::F4);
    let ct = EvalTable::build(&cd.group, 7).unwrap();
    let w0_class = find_class(&cd, 2, 1);
    let w0 = cd.class(w0_class).representative.clone();

    // The longest element is a product of an even number of reflections
    // of each length, so no linear or degree-2 character is of minus-one
    // type here. Pin the full degree profile: nine minus-type rows, the
    // same count the quotient route produces for this class.
    assert!(rows_with_value(&ct, 1, &w0, -1).is_empty());
    assert!(rows_with_value(&ct, 2, &w0, -2).is_empty());
    let mut degrees: Vec<u64> = (0..ct.table().num_chars())
        .filter(|&r| {
            let d = ct.table().degree(r);
            ct.value_at(r, &w0).unwrap().equals_integer(-(d as i128))
        })
        .map(|r| ct.table().degree(r))
        .collect();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![4, 4, 4, 4, 8, 8, 8, 8, 16]);

    let deg4 = rows_with_value(&ct, 4, &w0, -4);
    assert_eq!(deg4.len(), 4);
    let mods: Vec<_> = deg4[..2]
        .iter()
        .map(|&r| build_yd_module(&cd, &ct, w0_class, r).unwrap())
        .collect();
    let rep = quantum_symmetry_predicates(&mods).unwrap();
    assert!(rep.all_hold);
    assert_eq!(rep.self_orders, vec![2, 2]);

    // Cross-check the closed-form count: both factors together span a
    // 2^(4+4) = 256-dimensional algebra.
    let total = central_qls_dimension(&[
        QlsFactor { q: IntCyc::integer(2, -1), char_degree: 4, class_size: 1, multiplicity: 1 },
        QlsFactor { q: IntCyc::integer(2, -1), char_degree: 4, class_size: 1, multiplicity: 1 },
    ])
    .unwrap();
    assert_eq!(total.value, Some(256));
}

#[test]
fn graded_dims_are_invariant_under_basis_reordering() {
    let cd = class_data(ExcType::G2);
    let classes = find_classes(&cd, 2, 3);
    let c = classes[0];
    let r = cd.class(c).representative.clone();
    let ct = EvalTable::build(&cd.centralizer(c).unwrap(), 7).unwrap();
    let row = rows_with_value(&ct, 1, &r, -1)[0];
    let m = build_yd_module(&cd, &ct, c, row).unwrap();
    let b = braiding_matrix(&m).unwrap();

    // Relabel the three basis vectors by a cycle and rebuild the same
    // braiding on the permuted basis.
    let sigma = [1usize, 2, 0];
    let inv = [2usize, 0, 1];
    let d = b.dim();
    let mut tgt = vec![vec![0usize; d]; d];
    let mut phase = vec![vec![0u32; d]; d];
    for a in 0..d {
        for bcol in 0..d {
            let (t, e) = b.component(sigma[a], sigma[bcol]);
            tgt[a][bcol] = inv[t];
            phase[a][bcol] = e;
        }
    }
    let permuted = BraidingMatrix::from_parts(b.conductor(), d, tgt, phase).unwrap();
    let d1 = dims_of(&b, 4);
    let d2 = dims_of(&permuted, 4);
    assert_eq!(d1, d2);
}

#[test]
fn degree_two_characters_off_center_are_out_of_scope() {
    let cd = class_data(ExcType::G2);
    // Order-3 rotation class: centralizer of order 6... its characters
    // are all linear, so take instead a reflection class and ask for a
    // degree the table does not have, then check the central path guard
    // via the honest route: the order-6 class centralizer is abelian
    // too, so the scope error is exercised on F4 below.
    let f4 = class_data(ExcType::F4);
    // A non-central class whose centralizer has an irreducible character
    // of degree > 1.
    let mut hit = false;
    for c in 0..f4.num_classes() {
        let cls = f4.class(c);
        if cls.size <= 1 || cls.centralizer_order > 2000 {
            continue;
        }
        let ct = EvalTable::build(&f4.centralizer(c).unwrap(), 7).unwrap();
        if let Some(row) = (0..ct.table().num_chars()).find(|&r| ct.table().degree(r) > 1) {
            hit = true;
            let err = build_yd_module(&f4, &ct, c, row);
            assert!(err.is_err(), "degree > 1 off-centre must be rejected");
            break;
        }
    }
    assert!(hit, "no test case found");
    let _ = cd;
}
