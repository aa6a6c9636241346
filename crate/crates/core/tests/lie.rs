use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use secant::chevalley::{build_chevalley, build_chevalley_with_sign, grade_by_fundamental, orbit_dim};
use secant::rootsys::{build_root_system, SimpleType, Weight};
use secant::scalar::{q, Q};

#[test]
fn jacobi_on_random_exceptional_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for ty in [SimpleType::e(6), SimpleType::e(7), SimpleType::e(8), SimpleType::f4()] {
        let alg = build_chevalley(ty).unwrap();
        let n = alg.dim();
        for _ in 0..10_000 {
            let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            assert!(alg.jacobi_holds(i, j, k), "{ty}: Jacobi fails on ({i}, {j}, {k})");
        }
    }
}

#[test]
fn exceptional_dimensions() {
    for (ty, dim, roots) in [(SimpleType::e(6), 78, 72), (SimpleType::e(7), 133, 126), (SimpleType::e(8), 248, 240), (SimpleType::f4(), 52, 48), (SimpleType::g2(), 14, 12)] {
        let sys = build_root_system(ty).unwrap();
        assert_eq!(sys.num_roots(), roots);
        assert_eq!(build_chevalley(ty).unwrap().dim(), dim);
    }
}

#[test]
fn minuscule_dimensions_in_vo_numbering() {
    let dim = |ty: SimpleType, i: usize| build_root_system(ty).unwrap().weyl_dimension(&Weight::fundamental(ty.rank, i).marks);
    assert_eq!(dim(SimpleType::e(6), 1), q(27));
    assert_eq!(dim(SimpleType::e(6), 5), q(27));
    assert_eq!(dim(SimpleType::e(7), 1), q(56));
    assert_eq!(dim(SimpleType::f4(), 1), q(26));
    assert_eq!(dim(SimpleType::g2(), 1), q(7));
}

#[test]
fn gradings_of_exceptional_algebras() {
    // E7 by its minuscule weight: 27 + 79 + 27
    let e7 = build_chevalley(SimpleType::e(7)).unwrap();
    let g = grade_by_fundamental(&e7, 1).unwrap();
    assert_eq!(g.dims().iter().map(|d| d.1).collect::<Vec<_>>(), vec![27, 79, 27]);
    let e6 = build_chevalley(SimpleType::e(6)).unwrap();
    let g = grade_by_fundamental(&e6, 1).unwrap();
    assert_eq!(g.dims().iter().map(|d| d.1).collect::<Vec<_>>(), vec![16, 46, 16]);
}

#[test]
fn orbit_dims_do_not_depend_on_signs() {
    let a = build_chevalley(SimpleType::e(6)).unwrap();
    let b = build_chevalley_with_sign(SimpleType::e(6), -1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let x: Vec<Q> = (0..a.dim()).map(|i| if i >= 6 && rng.gen_bool(0.04) { q(rng.gen_range(1..3)) } else { q(0) }).collect();
        assert_eq!(orbit_dim(&a, &x), orbit_dim(&b, &x));
    }
    // minimal nilpotent orbit of e6 has dimension 22
    let theta = a.system.highest_root();
    assert_eq!(orbit_dim(&a, &a.root_vector(&theta).unwrap()), 22);
}
