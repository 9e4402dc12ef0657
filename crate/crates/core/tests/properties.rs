use gpcert_core::cyclotomic::rational;
use gpcert_core::group::GeneratorTable;
use gpcert_core::poly::projective_zero_set_empty;
use gpcert_core::variety::{check_freeness, jacobian, InvarianceOutcome};
use gpcert_core::{
    build_quadrics, check_ideal_invariance, point_matrix, verify_odp, Cyclotomic, ExactMatrix, MonomialMatrix,
    ParameterPoint, Polynomial, Preset, QuadricSystem, Scope,
};
use proptest::prelude::*;

fn monomial_matrix(size: usize, n: u32) -> impl Strategy<Value = MonomialMatrix> {
    (Just((0..size).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(0..i64::from(n), size))
        .prop_map(move |(perm, phases)| MonomialMatrix::new(perm, phases, n).unwrap())
}

fn scalar8() -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-3i64..=3, 4).prop_map(|c| Cyclotomic::new(3, c.into_iter().map(|v| rational(v, 1)).collect()).unwrap())
}

fn point(size: usize) -> impl Strategy<Value = Vec<Cyclotomic>> {
    prop::collection::vec(scalar8(), size)
}

/// A homogeneous polynomial of the given degree with up to `terms` terms.
fn homogeneous(nvars: usize, degree: u32, terms: usize) -> impl Strategy<Value = Polynomial<Cyclotomic>> {
    let exps = prop::collection::vec(0..nvars, degree as usize).prop_map(move |vars| {
        let mut e = vec![0u32; nvars];
        for v in vars {
            e[v] += 1;
        }
        e
    });
    prop::collection::vec((exps, -4i64..=4), 1..=terms)
        .prop_map(move |ts| Polynomial::from_terms(nvars, ts.into_iter().map(|(e, c)| (e, Cyclotomic::from_int(c)))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn point_matrix_contract(g in monomial_matrix(8, 8), q in homogeneous(8, 2, 6), p in point(8)) {
        let lhs = q.pullback(&g).unwrap().evaluate(&p).unwrap();
        let rhs = q.evaluate(&point_matrix(&g).apply_to_point(&p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_functorial(g in monomial_matrix(8, 8), h in monomial_matrix(8, 8), q in homogeneous(8, 3, 5)) {
        let gh = g.compose(&h).unwrap();
        prop_assert_eq!(q.pullback(&g).unwrap().pullback(&h).unwrap(), q.pullback(&gh).unwrap());
        let lhs = point_matrix(&gh).to_exact();
        let rhs = point_matrix(&g).to_exact().mul(&point_matrix(&h).to_exact()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_identity(q in homogeneous(4, 3, 6)) {
        let mut sum = Polynomial::zero(4);
        for i in 0..4 {
            sum = &sum + &(&Polynomial::var(4, i) * &q.partial_derivative(i));
        }
        prop_assert_eq!(sum, q.scale(&Cyclotomic::from_int(3)));
    }

    #[test]
    fn emptiness_is_invariant_under_monomial_changes(
        polys in prop::collection::vec(homogeneous(3, 2, 4), 2..=3),
        g in monomial_matrix(3, 8),
    ) {
        prop_assume!(polys.iter().all(|p| !p.is_zero()));
        let moved: Vec<_> = polys.iter().map(|p| p.pullback(&g).unwrap()).collect();
        prop_assert_eq!(projective_zero_set_empty(&polys).unwrap(), projective_zero_set_empty(&moved).unwrap());
    }
}

fn invariance_matrix(g: &MonomialMatrix, sys: &QuadricSystem) -> ExactMatrix {
    match check_ideal_invariance(g, sys).unwrap() {
        InvarianceOutcome::Invariant { matrix } => matrix,
        other => panic!("{other:?}"),
    }
}

#[test]
fn invariance_matrices_are_multiplicative() {
    let sys = build_quadrics();
    let t = GeneratorTable::presets();
    let words = ["tau", "sigma", "sigma1", "sigma2", "sigma3", "sigma1^3", "tau sigma2"];
    for a in words {
        for b in words {
            let (g, h) = (t.evaluate(a).unwrap(), t.evaluate(b).unwrap());
            let gh = g.compose(&h).unwrap();
            let expected = invariance_matrix(&g, &sys).mul(&invariance_matrix(&h, &sys)).unwrap();
            assert_eq!(invariance_matrix(&gh, &sys), expected, "{a} * {b}");
        }
    }
}

#[test]
fn odp_certificate_is_equivariant() {
    let sys = build_quadrics();
    let y = ParameterPoint::new([rational(-2, 5), rational(7, 3), rational(11, 13)]);
    let p0 = QuadricSystem::base_point(y.values());
    let base = verify_odp(&p0, &sys, &y).unwrap();
    assert!(base.passed);
    for p in [Preset::G1, Preset::G2] {
        for g in p.group().elements() {
            let image = point_matrix(g).apply_to_point(&p0).unwrap();
            let cert = verify_odp(&image, &sys, &y).unwrap();
            assert!(cert.passed, "{g}");
            assert_eq!((cert.jacobian_rank, cert.hessian_restricted_rank), (base.jacobian_rank, base.hessian_restricted_rank));
        }
    }
}

#[test]
fn jacobian_has_full_rank_off_the_variety() {
    let sys = build_quadrics();
    let y = ParameterPoint::from_ints(1, 2, 3);
    let p: Vec<Cyclotomic> = [3, -1, 4, 1, -5, 9, 2, -6].into_iter().map(Cyclotomic::from_int).collect();
    let polys = sys.specialize(y.values());
    assert!(polys.iter().any(|q| !q.evaluate(&p).unwrap().is_zero()));
    assert_eq!(jacobian(&polys, &p).unwrap().rank(), 4);
}

#[test]
fn involution_scope_agrees_with_all_elements() {
    let sys = build_quadrics();
    let ys = [ParameterPoint::from_ints(1, 2, 3), ParameterPoint::new([rational(5, 7), rational(-3, 2), rational(4, 9)])];
    for p in [Preset::G, Preset::G1, Preset::G2] {
        let g = p.group();
        let inv = check_freeness(p.name(), &g, &sys, &ys, Scope::Involutions).unwrap();
        let all = check_freeness(p.name(), &g, &sys, &ys, Scope::All).unwrap();
        assert_eq!(all.elements_examined, 63);
        assert_eq!(inv.verdict, all.verdict, "{}", p.name());
    }
}
