use ahmass::exactcore::linalg::rank;
use ahmass::exactcore::{
    hyperboloid_normal_form, nullspace, q, qr, signature_of_form, sphere_monomial_integral, vanishes_on_sphere,
    wave_operator, SparseMatrix,
};
use ahmass::harmonic::{build_hp, harmonic_decompose, invariant_form_q};
use ahmass::invariants::{conformal_mass, mass_value, weyl_mass, Family};
use ahmass::lorentz::{act_on_poly, algebra_act_on_poly, ball_action, u_of_a, AlgebraElement, LorentzElement};
use ahmass::massaspect::{boost_action, random_transverse, rotation_action, transversalize, SphereTensor};
use ahmass::weylspace::space::build_wp;
use ahmass::weylspace::tensors::{linearized_riemann, sym_grad};
use ahmass::weylspace::potential::weyl_to_potential;
use ahmass::{Field, Poly, PolyTensor, Q};
use proptest::prelude::*;

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..7, 1i64..5).prop_map(|(a, b)| qr(a, b))
}

fn poly_strategy(nvars: usize, maxdeg: u8, terms: usize) -> impl Strategy<Value = Poly<Q>> {
    prop::collection::vec((prop::collection::vec(0..=maxdeg, nvars), small_q()), 0..=terms).prop_map(move |ts| {
        let mut p = Poly::zero(nvars);
        for (e, c) in ts {
            p.add_term(e, c);
        }
        p
    })
}

fn homogeneous_strategy(nvars: usize, deg: usize) -> impl Strategy<Value = Poly<Q>> {
    let monos = ahmass::exactcore::monomials_of_degree(nvars, deg);
    prop::collection::vec(small_q(), monos.len()).prop_map(move |cs| {
        let mut p = Poly::zero(nvars);
        for (e, c) in monos.iter().zip(cs) {
            p.add_term(e.clone(), c);
        }
        p
    })
}

/// (t^2 + 1) / 2t, (t^2 - 1) / 2t for rational t > 0.
fn boost_from(n: usize, i: usize, t: Q) -> LorentzElement {
    let two_t = q(2) * &t;
    let c = (&t * &t + q(1)) / &two_t;
    let s = (&t * &t - q(1)) / &two_t;
    LorentzElement::rational_boost(n, i, c, s).unwrap()
}

/// Pythagorean (c, s) from integers (a, b) not both zero.
fn rotation_from(n: usize, i: usize, j: usize, a: i64, b: i64) -> LorentzElement {
    let d = a * a + b * b;
    LorentzElement::rational_rotation(n, i, j, qr(a * a - b * b, d), qr(2 * a * b, d)).unwrap()
}

fn lorentz_strategy(n: usize) -> impl Strategy<Value = LorentzElement> {
    let boost = (1..=n, 1i64..6, 1i64..6).prop_map(move |(i, a, b)| boost_from(n, i, qr(a, b)));
    let rot = (1..n, 1i64..4, 0i64..4).prop_map(move |(i, a, b)| rotation_from(n, i, i + 1, a, b));
    prop::collection::vec(prop_oneof![boost, rot], 1..3)
        .prop_map(move |gs| gs.iter().fold(LorentzElement::identity(n), |acc, g| acc.compose(g)))
}

fn sum_sq(x: &[Q]) -> Q {
    x.iter().map(|a| a * a).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sphere_monomial_integral_sign(e in prop::collection::vec(0u8..5, 1..5)) {
        let v = sphere_monomial_integral(&e);
        prop_assert!(v >= Q::zero());
        prop_assert_eq!(v.is_zero(), e.iter().any(|a| a % 2 == 1));
    }

    #[test]
    fn multiples_of_defining_function_vanish(p in poly_strategy(3, 3, 4)) {
        let mut r = Poly::constant(3, q(-1));
        for i in 0..3 {
            r = r.add(&Poly::var(3, i).pow(2));
        }
        prop_assert!(vanishes_on_sphere(&p.mul(&r)));
    }

    #[test]
    fn multiples_of_hyperboloid_vanish(p in poly_strategy(4, 2, 4)) {
        let mut r = Poly::constant(4, q(1));
        r = r.sub(&Poly::var(4, 0).pow(2));
        for i in 1..4 {
            r = r.add(&Poly::var(4, i).pow(2));
        }
        prop_assert!(hyperboloid_normal_form(&p.mul(&r)).is_zero());
    }

    #[test]
    fn nullspace_is_kernel(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..5)) {
        let dense: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
        let m = SparseMatrix::from_dense(&dense);
        let ker = nullspace(&m);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|c| c.is_zero()));
        }
        prop_assert_eq!(rank(&m) + ker.len(), 5);
    }

    #[test]
    fn signature_is_congruence_invariant(
        d in prop::collection::vec(-3i64..4, 4),
        b in prop::collection::vec(-2i64..3, 16),
    ) {
        let g: Vec<Vec<Q>> = (0..4).map(|i| (0..4).map(|j| if i == j { q(d[i]) } else { Q::zero() }).collect()).collect();
        // unit upper triangular change of basis
        let t: Vec<Vec<Q>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { q(1) } else if j > i { q(b[4 * i + j]) } else { Q::zero() }).collect())
            .collect();
        let mut h = vec![vec![Q::zero(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for a in 0..4 {
                    for c in 0..4 {
                        h[i][j] += &t[a][i] * &g[a][c] * &t[c][j];
                    }
                }
            }
        }
        prop_assert_eq!(signature_of_form(&g).unwrap(), signature_of_form(&h).unwrap());
    }

    #[test]
    fn ball_action_is_a_group_action(
        a in lorentz_strategy(3),
        b in lorentz_strategy(3),
        x in prop::collection::vec((-2i64..3, 4i64..8), 3),
    ) {
        let x: Vec<Q> = x.iter().map(|&(u, v)| qr(u, v)).collect();
        prop_assume!(sum_sq(&x) < q(1));
        let lhs = ball_action(&a.compose(&b), &x).unwrap();
        let rhs = ball_action(&a, &ball_action(&b, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(ball_action(&LorentzElement::identity(3), &x).unwrap(), x);
    }

    #[test]
    fn conformal_factor_is_a_cocycle(a in lorentz_strategy(3), b in lorentz_strategy(3), s in (1i64..4, 0i64..4)) {
        // rational point on S^2
        let d = s.0 * s.0 + s.1 * s.1;
        let x = vec![qr(s.0 * s.0 - s.1 * s.1, d), qr(2 * s.0 * s.1, d), Q::zero()];
        let ainv_x = ahmass::lorentz::sphere_action(&a.inverse(), &x);
        prop_assert_eq!(sum_sq(&ainv_x), q(1));
        prop_assert_eq!(u_of_a(&a.compose(&b), &x), u_of_a(&a, &x) * u_of_a(&b, &ainv_x));
    }

    #[test]
    fn algebra_action_is_a_homomorphism(
        i in 1usize..4, j in 1usize..4, k in 1usize..4,
        p in homogeneous_strategy(4, 2),
    ) {
        let n = 3;
        let x = AlgebraElement::<Q>::boost(n, i);
        let y = if j == k { AlgebraElement::boost(n, j) } else { AlgebraElement::rotation(n, j, k) };
        let lhs = algebra_act_on_poly(&x.bracket(&y), &p);
        let rhs = algebra_act_on_poly(&x, &algebra_act_on_poly(&y, &p))
            .sub(&algebra_act_on_poly(&y, &algebra_act_on_poly(&x, &p)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn boost_commutators_are_rotations(i in 1usize..5, j in 1usize..5) {
        prop_assume!(i != j);
        let n = 4;
        let br = AlgebraElement::<Q>::boost(n, i).bracket(&AlgebraElement::boost(n, j));
        let r = AlgebraElement::<Q>::rotation(n, i, j).scale(&q(-1));
        prop_assert_eq!(br.m, r.m);
    }

    #[test]
    fn group_preserves_harmonic_space(a in lorentz_strategy(3), c in prop::collection::vec(-3i64..4, 16)) {
        let hp = build_hp(3, 3);
        let mut p = Poly::zero(4);
        for (b, &ci) in hp.basis.iter().zip(&c) {
            p.add_scaled(b, &q(ci));
        }
        prop_assert!(wave_operator(&act_on_poly(&a, &p)).is_zero());
    }

    #[test]
    fn harmonic_decompose_is_a_projection(p in homogeneous_strategy(4, 3)) {
        let (h, r) = harmonic_decompose(&p).unwrap();
        prop_assert!(wave_operator(&h).is_zero());
        let mut eta = Poly::var(4, 0).pow(2).neg();
        for i in 1..4 {
            eta = eta.add(&Poly::var(4, i).pow(2));
        }
        prop_assert_eq!(h.add(&eta.mul(&r)), p);
        let (h2, r2) = harmonic_decompose(&h).unwrap();
        prop_assert_eq!(h2, h);
        prop_assert!(r2.is_zero());
    }

    #[test]
    fn invariant_form_is_lorentz_invariant(a in lorentz_strategy(3), i in 0usize..9, j in 0usize..9) {
        let hp = build_hp(3, 2);
        let (u, v) = (&hp.basis[i], &hp.basis[j]);
        prop_assert_eq!(
            invariant_form_q(&act_on_poly(&a, u), &act_on_poly(&a, v)).unwrap(),
            invariant_form_q(u, v).unwrap()
        );
    }

    #[test]
    fn transversalize_is_linear_and_idempotent(s in 0u64..1000, c in small_q()) {
        let a = random_transverse(3, 3, s).unwrap();
        let b = random_transverse(3, 3, s + 1).unwrap();
        let ta = transversalize(&a).unwrap();
        prop_assert!(ta.equals_on_sphere(&a));
        let comb = a.with_tensor(a.m.add(&b.m.scale(&c)));
        let lhs = transversalize(&comb).unwrap();
        let rhs = a.with_tensor(ta.m.add(&transversalize(&b).unwrap().m.scale(&c)));
        prop_assert!(lhs.equals_on_sphere(&rhs));
    }

    #[test]
    fn generators_preserve_transversality(s in 0u64..1000, i in 1usize..4, j in 1usize..4) {
        let m = random_transverse(3, 4, s).unwrap();
        prop_assert!(boost_action(i, &m).unwrap().is_transverse());
        if i != j {
            prop_assert!(rotation_action(i, j, &m).unwrap().is_transverse());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn conformal_mass_sees_only_the_trace(s in 0u64..1000, pi in 0usize..16) {
        let n = 3;
        let k = Family::Conformal.weight(n, 3);
        let m = random_transverse(n, k, s).unwrap();
        let t = random_transverse(n, k, s + 7).unwrap();
        // traceless part of t: t - tr(t) (delta - x x) / (n - 1)
        let round = SphereTensor::round(n, k);
        let trace_part = round.m.mul_poly(&t.sigma_trace()).scale(&qr(1, n as i64 - 1));
        let traceless = t.m.sub(&trace_part);
        let p = &build_hp(n, 3).basis[pi];
        let base = conformal_mass(&m, p).unwrap();
        let shifted = conformal_mass(&m.with_tensor(m.m.add(&traceless)), p).unwrap();
        prop_assert_eq!(base, shifted);
    }

    #[test]
    fn weyl_mass_vanishes_on_pure_trace(f in poly_strategy(4, 2, 3), wi in 0usize..9) {
        let n = 4;
        let k = Family::Weyl.weight(n, 0);
        let round = SphereTensor::round(n, k);
        let m = round.with_tensor(round.m.mul_poly(&f));
        let ws = build_wp(n, 0);
        prop_assume!(wi < ws.dim());
        prop_assert!(weyl_mass(&m, &ws.tensor(wi)).unwrap().is_zero());
    }

    #[test]
    fn mass_values_are_linear(s in 0u64..1000, c in small_q()) {
        let n = 3;
        let k = Family::Conformal.weight(n, 2);
        let a = random_transverse(n, k, s).unwrap();
        let b = random_transverse(n, k, s + 3).unwrap();
        let comb = a.with_tensor(a.m.add(&b.m.scale(&c)));
        let va = mass_value(Family::Conformal, &a, 2).unwrap().coefficients;
        let vb = mass_value(Family::Conformal, &b, 2).unwrap().coefficients;
        let vc = mass_value(Family::Conformal, &comb, 2).unwrap().coefficients;
        let cg = ahmass::GQ::real(c);
        for ((x, y), z) in va.iter().zip(&vb).zip(&vc) {
            prop_assert_eq!(x.add(&y.mul(&cg)), z.clone());
        }
    }

    #[test]
    fn potential_is_gauge_consistent(cs in prop::collection::vec(-2i64..3, 10), xi in prop::collection::vec(homogeneous_strategy(5, 2), 5)) {
        let ws = build_wp(4, 0);
        let mut w = PolyTensor::<Q>::zero(5, 4, 5);
        for (i, &c) in cs.iter().enumerate().take(ws.dim()) {
            w = w.add(&ws.tensor(i).scale(&q(c)));
        }
        let h = weyl_to_potential(&w).unwrap();
        let mut v = PolyTensor::<Q>::zero(5, 1, 5);
        for (a, p) in xi.into_iter().enumerate() {
            v.set(&[a], p);
        }
        let hg = h.add(&sym_grad(&v));
        let r = linearized_riemann(&hg);
        prop_assert_eq!(&r, &linearized_riemann(&h));
        let back = weyl_to_potential(&r.scale(&q(-2))).unwrap();
        prop_assert_eq!(linearized_riemann(&back), r);
    }
}
