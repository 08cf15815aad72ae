use chabauty_core::complex::{LatticeBasis, SubgroupC};
use chabauty_core::heis::{mat_det, HeisAut, HeisPoint};
use chabauty_core::heis_sub::*;
use chabauty_core::metric::MetricConfig;
use chabauty_core::scalar::rat;
use chabauty_core::sphere::{f_inverse, SpherePoint};
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    rat(n, d)
}

fn cq(a: Q, b: Q) -> Complex<Q> {
    Complex::new(a, b)
}

fn hq(x: Q, y: Q, t: Q) -> HeisPoint<Q> {
    HeisPoint::new(cq(x, y), t)
}

/// Set membership from the explicit description of the standard lattice.
fn standard_by_congruence(n: i64, x: i64, y: i64, t2n: i64) -> bool {
    if n % 2 == 0 {
        // Z[i] x (1/n)Z
        t2n % 2 == 0
    } else {
        (x * y - t2n).rem_euclid(2) == 0
    }
}

/// Set membership from the explicit description of the shifted lattice, n odd.
fn shifted_by_congruence(x: i64, y: i64, t2n: i64) -> bool {
    let both_even = x % 2 == 0 && y % 2 == 0;
    (t2n % 2 == 0) == both_even
}

#[test]
fn congruence_descriptions_match_membership_exhaustively() {
    for n in [1i64, 2, 3, 4, 5] {
        let std = LatticeN::<Q>::standard(n as u64).unwrap();
        let sh = LatticeN::<Q>::shifted(n as u64).unwrap();
        let mut mismatches = 0;
        for x in -10..=10i64 {
            for y in -10..=10i64 {
                // quarter steps of 1/(2n) also probe points off the grid
                for t4n in -40 * n..=40 * n {
                    let h = hq(q(x, 1), q(y, 1), q(t4n, 4 * n));
                    let on_grid = t4n % 2 == 0;
                    let t2n = t4n / 2;
                    let want_std = on_grid && standard_by_congruence(n, x, y, t2n);
                    if std.contains(&h) != want_std {
                        mismatches += 1;
                    }
                    if n % 2 == 1 {
                        let want_sh = on_grid && shifted_by_congruence(x, y, t2n);
                        if sh.contains(&h) != want_sh {
                            mismatches += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(mismatches, 0, "n = {n}");
    }
}

fn small_q() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=6).prop_map(|(a, b)| q(a, b))
}

fn gen_q() -> impl Strategy<Value = HeisPoint<Q>> {
    (small_q(), small_q(), small_q()).prop_map(|(x, y, t)| hq(x, y, t))
}

fn pos_q() -> impl Strategy<Value = Q> {
    (1i64..=12, 1i64..=6).prop_map(|(a, b)| q(a, b))
}

/// Random rational lattice from two generators and a central element.
fn lattice_q() -> impl Strategy<Value = LatticeN<Q>> {
    (gen_q(), gen_q(), pos_q())
        .prop_filter("independent projections", |(a, b, _)| {
            a.z.re.clone() * b.z.im.clone() != a.z.im.clone() * b.z.re.clone()
        })
        .prop_map(|(a, b, c)| lattice_from_generators(&a, &b, Some(&c)).unwrap())
}

fn aut_q() -> impl Strategy<Value = HeisAut<Q>> {
    (small_q(), small_q(), small_q(), small_q(), small_q(), small_q())
        .prop_filter("invertible", |(_, _, a, b, c, d)| a.clone() * d.clone() != b.clone() * c.clone())
        .prop_map(|(w1, w2, a, b, c, d)| HeisAut::new(cq(w1, w2), [[a, b], [c, d]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_elements_are_generator_words(l in lattice_q(), x in -5i64..=5, y in -5i64..=5, s in -5i64..=5) {
        let [a, b, c] = l.generators();
        let word = a.pow(x).mul(&b.pow(y)).mul(&c.pow(s));
        prop_assert_eq!(&l.element(&q(x, 1), &q(y, 1), &q(s, 1)), &word);
        prop_assert!(l.contains(&word));
    }

    #[test]
    fn generators_belong_and_commutator_is_central(a in gen_q(), b in gen_q(), c in pos_q()) {
        prop_assume!(a.z.re.clone() * b.z.im.clone() != a.z.im.clone() * b.z.re.clone());
        let l = lattice_from_generators(&a, &b, Some(&c)).unwrap();
        prop_assert!(l.contains(&a) && l.contains(&b) && l.contains(&HeisPoint::central(c.clone())));
        prop_assert!(l.contains(&a.commutator(&b)));
        // half the central step is never a member
        prop_assert!(!l.contains(&HeisPoint::central(l.central_step() / q(2, 1))));
        let free = lattice_from_generators(&a, &b, None).unwrap();
        prop_assert_eq!(free.n, 1);
        prop_assert_eq!(free.central_step(), a.commutator(&b).t.abs());
    }

    #[test]
    fn normal_form_reaches_the_standard_lattice(l in lattice_q()) {
        let (phi, n) = normalize_lattice(&l);
        prop_assert_eq!(n, l.n);
        prop_assert_eq!(apply_aut_lattice(&phi, &l).unwrap(), LatticeN::standard(n).unwrap());
    }

    #[test]
    fn index_is_automorphism_invariant(l in lattice_q(), phi in aut_q()) {
        let img = apply_aut_lattice(&phi, &l).unwrap();
        prop_assert_eq!(img.n, l.n);
        prop_assert_eq!(img.coarea(), l.coarea() * mat_det(&phi.g).abs());
        // pointwise: generators map into the image
        for g in l.generators() {
            prop_assert!(img.contains(&phi.apply(&g)));
        }
    }

    #[test]
    fn stabilizer_matches_fixed_point_oracle(n in 1u64..=3, phi in aut_q(), member in any::<bool>(),
                                            a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in -3i64..=3,
                                            u in -4i64..=4, v in -4i64..=4) {
        // half the draws are built to lie in the stabilizer when det is +-1
        let phi = if member && (a * d - b * c).abs() == 1 {
            HeisAut::new(cq(q(u, n as i64), q(v, n as i64)), [[q(a, 1), q(b, 1)], [q(c, 1), q(d, 1)]])
        } else {
            phi
        };
        let sh = LatticeN::<Q>::shifted(n).unwrap();
        let fixed = apply_aut_lattice(&phi, &sh).map(|img| img == sh).unwrap_or(false);
        prop_assert_eq!(stabilizer_contains(&phi, n, false), fixed);
    }

    #[test]
    fn fibre_chart_roundtrip_and_identification(w in (small_q(), small_q(), small_q(), small_q()), n in 1u64..=6,
                                                 r in 0i64..60, rp in 0i64..60, k in -3i64..=3, kp in -3i64..=3) {
        let (u, v) = (cq(w.0, w.1), cq(w.2, w.3));
        let area = u.re.clone() * v.im.clone() - u.im.clone() * v.re.clone();
        prop_assume!(area > q(0, 1));
        let base = LatticeN::<Q>::from_offsets(&u, &v, n, q(0, 1), q(0, 1)).unwrap().basis;
        let (r, rp) = (q(r, 60 * n as i64), q(rp, 60 * n as i64));
        let l = lattice_from_coords(&base, n, r.clone(), rp.clone()).unwrap();
        prop_assert_eq!(fibration_coords(&l), (base.clone(), r.clone(), rp.clone(), n));
        let nf = q(n as i64, 1);
        let moved = LatticeN::from_offsets(&base.w1, &base.w2, n, r.clone() + q(k, 1) / nf.clone(), rp.clone() + q(kp, 1) / nf).unwrap();
        prop_assert_eq!(&moved, &l);
        let other = LatticeN::from_offsets(&base.w1, &base.w2, n, r + q(1, 2 * n as i64), rp).unwrap();
        prop_assert!(other != l);
    }
}

fn c64() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0)
        .prop_filter("nonzero", |(a, b)| a.hypot(*b) > 0.2)
        .prop_map(|(a, b)| Complex64::new(a, b))
}

fn basis64() -> impl Strategy<Value = LatticeBasis> {
    (c64(), c64())
        .prop_filter("independent", |(u, v)| (u.re * v.im - u.im * v.re).abs() > 0.3)
        .prop_map(|(u, v)| match SubgroupC::lattice(u, v).unwrap() {
            SubgroupC::Lattice(b) => b,
            _ => unreachable!(),
        })
}

fn subgroup_h() -> impl Strategy<Value = SubgroupH> {
    prop_oneof![
        Just(SubgroupH::Trivial),
        Just(SubgroupH::Full),
        (c64(), -2.0f64..2.0).prop_map(|(z, t)| SubgroupH::cyclic(HeisPoint::new(z, t)).unwrap()),
        (-1.0f64..1.0).prop_filter("nonzero", |t| t.abs() > 0.1).prop_map(|t| SubgroupH::cyclic(HeisPoint::central(t)).unwrap()),
        (c64(), -2.0f64..2.0).prop_map(|(z, t)| SubgroupH::one_param(HeisPoint::new(z, t)).unwrap()),
        Just(SubgroupH::centre()),
        c64().prop_map(|z| SubgroupH::plane(z).unwrap()),
        (c64(), c64(), 0.3f64..2.0).prop_map(|(z, d, s)| SubgroupH::in_plane(z, SubgroupC::line_cyclic(d, s).unwrap()).unwrap()),
        (c64(), 0.3f64..2.0).prop_map(|(z, s)| SubgroupH::in_plane(z, SubgroupC::line_cyclic(1.0.into(), s).unwrap()).unwrap()),
        (c64(), basis64()).prop_map(|(z, b)| SubgroupH::in_plane(z, SubgroupC::Lattice(b)).unwrap()),
        (basis64(), 1u64..5, 0.0f64..1.0, 0.0f64..1.0).prop_map(|(b, n, r, rp)| {
            let s = 1.0 / n as f64;
            SubgroupH::Lattice(lattice_from_coords(&b, n, r * s * 0.999, rp * s * 0.999).unwrap())
        }),
        basis64().prop_map(SubgroupH::PreimageLattice),
        (c64(), 0.3f64..2.0).prop_map(|(d, s)| SubgroupH::preimage(&SubgroupC::line_cyclic(d, s).unwrap()).unwrap()),
    ]
}

fn aut64() -> impl Strategy<Value = HeisAut<f64>> {
    (c64(), -1.5f64..1.5, -1.5f64..1.5, -1.5f64..1.5, -1.5f64..1.5)
        .prop_filter("well conditioned", |(_, a, b, c, d)| (a * d - b * c).abs() > 0.3)
        .prop_map(|(w, a, b, c, d)| HeisAut::new(w, [[a, b], [c, d]]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn canonical_forms_are_stable(c in subgroup_h()) {
        let again = apply_aut_subgroup(&HeisAut::identity(), &c).unwrap();
        prop_assert!(again.approx_eq(&c, 1e-9), "{:?} vs {:?}", c, again);
        prop_assert_eq!(classify_stratum(&again), classify_stratum(&c));
    }

    #[test]
    fn pushforward_is_pointwise(c in subgroup_h(), phi in aut64()) {
        let img = apply_aut_subgroup(&phi, &c).unwrap();
        let inv = phi.inverse().unwrap();
        prop_assert_eq!(classify_stratum(&img).stratum.tag(), classify_stratum(&c).stratum.tag());
        for h in sample_to_radius(&c, 2.0, 0.5).unwrap() {
            prop_assert!(img.contains(&phi.apply(&h), 1e-7), "{:?} -> {:?} not in {:?}", h, phi.apply(&h), img);
        }
        for h in sample_to_radius(&img, 2.0, 0.5).unwrap() {
            prop_assert!(c.contains(&inv.apply(&h), 1e-7));
        }
    }

    #[test]
    fn pushforward_respects_composition(c in subgroup_h(), phi in aut64(), psi in aut64()) {
        let a = apply_aut_subgroup(&phi.compose(&psi), &c).unwrap();
        let b = apply_aut_subgroup(&phi, &apply_aut_subgroup(&psi, &c).unwrap()).unwrap();
        prop_assert!(a.approx_eq(&b, 1e-7), "{:?} vs {:?}", a, b);
    }

    #[test]
    fn index_of_float_lattices_is_invariant(c in subgroup_h(), phi in aut64()) {
        if let SubgroupH::Lattice(l) = &c {
            let img = apply_aut_subgroup(&phi, &c).unwrap();
            prop_assert_eq!(index_n(&img).unwrap().0, l.n);
        }
    }

    #[test]
    fn q_star_is_idempotent_and_charts_consistently(c in subgroup_h()) {
        if c.is_abelian() {
            prop_assert!(q_star(&c).is_err());
            prop_assert!(p_star(&c).is_err());
        } else {
            let once = q_star(&c).unwrap();
            prop_assert_eq!(&q_star(&once).unwrap(), &once);
            prop_assert!(once.contains_centre());
            prop_assert_eq!(center_chart(&once).unwrap(), f_inverse(&p_star(&c).unwrap()).unwrap());
        }
    }

    #[test]
    fn twisted_coordinates_forget_the_orientation(c in subgroup_h()) {
        prop_assume!(c.is_abelian() && !c.is_central());
        let ch = abelian_chart(&c).unwrap();
        // the opposite orientation charts the conjugate subgroup
        let conj = match &ch.q {
            SpherePoint::Infinity => SpherePoint::Infinity,
            p => p.conj(),
        };
        prop_assert!(ch.q_opposite.dist(&conj) < 1e-6, "{:?} vs {:?}", ch.q_opposite, conj);
        let x = rho_twist(&ch.q, ch.phi);
        let y = rho_twist(&ch.q_opposite, ch.phi + std::f64::consts::PI);
        prop_assert!(x.dist(&y) < 1e-6);
    }

    #[test]
    fn membership_matches_samples(c in subgroup_h()) {
        for h in sample_to_radius(&c, 3.0, 0.25).unwrap() {
            prop_assert!(c.contains(&h, 1e-9));
        }
    }

    #[test]
    fn flags_follow_the_projection(c in subgroup_h()) {
        let tag = classify_stratum(&c);
        if tag.contains_centre {
            let p = project_centred(&c).unwrap();
            let small = matches!(p, SubgroupC::Trivial | SubgroupC::Cyclic { .. } | SubgroupC::Line { .. });
            prop_assert_eq!(tag.in_d_minus, small);
            let big = matches!(p, SubgroupC::Line { .. } | SubgroupC::LineCyclic { .. } | SubgroupC::Full);
            prop_assert_eq!(tag.in_d_plus, big);
        } else {
            prop_assert!(!tag.in_d_minus && !tag.in_d_plus);
        }
    }
}

#[test]
fn theta_bundle_levels_and_cone_point() {
    for n in 1..=6u64 {
        let std = SubgroupH::Lattice(LatticeN::standard(n).unwrap());
        let sh = SubgroupH::Lattice(LatticeN::shifted(n).unwrap());
        let ThetaFiber::Level { j, torus, .. } = theta_bundle(&sh).unwrap().fiber else { panic!() };
        assert_eq!((j, torus), (1.0 / n as f64, (0.5, 0.5)));
        let ThetaFiber::Level { torus, .. } = theta_bundle(&std).unwrap().fiber else { panic!() };
        let expect = if n % 2 == 1 { 0.0 } else { 0.5 };
        assert_eq!(torus, (expect, expect));
    }
    // the torus point is invariant under the stabilizer of the shifted lattice transported to index one
    for n in [2u64, 3] {
        let sh = LatticeN::<Q>::shifted(n).unwrap();
        let phi = HeisAut::new(cq(q(1, n as i64), q(0, 1)), [[q(1, 1), q(1, 1)], [q(0, 1), q(1, 1)]]);
        let moved = apply_aut_lattice(&phi, &sh).unwrap();
        assert_eq!(moved, sh);
        // a non-stabilizing translation moves the torus point by n times its offset
        let psi = HeisAut::<Q>::inner(cq(q(0, 1), q(1, 4 * n as i64)));
        let moved = apply_aut_lattice(&psi, &sh).unwrap();
        let (a, _) = moved.torus_point();
        assert_eq!(a, q(1, 4));
    }
}

#[test]
fn min_delta_follows_discrete_limits() {
    use chabauty_core::complex::ExtReal;
    use chabauty_core::metric::min_delta;
    let cfg = MetricConfig::new(3.0, 0.05, 0.05).unwrap();
    let z2 = integer_plane_lattice();
    let limit = min_delta(&sample_ball_h(&z2, &cfg).unwrap());
    for k in [100u64, 200, 400] {
        let term = min_delta(&sample_ball_h(&sheared_lattice(k, 1).unwrap(), &cfg).unwrap());
        let (ExtReal::Finite(a), ExtReal::Finite(b)) = (term, limit) else { panic!() };
        assert!((a - b).abs() <= 2.0 * cfg.spacing, "k={k}: {a} vs {b}");
    }
    let l1 = sample_ball_h(&SubgroupH::Lattice(LatticeN::standard(1).unwrap()), &MetricConfig::new(2.0, 0.05, 0.05).unwrap()).unwrap();
    assert_eq!(min_delta(&l1), ExtReal::Finite(1.0));
}

#[test]
fn lattices_over_thin_lattices_approach_the_line_cyclic_preimage() {
    // lattices over <1/k, i> fill the centre (step 1/k) and the real direction
    let target = SubgroupH::preimage(&SubgroupC::line_cyclic(1.0.into(), 1.0).unwrap()).unwrap();
    assert!(classify_stratum(&target).in_d_plus);
    let cfg = MetricConfig::new(2.0, 0.05, 0.1).unwrap();
    let mut last = f64::INFINITY;
    for k in [5u64, 10, 20] {
        let base = LatticeBasis { w1: Complex64::new(1.0 / k as f64, 0.0), w2: Complex64::i() };
        let c = SubgroupH::Lattice(lattice_from_coords(&base, 1, 0.0, 0.0).unwrap());
        let d = distance_h(&c, &target, &cfg).unwrap();
        let dp = distance_c(&p_star(&c).unwrap(), &p_star(&target).unwrap(), &cfg).unwrap();
        assert!(d <= last + 1e-12 && dp <= d + 1e-12, "k={k}: {d} {dp}");
        last = d;
    }
    assert!(last < cfg.eps, "{last}");
}
