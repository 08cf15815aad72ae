//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints its verdict line; exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use chabauty_core::complex::{
    classify_limit_c, eisenstein_invariants, g2g3, reduce_basis, EisensteinMode, LatticeBasis, LimitThresholds,
    LimitVerdict, SubgroupC,
};
use chabauty_core::heis::{HeisAut, HeisPoint};
use chabauty_core::heis_sub::*;
use chabauty_core::metric::{ball_distance, converges_to, AmbientSpace, MetricConfig, Verdict};
use chabauty_core::scalar::rat;
use chabauty_core::sphere::{f_chart, f_inverse, inversion_delta, on_sigma, ray_point, SpherePoint};
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = BigRational;
type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn within(limit: Duration, start: Instant, out: Outcome) -> Outcome {
    let took = start.elapsed();
    match out {
        Ok(m) if took <= limit => Ok(format!("{m} [{took:.2?}]")),
        Ok(m) => Err(format!("{m} but took {took:.2?} > {limit:?}")),
        Err(m) => Err(format!("{m} [{took:.2?}]")),
    }
}

fn cyclic_sums() -> Outcome {
    let mut worst_direct: f64 = 0.0;
    let mut worst_fast: f64 = 0.0;
    for w in [c(1.0, 0.0), Complex64::from_polar(0.7, 0.3), c(-1.2, 2.0)] {
        // closed form 4 pi^4 / (3 w^4), 8 pi^6 / (27 w^6)
        let g2 = c(4.0 * PI.powi(4) / 3.0, 0.0) / w.powi(4);
        let g3 = c(8.0 * PI.powi(6) / 27.0, 0.0) / w.powi(6);
        let z = SubgroupC::cyclic(w).map_err(|e| e.to_string())?;
        let direct = eisenstein_invariants(&z, EisensteinMode::Direct { radius: 2000.0 }).map_err(|e| e.to_string())?;
        let fast = eisenstein_invariants(&z, EisensteinMode::Accelerated).map_err(|e| e.to_string())?;
        worst_direct = worst_direct.max(rel(direct.g2, g2)).max(rel(direct.g3, g3));
        worst_fast = worst_fast.max(rel(fast.g2, g2)).max(rel(fast.g3, g3));
    }
    ensure(
        worst_direct <= 1e-5 && worst_fast <= 1e-10,
        format!("direct rel err {worst_direct:.2e}, accelerated rel err {worst_fast:.2e}"),
    )
}

fn symmetry_zeros() -> Outcome {
    let (a, b) = g2g3(&SubgroupC::gaussian_integers()).map_err(|e| e.to_string())?;
    let (h2, h3) = g2g3(&SubgroupC::hexagonal()).map_err(|e| e.to_string())?;
    let sq = b.norm() / a.norm();
    let hex = h2.norm() / h3.norm();
    // the direct sums see the same cancellation
    let d = eisenstein_invariants(&SubgroupC::gaussian_integers(), EisensteinMode::Direct { radius: 300.0 })
        .map_err(|e| e.to_string())?;
    let dsq = d.g3.norm() / d.g2.norm();
    ensure(
        sq <= 1e-8 && hex <= 1e-8 && dsq <= 1e-8,
        format!("|g3(Z[i])|/|g2| = {sq:.1e} (direct {dsq:.1e}), |g2(hex)|/|g3| = {hex:.1e}"),
    )
}

/// Lattice `s e^{i theta} <1, tau>` with `tau` in the fundamental domain below
/// `Im tau = 2.5`. Higher in the cusp the relative discriminant, about
/// `1728 exp(-2 pi Im tau)`, drops under the floating point floors.
fn random_lattice(rng: &mut ChaCha8Rng) -> SubgroupC {
    loop {
        let tau = c(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..2.5));
        if tau.norm() < 1.0 {
            continue;
        }
        let u = Complex64::from_polar(rng.gen_range(0.3..2.0), rng.gen_range(-PI..PI));
        return SubgroupC::lattice(u, u * tau).unwrap();
    }
}

fn discriminant_nonvanishing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = f64::INFINITY;
    for _ in 0..500 {
        let l = random_lattice(&mut rng);
        let (g2, g3) = g2g3(&l).map_err(|e| e.to_string())?;
        let delta = g2.powi(3) - g3 * g3 * 27.0;
        worst = worst.min(delta.norm() / (g2.norm().powi(3) + g3.norm_sqr()));
    }
    ensure(worst > 1e-12, format!("500 lattices, min |D|/(|g2|^3+|g3|^2) = {worst:.3e}"))
}

fn sigma_residual(a: Complex64, b: Complex64) -> f64 {
    (a * a * a - b * b * 27.0).norm() / (a.norm().powi(3) + b.norm_sqr())
}

fn canonical_subgroups(rng: &mut ChaCha8Rng) -> Vec<SubgroupC> {
    let mut out = vec![SubgroupC::Trivial, SubgroupC::Full];
    while out.len() < 200 {
        let dir = Complex64::from_polar(1.0, rng.gen_range(-PI..PI));
        let len = rng.gen_range(0.3..4.0);
        let c = match out.len() % 5 {
            0 => SubgroupC::cyclic(dir * len),
            1 => SubgroupC::line(dir),
            2 => SubgroupC::line_cyclic(dir, len),
            _ => Ok(random_lattice(rng)),
        };
        out.push(c.unwrap());
    }
    out
}

fn chart_roundtrips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut points = 0;
    let mut worst_p: f64 = 0.0;
    while points < 200 {
        let a = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let b = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let p = SpherePoint::new(a, b);
        if p.norm() > 1.0 || p.norm() < 1e-3 || sigma_residual(a, b) < 1e-3 {
            continue;
        }
        let back = f_inverse(&f_chart(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        worst_p = worst_p.max(back.dist(&p));
        points += 1;
    }
    let cfg = MetricConfig::new(10.0, 0.02, 1e-5).unwrap();
    let r = cfg.sample_radius(AmbientSpace::ComplexPlane);
    let mut worst_c: f64 = 0.0;
    for s in canonical_subgroups(&mut rng) {
        let again = f_chart(&f_inverse(&s).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let d = ball_distance(
            &s.sample_ball(r, cfg.spacing).unwrap(),
            &again.sample_ball(r, cfg.spacing).unwrap(),
            &cfg,
        )
        .unwrap();
        worst_c = worst_c.max(d);
    }
    ensure(
        worst_p <= 1e-6 && worst_c <= 1e-5,
        format!("max point error {worst_p:.2e} (200 points), max subgroup distance {worst_c:.2e} (200 subgroups, R = 10)"),
    )
}

fn random_sphere_point(rng: &mut ChaCha8Rng) -> SpherePoint {
    loop {
        let a = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let b = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if sigma_residual(a, b) > 1e-3 && !on_sigma(a, b) {
            return ray_point(&SpherePoint::new(a, b), rng.gen_range(-2.0f64..2.0).exp()).unwrap();
        }
    }
}

fn chart_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cfg = MetricConfig::new(10.0, 0.02, 1e-6).unwrap();
    let r = cfg.sample_radius(AmbientSpace::ComplexPlane);
    let (mut dual_bad, mut conj_bad, mut circle_worst) = (0, 0, 0.0f64);
    for _ in 0..100 {
        let p = random_sphere_point(&mut rng);
        let f = f_chart(&p).map_err(|e| e.to_string())?;
        if !f_chart(&inversion_delta(&p)).unwrap().approx_eq(&f.dual(), 1e-9) {
            dual_bad += 1;
        }
        if !f_chart(&p.conj()).unwrap().approx_eq(&f.conj(), 1e-9) {
            conj_bad += 1;
        }
        let theta = rng.gen_range(-PI..PI);
        let lhs = f_chart(&p.rotate(theta)).unwrap();
        let rhs = f.scale_action(Complex64::from_polar(1.0, theta));
        let d = ball_distance(&lhs.sample_ball(r, cfg.spacing).unwrap(), &rhs.sample_ball(r, cfg.spacing).unwrap(), &cfg)
            .unwrap();
        circle_worst = circle_worst.max(d);
    }
    ensure(
        dual_bad == 0 && conj_bad == 0 && circle_worst <= 1e-6,
        format!("duality failures {dual_bad}/100, conjugation failures {conj_bad}/100, circle action max distance {circle_worst:.2e}"),
    )
}

fn degeneration() -> Outcome {
    type Fam = Box<dyn Fn(f64) -> (Complex64, Complex64)>;
    let e = |t: f64| Complex64::from_polar(1.0, t);
    let fams: Vec<(&str, Fam, SubgroupC)> = vec![
        ("Z n + Z n i", Box::new(|n| (c(n, 0.0), c(0.0, n))), SubgroupC::Trivial),
        ("Z/n + Z i/n", Box::new(|n| (c(1.0 / n, 0.0), c(0.0, 1.0 / n))), SubgroupC::Full),
        ("Z/n + Z n i", Box::new(|n| (c(1.0 / n, 0.0), c(0.0, n))), SubgroupC::line(c(1.0, 0.0)).unwrap()),
        ("<1, n i>", Box::new(|n| (c(1.0, 0.0), c(0.0, n))), SubgroupC::cyclic(c(1.0, 0.0)).unwrap()),
        ("<2, n(0.3 + i)>", Box::new(|n| (c(2.0, 0.0), c(0.3, 1.0) * n)), SubgroupC::cyclic(c(2.0, 0.0)).unwrap()),
        (
            "<0.8 e^0.7i, n e^2i + 0.3>",
            Box::new(move |n| (e(0.7) * 0.8, e(2.0) * n + 0.3)),
            SubgroupC::cyclic(e(0.7) * 0.8).unwrap(),
        ),
        (
            "<0.5 + 0.5i, n(-1 + 1.2i)>",
            Box::new(|n| (c(0.5, 0.5), c(-1.0, 1.2) * n)),
            SubgroupC::cyclic(c(0.5, 0.5)).unwrap(),
        ),
        ("<1/n, i>", Box::new(|n| (c(1.0 / n, 0.0), c(0.0, 1.0))), SubgroupC::line_cyclic(c(1.0, 0.0), 1.0).unwrap()),
        (
            "<e^0.4i / n, e^0.4i (0.3 + 1.5i)>",
            Box::new(move |n| (e(0.4) / n, e(0.4) * c(0.3, 1.5))),
            SubgroupC::line_cyclic(e(0.4), 1.5).unwrap(),
        ),
        (
            "<(1 + i)/n, -0.2 + 2i>",
            Box::new(|n| (c(1.0, 1.0) / n, c(-0.2, 2.0))),
            SubgroupC::line_cyclic(c(1.0, 1.0), 2.2 / 2f64.sqrt()).unwrap(),
        ),
        (
            "<e^1.1i / n, n e^1.1i (0.5 + i)>",
            Box::new(move |n| (e(1.1) / n, e(1.1) * c(0.5, 1.0) * n)),
            SubgroupC::line(e(1.1)).unwrap(),
        ),
        ("<i/n, n>", Box::new(|n| (c(0.0, 1.0 / n), c(n, 0.0))), SubgroupC::line(c(0.0, 1.0)).unwrap()),
        (
            "<(2 - i)/n, n(1 + 2i) + 3>",
            Box::new(|n| (c(2.0, -1.0) / n, c(1.0, 2.0) * n + 3.0)),
            SubgroupC::line(c(2.0, -1.0)).unwrap(),
        ),
    ];
    let th = LimitThresholds::default();
    let schedule: Vec<MetricConfig> = [2.0, 5.0, 10.0].iter().map(|r| MetricConfig::new(*r, 0.01, 1e-2).unwrap()).collect();
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (name, f, expect) in &fams {
        let basis = |k: usize| {
            let (u, v) = f(k as f64);
            reduce_basis(&u, &v).unwrap()
        };
        let report = classify_limit_c(basis, 2500, &th);
        let agrees = matches!(&report.verdict, LimitVerdict::Predicted(p) if p.approx_eq(expect, 1e-6));
        // the ball-distance oracle, on members whose samples stay small
        let last = if matches!(expect, SubgroupC::Full) { 100 } else { 200 };
        let conv = converges_to(
            |k, cfg: &MetricConfig| {
                SubgroupC::Lattice(basis(k)).sample_ball(cfg.sample_radius(AmbientSpace::ComplexPlane), cfg.spacing)
            },
            &[10, 40, last],
            |cfg: &MetricConfig| expect.sample_ball(cfg.sample_radius(AmbientSpace::ComplexPlane), cfg.spacing),
            &schedule,
        )
        .map_err(|e| e.to_string())?;
        let tail = conv.rows.iter().filter(|r| r.index == last).map(|r| r.distance).fold(0.0, f64::max);
        worst = worst.max(tail);
        if !agrees || conv.verdict != Verdict::Converges {
            failures.push(format!("{name}: {:?}, metric {} ({tail:.1e})", report.verdict, conv.verdict.as_str()));
        }
    }
    ensure(
        failures.is_empty(),
        format!(
            "{} families classified and confirmed, worst final distance {worst:.1e}{}",
            fams.len() - failures.len(),
            if failures.is_empty() { String::new() } else { format!("; failed: {}", failures.join("; ")) }
        ),
    )
}

fn q(n: i64, d: i64) -> Q {
    rat(n, d)
}

fn hq(x: i64, y: i64, t: Q) -> HeisPoint<Q> {
    HeisPoint::new(Complex::new(q(x, 1), q(y, 1)), t)
}

fn congruences() -> Outcome {
    let mut checked = 0usize;
    let mut mismatches = 0usize;
    for n in [1i64, 3, 5] {
        let std = LatticeN::<Q>::standard(n as u64).unwrap();
        let sh = LatticeN::<Q>::shifted(n as u64).unwrap();
        for x in -10..=10i64 {
            for y in -10..=10i64 {
                for t in -20 * n..=20 * n {
                    let h = hq(x, y, q(t, 2 * n));
                    // xy = t mod 2, and t even exactly when x and y both are
                    let in_std = (x * y - t).rem_euclid(2) == 0;
                    let in_sh = (t % 2 == 0) == (x % 2 == 0 && y % 2 == 0);
                    mismatches += usize::from(std.contains(&h) != in_std) + usize::from(sh.contains(&h) != in_sh);
                    checked += 2;
                }
            }
        }
        for p in [hq(1, 0, q(1, 2 * n)), hq(0, 1, q(1, 2 * n))] {
            mismatches += usize::from(!(sh.contains(&p) && !std.contains(&p)));
        }
        for p in [hq(1, 0, q(0, 1)), hq(0, 1, q(0, 1))] {
            mismatches += usize::from(!(std.contains(&p) && !sh.contains(&p)));
        }
    }
    ensure(mismatches == 0, format!("{checked} memberships checked, {mismatches} mismatches"))
}

fn rand_q(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Q {
    q(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn random_rational_lattice(rng: &mut ChaCha8Rng, n: u64) -> LatticeN<Q> {
    loop {
        let a = HeisPoint::new(Complex::new(rand_q(rng, 9, 4), rand_q(rng, 9, 4)), rand_q(rng, 9, 4));
        let b = HeisPoint::new(Complex::new(rand_q(rng, 9, 4), rand_q(rng, 9, 4)), rand_q(rng, 9, 4));
        let area = a.z.re.clone() * b.z.im.clone() - a.z.im.clone() * b.z.re.clone();
        if area == q(0, 1) {
            continue;
        }
        let step = num_traits::Signed::abs(&area) / q(n as i64, 1);
        return lattice_from_generators(&a, &b, Some(&step)).unwrap();
    }
}

fn random_gl2z(rng: &mut ChaCha8Rng, unimodular: bool) -> [[i64; 2]; 2] {
    loop {
        let m = [[rng.gen_range(-3..=3), rng.gen_range(-3..=3)], [rng.gen_range(-3..=3), rng.gen_range(-3..=3)]];
        let det: i64 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det == 1 || (!unimodular && det == -1) {
            return m;
        }
    }
}

fn normal_form_and_stabilizer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad_nf = 0;
    let mut disagreements = 0;
    let mut members = 0;
    for n in 1..=3u64 {
        let nn = n as i64;
        for _ in 0..100 {
            let l = random_rational_lattice(&mut rng, n);
            let (phi, k) = normalize_lattice(&l);
            let ok = k == n && l.n == n && apply_aut_lattice(&phi, &l).ok() == LatticeN::standard(n).ok();
            bad_nf += usize::from(!ok);
        }
        let sh = LatticeN::<Q>::shifted(n).unwrap();
        for i in 0..200 {
            let (w, g) = match i % 4 {
                // w in (1/n)Z^2, g in GL2(Z)
                0 | 1 => {
                    let m = random_gl2z(&mut rng, false);
                    let w = Complex::new(q(rng.gen_range(-6..=6), nn), q(rng.gen_range(-6..=6), nn));
                    (w, m.map(|r| r.map(|x| q(x, 1))))
                }
                // w off the grid (1/n)Z^2
                2 => {
                    let m = random_gl2z(&mut rng, false);
                    let w = Complex::new(q(2 * rng.gen_range(-6..=6) + 1, 2 * nn), q(rng.gen_range(-6..=6), nn));
                    (w, m.map(|r| r.map(|x| q(x, 1))))
                }
                // rational matrices, mostly not integral
                _ => {
                    let g = [[rand_q(&mut rng, 4, 3), rand_q(&mut rng, 4, 3)], [rand_q(&mut rng, 4, 3), rand_q(&mut rng, 4, 3)]];
                    if g[0][0].clone() * g[1][1].clone() == g[0][1].clone() * g[1][0].clone() {
                        continue;
                    }
                    (Complex::new(rand_q(&mut rng, 4, 3), rand_q(&mut rng, 4, 3)), g)
                }
            };
            let phi = HeisAut::new(w, g);
            let fixes = apply_aut_lattice(&phi, &sh).map(|img| img == sh).unwrap_or(false);
            members += usize::from(fixes);
            disagreements += usize::from(stabilizer_contains(&phi, n, false) != fixes);
        }
    }
    ensure(
        bad_nf == 0 && disagreements == 0 && members > 0,
        format!("normal form failures {bad_nf}/300, stabilizer disagreements {disagreements}/600 ({members} members)"),
    )
}

fn fibration_chart() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = 0;
    let mut count = 0;
    while count < 300 {
        let (u, v) = (
            Complex::new(rand_q(&mut rng, 9, 4), rand_q(&mut rng, 9, 4)),
            Complex::new(rand_q(&mut rng, 9, 4), rand_q(&mut rng, 9, 4)),
        );
        if u.re.clone() * v.im.clone() <= u.im.clone() * v.re.clone() {
            continue;
        }
        let n = rng.gen_range(1..=7u64);
        let nn = n as i64;
        let base = LatticeN::<Q>::from_offsets(&u, &v, n, q(0, 1), q(0, 1)).unwrap().basis;
        let den = 12 * nn;
        let (r, rp) = (q(rng.gen_range(0..12), den), q(rng.gen_range(0..12), den));
        let l = lattice_from_coords(&base, n, r.clone(), rp.clone()).unwrap();
        let roundtrip = fibration_coords(&l) == (base.clone(), r.clone(), rp.clone(), n);
        // (s, s') with n(r - s, r' - s') integral give the same lattice, others do not
        let (k, kp) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let same = LatticeN::from_offsets(&base.w1, &base.w2, n, r.clone() + q(k, nn), rp.clone() + q(kp, nn)).unwrap() == l;
        let off = q(rng.gen_range(1..12), den);
        let differs = LatticeN::from_offsets(&base.w1, &base.w2, n, r, rp + off).unwrap() != l;
        failures += usize::from(!(roundtrip && same && differs));
        count += 1;
    }
    ensure(failures == 0, format!("{failures}/300 chart points failed roundtrip or identification"))
}

fn section_families() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    // sheared lattices against Z^2
    let cfg5 = MetricConfig::new(5.0, 0.02, 5e-2).unwrap();
    let z2 = integer_plane_lattice();
    let mut line_dist = 0.0;
    for k in [200u64, 400, 800] {
        let lk = sheared_lattice(k, 1).map_err(|e| e.to_string())?;
        let d = distance_h(&lk, &z2, &cfg5).map_err(|e| e.to_string())?;
        ok &= d <= 5e-2;
        notes.push(format!("sheared k={k}: {d:.3}"));
        line_dist = distance_c(&p_star(&lk).unwrap(), &SubgroupC::line(c(1.0, 0.0)).unwrap(), &cfg5).unwrap();
    }
    ok &= line_dist <= 5e-2;
    notes.push(format!("projection to R: {line_dist:.3}"));
    // deepening lattices against the preimage of Z[i]
    let target = SubgroupH::PreimageLattice(match SubgroupC::gaussian_integers() {
        SubgroupC::Lattice(b) => b,
        _ => unreachable!(),
    });
    let cfg2 = MetricConfig::new(2.0, 0.02, 5e-2).unwrap();
    let mut ds = Vec::new();
    let mut js = Vec::new();
    for k in [10u64, 20, 40, 80, 160] {
        let lk = deepening_lattice(k).map_err(|e| e.to_string())?;
        ds.push(distance_h(&lk, &target, &cfg2).map_err(|e| e.to_string())?);
        js.push(j_value(&lk).map_err(|e| e.to_string())?);
    }
    let j_limit = j_value(&target).map_err(|e| e.to_string())?;
    ok &= ds.windows(2).all(|w| w[1] <= w[0]) && *ds.last().unwrap() < cfg2.eps;
    ok &= js.windows(2).all(|w| w[1] < w[0]) && j_limit == 0.0;
    notes.push(format!("deepening: {:.3?}, J: {:.4?} -> {j_limit}", ds, js));
    // dilations: Z^2 -> {e} as s grows, a lattice -> H as s shrinks
    let big: Vec<f64> = [1.0, 3.0, 10.0]
        .iter()
        .map(|s| distance_h(&dilated(&z2, *s).unwrap(), &SubgroupH::Trivial, &cfg2).unwrap())
        .collect();
    ok &= big.windows(2).all(|w| w[1] <= w[0]) && big[2] < cfg2.eps;
    let l1 = SubgroupH::Lattice(LatticeN::standard(1).unwrap());
    let cfg_full = MetricConfig::new(1.5, 0.05, 0.1).unwrap();
    let small: Vec<f64> = [0.4, 0.2, 0.1]
        .iter()
        .map(|s| distance_h(&dilated(&l1, *s).unwrap(), &SubgroupH::Full, &cfg_full).unwrap())
        .collect();
    ok &= small.windows(2).all(|w| w[1] < w[0]) && small[2] < cfg_full.eps;
    notes.push(format!("dilations to {{e}}: {big:.3?}, to H: {small:.3?}"));
    ensure(ok, notes.join("; "))
}

fn orbit_density() -> Outcome {
    let cfg = MetricConfig::new(3.0, 0.02, 0.05).unwrap();
    let z2 = integer_plane_lattice();
    let targets = [
        (
            "plane lattice <1 + 0.1 sqrt(2) i, 0.3 + 1.1i>",
            SubgroupH::in_plane(c(1.0, 0.0), SubgroupC::lattice(c(1.0, 0.1 * 2f64.sqrt()), c(0.3, 1.1)).unwrap()),
        ),
        (
            "lattice in the plane over e^0.6i",
            SubgroupH::in_plane(Complex64::from_polar(1.0, 0.6), SubgroupC::lattice(c(0.8, 0.1), c(-0.2, 1.3)).unwrap()),
        ),
        ("cyclic <(0.5 + 0.2i, 0.3)>", SubgroupH::cyclic(HeisPoint::new(c(0.5, 0.2), 0.3))),
        ("one-parameter (1 + 0.5i, 0.4)", SubgroupH::one_param(HeisPoint::new(c(1.0, 0.5), 0.4))),
        (
            "line plus cyclic in the plane over i",
            SubgroupH::in_plane(c(0.0, 1.0), SubgroupC::line_cyclic(c(1.0, 0.7), 0.9).unwrap()),
        ),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, t) in targets {
        let t = t.map_err(|e| e.to_string())?;
        let r = orbit_density_walk(&z2, &t, 10_000, &cfg, 20_240).map_err(|e| e.to_string())?;
        ok &= r.best_distance < cfg.eps;
        let at = r.improvements.last().map_or(0, |i| i.0);
        notes.push(format!("{name}: {:.1e} (step {at})", r.best_distance));
    }
    ensure(ok, notes.join("; "))
}

fn disconnection() -> Outcome {
    let cfg = MetricConfig::new(2.0, 0.02, 0.1).unwrap();
    let mut notes = Vec::new();
    let mut ok = true;
    let bases: [LatticeBasis; 2] = [
        LatticeBasis { w1: c(1.0, 0.0), w2: c(0.0, 1.0) },
        reduce_basis(&c(1.1, 0.2), &c(0.3, 0.9)).unwrap(),
    ];
    for b in &bases {
        let cert = disconnection_certificate(b, &cfg).map_err(|e| e.to_string())?;
        let admissible = cert
            .members
            .iter()
            .all(|(j, _)| *j == 0.0 || ((1.0 / j).round() - 1.0 / j).abs() < 1e-9);
        ok &= cert.certified && cert.distinct_j >= 2 && admissible;
        let js: Vec<String> = cert.members.iter().map(|(j, d)| format!("J={j:.4} d={d:.3}")).collect();
        notes.push(format!("N={}: {}", cert.min_index, js.join(", ")));
    }
    ensure(ok, notes.join("; "))
}

fn main() {
    let s = Duration::from_secs;
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("1 cyclic lattice sums", s(10), cyclic_sums),
        ("2 symmetry zeros", s(5), symmetry_zeros),
        ("3 discriminant nonvanishing", s(60), discriminant_nonvanishing),
        ("4 chart roundtrips", s(60), chart_roundtrips),
        ("5 chart identities", s(120), chart_identities),
        ("6 degenerating families", s(300), degeneration),
        ("7 congruence descriptions", s(120), congruences),
        ("8 normal form and stabilizer", s(60), normal_form_and_stabilizer),
        ("9 fibration chart", s(60), fibration_chart),
        ("10 convergent families", s(120), section_families),
        ("11 orbit density walk", s(300), orbit_density),
        ("12 disconnection certificate", s(60), disconnection),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let out = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match within(limit, start, out) {
            Ok(m) => println!("criterion {name}: PASS ({m})"),
            Err(m) => {
                failed += 1;
                println!("criterion {name}: FAIL ({m})");
            }
        }
    }
    println!("acceptance: {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
