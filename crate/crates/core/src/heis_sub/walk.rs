//! Searching the automorphism orbit of a plane lattice for subgroups close to
//! a given abelian subgroup.
//!
//! Automorphisms that preserve the plane `R z0 x R` and fix its central line
//! act on plane coordinates `(x, t)` by lower-triangular matrices
//! `(x, t) -> (a x, d t + c x)`. Such a matrix maps a plane lattice meeting
//! the central line onto any other such lattice, so the search proposes
//! targets' nearby lattices that meet the central line (choosing integer
//! directions by continued fractions, then at random) and keeps the closest
//! image found.

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_aut_subgroup, distance_h, plane_coordinates, SubgroupH};
use crate::complex::SubgroupC;
use crate::error::{Error, Result};
use crate::heis::HeisAut;
use crate::metric::{AmbientSpace, MetricConfig};
use crate::scalar::Scalar;

type V2 = [f64; 2];

#[derive(Clone, Debug, PartialEq)]
pub struct WalkResult {
    pub best_distance: f64,
    pub best: SubgroupH,
    pub automorphism: HeisAut<f64>,
    /// Candidate automorphisms drawn.
    pub steps: usize,
    /// `(step, distance)` at each improvement; step 0 is the start.
    pub improvements: Vec<(usize, f64)>,
    pub seed: u64,
}

/// `(x, t)` coordinates of the plane-coordinate point `t + i x`.
fn xt(c: Complex64) -> V2 {
    [c.im, c.re]
}

fn det(u: V2, v: V2) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

fn comb(a: f64, u: V2, b: f64, v: V2) -> V2 {
    [a * u[0] + b * v[0], a * u[1] + b * v[1]]
}

fn neg(u: V2) -> V2 {
    [-u[0], -u[1]]
}

/// Basis `(w, v)` of the lattice spanned by `m1 u1 + m2 u2`-type
/// combinations, with `v = m2 u1 - m1 u2` (assumed vertical) and
/// `w` completing it; signs make `w.x > 0` and `v.t > 0`.
fn adapted(u1: V2, u2: V2, m1: i64, m2: i64) -> (V2, V2) {
    let e = m1.extended_gcd(&m2);
    let (g, d) = (e.x * e.gcd.signum(), e.y * e.gcd.signum());
    let mut v = comb(m2 as f64, u1, -(m1 as f64), u2);
    let mut w = comb(g as f64, u1, d as f64, u2);
    if v[1] < 0.0 {
        v = neg(v);
    }
    // shorten w along the vertical direction
    w[1] -= (w[1] / v[1]).round() * v[1];
    if w[0] < 0.0 {
        w = neg(w);
    }
    (w, v)
}

/// Vertical primitive vector and complement of a plane lattice meeting the
/// central line.
fn start_frame(b1: V2, b2: V2) -> Result<(V2, V2)> {
    let g = f64::real_gcd(&b1[0], &b2[0])
        .filter(|g| *g > 1e-12)
        .ok_or_else(|| Error::param("start lattice must meet the centre in a nontrivial subgroup"))?;
    let m1 = (b1[0] / g).round() as i64;
    let m2 = (b2[0] / g).round() as i64;
    // m2 b1 - m1 b2 is vertical; primitive since m1, m2 are coprime
    Ok(adapted(b1, b2, m1, m2))
}

/// Lattice basis (in `(x, t)`) approximating a plane-coordinate subgroup:
/// continuous directions get pitch `h`, missing ones are pushed out to `far`.
fn approximate(c: &SubgroupC, h: f64, far: f64) -> Result<(V2, V2)> {
    let i = Complex64::i();
    let (a, b) = match c {
        SubgroupC::Lattice(l) => (l.w1, l.w2),
        SubgroupC::Cyclic { w } => (*w, i * w / w.norm() * far),
        SubgroupC::LineCyclic { dir, step } => (dir * h, i * dir * *step),
        SubgroupC::Line { dir } => (dir * h, i * dir * far),
        SubgroupC::Full => (Complex64::new(h, 0.0), i * h),
        SubgroupC::Trivial => (Complex64::new(far, 0.0), i * far),
    };
    Ok((xt(a), xt(b)))
}

/// Continued-fraction convergents `p/q` of `x` with `q` up to about `1e7`.
fn convergents(x: f64, max: usize) -> Vec<(i64, i64)> {
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, x.floor() as i64, 1i64);
    let mut out = vec![(p1, q1)];
    let mut frac = x - x.floor();
    while out.len() < max && frac.abs() > 1e-12 {
        let y = 1.0 / frac;
        if y.floor() * q1 as f64 > 1e7 {
            break;
        }
        let a = y.floor() as i64;
        frac = y - y.floor();
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        out.push((p1, q1));
    }
    out
}

/// Plane direction and plane-coordinate form of an abelian target; central
/// targets are placed in `fallback`'s plane.
fn target_plane(target: &SubgroupH, fallback: Complex64) -> Result<(Complex64, SubgroupC)> {
    if !target.is_abelian() {
        return Err(Error::WrongStratum {
            op: "orbit_density_walk",
            stratum: target.stratum().stratum.tag(),
            reason: "targets must be abelian",
        });
    }
    match target {
        SubgroupH::Trivial => Ok((fallback, SubgroupC::Trivial)),
        SubgroupH::Cyclic { gen } if target.is_central() => {
            Ok((fallback, SubgroupC::cyclic(Complex64::new(gen.t, 0.0))?))
        }
        SubgroupH::OneParam { .. } if target.is_central() => Ok((fallback, SubgroupC::line(1.0.into())?)),
        _ => plane_coordinates(target),
    }
}

/// Automorphism acting on the plane over `1` by the lower-triangular matrix
/// with entries `m11, m21, m22`.
fn triangular(m11: f64, m21: f64, m22: f64) -> HeisAut<f64> {
    HeisAut::new(Complex64::new(0.0, -m21 / m11), [[m11, 0.0], [0.0, m22 / m11]])
}

fn rotation(theta: f64) -> HeisAut<f64> {
    let (s, c) = theta.sin_cos();
    HeisAut::linear([[c, -s], [s, c]])
}

/// Best ball distance to `target` over `budget` automorphism images of
/// `start`, a plane lattice meeting the centre. Deterministic for a given
/// seed, and nonincreasing in `budget`.
pub fn orbit_density_walk(
    start: &SubgroupH,
    target: &SubgroupH,
    budget: usize,
    cfg: &MetricConfig,
    seed: u64,
) -> Result<WalkResult> {
    let (dir_s, inner_s) = plane_coordinates(start)?;
    let SubgroupC::Lattice(ls) = &inner_s else {
        return Err(Error::WrongStratum {
            op: "orbit_density_walk",
            stratum: start.stratum().stratum.tag(),
            reason: "start must be a lattice in a plane",
        });
    };
    let (wl, vl) = start_frame(xt(ls.w1), xt(ls.w2))?;
    let (dir_t, inner_t) = target_plane(target, dir_s)?;
    let far = 4.0 * (cfg.sample_radius(AmbientSpace::Heisenberg) + 1.0);
    let (mut t1, mut t2) = approximate(&inner_t, cfg.spacing / 4.0, far)?;
    let swapped = t1[0].abs() < t2[0].abs();
    if swapped {
        std::mem::swap(&mut t1, &mut t2);
    }
    // integer directions (m1, m2) roughly proportional to (t1.x, t2.x)
    let ratio = t2[0] / t1[0];
    let mut cf = convergents(ratio, 60).into_iter();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let into_plane = rotation(dir_t.arg());
    let out_of_plane = rotation(-dir_s.arg());

    let mut best_distance = distance_h(start, target, cfg)?;
    let mut best = start.clone();
    let mut automorphism = HeisAut::identity();
    let mut improvements = vec![(0, best_distance)];
    let mut best_proxy = f64::INFINITY;
    for step in 1..=budget {
        let (p, q) = cf.next().unwrap_or_else(|| {
            let q = rng.gen_range(1..=10 + step as i64);
            (((ratio * q as f64).round() as i64) + rng.gen_range(-1..=1), q)
        });
        let (m1, m2) = (q, p);
        if m1 == 0 || m1.gcd(&m2) != 1 {
            continue;
        }
        let nn = (m1 as f64).powi(2) + (m2 as f64).powi(2);
        let a = (m1 as f64 * t1[0] + m2 as f64 * t2[0]) / nn;
        let u1 = [a * m1 as f64, t1[1]];
        let u2 = [a * m2 as f64, t2[1]];
        if det(u1, u2).abs() <= 1e-12 * (1.0 + det(t1, t2).abs()) {
            continue;
        }
        let proxy = (t1[0] - u1[0]).abs() + (t2[0] - u2[0]).abs();
        if proxy >= best_proxy {
            continue;
        }
        best_proxy = proxy;
        let (wt, vt) = adapted(u1, u2, m1, m2);
        // M = [wt vt] [wl vl]^-1, lower triangular since both v are vertical
        let dl = det(wl, vl);
        let inv = [[vl[1] / dl, -vl[0] / dl], [-wl[1] / dl, wl[0] / dl]];
        let m11 = wt[0] * inv[0][0] + vt[0] * inv[1][0];
        let m21 = wt[1] * inv[0][0] + vt[1] * inv[1][0];
        let m22 = wt[1] * inv[0][1] + vt[1] * inv[1][1];
        let phi = into_plane.compose(&triangular(m11, m21, m22)).compose(&out_of_plane);
        // badly conditioned images fail to reduce; they are skipped
        let Ok(image) = apply_aut_subgroup(&phi, start) else {
            continue;
        };
        let d = distance_h(&image, target, cfg)?;
        if d < best_distance {
            best_distance = d;
            best = image;
            automorphism = phi;
            improvements.push((step, d));
        }
    }
    Ok(WalkResult {
        best_distance,
        best,
        automorphism,
        steps: budget,
        improvements,
        seed,
    })
}
