//! Coordinates on the space of closed subgroups of `C` by the 4-sphere
//! `C^2 u {inf}`.
//!
//! A point `(a, b)` off the discriminant locus `a^3 = 27 b^2` is the pair
//! `(g2, g3)` of a unique lattice. The chart rescales that lattice along its
//! positive-real orbit so that the unit sphere goes to unimodular lattices,
//! the origin to `{0}` and, through duality, infinity to `C`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::complex::eisenstein::{eisenstein_derivatives, eisenstein_series, C2, C3};
use crate::complex::{coarea, g2g3, reduce_basis, ExtReal, SubgroupC};
use crate::error::{Error, Result};

/// Relative width of the band treated as the discriminant locus.
pub const SIGMA_TOL: f64 = 1e-9;
/// Distance from the unit sphere below which a point counts as on it.
pub const SPHERE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite { a: Complex64, b: Complex64 },
    Infinity,
}

impl SpherePoint {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        SpherePoint::Finite { a, b }
    }

    pub fn origin() -> Self {
        SpherePoint::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// `sqrt(|a|^2 + |b|^2)`; infinite at infinity.
    pub fn norm(&self) -> f64 {
        match self {
            SpherePoint::Finite { a, b } => (a.norm_sqr() + b.norm_sqr()).sqrt(),
            SpherePoint::Infinity => f64::INFINITY,
        }
    }

    pub fn is_origin(&self) -> bool {
        self.norm() == 0.0
    }

    pub fn conj(&self) -> Self {
        match self {
            SpherePoint::Finite { a, b } => SpherePoint::new(a.conj(), b.conj()),
            SpherePoint::Infinity => SpherePoint::Infinity,
        }
    }

    /// Circle action `(e^{-2i theta} a, e^{-3i theta} b)`.
    pub fn rotate(&self, theta: f64) -> Self {
        match self {
            SpherePoint::Finite { a, b } => SpherePoint::new(
                a * Complex64::from_polar(1.0, -2.0 * theta),
                b * Complex64::from_polar(1.0, -3.0 * theta),
            ),
            SpherePoint::Infinity => SpherePoint::Infinity,
        }
    }

    /// Euclidean distance in `C^2`; zero between the two copies of infinity.
    pub fn dist(&self, other: &Self) -> f64 {
        match (self, other) {
            (SpherePoint::Finite { a, b }, SpherePoint::Finite { a: c, b: d }) => {
                ((a - c).norm_sqr() + (b - d).norm_sqr()).sqrt()
            }
            (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
            _ => f64::INFINITY,
        }
    }

    fn finite(&self, op: &'static str) -> Result<(Complex64, Complex64)> {
        match self {
            SpherePoint::Finite { a, b } => Ok((*a, *b)),
            SpherePoint::Infinity => Err(Error::param(format!("{op} needs a finite point"))),
        }
    }

    fn nonzero(&self, op: &'static str) -> Result<(Complex64, Complex64)> {
        let (a, b) = self.finite(op)?;
        if self.is_origin() {
            return Err(Error::param(format!("{op} is undefined at the origin")));
        }
        Ok((a, b))
    }
}

/// Membership in the discriminant locus `a^3 - 27 b^2 = 0`, with relative
/// tolerance [`SIGMA_TOL`].
pub fn on_sigma(a: Complex64, b: Complex64) -> bool {
    let r = (a * a * a - b * b * 27.0).norm();
    r <= SIGMA_TOL * (a.norm().powi(3) + b.norm_sqr())
}

/// On the discriminant locus and on the unit sphere.
pub fn on_trefoil(p: &SpherePoint) -> bool {
    match p {
        SpherePoint::Finite { a, b } => on_sigma(*a, *b) && (p.norm() - 1.0).abs() <= SPHERE_TOL,
        SpherePoint::Infinity => false,
    }
}

/// The scale `y = t^-2` for which `(y a, y^{3/2} b)` has norm `r`.
fn ray_scale(a: Complex64, b: Complex64, r: f64) -> f64 {
    let (aa, bb) = (a.norm_sqr(), b.norm_sqr());
    let f = |y: f64| aa * y * y + bb * y * y * y;
    let target = r * r;
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while f(hi) < target {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The point of norm `r` on the positive-real orbit `t -> (t^-2 a, t^-3 b)`.
pub fn ray_point(p: &SpherePoint, r: f64) -> Result<SpherePoint> {
    let (a, b) = p.nonzero("ray_point")?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::param("ray norm must be positive and finite"));
    }
    let y = ray_scale(a, b, r);
    Ok(SpherePoint::new(a * y, b * y.powf(1.5)))
}

/// Retraction of `C^2 \ {0}` onto the unit sphere along the orbits.
pub fn pi_retract(p: &SpherePoint) -> Result<SpherePoint> {
    ray_point(p, 1.0)
}

/// `(a, b) / |(a, b)|^2`, exchanging the origin and infinity.
pub fn inversion_delta(p: &SpherePoint) -> SpherePoint {
    match p {
        SpherePoint::Infinity => SpherePoint::origin(),
        SpherePoint::Finite { a, b } => {
            let n2 = a.norm_sqr() + b.norm_sqr();
            if n2 == 0.0 {
                SpherePoint::Infinity
            } else {
                SpherePoint::new(a / n2, b / n2)
            }
        }
    }
}

/// Points on the trefoil: retractions of `(3c^2, c^3)` for `c` on the unit circle.
pub fn trefoil_sample(count: usize) -> Result<Vec<SpherePoint>> {
    if count == 0 {
        return Err(Error::param("trefoil sample needs at least one point"));
    }
    (0..count)
        .map(|k| {
            let c = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / count as f64);
            pi_retract(&SpherePoint::new(c * c * 3.0, c * c * c))
        })
        .collect()
}

fn j_invariant(e4: Complex64, e6: Complex64) -> Complex64 {
    let e43 = e4 * e4 * e4;
    e43 * 1728.0 / (e43 - e6 * e6)
}

fn chordal(x: Complex64, y: Complex64) -> f64 {
    if !x.is_finite() || !y.is_finite() {
        return if x.is_finite() == y.is_finite() { 0.0 } else { 1.0 };
    }
    (x - y).norm() / ((1.0 + x.norm_sqr()) * (1.0 + y.norm_sqr())).sqrt()
}

/// `(tau, j(tau))` on a grid over the standard fundamental domain.
fn seed_grid() -> &'static [(Complex64, Complex64)] {
    static GRID: OnceLock<Vec<(Complex64, Complex64)>> = OnceLock::new();
    GRID.get_or_init(|| {
        let mut out = Vec::new();
        for i in 0..=20 {
            let x = -0.5 + 0.05 * i as f64;
            let y0 = (1.0 - x * x).sqrt().max(3f64.sqrt() / 2.0) + 1e-3;
            let mut y = y0;
            while y < 3.0 {
                let tau = Complex64::new(x, y);
                let (_, e4, e6) = eisenstein_series(tau);
                out.push((tau, j_invariant(e4, e6)));
                y *= 1.08;
            }
        }
        out
    })
}

/// Move `tau` into the fundamental domain; returns the new `tau` and the
/// factor `c tau + d` of the modular transformation used.
fn to_fundamental_domain(mut tau: Complex64) -> (Complex64, Complex64) {
    let mut factor = Complex64::new(1.0, 0.0);
    for _ in 0..200 {
        tau.re -= tau.re.round();
        if tau.norm_sqr() < 1.0 - 1e-15 {
            factor *= tau;
            tau = -tau.inv();
        } else {
            break;
        }
    }
    (tau, factor)
}

struct Residual {
    f: [Complex64; 2],
    jac: [[Complex64; 2]; 2],
    norm: f64,
}

/// `F(tau, u) = (C2 E4 u^2 - a, C3 E6 u^3 - b)` with `u = omega^-2`.
fn residual(a: Complex64, b: Complex64, tau: Complex64, u: Complex64) -> Residual {
    let (e2, e4, e6) = eisenstein_series(tau);
    let (d4, d6) = eisenstein_derivatives(e2, e4, e6);
    let u2 = u * u;
    let u3 = u2 * u;
    let f = [e4 * u2 * C2 - a, e6 * u3 * C3 - b];
    let jac = [
        [d4 * u2 * C2, e4 * u * 2.0 * C2],
        [d6 * u3 * C3, e6 * u2 * 3.0 * C3],
    ];
    let norm = (f[0].norm_sqr() + f[1].norm_sqr()).sqrt();
    Residual { f, jac, norm }
}

fn initial_scale(a: Complex64, b: Complex64, tau: Complex64) -> Complex64 {
    let (_, e4, e6) = eisenstein_series(tau);
    let s2 = a / (e4 * C2);
    let s3 = b / (e6 * C3);
    let mut cands = vec![s3 / s2, s2.sqrt(), -s2.sqrt()];
    let r3 = s3.cbrt();
    for k in 0..3 {
        cands.push(r3 * Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 3.0));
    }
    cands
        .into_iter()
        .filter(|u| u.is_finite() && u.norm() > 0.0)
        .map(|u| (residual(a, b, tau, u).norm, u))
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .map_or(Complex64::new(1.0, 0.0), |(_, u)| u)
}

fn newton(a: Complex64, b: Complex64, tau0: Complex64, u0: Complex64) -> (Complex64, Complex64, f64) {
    let (mut tau, mut u) = (tau0, u0);
    let mut r = residual(a, b, tau, u);
    for _ in 0..100 {
        if r.norm <= 1e-14 {
            break;
        }
        let [[j11, j12], [j21, j22]] = r.jac;
        let det = j11 * j22 - j12 * j21;
        if det.norm() == 0.0 || !det.is_finite() {
            break;
        }
        let dt = (r.f[0] * j22 - r.f[1] * j12) / det;
        let du = (j11 * r.f[1] - j21 * r.f[0]) / det;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let t_new = tau - dt * lambda;
            if t_new.im > 0.0 && t_new.is_finite() {
                let (t_red, factor) = to_fundamental_domain(t_new);
                let u_new = (u - du * lambda) / (factor * factor);
                let r_new = residual(a, b, t_red, u_new);
                if r_new.norm < r.norm {
                    tau = t_red;
                    u = u_new;
                    r = r_new;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (tau, u, r.norm)
}

/// The lattice with invariants `(a, b)`, a point of the unit sphere off the
/// discriminant locus.
fn gamma_unit(a: Complex64, b: Complex64) -> Result<SubgroupC> {
    let a3 = a * a * a;
    let target = a3 * 1728.0 / (a3 - b * b * 27.0);
    let mut seeds: Vec<Complex64> = Vec::new();
    if b.norm() == 0.0 {
        seeds.push(Complex64::i());
    }
    if a.norm() == 0.0 {
        seeds.push(Complex64::new(-0.5, 3f64.sqrt() / 2.0));
    }
    let mut ranked: Vec<(f64, Complex64)> =
        seed_grid().iter().map(|(t, j)| (chordal(*j, target), *t)).collect();
    ranked.sort_by(|x, y| x.0.total_cmp(&y.0));
    seeds.extend(ranked.iter().take(6).map(|(_, t)| *t));
    if target.norm() > 1e3 {
        // j ~ 1/q near the cusp
        let q = (target - 744.0).inv();
        let tau = Complex64::new(q.arg() / (2.0 * PI), -q.norm().ln() / (2.0 * PI));
        seeds.insert(0, to_fundamental_domain(tau).0);
    }
    let mut best = f64::INFINITY;
    for tau0 in seeds {
        let u0 = initial_scale(a, b, tau0);
        let (tau, u, res) = newton(a, b, tau0, u0);
        best = best.min(res);
        if res > 1e-12 {
            continue;
        }
        let omega = u.sqrt().inv();
        let Ok(basis) = reduce_basis(&omega, &(omega * tau)) else {
            continue;
        };
        let lattice = SubgroupC::Lattice(basis);
        let (g2, g3) = g2g3(&lattice)?;
        let rel = ((g2 - a).norm_sqr() + (g3 - b).norm_sqr()).sqrt();
        if rel <= 1e-8 {
            return Ok(lattice);
        }
        best = best.min(rel);
    }
    Err(Error::NumericFailure {
        context: "inverting (g2, g3)",
        residual: best,
    })
}

/// The subgroup whose invariants `(g2, g3)` are `p`: a lattice off the
/// discriminant locus, `Z w` on it, `{0}` at the origin.
pub fn gamma(p: &SpherePoint) -> Result<SubgroupC> {
    let (a, b) = p.finite("gamma")?;
    if p.is_origin() {
        return Ok(SubgroupC::Trivial);
    }
    if on_sigma(a, b) {
        // g2 = C2 / w^4 and g3 = C3 / w^6 give w^2 = C3 a / (C2 b)
        let w2 = a * C3 / (b * C2);
        return SubgroupC::cyclic(w2.sqrt());
    }
    let y = ray_scale(a, b, 1.0);
    let l = gamma_unit(a * y, b * y.powf(1.5))?;
    // g2 scales like lambda^-4 under L -> lambda L
    Ok(l.mul_by(Complex64::new(y.powf(0.25), 0.0)))
}

/// `sqrt(coarea(gamma(pi(p))))`, infinite exactly on the discriminant locus.
pub fn phi_coarea(p: &SpherePoint) -> Result<ExtReal> {
    let (a, b) = p.nonzero("phi_coarea")?;
    if on_sigma(a, b) {
        return Ok(ExtReal::Infinity);
    }
    match coarea(&gamma(&pi_retract(p)?)?)? {
        ExtReal::Finite(c) => Ok(ExtReal::Finite(c.sqrt())),
        ExtReal::Infinity => Ok(ExtReal::Infinity),
    }
}

/// `h(p) = r / (1 + (1/phi - 1) r)` with `r = |p|`, on the closed unit ball.
pub fn h_map(p: &SpherePoint) -> Result<ExtReal> {
    let r = p.norm();
    if r > 1.0 + SPHERE_TOL {
        return Err(Error::param("h is defined on the closed unit ball"));
    }
    if r == 0.0 {
        return Ok(ExtReal::Finite(0.0));
    }
    let inv_phi = match phi_coarea(p)? {
        ExtReal::Finite(phi) => 1.0 / phi,
        ExtReal::Infinity => 0.0,
    };
    let den = 1.0 + (inv_phi - 1.0) * r.min(1.0);
    if inv_phi == 0.0 && (r - 1.0).abs() <= SPHERE_TOL {
        return Ok(ExtReal::Infinity);
    }
    Ok(ExtReal::Finite(r / den))
}

/// The chart `C^2 u {inf} -> closed subgroups of C`.
pub fn f_chart(p: &SpherePoint) -> Result<SubgroupC> {
    let (a, b) = match p {
        SpherePoint::Infinity => return Ok(SubgroupC::Full),
        SpherePoint::Finite { a, b } => (*a, *b),
    };
    let r = p.norm();
    if r == 0.0 {
        return Ok(SubgroupC::Trivial);
    }
    if r > 1.0 + SPHERE_TOL {
        return Ok(f_chart(&inversion_delta(p))?.dual());
    }
    let q = pi_retract(p)?;
    let base = gamma(&q)?;
    if on_sigma(a, b) {
        let SubgroupC::Cyclic { w } = base else {
            return Err(Error::Inconsistent("discriminant point without a cyclic preimage".into()));
        };
        if (r - 1.0).abs() <= SPHERE_TOL {
            return SubgroupC::line(w);
        }
        return SubgroupC::cyclic(w * ((1.0 - r) / r));
    }
    let phi = coarea(&base)?.as_f64().sqrt();
    let h = r / (1.0 + (1.0 / phi - 1.0) * r);
    Ok(base.mul_by(Complex64::new(1.0 / h, 0.0)))
}

/// Inverse of [`f_chart`].
pub fn f_inverse(c: &SubgroupC) -> Result<SpherePoint> {
    match c {
        SubgroupC::Trivial => Ok(SpherePoint::origin()),
        SubgroupC::Full => Ok(SpherePoint::Infinity),
        SubgroupC::Line { dir } => {
            let (a, b) = g2g3(&SubgroupC::Cyclic { w: *dir })?;
            pi_retract(&SpherePoint::new(a, b))
        }
        SubgroupC::Cyclic { .. } => {
            let (a, b) = g2g3(c)?;
            // gamma of the retraction is lambda Z w with lambda = h
            let h = ray_scale(a, b, 1.0).powf(-0.25);
            ray_point(&SpherePoint::new(a, b), h / (1.0 + h))
        }
        SubgroupC::Lattice(basis) if basis.coarea() >= 1.0 - 1e-12 => {
            let area = basis.coarea();
            let (a, b) = g2g3(c)?;
            let h = ray_scale(a, b, 1.0).powf(-0.25);
            let phi = h * area.sqrt();
            let r = h / (1.0 + h - h / phi);
            ray_point(&SpherePoint::new(a, b), r.min(1.0))
        }
        SubgroupC::Lattice(_) | SubgroupC::LineCyclic { .. } => Ok(inversion_delta(&f_inverse(&c.dual())?)),
    }
}
