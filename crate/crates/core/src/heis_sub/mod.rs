//! Closed subgroups of the Heisenberg group `H = C x R`.
//!
//! Every closed subgroup is stored in a canonical form ([`SubgroupH`]), so
//! equality of forms is equality of subgroups up to rounding. Abelian
//! subgroups that are not inside the centre live in a unique plane
//! `R z0 x R`, identified with `C` by `(s z0, t) -> t + i s`.

mod chart;
mod families;
mod lattice;
mod sample;
mod walk;

use num_complex::Complex64;

use crate::complex::subgroup::right_half_plane as rhp;
use crate::complex::{reduce_basis, LatticeBasis, SubgroupC};
use crate::error::{Error, Result};
use crate::heis::{cross, mat_apply, HeisAut, HeisPoint};
use crate::scalar::Scalar;

pub use chart::*;
pub use families::*;
pub use lattice::*;
pub use sample::*;
pub use walk::*;

const TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum SubgroupH {
    Trivial,
    /// `<gen>`; `gen` and `gen^-1` are identified by a sign rule.
    Cyclic { gen: HeisPoint<f64> },
    /// `{(s z0, s t0)}` with `|z0| + |t0| = 1` and the same sign rule.
    OneParam { dir: HeisPoint<f64> },
    /// `R dir x R`, unit `dir` in the right half-plane.
    Plane { dir: Complex64 },
    /// Subgroup of the plane `R dir x R` given in plane coordinates; `inner`
    /// is a `LineCyclic` or a `Lattice`.
    InPlane { dir: Complex64, inner: SubgroupC },
    Lattice(LatticeN<f64>),
    /// `p^-1(L)` for a lattice `L` in `C`.
    PreimageLattice(LatticeBasis),
    /// `p^-1(R dir + Z step i dir)`.
    PreimageLineCyclic { dir: Complex64, step: f64 },
    Full,
}

/// Representative of `+-v` whose first coordinate above the tolerance is positive.
fn sign_rule(h: HeisPoint<f64>) -> HeisPoint<f64> {
    let scale = h.ell();
    for c in [h.z.re, h.z.im, h.t] {
        if c.abs() > 1e-12 * scale {
            return if c > 0.0 { h } else { h.inverse() };
        }
    }
    h
}

fn unit_dir(z: Complex64) -> Result<Complex64> {
    let n = z.norm();
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::param("plane direction must be a nonzero finite complex number"));
    }
    Ok(rhp(z / n))
}

fn is_real_dir(d: Complex64) -> bool {
    d.im.abs() <= TOL
}

impl SubgroupH {
    pub fn cyclic(gen: HeisPoint<f64>) -> Result<Self> {
        if !(gen.ell() > 0.0) || !gen.ell().is_finite() {
            return Err(Error::param("cyclic generator must be a finite non-identity element"));
        }
        Ok(SubgroupH::Cyclic { gen: sign_rule(gen) })
    }

    pub fn one_param(dir: HeisPoint<f64>) -> Result<Self> {
        let l = dir.ell();
        if !(l > 0.0) || !l.is_finite() {
            return Err(Error::param("one-parameter direction must be nonzero"));
        }
        Ok(SubgroupH::OneParam {
            dir: sign_rule(HeisPoint::new(dir.z / l, dir.t / l)),
        })
    }

    pub fn centre() -> Self {
        SubgroupH::OneParam {
            dir: HeisPoint::new(Complex64::new(0.0, 0.0), 1.0),
        }
    }

    pub fn plane(dir: Complex64) -> Result<Self> {
        Ok(SubgroupH::Plane { dir: unit_dir(dir)? })
    }

    /// The subgroup of the plane `R dir x R` with plane coordinates in `inner`.
    pub fn in_plane(dir: Complex64, inner: SubgroupC) -> Result<Self> {
        let n = dir.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::param("plane direction must be nonzero"));
        }
        let d = dir / n;
        let z0 = rhp(d);
        // the opposite direction conjugates plane coordinates
        let inner = if (z0 - d).norm() > 1e-12 { inner.conj() } else { inner };
        let lift = |w: Complex64| HeisPoint::new(z0 * w.im, w.re);
        match inner {
            SubgroupC::Trivial => Ok(SubgroupH::Trivial),
            SubgroupC::Cyclic { w } => Self::cyclic(lift(w)),
            SubgroupC::Line { dir } => Self::one_param(lift(dir)),
            SubgroupC::Full => Ok(SubgroupH::Plane { dir: z0 }),
            inner => Ok(SubgroupH::InPlane { dir: z0, inner }),
        }
    }

    pub fn lattice(l: LatticeN<f64>) -> Self {
        SubgroupH::Lattice(l)
    }

    /// `p^-1(c)`.
    pub fn preimage(c: &SubgroupC) -> Result<Self> {
        match c {
            SubgroupC::Trivial => Ok(Self::centre()),
            SubgroupC::Cyclic { w } => Self::in_plane(*w, SubgroupC::line_cyclic(Complex64::new(1.0, 0.0), w.norm())?),
            SubgroupC::Line { dir } => Self::plane(*dir),
            SubgroupC::LineCyclic { dir, step } => Ok(SubgroupH::PreimageLineCyclic {
                dir: *dir,
                step: *step,
            }),
            SubgroupC::Lattice(b) => Ok(SubgroupH::PreimageLattice(b.clone())),
            SubgroupC::Full => Ok(SubgroupH::Full),
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(
            self,
            SubgroupH::Trivial
                | SubgroupH::Cyclic { .. }
                | SubgroupH::OneParam { .. }
                | SubgroupH::Plane { .. }
                | SubgroupH::InPlane { .. }
        )
    }

    pub fn contains_centre(&self) -> bool {
        match self {
            SubgroupH::OneParam { dir } => dir.z.norm() <= TOL,
            SubgroupH::Plane { .. }
            | SubgroupH::PreimageLattice(_)
            | SubgroupH::PreimageLineCyclic { .. }
            | SubgroupH::Full => true,
            SubgroupH::InPlane {
                inner: SubgroupC::LineCyclic { dir, .. },
                ..
            } => is_real_dir(*dir),
            _ => false,
        }
    }

    /// Inside the centre (so the enclosing plane is not unique).
    pub fn is_central(&self) -> bool {
        match self {
            SubgroupH::Trivial => true,
            SubgroupH::Cyclic { gen } => gen.z.norm() <= TOL,
            SubgroupH::OneParam { dir } => dir.z.norm() <= TOL,
            _ => false,
        }
    }

    pub fn contains(&self, h: &HeisPoint<f64>, eps: f64) -> bool {
        membership_h(self, h, eps)
    }

    pub fn stratum(&self) -> StratumTag {
        classify_stratum(self)
    }

    /// Equality of canonical forms up to `tol`.
    pub fn approx_eq(&self, other: &SubgroupH, tol: f64) -> bool {
        use SubgroupH::*;
        match (self, other) {
            (Trivial, Trivial) | (Full, Full) => true,
            (Cyclic { gen: a }, Cyclic { gen: b }) => a.approx_eq(b, tol * a.ell().max(1.0)),
            (OneParam { dir: a }, OneParam { dir: b }) => a.approx_eq(b, tol),
            (Plane { dir: a }, Plane { dir: b }) => (a - b).norm() <= tol,
            (InPlane { dir: a, inner: x }, InPlane { dir: b, inner: y }) => {
                (a - b).norm() <= tol && x.approx_eq(y, tol)
            }
            (Lattice(a), Lattice(b)) => {
                a.n == b.n
                    && a.basis.same_lattice(&b.basis, tol)
                    && (a.basis.w1 - b.basis.w1).norm() <= tol * a.basis.w1.norm()
                    && (a.basis.w2 - b.basis.w2).norm() <= tol * a.basis.w2.norm()
                    && circle_close(a.r, b.r, 1.0 / a.n as f64, tol)
                    && circle_close(a.rp, b.rp, 1.0 / a.n as f64, tol)
            }
            (PreimageLattice(a), PreimageLattice(b)) => a.same_lattice(b, tol),
            (PreimageLineCyclic { dir: a, step: s }, PreimageLineCyclic { dir: b, step: t }) => {
                cross(a, b).abs() <= tol && (s - t).abs() <= tol * s.max(*t)
            }
            _ => false,
        }
    }
}

fn circle_close(a: f64, b: f64, period: f64, tol: f64) -> bool {
    let d = (a - b).rem_euclid(period);
    d.min(period - d) <= tol * period.max(1.0)
}

/// `h` lies within `eps` (in the gauge `delta`) of the subgroup.
pub fn membership_h(c: &SubgroupH, h: &HeisPoint<f64>, eps: f64) -> bool {
    use crate::metric::GaugePoint;
    let eps = eps + TOL * (1.0 + h.ell());
    match c {
        SubgroupH::Trivial => h.ell() <= eps,
        SubgroupH::Full => true,
        SubgroupH::Cyclic { gen } => {
            let k = if gen.z.norm() > TOL {
                (h.z.re * gen.z.re + h.z.im * gen.z.im) / gen.z.norm_sqr()
            } else {
                h.t / gen.t
            };
            let k = k.round();
            (-1..=1).any(|j| gen.pow(k as i64 + j).gauge_dist(h) <= eps)
        }
        SubgroupH::OneParam { dir } => {
            let nn = dir.z.norm_sqr() + dir.t * dir.t;
            let s = (h.z.re * dir.z.re + h.z.im * dir.z.im + h.t * dir.t) / nn;
            HeisPoint::new(dir.z * s, dir.t * s).gauge_dist(h) <= eps
        }
        SubgroupH::Plane { dir } => cross(dir, &h.z).abs() <= eps,
        SubgroupH::InPlane { dir, inner } => {
            let off = cross(dir, &h.z).abs();
            let s = h.z.re * dir.re + h.z.im * dir.im;
            off <= eps && inner.contains(Complex64::new(h.t, s), eps - off)
        }
        SubgroupH::Lattice(l) => {
            let (x, y) = l.basis.coords(&h.z);
            let (x, y) = (x.round(), y.round());
            let base = l.element(&x, &y, &0.0);
            let step = l.central_step();
            let s = ((h.t - base.t) / step).round();
            let e = l.element(&x, &y, &s);
            e.gauge_dist(h) <= eps
        }
        SubgroupH::PreimageLattice(b) => b.distance_to(h.z) <= eps,
        SubgroupH::PreimageLineCyclic { dir, step } => {
            SubgroupC::LineCyclic { dir: *dir, step: *step }.distance_to(h.z) <= eps
        }
    }
}

/// `p(C)` for non-abelian `C`. Projections of abelian subgroups need not be
/// closed (the plane group generated by `(x, 1)` and `(1, 1)` with `x`
/// irrational projects onto a dense subgroup of a line), so they are refused.
pub fn p_star(c: &SubgroupH) -> Result<SubgroupC> {
    match c {
        SubgroupH::Lattice(l) => Ok(SubgroupC::Lattice(l.basis.clone())),
        SubgroupH::PreimageLattice(b) => Ok(SubgroupC::Lattice(b.clone())),
        SubgroupH::PreimageLineCyclic { dir, step } => Ok(SubgroupC::LineCyclic {
            dir: *dir,
            step: *step,
        }),
        SubgroupH::Full => Ok(SubgroupC::Full),
        other => Err(Error::WrongStratum {
            op: "p_star",
            stratum: other.stratum().stratum.tag(),
            reason: "the projection of an abelian subgroup need not be closed",
        }),
    }
}

/// Projection of a subgroup that contains the centre (always closed).
pub fn project_centred(c: &SubgroupH) -> Result<SubgroupC> {
    if !c.contains_centre() {
        return Err(Error::WrongStratum {
            op: "project_centred",
            stratum: c.stratum().stratum.tag(),
            reason: "subgroup does not contain the centre",
        });
    }
    match c {
        SubgroupH::OneParam { .. } => Ok(SubgroupC::Trivial),
        SubgroupH::Plane { dir } => Ok(SubgroupC::Line { dir: *dir }),
        SubgroupH::InPlane {
            dir,
            inner: SubgroupC::LineCyclic { step, .. },
        } => SubgroupC::cyclic(dir * step),
        other => p_star(other),
    }
}

/// `<C, Z(H)> = p^-1(p(C))` for non-abelian `C`.
pub fn q_star(c: &SubgroupH) -> Result<SubgroupH> {
    if c.is_abelian() {
        return Err(Error::WrongStratum {
            op: "q_star",
            stratum: c.stratum().stratum.tag(),
            reason: "abelian subgroups collapse to a single class, not a subgroup",
        });
    }
    SubgroupH::preimage(&p_star(c)?)
}

/// A closed subgroup of the centre `{0} x R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CentralPart {
    Trivial,
    /// `{0} x c Z`, `c > 0`.
    Cyclic(f64),
    Line,
}

impl CentralPart {
    pub fn describe(&self) -> String {
        match self {
            CentralPart::Trivial => "{0}".into(),
            CentralPart::Cyclic(c) => format!("({c})Z"),
            CentralPart::Line => "R".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CenterData {
    /// `C` intersected with the centre.
    pub centre: CentralPart,
    /// The commutator subgroup `[C, C]`.
    pub commutator: CentralPart,
}

impl CenterData {
    /// Generator of `[C, C]`: the coarea of `p(C)` for non-abelian `C`
    /// (zero when `[C, C]` is the whole centre or trivial).
    pub fn commutator_generator(&self) -> f64 {
        match self.commutator {
            CentralPart::Cyclic(c) => c,
            _ => 0.0,
        }
    }
}

pub fn center_data(c: &SubgroupH) -> CenterData {
    let abelian = |centre| CenterData {
        centre,
        commutator: CentralPart::Trivial,
    };
    match c {
        SubgroupH::Trivial => abelian(CentralPart::Trivial),
        SubgroupH::Cyclic { gen } => abelian(if gen.z.norm() <= TOL {
            CentralPart::Cyclic(gen.t.abs())
        } else {
            CentralPart::Trivial
        }),
        SubgroupH::OneParam { dir } => abelian(if dir.z.norm() <= TOL {
            CentralPart::Line
        } else {
            CentralPart::Trivial
        }),
        SubgroupH::Plane { .. } => abelian(CentralPart::Line),
        SubgroupH::InPlane { inner, .. } => abelian(real_axis_part(inner)),
        SubgroupH::Lattice(l) => CenterData {
            centre: CentralPart::Cyclic(l.central_step()),
            commutator: CentralPart::Cyclic(l.coarea()),
        },
        SubgroupH::PreimageLattice(b) => CenterData {
            centre: CentralPart::Line,
            commutator: CentralPart::Cyclic(b.coarea()),
        },
        SubgroupH::PreimageLineCyclic { .. } | SubgroupH::Full => CenterData {
            centre: CentralPart::Line,
            commutator: CentralPart::Line,
        },
    }
}

/// Intersection of a plane-coordinate subgroup with the real (central) axis.
fn real_axis_part(inner: &SubgroupC) -> CentralPart {
    match inner {
        SubgroupC::LineCyclic { dir, step } => {
            if is_real_dir(*dir) {
                CentralPart::Line
            } else {
                // real x lies on line j when -x Im(dir) = j step
                CentralPart::Cyclic(step / dir.im.abs())
            }
        }
        SubgroupC::Lattice(b) => match f64::real_gcd(&b.w1.im, &b.w2.im) {
            Some(g) if g > TOL => {
                let m = (b.w2.im / g).round();
                let n = -(b.w1.im / g).round();
                CentralPart::Cyclic(b.combo(m, n).norm())
            }
            _ => CentralPart::Trivial,
        },
        SubgroupC::Cyclic { w } if w.im.abs() <= TOL => CentralPart::Cyclic(w.norm()),
        SubgroupC::Line { dir } if is_real_dir(*dir) => CentralPart::Line,
        SubgroupC::Full => CentralPart::Line,
        _ => CentralPart::Trivial,
    }
}

/// `n` of a lattice, recomputed from its data as coarea over the minimal
/// positive central element; the second value is the rounding residual.
pub fn index_n(c: &SubgroupH) -> Result<(u64, f64)> {
    let SubgroupH::Lattice(l) = c else {
        return Err(Error::WrongStratum {
            op: "index_n",
            stratum: c.stratum().stratum.tag(),
            reason: "index is defined for lattices only",
        });
    };
    let ratio = l.coarea() / l.central_step();
    let n = ratio.round();
    let residual = (ratio - n).abs();
    if residual > TOL * ratio.max(1.0) || n < 1.0 {
        return Err(Error::Inconsistent(format!("index ratio {ratio} is not an integer")));
    }
    Ok((n as u64, residual))
}

/// Real-linear action of `phi` on the plane coordinates `t + i s` of the
/// plane over `z0`; returns the new plane direction and the image map.
fn plane_map(phi: &HeisAut<f64>, z0: Complex64) -> (Complex64, impl Fn(Complex64) -> Complex64) {
    let gz = mat_apply(&phi.g, &z0);
    let len = gz.norm();
    let det = phi.det();
    let shear = cross(&phi.w, &gz);
    let map = move |p: Complex64| Complex64::new(det * p.re + p.im * shear, len * p.im);
    (gz, map)
}

/// Image of a subgroup under an automorphism, in canonical form.
pub fn apply_aut_subgroup(phi: &HeisAut<f64>, c: &SubgroupH) -> Result<SubgroupH> {
    let g = |z: Complex64| mat_apply(&phi.g, &z);
    match c {
        SubgroupH::Trivial => Ok(SubgroupH::Trivial),
        SubgroupH::Full => Ok(SubgroupH::Full),
        SubgroupH::Cyclic { gen } => SubgroupH::cyclic(phi.apply(gen)),
        SubgroupH::OneParam { dir } => SubgroupH::one_param(phi.apply(dir)),
        SubgroupH::Plane { dir } => SubgroupH::plane(g(*dir)),
        SubgroupH::InPlane { dir, inner } => {
            let (gz, m) = plane_map(phi, *dir);
            let image = match inner {
                SubgroupC::LineCyclic { dir: d, step } => {
                    SubgroupC::line_plus(m(*d), m(d * Complex64::i() * step))?
                }
                SubgroupC::Lattice(b) => SubgroupC::lattice(m(b.w1), m(b.w2))?,
                other => {
                    return Err(Error::Inconsistent(format!("non-canonical plane subgroup {other:?}")))
                }
            };
            SubgroupH::in_plane(gz, image)
        }
        SubgroupH::Lattice(l) => Ok(SubgroupH::Lattice(apply_aut_lattice(phi, l)?)),
        SubgroupH::PreimageLattice(b) => Ok(SubgroupH::PreimageLattice(reduce_basis(&g(b.w1), &g(b.w2))?)),
        SubgroupH::PreimageLineCyclic { dir, step } => {
            let image = SubgroupC::line_plus(g(*dir), g(dir * Complex64::i() * step))?;
            SubgroupH::preimage(&image)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stratum {
    Trivial,
    R,
    Z,
    R2,
    RZ,
    Z2,
    Ln(u64),
    PreimageRZ,
    LInfinity,
    Full,
}

impl Stratum {
    /// Tag without the index of lattice strata.
    pub fn tag(&self) -> &'static str {
        match self {
            Stratum::Trivial => "trivial",
            Stratum::R => "R",
            Stratum::Z => "Z",
            Stratum::R2 => "R2",
            Stratum::RZ => "RZ",
            Stratum::Z2 => "Z2",
            Stratum::Ln(_) => "Ln",
            Stratum::PreimageRZ => "preimage-RZ",
            Stratum::LInfinity => "L-infinity",
            Stratum::Full => "full",
        }
    }

    pub fn name(&self) -> String {
        match self {
            Stratum::Ln(n) => format!("L{n}"),
            other => other.tag().into(),
        }
    }
}

/// Stratum plus the region flags of the centre-containing part: `D-` is
/// the set of abelian subgroups containing the centre, `D+` the closed disc
/// of those whose projection is a line, a line plus a cyclic group, or `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StratumTag {
    pub stratum: Stratum,
    pub contains_centre: bool,
    pub in_d_minus: bool,
    pub in_d_plus: bool,
}

impl StratumTag {
    pub fn name(&self) -> String {
        self.stratum.name()
    }
}

pub fn classify_stratum(c: &SubgroupH) -> StratumTag {
    let stratum = match c {
        SubgroupH::Trivial => Stratum::Trivial,
        SubgroupH::Cyclic { .. } => Stratum::Z,
        SubgroupH::OneParam { .. } => Stratum::R,
        SubgroupH::Plane { .. } => Stratum::R2,
        SubgroupH::InPlane {
            inner: SubgroupC::LineCyclic { .. },
            ..
        } => Stratum::RZ,
        SubgroupH::InPlane { .. } => Stratum::Z2,
        SubgroupH::Lattice(l) => Stratum::Ln(l.n),
        SubgroupH::PreimageLineCyclic { .. } => Stratum::PreimageRZ,
        SubgroupH::PreimageLattice(_) => Stratum::LInfinity,
        SubgroupH::Full => Stratum::Full,
    };
    let contains_centre = c.contains_centre();
    StratumTag {
        stratum,
        contains_centre,
        in_d_minus: contains_centre && c.is_abelian(),
        in_d_plus: matches!(
            stratum,
            Stratum::R2 | Stratum::PreimageRZ | Stratum::Full
        ),
    }
}

/// Automorphism orbit of a subgroup.
#[derive(Clone, Debug, PartialEq)]
pub enum OrbitLabel {
    Identity,
    CentralR,
    NonCentralR,
    CentralZ,
    NonCentralZ,
    Plane,
    /// Identity component equal to the centre (2-dimensional orbit).
    RZCentralComponent,
    RZOther,
    /// One of uncountably many orbits; `plane_angle` is the enclosing plane's
    /// direction in `[0, pi)`.
    Z2Continuum { plane_angle: f64 },
    LatticeIndex(u64),
    PreimageRZ,
    LInfinity,
    Full,
}

impl OrbitLabel {
    pub fn describe(&self) -> String {
        match self {
            OrbitLabel::Identity => "identity".into(),
            OrbitLabel::CentralR => "central R".into(),
            OrbitLabel::NonCentralR => "non-central R".into(),
            OrbitLabel::CentralZ => "central Z".into(),
            OrbitLabel::NonCentralZ => "non-central Z".into(),
            OrbitLabel::Plane => "plane".into(),
            OrbitLabel::RZCentralComponent => "RZ with central identity component".into(),
            OrbitLabel::RZOther => "RZ with non-central identity component".into(),
            OrbitLabel::Z2Continuum { .. } => "continuum family".into(),
            OrbitLabel::LatticeIndex(n) => format!("lattices of index {n}"),
            OrbitLabel::PreimageRZ => "preimage of R+Z".into(),
            OrbitLabel::LInfinity => "preimage of a lattice".into(),
            OrbitLabel::Full => "full".into(),
        }
    }
}

pub fn classify_orbit(c: &SubgroupH) -> OrbitLabel {
    match c {
        SubgroupH::Trivial => OrbitLabel::Identity,
        SubgroupH::OneParam { .. } if c.is_central() => OrbitLabel::CentralR,
        SubgroupH::OneParam { .. } => OrbitLabel::NonCentralR,
        SubgroupH::Cyclic { .. } if c.is_central() => OrbitLabel::CentralZ,
        SubgroupH::Cyclic { .. } => OrbitLabel::NonCentralZ,
        SubgroupH::Plane { .. } => OrbitLabel::Plane,
        SubgroupH::InPlane {
            inner: SubgroupC::LineCyclic { dir, .. },
            ..
        } => {
            if is_real_dir(*dir) {
                OrbitLabel::RZCentralComponent
            } else {
                OrbitLabel::RZOther
            }
        }
        SubgroupH::InPlane { dir, .. } => OrbitLabel::Z2Continuum {
            plane_angle: dir.arg().rem_euclid(std::f64::consts::PI),
        },
        SubgroupH::Lattice(l) => OrbitLabel::LatticeIndex(l.n),
        SubgroupH::PreimageLineCyclic { .. } => OrbitLabel::PreimageRZ,
        SubgroupH::PreimageLattice(_) => OrbitLabel::LInfinity,
        SubgroupH::Full => OrbitLabel::Full,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heis::mat_identity;

    fn hp(x: f64, y: f64, t: f64) -> HeisPoint<f64> {
        HeisPoint::new(Complex64::new(x, y), t)
    }

    #[test]
    fn cyclic_sign_rule() {
        let a = SubgroupH::cyclic(hp(-1.0, 2.0, 3.0)).unwrap();
        let b = SubgroupH::cyclic(hp(1.0, -2.0, -3.0)).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(&hp(-3.0, 6.0, 9.0), 0.0));
        assert!(!a.contains(&hp(-3.0, 6.0, 9.5), 0.1));
    }

    #[test]
    fn in_plane_normalises_degenerate_inner_groups() {
        let i = Complex64::i();
        assert_eq!(SubgroupH::in_plane(i, SubgroupC::Full).unwrap(), SubgroupH::plane(i).unwrap());
        assert_eq!(
            SubgroupH::in_plane(1.0.into(), SubgroupC::line(1.0.into()).unwrap()).unwrap(),
            SubgroupH::centre()
        );
        assert_eq!(
            SubgroupH::in_plane(1.0.into(), SubgroupC::cyclic(Complex64::new(0.0, 2.0)).unwrap()).unwrap(),
            SubgroupH::cyclic(hp(2.0, 0.0, 0.0)).unwrap()
        );
        let inner = SubgroupC::lattice(Complex64::new(1.0, 0.3), Complex64::new(0.2, 1.0)).unwrap();
        let up = SubgroupH::in_plane(Complex64::new(0.0, 1.0), inner.clone()).unwrap();
        let down = SubgroupH::in_plane(Complex64::new(0.0, -1.0), inner.conj()).unwrap();
        assert!(up.approx_eq(&down, 1e-12));
    }

    #[test]
    fn projections_and_centre() {
        let l = SubgroupH::Lattice(LatticeN::standard(3).unwrap());
        assert_eq!(p_star(&l).unwrap(), SubgroupC::gaussian_integers());
        assert_eq!(p_star(&SubgroupH::Full).unwrap(), SubgroupC::Full);
        let irrational = SubgroupH::in_plane(
            1.0.into(),
            SubgroupC::lattice(Complex64::new(1.0, 2f64.sqrt()), Complex64::new(1.0, 1.0)).unwrap(),
        )
        .unwrap();
        assert!(matches!(p_star(&irrational), Err(Error::WrongStratum { .. })));
        let cd = center_data(&l);
        assert_eq!(cd.centre, CentralPart::Cyclic(1.0 / 3.0));
        assert_eq!(cd.commutator_generator(), 1.0);
        let pre = SubgroupH::PreimageLattice(LatticeBasis {
            w1: Complex64::new(2.0, 0.0),
            w2: Complex64::new(0.0, 1.0),
        });
        assert_eq!(center_data(&pre).centre, CentralPart::Line);
        assert_eq!(center_data(&pre).commutator_generator(), 2.0);
        let cyc = SubgroupH::cyclic(hp(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(center_data(&cyc).centre, CentralPart::Trivial);
        assert_eq!(center_data(&cyc).commutator_generator(), 0.0);
        assert_eq!(q_star(&l).unwrap(), SubgroupH::PreimageLattice(LatticeBasis {
            w1: 1.0.into(),
            w2: Complex64::i(),
        }));
        assert_eq!(q_star(&pre).unwrap(), pre);
        assert_eq!(q_star(&SubgroupH::Full).unwrap(), SubgroupH::Full);
    }

    #[test]
    fn plane_centre_intersections() {
        let lc = SubgroupH::in_plane(1.0.into(), SubgroupC::line_cyclic(Complex64::new(1.0, 1.0), 1.0).unwrap()).unwrap();
        // line through direction (1+i)/sqrt2, lines spaced 1 apart meet the real axis every sqrt2
        match center_data(&lc).centre {
            CentralPart::Cyclic(c) => assert!((c - 2f64.sqrt()).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let lat = SubgroupH::in_plane(1.0.into(), SubgroupC::lattice(Complex64::new(1.0, 1.0), Complex64::new(0.0, 2.0)).unwrap()).unwrap();
        match center_data(&lat).centre {
            // m (1+i) + n 2i is real iff m = -2n; primitive element 2
            CentralPart::Cyclic(c) => assert!((c - 2.0).abs() < 1e-12, "{c}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn automorphism_examples() {
        let id = HeisAut::identity();
        let l = SubgroupH::Lattice(LatticeN::shifted(3).unwrap());
        assert_eq!(apply_aut_subgroup(&id, &l).unwrap(), l);
        let rot = HeisAut::linear([[0.0, -1.0], [1.0, 0.0]]);
        assert_eq!(
            apply_aut_subgroup(&rot, &SubgroupH::plane(1.0.into()).unwrap()).unwrap(),
            SubgroupH::plane(Complex64::i()).unwrap()
        );
        let img = apply_aut_subgroup(&HeisAut::dilation(2.0), &SubgroupH::Lattice(LatticeN::standard(1).unwrap())).unwrap();
        let SubgroupH::Lattice(m) = &img else { panic!() };
        assert!((m.coarea() - 4.0).abs() < 1e-12);
        assert_eq!(index_n(&img).unwrap().0, 1);
        let _ = mat_identity::<f64>();
    }

    #[test]
    fn pointwise_pushforward_of_a_plane_subgroup() {
        let c = SubgroupH::in_plane(
            Complex64::new(1.0, 2.0),
            SubgroupC::lattice(Complex64::new(1.0, 0.5), Complex64::new(-0.3, 1.2)).unwrap(),
        )
        .unwrap();
        let phi = HeisAut::new(Complex64::new(0.4, -0.7), [[1.5, 0.2], [-0.3, 0.9]]);
        let img = apply_aut_subgroup(&phi, &c).unwrap();
        let SubgroupH::InPlane { dir, inner: SubgroupC::Lattice(b) } = &c else { panic!() };
        for (m, n) in [(1.0, 0.0), (0.0, 1.0), (2.0, -3.0)] {
            let w = b.combo(m, n);
            let h = HeisPoint::new(dir * w.im, w.re);
            assert!(img.contains(&phi.apply(&h), 1e-9));
        }
        assert!(!img.contains(&phi.apply(&hp(0.0, 0.0, 0.5)), 1e-6));
    }

    #[test]
    fn orbits() {
        assert_eq!(classify_orbit(&SubgroupH::centre()), OrbitLabel::CentralR);
        assert_eq!(classify_orbit(&SubgroupH::cyclic(hp(0.0, 0.0, 5.0)).unwrap()), OrbitLabel::CentralZ);
        let z2 = SubgroupH::in_plane(1.0.into(), SubgroupC::gaussian_integers()).unwrap();
        assert_eq!(classify_stratum(&z2).stratum, Stratum::Z2);
        assert!(matches!(classify_orbit(&z2), OrbitLabel::Z2Continuum { .. }));
        let vertical = SubgroupH::preimage(&SubgroupC::cyclic(1.0.into()).unwrap()).unwrap();
        let tag = classify_stratum(&vertical);
        assert!(tag.contains_centre && tag.in_d_minus && !tag.in_d_plus);
        assert_eq!(classify_orbit(&vertical), OrbitLabel::RZCentralComponent);
    }
}
