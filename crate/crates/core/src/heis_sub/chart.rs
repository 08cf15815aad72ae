//! Coordinates on the abelian part, the centre-containing part and the
//! lattice bundle.

use num_complex::Complex64;

use super::{project_centred, LatticeN, SubgroupH};
use crate::complex::subgroup::right_half_plane;
use crate::complex::{LatticeBasis, SubgroupC};
use crate::error::{Error, Result};
use crate::sphere::{f_inverse, SpherePoint};

/// Position of a lattice or lattice preimage in the bundle over the space of
/// planar lattices whose fibre is a cone over the 2-torus.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaPoint {
    pub base: LatticeBasis,
    pub fiber: ThetaFiber,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ThetaFiber {
    /// Cone coordinate `j = 1/n` and the point of the index-one fibre.
    Level { n: u64, j: f64, torus: (f64, f64) },
    /// The cone point, `j = 0`, reached by preimages of lattices.
    ConePoint,
}

impl ThetaFiber {
    pub fn j(&self) -> f64 {
        match self {
            ThetaFiber::Level { j, .. } => *j,
            ThetaFiber::ConePoint => 0.0,
        }
    }
}

pub fn theta_bundle(c: &SubgroupH) -> Result<ThetaPoint> {
    match c {
        SubgroupH::Lattice(l) => Ok(ThetaPoint {
            base: l.basis.clone(),
            fiber: ThetaFiber::Level {
                n: l.n,
                j: 1.0 / l.n as f64,
                torus: l.torus_point(),
            },
        }),
        SubgroupH::PreimageLattice(b) => Ok(ThetaPoint {
            base: b.clone(),
            fiber: ThetaFiber::ConePoint,
        }),
        other => Err(Error::WrongStratum {
            op: "theta_bundle",
            stratum: other.stratum().stratum.tag(),
            reason: "only lattices and preimages of lattices",
        }),
    }
}

/// `J`: `1/n` on index-`n` lattices, `0` on preimages of lattices.
pub fn j_value(c: &SubgroupH) -> Result<f64> {
    Ok(theta_bundle(c)?.fiber.j())
}

/// Inverse of [`theta_bundle`] on the lattice levels.
pub fn lattice_from_theta(base: &LatticeBasis, n: u64, torus: (f64, f64)) -> Result<LatticeN<f64>> {
    // torus = 1/2 + n (r - 1/2) mod 1
    let nf = n as f64;
    let r = 0.5 + (torus.0 - 0.5) / nf;
    let rp = 0.5 + (torus.1 - 0.5) / nf;
    LatticeN::from_offsets(&base.w1, &base.w2, n, r, rp)
}

/// Coordinates of an abelian subgroup not inside the centre: the enclosing
/// plane `R z0 x R`, the subgroup in plane coordinates `(s z0, t) -> t + i s`
/// for both orientations of `z0`, and their sphere-chart images.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelianChart {
    pub inner: SubgroupC,
    /// Angle of `z0` in `(-pi/2, pi/2]`.
    pub phi: f64,
    pub q: SpherePoint,
    /// Chart point for the opposite orientation, angle `phi + pi`.
    pub q_opposite: SpherePoint,
}

/// The plane direction and plane-coordinate subgroup of an abelian,
/// non-central subgroup.
pub fn plane_coordinates(a: &SubgroupH) -> Result<(Complex64, SubgroupC)> {
    let refuse = |reason| Error::WrongStratum {
        op: "abelian_chart",
        stratum: a.stratum().stratum.tag(),
        reason,
    };
    if a.is_central() {
        return Err(refuse("subgroups of the centre lie in every plane through it"));
    }
    let lift = |z: Complex64, t: f64| {
        let z0 = right_half_plane(z / z.norm());
        let s = z.re * z0.re + z.im * z0.im;
        (z0, Complex64::new(t, s))
    };
    match a {
        SubgroupH::Cyclic { gen } => {
            let (z0, w) = lift(gen.z, gen.t);
            Ok((z0, SubgroupC::cyclic(w)?))
        }
        SubgroupH::OneParam { dir } => {
            let (z0, w) = lift(dir.z, dir.t);
            Ok((z0, SubgroupC::line(w)?))
        }
        SubgroupH::Plane { dir } => Ok((*dir, SubgroupC::Full)),
        SubgroupH::InPlane { dir, inner } => Ok((*dir, inner.clone())),
        _ => Err(refuse("subgroup is not abelian")),
    }
}

pub fn abelian_chart(a: &SubgroupH) -> Result<AbelianChart> {
    let (z0, inner) = plane_coordinates(a)?;
    let q = f_inverse(&inner)?;
    let q_opposite = f_inverse(&inner.conj())?;
    Ok(AbelianChart {
        phi: z0.arg(),
        inner,
        q,
        q_opposite,
    })
}

/// `rho_phi^-1`, where `rho_phi` rotates the pair of imaginary parts
/// `(Im a, Im b)` by the angle `phi`. The twisted coordinates of the two
/// orientations agree: `rho_twist(q, phi) = rho_twist(conj q, phi + pi)`.
pub fn rho_twist(q: &SpherePoint, phi: f64) -> SpherePoint {
    match q {
        SpherePoint::Infinity => SpherePoint::Infinity,
        SpherePoint::Finite { a, b } => {
            let (s, c) = (-phi).sin_cos();
            SpherePoint::Finite {
                a: Complex64::new(a.re, a.im * c - b.im * s),
                b: Complex64::new(b.re, a.im * s + b.im * c),
            }
        }
    }
}

/// Sphere-chart point of a subgroup containing the centre, through its
/// projection to `C`.
pub fn center_chart(c: &SubgroupH) -> Result<SpherePoint> {
    f_inverse(&project_centred(c)?)
}
