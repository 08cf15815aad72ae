//! Explicit sequences of subgroups with known limits, and trace reports
//! built from them.

use num_complex::Complex64;

use super::{apply_aut_subgroup, distance_c, distance_h, j_value, lattice_from_coords, lattice_from_generators, SubgroupH};
use crate::complex::{LatticeBasis, SubgroupC};
use crate::error::Result;
use crate::heis::{HeisAut, HeisPoint};
use crate::metric::MetricConfig;

/// `Z^2` inside the plane `R x R = {(x, t)}`.
pub fn integer_plane_lattice() -> SubgroupH {
    SubgroupH::in_plane(1.0.into(), SubgroupC::gaussian_integers()).expect("unit direction")
}

/// The plane lattice `<(1, 0), (-1/k, 1)>` of `R x R`; its centre part is `Z k`.
pub fn sheared_plane_lattice(k: u64) -> Result<SubgroupH> {
    // plane coordinates t + i x
    let inner = SubgroupC::lattice(Complex64::new(0.0, 1.0), Complex64::new(1.0, -1.0 / k as f64))?;
    SubgroupH::in_plane(1.0.into(), inner)
}

/// An index-`n` lattice of `H` whose intersection with `R x R` is
/// [`sheared_plane_lattice`]`(k)`: generated by `(1/k, -1)`, `(0, k)` and
/// `(i n k^2, 0)`. Converges to `Z^2` as `k` grows while its projection
/// converges to the real line.
pub fn sheared_lattice(k: u64, n: u64) -> Result<SubgroupH> {
    let kf = k as f64;
    let a = HeisPoint::new(Complex64::new(1.0 / kf, 0.0), -1.0);
    let b = HeisPoint::new(Complex64::new(0.0, n as f64 * kf * kf), 0.0);
    Ok(SubgroupH::Lattice(lattice_from_generators(&a, &b, Some(&kf))?))
}

/// `<1, i (1 + 1/k)>`, converging to the Gaussian integers.
pub fn stretched_gaussian(k: u64) -> LatticeBasis {
    LatticeBasis {
        w1: Complex64::new(1.0, 0.0),
        w2: Complex64::new(0.0, 1.0 + 1.0 / k as f64),
    }
}

/// Index-`k` lattice over [`stretched_gaussian`]`(k)` with zero offsets;
/// converges to the preimage of the Gaussian integers.
pub fn deepening_lattice(k: u64) -> Result<SubgroupH> {
    Ok(SubgroupH::Lattice(lattice_from_coords(&stretched_gaussian(k), k, 0.0, 0.0)?))
}

/// Image under `(z, t) -> (s z, s^2 t)`.
pub fn dilated(c: &SubgroupH, s: f64) -> Result<SubgroupH> {
    apply_aut_subgroup(&HeisAut::dilation(s), c)
}

/// Lattices and the lattice preimage found inside one basic neighbourhood of
/// a lattice preimage, with their `J` values.
#[derive(Clone, Debug, PartialEq)]
pub struct DisconnectionCertificate {
    pub radius: f64,
    pub eps: f64,
    /// `eps / (R + 2)`.
    pub eta: f64,
    /// `ceil(2 coarea / eta)`; lattices of index above this are close.
    pub min_index: u64,
    /// `(J, distance)` of every member within `eps`.
    pub members: Vec<(f64, f64)>,
    pub distinct_j: usize,
    pub certified: bool,
}

/// Samples the neighbourhood of `p^-1(base)` of radius `cfg.radius` and
/// threshold `cfg.eps`: `J` is locally constant on connected sets, so two
/// distinct `J` values inside the neighbourhood show it is disconnected.
pub fn disconnection_certificate(base: &LatticeBasis, cfg: &MetricConfig) -> Result<DisconnectionCertificate> {
    cfg.validate()?;
    let centre = SubgroupH::PreimageLattice(base.clone());
    let eta = cfg.eps / (cfg.radius + 2.0);
    let min_index = (2.0 * base.coarea() / eta).ceil() as u64;
    let mut candidates = vec![centre.clone()];
    for n in [min_index + 1, 2 * min_index, 4 * min_index] {
        candidates.push(SubgroupH::Lattice(lattice_from_coords(base, n, 0.0, 0.0)?));
    }
    let mut members = Vec::new();
    for c in &candidates {
        let d = distance_h(c, &centre, cfg)?;
        if d < cfg.eps {
            members.push((j_value(c)?, d));
        }
    }
    let mut js: Vec<f64> = members.iter().map(|m| m.0).collect();
    js.sort_by(f64::total_cmp);
    js.dedup();
    Ok(DisconnectionCertificate {
        radius: cfg.radius,
        eps: cfg.eps,
        eta,
        min_index,
        distinct_j: js.len(),
        certified: js.len() >= 2,
        members,
    })
}

/// One row of the two traces that rule out a continuous extension of the
/// projection to abelian subgroups.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionTraceRow {
    pub parameter: f64,
    /// Distance in `H` to the family's limit.
    pub distance_to_limit: f64,
    /// Distance in `C` between the projection and the real line.
    pub projection_to_line: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionTraces {
    /// [`sheared_lattice`]`(k, n)` against `Z^2`; projections approach `R`.
    pub lattices: Vec<ExtensionTraceRow>,
    /// Dilations of `Z^2` by `s` against `{e}`; the real line is carried to
    /// itself by every dilation.
    pub dilations: Vec<ExtensionTraceRow>,
}

pub fn extension_traces(ks: &[u64], n: u64, ss: &[f64], cfg: &MetricConfig) -> Result<ExtensionTraces> {
    let line = SubgroupC::line(1.0.into())?;
    let z2 = integer_plane_lattice();
    let mut lattices = Vec::new();
    for &k in ks {
        let c = sheared_lattice(k, n)?;
        lattices.push(ExtensionTraceRow {
            parameter: k as f64,
            distance_to_limit: distance_h(&c, &z2, cfg)?,
            projection_to_line: distance_c(&super::p_star(&c)?, &line, cfg)?,
        });
    }
    let mut dilations = Vec::new();
    for &s in ss {
        let c = dilated(&z2, s)?;
        dilations.push(ExtensionTraceRow {
            parameter: s,
            distance_to_limit: distance_h(&c, &SubgroupH::Trivial, cfg)?,
            projection_to_line: distance_c(&line.mul_by(Complex64::new(s, 0.0)), &line, cfg)?,
        });
    }
    Ok(ExtensionTraces { lattices, dilations })
}
