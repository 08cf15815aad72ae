//! Finite traces of subgroups of `H` on gauge balls, and the distances
//! between subgroups built from them.

use num_complex::Complex64;

use super::SubgroupH;
use crate::complex::SubgroupC;
use crate::error::{Error, Result};
use crate::heis::HeisPoint;
use crate::metric::{ball_distance, AmbientSpace, MetricConfig};

/// Evenly spaced points of `[-half, half]` with gap at most `spacing`.
fn segment(half: f64, spacing: f64) -> impl Iterator<Item = f64> {
    let n = if half > 0.0 { (2.0 * half / spacing).ceil().max(1.0) as i64 } else { 0 };
    let step = if n > 0 { 2.0 * half / n as f64 } else { 0.0 };
    (0..=n).map(move |k| -half + k as f64 * step)
}

/// `C` intersected with the ball `|z| + |t| <= r`. Discrete strata are
/// enumerated exactly; continuous directions are sampled with gaps at most
/// `spacing`.
pub fn sample_to_radius(c: &SubgroupH, r: f64, spacing: f64) -> Result<Vec<HeisPoint<f64>>> {
    if !(r > 0.0) || !(spacing > 0.0) {
        return Err(Error::param("radius and spacing must be positive"));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut out = Vec::new();
    // vertical segments over a set of projected points
    let fibres = |zs: Vec<Complex64>, out: &mut Vec<HeisPoint<f64>>| {
        for z in zs {
            let rem = r - z.norm();
            if rem >= 0.0 {
                out.extend(segment(rem, spacing).map(|t| HeisPoint::new(z, t)));
            }
        }
    };
    match c {
        SubgroupH::Trivial => out.push(HeisPoint::identity()),
        SubgroupH::Cyclic { gen } => {
            let k = (r / gen.ell()).floor() as i64;
            out.extend((-k..=k).map(|j| gen.pow(j)));
        }
        SubgroupH::OneParam { dir } => {
            out.extend(segment(r, spacing).map(|s| HeisPoint::new(dir.z * s, dir.t * s)));
        }
        SubgroupH::Plane { dir } => {
            fibres(segment(r, spacing).map(|s| dir * s).collect(), &mut out);
        }
        SubgroupH::InPlane { dir, inner } => {
            out.extend(
                inner
                    .sample_ball(r, spacing)?
                    .into_iter()
                    .map(|w| HeisPoint::new(dir * w.im, w.re))
                    .filter(|h| h.ell() <= r),
            );
        }
        SubgroupH::Lattice(l) => {
            let a = l.coarea();
            let step = l.central_step();
            let mx = (r * l.basis.w2.norm() / a).floor() as i64 + 1;
            let my = (r * l.basis.w1.norm() / a).floor() as i64 + 1;
            for x in -mx..=mx {
                for y in -my..=my {
                    let base = l.element(&(x as f64), &(y as f64), &0.0);
                    let rem = r - base.z.norm();
                    if rem < 0.0 {
                        continue;
                    }
                    let lo = ((-rem - base.t) / step).ceil() as i64;
                    let hi = ((rem - base.t) / step).floor() as i64;
                    out.extend((lo..=hi).map(|s| HeisPoint::new(base.z, base.t + s as f64 * step)));
                }
            }
        }
        SubgroupH::PreimageLattice(b) => {
            fibres(SubgroupC::Lattice(b.clone()).sample_ball(r, spacing)?, &mut out);
        }
        SubgroupH::PreimageLineCyclic { dir, step } => {
            let p = SubgroupC::LineCyclic { dir: *dir, step: *step };
            fibres(p.sample_ball(r, spacing)?, &mut out);
        }
        SubgroupH::Full => {
            fibres(SubgroupC::Full.sample_ball(r, spacing)?, &mut out);
        }
    }
    if out.is_empty() {
        out.push(HeisPoint::new(zero, 0.0));
    }
    Ok(out)
}

/// Trace of `C` on the closed ball of radius `cfg.radius`.
pub fn sample_ball_h(c: &SubgroupH, cfg: &MetricConfig) -> Result<Vec<HeisPoint<f64>>> {
    cfg.validate()?;
    sample_to_radius(c, cfg.radius, cfg.spacing)
}

/// Trace extended by the sampling margin, for use in distance queries.
pub fn sample_for_distance(c: &SubgroupH, cfg: &MetricConfig) -> Result<Vec<HeisPoint<f64>>> {
    cfg.validate()?;
    sample_to_radius(c, cfg.sample_radius(AmbientSpace::Heisenberg), cfg.spacing)
}

/// Ball distance between two subgroups of `H`.
pub fn distance_h(a: &SubgroupH, b: &SubgroupH, cfg: &MetricConfig) -> Result<f64> {
    ball_distance(&sample_for_distance(a, cfg)?, &sample_for_distance(b, cfg)?, cfg)
}

/// Ball distance between two subgroups of `C`.
pub fn distance_c(a: &SubgroupC, b: &SubgroupC, cfg: &MetricConfig) -> Result<f64> {
    cfg.validate()?;
    let r = cfg.sample_radius(AmbientSpace::ComplexPlane);
    ball_distance(&a.sample_ball(r, cfg.spacing)?, &b.sample_ball(r, cfg.spacing)?, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heis_sub::LatticeN;

    #[test]
    fn trivial_and_standard_lattice() {
        let cfg = MetricConfig::new(1.2, 0.1, 0.1).unwrap();
        assert_eq!(sample_ball_h(&SubgroupH::Trivial, &cfg).unwrap(), vec![HeisPoint::identity()]);
        let l = SubgroupH::Lattice(LatticeN::standard(1).unwrap());
        let mut pts: Vec<_> = sample_ball_h(&l, &cfg)
            .unwrap()
            .into_iter()
            .map(|h| (h.z.re.round() as i64, h.z.im.round() as i64, h.t.round() as i64))
            .collect();
        pts.sort();
        // brute force over words in the generators (1,0), (i,0), (0,1) of length <= 4
        let gens = [
            HeisPoint::new(Complex64::new(1.0, 0.0), 0.0),
            HeisPoint::new(Complex64::new(0.0, 1.0), 0.0),
            HeisPoint::new(Complex64::new(0.0, 0.0), 1.0),
        ];
        let mut words = vec![HeisPoint::<f64>::identity()];
        for _ in 0..4 {
            let mut next = words.clone();
            for w in &words {
                for g in &gens {
                    next.push(w.mul(g));
                    next.push(w.mul(&g.inverse()));
                }
            }
            words = next;
        }
        let mut expect: Vec<_> = words
            .into_iter()
            .filter(|h| h.ell() <= 1.2)
            .map(|h| (h.z.re.round() as i64, h.z.im.round() as i64, h.t.round() as i64))
            .collect();
        expect.sort();
        expect.dedup();
        assert_eq!(pts, expect);
        assert_eq!(pts.len(), 7);
    }

    #[test]
    fn preimage_of_gaussian_integers() {
        let cfg = MetricConfig::new(1.0, 0.1, 0.1).unwrap();
        let c = SubgroupH::PreimageLattice(crate::complex::LatticeBasis {
            w1: Complex64::new(1.0, 0.0),
            w2: Complex64::new(0.0, 1.0),
        });
        let pts = sample_ball_h(&c, &cfg).unwrap();
        assert!(pts.iter().all(|h| h.ell() <= 1.0 + 1e-12));
        let over_origin = pts.iter().filter(|h| h.z.norm() == 0.0).count();
        assert_eq!(over_origin, 21);
        assert_eq!(pts.len(), 21 + 4);
    }
}
