use num_complex::Complex64;

use super::reduce::{reduce_basis, LatticeBasis};
use crate::error::{Error, Result};
use crate::heis::cross;

/// Closed subgroup of `C` in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub enum SubgroupC {
    Trivial,
    /// `Z w` with `w` in the right half-plane.
    Cyclic { w: Complex64 },
    /// `R dir`, unit `dir` in the right half-plane.
    Line { dir: Complex64 },
    /// `R dir + Z (step * i * dir)`; `step` is the distance between adjacent lines.
    LineCyclic { dir: Complex64, step: f64 },
    Lattice(LatticeBasis),
    Full,
}

/// Representative of `+-z` with `Re z > 0`, or `Re z = 0` and `Im z > 0`.
pub fn right_half_plane(z: Complex64) -> Complex64 {
    let tol = 1e-15 * z.norm();
    if z.re > tol || (z.re.abs() <= tol && z.im > 0.0) {
        z
    } else {
        -z
    }
}

fn unit(z: Complex64) -> Result<Complex64> {
    let n = z.norm();
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::param("direction must be a nonzero finite complex number"));
    }
    Ok(right_half_plane(z / n))
}

impl SubgroupC {
    pub fn cyclic(w: Complex64) -> Result<Self> {
        if !(w.norm() > 0.0) || !w.norm().is_finite() {
            return Err(Error::param("cyclic generator must be nonzero"));
        }
        Ok(SubgroupC::Cyclic {
            w: right_half_plane(w),
        })
    }

    pub fn line(dir: Complex64) -> Result<Self> {
        Ok(SubgroupC::Line { dir: unit(dir)? })
    }

    pub fn line_cyclic(dir: Complex64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::param("line-cyclic step must be positive"));
        }
        Ok(SubgroupC::LineCyclic {
            dir: unit(dir)?,
            step,
        })
    }

    /// `R dir + Z v` for any `v` off the line.
    pub fn line_plus(dir: Complex64, v: Complex64) -> Result<Self> {
        let d = unit(dir)?;
        let step = cross(&d, &v).abs();
        Self::line_cyclic(d, step)
    }

    pub fn lattice(u: Complex64, v: Complex64) -> Result<Self> {
        Ok(SubgroupC::Lattice(reduce_basis(&u, &v)?))
    }

    pub fn gaussian_integers() -> Self {
        SubgroupC::Lattice(LatticeBasis {
            w1: Complex64::new(1.0, 0.0),
            w2: Complex64::new(0.0, 1.0),
        })
    }

    pub fn hexagonal() -> Self {
        SubgroupC::Lattice(LatticeBasis {
            w1: Complex64::new(1.0, 0.0),
            w2: Complex64::new(0.5, 3f64.sqrt() / 2.0),
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            SubgroupC::Trivial => "TrivialC",
            SubgroupC::Cyclic { .. } => "CyclicC",
            SubgroupC::Line { .. } => "LineC",
            SubgroupC::LineCyclic { .. } => "LineCyclicC",
            SubgroupC::Lattice(_) => "LatticeC",
            SubgroupC::Full => "FullC",
        }
    }

    pub fn is_lattice(&self) -> bool {
        matches!(self, SubgroupC::Lattice(_))
    }

    pub fn contains(&self, z: Complex64, eps: f64) -> bool {
        self.distance_to(z) <= eps
    }

    /// Euclidean distance from `z` to the subgroup.
    pub fn distance_to(&self, z: Complex64) -> f64 {
        match self {
            SubgroupC::Trivial => z.norm(),
            SubgroupC::Cyclic { w } => {
                let k = ((z / w).re).round();
                (z - w * k).norm()
            }
            SubgroupC::Line { dir } => cross(dir, &z).abs(),
            SubgroupC::LineCyclic { dir, step } => {
                let off = cross(dir, &z);
                (off - (off / step).round() * step).abs()
            }
            SubgroupC::Lattice(b) => b.distance_to(z),
            SubgroupC::Full => 0.0,
        }
    }

    /// Points of the subgroup in the closed disc of radius `r`; every point of
    /// the intersection is within `spacing` of one of them.
    pub fn sample_ball(&self, r: f64, spacing: f64) -> Result<Vec<Complex64>> {
        if !(r > 0.0) || !(spacing > 0.0) {
            return Err(Error::param("radius and spacing must be positive"));
        }
        let mut out = Vec::new();
        match self {
            SubgroupC::Trivial => out.push(Complex64::new(0.0, 0.0)),
            SubgroupC::Cyclic { w } => {
                let k = (r / w.norm()).floor() as i64;
                out.extend((-k..=k).map(|j| w * j as f64));
            }
            SubgroupC::Line { dir } => {
                out.extend(crate::aff::grid(r, spacing).map(|s| dir * s));
            }
            SubgroupC::LineCyclic { dir, step } => {
                let k = (r / step).floor() as i64;
                let normal = dir * Complex64::i();
                for j in -k..=k {
                    let off = j as f64 * step;
                    let half = (r * r - off * off).max(0.0).sqrt();
                    out.extend(segment(half, spacing).map(|s| dir * s + normal * off));
                }
            }
            SubgroupC::Lattice(b) => {
                let a = b.coarea();
                let mx = (r * b.w2.norm() / a).floor() as i64 + 1;
                let my = (r * b.w1.norm() / a).floor() as i64 + 1;
                for m in -mx..=mx {
                    for n in -my..=my {
                        let z = b.combo(m as f64, n as f64);
                        if z.norm() <= r {
                            out.push(z);
                        }
                    }
                }
            }
            SubgroupC::Full => {
                for x in crate::aff::grid(r, spacing) {
                    for y in crate::aff::grid(r, spacing) {
                        if x.hypot(y) <= r {
                            out.push(Complex64::new(x, y));
                        }
                    }
                }
                // the grid misses the rim; add a ring so boundary points stay covered
                let n = (2.0 * std::f64::consts::PI * r / spacing).ceil() as usize;
                out.extend((0..n).map(|k| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / n as f64)));
            }
        }
        Ok(out)
    }

    /// Pontryagin-type dual `{z : Im(conj(z) c) in Z for all c in C}`.
    pub fn dual(&self) -> SubgroupC {
        match self {
            SubgroupC::Trivial => SubgroupC::Full,
            SubgroupC::Full => SubgroupC::Trivial,
            SubgroupC::Cyclic { w } => SubgroupC::LineCyclic {
                dir: w / w.norm(),
                step: 1.0 / w.norm(),
            },
            SubgroupC::LineCyclic { dir, step } => SubgroupC::Cyclic { w: dir / *step },
            SubgroupC::Line { dir } => SubgroupC::Line { dir: *dir },
            SubgroupC::Lattice(b) => {
                let a = b.coarea();
                SubgroupC::Lattice(canonical(b.w1 / a, b.w2 / a))
            }
        }
    }

    /// Multiplication by a complex number.
    pub fn mul_by(&self, s: Complex64) -> SubgroupC {
        match self {
            SubgroupC::Trivial => SubgroupC::Trivial,
            SubgroupC::Full => SubgroupC::Full,
            SubgroupC::Cyclic { w } => SubgroupC::Cyclic {
                w: right_half_plane(w * s),
            },
            SubgroupC::Line { dir } => SubgroupC::Line {
                dir: right_half_plane(dir * s / s.norm()),
            },
            SubgroupC::LineCyclic { dir, step } => SubgroupC::LineCyclic {
                dir: right_half_plane(dir * s / s.norm()),
                step: step * s.norm(),
            },
            SubgroupC::Lattice(b) => SubgroupC::Lattice(canonical(b.w1 * s, b.w2 * s)),
        }
    }

    /// `(s, C) -> sqrt(s) C` with the principal square root; well defined as `-C = C`.
    pub fn scale_action(&self, s: Complex64) -> SubgroupC {
        self.mul_by(s.sqrt())
    }

    /// Complex conjugate `{conj z : z in C}`.
    pub fn conj(&self) -> SubgroupC {
        match self {
            SubgroupC::Trivial => SubgroupC::Trivial,
            SubgroupC::Full => SubgroupC::Full,
            SubgroupC::Cyclic { w } => SubgroupC::Cyclic {
                w: right_half_plane(w.conj()),
            },
            SubgroupC::Line { dir } => SubgroupC::Line {
                dir: right_half_plane(dir.conj()),
            },
            SubgroupC::LineCyclic { dir, step } => SubgroupC::LineCyclic {
                dir: right_half_plane(dir.conj()),
                step: *step,
            },
            SubgroupC::Lattice(b) => SubgroupC::Lattice(canonical(b.w1.conj(), b.w2.conj())),
        }
    }

    /// Equality up to rounding: same stratum and the defining data generate the
    /// same set within `tol` (relative to the data's size).
    pub fn approx_eq(&self, other: &SubgroupC, tol: f64) -> bool {
        match (self, other) {
            (SubgroupC::Trivial, SubgroupC::Trivial) | (SubgroupC::Full, SubgroupC::Full) => true,
            (SubgroupC::Cyclic { w: a }, SubgroupC::Cyclic { w: b }) => {
                (a - b).norm().min((a + b).norm()) <= tol * a.norm().max(b.norm())
            }
            (SubgroupC::Line { dir: a }, SubgroupC::Line { dir: b }) => {
                cross(a, b).abs() <= tol
            }
            (
                SubgroupC::LineCyclic { dir: a, step: s },
                SubgroupC::LineCyclic { dir: b, step: t },
            ) => cross(a, b).abs() <= tol && (s - t).abs() <= tol * s.max(*t),
            (SubgroupC::Lattice(a), SubgroupC::Lattice(b)) => a.same_lattice(b, tol),
            _ => false,
        }
    }
}

fn canonical(u: Complex64, v: Complex64) -> LatticeBasis {
    reduce_basis(&u, &v).expect("image of a lattice under an invertible map is a lattice")
}

fn segment(half: f64, spacing: f64) -> impl Iterator<Item = f64> {
    let n = (2.0 * half / spacing).ceil().max(1.0) as i64;
    let step = 2.0 * half / n as f64;
    (0..=n).map(move |k| -half + k as f64 * step)
}

pub fn dual(c: &SubgroupC) -> SubgroupC {
    c.dual()
}

pub fn scale_action(s: Complex64, c: &SubgroupC) -> SubgroupC {
    c.scale_action(s)
}

pub fn membership_c(c: &SubgroupC, z: Complex64, eps: f64) -> bool {
    c.contains(z, eps)
}

pub fn sample_ball_c(c: &SubgroupC, r: f64, spacing: f64) -> Result<Vec<Complex64>> {
    c.sample_ball(r, spacing)
}
