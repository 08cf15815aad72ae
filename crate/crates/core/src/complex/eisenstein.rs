//! Weierstrass invariants `g2 = 60 sum z^-4`, `g3 = 140 sum z^-6` and the
//! discriminant `g2^3 - 27 g3^2`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::reduce::LatticeBasis;
use super::subgroup::SubgroupC;
use crate::error::{Error, Result};

/// `4 pi^4 / 3`: `g2 = C2 E4(tau) / w1^4`.
pub const C2: f64 = 4.0 * PI * PI * PI * PI / 3.0;
/// `8 pi^6 / 27`: `g3 = C3 E6(tau) / w1^6`.
pub const C3: f64 = 8.0 * PI * PI * PI * PI * PI * PI / 27.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EisensteinMode {
    /// Sum over lattice points with `|z| <= radius`.
    Direct { radius: f64 },
    /// q-expansions after reduction to the fundamental domain.
    Accelerated,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eisenstein {
    pub g2: Complex64,
    pub g3: Complex64,
    pub delta: Complex64,
    pub mode: EisensteinMode,
    /// Upper bounds on `|error|` of `g2` and `g3`.
    pub error_bound: (f64, f64),
}

/// `(E2, E4, E6)` at `tau`, normalized with constant term 1.
pub fn eisenstein_series(tau: Complex64) -> (Complex64, Complex64, Complex64) {
    let q = (Complex64::i() * 2.0 * PI * tau).exp();
    let one = Complex64::new(1.0, 0.0);
    let (mut s1, mut s3, mut s5) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    let mut qn = q;
    let aq = q.norm();
    for n in 1..2000 {
        let nf = n as f64;
        let t = qn / (one - qn);
        s1 += t * nf;
        s3 += t * nf.powi(3);
        s5 += t * nf.powi(5);
        if aq.powi(n) * nf.powi(5) < 1e-18 {
            break;
        }
        qn *= q;
    }
    (one - s1 * 24.0, one + s3 * 240.0, one - s5 * 504.0)
}

/// `dE4/dtau` and `dE6/dtau` via Ramanujan's identities.
pub fn eisenstein_derivatives(e2: Complex64, e4: Complex64, e6: Complex64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    (
        i * (2.0 * PI / 3.0) * (e2 * e4 - e6),
        i * PI * (e2 * e6 - e4 * e4),
    )
}

/// `q prod (1 - q^n)^24`.
fn delta_normalized(tau: Complex64) -> Complex64 {
    let q = (Complex64::i() * 2.0 * PI * tau).exp();
    let one = Complex64::new(1.0, 0.0);
    let mut prod = one;
    let mut qn = q;
    for _ in 1..2000 {
        prod *= one - qn;
        if qn.norm() < 1e-18 {
            break;
        }
        qn *= q;
    }
    q * prod.powi(24)
}

/// Invariants of `omega (Z + Z tau)` from the q-expansions.
pub fn invariants_from_tau(omega: Complex64, tau: Complex64) -> (Complex64, Complex64, Complex64) {
    let (_, e4, e6) = eisenstein_series(tau);
    let o2 = omega * omega;
    let o4 = o2 * o2;
    let o6 = o4 * o2;
    let d = delta_normalized(tau) * (2.0 * PI).powi(12) / (o6 * o6);
    (e4 * C2 / o4, e6 * C3 / o6, d)
}

fn accelerated_lattice(b: &LatticeBasis) -> Eisenstein {
    let (g2, g3, delta) = invariants_from_tau(b.w1, b.tau());
    Eisenstein {
        g2,
        g3,
        delta,
        mode: EisensteinMode::Accelerated,
        error_bound: (1e-14 * g2.norm().max(C2 / b.w1.norm().powi(4)), 1e-14 * g3.norm().max(C3 / b.w1.norm().powi(6))),
    }
}

fn direct_lattice(b: &LatticeBasis, radius: f64) -> Eisenstein {
    let a = b.coarea();
    let mx = (radius * b.w2.norm() / a).floor() as i64 + 1;
    let my = (radius * b.w1.norm() / a).floor() as i64 + 1;
    let r2 = radius * radius;
    // Half-plane m > 0, plus m = 0, n > 0; terms are even so the total doubles.
    let rows: Vec<(Complex64, Complex64)> = (0..=mx)
        .into_par_iter()
        .map(|m| {
            let mut s4 = Complex64::new(0.0, 0.0);
            let mut s6 = Complex64::new(0.0, 0.0);
            let start = if m == 0 { 1 } else { -my };
            for n in start..=my {
                let z = b.combo(m as f64, n as f64);
                if z.norm_sqr() > r2 {
                    continue;
                }
                let w = (z * z).inv();
                let w2 = w * w;
                s4 += w2;
                s6 += w2 * w;
            }
            (s4, s6)
        })
        .collect();
    let (mut s4, mut s6) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (a4, a6) in rows {
        s4 += a4;
        s6 += a6;
    }
    let g2 = s4 * 120.0;
    let g3 = s6 * 280.0;
    let d = b.w1.norm() + b.w2.norm();
    let rr = (radius - d).max(1e-300);
    Eisenstein {
        g2,
        g3,
        delta: g2 * g2 * g2 - g3 * g3 * 27.0,
        mode: EisensteinMode::Direct { radius },
        error_bound: (60.0 * PI / (a * rr * rr), 70.0 * PI / (a * rr.powi(4))),
    }
}

fn cyclic_closed_form(w: Complex64) -> (Complex64, Complex64) {
    let w2 = w * w;
    let w4 = w2 * w2;
    (Complex64::new(C2, 0.0) / w4, Complex64::new(C3, 0.0) / (w4 * w2))
}

pub fn eisenstein_invariants(c: &SubgroupC, mode: EisensteinMode) -> Result<Eisenstein> {
    if let EisensteinMode::Direct { radius } = mode {
        if !(radius > 0.0) {
            return Err(Error::param("truncation radius must be positive"));
        }
    }
    match (c, mode) {
        (SubgroupC::Lattice(b), EisensteinMode::Accelerated) => Ok(accelerated_lattice(b)),
        (SubgroupC::Lattice(b), EisensteinMode::Direct { radius }) => Ok(direct_lattice(b, radius)),
        (SubgroupC::Cyclic { w }, EisensteinMode::Accelerated) => {
            let (g2, g3) = cyclic_closed_form(*w);
            Ok(Eisenstein {
                g2,
                g3,
                delta: Complex64::new(0.0, 0.0),
                mode,
                error_bound: (1e-15 * g2.norm(), 1e-15 * g3.norm()),
            })
        }
        (SubgroupC::Cyclic { w }, EisensteinMode::Direct { radius }) => {
            let k = (radius / w.norm()).floor() as i64;
            let (mut s4, mut s6) = (0.0, 0.0);
            // smallest terms first
            for j in (1..=k).rev() {
                let j = j as f64;
                s4 += j.powi(-4);
                s6 += j.powi(-6);
            }
            let w2 = w * w;
            let g2 = Complex64::new(120.0 * s4, 0.0) / (w2 * w2);
            let g3 = Complex64::new(280.0 * s6, 0.0) / (w2 * w2 * w2);
            let kf = (k.max(1)) as f64;
            Ok(Eisenstein {
                g2,
                g3,
                delta: g2 * g2 * g2 - g3 * g3 * 27.0,
                mode,
                error_bound: (40.0 / (w.norm().powi(4) * kf.powi(3)), 56.0 / (w.norm().powi(6) * kf.powi(5))),
            })
        }
        _ => Err(Error::WrongStratum {
            op: "eisenstein_invariants",
            stratum: c.tag(),
            reason: "the lattice sums converge only for discrete groups of rank 1 or 2",
        }),
    }
}

/// `(g2, g3)` of `C` in accelerated mode; `(0, 0)` for the trivial group.
pub fn g2g3(c: &SubgroupC) -> Result<(Complex64, Complex64)> {
    if let SubgroupC::Trivial = c {
        return Ok((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    let e = eisenstein_invariants(c, EisensteinMode::Accelerated)?;
    Ok((e.g2, e.g3))
}
