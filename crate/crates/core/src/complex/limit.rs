//! Predicting the limit of a sequence of lattices from its length invariants.

use num_complex::Complex64;

use super::reduce::LatticeBasis;
use super::subgroup::{right_half_plane, SubgroupC};
use crate::heis::cross;

/// Trend thresholds. A sequence "tends to infinity" when its last value
/// exceeds `big` and it increases strictly over the last `window` samples;
/// "tends to zero" is the mirror image with `1/big`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitThresholds {
    pub big: f64,
    pub window: usize,
    /// Relative tail variation below which a vector counts as converged.
    pub converge_tol: f64,
}

impl Default for LimitThresholds {
    fn default() -> Self {
        LimitThresholds {
            big: 1e3,
            window: 10,
            converge_tol: 1e-3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LimitVerdict {
    Predicted(SubgroupC),
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub verdict: LimitVerdict,
    pub ell1: Vec<f64>,
    pub ell2: Vec<f64>,
    pub kappa: Vec<f64>,
    /// Reduced basis at the horizon.
    pub last: LatticeBasis,
}

fn tail<T: Copy>(v: &[T], window: usize) -> &[T] {
    &v[v.len().saturating_sub(window)..]
}

fn to_infinity(v: &[f64], th: &LimitThresholds) -> bool {
    let t = tail(v, th.window);
    t.len() >= 2 && *t.last().unwrap() > th.big && t.windows(2).all(|p| p[1] > p[0])
}

fn to_zero(v: &[f64], th: &LimitThresholds) -> bool {
    let t = tail(v, th.window);
    t.len() >= 2 && *t.last().unwrap() < 1.0 / th.big && t.windows(2).all(|p| p[1] < p[0])
}

/// Relative spread of the tail of a vector sequence taken up to sign.
fn settles(v: &[Complex64], th: &LimitThresholds) -> bool {
    let t = tail(v, th.window);
    let last = right_half_plane(*t.last().unwrap());
    let scale = last.norm();
    t.iter().all(|z| (right_half_plane(*z) - last).norm() <= th.converge_tol * scale)
}

fn settles_scalar(v: &[f64], th: &LimitThresholds) -> bool {
    let t = tail(v, th.window);
    let last = *t.last().unwrap();
    t.iter().all(|x| (x - last).abs() <= th.converge_tol * last.abs())
}

fn bounded(v: &[f64], th: &LimitThresholds) -> bool {
    let t = tail(v, th.window);
    t.iter().all(|x| *x < th.big && *x > 1.0 / th.big)
}

/// Classify the limit of `family(1), ..., family(horizon)`.
///
/// Decision order: `l1 -> inf` gives `{0}`; `l2 -> 0` gives `C`; `l1 -> 0`
/// with `l2 -> inf` gives the line through `w1`; a divergent distortion with
/// converging `w1` gives `Z w1`; `l1 -> 0` with converging transversal part
/// of `w2` gives a line plus a discrete transversal; bounded converging
/// bases give a lattice.
pub fn classify_limit_c<F>(family: F, horizon: usize, th: &LimitThresholds) -> LimitReport
where
    F: Fn(usize) -> LatticeBasis,
{
    let bases: Vec<LatticeBasis> = (1..=horizon).map(&family).collect();
    let ell1: Vec<f64> = bases.iter().map(|b| b.w1.norm()).collect();
    let ell2: Vec<f64> = bases.iter().map(|b| b.w2.norm()).collect();
    let kappa: Vec<f64> = ell1.iter().zip(&ell2).map(|(a, b)| b / a).collect();
    let w1: Vec<Complex64> = bases.iter().map(|b| b.w1).collect();
    let dirs: Vec<Complex64> = w1.iter().map(|w| w / w.norm()).collect();
    let last = bases.last().cloned().expect("horizon >= 1");

    let verdict = if horizon < th.window.max(2) {
        LimitVerdict::Inconclusive("horizon shorter than the trend window".into())
    } else if to_infinity(&ell1, th) {
        LimitVerdict::Predicted(SubgroupC::Trivial)
    } else if to_zero(&ell2, th) {
        LimitVerdict::Predicted(SubgroupC::Full)
    } else if to_zero(&ell1, th) && to_infinity(&ell2, th) {
        if settles(&dirs, th) {
            LimitVerdict::Predicted(SubgroupC::line(last.w1).expect("nonzero"))
        } else {
            LimitVerdict::Inconclusive("short vectors do not settle on one line".into())
        }
    } else if to_infinity(&kappa, th) && bounded(&ell1, th) && settles(&w1, th) {
        LimitVerdict::Predicted(SubgroupC::cyclic(last.w1).expect("nonzero"))
    } else if to_zero(&ell1, th) && settles(&dirs, th) {
        let steps: Vec<f64> = bases
            .iter()
            .map(|b| cross(&(b.w1 / b.w1.norm()), &b.w2).abs())
            .collect();
        if settles_scalar(&steps, th) && bounded(&steps, th) {
            LimitVerdict::Predicted(
                SubgroupC::line_cyclic(last.w1, *steps.last().unwrap()).expect("positive step"),
            )
        } else {
            LimitVerdict::Inconclusive("transversal part of w2 does not settle".into())
        }
    } else if bounded(&ell1, th) && bounded(&ell2, th) && settles(&w1, th) && settles(
        &bases.iter().map(|b| b.w2).collect::<Vec<_>>(),
        th,
    ) {
        LimitVerdict::Predicted(SubgroupC::Lattice(last.clone()))
    } else {
        LimitVerdict::Inconclusive("no trend crossed the thresholds".into())
    };
    LimitReport {
        verdict,
        ell1,
        ell2,
        kappa,
        last,
    }
}
