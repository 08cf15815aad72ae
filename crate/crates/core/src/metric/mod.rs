//! Ball-restricted Hausdorff gauges for the Chabauty topology.
//!
//! Two closed subgroups are close when, inside a large ball, every point of
//! one is near a point of the other. Everything here works on finite samples
//! produced by the `sample_ball` operations of the subgroup modules.

mod kdtree;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::aff::AffElement;
use crate::complex::ExtReal;
use crate::error::{Error, Result};
use crate::heis::HeisPoint;

pub use kdtree::KdTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbientSpace {
    ComplexPlane,
    Heisenberg,
    Aff,
}

/// A point type with a gauge: a symmetric, positive-definite distance that
/// need not satisfy the triangle inequality.
pub trait GaugePoint: Clone + Send + Sync {
    const SPACE: AmbientSpace;

    /// Distance to the identity.
    fn gauge_norm(&self) -> f64;
    fn gauge_dist(&self, other: &Self) -> f64;
    fn coords(&self) -> [f64; 3];
    /// Half-widths of a coordinate box around `self` containing every point
    /// at gauge distance at most `d`.
    fn search_box(&self, d: f64) -> [f64; 3];
}

impl GaugePoint for Complex64 {
    const SPACE: AmbientSpace = AmbientSpace::ComplexPlane;

    fn gauge_norm(&self) -> f64 {
        self.norm()
    }
    fn gauge_dist(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
    fn coords(&self) -> [f64; 3] {
        [self.re, self.im, 0.0]
    }
    fn search_box(&self, d: f64) -> [f64; 3] {
        [d, d, 0.0]
    }
}

/// Coordinates `(log lambda, tau)` with the sup norm.
impl GaugePoint for AffElement {
    const SPACE: AmbientSpace = AmbientSpace::Aff;

    fn gauge_norm(&self) -> f64 {
        AffElement::gauge_norm(self)
    }
    fn gauge_dist(&self, other: &Self) -> f64 {
        (self.log_lambda() - other.log_lambda())
            .abs()
            .max((self.tau - other.tau).abs())
    }
    fn coords(&self) -> [f64; 3] {
        [self.log_lambda(), self.tau, 0.0]
    }
    fn search_box(&self, d: f64) -> [f64; 3] {
        [d, d, 0.0]
    }
}

/// `ell(z, t) = |z| + |t|` and `delta(a, b) = ell(a^-1 b)`.
impl GaugePoint for HeisPoint<f64> {
    const SPACE: AmbientSpace = AmbientSpace::Heisenberg;

    fn gauge_norm(&self) -> f64 {
        self.ell()
    }
    fn gauge_dist(&self, other: &Self) -> f64 {
        let dz = other.z - self.z;
        let dt = other.t - self.t - 0.5 * (self.z.re * other.z.im - self.z.im * other.z.re);
        dz.norm() + dt.abs()
    }
    fn coords(&self) -> [f64; 3] {
        [self.z.re, self.z.im, self.t]
    }
    fn search_box(&self, d: f64) -> [f64; 3] {
        // |dt| <= d + |Im(conj(z) dz)|/2 <= d (1 + |z|/2)
        [d, d, d * (1.0 + 0.5 * self.z.norm())]
    }
}

/// Ball radius `radius`, sampling pitch `spacing`, acceptance threshold `eps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricConfig {
    pub radius: f64,
    pub spacing: f64,
    pub eps: f64,
}

impl MetricConfig {
    pub fn new(radius: f64, spacing: f64, eps: f64) -> Result<Self> {
        let c = MetricConfig { radius, spacing, eps };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius > 0.0 && self.spacing > 0.0 && self.eps > 0.0) {
            return Err(Error::param(format!(
                "metric config needs positive radius, spacing and eps, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Radius to which samples should extend so that nearest points of
    /// elements in the ball are not cut off. Distances larger than the margin
    /// are only reported as "at least the margin".
    pub fn sample_radius(&self, space: AmbientSpace) -> f64 {
        let margin = (2.0 * self.eps).max(4.0 * self.spacing).max(0.25);
        match space {
            AmbientSpace::Heisenberg => self.radius + margin * (1.0 + 0.5 * self.radius),
            _ => self.radius + margin,
        }
    }
}

struct Index<P> {
    tree: KdTree,
    pts: Vec<P>,
}

impl<P: GaugePoint> Index<P> {
    fn new(pts: &[P]) -> Self {
        Index {
            tree: KdTree::new(pts.iter().map(GaugePoint::coords).collect()),
            pts: pts.to_vec(),
        }
    }

    fn nearest_dist(&self, x: &P) -> f64 {
        let guess = self.tree.nearest(&x.coords());
        let mut best = x.gauge_dist(&self.pts[guess]);
        if best == 0.0 {
            return 0.0;
        }
        let half = x.search_box(best);
        self.tree.for_each_in_box(&x.coords(), &half, |i| {
            let d = x.gauge_dist(&self.pts[i]);
            if d < best {
                best = d;
            }
        });
        best
    }
}

/// `max over x in a, |x| <= R` of the gauge distance from `x` to `b`.
fn one_sided<P: GaugePoint>(a: &[P], b: &Index<P>, radius: f64) -> f64 {
    a.par_iter()
        .filter(|x| x.gauge_norm() <= radius)
        .map(|x| b.nearest_dist(x))
        .reduce(|| 0.0, f64::max)
}

/// Symmetric ball-restricted Hausdorff deviation of two samples.
pub fn ball_distance<P: GaugePoint>(c: &[P], d: &[P], cfg: &MetricConfig) -> Result<f64> {
    cfg.validate()?;
    if c.is_empty() || d.is_empty() {
        return Err(Error::EmptySample);
    }
    let ic = Index::new(c);
    let id = Index::new(d);
    Ok(one_sided(c, &id, cfg.radius).max(one_sided(d, &ic, cfg.radius)))
}

/// Smallest gauge norm of a non-identity sample point; infinite for `{e}`.
pub fn min_delta<P: GaugePoint>(sample: &[P]) -> ExtReal {
    sample
        .iter()
        .map(GaugePoint::gauge_norm)
        .filter(|n| *n > 1e-12)
        .min_by(f64::total_cmp)
        .map_or(ExtReal::Infinity, ExtReal::Finite)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Converges,
    Diverges,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Converges => "converges",
            Verdict::Diverges => "diverges",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRow {
    pub index: usize,
    pub radius: f64,
    pub eps: f64,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub verdict: Verdict,
    /// Sorted by `(index, radius)`.
    pub rows: Vec<TraceRow>,
}

/// Judge one tail of distances against `eps`.
pub fn tail_verdict(distances: &[f64], eps: f64) -> Verdict {
    if distances.is_empty() {
        return Verdict::Inconclusive;
    }
    let k = (distances.len() / 4).max(1);
    let tail = &distances[distances.len() - k..];
    if tail.iter().all(|d| *d < eps) {
        Verdict::Converges
    } else if tail.iter().all(|d| *d >= eps) && tail.last() >= tail.first() {
        Verdict::Diverges
    } else {
        Verdict::Inconclusive
    }
}

/// Numerical convergence test: for every configuration of the schedule, the
/// distances between the family members (at the given indices) and the
/// target must end below `eps`.
///
/// A single diverging configuration makes the verdict `Diverges`.
pub fn converges_to<P, F, G>(
    family: F,
    indices: &[usize],
    target: G,
    schedule: &[MetricConfig],
) -> Result<ConvergenceReport>
where
    P: GaugePoint,
    F: Fn(usize, &MetricConfig) -> Result<Vec<P>>,
    G: Fn(&MetricConfig) -> Result<Vec<P>>,
{
    if schedule.is_empty() {
        return Err(Error::param("empty metric schedule"));
    }
    for w in schedule.windows(2) {
        if w[1].radius < w[0].radius || w[1].eps > w[0].eps {
            return Err(Error::param("schedule needs nondecreasing radius and nonincreasing eps"));
        }
    }
    let mut rows = Vec::with_capacity(indices.len() * schedule.len());
    let mut verdicts = Vec::with_capacity(schedule.len());
    for cfg in schedule {
        cfg.validate()?;
        let t = target(cfg)?;
        let mut ds = Vec::with_capacity(indices.len());
        for &k in indices {
            let d = ball_distance(&family(k, cfg)?, &t, cfg)?;
            ds.push(d);
            rows.push(TraceRow {
                index: k,
                radius: cfg.radius,
                eps: cfg.eps,
                distance: d,
            });
        }
        verdicts.push(tail_verdict(&ds, cfg.eps));
    }
    rows.sort_by(|a, b| a.index.cmp(&b.index).then(a.radius.total_cmp(&b.radius)));
    let verdict = if verdicts.iter().all(|v| *v == Verdict::Converges) {
        Verdict::Converges
    } else if verdicts.contains(&Verdict::Diverges) {
        Verdict::Diverges
    } else {
        Verdict::Inconclusive
    };
    Ok(ConvergenceReport { verdict, rows })
}
