//! Datasets: CSV emitters and convergence traces.

use chabauty_core::complex::{lattice_invariants, LatticeInvariants, SubgroupC};
use chabauty_core::heis::HeisPoint;
use chabauty_core::heis_sub::{
    deepening_lattice, dilated, index_n, integer_plane_lattice, orbit_density_walk, p_star, sample_for_distance,
    sheared_lattice, stretched_gaussian, LatticeN, SubgroupH,
};
use chabauty_core::metric::{converges_to, AmbientSpace, ConvergenceReport, MetricConfig};
use chabauty_core::sphere::{f_chart, f_inverse, trefoil_sample, SpherePoint};
use clap::ValueEnum;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::ext;
use crate::doc::VERSION;
use crate::error::Result;
use crate::num::fmt_f64;
use crate::settings::Settings;

/// CSV with the given header, written even when there are no rows.
fn csv_bytes<R: Serialize>(header: &[&str], rows: &[R]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.into_inner().map_err(|e| crate::error::CliError::Io(e.to_string()))
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, fmt_f64)
}

#[derive(Serialize)]
struct TrefoilRow {
    re_a: String,
    im_a: String,
    re_b: String,
    im_b: String,
    /// `|a^3 - 27 b^2|`.
    sigma_residual: String,
}

pub fn trefoil(settings: &Settings) -> Result<Vec<u8>> {
    let rows: Vec<TrefoilRow> = trefoil_sample(settings.count.unwrap_or(360))?
        .iter()
        .filter_map(|p| match p {
            SpherePoint::Finite { a, b } => Some(TrefoilRow {
                re_a: fmt_f64(a.re),
                im_a: fmt_f64(a.im),
                re_b: fmt_f64(b.re),
                im_b: fmt_f64(b.im),
                sigma_residual: fmt_f64((a * a * a - b * b * 27.0).norm()),
            }),
            SpherePoint::Infinity => None,
        })
        .collect();
    csv_bytes(&["re_a", "im_a", "re_b", "im_b", "sigma_residual"], &rows)
}

#[derive(Serialize)]
struct ChartRow {
    index: usize,
    re_a: String,
    im_a: String,
    re_b: String,
    im_b: String,
    stratum: &'static str,
    coarea: String,
    /// Distance between the point and `f_inverse(f_chart(point))`.
    roundtrip_residual: String,
}

/// Relative distance of `(a, b)` from the discriminant locus.
fn sigma_distance(a: Complex64, b: Complex64) -> f64 {
    (a * a * a - b * b * 27.0).norm() / (a.norm().powi(3) + b.norm_sqr())
}

/// Random points of the closed unit ball of `C^2`, kept away from the origin
/// and the discriminant locus where the chart degenerates.
pub fn chart_grid(settings: &Settings) -> Result<Vec<u8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let count = settings.count.unwrap_or(100);
    let mut rows = Vec::with_capacity(count);
    while rows.len() < count {
        let mut u = || rng.gen_range(-1.0..=1.0);
        let (a, b) = (Complex64::new(u(), u()), Complex64::new(u(), u()));
        let p = SpherePoint::new(a, b);
        if p.norm() > 1.0 || p.norm() < 1e-3 || sigma_distance(a, b) < 1e-3 {
            continue;
        }
        let c = f_chart(&p)?;
        let back = f_inverse(&c)?;
        rows.push(ChartRow {
            index: rows.len(),
            re_a: fmt_f64(a.re),
            im_a: fmt_f64(a.im),
            re_b: fmt_f64(b.re),
            im_b: fmt_f64(b.im),
            stratum: c.tag(),
            coarea: lattice_invariants(&c).coarea.map_or_else(String::new, ext),
            roundtrip_residual: fmt_f64(back.dist(&p)),
        });
    }
    csv_bytes(
        &["index", "re_a", "im_a", "re_b", "im_b", "stratum", "coarea", "roundtrip_residual"],
        &rows,
    )
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Abelian subgroups of `H` approached by automorphic images of `Z^2` in
/// the plane over `1`.
pub fn walk_targets() -> Result<Vec<(&'static str, SubgroupH)>> {
    Ok(vec![
        (
            "plane-lattice",
            SubgroupH::in_plane(c(1.0, 0.0), SubgroupC::lattice(c(1.0, 0.1 * 2f64.sqrt()), c(0.3, 1.1))?)?,
        ),
        (
            "tilted-plane-lattice",
            SubgroupH::in_plane(Complex64::from_polar(1.0, 0.6), SubgroupC::lattice(c(0.8, 0.1), c(-0.2, 1.3))?)?,
        ),
        ("cyclic", SubgroupH::cyclic(HeisPoint::new(c(0.5, 0.2), 0.3))?),
        ("one-parameter", SubgroupH::one_param(HeisPoint::new(c(1.0, 0.5), 0.4))?),
        (
            "line-plus-cyclic",
            SubgroupH::in_plane(c(0.0, 1.0), SubgroupC::line_cyclic(c(1.0, 0.7), 0.9)?)?,
        ),
    ])
}

#[derive(Serialize)]
struct WalkRow {
    target: String,
    step: usize,
    distance: String,
    budget: usize,
    seed: u64,
}

/// Improvement steps of the orbit walk from `Z^2` to each target.
pub fn orbit_walk(targets: &[(String, SubgroupH)], settings: &Settings) -> Result<Vec<u8>> {
    let cfg = settings.metric()?;
    let start = integer_plane_lattice();
    let mut rows = Vec::new();
    for (name, t) in targets {
        let r = orbit_density_walk(&start, t, settings.budget, &cfg, settings.seed)?;
        for (step, d) in r.improvements {
            rows.push(WalkRow {
                target: name.clone(),
                step,
                distance: fmt_f64(d),
                budget: settings.budget,
                seed: settings.seed,
            });
        }
    }
    csv_bytes(&["target", "step", "distance", "budget", "seed"], &rows)
}

/// Families with a known limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Dilations of the standard index-1 lattice by `s = k`, tending to `{e}`.
    DilationTrivial,
    /// Dilations of the standard index-1 lattice by `s = 1/k`, tending to `H`.
    DilationFull,
    /// Index-1 lattices meeting the plane over `1` in ever finer shears,
    /// tending to `Z^2` in that plane.
    Sheared,
    /// Index-`k` lattices over `<1, i(1 + 1/k)>`, tending to the preimage of
    /// the Gaussian integers.
    Deepening,
    /// The lattices `<1, i(1 + 1/k)>` of `C`, tending to the Gaussian integers.
    StretchedGaussian,
}

impl Family {
    pub fn id(self) -> &'static str {
        match self {
            Family::DilationTrivial => "dilation-trivial",
            Family::DilationFull => "dilation-full",
            Family::Sheared => "sheared",
            Family::Deepening => "deepening",
            Family::StretchedGaussian => "stretched-gaussian",
        }
    }

    pub fn default_indices(self) -> Vec<usize> {
        match self {
            Family::DilationTrivial => vec![2, 5, 10, 20, 40],
            Family::DilationFull => vec![2, 4, 8, 16],
            Family::Sheared => vec![50, 100, 200, 400, 800],
            Family::Deepening => vec![10, 20, 40, 80, 160],
            Family::StretchedGaussian => vec![10, 100, 1000, 10000],
        }
    }

    fn parameter(self, k: usize) -> f64 {
        match self {
            Family::DilationFull => 1.0 / k as f64,
            _ => k as f64,
        }
    }

    fn member_h(self, k: usize) -> chabauty_core::Result<SubgroupH> {
        let standard = || SubgroupH::Lattice(LatticeN::standard(1).expect("index 1"));
        Ok(match self {
            Family::DilationTrivial | Family::DilationFull => dilated(&standard(), self.parameter(k))?,
            Family::Sheared => sheared_lattice(k as u64, 1)?,
            Family::Deepening => deepening_lattice(k as u64)?,
            Family::StretchedGaussian => unreachable!("planar family"),
        })
    }

    fn target_h(self) -> chabauty_core::Result<SubgroupH> {
        Ok(match self {
            Family::DilationTrivial => SubgroupH::Trivial,
            Family::DilationFull => SubgroupH::Full,
            Family::Sheared => integer_plane_lattice(),
            Family::Deepening => SubgroupH::preimage(&SubgroupC::gaussian_integers())?,
            Family::StretchedGaussian => unreachable!("planar family"),
        })
    }

    /// Invariants of the member (of its projection, for `H`) and its index.
    fn invariants(self, k: usize) -> Result<(LatticeInvariants, Option<u64>)> {
        if self == Family::StretchedGaussian {
            return Ok((lattice_invariants(&SubgroupC::Lattice(stretched_gaussian(k as u64))), None));
        }
        let m = self.member_h(k)?;
        let n = index_n(&m).ok().map(|(n, _)| n);
        Ok((lattice_invariants(&p_star(&m)?), n))
    }

    pub fn run(self, indices: &[usize], schedule: &[MetricConfig]) -> Result<ConvergenceReport> {
        if self == Family::StretchedGaussian {
            let ball = |c: &SubgroupC, cfg: &MetricConfig| c.sample_ball(cfg.sample_radius(AmbientSpace::ComplexPlane), cfg.spacing);
            return Ok(converges_to(
                |k, cfg| ball(&SubgroupC::Lattice(stretched_gaussian(k as u64)), cfg),
                indices,
                |cfg| ball(&SubgroupC::gaussian_integers(), cfg),
                schedule,
            )?);
        }
        let target = self.target_h()?;
        Ok(converges_to(
            |k, cfg| sample_for_distance(&self.member_h(k)?, cfg),
            indices,
            |cfg| sample_for_distance(&target, cfg),
            schedule,
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub index: usize,
    pub parameter: String,
    pub radius: String,
    pub eps: String,
    pub distance: String,
    pub ell1: String,
    pub ell2: String,
    pub kappa: String,
    pub n: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceDocument {
    pub version: String,
    pub family: String,
    pub seed: u64,
    pub verdict: String,
    /// Sorted by `(index, radius)`.
    pub rows: Vec<TraceRow>,
}

pub fn trace(family: Family, indices: Option<Vec<usize>>, settings: &Settings) -> Result<TraceDocument> {
    let indices = indices.unwrap_or_else(|| family.default_indices());
    let report = family.run(&indices, &settings.schedule()?)?;
    let mut rows = Vec::with_capacity(report.rows.len());
    for r in &report.rows {
        let (inv, n) = family.invariants(r.index)?;
        rows.push(TraceRow {
            index: r.index,
            parameter: fmt_f64(family.parameter(r.index)),
            radius: fmt_f64(r.radius),
            eps: fmt_f64(r.eps),
            distance: fmt_f64(r.distance),
            ell1: opt(inv.ell1),
            ell2: opt(inv.ell2),
            kappa: opt(inv.kappa),
            n: n.map_or_else(String::new, |n| n.to_string()),
        });
    }
    Ok(TraceDocument {
        version: VERSION.into(),
        family: family.id().into(),
        seed: settings.seed,
        verdict: report.verdict.as_str().into(),
        rows,
    })
}

pub fn convergence(t: &TraceDocument) -> Result<Vec<u8>> {
    let rows: Vec<[String; 11]> = t
        .rows
        .iter()
        .map(|r| {
            [
                t.family.clone(),
                r.index.to_string(),
                r.parameter.clone(),
                r.radius.clone(),
                r.eps.clone(),
                r.distance.clone(),
                r.ell1.clone(),
                r.ell2.clone(),
                r.kappa.clone(),
                r.n.clone(),
                t.verdict.clone(),
            ]
        })
        .collect();
    csv_bytes(
        &["family", "index", "parameter", "radius", "eps", "distance", "ell1", "ell2", "kappa", "n", "verdict"],
        &rows,
    )
}
