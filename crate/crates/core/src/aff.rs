//! The affine group of the line, `x -> lambda x + tau` with `lambda > 0`.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffElement {
    pub lambda: f64,
    pub tau: f64,
}

impl AffElement {
    pub fn new(lambda: f64, tau: f64) -> Result<Self> {
        if !(lambda > 0.0) || !tau.is_finite() || !lambda.is_finite() {
            return Err(Error::param(format!("affine element needs lambda > 0, got {lambda}")));
        }
        Ok(AffElement { lambda, tau })
    }

    pub const IDENTITY: AffElement = AffElement {
        lambda: 1.0,
        tau: 0.0,
    };

    pub fn mul(&self, other: &Self) -> Self {
        AffElement {
            lambda: self.lambda * other.lambda,
            tau: self.lambda * other.tau + self.tau,
        }
    }

    pub fn inverse(&self) -> Self {
        AffElement {
            lambda: 1.0 / self.lambda,
            tau: -self.tau / self.lambda,
        }
    }

    /// `g^k = (lambda^k, tau (lambda^k - 1)/(lambda - 1))`.
    pub fn pow(&self, k: i64) -> Self {
        let s = self.lambda.ln();
        let lk = (k as f64 * s).exp();
        AffElement {
            lambda: lk,
            tau: self.tau * k as f64 * expm1_ratio(k as f64 * s) / expm1_ratio(s),
        }
    }

    pub fn log_lambda(&self) -> f64 {
        self.lambda.ln()
    }

    /// Inverse of [`aff_exp`].
    pub fn log(&self) -> (f64, f64) {
        let x = self.lambda.ln();
        (x, self.tau / expm1_ratio(x))
    }

    pub fn is_identity(&self) -> bool {
        self.lambda == 1.0 && self.tau == 0.0
    }

    /// Gauge `max(|log lambda|, |tau|)`.
    pub fn gauge_norm(&self) -> f64 {
        self.lambda.ln().abs().max(self.tau.abs())
    }
}

/// `(e^x - 1)/x`, continuous at 0.
fn expm1_ratio(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 + x / 2.0
    } else {
        x.exp_m1() / x
    }
}

/// Exponential of the Lie algebra element `[[x, y], [0, 0]]`.
pub fn aff_exp(x: f64, y: f64) -> AffElement {
    AffElement {
        lambda: x.exp(),
        tau: y * expm1_ratio(x),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SubgroupAff {
    Trivial,
    /// Generator with `lambda > 1`, or `lambda = 1` and `tau > 0`.
    Cyclic { generator: AffElement },
    /// `exp(R (x, y))` with `(x, y)` a unit vector, `x > 0` or `(0, 1)`.
    OneParam { dir: (f64, f64) },
    /// Translations together with the powers of one dilation, `lambda > 1`.
    TransPlusScale { lambda: f64 },
    Full,
}

impl SubgroupAff {
    pub fn cyclic(generator: AffElement) -> Result<Self> {
        if generator.is_identity() {
            return Err(Error::param("cyclic generator must not be the identity"));
        }
        let g = if generator.lambda > 1.0 || (generator.lambda == 1.0 && generator.tau > 0.0) {
            generator
        } else {
            generator.inverse()
        };
        Ok(SubgroupAff::Cyclic { generator: g })
    }

    pub fn one_param(x: f64, y: f64) -> Result<Self> {
        let n = x.hypot(y);
        if !(n > 0.0) {
            return Err(Error::param("one-parameter direction must be nonzero"));
        }
        let (mut x, mut y) = (x / n, y / n);
        if x < 0.0 || (x == 0.0 && y < 0.0) {
            x = -x;
            y = -y;
        }
        if x == 0.0 {
            y = 1.0;
        }
        Ok(SubgroupAff::OneParam { dir: (x, y) })
    }

    /// Translations plus `lambda^Z`; `lambda` and `1/lambda` give the same group.
    pub fn trans_plus_scale(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || lambda == 1.0 {
            return Err(Error::param("dilation factor must be positive and different from 1"));
        }
        Ok(SubgroupAff::TransPlusScale {
            lambda: if lambda > 1.0 { lambda } else { 1.0 / lambda },
        })
    }

    pub fn translations() -> Self {
        SubgroupAff::OneParam { dir: (0.0, 1.0) }
    }

    pub fn contains(&self, g: &AffElement, eps: f64) -> bool {
        match self {
            SubgroupAff::Trivial => g.gauge_norm() <= eps,
            SubgroupAff::Cyclic { generator } => {
                let s = generator.log_lambda();
                let k = if s.abs() > 1e-12 {
                    (g.log_lambda() / s).round()
                } else {
                    (g.tau / generator.tau).round()
                };
                let p = generator.pow(k as i64);
                (p.log_lambda() - g.log_lambda()).abs().max((p.tau - g.tau).abs()) <= eps
            }
            SubgroupAff::OneParam { dir: (x, y) } => {
                if *x == 0.0 {
                    return g.log_lambda().abs() <= eps;
                }
                let s = g.log_lambda();
                let tau = y / x * s.exp_m1();
                (tau - g.tau).abs() <= eps.max(1e-12 * (1.0 + tau.abs()))
            }
            SubgroupAff::TransPlusScale { lambda } => {
                let k = (g.log_lambda() / lambda.ln()).round();
                (g.log_lambda() - k * lambda.ln()).abs() <= eps
            }
            SubgroupAff::Full => true,
        }
    }

    /// Elements in the box `|log lambda| <= r`, `|tau| <= r`; continuous parts are
    /// discretized finely enough that every element of the box is within
    /// `spacing` of a sample in the gauge `max(|log lambda|, |tau|)`.
    pub fn sample_ball(&self, r: f64, spacing: f64) -> Result<Vec<AffElement>> {
        if !(spacing > 0.0) || !(r > 0.0) {
            return Err(Error::param("radius and spacing must be positive"));
        }
        let inside = |g: &AffElement| g.log_lambda().abs() <= r && g.tau.abs() <= r;
        let mut out = Vec::new();
        match self {
            SubgroupAff::Trivial => out.push(AffElement::IDENTITY),
            SubgroupAff::Cyclic { generator } => {
                let s = generator.log_lambda().abs();
                let kmax = if s > 1e-12 {
                    (r / s).floor() as i64
                } else {
                    (r / generator.tau.abs()).floor() as i64
                };
                for k in -kmax..=kmax {
                    let g = generator.pow(k);
                    if inside(&g) {
                        out.push(g);
                    }
                }
            }
            SubgroupAff::OneParam { dir: (x, y) } => {
                if *x == 0.0 {
                    out.extend(grid(r, spacing).map(|t| AffElement { lambda: 1.0, tau: t }));
                } else {
                    let slope = y / x;
                    let mut s = -r;
                    loop {
                        let g = AffElement {
                            lambda: s.exp(),
                            tau: slope * s.exp_m1(),
                        };
                        if inside(&g) {
                            out.push(g);
                        }
                        if s >= r {
                            break;
                        }
                        let step = spacing / (1.0 + slope.abs() * s.exp());
                        s = (s + step).min(r);
                    }
                }
            }
            SubgroupAff::TransPlusScale { lambda } => {
                let s = lambda.ln();
                let kmax = (r / s).floor() as i64;
                for k in -kmax..=kmax {
                    let l = (k as f64 * s).exp();
                    out.extend(grid(r, spacing).map(|t| AffElement { lambda: l, tau: t }));
                }
            }
            SubgroupAff::Full => {
                let pts: Vec<f64> = grid(r, spacing).collect();
                for &s in &pts {
                    for &t in &pts {
                        out.push(AffElement {
                            lambda: s.exp(),
                            tau: t,
                        });
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn classify(&self) -> AffStratum {
        match self {
            SubgroupAff::Trivial => AffStratum::Vertex,
            SubgroupAff::Cyclic { generator } => {
                let (x, y) = generator.log();
                let n = x.hypot(y);
                let dir = canonical_dir(x / n, y / n);
                AffStratum::DiscInterior { dir, r: 1.0 / n }
            }
            SubgroupAff::OneParam { dir } => AffStratum::DiscBoundary {
                dir: *dir,
                commutator_subgroup: dir.0 == 0.0,
            },
            SubgroupAff::TransPlusScale { lambda } => AffStratum::IntervalInterior { lambda: *lambda },
            SubgroupAff::Full => AffStratum::IntervalEndpointAff,
        }
    }
}

fn canonical_dir(x: f64, y: f64) -> (f64, f64) {
    if x < 0.0 || (x == 0.0 && y < 0.0) {
        (-x, -y)
    } else {
        (x, y)
    }
}

/// Symmetric grid `{-r, ..., r}` with step at most `spacing`.
pub(crate) fn grid(r: f64, spacing: f64) -> impl Iterator<Item = f64> {
    let n = (2.0 * r / spacing).ceil().max(1.0) as i64;
    let step = 2.0 * r / n as f64;
    (0..=n).map(move |k| -r + k as f64 * step)
}

/// Position in the space of closed subgroups of Aff: a cone over `P^1` (the
/// abelian subgroups) glued at one boundary point to an interval.
///
/// The cone radius of a cyclic group is `1/|log g|`, so `0` is the vertex
/// and `infinity` the boundary circle of one-parameter groups.
#[derive(Clone, Debug, PartialEq)]
pub enum AffStratum {
    Vertex,
    DiscInterior { dir: (f64, f64), r: f64 },
    /// `commutator_subgroup` marks the translation group, which is also the
    /// endpoint of the interval of non-abelian groups.
    DiscBoundary { dir: (f64, f64), commutator_subgroup: bool },
    IntervalInterior { lambda: f64 },
    IntervalEndpointAff,
}

pub fn aff_classify_stratum(c: &SubgroupAff) -> AffStratum {
    c.classify()
}

pub fn aff_sample_ball(c: &SubgroupAff, r: f64, spacing: f64) -> Result<Vec<AffElement>> {
    c.sample_ball(r, spacing)
}
