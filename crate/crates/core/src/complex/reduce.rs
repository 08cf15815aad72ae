//! Gauss-Lagrange reduction of planar lattices with a total canonical form.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::heis::{cross, dot, norm_sqr, Mat2};
use crate::scalar::Scalar;

/// Positively oriented basis, `Im(conj(w1) w2) > 0`.
///
/// Values produced by [`reduce_basis`] are canonical: `|w1| <= |w2|`,
/// `tau = w2/w1` lies in the closed fundamental domain with `Re tau >= 0` on
/// its boundary, and `w1` is taken in the right half-plane (for the square and
/// hexagonal lattices, in the sector `[0, pi/2)` resp. `[0, pi/3)`).
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeBasis<T = f64> {
    pub w1: Complex<T>,
    pub w2: Complex<T>,
}

impl<T: Scalar> LatticeBasis<T> {
    pub fn coarea(&self) -> T {
        cross(&self.w1, &self.w2)
    }

    /// Real coordinates of `z` in the basis.
    pub fn coords(&self, z: &Complex<T>) -> (T, T) {
        let a = self.coarea();
        (cross(z, &self.w2) / a.clone(), cross(&self.w1, z) / a)
    }

    pub fn combo(&self, m: T, n: T) -> Complex<T> {
        Complex::new(
            m.clone() * self.w1.re.clone() + n.clone() * self.w2.re.clone(),
            m * self.w1.im.clone() + n * self.w2.im.clone(),
        )
    }

    /// Exact membership when `T` is exact, tolerance-based otherwise.
    pub fn contains_exact(&self, z: &Complex<T>) -> bool {
        let (x, y) = self.coords(z);
        x.is_integer_tol() && y.is_integer_tol()
    }

    pub fn to_f64(&self) -> LatticeBasis<f64> {
        LatticeBasis {
            w1: Complex::new(self.w1.re.to_f64(), self.w1.im.to_f64()),
            w2: Complex::new(self.w2.re.to_f64(), self.w2.im.to_f64()),
        }
    }

    pub fn scaled(&self, s: &Complex<T>) -> Self {
        LatticeBasis {
            w1: self.w1.clone() * s.clone(),
            w2: self.w2.clone() * s.clone(),
        }
    }

    /// Columns `w1`, `w2` as a real 2x2 matrix.
    pub fn matrix(&self) -> Mat2<T> {
        [
            [self.w1.re.clone(), self.w2.re.clone()],
            [self.w1.im.clone(), self.w2.im.clone()],
        ]
    }
}

impl LatticeBasis<f64> {
    pub fn tau(&self) -> Complex<f64> {
        self.w2 / self.w1
    }

    /// Distance from `z` to the nearest lattice point.
    pub fn distance_to(&self, z: Complex<f64>) -> f64 {
        let (x, y) = self.coords(&z);
        let (fx, fy) = (x.floor(), y.floor());
        let mut best = f64::INFINITY;
        for dx in -1..=2 {
            for dy in -1..=2 {
                let p = self.combo(fx + dx as f64, fy + dy as f64);
                best = best.min((z - p).norm());
            }
        }
        best
    }

    /// Same lattice, allowing for rounding in the basis vectors.
    pub fn same_lattice(&self, other: &Self, tol: f64) -> bool {
        let scale = self.w2.norm().max(other.w2.norm()).max(1e-300);
        [self.w1, self.w2].iter().all(|z| other.distance_to(*z) <= tol * scale)
            && [other.w1, other.w2].iter().all(|z| self.distance_to(*z) <= tol * scale)
    }
}

fn sub_mul<T: Scalar>(v: &Complex<T>, m: &T, u: &Complex<T>) -> Complex<T> {
    Complex::new(
        v.re.clone() - m.clone() * u.re.clone(),
        v.im.clone() - m.clone() * u.im.clone(),
    )
}

fn is_zero_rel<T: Scalar>(x: &T, scale: &T) -> bool {
    x.abs() <= T::tolerance() * scale.clone()
}

/// Reduced basis together with the integer matrix `m` expressing it in the
/// input: `w1 = m00 u + m01 v`, `w2 = m10 u + m11 v`.
pub fn reduce_with_transform<T: Scalar>(
    u: &Complex<T>,
    v: &Complex<T>,
) -> Result<(LatticeBasis<T>, Mat2<T>)> {
    let scale = norm_sqr(u) + norm_sqr(v);
    if is_zero_rel(&cross(u, v), &scale) {
        return Err(Error::DegenerateLattice);
    }
    let one = T::one();
    let zero = T::zero();
    let (mut a, mut b) = (u.clone(), v.clone());
    let mut ma = [one.clone(), zero.clone()];
    let mut mb = [zero.clone(), one.clone()];
    let step = |a: &Complex<T>, b: &Complex<T>, ma: &[T; 2], mb: &[T; 2], m: &T| {
        (
            sub_mul(b, m, a),
            [mb[0].clone() - m.clone() * ma[0].clone(), mb[1].clone() - m.clone() * ma[1].clone()],
        )
    };
    let mut guard = 0;
    loop {
        if norm_sqr(&b) < norm_sqr(&a) {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut ma, &mut mb);
        }
        let na = norm_sqr(&a);
        let d2 = dot(&a, &b) * T::from_i64(2);
        if d2.abs() <= na.clone() + T::tolerance() * na.clone() {
            break;
        }
        let m = (dot(&a, &b) / na).round();
        let (nb, nmb) = step(&a, &b, &ma, &mb, &m);
        b = nb;
        mb = nmb;
        guard += 1;
        if guard > 10_000 {
            return Err(Error::NumericFailure {
                context: "lattice reduction",
                residual: f64::NAN,
            });
        }
    }
    if norm_sqr(&b) < norm_sqr(&a) {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut ma, &mut mb);
    }
    if cross(&a, &b) < zero {
        b = -b;
        mb = [-mb[0].clone(), -mb[1].clone()];
    }

    // Boundary tie-breaks: Re tau = -1/2 -> +1/2, |tau| = 1 with Re tau < 0 -> (b, -a).
    let na = norm_sqr(&a);
    let d = dot(&a, &b);
    if is_zero_rel(&(d.clone() * T::from_i64(2) + na.clone()), &na) {
        b = b.clone() + a.clone();
        mb = [mb[0].clone() + ma[0].clone(), mb[1].clone() + ma[1].clone()];
    }
    let d = dot(&a, &b);
    if is_zero_rel(&(norm_sqr(&b) - na.clone()), &na) && d < zero && !is_zero_rel(&d, &na) {
        let (na_, nb_) = (b.clone(), -a.clone());
        let (nma, nmb) = (mb.clone(), [-ma[0].clone(), -ma[1].clone()]);
        a = na_;
        b = nb_;
        ma = nma;
        mb = nmb;
    }

    // Choose the representative of w1 among the lattice rotations.
    let na = norm_sqr(&a);
    let d = dot(&a, &b);
    let equal_len = is_zero_rel(&(norm_sqr(&b) - na.clone()), &na);
    let sym = if equal_len && is_zero_rel(&d, &na) {
        4
    } else if equal_len && is_zero_rel(&(d.clone() * T::from_i64(2) - na.clone()), &na) {
        6
    } else {
        2
    };
    let tol = T::tolerance() * na.clone();
    let in_sector = |w: &Complex<T>| -> bool {
        let pos = |x: T| x > tol.clone();
        let near_zero = |x: &T| x.abs() <= tol.clone();
        match sym {
            4 => pos(w.re.clone()) && !pos(-w.im.clone()),
            6 => {
                let h = w.im.clone() * w.im.clone() - T::from_i64(3) * w.re.clone() * w.re.clone();
                pos(w.re.clone()) && !pos(-w.im.clone()) && pos(-h)
            }
            _ => pos(w.re.clone()) || (near_zero(&w.re) && pos(w.im.clone())),
        }
    };
    let mut cur = (a, b, ma, mb);
    for _ in 0..sym {
        if in_sector(&cur.0) {
            return Ok((LatticeBasis { w1: cur.0, w2: cur.1 }, [cur.2, cur.3]));
        }
        cur = match sym {
            // multiplication by i: (w1, w2) -> (w2, -w1)
            4 => {
                let (a, b, ma, mb) = cur;
                (b, -a, mb, [-ma[0].clone(), -ma[1].clone()])
            }
            // multiplication by exp(i pi/3): (w1, w2) -> (w2, w2 - w1)
            6 => {
                let (a, b, ma, mb) = cur;
                let nb = b.clone() - a;
                let nmb = [mb[0].clone() - ma[0].clone(), mb[1].clone() - ma[1].clone()];
                (b, nb, mb, nmb)
            }
            _ => {
                let (a, b, ma, mb) = cur;
                (-a, -b, [-ma[0].clone(), -ma[1].clone()], [-mb[0].clone(), -mb[1].clone()])
            }
        };
    }
    // Rounding can leave every rotation marginally outside the sector.
    Ok((LatticeBasis { w1: cur.0, w2: cur.1 }, [cur.2, cur.3]))
}

/// Canonical reduced basis of `Zu + Zv`.
pub fn reduce_basis<T: Scalar>(u: &Complex<T>, v: &Complex<T>) -> Result<LatticeBasis<T>> {
    reduce_with_transform(u, v).map(|(b, _)| b)
}
