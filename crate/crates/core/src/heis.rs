//! The Heisenberg group `H = C x R` and its automorphisms.
//!
//! The product is `(z,t)(z',t') = (z+z', t+t' + Im(conj(z) z')/2)`.

use num_complex::Complex;
use crate::scalar::Scalar;

/// `Im(conj(a) b)`, the symplectic form on `C = R^2`.
pub fn cross<T: Scalar>(a: &Complex<T>, b: &Complex<T>) -> T {
    a.re.clone() * b.im.clone() - a.im.clone() * b.re.clone()
}

/// `Re(conj(a) b)`.
pub fn dot<T: Scalar>(a: &Complex<T>, b: &Complex<T>) -> T {
    a.re.clone() * b.re.clone() + a.im.clone() * b.im.clone()
}

pub fn norm_sqr<T: Scalar>(a: &Complex<T>) -> T {
    dot(a, a)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeisPoint<T = f64> {
    pub z: Complex<T>,
    pub t: T,
}

impl<T: Scalar> HeisPoint<T> {
    pub fn new(z: Complex<T>, t: T) -> Self {
        HeisPoint { z, t }
    }

    pub fn from_parts(x: T, y: T, t: T) -> Self {
        HeisPoint {
            z: Complex::new(x, y),
            t,
        }
    }

    pub fn identity() -> Self {
        HeisPoint {
            z: Complex::new(T::zero(), T::zero()),
            t: T::zero(),
        }
    }

    pub fn central(t: T) -> Self {
        HeisPoint {
            z: Complex::new(T::zero(), T::zero()),
            t,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = self.t.clone() + other.t.clone() + cross(&self.z, &other.z) * T::half();
        HeisPoint {
            z: self.z.clone() + other.z.clone(),
            t,
        }
    }

    pub fn inverse(&self) -> Self {
        HeisPoint {
            z: -self.z.clone(),
            t: -self.t.clone(),
        }
    }

    /// `self * other * self^-1 * other^-1`, which equals `(0, Im(conj(z) z'))`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    /// `k`-th power; one-parameter subgroups through the origin are straight lines,
    /// so this is just `(kz, kt)`.
    pub fn pow(&self, k: i64) -> Self {
        let k = T::from_i64(k);
        HeisPoint {
            z: Complex::new(self.z.re.clone() * k.clone(), self.z.im.clone() * k.clone()),
            t: self.t.clone() * k,
        }
    }

    pub fn project(&self) -> Complex<T> {
        self.z.clone()
    }

    pub fn is_identity(&self) -> bool {
        self.z.re.is_zero_tol() && self.z.im.is_zero_tol() && self.t.is_zero_tol()
    }

    pub fn is_central(&self) -> bool {
        self.z.re.is_zero_tol() && self.z.im.is_zero_tol()
    }

    pub fn to_f64(&self) -> HeisPoint<f64> {
        HeisPoint {
            z: Complex::new(self.z.re.to_f64(), self.z.im.to_f64()),
            t: self.t.to_f64(),
        }
    }

    /// Upper unitriangular matrix `[[1, x, t + xy/2], [0, 1, y], [0, 0, 1]]`.
    pub fn to_matrix(&self) -> [[T; 3]; 3] {
        let x = self.z.re.clone();
        let y = self.z.im.clone();
        let corner = self.t.clone() + x.clone() * y.clone() * T::half();
        [
            [T::one(), x, corner],
            [T::zero(), T::one(), y],
            [T::zero(), T::zero(), T::one()],
        ]
    }

    pub fn from_matrix(m: &[[T; 3]; 3]) -> Self {
        let x = m[0][1].clone();
        let y = m[1][2].clone();
        let t = m[0][2].clone() - x.clone() * y.clone() * T::half();
        HeisPoint::from_parts(x, y, t)
    }
}

impl HeisPoint<f64> {
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.z - other.z).norm() <= tol && (self.t - other.t).abs() <= tol
    }

    /// Gauge length `|z| + |t|`.
    pub fn ell(&self) -> f64 {
        self.z.norm() + self.t.abs()
    }
}

pub fn heis_mul<T: Scalar>(a: &HeisPoint<T>, b: &HeisPoint<T>) -> HeisPoint<T> {
    a.mul(b)
}

pub fn heis_inverse<T: Scalar>(a: &HeisPoint<T>) -> HeisPoint<T> {
    a.inverse()
}

pub fn heis_commutator<T: Scalar>(a: &HeisPoint<T>, b: &HeisPoint<T>) -> HeisPoint<T> {
    a.commutator(b)
}

pub fn heis_project<T: Scalar>(a: &HeisPoint<T>) -> Complex<T> {
    a.project()
}

pub type Mat2<T> = [[T; 2]; 2];

pub fn mat_identity<T: Scalar>() -> Mat2<T> {
    [[T::one(), T::zero()], [T::zero(), T::one()]]
}

pub fn mat_mul<T: Scalar>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    let e = |i: usize, j: usize| {
        a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone()
    };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_det<T: Scalar>(a: &Mat2<T>) -> T {
    a[0][0].clone() * a[1][1].clone() - a[0][1].clone() * a[1][0].clone()
}

pub fn mat_inverse<T: Scalar>(a: &Mat2<T>) -> Option<Mat2<T>> {
    let d = mat_det(a);
    if d.is_zero_tol() {
        return None;
    }
    Some([
        [a[1][1].clone() / d.clone(), -a[0][1].clone() / d.clone()],
        [-a[1][0].clone() / d.clone(), a[0][0].clone() / d],
    ])
}

/// Real-linear action on `C = R^2`: `x + iy -> (ax + by) + i(cx + dy)`.
pub fn mat_apply<T: Scalar>(g: &Mat2<T>, z: &Complex<T>) -> Complex<T> {
    Complex::new(
        g[0][0].clone() * z.re.clone() + g[0][1].clone() * z.im.clone(),
        g[1][0].clone() * z.re.clone() + g[1][1].clone() * z.im.clone(),
    )
}

/// Automorphism `Phi_{w,g}`: the linear part `g` acts first, then the inner
/// automorphism of `(w, *)`.
///
/// The order matters for [`HeisAut::compose`]:
/// `Phi_{w,g} . Phi_{w',g'} = Phi_{w + g(w'), g g'}`. Storing the inner part
/// first would change that law.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisAut<T = f64> {
    pub w: Complex<T>,
    pub g: Mat2<T>,
}

impl<T: Scalar> HeisAut<T> {
    pub fn new(w: Complex<T>, g: Mat2<T>) -> Self {
        HeisAut { w, g }
    }

    pub fn identity() -> Self {
        HeisAut {
            w: Complex::new(T::zero(), T::zero()),
            g: mat_identity(),
        }
    }

    pub fn inner(w: Complex<T>) -> Self {
        HeisAut {
            w,
            g: mat_identity(),
        }
    }

    pub fn linear(g: Mat2<T>) -> Self {
        HeisAut {
            w: Complex::new(T::zero(), T::zero()),
            g,
        }
    }

    /// `(z,t) -> (sz, s^2 t)`.
    pub fn dilation(s: T) -> Self {
        HeisAut::linear([[s.clone(), T::zero()], [T::zero(), s]])
    }

    pub fn det(&self) -> T {
        mat_det(&self.g)
    }

    pub fn apply(&self, h: &HeisPoint<T>) -> HeisPoint<T> {
        let z = mat_apply(&self.g, &h.z);
        // Int_w(z, t) = (z, t + Im(conj(w) z))
        let t = self.det() * h.t.clone() + cross(&self.w, &z);
        HeisPoint { z, t }
    }

    pub fn compose(&self, other: &Self) -> Self {
        HeisAut {
            w: self.w.clone() + mat_apply(&self.g, &other.w),
            g: mat_mul(&self.g, &other.g),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let gi = mat_inverse(&self.g)?;
        let w = -mat_apply(&gi, &self.w);
        Some(HeisAut { w, g: gi })
    }

    /// `Phi_{w,g} -> Phi_{w/n, g}`.
    pub fn psi_n(&self, n: u64) -> Self {
        let n = T::from_i64(n as i64);
        HeisAut {
            w: Complex::new(self.w.re.clone() / n.clone(), self.w.im.clone() / n),
            g: self.g.clone(),
        }
    }

    pub fn to_f64(&self) -> HeisAut<f64> {
        let g = [
            [self.g[0][0].to_f64(), self.g[0][1].to_f64()],
            [self.g[1][0].to_f64(), self.g[1][1].to_f64()],
        ];
        HeisAut {
            w: Complex::new(self.w.re.to_f64(), self.w.im.to_f64()),
            g,
        }
    }
}

impl HeisAut<f64> {
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.w - other.w).norm() <= tol
            && (0..2).all(|i| (0..2).all(|j| (self.g[i][j] - other.g[i][j]).abs() <= tol))
    }
}

pub fn aut_apply<T: Scalar>(phi: &HeisAut<T>, h: &HeisPoint<T>) -> HeisPoint<T> {
    phi.apply(h)
}

pub fn aut_compose<T: Scalar>(phi: &HeisAut<T>, psi: &HeisAut<T>) -> HeisAut<T> {
    phi.compose(psi)
}

pub fn aut_inverse<T: Scalar>(phi: &HeisAut<T>) -> Option<HeisAut<T>> {
    phi.inverse()
}

pub fn psi_n<T: Scalar>(phi: &HeisAut<T>, n: u64) -> HeisAut<T> {
    phi.psi_n(n)
}
