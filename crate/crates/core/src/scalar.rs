//! Number types shared by the exact and floating-point code paths.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// A real field usable by the lattice and Heisenberg code.
///
/// `f64` is the analytic workhorse; `BigRational` gives exact canonical forms.
/// Comparisons against zero go through [`Scalar::is_zero_tol`] so the same
/// algorithm runs in both.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Neg<Output = Self> + Send + Sync {
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_f64_lossy(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn floor(&self) -> Self;
    fn abs(&self) -> Self;

    /// Absolute tolerance used for zero tests; zero for exact types.
    fn tolerance() -> Self;

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn round(&self) -> Self {
        (self.clone() + Self::half()).floor()
    }

    fn is_zero_tol(&self) -> bool {
        self.abs() <= Self::tolerance()
    }

    fn is_integer_tol(&self) -> bool {
        (self.clone() - self.round()).is_zero_tol()
    }

    /// Remainder in `[0, m)` for `m > 0`.
    fn rem_euclid(&self, m: &Self) -> Self {
        let q = (self.clone() / m.clone()).floor();
        let r = self.clone() - q * m.clone();
        if Self::EXACT {
            return r;
        }
        // snap values that sit a rounding error below m back to 0
        if (m.clone() - r.clone()).is_zero_tol() {
            Self::zero()
        } else {
            r
        }
    }

    /// Generator of `Z a + Z b` for commensurable `a`, `b`.
    ///
    /// Returns `None` when the pair is not commensurable (floating point only).
    fn real_gcd(a: &Self, b: &Self) -> Option<Self> {
        let mut x = a.abs();
        let mut y = b.abs();
        let scale = if x > y { x.clone() } else { y.clone() };
        let mut steps = 0;
        while !(y.clone() <= Self::tolerance() * (Self::one() + scale.clone())) {
            let r = x.rem_euclid(&y);
            x = y;
            y = r;
            steps += 1;
            if steps > 200 {
                return None;
            }
        }
        Some(x)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_f64_lossy(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn tolerance() -> Self {
        1e-9
    }
    fn round(&self) -> Self {
        f64::round(*self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_f64_lossy(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn floor(&self) -> Self {
        BigRational::floor(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn tolerance() -> Self {
        BigRational::zero()
    }
    fn is_zero_tol(&self) -> bool {
        self.is_zero()
    }
    fn is_integer_tol(&self) -> bool {
        self.is_integer()
    }
    fn real_gcd(a: &Self, b: &Self) -> Option<Self> {
        // gcd(p/q, r/s) = gcd(ps, rq) / qs
        let den = a.denom() * b.denom();
        let x = a.numer() * b.denom();
        let y = b.numer() * a.denom();
        Some(BigRational::new(x.gcd(&y), den))
    }
}

/// `p/q` helper for tests and constructors.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::from_ratio(num, den)
}

