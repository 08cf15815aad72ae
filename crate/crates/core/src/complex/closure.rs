//! Subgroup generated by finitely many rational vectors.
//!
//! Rational generators always generate a discrete group, found here by
//! integer row reduction after clearing denominators.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::reduce::{reduce_basis, LatticeBasis};
use super::subgroup::SubgroupC;
use crate::scalar::Scalar;

/// Exact closure of a rational generating set.
#[derive(Clone, Debug, PartialEq)]
pub enum RationalClosure {
    Trivial,
    Cyclic(Complex<BigRational>),
    Lattice(LatticeBasis<BigRational>),
}

impl RationalClosure {
    pub fn to_subgroup(&self) -> SubgroupC {
        let f = |z: &Complex<BigRational>| num_complex::Complex64::new(z.re.to_f64(), z.im.to_f64());
        match self {
            RationalClosure::Trivial => SubgroupC::Trivial,
            RationalClosure::Cyclic(w) => SubgroupC::cyclic(f(w)).expect("nonzero generator"),
            RationalClosure::Lattice(b) => SubgroupC::Lattice(b.to_f64()),
        }
    }

    pub fn coarea(&self) -> Option<BigRational> {
        match self {
            RationalClosure::Lattice(b) => Some(b.coarea()),
            _ => None,
        }
    }
}

/// `(g, s, t)` with `g = s a + t b = gcd(a, b) >= 0`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Hermite-style basis `[(a, b), (0, h)]` of the integer span; `a > 0` when present.
pub fn integer_span(vectors: &[(BigInt, BigInt)]) -> (Option<(BigInt, BigInt)>, BigInt) {
    let mut lead: Option<(BigInt, BigInt)> = None;
    let mut h = BigInt::zero();
    for (x, y) in vectors {
        match lead.take() {
            None => {
                if x.is_zero() {
                    h = h.gcd(y);
                } else if x.is_negative() {
                    lead = Some((-x, -y));
                } else {
                    lead = Some((x.clone(), y.clone()));
                }
            }
            Some((lx, ly)) => {
                if x.is_zero() {
                    h = h.gcd(y);
                    lead = Some((lx, ly));
                    continue;
                }
                let (g, s, t) = ext_gcd(&lx, x);
                let new_lead = (g.clone(), &s * &ly + &t * y);
                // (x/g) lead - (lx/g) v has zero first coordinate
                let rest = (x / &g) * &ly - (&lx / &g) * y;
                h = h.gcd(&rest);
                lead = Some(new_lead);
            }
        }
    }
    if let Some((_, b)) = lead.as_mut() {
        if !h.is_zero() {
            *b = b.mod_floor(&h);
        }
    }
    (lead, h)
}

pub fn closure_of_generators(gens: &[(BigRational, BigRational)]) -> RationalClosure {
    let mut den = BigInt::one();
    for (x, y) in gens {
        den = den.lcm(x.denom()).lcm(y.denom());
    }
    let ints: Vec<(BigInt, BigInt)> = gens
        .iter()
        .map(|(x, y)| {
            let sx = x * BigRational::from_integer(den.clone());
            let sy = y * BigRational::from_integer(den.clone());
            (sx.to_integer(), sy.to_integer())
        })
        .collect();
    let (lead, h) = integer_span(&ints);
    let d = BigRational::from_integer(den);
    let to_c = |x: BigInt, y: BigInt| {
        Complex::new(
            BigRational::from_integer(x) / d.clone(),
            BigRational::from_integer(y) / d.clone(),
        )
    };
    match (lead, h.is_zero()) {
        (None, true) => RationalClosure::Trivial,
        (None, false) => RationalClosure::Cyclic(to_c(BigInt::zero(), h.abs())),
        (Some((a, b)), true) => {
            let w = to_c(a, b);
            RationalClosure::Cyclic(if w.re.is_positive() || (w.re.is_zero() && w.im.is_positive()) {
                w
            } else {
                -w
            })
        }
        (Some((a, b)), false) => {
            let u = to_c(a, b);
            let v = to_c(BigInt::zero(), h);
            RationalClosure::Lattice(reduce_basis(&u, &v).expect("independent by construction"))
        }
    }
}
