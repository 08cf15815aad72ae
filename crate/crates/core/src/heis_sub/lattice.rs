//! Lattices in `H` in fibre coordinates over their projection.
//!
//! A lattice with projection `L = Z w1 + Z w2` (reduced, positively oriented,
//! coarea `A`) and index `n` is generated by `(w1, r A)`, `(w2, r' A)` and
//! `(0, A/n)`. Its elements are
//! `(x w1 + y w2, A (x r + y r' + xy/2 + s/n))` for integers `x, y, s`, and
//! `(r, r')` only matters modulo `1/n`.

use num_complex::Complex;

use crate::complex::{reduce_with_transform, LatticeBasis};
use crate::error::{Error, Result};
use crate::heis::{cross, mat_det, mat_inverse, HeisAut, HeisPoint};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeN<T = f64> {
    pub n: u64,
    pub basis: LatticeBasis<T>,
    pub r: T,
    pub rp: T,
}

fn to_u64<T: Scalar>(x: &T, what: &str) -> Result<u64> {
    if !x.is_integer_tol() || x.round() < T::one() {
        return Err(Error::Inconsistent(format!("{what} is not a positive integer: {x:?}")));
    }
    Ok(x.round().to_f64() as u64)
}

impl<T: Scalar> LatticeN<T> {
    /// The lattice generated by `(u, r A)`, `(v, r' A)`, `(0, A/n)` with
    /// `A = Im(conj(u) v) > 0`; any offsets are accepted and reduced.
    pub fn from_offsets(u: &Complex<T>, v: &Complex<T>, n: u64, r: T, rp: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("index n must be at least 1"));
        }
        if !(cross(u, v) > T::zero()) {
            return Err(Error::param("fibre coordinates need a positively oriented basis"));
        }
        let (basis, m) = reduce_with_transform(u, v)?;
        let half = T::half();
        let lift = |a: &T, b: &T| {
            a.clone() * r.clone() + b.clone() * rp.clone() + a.clone() * b.clone() * half.clone()
        };
        let step = T::one() / T::from_i64(n as i64);
        Ok(LatticeN {
            n,
            r: lift(&m[0][0], &m[0][1]).rem_euclid(&step),
            rp: lift(&m[1][0], &m[1][1]).rem_euclid(&step),
            basis,
        })
    }

    /// `Lambda_n`: generated by `(1, 0)`, `(i, 0)`, `(0, 1/n)`.
    pub fn standard(n: u64) -> Result<Self> {
        let (one, zero) = (T::one(), T::zero());
        Self::from_offsets(
            &Complex::new(one.clone(), zero.clone()),
            &Complex::new(zero.clone(), one),
            n,
            zero.clone(),
            zero,
        )
    }

    /// `Lambda'_n`: generated by `(1, 1/2)`, `(i, 1/2)`, `(0, 1/n)`.
    pub fn shifted(n: u64) -> Result<Self> {
        let (one, zero) = (T::one(), T::zero());
        Self::from_offsets(
            &Complex::new(one.clone(), zero.clone()),
            &Complex::new(zero, one),
            n,
            T::half(),
            T::half(),
        )
    }

    pub fn coarea(&self) -> T {
        self.basis.coarea()
    }

    /// Smallest positive central element `A/n`.
    pub fn central_step(&self) -> T {
        self.coarea() / T::from_i64(self.n as i64)
    }

    pub fn element(&self, x: &T, y: &T, s: &T) -> HeisPoint<T> {
        let a = self.coarea();
        let t = a
            * (x.clone() * self.r.clone()
                + y.clone() * self.rp.clone()
                + x.clone() * y.clone() * T::half()
                + s.clone() / T::from_i64(self.n as i64));
        HeisPoint::new(self.basis.combo(x.clone(), y.clone()), t)
    }

    pub fn generators(&self) -> [HeisPoint<T>; 3] {
        let (one, zero) = (T::one(), T::zero());
        [
            self.element(&one, &zero, &zero),
            self.element(&zero, &one, &zero),
            self.element(&zero, &zero, &one),
        ]
    }

    /// Integer coordinates `(x, y, s)` of `h`, if `h` is in the lattice.
    pub fn coordinates(&self, h: &HeisPoint<T>) -> Option<(T, T, T)> {
        let (x, y) = self.basis.coords(&h.z);
        if !x.is_integer_tol() || !y.is_integer_tol() {
            return None;
        }
        let (x, y) = (x.round(), y.round());
        let a = self.coarea();
        let nf = T::from_i64(self.n as i64);
        let s = nf
            * (h.t.clone() / a
                - x.clone() * self.r.clone()
                - y.clone() * self.rp.clone()
                - x.clone() * y.clone() * T::half());
        s.is_integer_tol().then(|| (x, y, s.round()))
    }

    pub fn contains(&self, h: &HeisPoint<T>) -> bool {
        self.coordinates(h).is_some()
    }

    pub fn to_f64(&self) -> LatticeN<f64> {
        LatticeN {
            n: self.n,
            basis: self.basis.to_f64(),
            r: self.r.to_f64(),
            rp: self.rp.to_f64(),
        }
    }

    /// Fibre point in the index-one model: the bundle isomorphism to index one
    /// sends the `Lambda'_n` basepoint `(1/2, 1/2)` to `(1/2, 1/2)` and scales
    /// offsets from it by `n`.
    pub fn torus_point(&self) -> (T, T) {
        let nf = T::from_i64(self.n as i64);
        let one = T::one();
        let f = |r: &T| (T::half() + nf.clone() * (r.clone() - T::half())).rem_euclid(&one);
        (f(&self.r), f(&self.rp))
    }
}

/// The lattice generated by `a`, `b` and, if given, the central element
/// `(0, c)`; without `c` the centre of the group is its commutator subgroup.
pub fn lattice_from_generators<T: Scalar>(
    a: &HeisPoint<T>,
    b: &HeisPoint<T>,
    central: Option<&T>,
) -> Result<LatticeN<T>> {
    let mut b = b.clone();
    let mut area = cross(&a.z, &b.z);
    if area.is_zero_tol() {
        return Err(Error::DegenerateLattice);
    }
    if area < T::zero() {
        b = b.inverse();
        area = -area;
    }
    let step = match central {
        None => area.clone(),
        Some(c) => {
            if c.is_zero_tol() {
                return Err(Error::param("central generator must be nonzero"));
            }
            T::real_gcd(&area, c).ok_or_else(|| {
                Error::param("central generator is incommensurable with the commutator; the group is not discrete")
            })?
        }
    };
    let n = to_u64(&(area.clone() / step), "index")?;
    LatticeN::from_offsets(&a.z, &b.z, n, a.t.clone() / area.clone(), b.t.clone() / area)
}

/// Lattice with positively oriented basis `basis` and offsets in `[0, 1/n)`.
pub fn lattice_from_coords<T: Scalar>(basis: &LatticeBasis<T>, n: u64, r: T, rp: T) -> Result<LatticeN<T>> {
    if n == 0 {
        return Err(Error::param("index n must be at least 1"));
    }
    let step = T::one() / T::from_i64(n as i64);
    for x in [&r, &rp] {
        if *x < T::zero() || *x >= step {
            return Err(Error::param(format!("fibre offset {x:?} outside [0, 1/{n})")));
        }
    }
    LatticeN::from_offsets(&basis.w1, &basis.w2, n, r, rp)
}

/// `(L, r, r', n)`.
pub fn fibration_coords<T: Scalar>(c: &LatticeN<T>) -> (LatticeBasis<T>, T, T, u64) {
    (c.basis.clone(), c.r.clone(), c.rp.clone(), c.n)
}

/// Image of a lattice under an automorphism, in canonical form.
pub fn apply_aut_lattice<T: Scalar>(phi: &HeisAut<T>, c: &LatticeN<T>) -> Result<LatticeN<T>> {
    let [a, b, z] = c.generators();
    let (a, b, z) = (phi.apply(&a), phi.apply(&b), phi.apply(&z));
    let out = lattice_from_generators(&a, &b, Some(&z.t.abs()))?;
    if out.n != c.n {
        return Err(Error::Inconsistent(format!("index changed from {} to {} under an automorphism", c.n, out.n)));
    }
    Ok(out)
}

/// An automorphism taking `c` to `Lambda_n`: first the linear map sending the
/// reduced basis to `(1, i)`, then the inner automorphism that clears the
/// central offsets of the two generators.
pub fn normalize_lattice<T: Scalar>(c: &LatticeN<T>) -> (HeisAut<T>, u64) {
    let g = mat_inverse(&c.basis.matrix()).expect("reduced basis is nondegenerate");
    let w = Complex::new(-c.rp.clone(), c.r.clone());
    (HeisAut::new(w, g), c.n)
}

/// Membership in the group of automorphisms `Phi_{w,g}` with
/// `w` in `(1/n Z)^2` and `g` in `GL_2(Z)` (`SL_2(Z)` if `unimodular_only`),
/// the stabilizer of `Lambda'_n`.
pub fn stabilizer_contains<T: Scalar>(phi: &HeisAut<T>, n: u64, unimodular_only: bool) -> bool {
    let nf = T::from_i64(n as i64);
    let w_ok = (phi.w.re.clone() * nf.clone()).is_integer_tol() && (phi.w.im.clone() * nf).is_integer_tol();
    let g_ok = phi.g.iter().flatten().all(|x| x.is_integer_tol());
    let det = mat_det(&phi.g);
    let det_ok = if unimodular_only {
        (det - T::one()).is_zero_tol()
    } else {
        (det.abs() - T::one()).is_zero_tol()
    };
    w_ok && g_ok && det_ok
}
