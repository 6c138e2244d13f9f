//! Exact arithmetic in `Z[zeta_p]` for a primitive p-th root of unity.
//!
//! Elements are written on the integral basis `{1, zeta, ..., zeta^{p-2}}`;
//! the relation `zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})` is applied
//! eagerly, so equality is coefficient-wise. All coefficients are
//! arbitrary-precision integers and nothing here ever touches floating point.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("operands have different root orders ({0} vs {1})")]
    PrimeMismatch(u32, u32),
    #[error("{0} is not an odd prime")]
    EvenCharacteristic(u32),
}

/// An element of `Z[zeta_p]` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycloInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CycloInt {
    pub fn zero(p: u32) -> CycloInt {
        CycloInt {
            p,
            coeffs: vec![BigInt::zero(); (p - 1) as usize],
        }
    }

    pub fn from_int<T: Into<BigInt>>(p: u32, v: T) -> CycloInt {
        let mut z = CycloInt::zero(p);
        z.coeffs[0] = v.into();
        z
    }

    /// Canonical form of `zeta^k` (`k` reduced mod `p`).
    pub fn zeta_pow(p: u32, k: i64) -> CycloInt {
        let k = k.rem_euclid(i64::from(p)) as u32;
        let mut z = CycloInt::zero(p);
        if k == p - 1 {
            for c in z.coeffs.iter_mut() {
                *c = BigInt::from(-1);
            }
        } else {
            z.coeffs[k as usize] = BigInt::one();
        }
        z
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_int(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn req(&self, other: &CycloInt) -> Result<(), CyclotomicError> {
        if self.p != other.p {
            return Err(CyclotomicError::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycloInt) -> Result<CycloInt, CyclotomicError> {
        self.req(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloInt { p: self.p, coeffs })
    }

    pub fn sub(&self, other: &CycloInt) -> Result<CycloInt, CyclotomicError> {
        self.req(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloInt { p: self.p, coeffs })
    }

    pub fn neg(&self) -> CycloInt {
        CycloInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale<T: Into<BigInt>>(&self, k: T) -> CycloInt {
        let k = k.into();
        CycloInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * &k).collect(),
        }
    }

    pub fn mul(&self, other: &CycloInt) -> Result<CycloInt, CyclotomicError> {
        self.req(other)?;
        let p = self.p as usize;
        // Accumulate on exponents 0..p (zeta^p = 1), then fold the p-1 bucket.
        let mut acc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = (i + j) % p;
                acc[e] += a * b;
            }
        }
        let top = acc.pop().unwrap(); // coefficient of zeta^{p-1}
        let mut coeffs = acc;
        for c in coeffs.iter_mut() {
            *c -= &top;
        }
        Ok(CycloInt { p: self.p, coeffs })
    }

    /// Multiplication by `zeta^k`: a coefficient rotation plus one reduction.
    pub fn mul_zeta_pow(&self, k: i64) -> CycloInt {
        let p = self.p as usize;
        let k = k.rem_euclid(self.p as i64) as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            acc[(i + k) % p] += c;
        }
        let top = acc.pop().unwrap();
        let mut coeffs = acc;
        for c in coeffs.iter_mut() {
            *c -= &top;
        }
        CycloInt { p: self.p, coeffs }
    }

    /// Complex conjugation `zeta -> zeta^{p-1}`.
    pub fn conj(&self) -> CycloInt {
        let p = self.p as usize;
        let mut acc = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            acc[(p - i) % p] += c;
        }
        let top = acc.pop().unwrap();
        let mut coeffs = acc;
        for c in coeffs.iter_mut() {
            *c -= &top;
        }
        CycloInt { p: self.p, coeffs }
    }

    /// `z * conj(z)`; for the elements handled here this is how squared
    /// magnitudes are compared exactly.
    pub fn norm_sq(&self) -> CycloInt {
        self.mul(&self.conj()).expect("same p")
    }
}

/// The quadratic Gauss sum `g = sum over x in F_p of zeta^{x^2}`.
///
/// Satisfies `g^2 = p` for `p = 1 mod 4` and `g^2 = -p` for `p = 3 mod 4`,
/// making it an exact stand-in for `epsilon * sqrt(p)`.
pub fn gauss_sum(p: u32) -> Result<CycloInt, CyclotomicError> {
    if p == 2 {
        return Err(CyclotomicError::EvenCharacteristic(p));
    }
    let mut acc = CycloInt::zero(p);
    for x in 0..u64::from(p) {
        let e = (x * x % u64::from(p)) as i64;
        acc = acc.add(&CycloInt::zeta_pow(p, e)).unwrap();
    }
    Ok(acc)
}

/// Finds the unique `k` with `z = zeta^k * base`, when it exists.
/// Uniqueness holds whenever `base` is nonzero.
pub fn match_unit_multiple(z: &CycloInt, base: &CycloInt) -> Option<u32> {
    if z.p() != base.p() {
        return None;
    }
    (0..z.p()).find(|&k| *z == base.mul_zeta_pow(i64::from(k)))
}
