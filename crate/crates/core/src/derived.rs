//! Codes derived from the self-orthogonal constructions: complementary-dual
//! codes via the `[I_k | G]` extension, quantum code parameters through the
//! nested-pair construction with the repetition-code dual, and
//! sphere-packing (Hamming) verdicts, classical and quantum.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{dual_distance_upto, is_self_orthogonal, DualDistance, LinearCode};

#[derive(Debug, Error)]
pub enum DerivedError {
    #[error("input code is not self-orthogonal")]
    NotSelfOrthogonal,
    #[error("generator matrix does not have full row rank")]
    NotFullRank,
    #[error("nested-pair dimension gap violated: need k1 + 2 <= k2")]
    SteaneDimensionGap,
    #[error("extension is not complementary-dual")]
    NotLcd,
}

/// Bound-relative optimality verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundVerdict {
    HammingOptimal,
    HammingAlmostOptimal,
    Below,
}

/// Classical code parameters with derived flags.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeParams {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d: u32,
    pub self_orthogonal: bool,
    pub lcd: bool,
    pub bound_verdict: BoundVerdict,
}

/// Quantum code parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuantumParams {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d: u32,
    pub pure: bool,
    pub bound_verdict: BoundVerdict,
}

/// Extends a self-orthogonal `[e, k]` code to the `[e + k, k]`
/// complementary-dual code with generator `[I_k | G]`; the Gram matrix of
/// the extension is `I + G G^T = I`, verified nonsingular.
pub fn lcd_extend(code: &LinearCode) -> Result<LinearCode, DerivedError> {
    if !is_self_orthogonal(code) {
        return Err(DerivedError::NotSelfOrthogonal);
    }
    if code.dimension != code.gen.len() {
        return Err(DerivedError::NotFullRank);
    }
    let k = code.gen.len();
    let mut gen = Vec::with_capacity(k);
    for (r, row) in code.gen.iter().enumerate() {
        let mut new_row = vec![0u8; k + code.length];
        new_row[r] = 1;
        new_row[k..].copy_from_slice(row);
        gen.push(new_row);
    }
    let extended = LinearCode {
        field: code.field.clone(),
        length: code.length + k,
        rows: k,
        dimension: k,
        gen,
        labels: Vec::new(),
    };
    // Complementary-dual check: G' G'^T must be nonsingular. With a zero
    // input Gram it equals the identity; verify rather than assume.
    let f = &extended.field;
    let mut gram = vec![vec![0u8; k]; k];
    for r in 0..k {
        for c in 0..k {
            let mut acc = 0u32;
            for i in 0..extended.length {
                acc = f.add(
                    acc,
                    f.mul(u32::from(extended.gen[r][i]), u32::from(extended.gen[c][i])),
                );
            }
            gram[r][c] = acc as u8;
        }
    }
    if matrix_rank(f, &gram) != k {
        return Err(DerivedError::NotLcd);
    }
    Ok(extended)
}

fn matrix_rank(f: &std::sync::Arc<crate::galois::Field>, m: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = m.to_vec();
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let Some(pivot) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            col += 1;
            continue;
        };
        m.swap(rank, pivot);
        let inv = f.inv(u32::from(m[rank][col]));
        for c in col..ncols {
            m[rank][c] = f.mul(inv, u32::from(m[rank][c])) as u8;
        }
        for r in 0..nrows {
            if r != rank && m[r][col] != 0 {
                let factor = u32::from(m[r][col]);
                for c in col..ncols {
                    let sub = f.mul(factor, u32::from(m[rank][c]));
                    m[r][c] = f.sub(u32::from(m[r][c]), sub) as u8;
                }
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Quantum code from the nested pair `C <= C^perp <= 1^perp` built on a
/// self-orthogonal `[e, k]` input containing the all-one word: parameters
/// `[[e, e - k - 1, min(d1, 3)]]` with `d1` the dual distance of the input
/// (the second code has distance 2, and `ceil((q+1)/q * 2) = 3` for all q).
pub fn steane_quantum(code: &LinearCode) -> Result<QuantumParams, DerivedError> {
    if !is_self_orthogonal(code) {
        return Err(DerivedError::NotSelfOrthogonal);
    }
    let e = code.length;
    let k1 = e - code.dimension; // dim of C1 = dual of the input
    let k2 = e - 1; // dual of the repetition code
    if k1 + 2 > k2 {
        return Err(DerivedError::SteaneDimensionGap);
    }
    let d1 = match dual_distance_upto(code, 3) {
        DualDistance::Exact(d) => d,
        DualDistance::AtLeast(d) => d,
    };
    // d2 = 2, and ceil((q+1)/q * 2) = 3 for every q >= 2.
    let d = d1.min(3);
    let q = code.q();
    let n = e;
    let k = k1 + k2 - e;
    let maxd = quantum_hamming_max_d(n, k, q);
    let verdict = if d == maxd {
        BoundVerdict::HammingOptimal
    } else if d + 1 == maxd {
        BoundVerdict::HammingAlmostOptimal
    } else {
        BoundVerdict::Below
    };
    Ok(QuantumParams {
        q,
        n,
        k,
        d,
        pure: true,
        bound_verdict: verdict,
    })
}

/// `ceil((q + 1) / q * d2)` as used by the nested-pair distance bound.
pub fn steane_distance_term(q: u64, d2: u64) -> u64 {
    ((q + 1) * d2).div_ceil(q)
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

fn ball_fits(n: usize, k: usize, weight_base: &BigInt, q: u64, d: u32) -> bool {
    let radius = ((d as i64 - 1) / 2) as usize;
    let mut sum = BigInt::zero();
    let budget = BigInt::from(q).pow((n - k) as u32);
    for i in 0..=radius {
        sum += binom(n, i) * weight_base.pow(i as u32);
        if sum > budget {
            return false;
        }
    }
    sum <= budget
}

/// Largest `d` for which the sphere-packing inequality
/// `q^{n-k} >= sum_{i <= (d-1)/2} C(n,i) (q-1)^i` holds, capped by the
/// Singleton bound `d <= n - k + 1` (the packing radius alone cannot
/// separate consecutive even/odd distances).
pub fn hamming_max_d(n: usize, k: usize, q: u64) -> u32 {
    assert!(k >= 1 && k <= n);
    let base = BigInt::from(q - 1);
    let singleton = (n - k + 1) as u32;
    let mut d = 1u32;
    while d < singleton && (d as usize) < n && ball_fits(n, k, &base, q, d + 1) {
        d += 1;
    }
    d
}

/// Largest `d` satisfying the quantum sphere-packing inequality with
/// `(q^2 - 1)^i` ball terms, capped by the quantum Singleton bound
/// `k <= n - 2(d - 1)`.
pub fn quantum_hamming_max_d(n: usize, k: usize, q: u64) -> u32 {
    assert!(k >= 1 && k <= n);
    let base = BigInt::from(q * q - 1);
    let singleton = ((n - k + 2) / 2) as u32;
    let mut d = 1u32;
    while d < singleton && (d as usize) < n && ball_fits(n, k, &base, q, d + 1) {
        d += 1;
    }
    d
}

/// Bound-relative classification of an `[n, k, d]_q` code.
pub fn classify(n: usize, k: usize, d: u32, q: u64) -> BoundVerdict {
    let maxd = hamming_max_d(n, k, q);
    if d == maxd {
        BoundVerdict::HammingOptimal
    } else if d + 1 == maxd {
        BoundVerdict::HammingAlmostOptimal
    } else {
        BoundVerdict::Below
    }
}
