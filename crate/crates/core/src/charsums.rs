//! Character-sum identities, each as a closed form paired with an
//! independent brute-force oracle over the same quantity.
//!
//! Closed forms and oracles deliberately share no code beyond the field and
//! cyclotomic primitives: the oracle always evaluates the defining sum (or
//! count) directly, so `closed == oracle` over a parameter grid is a genuine
//! computational certificate of each identity.

use std::sync::Arc;

use thiserror::Error;

use crate::cyclotomic::{gauss_sum, CycloInt};
use crate::galois::{Field, GaloisError};
use crate::spectral::QuarticUnit;

#[derive(Debug, Error)]
pub enum CharsumError {
    #[error("parameter violation: {0}")]
    ParamViolation(String),
    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoeff,
    #[error("identity requires odd characteristic")]
    EvenCharacteristic,
    #[error(transparent)]
    Galois(#[from] GaloisError),
}

fn viol(msg: impl Into<String>) -> CharsumError {
    CharsumError::ParamViolation(msg.into())
}

fn pw(p: u64, k: usize) -> i64 {
    (p as i64).pow(k as u32)
}

/// Membership of `x` in `w^i H_b` via the discrete logarithm.
fn in_power_coset(f: &Arc<Field>, x: u32, i: i64, b: u64) -> bool {
    match f.discrete_log(x) {
        None => false,
        Some(lg) => (lg as i64 - i).rem_euclid(b as i64) == 0,
    }
}

/// One square root of a nonzero square, by exhaustive search (fields here
/// are tiny). Both roots give the same coset memberships downstream.
fn sqrt_in(f: &Arc<Field>, x: u32) -> Option<u32> {
    (1..f.order() as u32).find(|&y| f.mul(y, y) == x)
}

/// Validates the `m = 2 j j'`, `b >= 2`, `b | p^j + 1`, `j` minimal shape.
fn check_coset_shape(f: &Arc<Field>, b: u64, j: usize, jp: usize) -> Result<(), CharsumError> {
    let p = f.p();
    let m = f.degree();
    if m != 2 * j * jp {
        return Err(viol(format!("m = {m} is not 2 * {j} * {jp}")));
    }
    if b < 2 {
        return Err(viol("b must be at least 2"));
    }
    if (pw(p, j) + 1) % b as i64 != 0 {
        return Err(viol(format!("b = {b} does not divide p^{j} + 1")));
    }
    for jj in 1..j {
        if (pw(p, jj) + 1) % b as i64 == 0 {
            return Err(viol(format!("j = {j} is not minimal for b = {b}")));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Weighted character sum over the multiplicative character.
// ---------------------------------------------------------------------------

/// Closed form of `sum_{x != 0} eta(x) zeta^{Tr(a x)}`:
/// `(-1)^{m-1} epsilon^m eta_m(a) sqrt(q)`, with `sqrt(q)` realized as
/// `p^{m/2}` for even `m` and `p^{(m-1)/2} g` for odd `m`.
pub fn quadratic_weighted_sum_closed(f: &Arc<Field>, a: u32) -> Result<CycloInt, CharsumError> {
    let p = f.p();
    if p == 2 {
        return Err(CharsumError::EvenCharacteristic);
    }
    let m = f.degree();
    let pc = p as u32;
    if a == 0 {
        return Ok(CycloInt::zero(pc));
    }
    let eta = f.eta(a)?;
    let unit = QuarticUnit::epsilon(p)
        .pow(m)
        .scale_sign(eta)
        .scale_sign(if m % 2 == 0 { -1 } else { 1 });
    if m % 2 == 0 {
        let v = unit.as_real().expect("even power is real") * pw(p, m / 2);
        Ok(CycloInt::from_int(pc, v))
    } else {
        let s = unit
            .mul(QuarticUnit::epsilon(p).inv())
            .as_real()
            .expect("real by parity");
        let g = gauss_sum(pc).expect("odd p");
        Ok(g.scale(s * pw(p, (m - 1) / 2)))
    }
}

/// Defining sum, term by term.
pub fn quadratic_weighted_sum_oracle(f: &Arc<Field>, a: u32) -> Result<CycloInt, CharsumError> {
    let p = f.p();
    if p == 2 {
        return Err(CharsumError::EvenCharacteristic);
    }
    let pc = p as u32;
    let mut acc = CycloInt::zero(pc);
    for x in 1..f.order() as u32 {
        let term = CycloInt::zeta_pow(pc, i64::from(f.trace_to_prime(f.mul(a, x))))
            .scale(i64::from(f.eta(x)?));
        acc = acc.add(&term).expect("same p");
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Character sum of a quadratic polynomial.
// ---------------------------------------------------------------------------

/// Closed form of `sum_x eta(a2 x^2 + a1 x + a0)`: `-eta(a2)` for nonzero
/// discriminant, `(q - 1) eta(a2)` otherwise.
pub fn quadratic_character_sum_closed(
    f: &Arc<Field>,
    a2: u32,
    a1: u32,
    a0: u32,
) -> Result<i64, CharsumError> {
    if f.p() == 2 {
        return Err(CharsumError::EvenCharacteristic);
    }
    if a2 == 0 {
        return Err(CharsumError::ZeroLeadingCoeff);
    }
    let disc = f.sub(f.mul(a1, a1), f.mul(f.from_int(4), f.mul(a0, a2)));
    let eta2 = i64::from(f.eta(a2)?);
    Ok(if disc == 0 {
        (f.order() as i64 - 1) * eta2
    } else {
        -eta2
    })
}

pub fn quadratic_character_sum_oracle(
    f: &Arc<Field>,
    a2: u32,
    a1: u32,
    a0: u32,
) -> Result<i64, CharsumError> {
    if f.p() == 2 {
        return Err(CharsumError::EvenCharacteristic);
    }
    if a2 == 0 {
        return Err(CharsumError::ZeroLeadingCoeff);
    }
    let mut s = 0i64;
    for x in 0..f.order() as u32 {
        let val = f.add(f.add(f.mul(a2, f.mul(x, x)), f.mul(a1, x)), a0);
        s += i64::from(f.eta(val)?);
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// Additive character sum over a power subgroup.
// ---------------------------------------------------------------------------

/// Closed form of `sum_{x in H_b} zeta^{Tr(a x)}` under the
/// `m = 2 j j'`, `b | p^j + 1` (j minimal) structure.
pub fn subgroup_sum_closed(
    f: &Arc<Field>,
    b: u64,
    j: usize,
    jp: usize,
    a: u32,
) -> Result<CycloInt, CharsumError> {
    check_coset_shape(f, b, j, jp)?;
    if a == 0 {
        return Err(viol("a must be nonzero"));
    }
    let p = f.p();
    let m = f.degree();
    let pc = p as u32;
    let ratio = (pw(p, j) + 1) / b as i64;
    let all_odd = p % 2 == 1 && jp % 2 == 1 && ratio % 2 == 1;
    let v = if all_odd {
        let delta = i64::from(in_power_coset(f, a, (b / 2) as i64, b));
        delta * pw(p, m / 2) - (pw(p, m / 2) + 1) / b as i64
    } else {
        let delta = i64::from(in_power_coset(f, a, 0, b));
        let sgn = if jp % 2 == 0 { 1 } else { -1 };
        delta * (-sgn) * pw(p, m / 2) + (sgn * pw(p, m / 2) - 1) / b as i64
    };
    Ok(CycloInt::from_int(pc, v))
}

pub fn subgroup_sum_oracle(
    f: &Arc<Field>,
    b: u64,
    j: usize,
    jp: usize,
    a: u32,
) -> Result<CycloInt, CharsumError> {
    check_coset_shape(f, b, j, jp)?;
    if a == 0 {
        return Err(viol("a must be nonzero"));
    }
    let pc = f.p() as u32;
    let q1 = f.order() - 1;
    let step = f.pow(f.primitive(), b);
    let mut acc = CycloInt::zero(pc);
    let mut h = 1u32;
    for _ in 0..q1 / b {
        let term = CycloInt::zeta_pow(pc, i64::from(f.trace_to_prime(f.mul(a, h))));
        acc = acc.add(&term).expect("same p");
        h = f.mul(h, step);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Cyclotomic intersection numbers.
// ---------------------------------------------------------------------------

/// `(|(S+1) cap S|, |(S+1) cap N|, |(N+1) cap S|, |(N+1) cap N|)` in closed
/// form, split on `q mod 4`.
pub fn square_shift_counts_closed(f: &Arc<Field>) -> Result<(u64, u64, u64, u64), CharsumError> {
    if f.p() == 2 {
        return Err(CharsumError::EvenCharacteristic);
    }
    let q = f.order();
    Ok(if q % 4 == 1 {
        ((q - 5) / 4, (q - 1) / 4, (q - 1) / 4, (q - 1) / 4)
    } else {
        ((q - 3) / 4, (q + 1) / 4, (q - 3) / 4, (q - 3) / 4)
    })
}

pub fn square_shift_counts_oracle(f: &Arc<Field>) -> Result<(u64, u64, u64, u64), CharsumError> {
    if f.p() == 2 {
        return Err(CharsumError::EvenCharacteristic);
    }
    let mut counts = [0u64; 4];
    for x in 1..f.order() as u32 {
        let ex = f.eta(x)?;
        let y = f.add(x, 1);
        let ey = f.eta(y)?;
        if ey == 0 {
            continue;
        }
        let idx = match (ex, ey) {
            (1, 1) => 0,
            (1, -1) => 1,
            (-1, 1) => 2,
            _ => 3,
        };
        counts[idx] += 1;
    }
    Ok((counts[0], counts[1], counts[2], counts[3]))
}

// ---------------------------------------------------------------------------
// Coset-restricted square indicator sum.
// ---------------------------------------------------------------------------

/// Closed form of `X = sum_z zeta^{Tr(-z beta)} [z^2 in w^i H_b]`, reduced
/// to plain subgroup sums by the parity of `i` and `b`.
pub fn square_coset_sum_closed(
    f: &Arc<Field>,
    b: u64,
    i: i64,
    beta: u32,
) -> Result<CycloInt, CharsumError> {
    let p = f.p();
    let q1 = f.order() - 1;
    if b == 0 || q1 % b != 0 {
        return Err(viol(format!("b = {b} must divide q - 1")));
    }
    let pc = p as u32;
    let w = f.primitive();
    let sum_over = |shift_exp: i64| -> CycloInt {
        let shift = f.pow_signed(w, shift_exp);
        let factor = f.mul(f.neg(shift), beta);
        let step = f.pow(w, b);
        let mut acc = CycloInt::zero(pc);
        let mut h = 1u32;
        for _ in 0..q1 / b {
            let term = CycloInt::zeta_pow(pc, i64::from(f.trace_to_prime(f.mul(factor, h))));
            acc = acc.add(&term).expect("same p");
            h = f.mul(h, step);
        }
        acc
    };
    if p == 2 {
        // X = sum over H_b of (-1)^{Tr(z w^i beta^2)}.
        let shift = f.pow_signed(w, i);
        let factor = f.mul(shift, f.mul(beta, beta));
        let step = f.pow(w, b);
        let mut acc = CycloInt::zero(pc);
        let mut h = 1u32;
        for _ in 0..q1 / b {
            let term = CycloInt::zeta_pow(pc, i64::from(f.trace_to_prime(f.mul(factor, h))));
            acc = acc.add(&term).expect("same p");
            h = f.mul(h, step);
        }
        return Ok(acc);
    }
    let i_even = i.rem_euclid(2) == 0;
    let b_even = b % 2 == 0;
    Ok(match (i_even, b_even) {
        (true, false) => sum_over(i / 2),
        (false, false) => sum_over((i + b as i64) / 2),
        (true, true) => sum_over(i / 2)
            .add(&sum_over((i + b as i64) / 2))
            .expect("same p"),
        (false, true) => CycloInt::zero(pc),
    })
}

/// Defining sum over the whole field with the square-membership test.
pub fn square_coset_sum_oracle(
    f: &Arc<Field>,
    b: u64,
    i: i64,
    beta: u32,
) -> Result<CycloInt, CharsumError> {
    let q1 = f.order() - 1;
    if b == 0 || q1 % b != 0 {
        return Err(viol(format!("b = {b} must divide q - 1")));
    }
    let pc = f.p() as u32;
    let mut acc = CycloInt::zero(pc);
    for z in 0..f.order() as u32 {
        let zsq = f.mul(z, z);
        if !in_power_coset(f, zsq, i, b) {
            continue;
        }
        let term = CycloInt::zeta_pow(pc, -i64::from(f.trace_to_prime(f.mul(z, beta))));
        acc = acc.add(&term).expect("same p");
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Quadratic root counts over a power coset.
// ---------------------------------------------------------------------------

/// Closed form of
/// `T = sum_{a in gamma H_b} #{y != 0 : c y^2 - beta y - a = 0}` under the
/// same `(j, j')` structure, with `c = F*(alpha)`.
pub fn coset_root_count_closed(
    f: &Arc<Field>,
    b: u64,
    j: usize,
    jp: usize,
    c: u32,
    beta: u32,
    gamma: u32,
) -> Result<i64, CharsumError> {
    check_coset_shape(f, b, j, jp)?;
    if gamma == 0 {
        return Err(viol("gamma must be nonzero"));
    }
    let p = f.p();
    let m = f.degree();
    let q = f.order() as i64;
    let lam = (q - 1) / b as i64;
    let sgn: i64 = if jp % 2 == 0 { 1 } else { -1 };
    let b_even = b % 2 == 0;

    if c == 0 {
        return Ok(if beta == 0 { 0 } else { lam });
    }
    let x = f.mul(f.inv(gamma), f.inv(c));
    if beta == 0 {
        if !b_even {
            return Ok(lam);
        }
        // gamma c^{-1} and gamma^{-1} c^{-1} share a square class.
        return Ok(if f.eta(x)? == 1 { 2 * lam } else { 0 });
    }
    if !b_even {
        // Odd b: one membership test decides between the two values.
        let inside = if p == 2 {
            in_power_coset(f, f.mul(x, f.mul(beta, beta)), 0, b)
        } else if f.eta(x)? == 1 {
            let root = sqrt_in(f, x).expect("square");
            in_power_coset(f, f.mul(beta, root), 0, b)
        } else {
            let xb = f.mul(x, f.pow(f.primitive(), b));
            let root = sqrt_in(f, xb).expect("made square by w^b");
            in_power_coset(f, f.mul(beta, root), 0, b)
        };
        let base = (sgn * pw(p, m / 2) + q - 2) / b as i64;
        return Ok(if inside {
            -sgn * pw(p, m / 2) + base
        } else {
            base
        });
    }
    // Even b (p odd).
    if f.eta(x)? == -1 {
        return Ok(lam);
    }
    let root = sqrt_in(f, x).expect("square");
    let inside = in_power_coset(f, f.mul(beta, root), 0, b / 2);
    let base = ((q - 1) + 2 * (sgn * pw(p, m / 2) - 1)) / b as i64;
    Ok(if inside {
        -sgn * pw(p, m / 2) + base
    } else {
        base
    })
}

/// Exhaustive count over `(a, y)` pairs.
pub fn coset_root_count_oracle(
    f: &Arc<Field>,
    b: u64,
    j: usize,
    jp: usize,
    c: u32,
    beta: u32,
    gamma: u32,
) -> Result<i64, CharsumError> {
    check_coset_shape(f, b, j, jp)?;
    if gamma == 0 {
        return Err(viol("gamma must be nonzero"));
    }
    let q1 = f.order() - 1;
    let step = f.pow(f.primitive(), b);
    let mut count = 0i64;
    let mut h = 1u32;
    for _ in 0..q1 / b {
        let a = f.mul(gamma, h);
        for y in 1..f.order() as u32 {
            let lhs = f.sub(f.sub(f.mul(c, f.mul(y, y)), f.mul(beta, y)), a);
            if lhs == 0 {
                count += 1;
            }
        }
        h = f.mul(h, step);
    }
    Ok(count)
}
