//! Constructors for the explicit vectorial dual-bent families, with
//! per-family parameter validation and the predicted certification metadata
//! (which condition holds, the sign constant, and the exponents l, d).
//!
//! Families `Eq3`-`Eq5` land in a vector codomain through a balanced map and
//! satisfy the scalar-invariance condition; `Eq7`-`Eq11` are field-valued
//! with constant component sign; `Eq13`-`Eq15` are their odd-cofactor
//! analogues whose component sign varies with the quadratic character.

use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{Field, GaloisError, Space, TowerMap};
use crate::spectral::{mod_inverse, Codomain, Condition, QuarticUnit, VecFn};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("parameter violation: {0}")]
    ParamViolation(String),
    #[error("the supplied linearized polynomial does not permute its field")]
    NonPermutationL,
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error(transparent)]
    Galois(#[from] GaloisError),
}

fn viol(msg: impl Into<String>) -> CatalogError {
    CatalogError::ParamViolation(msg.into())
}

/// Which explicit family to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Eq3,
    Eq4,
    Eq5,
    Eq7,
    Eq8,
    Eq9,
    Eq10,
    Eq11,
    Eq13,
    Eq14,
    Eq15,
}

/// A field coefficient, either a raw element code or a power of the field's
/// primitive element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Code(u64),
    WPow { w_pow: i64 },
}

impl Coeff {
    pub fn resolve(&self, f: &Arc<Field>) -> Result<u32, CatalogError> {
        match *self {
            Coeff::Code(c) => {
                if c >= f.order() {
                    return Err(viol(format!("coefficient code {c} out of range")));
                }
                Ok(c as u32)
            }
            Coeff::WPow { w_pow } => {
                let q1 = f.order() - 1;
                let e = w_pow.rem_euclid(q1 as i64) as u64;
                Ok(f.pow(f.primitive(), e))
            }
        }
    }
}

/// How a balanced map is supplied.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub enum BalancedSpec {
    /// Projection onto the first `m` base-p coordinates.
    #[default]
    Default,
    /// Explicit table over the domain field, values in `[0, p^m)`.
    Table(Vec<u32>),
}

/// Linearized polynomial `L(x) = sum a_i x^{p^{m i}}` over a field, used as
/// the permutation part of the `Eq11`/`Eq15` families.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub enum LPolySpec {
    #[default]
    Identity,
    Coeffs(Vec<Coeff>),
}

/// Declarative description of one family instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub p: u64,
    pub t: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// First auxiliary degree (n' where the family has one).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<usize>,
    /// Second auxiliary degree (n'').
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Coeff>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Coeff>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Coeff>,
    /// `Eq9`/`Eq14`: the s quadratic coefficients; `Eq11`/`Eq15`: the three
    /// branch coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<Coeff>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub balanced: Option<BalancedSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub balanced2: Option<BalancedSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_poly: Option<LPolySpec>,
}

impl FamilySpec {
    fn n1(&self) -> Result<usize, CatalogError> {
        self.n1.ok_or_else(|| viol("missing n1"))
    }
    fn n2(&self) -> Result<usize, CatalogError> {
        self.n2.ok_or_else(|| viol("missing n2"))
    }
    fn n(&self) -> Result<usize, CatalogError> {
        self.n.ok_or_else(|| viol("missing n"))
    }
}

/// Predicted certification metadata for a built family instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub condition: Condition,
    pub eps_or_theta: QuarticUnit,
    pub l: Option<u64>,
    pub d: Option<u64>,
}

/// The balanced projection `F_{p^k} -> F_p^m` onto the first `m` base-p
/// coordinates: every fiber has exactly `p^{k-m}` points and `B(0) = 0`.
pub fn balanced_default(field: &Arc<Field>, m: usize) -> Result<Vec<u32>, CatalogError> {
    if m > field.degree() {
        return Err(viol(format!(
            "balanced map target m = {m} exceeds domain degree {}",
            field.degree()
        )));
    }
    let keep = field.p().pow(m as u32);
    Ok((0..field.order()).map(|c| (c % keep) as u32).collect())
}

fn resolve_balanced(
    spec: Option<&BalancedSpec>,
    field: &Arc<Field>,
    p: u64,
    m: usize,
) -> Result<Vec<u32>, CatalogError> {
    let cod_size = p.pow(m as u32);
    let table = match spec.unwrap_or(&BalancedSpec::Default) {
        BalancedSpec::Default => balanced_default(field, m)?,
        BalancedSpec::Table(t) => {
            if t.len() as u64 != field.order() {
                return Err(viol("balanced table length does not match the domain"));
            }
            if t.iter().any(|&v| u64::from(v) >= cod_size) {
                return Err(viol("balanced table value out of codomain range"));
            }
            t.clone()
        }
    };
    let mut fibers = vec![0u64; cod_size as usize];
    for &v in &table {
        fibers[v as usize] += 1;
    }
    let want = field.order() / cod_size;
    if field.order() % cod_size != 0 || fibers.iter().any(|&c| c != want) {
        return Err(viol("map is not balanced"));
    }
    Ok(table)
}

fn require_nonzero(code: u32, what: &str) -> Result<u32, CatalogError> {
    if code == 0 {
        return Err(viol(format!("{what} must be nonzero")));
    }
    Ok(code)
}

/// `u = p^{u0} mod (p^r - 1)` for some `u0` in `[0, r)`.
fn is_frobenius_power(u: u64, p: u64, r: usize) -> bool {
    let modulus = p.pow(r as u32) - 1;
    if modulus == 1 {
        return true;
    }
    let mut pw = 1u64;
    for _ in 0..r {
        if u % modulus == pw {
            return true;
        }
        pw = pw * p % modulus;
    }
    false
}

fn eta_unit(f: &Arc<Field>, code: u32) -> Result<i32, CatalogError> {
    let e = f.eta(code)?;
    if e == 0 {
        return Err(viol("coefficient must be nonzero"));
    }
    Ok(e)
}

/// Canonical `(l, d)` pair from `l - 1 = u`, reduced mod `p^m - 1` into
/// `[2, p^m]`.
fn canonical_exponents(u: u64, qn1: u64, qm1: u64) -> Result<(u64, u64), CatalogError> {
    if u.gcd(&qn1) != 1 {
        return Err(viol(format!("u = {u} is not coprime to {qn1}")));
    }
    let uprime = mod_inverse(u % qn1, qn1).expect("coprime");
    let lu = u % qm1;
    let du = uprime % qm1;
    if lu == 0 || du == 0 {
        return Err(viol("exponent collapses mod p^m - 1"));
    }
    Ok((lu + 1, du + 1))
}

/// Builds the family instance and returns the function together with its
/// predicted certification metadata.
pub fn build(spec: &FamilySpec) -> Result<(VecFn, Expected), CatalogError> {
    let p = spec.p;
    let t = spec.t;
    let m = spec.m;
    if m == 0 || t == 0 {
        return Err(viol("m and t must be positive"));
    }
    match spec.family {
        Family::Eq3 => {
            let np = spec.n1()?;
            if m >= np {
                return Err(viol(format!("requires m < n', got m = {m}, n' = {np}")));
            }
            if np % t != 0 {
                return Err(viol(format!("requires t | n', got t = {t}, n' = {np}")));
            }
            if p == 2 && m < 2 {
                return Err(viol("p = 2 requires m >= 2"));
            }
            let fld = Field::new(p, np, None)?;
            let alpha =
                require_nonzero(spec.alpha.unwrap_or(Coeff::Code(1)).resolve(&fld)?, "alpha")?;
            let b = resolve_balanced(spec.balanced.as_ref(), &fld, p, m)?;
            let space = Space::from_fields(t, vec![Arc::clone(&fld), Arc::clone(&fld)])?;
            let q = fld.order() as u32;
            let mut values = Vec::with_capacity((q as usize) * (q as usize));
            for x1 in 0..q {
                let ax1 = fld.mul(alpha, x1);
                for x2 in 0..q {
                    values.push(b[fld.mul(ax1, fld.inv(x2)) as usize]);
                }
            }
            let f = VecFn::new(space, Codomain::Vector { p, m }, values);
            Ok((
                f,
                Expected {
                    condition: Condition::I,
                    eps_or_theta: QuarticUnit::ONE,
                    l: None,
                    d: None,
                },
            ))
        }
        Family::Eq4 => {
            let np = spec.n1()?;
            let r = spec.r.ok_or_else(|| viol("missing r"))?;
            if np % r != 0 || m > r || m == np || np % t != 0 {
                return Err(viol("requires r | n', m <= r, m != n', t | n'".to_string()));
            }
            if p == 2 && m < 2 {
                return Err(viol("p = 2 requires m >= 2"));
            }
            let u = spec.u.ok_or_else(|| viol("missing u"))?;
            let qn1 = p.pow(np as u32) - 1;
            let qt1 = p.pow(t as u32) - 1;
            if u.gcd(&qn1) != 1 {
                return Err(viol(format!("requires gcd(u, p^n' - 1) = 1, got u = {u}")));
            }
            if qt1 > 1 && u % qt1 != 1 {
                return Err(viol(format!("requires u = 1 mod p^t - 1, got u = {u}")));
            }
            if !is_frobenius_power(u, p, r) {
                return Err(viol(format!("requires u = p^u0 mod p^r - 1, got u = {u}")));
            }
            let fld = Field::new(p, np, None)?;
            let fr = Field::new(p, r, None)?;
            let tower = TowerMap::new(&fr, &fld)?;
            let alpha =
                require_nonzero(spec.alpha.unwrap_or(Coeff::Code(1)).resolve(&fld)?, "alpha")?;
            let b = resolve_balanced(spec.balanced.as_ref(), &fr, p, m)?;
            let trace_tab = trace_table(&tower)?;
            let space = Space::from_fields(t, vec![Arc::clone(&fld), Arc::clone(&fld)])?;
            let q = fld.order() as u32;
            let mut values = Vec::with_capacity((q as usize) * (q as usize));
            for x1 in 0..q {
                let ax1 = fld.mul(alpha, x1);
                for x2 in 0..q {
                    let arg = fld.mul(ax1, fld.pow_signed(x2, -(u as i64)));
                    values.push(b[trace_tab[arg as usize] as usize]);
                }
            }
            let f = VecFn::new(space, Codomain::Vector { p, m }, values);
            Ok((
                f,
                Expected {
                    condition: Condition::I,
                    eps_or_theta: QuarticUnit::ONE,
                    l: None,
                    d: None,
                },
            ))
        }
        Family::Eq5 => {
            let np = spec.n1()?;
            let npp = spec.n2()?;
            let r = spec.r.ok_or_else(|| viol("missing r"))?;
            if m > np || m > r || npp % r != 0 || np % t != 0 || npp % t != 0 {
                return Err(viol(
                    "requires m <= n', m <= r, r | n'', t | n', t | n''".to_string(),
                ));
            }
            if p == 2 && m < 2 {
                return Err(viol("p = 2 requires m >= 2"));
            }
            let u = spec.u.ok_or_else(|| viol("missing u"))?;
            let qn1 = p.pow(npp as u32) - 1;
            let qt1 = p.pow(t as u32) - 1;
            if u.gcd(&qn1) != 1 {
                return Err(viol(format!("requires gcd(u, p^n'' - 1) = 1, got u = {u}")));
            }
            if qt1 > 1 && u % qt1 != 1 {
                return Err(viol(format!("requires u = 1 mod p^t - 1, got u = {u}")));
            }
            if !is_frobenius_power(u, p, r) {
                return Err(viol(format!("requires u = p^u0 mod p^r - 1, got u = {u}")));
            }
            let f1 = Field::new(p, np, None)?;
            let f2 = Field::new(p, npp, None)?;
            let fr = Field::new(p, r, None)?;
            let tower = TowerMap::new(&fr, &f2)?;
            let alpha =
                require_nonzero(spec.alpha.unwrap_or(Coeff::Code(1)).resolve(&f1)?, "alpha")?;
            let beta = require_nonzero(spec.beta.unwrap_or(Coeff::Code(1)).resolve(&f2)?, "beta")?;
            let b1 = resolve_balanced(spec.balanced.as_ref(), &f1, p, m)?;
            let b2 = resolve_balanced(spec.balanced2.as_ref(), &fr, p, m)?;
            let trace_tab = trace_table(&tower)?;
            let space = Space::from_fields(
                t,
                vec![
                    Arc::clone(&f1),
                    Arc::clone(&f1),
                    Arc::clone(&f2),
                    Arc::clone(&f2),
                ],
            )?;
            let cod = Codomain::Vector { p, m };
            let q1 = f1.order() as u32;
            let q2 = f2.order() as u32;
            let mut values = Vec::with_capacity(space.size() as usize);
            for x1 in 0..q1 {
                let ax1 = f1.mul(alpha, x1);
                for x2 in 0..q1 {
                    let left = b1[f1.mul(ax1, f1.inv(x2)) as usize];
                    for x3 in 0..q2 {
                        let bx3 = f2.mul(beta, x3);
                        for x4 in 0..q2 {
                            let arg = f2.mul(bx3, f2.pow_signed(x4, -(u as i64)));
                            let right = b2[trace_tab[arg as usize] as usize];
                            values.push(cod.add(left, right));
                        }
                    }
                }
            }
            let f = VecFn::new(space, cod, values);
            Ok((
                f,
                Expected {
                    condition: Condition::I,
                    eps_or_theta: QuarticUnit::ONE,
                    l: None,
                    d: None,
                },
            ))
        }
        Family::Eq7 => {
            let np = spec.n1()?;
            if m % t != 0 || np % m != 0 || m == np {
                return Err(viol("requires t | m, m | n', m != n'".to_string()));
            }
            if p == 2 && (m < 2 || m + t >= np) {
                return Err(viol("p = 2 requires m >= 2 and m + t < n'"));
            }
            let u = spec.u.unwrap_or(1);
            let qn1 = p.pow(np as u32) - 1;
            let qm1 = p.pow(m as u32) - 1;
            let (l, d) = canonical_exponents(u, qn1, qm1)?;
            let fld = Field::new(p, np, None)?;
            let fm = Field::new(p, m, None)?;
            let tower = TowerMap::new(&fm, &fld)?;
            let alpha =
                require_nonzero(spec.alpha.unwrap_or(Coeff::Code(1)).resolve(&fld)?, "alpha")?;
            let trace_tab = trace_table(&tower)?;
            let space = Space::from_fields(t, vec![Arc::clone(&fld), Arc::clone(&fld)])?;
            let q = fld.order() as u32;
            let mut values = Vec::with_capacity((q as usize) * (q as usize));
            for x1 in 0..q {
                let ax1 = fld.mul(alpha, x1);
                for x2 in 0..q {
                    values.push(trace_tab[fld.mul(ax1, fld.pow(x2, u)) as usize]);
                }
            }
            let f = VecFn::new(space, Codomain::Field(fm), values);
            Ok((
                f,
                Expected {
                    condition: Condition::II,
                    eps_or_theta: QuarticUnit::ONE,
                    l: Some(l),
                    d: Some(d),
                },
            ))
        }
        Family::Eq8 | Family::Eq13 => {
            let n = spec.n()?;
            if p == 2 {
                return Err(viol("quadratic-form families require odd p"));
            }
            if m % t != 0 || n % m != 0 {
                return Err(viol("requires t | m and m | n".to_string()));
            }
            match spec.family {
                Family::Eq8 => {
                    if n % (2 * m) != 0 || n == 2 * m {
                        return Err(viol("requires 2m | n and 2m != n".to_string()));
                    }
                }
                Family::Eq13 => {
                    let cof = n / m;
                    if cof < 3 || cof % 2 == 0 {
                        return Err(viol("requires n/m >= 3 odd".to_string()));
                    }
                    if p.pow(t as u32) == 3 && n == 3 {
                        return Err(viol("excludes (p^t, n) = (3, 3)".to_string()));
                    }
                }
                _ => unreachable!(),
            }
            let fld = Field::new(p, n, None)?;
            let fm = Field::new(p, m, None)?;
            let tower = TowerMap::new(&fm, &fld)?;
            let alpha =
                require_nonzero(spec.alpha.unwrap_or(Coeff::Code(1)).resolve(&fld)?, "alpha")?;
            let trace_tab = trace_table(&tower)?;
            let values: Vec<u32> = (0..fld.order() as u32)
                .map(|x| trace_tab[fld.mul(alpha, fld.mul(x, x)) as usize])
                .collect();
            let space = Space::from_fields(t, vec![Arc::clone(&fld)])?;
            let f = VecFn::new(space, Codomain::Field(fm), values);
            let eta_a = eta_unit(&fld, alpha)?;
            let eps_n = QuarticUnit::epsilon(p).pow(n);
            let expected = match spec.family {
                Family::Eq8 => Expected {
                    condition: Condition::II,
                    eps_or_theta: eps_n.scale_sign(-eta_a),
                    l: Some(2),
                    d: Some(2),
                },
                Family::Eq13 => Expected {
                    condition: Condition::III,
                    eps_or_theta: eps_n.scale_sign(eta_a).scale_sign(if n % 2 == 0 {
                        -1
                    } else {
                        1
                    }),
                    l: Some(2),
                    d: Some(2),
                },
                _ => unreachable!(),
            };
            Ok((f, expected))
        }
        Family::Eq9 | Family::Eq14 => {
            let s = spec.s.ok_or_else(|| viol("missing s"))?;
            if p == 2 {
                return Err(viol("quadratic-form families require odd p"));
            }
            if m % t != 0 {
                return Err(viol("requires t | m".to_string()));
            }
            match spec.family {
                Family::Eq9 => {
                    if s % 2 != 0 || s == 2 {
                        return Err(viol("requires s even, s != 2".to_string()));
                    }
                }
                Family::Eq14 => {
                    if s < 3 || s % 2 == 0 {
                        return Err(viol("requires s >= 3 odd".to_string()));
                    }
                    if p.pow(t as u32) == 3 && m * s == 3 {
                        return Err(viol("excludes (p^t, ms) = (3, 3)".to_string()));
                    }
                }
                _ => unreachable!(),
            }
            let fm = Field::new(p, m, None)?;
            let coeffs = spec
                .alphas
                .as_ref()
                .ok_or_else(|| viol("missing alphas"))?
                .iter()
                .map(|c| c.resolve(&fm).and_then(|v| require_nonzero(v, "alpha_i")))
                .collect::<Result<Vec<_>, _>>()?;
            if coeffs.len() != s {
                return Err(viol(format!("expected {s} coefficients")));
            }
            let space = Space::from_fields(t, vec![Arc::clone(&fm); s])?;
            let mut codes = vec![0u32; s];
            let values: Vec<u32> = (0..space.size())
                .map(|idx| {
                    space.decode(idx, &mut codes);
                    let mut acc = 0u32;
                    for (i, &x) in codes.iter().enumerate() {
                        acc = fm.add(acc, fm.mul(coeffs[i], fm.mul(x, x)));
                    }
                    acc
                })
                .collect();
            let f = VecFn::new(space, Codomain::Field(Arc::clone(&fm)), values);
            let mut prod = 1u32;
            for &c in &coeffs {
                prod = fm.mul(prod, c);
            }
            let eta_prod = eta_unit(&fm, prod)?;
            let eps_ms = QuarticUnit::epsilon(p).pow(m * s);
            let expected = match spec.family {
                Family::Eq9 => Expected {
                    condition: Condition::II,
                    eps_or_theta: eps_ms.scale_sign(eta_prod),
                    l: Some(2),
                    d: Some(2),
                },
                Family::Eq14 => Expected {
                    condition: Condition::III,
                    eps_or_theta: eps_ms.scale_sign(eta_prod).scale_sign(if m % 2 == 0 {
                        -1
                    } else {
                        1
                    }),
                    l: Some(2),
                    d: Some(2),
                },
                _ => unreachable!(),
            };
            Ok((f, expected))
        }
        Family::Eq10 => {
            let n = spec.n()?;
            if p == 2 {
                return Err(viol("quadratic-form families require odd p"));
            }
            if m % t != 0 || n % (2 * m) != 0 || n == 2 * m {
                return Err(viol("requires t | m, 2m | n, 2m != n".to_string()));
            }
            let half = n / 2;
            let fld = Field::new(p, n, None)?;
            let fh = Field::new(p, half, None)?;
            let fm = Field::new(p, m, None)?;
            let tower_h = TowerMap::new(&fh, &fld)?;
            let tower_m = TowerMap::new(&fm, &fh)?;
            let alpha =
                require_nonzero(spec.alpha.unwrap_or(Coeff::Code(1)).resolve(&fh)?, "alpha")?;
            let trace_tab = trace_table(&tower_m)?;
            let e = p.pow(half as u32) + 1;
            let values: Vec<u32> = (0..fld.order() as u32)
                .map(|x| {
                    let norm = fld.pow(x, e);
                    let in_half = tower_h
                        .pullback(norm)
                        .expect("relative norm lands in the half field");
                    trace_tab[fh.mul(alpha, in_half) as usize]
                })
                .collect();
            let space = Space::from_fields(t, vec![Arc::clone(&fld)])?;
            let f = VecFn::new(space, Codomain::Field(fm), values);
            Ok((
                f,
                Expected {
                    condition: Condition::II,
                    eps_or_theta: QuarticUnit::MINUS_ONE,
                    l: Some(2),
                    d: Some(2),
                },
            ))
        }
        Family::Eq11 | Family::Eq15 => build_branching_quadratic(spec),
    }
}

/// Shared builder for the two branching-quadratic families
/// `F(x, y1, y2) = H(Tr(gamma y2^2); x) + Tr(beta y1 L(y2))`, where the
/// branch of `H` is chosen by the quadratic character of the selector.
fn build_branching_quadratic(spec: &FamilySpec) -> Result<(VecFn, Expected), CatalogError> {
    let p = spec.p;
    let t = spec.t;
    let m = spec.m;
    let np = spec.n1()?;
    let npp = spec.n2()?;
    if p == 2 {
        return Err(viol("branching quadratic families require odd p"));
    }
    if m % t != 0 || np % m != 0 || npp % m != 0 {
        return Err(viol("requires t | m, m | n', m | n''".to_string()));
    }
    match spec.family {
        Family::Eq11 => {
            if np % (2 * m) != 0 {
                return Err(viol("requires 2m | n'".to_string()));
            }
        }
        Family::Eq15 => {
            if (np / m) % 2 == 0 {
                return Err(viol("requires n'/m odd".to_string()));
            }
            if p.pow(t as u32) == 3 && np + 2 * npp == 3 {
                return Err(viol("excludes (p^t, n) = (3, 3)".to_string()));
            }
        }
        _ => unreachable!(),
    }

    let f1 = Field::new(p, np, None)?;
    let f2 = Field::new(p, npp, None)?;
    let fm = Field::new(p, m, None)?;
    let tower1 = TowerMap::new(&fm, &f1)?;
    let tower2 = TowerMap::new(&fm, &f2)?;

    let alphas = spec.alphas.as_ref().ok_or_else(|| viol("missing alphas"))?;
    if alphas.len() != 3 {
        return Err(viol("expected three branch coefficients"));
    }
    let a: Vec<u32> = alphas
        .iter()
        .map(|c| c.resolve(&f1).and_then(|v| require_nonzero(v, "alpha_i")))
        .collect::<Result<_, _>>()?;
    let classes: Vec<i32> = a
        .iter()
        .map(|&c| eta_unit(&f1, c))
        .collect::<Result<_, _>>()?;
    if classes.iter().any(|&e| e != classes[0]) {
        return Err(viol(
            "branch coefficients must be all squares or all non-squares".to_string(),
        ));
    }
    let beta = require_nonzero(spec.beta.unwrap_or(Coeff::Code(1)).resolve(&f2)?, "beta")?;
    let gamma = require_nonzero(spec.gamma.unwrap_or(Coeff::Code(1)).resolve(&f2)?, "gamma")?;

    let l_tab: Vec<u32> = match spec.l_poly.as_ref().unwrap_or(&LPolySpec::Identity) {
        LPolySpec::Identity => (0..f2.order() as u32).collect(),
        LPolySpec::Coeffs(cs) => {
            let coeffs: Vec<u32> = cs
                .iter()
                .map(|c| c.resolve(&f2))
                .collect::<Result<_, _>>()?;
            let tab: Vec<u32> = (0..f2.order() as u32)
                .map(|y| {
                    let mut acc = 0u32;
                    let mut frob = y;
                    for (i, &ci) in coeffs.iter().enumerate() {
                        if i > 0 {
                            for _ in 0..m {
                                frob = f2.pow(frob, p);
                            }
                        }
                        acc = f2.add(acc, f2.mul(ci, frob));
                    }
                    acc
                })
                .collect();
            let mut seen = vec![false; f2.order() as usize];
            for &v in &tab {
                if seen[v as usize] {
                    return Err(CatalogError::NonPermutationL);
                }
                seen[v as usize] = true;
            }
            tab
        }
    };

    let tr1 = trace_table(&tower1)?;
    let tr2 = trace_table(&tower2)?;
    let space = Space::from_fields(t, vec![Arc::clone(&f1), Arc::clone(&f2), Arc::clone(&f2)])?;
    let q1 = f1.order() as u32;
    let q2 = f2.order() as u32;
    let mut values = Vec::with_capacity(space.size() as usize);
    for x in 0..q1 {
        let xsq = f1.mul(x, x);
        let h = [
            tr1[f1.mul(a[0], xsq) as usize],
            tr1[f1.mul(a[1], xsq) as usize],
            tr1[f1.mul(a[2], xsq) as usize],
        ];
        for y1 in 0..q2 {
            let by1 = f2.mul(beta, y1);
            for y2 in 0..q2 {
                let sel = tr2[f2.mul(gamma, f2.mul(y2, y2)) as usize];
                let branch = match fm.eta(sel).expect("odd p") {
                    0 => h[0],
                    1 => h[1],
                    _ => h[2],
                };
                let g = tr2[f2.mul(by1, l_tab[y2 as usize]) as usize];
                values.push(fm.add(branch, g));
            }
        }
    }
    let f = VecFn::new(space, Codomain::Field(Arc::clone(&fm)), values);
    let eta_a1 = classes[0];
    let eps_np = QuarticUnit::epsilon(p).pow(np);
    let expected = match spec.family {
        Family::Eq11 => Expected {
            condition: Condition::II,
            eps_or_theta: eps_np.scale_sign(-eta_a1),
            l: Some(2),
            d: Some(2),
        },
        Family::Eq15 => Expected {
            condition: Condition::III,
            eps_or_theta: eps_np
                .scale_sign(eta_a1)
                .scale_sign(if np % 2 == 0 { -1 } else { 1 }),
            l: Some(2),
            d: Some(2),
        },
        _ => unreachable!(),
    };
    Ok((f, expected))
}

/// Relative trace down to the tower's subfield, tabulated over the whole
/// superfield; entries are subfield codes.
fn trace_table(tower: &TowerMap) -> Result<Vec<u32>, CatalogError> {
    let mut out = Vec::with_capacity(tower.sup().order() as usize);
    for x in 0..tower.sup().order() as u32 {
        out.push(tower.trace(x)?);
    }
    Ok(out)
}

/// A named, fully pinned function instance.
#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub spec: FamilySpec,
    pub notes: &'static str,
}

fn fs(family: Family, p: u64, t: usize, m: usize) -> FamilySpec {
    FamilySpec {
        family,
        p,
        t,
        m,
        n: None,
        n1: None,
        n2: None,
        r: None,
        s: None,
        u: None,
        alpha: None,
        beta: None,
        gamma: None,
        alphas: None,
        balanced: None,
        balanced2: None,
        l_poly: None,
    }
}

/// The bundled preset registry. Every free coefficient is pinned so runs
/// are reproducible bit for bit.
pub fn presets() -> Vec<Preset> {
    let mut v = Vec::new();

    let mut s = fs(Family::Eq8, 3, 1, 2);
    s.n = Some(8);
    s.alpha = Some(Coeff::Code(1));
    v.push(Preset {
        name: "example1",
        spec: s,
        notes: "Tr(x^2) on a degree-8 field over F_3; codes over F_3",
    });

    let mut s = fs(Family::Eq11, 3, 2, 2);
    s.n1 = Some(4);
    s.n2 = Some(2);
    s.alphas = Some(vec![
        Coeff::WPow { w_pow: 2 },
        Coeff::Code(1),
        Coeff::Code(1),
    ]);
    s.beta = Some(Coeff::Code(1));
    s.gamma = Some(Coeff::Code(1));
    v.push(Preset {
        name: "example2",
        spec: s,
        notes: "branching quadratic on F_81 x F_9 x F_9; codes over F_9",
    });

    let mut s = fs(Family::Eq10, 5, 2, 2);
    s.n = Some(8);
    s.alpha = Some(Coeff::Code(1));
    v.push(Preset {
        name: "example3",
        spec: s,
        notes: "norm-quadratic on a degree-8 field over F_5; large enumeration",
    });

    let mut s = fs(Family::Eq15, 3, 1, 2);
    s.n1 = Some(2);
    s.n2 = Some(2);
    s.alphas = Some(vec![
        Coeff::WPow { w_pow: 2 },
        Coeff::Code(1),
        Coeff::Code(1),
    ]);
    s.beta = Some(Coeff::Code(1));
    s.gamma = Some(Coeff::Code(1));
    v.push(Preset {
        name: "example4",
        spec: s,
        notes: "branching quadratic on F_9^3; codes over F_3",
    });

    let mut s = fs(Family::Eq15, 3, 2, 2);
    s.n1 = Some(2);
    s.n2 = Some(2);
    s.alphas = Some(vec![
        Coeff::WPow { w_pow: 2 },
        Coeff::Code(1),
        Coeff::Code(1),
    ]);
    s.beta = Some(Coeff::Code(1));
    s.gamma = Some(Coeff::Code(1));
    v.push(Preset {
        name: "example5",
        spec: s,
        notes: "same function as example4, codes over F_9",
    });

    let mut s = fs(Family::Eq15, 5, 2, 2);
    s.n1 = Some(2);
    s.n2 = Some(2);
    s.alphas = Some(vec![
        Coeff::WPow { w_pow: 3 },
        Coeff::WPow { w_pow: 1 },
        Coeff::WPow { w_pow: 1 },
    ]);
    s.beta = Some(Coeff::Code(1));
    s.gamma = Some(Coeff::Code(1));
    v.push(Preset {
        name: "example6",
        spec: s,
        notes: "branching quadratic on F_25^3; codes over F_25",
    });

    // Small scalar-invariant instances behind the reference tables.
    let mut s = fs(Family::Eq3, 2, 1, 2);
    s.n1 = Some(3);
    v.push(Preset {
        name: "eq3-p2-t1-m2-n3",
        spec: s,
        notes: "binary [14,7,4]-class codes",
    });

    let mut s = fs(Family::Eq3, 2, 3, 2);
    s.n1 = Some(3);
    v.push(Preset {
        name: "eq3-p2-t3-m2-n3",
        spec: s,
        notes: "octal LCD/quantum source",
    });

    let mut s = fs(Family::Eq3, 3, 2, 1);
    s.n1 = Some(2);
    v.push(Preset {
        name: "eq3-p3-t2-m1-n2",
        spec: s,
        notes: "9-ary LCD source",
    });

    let mut s = fs(Family::Eq3, 2, 2, 3);
    s.n1 = Some(4);
    v.push(Preset {
        name: "eq3-p2-t2-m3-n4",
        spec: s,
        notes: "quaternary quantum source",
    });

    v
}

pub fn preset(name: &str) -> Result<Preset, CatalogError> {
    presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| CatalogError::UnknownPreset(name.to_string()))
}

/// Composes a built function with a balanced map on its codomain (vector
/// codomains only), preserving scalar invariance.
pub fn compose_balanced(f: &VecFn, table: &[u32], m_out: usize) -> Result<VecFn, CatalogError> {
    let p = f.codomain.p();
    if table.len() as u64 != f.codomain.size() {
        return Err(viol("balance table does not match codomain".to_string()));
    }
    let cod = Codomain::Vector { p, m: m_out };
    if table.iter().any(|&v| u64::from(v) >= cod.size()) {
        return Err(viol("balance table value out of range".to_string()));
    }
    let values = f.values.iter().map(|&v| table[v as usize]).collect();
    Ok(VecFn::new(Arc::clone(&f.space), cod, values))
}

/// Lookup map from preset name to spec, for serialization round trips.
pub fn preset_map() -> HashMap<&'static str, FamilySpec> {
    presets().into_iter().map(|p| (p.name, p.spec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_projection_fibers() {
        let f8 = Field::new(2, 3, None).unwrap();
        let b = balanced_default(&f8, 2).unwrap();
        let mut fibers = [0u32; 4];
        for &v in &b {
            fibers[v as usize] += 1;
        }
        assert_eq!(fibers, [2, 2, 2, 2]);
        assert_eq!(b[0], 0);

        let f9 = Field::new(3, 2, None).unwrap();
        let b = balanced_default(&f9, 1).unwrap();
        let mut fibers = [0u32; 3];
        for &v in &b {
            fibers[v as usize] += 1;
        }
        assert_eq!(fibers, [3, 3, 3]);
    }

    #[test]
    fn eq3_scalar_invariance() {
        let pre = preset("eq3-p2-t3-m2-n3").unwrap();
        let (f, exp) = build(&pre.spec).unwrap();
        assert_eq!(exp.condition, Condition::I);
        assert_eq!(exp.eps_or_theta, QuarticUnit::ONE);
        let sp = &f.space;
        for a in 2..8u32 {
            for x in 0..sp.size() {
                assert_eq!(f.values[sp.scalar_mul(a, x) as usize], f.values[x as usize]);
            }
        }
    }

    #[test]
    fn eq7_scalar_covariance_with_l() {
        let mut s = fs(Family::Eq7, 3, 1, 1);
        s.n1 = Some(2);
        s.u = Some(1);
        let (f, exp) = build(&s).unwrap();
        assert_eq!(exp.l, Some(2));
        assert_eq!(exp.d, Some(2));
        // With t = 1, the scalar group is F_3^*: check F(2x) = 2^2 F(x) = F(x).
        let sp = &f.space;
        let cod = match &f.codomain {
            Codomain::Field(f) => Arc::clone(f),
            _ => panic!(),
        };
        for x in 0..sp.size() {
            let lhs = f.values[sp.scalar_mul(2, x) as usize];
            let rhs = cod.mul(cod.mul(2, 2), f.values[x as usize]);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn example1_is_trace_of_square() {
        let pre = preset("example1").unwrap();
        let (f, exp) = build(&pre.spec).unwrap();
        assert_eq!(exp.eps_or_theta, QuarticUnit::MINUS_ONE);
        assert_eq!(exp.condition, Condition::II);
        assert_eq!(f.space.size(), 6561);
        assert_eq!(f.values[0], 0);
    }

    #[test]
    fn example4_matches_printed_closed_form() {
        // (1 - w^2) y2^{q-1} x^2 + w^2 x^2 + y1 y2 over F_9, w primitive.
        let pre = preset("example4").unwrap();
        let (f, exp) = build(&pre.spec).unwrap();
        assert_eq!(exp.condition, Condition::III);
        assert_eq!(exp.eps_or_theta, QuarticUnit::ONE);
        let f9 = &f.space.parts()[0];
        let w = f9.primitive();
        let w2 = f9.mul(w, w);
        let one_minus_w2 = f9.sub(1, w2);
        let mut idx = 0usize;
        for x in 0..9u32 {
            let xsq = f9.mul(x, x);
            for y1 in 0..9u32 {
                for y2 in 0..9u32 {
                    let y2q1 = f9.pow(y2, 8);
                    let coef = f9.add(f9.mul(one_minus_w2, y2q1), w2);
                    let printed = f9.add(f9.mul(coef, xsq), f9.mul(y1, y2));
                    assert_eq!(f.values[idx], printed, "x={x} y1={y1} y2={y2}");
                    idx += 1;
                }
            }
        }
    }

    #[test]
    fn example6_matches_printed_closed_form() {
        // (w - w^3) y2^{q-1} x^2 + w^3 x^2 + y1 y2 over F_25, w primitive.
        let pre = preset("example6").unwrap();
        let (f, exp) = build(&pre.spec).unwrap();
        assert_eq!(exp.condition, Condition::III);
        assert_eq!(exp.eps_or_theta, QuarticUnit::ONE);
        let f25 = &f.space.parts()[0];
        let w = f25.primitive();
        let w3 = f25.pow(w, 3);
        let diff = f25.sub(w, w3);
        let mut idx = 0usize;
        for x in 0..25u32 {
            let xsq = f25.mul(x, x);
            for y1 in 0..25u32 {
                for y2 in 0..25u32 {
                    let y2q1 = f25.pow(y2, 24);
                    let coef = f25.add(f25.mul(diff, y2q1), w3);
                    let printed = f25.add(f25.mul(coef, xsq), f25.mul(y1, y2));
                    assert_eq!(f.values[idx], printed);
                    idx += 1;
                }
            }
        }
    }

    #[test]
    fn example2_matches_printed_closed_form() {
        // y2^8 Tr((1 - w^2) x^2) + Tr(w^2 x^2) + y1 y2, w primitive of F_81.
        let pre = preset("example2").unwrap();
        let (f, exp) = build(&pre.spec).unwrap();
        assert_eq!(exp.condition, Condition::II);
        assert_eq!(exp.eps_or_theta, QuarticUnit::MINUS_ONE);
        let f81 = &f.space.parts()[0];
        let f9 = &f.space.parts()[1];
        let fm = match &f.codomain {
            Codomain::Field(fd) => Arc::clone(fd),
            _ => panic!(),
        };
        let tower = TowerMap::new(&fm, f81).unwrap();
        let w = f81.primitive();
        let w2 = f81.mul(w, w);
        let one_minus_w2 = f81.sub(1, w2);
        let mut idx = 0usize;
        for x in 0..81u32 {
            let xsq = f81.mul(x, x);
            let t1 = tower.trace(f81.mul(one_minus_w2, xsq)).unwrap();
            let t2 = tower.trace(f81.mul(w2, xsq)).unwrap();
            for y1 in 0..9u32 {
                for y2 in 0..9u32 {
                    let y28 = f9.pow(y2, 8);
                    // y2^8 is 0 or 1; multiply inside F_9 then add in F_9 = codomain.
                    let term = fm.mul(y28, t1);
                    let printed = fm.add(fm.add(term, t2), f9.mul(y1, y2));
                    assert_eq!(f.values[idx], printed, "x={x} y1={y1} y2={y2}");
                    idx += 1;
                }
            }
        }
    }

    #[test]
    fn family_guards_reject_bad_parameters() {
        // Eq8 with 2m = n.
        let mut s = fs(Family::Eq8, 3, 1, 2);
        s.n = Some(4);
        assert!(build(&s).is_err());
        // Eq9 with s = 2.
        let mut s = fs(Family::Eq9, 3, 1, 1);
        s.s = Some(2);
        s.alphas = Some(vec![Coeff::Code(1), Coeff::Code(1)]);
        assert!(build(&s).is_err());
        // Eq15 mixing square classes.
        let mut s = fs(Family::Eq15, 3, 1, 2);
        s.n1 = Some(2);
        s.n2 = Some(2);
        s.alphas = Some(vec![
            Coeff::WPow { w_pow: 1 },
            Coeff::Code(1),
            Coeff::Code(1),
        ]);
        assert!(build(&s).is_err());
        // Eq4 u not a Frobenius power mod p^r - 1.
        let mut s = fs(Family::Eq4, 3, 1, 1);
        s.n1 = Some(2);
        s.r = Some(2);
        s.u = Some(5);
        assert!(matches!(build(&s), Err(CatalogError::ParamViolation(_))));
    }

    #[test]
    fn spec_round_trips_through_json() {
        for pre in presets() {
            let doc = serde_json::to_string(&pre.spec).unwrap();
            let back: FamilySpec = serde_json::from_str(&doc).unwrap();
            let a = build(&pre.spec).unwrap();
            let b = build(&back).unwrap();
            assert_eq!(a.0.values, b.0.values, "preset {}", pre.name);
            assert_eq!(a.1, b.1);
        }
    }
}
