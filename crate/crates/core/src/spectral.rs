//! Walsh spectra of p-ary functions on product spaces, bentness and
//! weak-regularity certification, and verification of the three structural
//! conditions under which the defining-set code theorems apply.
//!
//! Everything is exact: Walsh values live in `Z[zeta_p]`, magnitudes are
//! compared via `z * conj(z)`, and the odd-dimension magnitude
//! `epsilon * p^{n/2}` is recognized through the Gauss sum identity
//! `g^2 = (-1)^{(p-1)/2} p` instead of any irrational arithmetic.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{gauss_sum, match_unit_multiple, CycloInt};
use crate::galois::{digits_to_point, point_digits, Field, GaloisError, Space, TowerMap};

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("parameter violation: {0}")]
    ParamViolation(String),
    #[error("component index must be nonzero")]
    ZeroComponent,
    #[error(transparent)]
    Galois(#[from] GaloisError),
}

/// A scalar p-ary function given by its value table in canonical point order.
#[derive(Debug, Clone)]
pub struct PAryFn {
    pub space: Arc<Space>,
    pub values: Vec<u8>,
}

impl PAryFn {
    pub fn new(space: Arc<Space>, values: Vec<u8>) -> Self {
        assert_eq!(values.len() as u64, space.size());
        PAryFn { space, values }
    }
}

/// Where a vectorial function takes its values.
#[derive(Debug, Clone)]
pub enum Codomain {
    /// `F_{p^m}` with the inner product `<c, y> = Tr_1^m(c y)`.
    Field(Arc<Field>),
    /// `F_p^m` with the dot product on coordinates.
    Vector { p: u64, m: usize },
}

impl Codomain {
    pub fn p(&self) -> u64 {
        match self {
            Codomain::Field(f) => f.p(),
            Codomain::Vector { p, .. } => *p,
        }
    }

    pub fn log_size(&self) -> usize {
        match self {
            Codomain::Field(f) => f.degree(),
            Codomain::Vector { m, .. } => *m,
        }
    }

    pub fn size(&self) -> u64 {
        match self {
            Codomain::Field(f) => f.order(),
            Codomain::Vector { p, m } => p.pow(*m as u32),
        }
    }

    /// `<c, y>` as an `F_p` residue.
    pub fn inner(&self, c: u32, y: u32) -> u8 {
        match self {
            Codomain::Field(f) => f.trace_to_prime(f.mul(c, y)),
            Codomain::Vector { p, m } => {
                let mut dc = [0u8; 32];
                let mut dy = [0u8; 32];
                point_digits(*p, *m, u64::from(c), &mut dc);
                point_digits(*p, *m, u64::from(y), &mut dy);
                let s: u64 = (0..*m).map(|i| u64::from(dc[i]) * u64::from(dy[i])).sum();
                (s % p) as u8
            }
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match self {
            Codomain::Field(f) => f.add(a, b),
            Codomain::Vector { p, m } => {
                let mut da = [0u8; 32];
                let mut db = [0u8; 32];
                point_digits(*p, *m, u64::from(a), &mut da);
                point_digits(*p, *m, u64::from(b), &mut db);
                for i in 0..*m {
                    da[i] = ((u64::from(da[i]) + u64::from(db[i])) % p) as u8;
                }
                digits_to_point(*p, &da[..*m]) as u32
            }
        }
    }
}

/// A vectorial p-ary function on a product space.
#[derive(Debug, Clone)]
pub struct VecFn {
    pub space: Arc<Space>,
    pub codomain: Codomain,
    pub values: Vec<u32>,
}

impl VecFn {
    pub fn new(space: Arc<Space>, codomain: Codomain, values: Vec<u32>) -> Self {
        assert_eq!(values.len() as u64, space.size());
        assert_eq!(space.p(), codomain.p());
        VecFn {
            space,
            codomain,
            values,
        }
    }

    /// Same table viewed over a different base degree.
    pub fn rebase(&self, t: usize) -> Result<VecFn, GaloisError> {
        Ok(VecFn {
            space: self.space.rebase(t)?,
            codomain: self.codomain.clone(),
            values: self.values.clone(),
        })
    }
}

/// An exact Walsh spectrum, indexed like its domain.
pub struct WalshSpectrum {
    pub space: Arc<Space>,
    pub table: Vec<CycloInt>,
}

/// A fourth root of unity, `sign * (i if imaginary else 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarticUnit {
    pub sign: i8,
    pub imaginary: bool,
}

impl QuarticUnit {
    pub const ONE: QuarticUnit = QuarticUnit {
        sign: 1,
        imaginary: false,
    };
    pub const MINUS_ONE: QuarticUnit = QuarticUnit {
        sign: -1,
        imaginary: false,
    };

    /// `epsilon = 1` for `p = 1 mod 4`, `epsilon = sqrt(-1)` for `p = 3 mod 4`.
    pub fn epsilon(p: u64) -> QuarticUnit {
        if p % 4 == 1 {
            QuarticUnit::ONE
        } else {
            QuarticUnit {
                sign: 1,
                imaginary: true,
            }
        }
    }

    pub fn mul(self, other: QuarticUnit) -> QuarticUnit {
        let mut sign = self.sign * other.sign;
        let imaginary = self.imaginary ^ other.imaginary;
        if self.imaginary && other.imaginary {
            sign = -sign;
        }
        QuarticUnit { sign, imaginary }
    }

    pub fn inv(self) -> QuarticUnit {
        if self.imaginary {
            QuarticUnit {
                sign: -self.sign,
                imaginary: true,
            }
        } else {
            self
        }
    }

    pub fn pow(self, e: usize) -> QuarticUnit {
        let mut acc = QuarticUnit::ONE;
        for _ in 0..e % 4 {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale_sign(self, s: i32) -> QuarticUnit {
        QuarticUnit {
            sign: self.sign * s as i8,
            imaginary: self.imaginary,
        }
    }

    /// The real integer `self * p^{n/2}` requires `self` real; used where the
    /// caller has already established realness.
    pub fn as_real(&self) -> Option<i64> {
        (!self.imaginary).then_some(i64::from(self.sign))
    }
}

/// Certified spectral properties of one p-ary function.
#[derive(Debug, Clone)]
pub struct BentCert {
    pub is_bent: bool,
    pub is_weakly_regular: bool,
    /// `epsilon_f` with `W_f(a) = epsilon_f p^{n/2} zeta^{f*(a)}`.
    pub eps: Option<QuarticUnit>,
    /// The dual table `f*`.
    pub dual: Option<PAryFn>,
    /// The sign `s` in `W_f(0) = s p^{(n-1)/2} g zeta^{f*(0)}` for odd `n`.
    pub odd_n_sign: Option<i8>,
    /// First domain index where bentness or weak regularity broke down.
    pub first_defect: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    I,
    II,
    III,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Condition::I => write!(f, "I"),
            Condition::II => write!(f, "II"),
            Condition::III => write!(f, "III"),
        }
    }
}

/// Witness of the first failing check, in canonical scan order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    pub what: String,
    pub c: Option<u32>,
    pub a: Option<u64>,
    pub x: Option<u64>,
}

/// Outcome of verifying one structural condition.
pub struct ConditionReport {
    pub condition: Condition,
    pub holds: bool,
    /// `epsilon` (I/II) or `vartheta` (III).
    pub eps_or_theta: Option<QuarticUnit>,
    pub l_exponent: Option<u64>,
    pub d_exponent: Option<u64>,
    pub vectorial_dual: Option<VecFn>,
    pub counterexample: Option<Witness>,
}

impl ConditionReport {
    fn failure(condition: Condition, w: Witness) -> ConditionReport {
        ConditionReport {
            condition,
            holds: false,
            eps_or_theta: None,
            l_exponent: None,
            d_exponent: None,
            vectorial_dual: None,
            counterexample: Some(w),
        }
    }
}

/// Exact Walsh transform `W_f(a) = sum_x zeta^{f(x) - <a,x>}`.
///
/// Runs the dimension-wise length-p transform against the coordinate dot
/// product, then reindexes through the Gram matrix of the trace form so the
/// result is indexed by the product-space inner product. Every spectrum is
/// checked against Parseval before being returned.
pub fn walsh(f: &PAryFn) -> WalshSpectrum {
    let sp = &f.space;
    let p = sp.p() as u32;
    let pu = p as usize;
    let n = sp.dim();
    let size = sp.size() as usize;

    let mut cur: Vec<CycloInt> = f
        .values
        .iter()
        .map(|&v| CycloInt::zeta_pow(p, i64::from(v)))
        .collect();

    let mut stride = 1usize;
    for _ in 0..n {
        let mut next = vec![CycloInt::zero(p); size];
        let block_len = stride * pu;
        for block in (0..size).step_by(block_len) {
            for off in 0..stride {
                for ai in 0..pu {
                    let mut acc = CycloInt::zero(p);
                    for xi in 0..pu {
                        let idx = block + off + xi * stride;
                        let rot = -((ai * xi) as i64);
                        acc = acc.add(&cur[idx].mul_zeta_pow(rot)).expect("same p");
                    }
                    next[block + off + ai * stride] = acc;
                }
            }
        }
        cur = next;
        stride *= pu;
    }

    // Reindex: W(a) = (dot-product transform)(G a).
    let gram = sp.gram_matrix();
    let mut table = vec![CycloInt::zero(p); size];
    let mut da = vec![0u8; n];
    let mut db = vec![0u8; n];
    for a in 0..size as u64 {
        point_digits(sp.p(), n, a, &mut da);
        for r in 0..n {
            let s: u64 = (0..n)
                .map(|c| u64::from(gram[r][c]) * u64::from(da[c]))
                .sum();
            db[r] = (s % sp.p()) as u8;
        }
        let b = digits_to_point(sp.p(), &db[..n]) as usize;
        table[a as usize] = cur[b].clone();
    }

    let spectrum = WalshSpectrum {
        space: Arc::clone(sp),
        table,
    };
    spectrum.assert_parseval();
    spectrum
}

impl WalshSpectrum {
    /// Parseval: `sum_a W(a) conj(W(a)) = p^{2n}`, exactly.
    pub fn assert_parseval(&self) {
        let p = self.space.p() as u32;
        let mut total = CycloInt::zero(p);
        for w in &self.table {
            total = total.add(&w.norm_sq()).expect("same p");
        }
        let expected = BigInt::from(self.space.size()) * BigInt::from(self.space.size());
        assert_eq!(
            total.as_int(),
            Some(expected),
            "Parseval identity violated; Walsh transform is inconsistent"
        );
    }
}

/// Certifies bentness and weak regularity, extracting `epsilon_f` and the
/// dual table exactly.
pub fn bent_analyze(f: &PAryFn) -> BentCert {
    let sp = &f.space;
    let p = sp.p() as u32;
    let n = sp.dim();
    let spec = walsh(f);
    let pn = BigInt::from(sp.size());

    let mut first_defect = None;
    for (a, w) in spec.table.iter().enumerate() {
        if w.norm_sq().as_int() != Some(pn.clone()) {
            first_defect = Some(a as u64);
            break;
        }
    }
    if let Some(a) = first_defect {
        return BentCert {
            is_bent: false,
            is_weakly_regular: false,
            eps: None,
            dual: None,
            odd_n_sign: None,
            first_defect: Some(a),
        };
    }

    // Decompose W(0) = base * zeta^{f*(0)} with base the common magnitude.
    let w0 = &spec.table[0];
    let mut base: Option<(CycloInt, QuarticUnit, Option<i8>)> = None;
    if n % 2 == 0 {
        // For p = 2 both k yield a rational value; prefer the positive one so
        // epsilon = +1 (Boolean bent functions are regular) and the sign is
        // carried by f*(0). For odd p the decomposition is unique.
        let half = BigInt::from(sp.p()).pow((n / 2) as u32);
        'outer: for sign in [1i8, -1] {
            let target = if sign == 1 {
                half.clone()
            } else {
                -half.clone()
            };
            for k in 0..p {
                let z = w0.mul_zeta_pow(-i64::from(k));
                if z.as_int() == Some(target.clone()) {
                    let eps = QuarticUnit {
                        sign,
                        imaginary: false,
                    };
                    base = Some((z, eps, None));
                    break 'outer;
                }
            }
        }
    } else if p > 2 {
        let g = gauss_sum(p).expect("odd p");
        let mag = g.scale(BigInt::from(sp.p()).pow(((n - 1) / 2) as u32));
        for k in 0..p {
            let z = w0.mul_zeta_pow(-i64::from(k));
            if z == mag {
                base = Some((z, QuarticUnit::epsilon(sp.p()), Some(1)));
                break;
            }
            if z == mag.neg() {
                base = Some((z, QuarticUnit::epsilon(sp.p()).scale_sign(-1), Some(-1)));
                break;
            }
        }
    }

    let Some((base, eps, odd_n_sign)) = base else {
        return BentCert {
            is_bent: true,
            is_weakly_regular: false,
            eps: None,
            dual: None,
            odd_n_sign: None,
            first_defect: Some(0),
        };
    };

    let mut dual = vec![0u8; spec.table.len()];
    for (a, w) in spec.table.iter().enumerate() {
        match match_unit_multiple(w, &base) {
            Some(k) => dual[a] = k as u8,
            None => {
                return BentCert {
                    is_bent: true,
                    is_weakly_regular: false,
                    eps: None,
                    dual: None,
                    odd_n_sign: None,
                    first_defect: Some(a as u64),
                };
            }
        }
    }

    BentCert {
        is_bent: true,
        is_weakly_regular: true,
        eps: Some(eps),
        dual: Some(PAryFn::new(Arc::clone(sp), dual)),
        odd_n_sign,
        first_defect: None,
    }
}

/// The component `F_c(x) = <c, F(x)>`.
pub fn component(f: &VecFn, c: u32) -> Result<PAryFn, SpectralError> {
    if c == 0 {
        return Err(SpectralError::ZeroComponent);
    }
    let cod = &f.codomain;
    let mut tab = vec![0u8; cod.size() as usize];
    for (y, slot) in tab.iter_mut().enumerate() {
        *slot = cod.inner(c, y as u32);
    }
    let values = f.values.iter().map(|&v| tab[v as usize]).collect();
    Ok(PAryFn::new(Arc::clone(&f.space), values))
}

/// Verifies one structural condition exhaustively. Parameter violations are
/// errors; mathematical failures produce `holds = false` with the first
/// counterexample in canonical order.
pub fn verify_condition(f: &VecFn, which: Condition) -> Result<ConditionReport, SpectralError> {
    let sp = &f.space;
    let p = sp.p();
    let t = sp.base_degree();
    let n = sp.dim();
    let m = f.codomain.log_size();
    let viol = |s: String| SpectralError::ParamViolation(s);

    match which {
        Condition::I => {
            if n % 2 != 0 {
                return Err(viol(format!("condition I requires 2 | n, got n = {n}")));
            }
            if 2 * t > n {
                return Err(viol(format!(
                    "condition I requires t <= n/2, got t = {t}, n = {n}"
                )));
            }
            if 2 * m >= n {
                return Err(viol(format!(
                    "condition I requires m < n/2, got m = {m}, n = {n}"
                )));
            }
            if p == 2 && m < 2 {
                return Err(viol("condition I with p = 2 requires m >= 2".into()));
            }
        }
        Condition::II => {
            if n % 2 != 0 {
                return Err(viol(format!("condition II requires 2 | n, got n = {n}")));
            }
            if m % t != 0 {
                return Err(viol(format!(
                    "condition II requires t | m, got t = {t}, m = {m}"
                )));
            }
            if 2 * m >= n {
                return Err(viol(format!(
                    "condition II requires m < n/2, got m = {m}, n = {n}"
                )));
            }
            if p == 2 && (m < 2 || 2 * (m + t) >= n) {
                return Err(viol(
                    "condition II with p = 2 requires m >= 2 and m + t < n/2".into(),
                ));
            }
            if !matches!(f.codomain, Codomain::Field(_)) {
                return Err(viol("condition II requires a field codomain".into()));
            }
        }
        Condition::III => {
            if p == 2 {
                return Err(viol("condition III requires odd p".into()));
            }
            if m % t != 0 {
                return Err(viol(format!(
                    "condition III requires t | m, got t = {t}, m = {m}"
                )));
            }
            if (n - m) % 2 != 0 {
                return Err(viol(format!(
                    "condition III requires 2 | (n - m), got n = {n}, m = {m}"
                )));
            }
            if 3 * m > n {
                return Err(viol(format!(
                    "condition III requires 3m <= n, got m = {m}, n = {n}"
                )));
            }
            if n == 3 && p.pow(t as u32) == 3 {
                return Err(viol("condition III excludes (n, p^t) = (3, 3)".into()));
            }
            if !matches!(f.codomain, Codomain::Field(_)) {
                return Err(viol("condition III requires a field codomain".into()));
            }
        }
    }

    let cod_size = f.codomain.size();

    // Component certification, parallel over c but reported in order.
    let certs: Vec<(u32, BentCert)> = (1..cod_size as u32)
        .into_par_iter()
        .map(|c| {
            let comp = component(f, c).expect("nonzero c");
            (c, bent_analyze(&comp))
        })
        .collect();
    for (c, cert) in &certs {
        if !cert.is_bent {
            return Ok(ConditionReport::failure(
                which,
                Witness {
                    what: "component is not bent".into(),
                    c: Some(*c),
                    a: cert.first_defect,
                    x: None,
                },
            ));
        }
        if !cert.is_weakly_regular {
            return Ok(ConditionReport::failure(
                which,
                Witness {
                    what: "component is not weakly regular".into(),
                    c: Some(*c),
                    a: cert.first_defect,
                    x: None,
                },
            ));
        }
    }

    // Sign pattern.
    let eps_or_theta = match which {
        Condition::I | Condition::II => {
            let first = certs[0].1.eps.unwrap();
            if first.imaginary {
                return Ok(ConditionReport::failure(
                    which,
                    Witness {
                        what: "epsilon is not in {+1, -1}".into(),
                        c: Some(certs[0].0),
                        a: None,
                        x: None,
                    },
                ));
            }
            for (c, cert) in &certs {
                if cert.eps.unwrap() != first {
                    return Ok(ConditionReport::failure(
                        which,
                        Witness {
                            what: "epsilon varies across components".into(),
                            c: Some(*c),
                            a: None,
                            x: None,
                        },
                    ));
                }
            }
            first
        }
        Condition::III => {
            let cod_field = match &f.codomain {
                Codomain::Field(fd) => fd,
                Codomain::Vector { .. } => unreachable!(),
            };
            let mut theta = None;
            for (c, cert) in &certs {
                let eta_c = cod_field.eta(*c)?;
                let th = cert.eps.unwrap().scale_sign(eta_c);
                match theta {
                    None => theta = Some(th),
                    Some(t0) if t0 == th => {}
                    Some(_) => {
                        return Ok(ConditionReport::failure(
                            which,
                            Witness {
                                what: "epsilon_{F_c} does not follow theta * eta(c)".into(),
                                c: Some(*c),
                                a: None,
                                x: None,
                            },
                        ));
                    }
                }
            }
            let theta = theta.unwrap();
            let eps_m = QuarticUnit::epsilon(p).pow(m);
            if theta.imaginary != eps_m.imaginary {
                return Ok(ConditionReport::failure(
                    which,
                    Witness {
                        what: "theta is not in {+eps^m, -eps^m}".into(),
                        c: None,
                        a: None,
                        x: None,
                    },
                ));
            }
            theta
        }
    };

    let size = sp.size();
    let qt = p.pow(t as u32);

    // Scalar covariance.
    if which == Condition::I {
        for a in 2..qt as u32 {
            for x in 0..size {
                let ax = sp.scalar_mul(a, x);
                if f.values[ax as usize] != f.values[x as usize] {
                    return Ok(ConditionReport::failure(
                        which,
                        Witness {
                            what: "F(ax) != F(x)".into(),
                            c: None,
                            a: Some(u64::from(a)),
                            x: Some(x),
                        },
                    ));
                }
            }
        }
    } else if f.values[0] != 0 {
        return Ok(ConditionReport::failure(
            which,
            Witness {
                what: "F(0) != 0".into(),
                c: None,
                a: None,
                x: Some(0),
            },
        ));
    }

    // Duals of the components, indexed by c.
    let duals: Vec<&PAryFn> = {
        let mut v = Vec::with_capacity(certs.len());
        for (_, cert) in &certs {
            v.push(cert.dual.as_ref().unwrap());
        }
        v
    };
    let dual_of = |c: u32| -> &PAryFn { duals[(c - 1) as usize] };

    // Map from the m-tuple of basis inner products back to a codomain code.
    let basis: Vec<u32> = (0..m).map(|i| p.pow(i as u32) as u32).collect();
    let mut key_to_code = vec![u32::MAX; cod_size as usize];
    for y in 0..cod_size as u32 {
        let mut key = 0u64;
        for (i, &bi) in basis.iter().enumerate() {
            key += u64::from(f.codomain.inner(bi, y)) * p.pow(i as u32);
        }
        assert_eq!(
            key_to_code[key as usize],
            u32::MAX,
            "inner product form is degenerate"
        );
        key_to_code[key as usize] = y;
    }
    let assemble = |component_for_basis: &dyn Fn(usize) -> u32| -> Vec<u32> {
        let tabs: Vec<&PAryFn> = (0..m).map(|i| dual_of(component_for_basis(i))).collect();
        (0..size as usize)
            .map(|x| {
                let mut key = 0u64;
                for (i, tab) in tabs.iter().enumerate() {
                    key += u64::from(tab.values[x]) * p.pow(i as u32);
                }
                key_to_code[key as usize]
            })
            .collect()
    };

    match which {
        Condition::I => {
            // sigma = identity: components of F* are exactly the duals.
            let star_values = assemble(&|i| basis[i]);
            for (c, cert) in &certs {
                let dual = cert.dual.as_ref().unwrap();
                for x in 0..size as usize {
                    if f.codomain.inner(*c, star_values[x]) != dual.values[x] {
                        return Ok(ConditionReport::failure(
                            which,
                            Witness {
                                what: "component duals do not assemble into a vectorial dual"
                                    .into(),
                                c: Some(*c),
                                a: None,
                                x: Some(x as u64),
                            },
                        ));
                    }
                }
            }
            let star = VecFn::new(Arc::clone(sp), f.codomain.clone(), star_values);
            Ok(ConditionReport {
                condition: which,
                holds: true,
                eps_or_theta: Some(eps_or_theta),
                l_exponent: None,
                d_exponent: None,
                vectorial_dual: Some(star),
                counterexample: None,
            })
        }
        Condition::II | Condition::III => {
            let cod_field = match &f.codomain {
                Codomain::Field(fd) => Arc::clone(fd),
                Codomain::Vector { .. } => unreachable!(),
            };
            let qm = cod_field.order() - 1;
            let base_to_cod = TowerMap::new(sp.base_field(), &cod_field)?;

            // Exhaustive search over d with gcd(d - 1, p^m - 1) = 1.
            let mut found: Option<(u64, u64, Vec<u32>)> = None;
            'dsearch: for dm1 in 1..qm {
                if dm1.gcd(&qm) != 1 {
                    continue;
                }
                let d = dm1 + 1;
                // (1-d)^{-1} = 1 - l mod (p^m - 1), so sigma^{-1}(c) = c^{1-l}.
                let lm1 = mod_inverse(dm1, qm).expect("coprime");
                let l = lm1 + 1;
                let one_minus_l = qm - (lm1 % qm); // 1 - l mod qm
                let one_minus_d = qm - (dm1 % qm);

                // F(ax) = a^l F(x) for the subfield action.
                for a in 2..qt as u32 {
                    let al = cod_field.pow(base_to_cod.embed(a), l);
                    for x in 0..size {
                        let ax = sp.scalar_mul(a, x);
                        let lhs = f.values[ax as usize];
                        let rhs = cod_field.mul(al, f.values[x as usize]);
                        if lhs != rhs {
                            continue 'dsearch;
                        }
                    }
                }

                // Assemble F* with (F*)_{c'} = dual of F_{c'^{1-l}}.
                let star_values = assemble(&|i| cod_field.pow(basis[i], one_minus_l));
                // Verify (F_c)* = (F*)_{c^{1-d}} for every c.
                for (c, cert) in &certs {
                    let sigma_c = cod_field.pow(*c, one_minus_d);
                    let dual = cert.dual.as_ref().unwrap();
                    for x in 0..size as usize {
                        if f.codomain.inner(sigma_c, star_values[x]) != dual.values[x] {
                            continue 'dsearch;
                        }
                    }
                }
                found = Some((l, d, star_values));
                break;
            }

            match found {
                Some((l, d, star_values)) => {
                    let star = VecFn::new(Arc::clone(sp), f.codomain.clone(), star_values);
                    Ok(ConditionReport {
                        condition: which,
                        holds: true,
                        eps_or_theta: Some(eps_or_theta),
                        l_exponent: Some(l),
                        d_exponent: Some(d),
                        vectorial_dual: Some(star),
                        counterexample: None,
                    })
                }
                None => Ok(ConditionReport::failure(
                    which,
                    Witness {
                        what: "no exponent d satisfies the dual relation and scalar covariance"
                            .into(),
                        c: None,
                        a: None,
                        x: None,
                    },
                )),
            }
        }
    }
}

/// Inverse of `a` modulo `modulus` (requires coprimality).
pub fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    let (mut old_r, mut r) = (i128::from(a), i128::from(modulus));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i128::from(modulus)) as u64)
}
