//! Exact arithmetic in prime-power finite fields and their subfield towers.
//!
//! A [`Field`] is `F_{p^n}` presented as `F_p[x]/(modulus)`. Elements are
//! *codes*: integers in `[0, p^n)` whose base-`p` digits are the coefficients
//! of the residue polynomial, constant term first. Degree-1 fields use the
//! modulus `x`, so prime fields go through the same code path as extensions.
//!
//! Multiplication, inversion and powering run on precomputed exp/log tables,
//! which caps supported fields at roughly 2^24 elements. Inversion follows
//! the convention `0^{-1} = 0`.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Bundled default modulus polynomials (`p,n,c0,...,cn` per line).
const DEFAULT_POLYS: &str = include_str!("../data/irreducible_polys.txt");

static NEXT_FIELD_UID: AtomicU64 = AtomicU64::new(1);

static MODULUS_TABLE_OVERRIDE: std::sync::OnceLock<String> = std::sync::OnceLock::new();

/// Replaces the bundled modulus table for the rest of the process (same
/// line format). Intended to be called once at startup; returns false if an
/// override was already installed.
pub fn set_modulus_table(contents: String) -> bool {
    MODULUS_TABLE_OVERRIDE.set(contents).is_ok()
}

fn active_table() -> &'static str {
    MODULUS_TABLE_OVERRIDE
        .get()
        .map(String::as_str)
        .unwrap_or(DEFAULT_POLYS)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree must be at least 1")]
    BadDegree,
    #[error("supplied modulus is not monic of the requested degree")]
    BadModulus,
    #[error("supplied modulus is reducible over F_{0}")]
    Reducible(u64),
    #[error("field too large: {0} elements exceeds the 2^24 table cap")]
    TooLarge(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("quadratic character requires odd characteristic")]
    EvenCharacteristic,
    #[error("{sub} does not embed in {sup}: {reason}")]
    BadTower {
        sub: String,
        sup: String,
        reason: String,
    },
    #[error("base degree {t} does not divide part degree {nj}")]
    BaseDegree { t: usize, nj: usize },
    #[error("element code {0} out of range for this field")]
    BadCode(u64),
}

const TABLE_CAP: u64 = 1 << 24;

/// An element tagged with the identity of its field, for checked arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    uid: u64,
    code: u32,
}

impl FieldElem {
    pub fn code(&self) -> u32 {
        self.code
    }
}

/// `F_{p^n}` with precomputed multiplicative tables.
pub struct Field {
    uid: u64,
    p: u64,
    n: usize,
    order: u64,
    modulus: Vec<u64>,
    primitive: u32,
    /// exp[i] = code of primitive^i, doubled so `exp[la + lb]` needs no reduction.
    exp: Vec<u32>,
    /// log[code] = discrete log base primitive; `log[0]` is a sentinel.
    log: Vec<u32>,
    /// Absolute trace to `F_p` per element code.
    trace1: Vec<u8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Field(p={}, n={}, modulus={:?})",
            self.p, self.n, self.modulus
        )
    }
}

const LOG_ZERO: u32 = u32::MAX;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense polynomial helpers over F_p; coefficients constant-term-first.
mod poly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }

    pub fn rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
        let mut r: Vec<u64> = a.iter().map(|&c| c % p).collect();
        trim(&mut r);
        let dm = m.len() - 1;
        debug_assert!(dm >= 1);
        let lead_inv = inv_mod(*m.last().unwrap() % p, p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = r[dr] * lead_inv % p;
            if c != 0 {
                let shift = dr - dm;
                for i in 0..=dm {
                    r[shift + i] = (r[shift + i] + p - c * m[i] % p) % p;
                }
            }
            debug_assert_eq!(r[dr], 0);
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        // p is a small prime.
        let mut r = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        r
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
        let deg = f.len() - 1;
        if deg == 0 {
            return false;
        }
        if deg == 1 {
            return true;
        }
        for d in 1..=deg / 2 {
            let count = p.pow(d as u32);
            for code in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    g.push(c % p);
                    c /= p;
                }
                g.push(1);
                let r = rem(p, f, &g);
                if r.len() == 1 && r[0] == 0 {
                    return false;
                }
            }
        }
        true
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Builds `F_{p^n}`. A supplied modulus must be monic of degree `n` and
    /// irreducible; otherwise the bundled table entry for `(p, n)` is used,
    /// falling back to a deterministic search for the smallest monic
    /// irreducible (non-leading coefficients compared in counting order).
    pub fn new(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<Arc<Field>, GaloisError> {
        Self::new_with_table(p, n, modulus, active_table())
    }

    /// Same as [`Field::new`] with an explicit modulus table (the bundled
    /// table format: `p,n,c0,...,cn` per line, `#` comments allowed).
    pub fn new_with_table(
        p: u64,
        n: usize,
        modulus: Option<&[u64]>,
        table: &str,
    ) -> Result<Arc<Field>, GaloisError> {
        if !is_prime(p) {
            return Err(GaloisError::NotPrime(p));
        }
        if n == 0 {
            return Err(GaloisError::BadDegree);
        }
        // Residues (traces, table values) are stored as u8 throughout.
        if p > 251 {
            return Err(GaloisError::TooLarge(p));
        }
        let order = p
            .checked_pow(n as u32)
            .filter(|&o| o <= TABLE_CAP)
            .ok_or_else(|| GaloisError::TooLarge(p.saturating_pow(n as u32)))?;
        let modulus: Vec<u64> = match modulus {
            Some(m) => {
                if m.len() != n + 1 || *m.last().unwrap() != 1 || m.iter().any(|&c| c >= p) {
                    return Err(GaloisError::BadModulus);
                }
                if !poly::is_irreducible(p, m) {
                    return Err(GaloisError::Reducible(p));
                }
                m.to_vec()
            }
            None => match lookup_table(table, p, n) {
                Some(m) => m,
                None => search_modulus(p, n),
            },
        };

        let mut field = Field {
            uid: NEXT_FIELD_UID.fetch_add(1, Ordering::Relaxed),
            p,
            n,
            order,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
            trace1: Vec::new(),
        };
        field.build_tables();
        Ok(Arc::new(field))
    }

    fn build_tables(&mut self) {
        let q1 = self.order - 1;
        let factors = prime_factors(q1.max(1));
        // Ordered search for a generator of the multiplicative group.
        let mut primitive = 0u32;
        for cand in 2..self.order {
            let cand = cand as u32;
            if q1 == 1 {
                primitive = 1;
                break;
            }
            let ok = factors.iter().all(|&f| self.pow_poly(cand, q1 / f) != 1);
            if ok {
                primitive = cand;
                break;
            }
        }
        if self.order == 2 {
            primitive = 1;
        }
        self.primitive = primitive;

        let q1u = q1 as usize;
        let mut exp = vec![0u32; 2 * q1u.max(1)];
        let mut log = vec![LOG_ZERO; self.order as usize];
        let mut acc = 1u32;
        for i in 0..q1u.max(1) {
            exp[i] = acc;
            log[acc as usize] = i as u32;
            acc = self.mul_poly(acc, primitive);
        }
        for i in 0..q1u.max(1) {
            exp[q1u.max(1) + i] = exp[i];
        }
        self.exp = exp;
        self.log = log;

        // Absolute trace via Frobenius iterates.
        let mut trace1 = vec![0u8; self.order as usize];
        for code in 0..self.order {
            let mut s = 0u32;
            let mut x = code as u32;
            for _ in 0..self.n {
                s = self.add(s, x);
                x = self.mul_poly_pow(x, self.p);
            }
            debug_assert!(u64::from(s) < self.p);
            trace1[code as usize] = s as u8;
        }
        self.trace1 = trace1;
    }

    /// Schoolbook multiply-and-reduce, used only while bootstrapping tables.
    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let mut t = vec![0u64; 2 * self.n - 1];
        let mut ad = [0u64; 32];
        let mut bd = [0u64; 32];
        self.digits(a, &mut ad);
        self.digits(b, &mut bd);
        for i in 0..self.n {
            if ad[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                t[i + j] = (t[i + j] + ad[i] * bd[j]) % p;
            }
        }
        // reduce by modulus: x^n = -(c0 + c1 x + ... + c_{n-1} x^{n-1})
        for k in (self.n..2 * self.n - 1).rev() {
            let c = t[k];
            if c == 0 {
                continue;
            }
            t[k] = 0;
            for i in 0..self.n {
                let sub = c * self.modulus[i] % p;
                t[k - self.n + i] = (t[k - self.n + i] + p - sub) % p;
            }
        }
        let mut code = 0u64;
        for i in (0..self.n).rev() {
            code = code * p + t[i];
        }
        code as u32
    }

    fn mul_poly_pow(&self, a: u32, e: u64) -> u32 {
        self.pow_poly(a, e)
    }

    fn pow_poly(&self, a: u32, mut e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let mut base = a;
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_poly(r, base);
            }
            base = self.mul_poly(base, base);
            e >>= 1;
        }
        r
    }

    fn digits(&self, code: u32, out: &mut [u64]) {
        let mut c = code as u64;
        for slot in out.iter_mut().take(self.n) {
            *slot = c % self.p;
            c /= self.p;
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn uid(&self) -> u64 {
        self.uid
    }

    /// Wraps a raw code as a checked element of this field.
    pub fn elem(&self, code: u32) -> Result<FieldElem, GaloisError> {
        if u64::from(code) >= self.order {
            return Err(GaloisError::BadCode(u64::from(code)));
        }
        Ok(FieldElem {
            uid: self.uid,
            code,
        })
    }

    pub fn elem_from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem, GaloisError> {
        if coeffs.len() > self.n || coeffs.iter().any(|&c| c >= self.p) {
            return Err(GaloisError::BadCode(0));
        }
        let mut code = 0u64;
        for &c in coeffs.iter().rev() {
            code = code * self.p + c;
        }
        self.elem(code as u32)
    }

    pub fn coeffs(&self, code: u32) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        self.digits(code, &mut out);
        out
    }

    fn check(&self, e: FieldElem) -> Result<u32, GaloisError> {
        if e.uid != self.uid {
            return Err(GaloisError::FieldMismatch);
        }
        Ok(e.code)
    }

    // ----- raw-code arithmetic (hot paths) -----

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let mut ca = a as u64;
        let mut cb = b as u64;
        let mut code = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.n {
            let d = (ca % p + cb % p) % p;
            code += d * mult;
            mult *= p;
            ca /= p;
            cb /= p;
        }
        code as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.p;
        let mut ca = a as u64;
        let mut code = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.n {
            let d = (p - ca % p) % p;
            code += d * mult;
            mult *= p;
            ca /= p;
        }
        code as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let la = self.log[a as usize] as usize;
        let lb = self.log[b as usize] as usize;
        self.exp[la + lb]
    }

    /// Multiplicative inverse with the convention `inv(0) = 0`.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let q1 = (self.order - 1) as usize;
        let la = self.log[a as usize] as usize;
        self.exp[(q1 - la) % q1.max(1)]
    }

    /// `a^e` for `e >= 0`; `pow(0, 0) = 1`.
    #[inline]
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let q1 = self.order - 1;
        let la = u64::from(self.log[a as usize]);
        let idx = (u128::from(la) * u128::from(e) % u128::from(q1)) as usize;
        self.exp[idx]
    }

    /// `a^e` for signed `e`, using `0^{-1} = 0` (so `0^e = 0` for `e < 0`).
    #[inline]
    pub fn pow_signed(&self, a: u32, e: i64) -> u32 {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.pow(self.inv(a), e.unsigned_abs())
        }
    }

    #[inline]
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p)
    }

    /// Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
    pub fn eta(&self, a: u32) -> Result<i32, GaloisError> {
        if self.p == 2 {
            return Err(GaloisError::EvenCharacteristic);
        }
        if a == 0 {
            return Ok(0);
        }
        Ok(if self.log[a as usize] % 2 == 0 { 1 } else { -1 })
    }

    /// Absolute trace to the prime field, as a residue in `[0, p)`.
    #[inline]
    pub fn trace_to_prime(&self, a: u32) -> u8 {
        self.trace1[a as usize]
    }

    /// Discrete logarithm base the primitive element; `None` at 0.
    #[inline]
    pub fn discrete_log(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        Some(u64::from(self.log[a as usize]))
    }

    /// The constant field element for a small nonnegative integer.
    #[inline]
    pub fn from_int(&self, k: u64) -> u32 {
        (k % self.p) as u32
    }

    /// Relative trace onto the degree-`t` subfield, returned as an element of
    /// this field (lying in the subfield image): `sum of a^{p^{t i}}`.
    pub fn rel_trace_in_field(&self, a: u32, t: usize) -> Result<u32, GaloisError> {
        if t == 0 || self.n % t != 0 {
            return Err(GaloisError::BaseDegree { t, nj: self.n });
        }
        let step = self.p.pow(t as u32);
        let mut s = 0u32;
        let mut x = a;
        for _ in 0..self.n / t {
            s = self.add(s, x);
            x = self.pow(x, step);
        }
        Ok(s)
    }

    // ----- checked element arithmetic -----

    pub fn e_add(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GaloisError> {
        Ok(FieldElem {
            uid: self.uid,
            code: self.add(self.check(a)?, self.check(b)?),
        })
    }

    pub fn e_mul(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem, GaloisError> {
        Ok(FieldElem {
            uid: self.uid,
            code: self.mul(self.check(a)?, self.check(b)?),
        })
    }

    pub fn e_inv(&self, a: FieldElem) -> Result<FieldElem, GaloisError> {
        Ok(FieldElem {
            uid: self.uid,
            code: self.inv(self.check(a)?),
        })
    }

    pub fn e_pow(&self, a: FieldElem, e: i64) -> Result<FieldElem, GaloisError> {
        Ok(FieldElem {
            uid: self.uid,
            code: self.pow_signed(self.check(a)?, e),
        })
    }

    pub fn e_frobenius(&self, a: FieldElem) -> Result<FieldElem, GaloisError> {
        Ok(FieldElem {
            uid: self.uid,
            code: self.frobenius(self.check(a)?),
        })
    }
}

fn lookup_table(table: &str, p: u64, n: usize) -> Option<Vec<u64>> {
    for line in table.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<u64> = line
            .split(',')
            .filter_map(|s| s.trim().parse().ok())
            .collect();
        if nums.len() >= 3 && nums[0] == p && nums[1] == n as u64 && nums.len() == n + 3 {
            return Some(nums[2..].to_vec());
        }
    }
    None
}

/// Smallest monic irreducible of degree `n`, comparing the non-leading
/// coefficient tuple as a little-endian base-`p` counter.
fn search_modulus(p: u64, n: usize) -> Vec<u64> {
    if n == 1 {
        return vec![0, 1];
    }
    let count = p.pow(n as u32);
    for code in 0..count {
        let mut f = Vec::with_capacity(n + 1);
        let mut c = code;
        for _ in 0..n {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if poly::is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist");
}

/// Embedding of a degree-`t` field into a degree-`n` extension (`t | n`),
/// realized by sending the subfield's generator to a root of its modulus.
pub struct TowerMap {
    sub: Arc<Field>,
    sup: Arc<Field>,
    image_of_generator: u32,
    embed: Vec<u32>,
    pullback: Vec<u32>,
}

const NOT_IN_SUBFIELD: u32 = u32::MAX;

impl TowerMap {
    pub fn new(sub: &Arc<Field>, sup: &Arc<Field>) -> Result<TowerMap, GaloisError> {
        let fail = |reason: &str| GaloisError::BadTower {
            sub: format!("F_{}^{}", sub.p(), sub.degree()),
            sup: format!("F_{}^{}", sup.p(), sup.degree()),
            reason: reason.to_string(),
        };
        if sub.p() != sup.p() {
            return Err(fail("different characteristic"));
        }
        if sup.degree() % sub.degree() != 0 {
            return Err(fail("degree does not divide"));
        }
        let q1 = sub.order() - 1;
        let gap = (sup.order() - 1) / q1;
        // Canonical root first: with the bundled norm-compatible primitive
        // moduli, the class of x in sup raised to the index gap is a root of
        // sub's modulus, and the embeddings it defines compose across
        // towers (equal representations get the identity embedding). Fall
        // back to a scan for user-supplied moduli.
        let mut root = None;
        if sub.degree() >= 2 {
            let x_class = sup.p() as u32;
            let candidate = sup.pow(x_class, gap);
            let mut acc = 0u32;
            for &c in sub.modulus().iter().rev() {
                acc = sup.mul(acc, candidate);
                acc = sup.add(acc, (c % sup.p()) as u32);
            }
            if acc == 0 {
                root = Some(candidate);
            }
        }
        // Subfield elements of sup: 0 and the powers of g^((Q-1)/(q-1)).
        // 0 matters for degree-1 subfields, whose modulus is the polynomial x.
        let base = sup.pow(sup.primitive(), gap);
        let candidates = std::iter::once(0u32).chain((0..q1).map(|k| sup.pow(base, k)));
        for y in candidates {
            if root.is_some() {
                break;
            }
            // Evaluate sub's modulus at y inside sup.
            let mut acc = 0u32;
            for &c in sub.modulus().iter().rev() {
                acc = sup.mul(acc, y);
                acc = sup.add(acc, (c % sup.p()) as u32);
            }
            if acc == 0 {
                root = Some(y);
                break;
            }
        }
        let root = root.ok_or_else(|| fail("modulus has no root in superfield"))?;

        let mut embed = vec![0u32; sub.order() as usize];
        let mut powers = vec![0u32; sub.degree()];
        let mut acc = 1u32;
        for slot in powers.iter_mut() {
            *slot = acc;
            acc = sup.mul(acc, root);
        }
        for code in 0..sub.order() {
            let coeffs = sub.coeffs(code as u32);
            let mut img = 0u32;
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    let term = sup.mul(powers[i], (c % sup.p()) as u32);
                    img = sup.add(img, term);
                }
            }
            embed[code as usize] = img;
        }
        let mut pullback = vec![NOT_IN_SUBFIELD; sup.order() as usize];
        for (code, &img) in embed.iter().enumerate() {
            if pullback[img as usize] != NOT_IN_SUBFIELD {
                return Err(fail("embedding not injective"));
            }
            pullback[img as usize] = code as u32;
        }

        let map = TowerMap {
            sub: Arc::clone(sub),
            sup: Arc::clone(sup),
            image_of_generator: root,
            embed,
            pullback,
        };
        map.verify()?;
        Ok(map)
    }

    /// Homomorphism check: exhaustive over pairs for small subfields,
    /// deterministic sampling otherwise.
    fn verify(&self) -> Result<(), GaloisError> {
        let q = self.sub.order();
        let fail = || GaloisError::BadTower {
            sub: format!("F_{}^{}", self.sub.p(), self.sub.degree()),
            sup: format!("F_{}^{}", self.sup.p(), self.sup.degree()),
            reason: "embedding is not a homomorphism".to_string(),
        };
        let check_pair = |a: u32, b: u32| -> bool {
            let ea = self.embed[a as usize];
            let eb = self.embed[b as usize];
            self.embed[self.sub.add(a, b) as usize] == self.sup.add(ea, eb)
                && self.embed[self.sub.mul(a, b) as usize] == self.sup.mul(ea, eb)
        };
        if q <= 256 {
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    if !check_pair(a, b) {
                        return Err(fail());
                    }
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64;
            for _ in 0..4096 {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let a = (state >> 33) % q;
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let b = (state >> 33) % q;
                if !check_pair(a as u32, b as u32) {
                    return Err(fail());
                }
            }
        }
        Ok(())
    }

    pub fn sub(&self) -> &Arc<Field> {
        &self.sub
    }

    pub fn sup(&self) -> &Arc<Field> {
        &self.sup
    }

    pub fn image_of_generator(&self) -> u32 {
        self.image_of_generator
    }

    #[inline]
    pub fn embed(&self, sub_code: u32) -> u32 {
        self.embed[sub_code as usize]
    }

    /// Inverse of [`TowerMap::embed`]; `None` when the element lies outside
    /// the subfield image.
    #[inline]
    pub fn pullback(&self, sup_code: u32) -> Option<u32> {
        let v = self.pullback[sup_code as usize];
        (v != NOT_IN_SUBFIELD).then_some(v)
    }

    /// Relative trace `sup -> sub` in subfield coordinates.
    pub fn trace(&self, sup_code: u32) -> Result<u32, GaloisError> {
        let t = self.sub.degree();
        let in_field = self.sup.rel_trace_in_field(sup_code, t)?;
        self.pullback(in_field).ok_or(GaloisError::BadTower {
            sub: String::new(),
            sup: String::new(),
            reason: "trace landed outside subfield image".to_string(),
        })
    }
}

/// A product space `F_{p^{n_1}} x ... x F_{p^{n_s}}` with a base degree `t`
/// dividing every part degree. Points are packed indices; enumeration order
/// is lexicographic over parts with the last part varying fastest.
pub struct Space {
    p: u64,
    t: usize,
    parts: Vec<Arc<Field>>,
    /// `F_{p^t}` together with its embedding into each part.
    base: Arc<Field>,
    towers: Vec<TowerMap>,
    strides: Vec<u64>,
    size: u64,
    n: usize,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs: Vec<usize> = self.parts.iter().map(|f| f.degree()).collect();
        write!(f, "Space(p={}, t={}, parts={:?})", self.p, self.t, degs)
    }
}

impl Space {
    pub fn new(p: u64, t: usize, part_degrees: &[usize]) -> Result<Arc<Space>, GaloisError> {
        let parts: Vec<Arc<Field>> = part_degrees
            .iter()
            .map(|&d| Field::new(p, d, None))
            .collect::<Result<_, _>>()?;
        Self::from_fields(t, parts)
    }

    pub fn from_fields(t: usize, parts: Vec<Arc<Field>>) -> Result<Arc<Space>, GaloisError> {
        assert!(!parts.is_empty());
        let p = parts[0].p();
        for f in &parts {
            if f.p() != p {
                return Err(GaloisError::FieldMismatch);
            }
            if t == 0 || f.degree() % t != 0 {
                return Err(GaloisError::BaseDegree { t, nj: f.degree() });
            }
        }
        let base = Field::new(p, t, None)?;
        let towers: Vec<TowerMap> = parts
            .iter()
            .map(|f| TowerMap::new(&base, f))
            .collect::<Result<_, _>>()?;
        let mut strides = vec![0u64; parts.len()];
        let mut acc = 1u64;
        for (j, f) in parts.iter().enumerate().rev() {
            strides[j] = acc;
            acc = acc
                .checked_mul(f.order())
                .ok_or(GaloisError::TooLarge(u64::MAX))?;
        }
        if acc > TABLE_CAP {
            return Err(GaloisError::TooLarge(acc));
        }
        let n = parts.iter().map(|f| f.degree()).sum();
        Ok(Arc::new(Space {
            p,
            t,
            parts,
            base,
            towers,
            strides,
            size: acc,
            n,
        }))
    }

    /// Same parts, different base degree.
    pub fn rebase(&self, t: usize) -> Result<Arc<Space>, GaloisError> {
        Self::from_fields(t, self.parts.clone())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn base_degree(&self) -> usize {
        self.t
    }

    pub fn parts(&self) -> &[Arc<Field>] {
        &self.parts
    }

    pub fn base_field(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn towers(&self) -> &[TowerMap] {
        &self.towers
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn decode(&self, idx: u64, out: &mut [u32]) {
        let mut rest = idx;
        for (j, f) in self.parts.iter().enumerate() {
            out[j] = (rest / self.strides[j]) as u32;
            rest %= self.strides[j];
            let _ = f;
        }
    }

    #[inline]
    pub fn encode(&self, codes: &[u32]) -> u64 {
        codes
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| u64::from(c) * s)
            .sum()
    }

    /// Scalar action of `a` in `F_{p^t}` on a point, part by part.
    pub fn scalar_mul(&self, a: u32, point: u64) -> u64 {
        let mut codes = vec![0u32; self.parts.len()];
        self.decode(point, &mut codes);
        for (j, f) in self.parts.iter().enumerate() {
            codes[j] = f.mul(self.towers[j].embed(a), codes[j]);
        }
        self.encode(&codes)
    }

    pub fn neg_point(&self, point: u64) -> u64 {
        let mut codes = vec![0u32; self.parts.len()];
        self.decode(point, &mut codes);
        for (j, f) in self.parts.iter().enumerate() {
            codes[j] = f.neg(codes[j]);
        }
        self.encode(&codes)
    }

    /// The inner product `sum_j Tr_1^{n_j}(a_j x_j)` as an `F_p` residue.
    pub fn inner(&self, a: u64, x: u64) -> u8 {
        let mut ac = vec![0u32; self.parts.len()];
        let mut xc = vec![0u32; self.parts.len()];
        self.decode(a, &mut ac);
        self.decode(x, &mut xc);
        let mut s = 0u64;
        for (j, f) in self.parts.iter().enumerate() {
            s += u64::from(f.trace_to_prime(f.mul(ac[j], xc[j])));
        }
        (s % self.p) as u8
    }

    /// Gram matrix of the trace inner product in the base-`p` digit basis:
    /// block diagonal, one `n_j x n_j` block per part with entries
    /// `Tr_1^{n_j}(x^{r+c})`.
    pub fn gram_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.n;
        let mut g = vec![vec![0u8; n]; n];
        let mut offset_from_end = 0usize;
        // Strides make the last part the least significant digits.
        for j in (0..self.parts.len()).rev() {
            let f = &self.parts[j];
            let d = f.degree();
            let x = if d == 1 {
                1u32
            } else {
                f.elem_from_coeffs(&[0, 1]).unwrap().code()
            };
            for r in 0..d {
                for c in 0..d {
                    let v = f.trace_to_prime(f.pow(x, (r + c) as u64));
                    g[offset_from_end + r][offset_from_end + c] = v;
                }
            }
            offset_from_end += d;
        }
        g
    }
}

/// Digit decomposition of a packed point index into `n` base-`p` digits,
/// least significant first (matching [`Space::gram_matrix`] indexing).
pub fn point_digits(p: u64, n: usize, idx: u64, out: &mut [u8]) {
    let mut rest = idx;
    for slot in out.iter_mut().take(n) {
        *slot = (rest % p) as u8;
        rest /= p;
    }
}

pub fn digits_to_point(p: u64, digits: &[u8]) -> u64 {
    let mut acc = 0u64;
    for &d in digits.iter().rev() {
        acc = acc * p + u64::from(d);
    }
    acc
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u64,
    pub n: usize,
    pub modulus: Vec<u64>,
    pub primitive: Vec<u64>,
}

impl From<&Field> for FieldDescription {
    fn from(f: &Field) -> Self {
        FieldDescription {
            p: f.p(),
            n: f.degree(),
            modulus: f.modulus().to_vec(),
            primitive: f.coeffs(f.primitive()),
        }
    }
}
