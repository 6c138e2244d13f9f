//! Cross-checks the fast Walsh transform against a naive reference that uses
//! only the public field/cyclotomic primitives, plus the inverse-transform
//! identity and the quadratic-form bent certificates.

use std::sync::Arc;

use dualbent::cyclotomic::CycloInt;
use dualbent::galois::Space;
use dualbent::spectral::{bent_analyze, walsh, PAryFn, QuarticUnit};

/// Reference transform: `W_f(a) = sum_x zeta^{f(x) - <a,x>}`, summed term by
/// term with no shared code beyond the inner product itself.
fn walsh_naive(f: &PAryFn) -> Vec<CycloInt> {
    let sp = &f.space;
    let p = sp.p() as u32;
    let size = sp.size();
    (0..size)
        .map(|a| {
            let mut acc = CycloInt::zero(p);
            for x in 0..size {
                let e = i64::from(f.values[x as usize]) - i64::from(sp.inner(a, x));
                acc = acc.add(&CycloInt::zeta_pow(p, e)).unwrap();
            }
            acc
        })
        .collect()
}

fn xorshift(state: &mut u64) -> u64 {
    *state ^= *state << 13;
    *state ^= *state >> 7;
    *state ^= *state << 17;
    *state
}

fn random_fn(space: &Arc<Space>, seed: u64) -> PAryFn {
    let mut st = seed | 1;
    let p = space.p();
    let values = (0..space.size())
        .map(|_| (xorshift(&mut st) % p) as u8)
        .collect();
    PAryFn::new(Arc::clone(space), values)
}

/// Every domain shape with at most 3^6 points over p in {2, 3, 5}, several
/// functions each: fast transform equals the reference, pointwise.
#[test]
fn fast_equals_naive_exhaustively_on_small_domains() {
    let shapes: Vec<(u64, usize, Vec<usize>)> = vec![
        (2, 1, vec![1]),
        (2, 1, vec![3]),
        (2, 1, vec![2, 2]),
        (2, 2, vec![4]),
        (2, 1, vec![3, 3]),
        (2, 3, vec![3, 3]),
        (2, 2, vec![4, 4]),
        (2, 1, vec![9]),
        (3, 1, vec![1]),
        (3, 1, vec![2]),
        (3, 1, vec![3]),
        (3, 1, vec![2, 2]),
        (3, 2, vec![2, 2]),
        (3, 1, vec![5]),
        (3, 2, vec![4, 2]),
        (3, 1, vec![2, 2, 2]),
        (5, 1, vec![1]),
        (5, 1, vec![2]),
        (5, 1, vec![3]),
        (5, 2, vec![2, 2]),
    ];
    for (p, t, parts) in shapes {
        let sp = Space::new(p, t, &parts).unwrap();
        assert!(sp.size() <= 729);
        for seed in [1u64, 7, 1234] {
            let f = random_fn(&sp, seed ^ (p << 8) ^ (parts.len() as u64));
            let fast = walsh(&f);
            let naive = walsh_naive(&f);
            for (a, (l, r)) in fast.table.iter().zip(&naive).enumerate() {
                assert_eq!(l, r, "p={p} t={t} parts={parts:?} a={a}");
            }
        }
    }
}

#[test]
fn zero_function_spectrum_is_a_delta() {
    let sp = Space::new(3, 1, &[2, 1]).unwrap();
    let f = PAryFn::new(Arc::clone(&sp), vec![0; 27]);
    let w = walsh(&f);
    assert_eq!(w.table[0], CycloInt::from_int(3, 27));
    for a in 1..27 {
        assert!(w.table[a].is_zero());
    }
}

/// A linear functional's spectrum concentrates on its defining point.
#[test]
fn linear_function_spectrum_shifts() {
    let sp = Space::new(3, 1, &[2]).unwrap();
    for b in 0..9u64 {
        let values: Vec<u8> = (0..9u64).map(|x| sp.inner(b, x)).collect();
        let f = PAryFn::new(Arc::clone(&sp), values);
        let w = walsh(&f);
        for a in 0..9u64 {
            if a == b {
                assert_eq!(w.table[a as usize], CycloInt::from_int(3, 9));
            } else {
                assert!(w.table[a as usize].is_zero(), "a={a} b={b}");
            }
        }
    }
}

/// `zeta^{f(x)} = p^{-n} sum_a W_f(a) zeta^{<a,x>}` reconstructs the table.
#[test]
fn inverse_walsh_identity() {
    let sp = Space::new(3, 1, &[2, 2]).unwrap();
    let f = random_fn(&sp, 99);
    let w = walsh(&f);
    let p = 3u32;
    for x in 0..sp.size() {
        let mut acc = CycloInt::zero(p);
        for a in 0..sp.size() {
            let term = w.table[a as usize].mul_zeta_pow(i64::from(sp.inner(a, x)));
            acc = acc.add(&term).unwrap();
        }
        let expected = CycloInt::zeta_pow(p, i64::from(f.values[x as usize])).scale(81);
        assert_eq!(acc, expected, "x={x}");
    }
}

/// `f(x) = Tr_1^2(x^2)` over F_9 is weakly regular bent with eps = +1, and
/// the dual-of-dual identity holds.
#[test]
fn quadratic_form_on_f9_is_weakly_regular() {
    let sp = Space::new(3, 1, &[2]).unwrap();
    let fld = &sp.parts()[0];
    let values: Vec<u8> = (0..9u32)
        .map(|x| fld.trace_to_prime(fld.mul(x, x)))
        .collect();
    let f = PAryFn::new(Arc::clone(&sp), values);

    // Bentness via the naive oracle: |W(a)|^2 = 9 for all a.
    for w in walsh_naive(&f) {
        assert_eq!(w.norm_sq(), CycloInt::from_int(3, 9));
    }

    let cert = bent_analyze(&f);
    assert!(cert.is_bent);
    assert!(cert.is_weakly_regular);
    assert_eq!(cert.eps, Some(QuarticUnit::ONE));

    // (f*)*(x) = f(-x).
    let dual = cert.dual.as_ref().unwrap();
    let cert2 = bent_analyze(dual);
    assert!(cert2.is_weakly_regular);
    let dd = cert2.dual.as_ref().unwrap();
    for x in 0..sp.size() {
        assert_eq!(dd.values[x as usize], f.values[sp.neg_point(x) as usize]);
    }
    // eps_{f*} = eps_f^{-1}.
    assert_eq!(cert2.eps, Some(QuarticUnit::ONE));
}

/// Constant functions are never bent.
#[test]
fn constant_function_is_not_bent() {
    let sp = Space::new(3, 1, &[2]).unwrap();
    for c in 0..3u8 {
        let f = PAryFn::new(Arc::clone(&sp), vec![c; 9]);
        let cert = bent_analyze(&f);
        assert!(!cert.is_bent);
    }
}

/// Odd-dimension check: Tr(x^2) on F_27 (p = 3, n = 3) is weakly regular
/// with the Gauss-sum magnitude decomposition.
#[test]
fn odd_dimension_quadratic_certificate() {
    let sp = Space::new(3, 1, &[3]).unwrap();
    let fld = &sp.parts()[0];
    let values: Vec<u8> = (0..27u32)
        .map(|x| fld.trace_to_prime(fld.mul(x, x)))
        .collect();
    let f = PAryFn::new(Arc::clone(&sp), values);
    let cert = bent_analyze(&f);
    assert!(cert.is_bent);
    assert!(cert.is_weakly_regular);
    let eps = cert.eps.unwrap();
    // p = 3 mod 4 and n odd: eps is imaginary.
    assert!(eps.imaginary);
    assert!(cert.odd_n_sign.is_some());
}
