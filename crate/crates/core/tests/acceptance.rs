//! Acceptance suite: one test per criterion, each printing a PASS line on
//! success (run with `-- --nocapture` to see them). Expected enumerators
//! and parameters are the published reference values; every comparison is
//! exact.
//!
//! The large 25-ary enumeration is `#[ignore]`d by default; run it with
//! `cargo test -p dualbent --test acceptance -- --ignored` (several minutes).

use std::sync::Arc;

use dualbent::catalog::{build, preset, Coeff, Family, FamilySpec};
use dualbent::codes::{
    build_code, defining_set, direct_zero_count, dual_distance_upto, is_self_orthogonal,
    weight_distribution, DualDistance, SubsetSpec, WeightDist,
};
use dualbent::derived::{
    classify, hamming_max_d, lcd_extend, quantum_hamming_max_d, steane_distance_term,
    steane_quantum, BoundVerdict,
};
use dualbent::galois::Field;
use dualbent::predict::{
    applicable_selectors, count_exponent_form, count_scalar_invariant, count_sign_varying,
    value_count, weights_thm, CondContext, TheoremId, TheoremSelector, ValueClass,
};
use dualbent::spectral::{bent_analyze, component, verify_condition, Codomain, Condition, VecFn};

fn wd(pairs: &[(u64, u64)]) -> WeightDist {
    WeightDist {
        pairs: pairs.to_vec(),
    }
}

fn spec(family: Family, p: u64, t: usize, m: usize) -> FamilySpec {
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

struct BuiltCode {
    code: dualbent::codes::LinearCode,
    dist: WeightDist,
    self_orthogonal: bool,
}

fn enumerate(f: &VecFn, subset: &SubsetSpec) -> BuiltCode {
    let ds = defining_set(f, subset).expect("defining set");
    let code = build_code(&ds).expect("code");
    let dist = weight_distribution(&ds, &code);
    let self_orthogonal = is_self_orthogonal(&code);
    BuiltCode {
        code,
        dist,
        self_orthogonal,
    }
}

#[test]
fn criterion_01_example4_reproduction() {
    let (f, _) = build(&preset("example4").unwrap().spec).unwrap();
    let t0 = std::time::Instant::now();
    let built = enumerate(&f, &SubsetSpec::Zero);
    assert_eq!(built.code.length, 81);
    assert_eq!(built.code.dimension, 7);
    assert_eq!(
        built.dist,
        wd(&[
            (0, 1),
            (48, 360),
            (51, 576),
            (54, 240),
            (57, 720),
            (60, 288),
            (81, 2)
        ])
    );
    assert!(built.self_orthogonal);
    assert_eq!(dual_distance_upto(&built.code, 3), DualDistance::Exact(3));
    let elapsed = t0.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("ACCEPTANCE 1 (example4, [81,7,48]_3 + dual [81,74,3]_3): PASS ({elapsed:?})");
}

#[test]
fn criterion_02_example1_reproduction() {
    let t0 = std::time::Instant::now();
    let (f, _) = build(&preset("example1").unwrap().spec).unwrap();

    let zero = enumerate(&f, &SubsetSpec::Zero);
    assert_eq!((zero.code.length, zero.code.dimension), (657, 9));
    assert_eq!(
        zero.dist,
        wd(&[
            (0, 1),
            (414, 1312),
            (432, 5904),
            (441, 11808),
            (486, 656),
            (657, 2)
        ])
    );
    assert!(zero.self_orthogonal);
    assert_eq!(dual_distance_upto(&zero.code, 3), DualDistance::Exact(3));

    let sq = enumerate(&f, &SubsetSpec::Squares);
    assert_eq!((sq.code.length, sq.code.dimension), (2952, 9));
    assert_eq!(
        sq.dist,
        wd(&[
            (0, 1),
            (1944, 3608),
            (1953, 5904),
            (1980, 7216),
            (1998, 2952),
            (2952, 2)
        ])
    );
    assert!(sq.self_orthogonal);
    assert_eq!(dual_distance_upto(&sq.code, 3), DualDistance::Exact(3));

    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "took {elapsed:?}, budget 30 s"
    );
    println!("ACCEPTANCE 2 (example1, [657,648,3]_3 and [2952,2943,3]_3): PASS ({elapsed:?})");
}

#[test]
fn criterion_03_example2_reproduction() {
    let t0 = std::time::Instant::now();
    let (f, _) = build(&preset("example2").unwrap().spec).unwrap();
    let built = enumerate(&f, &SubsetSpec::Single(1));
    assert_eq!((built.code.length, built.code.dimension), (738, 5));
    assert_eq!(built.code.q(), 9);
    assert_eq!(
        built.dist,
        wd(&[(0, 1), (648, 27224), (657, 11152), (666, 20664), (738, 8)])
    );
    assert!(built.self_orthogonal);
    assert_eq!(dual_distance_upto(&built.code, 3), DualDistance::Exact(3));
    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "took {elapsed:?}, budget 30 s"
    );
    println!("ACCEPTANCE 3 (example2, [738,5,648]_9 + dual [738,733,3]_9): PASS ({elapsed:?})");
}

#[test]
fn criterion_04_examples_5_6_and_example3_prediction() {
    let t0 = std::time::Instant::now();

    let (f5, _) = build(&preset("example5").unwrap().spec).unwrap();
    let w = match &f5.codomain {
        Codomain::Field(fd) => fd.primitive(),
        _ => panic!(),
    };
    let built5 = enumerate(&f5, &SubsetSpec::Single(w));
    assert_eq!((built5.code.length, built5.code.dimension), (72, 4));
    assert_eq!(
        built5.dist,
        wd(&[
            (0, 1),
            (62, 2016),
            (63, 640),
            (64, 3240),
            (71, 576),
            (72, 88)
        ])
    );
    assert!(built5.self_orthogonal);
    assert_eq!(dual_distance_upto(&built5.code, 4), DualDistance::Exact(4));
    assert_eq!(classify(72, 68, 4, 9), BoundVerdict::HammingOptimal);

    let (f6, _) = build(&preset("example6").unwrap().spec).unwrap();
    let built6 = enumerate(&f6, &SubsetSpec::Coset { gamma: 1, b: 4 });
    assert_eq!((built6.code.length, built6.code.dimension), (3600, 4));
    assert_eq!(built6.code.q(), 25);
    assert_eq!(
        built6.dist,
        wd(&[
            (0, 1),
            (3444, 93600),
            (3450, 14976),
            (3456, 195000),
            (3469, 86400),
            (3600, 648)
        ])
    );
    assert!(built6.self_orthogonal);
    assert_eq!(dual_distance_upto(&built6.code, 3), DualDistance::Exact(3));

    // Example 3 prediction from the closed form, checked against the
    // published enumerator without running the long enumeration.
    let mut sel = TheoremSelector::base(
        TheoremId::T5ii,
        5,
        2,
        2,
        8,
        (build(&preset("example3").unwrap().spec).unwrap().1).eps_or_theta,
    );
    sel.b = Some(6);
    sel.j = Some(1);
    sel.jprime = Some(1);
    assert_eq!(weights_thm(&sel).unwrap(), example3_enumerator());

    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "took {elapsed:?}, budget 5 min"
    );
    println!(
        "ACCEPTANCE 4 (example5 [72,4,62]_9, example6 [3600,4,3444]_25, \
         example3 prediction): PASS ({elapsed:?})"
    );
}

fn example3_enumerator() -> WeightDist {
    wd(&[
        (0, 1),
        (60000, 202824),
        (60050, 3004800),
        (60100, 4867776),
        (60175, 1502400),
        (60200, 187800),
        (62600, 24),
    ])
}

/// Long-running: the exact 25-ary enumeration behind example3.
#[test]
#[ignore = "about 2.4e10 trace evaluations; run with -- --ignored"]
fn criterion_04_long_example3_enumeration() {
    let (f, _) = build(&preset("example3").unwrap().spec).unwrap();
    let built = enumerate(&f, &SubsetSpec::Coset { gamma: 1, b: 6 });
    assert_eq!((built.code.length, built.code.dimension), (62600, 5));
    assert_eq!(built.dist, example3_enumerator());
    assert!(built.self_orthogonal);
    println!("ACCEPTANCE 4-long (example3 enumerated, [62600,5,60000]_25): PASS");
}

/// One sweep instance: build, certify, and for every listed subset check
/// self-orthogonality, dual distance at least 3, prediction = enumeration
/// for every applicable closed form, and the value-distribution counts.
fn run_instance(label: &str, fs: &FamilySpec, subsets: Vec<SubsetSpec>) {
    let (f, exp) = build(fs).unwrap_or_else(|e| panic!("{label}: build failed: {e}"));
    let rep = verify_condition(&f, exp.condition)
        .unwrap_or_else(|e| panic!("{label}: verify errored: {e}"));
    assert!(
        rep.holds,
        "{label}: condition fails: {:?}",
        rep.counterexample
    );
    assert_eq!(
        rep.eps_or_theta,
        Some(exp.eps_or_theta),
        "{label}: sign mismatch"
    );
    assert_eq!(rep.l_exponent, exp.l, "{label}: l mismatch");
    assert_eq!(rep.d_exponent, exp.d, "{label}: d mismatch");

    let sp = &f.space;
    let p = sp.p();
    let t = sp.base_degree();
    let n = sp.dim();
    let m = f.codomain.log_size();
    let sign = exp.eps_or_theta;
    let fm = match &f.codomain {
        Codomain::Field(fd) => Some(Arc::clone(fd)),
        Codomain::Vector { .. } => None,
    };
    let star = rep.vectorial_dual.as_ref().unwrap();

    // Value distribution: measured |D_{F,i}| and |D_{F*,i}| match the
    // closed-form counts for every output value.
    let cod_size = f.codomain.size() as usize;
    let mut counts_f = vec![0i128; cod_size];
    let mut counts_star = vec![0i128; cod_size];
    for x in 0..sp.size() as usize {
        counts_f[f.values[x] as usize] += 1;
        counts_star[star.values[x] as usize] += 1;
    }
    let f0 = f.values[0];
    for i in 0..cod_size as u32 {
        let class = match exp.condition {
            Condition::I | Condition::II => {
                if i == f0 {
                    ValueClass::AtBase
                } else {
                    ValueClass::Other
                }
            }
            Condition::III => {
                if i == 0 {
                    ValueClass::AtBase
                } else {
                    let fmx = fm.as_ref().unwrap();
                    ValueClass::EtaNegI(fmx.eta(fmx.neg(i)).unwrap())
                }
            }
        };
        let want_f = value_count(exp.condition, p, n, m, sign, false, class).unwrap();
        assert_eq!(counts_f[i as usize], want_f, "{label}: |D_F,{i}|");
        let want_star = value_count(exp.condition, p, n, m, sign, true, class).unwrap();
        assert_eq!(counts_star[i as usize], want_star, "{label}: |D_F*,{i}|");
    }

    for subset in subsets {
        let ds = defining_set(&f, &subset).unwrap_or_else(|e| panic!("{label}: {e}"));
        let code = build_code(&ds).unwrap();
        assert_eq!(
            code.dimension,
            n / t + 1,
            "{label} {subset:?}: rank deficient"
        );
        assert!(
            is_self_orthogonal(&code),
            "{label} {subset:?}: Gram not zero"
        );
        assert!(
            dual_distance_upto(&code, 3).lower_bound() >= 3,
            "{label} {subset:?}: dual distance below 3"
        );
        let enumerated = weight_distribution(&ds, &code);
        let selectors = applicable_selectors(
            exp.condition,
            p,
            t,
            m,
            n,
            sign,
            rep.l_exponent,
            fm.as_ref(),
            &ds.subset,
            f0,
        );
        assert!(
            !selectors.is_empty(),
            "{label} {subset:?}: no covering closed form"
        );
        for sel in &selectors {
            let predicted =
                weights_thm(sel).unwrap_or_else(|e| panic!("{label} {subset:?} {:?}: {e}", sel.id));
            assert_eq!(
                predicted, enumerated,
                "{label} {subset:?} {:?}: prediction != enumeration",
                sel.id
            );
            // Published "at most k-weight" bounds per theorem case.
            let bound = match sel.id {
                TheoremId::T3ii => 4,
                TheoremId::T1 | TheoremId::T3i | TheoremId::T4 | TheoremId::C1 | TheoremId::T5i => {
                    5
                }
                _ => 6,
            };
            assert!(
                predicted.nonzero_weight_count() <= bound,
                "{label} {subset:?} {:?}: more than {bound} weights",
                sel.id
            );
        }
    }

    // Dual-of-dual identity on every (weakly regular) component.
    for c in 1..f.codomain.size() as u32 {
        let comp = component(&f, c).unwrap();
        let cert = bent_analyze(&comp);
        assert!(
            cert.is_weakly_regular,
            "{label}: component {c} not weakly regular"
        );
        let dual = cert.dual.as_ref().unwrap();
        let cert2 = bent_analyze(dual);
        assert!(cert2.is_weakly_regular);
        let dd = cert2.dual.as_ref().unwrap();
        for x in 0..sp.size() {
            assert_eq!(
                dd.values[x as usize],
                comp.values[sp.neg_point(x) as usize],
                "{label}: dual-of-dual at c = {c}, x = {x}"
            );
        }
    }
}

fn all_subsets(cod_size: u32) -> Vec<SubsetSpec> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << cod_size) - 1 {
        let members: Vec<u32> = (0..cod_size).filter(|&i| mask & (1 << i) != 0).collect();
        out.push(SubsetSpec::Explicit(members));
    }
    out
}

fn singletons(cod_size: u32) -> Vec<SubsetSpec> {
    (0..cod_size).map(SubsetSpec::Single).collect()
}

#[test]
fn criterion_05_theorem_verification_sweep() {
    let t0 = std::time::Instant::now();
    let mut count = 0usize;

    // --- scalar-invariant instances ---
    let mut s = spec(Family::Eq3, 2, 1, 2);
    s.n1 = Some(3);
    run_instance("eq3 p2 t1 m2 n'3", &s, all_subsets(4));
    count += 1;

    let mut s = spec(Family::Eq3, 3, 2, 1);
    s.n1 = Some(2);
    run_instance("eq3 p3 t2 m1 n'2", &s, all_subsets(3));
    count += 1;

    let mut s = spec(Family::Eq3, 2, 3, 2);
    s.n1 = Some(3);
    run_instance("eq3 p2 t3 m2 n'3", &s, all_subsets(4));
    count += 1;

    let mut s = spec(Family::Eq4, 3, 1, 1);
    s.n1 = Some(2);
    s.r = Some(1);
    s.u = Some(3);
    run_instance("eq4 p3 t1 m1 n'2 r1 u3", &s, all_subsets(3));
    count += 1;

    let mut s = spec(Family::Eq5, 2, 1, 2);
    s.n1 = Some(3);
    s.n2 = Some(3);
    s.r = Some(3);
    s.u = Some(2);
    let mut subsets = singletons(4);
    subsets.push(SubsetSpec::Explicit(vec![1, 2]));
    subsets.push(SubsetSpec::Explicit(vec![0, 3]));
    subsets.push(SubsetSpec::Explicit(vec![1, 2, 3]));
    run_instance("eq5 p2 t1 m2 n'3 n''3 r3 u2", &s, subsets);
    count += 1;

    let mut s = spec(Family::Eq3, 2, 2, 3);
    s.n1 = Some(4);
    let mut subsets = singletons(8);
    subsets.push(SubsetSpec::Explicit(vec![1, 2, 3, 4, 5]));
    subsets.push(SubsetSpec::Explicit(vec![1, 2, 3, 4, 5, 6]));
    subsets.push(SubsetSpec::Explicit((1..8).collect()));
    run_instance("eq3 p2 t2 m3 n'4", &s, subsets);
    count += 1;

    // --- constant-sign exponent instances ---
    let pre = preset("example1").unwrap();
    run_instance(
        "eq8 p3 t1 m2 n8",
        &pre.spec,
        vec![
            SubsetSpec::Zero,
            SubsetSpec::Squares,
            SubsetSpec::NonSquares,
        ],
    );
    count += 1;

    let mut s = spec(Family::Eq10, 3, 2, 2);
    s.n = Some(8);
    s.alpha = Some(Coeff::Code(1));
    let mut subsets = vec![
        SubsetSpec::Zero,
        SubsetSpec::Squares,
        SubsetSpec::NonSquares,
    ];
    subsets.extend(singletons(9).into_iter().skip(1));
    for gamma in [1u32, 4, 2, 8] {
        subsets.push(SubsetSpec::Coset { gamma, b: 4 });
    }
    run_instance("eq10 p3 t2 m2 n8", &s, subsets);
    count += 1;

    let mut s = spec(Family::Eq7, 3, 1, 1);
    s.n1 = Some(3);
    s.u = Some(1);
    run_instance(
        "eq7 p3 t1 m1 n'3 u1",
        &s,
        vec![
            SubsetSpec::Zero,
            SubsetSpec::Squares,
            SubsetSpec::NonSquares,
        ],
    );
    count += 1;

    let mut s = spec(Family::Eq7, 2, 2, 2);
    s.n1 = Some(6);
    s.u = Some(1);
    run_instance("eq7 p2 t2 m2 n'6 u1", &s, singletons(4));
    count += 1;

    let mut s = spec(Family::Eq9, 3, 1, 1);
    s.s = Some(4);
    s.alphas = Some(vec![
        Coeff::Code(1),
        Coeff::Code(1),
        Coeff::Code(1),
        Coeff::Code(2),
    ]);
    run_instance(
        "eq9 p3 t1 m1 s4",
        &s,
        vec![
            SubsetSpec::Zero,
            SubsetSpec::Single(1),
            SubsetSpec::Single(2),
        ],
    );
    count += 1;

    let pre = preset("example2").unwrap();
    let mut subsets = vec![
        SubsetSpec::Zero,
        SubsetSpec::Single(1),
        SubsetSpec::Single(4),
        SubsetSpec::Squares,
        SubsetSpec::NonSquares,
    ];
    for gamma in [1u32, 4, 2, 7] {
        subsets.push(SubsetSpec::Coset { gamma, b: 4 });
    }
    run_instance("eq11 p3 t2 m2 n'4 n''2", &pre.spec, subsets);
    count += 1;

    // --- character-sign instances ---
    let mut s = spec(Family::Eq13, 3, 1, 1);
    s.n = Some(5);
    s.alpha = Some(Coeff::Code(1));
    run_instance(
        "eq13 p3 t1 m1 n5",
        &s,
        vec![
            SubsetSpec::Zero,
            SubsetSpec::Single(1),
            SubsetSpec::Single(2),
        ],
    );
    count += 1;

    let mut s = spec(Family::Eq14, 3, 1, 2);
    s.s = Some(3);
    s.alphas = Some(vec![
        Coeff::Code(1),
        Coeff::Code(1),
        Coeff::WPow { w_pow: 1 },
    ]);
    run_instance(
        "eq14 p3 t1 m2 s3",
        &s,
        vec![
            SubsetSpec::Zero,
            SubsetSpec::Squares,
            SubsetSpec::NonSquares,
        ],
    );
    count += 1;

    let pre = preset("example4").unwrap();
    run_instance(
        "eq15 p3 t1 m2 n'2 n''2",
        &pre.spec,
        vec![
            SubsetSpec::Zero,
            SubsetSpec::Squares,
            SubsetSpec::NonSquares,
        ],
    );
    count += 1;

    let pre = preset("example5").unwrap();
    let mut subsets = vec![
        SubsetSpec::Zero,
        SubsetSpec::Squares,
        SubsetSpec::NonSquares,
    ];
    subsets.extend(singletons(9).into_iter().skip(1));
    for gamma in [1u32, 4, 2, 8] {
        subsets.push(SubsetSpec::Coset { gamma, b: 4 });
    }
    run_instance("eq15 p3 t2 m2 n'2 n''2", &pre.spec, subsets);
    count += 1;

    let mut s = spec(Family::Eq13, 5, 1, 1);
    s.n = Some(3);
    s.alpha = Some(Coeff::Code(2));
    let mut subsets = vec![
        SubsetSpec::Zero,
        SubsetSpec::Squares,
        SubsetSpec::NonSquares,
    ];
    subsets.extend(singletons(5).into_iter().skip(1));
    run_instance("eq13 p5 t1 m1 n3", &s, subsets);
    count += 1;

    assert!(count >= 12, "sweep must cover at least 12 instances");
    let elapsed = t0.elapsed();
    assert!(
        elapsed.as_secs_f64() < 600.0,
        "took {elapsed:?}, budget 10 min"
    );
    println!("ACCEPTANCE 5 (theorem sweep, {count} instances, all conditions): PASS ({elapsed:?})");
}

#[test]
fn criterion_06_reference_table_spot_checks() {
    let t0 = std::time::Instant::now();
    // [14, 7, 4]_2 and [28, 7, 12]_2 with dual [28, 21, 4]_2.
    let (f, _) = build(&preset("eq3-p2-t1-m2-n3").unwrap().spec).unwrap();
    let one = enumerate(&f, &SubsetSpec::Single(1));
    assert_eq!((one.code.length, one.code.dimension), (14, 7));
    assert_eq!(one.dist.min_nonzero_weight(), Some(4));
    assert!(one.self_orthogonal);

    let two = enumerate(&f, &SubsetSpec::Explicit(vec![1, 2]));
    assert_eq!((two.code.length, two.code.dimension), (28, 7));
    assert_eq!(two.dist.min_nonzero_weight(), Some(12));
    assert_eq!(dual_distance_upto(&two.code, 4), DualDistance::Exact(4));

    // [24, 21, 3]_9 as the dual of a [24, 3]_9 code.
    let (f, _) = build(&preset("eq3-p3-t2-m1-n2").unwrap().spec).unwrap();
    let nine = enumerate(&f, &SubsetSpec::Single(1));
    assert_eq!((nine.code.length, nine.code.dimension), (24, 3));
    assert_eq!(nine.code.q(), 9);
    assert_eq!(dual_distance_upto(&nine.code, 3), DualDistance::Exact(3));

    // [14, 11, 3]_8 as the dual of a [14, 3]_8 code.
    let (f, _) = build(&preset("eq3-p2-t3-m2-n3").unwrap().spec).unwrap();
    let octal = enumerate(&f, &SubsetSpec::Single(1));
    assert_eq!((octal.code.length, octal.code.dimension), (14, 3));
    assert_eq!(octal.code.q(), 8);
    assert_eq!(dual_distance_upto(&octal.code, 3), DualDistance::Exact(3));

    let elapsed = t0.elapsed();
    println!(
        "ACCEPTANCE 6 (reference rows [14,7,4]_2 [28,7,12]_2 [28,21,4]_2 \
         [24,21,3]_9 [14,11,3]_8): PASS ({elapsed:?})"
    );
}

#[test]
fn criterion_07_charsum_grid_summary() {
    // The exhaustive grids live in tests/charsum_grid.rs; spot-verify the
    // harness wiring here so this criterion reports its own line.
    use dualbent::charsums::*;
    let f25 = Field::new(5, 2, None).unwrap();
    for a in 1..25u32 {
        assert_eq!(
            quadratic_weighted_sum_closed(&f25, a).unwrap(),
            quadratic_weighted_sum_oracle(&f25, a).unwrap()
        );
    }
    assert_eq!(
        square_shift_counts_closed(&f25).unwrap(),
        square_shift_counts_oracle(&f25).unwrap()
    );
    println!(
        "ACCEPTANCE 7 (character-sum closed forms vs oracles; exhaustive \
         grids in charsum_grid tests): PASS"
    );
}

fn xorshift(state: &mut u64) -> u64 {
    *state ^= *state << 13;
    *state ^= *state >> 7;
    *state ^= *state << 17;
    *state
}

#[test]
fn criterion_08_codeword_count_identities() {
    let t0 = std::time::Instant::now();

    // Scalar-invariant counts on a binary instance.
    let (f, exp) = build(&preset("eq3-p2-t1-m2-n3").unwrap().spec).unwrap();
    let rep = verify_condition(&f, Condition::I).unwrap();
    let star = rep.vectorial_dual.as_ref().unwrap();
    let ctx = CondContext::new(2, 6, 2, 1).unwrap();
    let eps = i32::from(exp.eps_or_theta.sign);
    let mut state = 0xfeedu64;
    let mut checked = 0;
    let subsets = all_subsets(4);
    while checked < 220 {
        let subset = &subsets[(xorshift(&mut state) % subsets.len() as u64) as usize];
        let ds = defining_set(&f, subset).unwrap();
        let alpha = 1 + xorshift(&mut state) % (f.space.size() - 1);
        let beta = (xorshift(&mut state) % 2) as u8;
        let direct = direct_zero_count(&ds, alpha, beta);
        let fstar_in = ds.subset.contains(&star.values[alpha as usize]);
        let f0_in = ds.subset.contains(&f.values[0]);
        let closed = count_scalar_invariant(
            &ctx,
            eps,
            ds.subset.len() as u64,
            fstar_in,
            f0_in,
            beta == 0,
        );
        assert_eq!(
            i128::from(direct),
            closed,
            "scalar-invariant count mismatch"
        );
        checked += 1;
    }

    // Exponent-form counts on the 3-ary degree-8 instance.
    let (f, exp) = build(&preset("example1").unwrap().spec).unwrap();
    let rep = verify_condition(&f, Condition::II).unwrap();
    let star = rep.vectorial_dual.as_ref().unwrap();
    let ctx = CondContext::new(3, 8, 2, 1).unwrap();
    let eps = i32::from(exp.eps_or_theta.sign);
    let l = rep.l_exponent.unwrap();
    let mut checked = 0;
    for a in 0..9u32 {
        let ds = defining_set(&f, &SubsetSpec::Single(a)).unwrap();
        for _ in 0..25 {
            let alpha = 1 + xorshift(&mut state) % (f.space.size() - 1);
            let beta = (xorshift(&mut state) % 3) as u8;
            let direct = direct_zero_count(&ds, alpha, beta);
            let closed = count_exponent_form(
                &ctx,
                eps,
                a,
                star.values[alpha as usize],
                u32::from(beta),
                l,
            );
            assert_eq!(
                i128::from(direct),
                closed,
                "exponent count mismatch at a = {a}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 200);

    // Sign-varying counts: both parities of m/t.
    for (name, (p, n, m, t)) in [
        ("example4", (3u64, 6usize, 2usize, 1usize)),
        ("example5", (3, 6, 2, 2)),
    ] {
        let (f, exp) = build(&preset(name).unwrap().spec).unwrap();
        let rep = verify_condition(&f, Condition::III).unwrap();
        let star = rep.vectorial_dual.as_ref().unwrap();
        let ctx = CondContext::new(p, n, m, t).unwrap();
        let l = rep.l_exponent.unwrap();
        let qt = p.pow(t as u32) as u8;
        let mut checked = 0;
        for a in 0..9u32 {
            let ds = defining_set(&f, &SubsetSpec::Single(a)).unwrap();
            for _ in 0..13 {
                let alpha = 1 + xorshift(&mut state) % (f.space.size() - 1);
                let beta = (xorshift(&mut state) % u64::from(qt)) as u8;
                let direct = direct_zero_count(&ds, alpha, beta);
                let closed = count_sign_varying(
                    &ctx,
                    exp.eps_or_theta,
                    a,
                    star.values[alpha as usize],
                    u32::from(beta),
                    l,
                )
                .unwrap();
                assert_eq!(
                    i128::from(direct),
                    closed,
                    "{name}: sign-varying count at a = {a}"
                );
                checked += 1;
            }
        }
        assert!(checked >= 100);
    }

    let elapsed = t0.elapsed();
    println!("ACCEPTANCE 8 (closed-form codeword counts vs direct counts): PASS ({elapsed:?})");
}

#[test]
fn criterion_09_lcd_and_quantum_derivations() {
    let t0 = std::time::Instant::now();

    // [27, 24, 3]_9 from the 9-ary [24, 3] self-orthogonal code.
    let (f, _) = build(&preset("eq3-p3-t2-m1-n2").unwrap().spec).unwrap();
    let built = enumerate(&f, &SubsetSpec::Single(1));
    let ext = lcd_extend(&built.code).unwrap();
    assert_eq!((ext.length, ext.dimension, ext.q()), (27, 3, 9));
    assert_eq!(dual_distance_upto(&ext, 3), DualDistance::Exact(3));

    // [17, 14, 3]_8 from the octal [14, 3] code, and [[14, 10, 3]]_8.
    let (f, _) = build(&preset("eq3-p2-t3-m2-n3").unwrap().spec).unwrap();
    let built = enumerate(&f, &SubsetSpec::Single(1));
    let ext = lcd_extend(&built.code).unwrap();
    assert_eq!((ext.length, ext.dimension, ext.q()), (17, 3, 8));
    assert_eq!(dual_distance_upto(&ext, 3), DualDistance::Exact(3));
    let qp = steane_quantum(&built.code).unwrap();
    assert_eq!((qp.n, qp.k, qp.d, qp.q), (14, 10, 3, 8));
    assert_eq!(quantum_hamming_max_d(14, 10, 8), 3);
    assert_eq!(qp.bound_verdict, BoundVerdict::HammingOptimal);

    // [[150, 144, 3]]_4 from the quaternary [150, 5] code.
    let (f, _) = build(&preset("eq3-p2-t2-m3-n4").unwrap().spec).unwrap();
    let built = enumerate(&f, &SubsetSpec::Explicit(vec![1, 2, 3, 4, 5]));
    assert_eq!((built.code.length, built.code.dimension), (150, 5));
    assert!(built.self_orthogonal);
    let qp = steane_quantum(&built.code).unwrap();
    assert_eq!((qp.n, qp.k, qp.d, qp.q), (150, 144, 3, 4));
    assert_eq!(quantum_hamming_max_d(150, 144, 4), 4);
    assert_eq!(qp.bound_verdict, BoundVerdict::HammingAlmostOptimal);

    // The distance term of the nested-pair construction.
    for q in 2..=25u64 {
        assert_eq!(steane_distance_term(q, 2), 3);
    }

    let elapsed = t0.elapsed();
    println!(
        "ACCEPTANCE 9 ([27,24,3]_9, [17,14,3]_8, [[14,10,3]]_8, \
         [[150,144,3]]_4 + bound verdicts): PASS ({elapsed:?})"
    );
}

#[test]
fn criterion_10_spectral_foundations() {
    // Parseval is asserted inside every Walsh transform; the exhaustive
    // fast-vs-naive comparison lives in tests/walsh_oracle.rs. Re-verify a
    // representative here so the criterion reports its own line, plus the
    // dual-of-dual identity on a weakly regular instance (the sweep checks
    // it on all of them).
    use dualbent::cyclotomic::CycloInt;
    use dualbent::galois::Space;
    use dualbent::spectral::{walsh, PAryFn};

    let sp = Space::new(3, 1, &[2, 1]).unwrap();
    let values: Vec<u8> = (0..27u64).map(|x| ((x * x + 5 * x) % 3) as u8).collect();
    let f = PAryFn::new(Arc::clone(&sp), values);
    let w = walsh(&f); // Parseval asserted internally.
    for a in 0..27u64 {
        let mut acc = CycloInt::zero(3);
        for x in 0..27u64 {
            let e = i64::from(f.values[x as usize]) - i64::from(sp.inner(a, x));
            acc = acc.add(&CycloInt::zeta_pow(3, e)).unwrap();
        }
        assert_eq!(acc, w.table[a as usize]);
    }

    let (f, _) = build(&preset("example4").unwrap().spec).unwrap();
    let comp = component(&f, 1).unwrap();
    let cert = bent_analyze(&comp);
    assert!(cert.is_weakly_regular);
    let dual = cert.dual.as_ref().unwrap();
    let dd = bent_analyze(dual);
    let ddd = dd.dual.as_ref().unwrap();
    for x in 0..f.space.size() {
        assert_eq!(
            ddd.values[x as usize],
            comp.values[f.space.neg_point(x) as usize]
        );
    }
    println!("ACCEPTANCE 10 (Parseval, fast = naive, dual-of-dual): PASS");
}

#[test]
fn hamming_bound_side_checks() {
    // Auxiliary: classification stays consistent with the published claims.
    assert_eq!(hamming_max_d(657, 648, 3), 4);
    assert_eq!(classify(657, 648, 3, 3), BoundVerdict::HammingAlmostOptimal);
    assert_eq!(classify(81, 74, 3, 3), BoundVerdict::HammingAlmostOptimal);
    assert_eq!(classify(28, 21, 4, 2), BoundVerdict::HammingOptimal);
}
