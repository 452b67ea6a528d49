//! Classification rules checked against the brute-force series oracle.

mod common;

use cesaro_spaces::classify::{cesaro_class, membership, profile, AsymptoticClass};
use cesaro_spaces::sequence::SymbolicSequence;
use cesaro_spaces::space::{Scale, SpaceSpec};
use common::{agreement_sweep, critical_log_decay, scale_terms, series, Oracle};

fn pl(a: f64, b: f64) -> SymbolicSequence {
    SymbolicSequence::power_log(a, b).unwrap()
}

fn spike(g: f64, d: f64) -> SymbolicSequence {
    SymbolicSequence::spike(g, d).unwrap()
}

fn oracle_attained(x: &SymbolicSequence, scale: Scale, crit: f64) -> bool {
    critical_log_decay(x, scale, crit) > 1.02
}

fn check_profile(x: SymbolicSequence, scale: Scale, crit: f64, attained: bool, below: f64, above: f64) {
    let p = profile(&x, scale).unwrap();
    assert!((p.crit - crit).abs() < 1e-12, "{x:?} {scale:?}: crit {}", p.crit);
    assert_eq!(p.attained, attained, "{x:?} {scale:?}");
    assert_eq!(series(&x, scale, below).verdict, Oracle::Divergent, "{x:?} {scale:?} at {below}");
    assert_eq!(series(&x, scale, above).verdict, Oracle::Convergent, "{x:?} {scale:?} at {above}");
    assert_eq!(oracle_attained(&x, scale, crit), attained, "{x:?} {scale:?} at crit");
}

#[test]
fn ell_profiles_match_oracle() {
    check_profile(pl(0.5, 0.0), Scale::Ell, 2.0, false, 1.8, 6.0);
    check_profile(pl(0.5, 1.0), Scale::Ell, 2.0, true, 1.5, 6.0);
    check_profile(spike(0.0, 1.0), Scale::Ell, 1.0, false, 0.5, 6.0);
}

#[test]
fn ces_profiles_match_oracle() {
    check_profile(spike(0.5, 0.0), Scale::Ces, 2.0, false, 1.8, 6.0);
    let x = pl(2.0, 0.0);
    let p = profile(&x, Scale::Ces).unwrap();
    assert_eq!((p.crit, p.attained), (1.0, false));
    for q in [2.0, 4.0] {
        assert_eq!(series(&x, Scale::Ces, q).verdict, Oracle::Convergent, "q = {q}");
    }
    assert!(!oracle_attained(&x, Scale::Ces, 1.0));
}

#[test]
fn d_profiles_match_oracle() {
    check_profile(spike(-0.5, 0.0), Scale::D, 2.0, false, 1.8, 6.0);
    check_profile(pl(1.0, 0.0), Scale::D, 1.0, false, 0.8, 2.0);
    let flat = spike(0.0, 2.0);
    assert_eq!(profile(&flat, Scale::D).unwrap().crit, f64::INFINITY);
    for q in [1.5, 2.0] {
        assert_eq!(series(&flat, Scale::D, q).verdict, Oracle::Divergent, "q = {q}");
        assert_eq!(series(&flat, Scale::Ell, q).verdict, Oracle::Convergent, "q = {q}");
    }
}

#[allow(clippy::needless_range_loop)]
/// Least-squares fit of `ln C|x|_n = c - a ln n - b ln L(n)` over `n ∈ [10^3, 10^6]`.
fn regress(x: &SymbolicSequence) -> (f64, f64) {
    let terms = scale_terms(x, Scale::Ces, 1_000_000);
    let pts: Vec<(f64, f64, f64)> = (0..=60)
        .map(|i| {
            let n = (1e3 * 1e3f64.powf(i as f64 / 60.0)).round() as usize;
            let t = n as f64;
            (t.ln(), (1.0 + t.ln()).ln(), terms[n - 1].ln())
        })
        .collect();
    // normal equations for (c, a, b) with regressors (1, -ln n, -ln L)
    let mut m = [[0.0f64; 4]; 3];
    for &(u, v, y) in &pts {
        let r = [1.0, -u, -v];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += r[i] * r[j];
            }
            m[i][3] += r[i] * y;
        }
    }
    for col in 0..3 {
        for row in 0..3 {
            if row != col {
                let f = m[row][col] / m[col][col];
                for k in 0..4 {
                    m[row][k] -= f * m[col][k];
                }
            }
        }
    }
    (m[1][3] / m[1][1], m[2][3] / m[2][2])
}

#[test]
fn cesaro_class_matches_regression() {
    for (x, a, b) in [(pl(2.0, 0.0), 1.0, 0.0), (pl(0.5, 0.0), 0.5, 0.0)] {
        assert_eq!(cesaro_class(&x), AsymptoticClass::theta(a, b, 0.0), "{x:?}");
        let (ra, rb) = regress(&x);
        assert!((ra - a).abs() < 0.03 && (rb - b).abs() < 0.3, "{x:?}: regression ({ra}, {rb})");
    }
}

#[test]
fn spike_cesaro_class_matches_dyadic_samples() {
    // C|x| is a sawtooth between spikes; its envelope at n = 2^j carries the decay.
    let x = spike(0.25, 0.0);
    assert_eq!(cesaro_class(&x), AsymptoticClass::theta(0.75, 0.0, 0.0));
    let at = |j: i32| (1..=j).map(|i| (0.25 * i as f64).exp2()).sum::<f64>() / 2f64.powi(j);
    assert_eq!(scale_terms(&x, Scale::Ces, 1 << 10)[(1 << 10) - 1], at(10));
    let slope = (at(60).ln() - at(40).ln()) / (20.0 * std::f64::consts::LN_2);
    assert!((slope + 0.75).abs() < 1e-3, "slope {slope}");
}

#[test]
fn proper_containment_example() {
    let x = spike(0.25, 0.0);
    assert!(membership(&x, SpaceSpec::minus(Scale::Ces, 2.0).unwrap()).is_in());
    assert!(!membership(&x, SpaceSpec::minus(Scale::Ell, 2.0).unwrap()).is_in());
    // just above crit = 4/3 the sum converges too slowly to settle numerically,
    // so read the fitted dyadic decay there and settle higher exponents outright
    assert!(series(&x, Scale::Ces, 1.5).fit.unwrap().kappa < -0.05);
    assert_eq!(series(&x, Scale::Ces, 4.0).verdict, Oracle::Convergent);
    for q in [1.5, 2.0, 6.0] {
        assert_eq!(series(&x, Scale::Ell, q).verdict, Oracle::Divergent, "q = {q}");
    }
}

#[test]
fn classifier_agrees_with_oracle_off_the_boundary() {
    let s = agreement_sweep(0.05);
    assert!(s.disagreements.is_empty(), "{:#?}", s.disagreements);
    assert!(s.agreed >= 200, "only {} decided points", s.agreed);
}
