use super::*;
use proptest::prelude::*;

/// Σ 1/n² summed smallest-first to 10^7, plus the Euler–Maclaurin tail.
fn zeta2_oracle() -> f64 {
    let m = 10_000_000u64;
    let head: f64 = (1..=m).rev().map(|n| 1.0 / (n as f64 * n as f64)).sum::<CompensatedSum>().value();
    let mf = m as f64;
    head + 1.0 / mf - 0.5 / (mf * mf) + 1.0 / (6.0 * mf * mf * mf)
}

fn seq(json: &str) -> SymbolicSequence {
    serde_json::from_str(json).unwrap()
}

#[test]
fn zeta_oracle_agrees_with_closed_form() {
    let z = zeta2_oracle();
    assert!((z - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
}

#[test]
fn conjugate_examples() {
    assert_eq!(conjugate(2.0).unwrap().p_prime, 2.0);
    assert!((conjugate(1.5).unwrap().p_prime - 3.0).abs() < 1e-15);
    assert!((conjugate(4.0).unwrap().p_prime - 4.0 / 3.0).abs() < 1e-15);
    for p in [1.0001, 1.3, 2.7, 100.0] {
        let c = conjugate(p).unwrap();
        assert!((1.0 / c.p + 1.0 / c.p_prime - 1.0).abs() < 1e-14);
    }
    for bad in [1.0, 0.5, -2.0, f64::INFINITY, f64::NAN] {
        assert!(conjugate(bad).is_err());
    }
}

#[test]
fn lp_examples() {
    let e7 = lp_norm(&SymbolicSequence::basis(7).unwrap(), 2.5, 10).unwrap();
    assert_eq!((e7.lo, e7.hi, e7.method), (1.0, 1.0, NormMethod::ExactFinite));

    let harmonic = SymbolicSequence::power_log(1.0, 0.0).unwrap();
    let enc = lp_norm(&harmonic, 2.0, 1_000_000).unwrap();
    let truth = zeta2_oracle().sqrt();
    assert!(enc.contains(truth), "{enc:?} vs {truth}");
    assert!(enc.width() < 1e-5);

    let enc = lp_norm(&SymbolicSequence::power_log(0.5, 0.0).unwrap(), 2.0, 10_000).unwrap();
    assert_eq!(enc.method, NormMethod::DivergentLowerBound);
    assert!(enc.hi.is_infinite());
    assert!(enc.certificate.unwrap().minorant >= DIVERGENCE_THRESHOLD);
}

#[test]
fn ces_examples() {
    let truth = zeta2_oracle().sqrt();
    let enc = ces_norm(&SymbolicSequence::basis(1).unwrap(), 2.0, 1_000_000).unwrap();
    assert!(enc.contains(truth) && enc.width() < 1e-5, "{enc:?}");

    let truth = (zeta2_oracle() - 1.0).sqrt();
    let enc = ces_norm(&SymbolicSequence::basis(2).unwrap(), 2.0, 1_000_000).unwrap();
    assert!(enc.contains(truth) && enc.width() < 1e-5, "{enc:?}");

    // averages of ones are ones
    let n = 5000usize;
    let ones = SymbolicSequence::finite(vec![1.0; n]).unwrap();
    for p in [1.5, 2.0, 3.0] {
        let enc = ces_norm(&ones, p, n as u64).unwrap();
        assert!(enc.lo >= (n as f64 * (1.0 - 1e-12)).powf(1.0 / p));
    }
}

#[test]
fn d_examples() {
    let enc = d_norm(&SymbolicSequence::basis(4).unwrap(), 2.0, 1).unwrap();
    assert_eq!((enc.lo, enc.hi, enc.method), (2.0, 2.0, NormMethod::ExactFinite));
    for n in [1u64, 10, 100] {
        for p in [1.25, 2.0, 3.0] {
            let enc = d_norm(&SymbolicSequence::basis(n).unwrap(), p, 1).unwrap();
            let want = (n as f64).powf(1.0 / p);
            assert!((enc.lo - want).abs() <= 1e-12 * want && enc.lo == enc.hi);
        }
    }
    let enc = d_norm(&seq(r#"{"family":"finite","values":[0,3,1,2]}"#), 1.0, 4).unwrap();
    assert_eq!((enc.lo, enc.hi), (10.0, 10.0));
}

#[test]
fn unbounded_spikes_have_infinite_d_norm() {
    let enc = d_norm(&SymbolicSequence::spike(0.3, 1.0).unwrap(), 2.0, 100).unwrap();
    assert_eq!(enc.method, NormMethod::DivergentLowerBound);
    assert!(enc.lo.powf(2.0) >= DIVERGENCE_THRESHOLD);
}

#[test]
fn rejects_bad_arguments() {
    let x = SymbolicSequence::power_log(1.0, 0.0).unwrap();
    assert!(lp_norm(&x, 0.5, 10).is_err());
    assert!(ces_norm(&x, f64::INFINITY, 10).is_err());
    assert!(d_norm(&x, 2.0, 0).is_err());
}

/// `Σ_{n <= m} f(n)^p` for the three scales, by brute force.
fn brute_power_sums(x: &SymbolicSequence, p: f64, m: u64) -> (f64, f64, f64) {
    let mut lp = CompensatedSum::new();
    let mut ces = CompensatedSum::new();
    let mut run = CompensatedSum::new();
    let mut terms = Vec::with_capacity(m as usize);
    for k in 1..=m {
        let v = x.term(k).abs();
        terms.push(v);
        lp.add(v.powf(p));
        run.add(v);
        ces.add((run.value() / k as f64).powf(p));
    }
    // suffix maxima over 1..m, capped by the exact supremum beyond m
    let Ok(mut env) = crate::cesaro::certified_tail_sup(x, m) else {
        return (lp.value(), ces.value(), f64::INFINITY);
    };
    let mut d = CompensatedSum::new();
    for v in terms.iter().rev() {
        env = env.max(*v);
        d.add(env.powf(p));
    }
    (lp.value(), ces.value(), d.value())
}

fn grid() -> Vec<SymbolicSequence> {
    let mut out = Vec::new();
    for &(a, b) in &[(1.0, 0.0), (0.8, 0.5), (0.6, -0.5), (2.0, 0.0), (1.0, 1.5), (1.0, 0.5), (1.0, 1.0), (0.4, 2.0)] {
        out.push(SymbolicSequence::power_log(a, b).unwrap());
    }
    for &(g, d) in &[(-0.5, 0.0), (-0.2, -1.0), (0.0, 1.0), (0.0, 2.0), (0.0, 0.7), (0.25, 0.0), (0.3, 2.0), (0.2, -1.0)] {
        out.push(SymbolicSequence::spike(g, d).unwrap());
    }
    out.push(SymbolicSequence::basis(5).unwrap());
    out.push(SymbolicSequence::finite(vec![0.5, -2.0, 0.0, 1.0]).unwrap());
    out
}

#[test]
fn enclosures_dominate_long_brute_sums() {
    let m = 1u64 << 21;
    for x in grid() {
        for p in [1.5, 2.0, 3.0, 5.0] {
            let (lp, ces, d) = brute_power_sums(&x, p, m);
            for (name, enc, brute) in [
                ("lp", lp_norm(&x, p, 4096).unwrap(), lp),
                ("ces", ces_norm(&x, p, 4096).unwrap(), ces),
                ("d", d_norm(&x, p, 4096).unwrap(), d),
            ] {
                assert!(enc.lo <= enc.hi, "{name} {x:?} p={p}: {enc:?}");
                assert!(
                    brute.powf(1.0 / p) <= enc.hi * (1.0 + 1e-12),
                    "{name} {x:?} p={p}: brute {} above hi {}",
                    brute.powf(1.0 / p),
                    enc.hi
                );
                if enc.is_finite() {
                    // a finite enclosure from a shorter prefix must reach the long partial sum's neighbourhood
                    let long = match name {
                        "lp" => lp_norm(&x, p, m).unwrap(),
                        "ces" => ces_norm(&x, p, m).unwrap(),
                        _ => d_norm(&x, p, m).unwrap(),
                    };
                    assert!(long.lo <= enc.hi * (1.0 + 1e-12) && enc.lo <= long.hi * (1.0 + 1e-12), "{name} {x:?} p={p}");
                }
            }
        }
    }
}

#[test]
fn doubling_n_never_widens() {
    for x in grid() {
        for p in [1.5, 2.0, 4.0] {
            for f in [lp_norm, ces_norm, d_norm] {
                let mut prev = f(&x, p, 1000).unwrap();
                for k in 1..6 {
                    let next = f(&x, p, 1000 << k).unwrap();
                    if prev.is_finite() {
                        assert!(next.width() <= prev.width() + 1e-12, "{x:?} p={p}: {prev:?} -> {next:?}");
                    } else {
                        assert!(!next.is_finite(), "{x:?} p={p}: divergence lost at larger N");
                    }
                    prev = next;
                }
            }
        }
    }
}

fn finite_norm_family() -> impl Strategy<Value = (SymbolicSequence, f64)> {
    prop_oneof![Just(1.5), Just(2.0), Just(4.0)].prop_flat_map(|p: f64| {
        let inv = 1.0 / p;
        prop_oneof![
            (inv + 0.15..3.0, -0.5..2.0f64).prop_map(move |(a, b)| (SymbolicSequence::power_log(a, b).unwrap(), p)),
            (-1.5..(1.0 - inv - 0.15), 0.0..2.0f64).prop_map(move |(g, d)| (SymbolicSequence::spike(g, d).unwrap(), p)),
            prop::collection::vec(-5.0..5.0f64, 1..40)
                .prop_map(move |v| (SymbolicSequence::finite(v).unwrap(), p)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hardy_domination((x, p) in finite_norm_family()) {
        let pp = conjugate(p).unwrap().p_prime;
        let ces = ces_norm(&x, p, 20_000).unwrap();
        let lp = lp_norm(&x, p, 20_000).unwrap();
        prop_assume!(lp.is_finite());
        prop_assert!(ces.hi <= pp * lp.hi + 1e-9, "{x:?} p={p}: {ces:?} vs {lp:?}");
    }

    #[test]
    fn lo_never_exceeds_hi((x, p) in finite_norm_family(), n in 1u64..5000) {
        for enc in [lp_norm(&x, p, n).unwrap(), ces_norm(&x, p, n).unwrap(), d_norm(&x, p, n).unwrap()] {
            prop_assert!(enc.lo <= enc.hi);
        }
    }
}

#[test]
fn json_shape() {
    let enc = d_norm(&SymbolicSequence::basis(4).unwrap(), 2.0, 100).unwrap();
    let v: serde_json::Value = serde_json::to_value(&enc).unwrap();
    assert_eq!(v["lo"], 2.0);
    assert_eq!(v["N"], 100);
    assert_eq!(v["method"], "EXACT_FINITE");
    let div = lp_norm(&SymbolicSequence::power_log(0.5, 0.0).unwrap(), 2.0, 100).unwrap();
    let v: serde_json::Value = serde_json::to_value(&div).unwrap();
    assert_eq!(v["hi"], "inf");
    assert_eq!(v["method"], "DIVERGENT_LOWER_BOUND");
    let back: NormEnclosure = serde_json::from_value(v).unwrap();
    assert!(back.hi.is_infinite());
}
