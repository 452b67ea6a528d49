use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::grid::{grade_grid, random_families, sampled_grid, EXPONENTS};
use super::{CheckStatus, VerifyConfig};
use crate::classify::{cesaro_class, image_membership, membership, AsymptoticClass, Status};
use crate::norms::{ces_norm, d_norm, NormEnclosure};
use crate::sequence::SymbolicSequence;
use crate::space::{Grade, Scale, SpaceSpec};
use crate::sum::CompensatedSum;
use crate::witness::{build_witness, list_claims};

/// Failures listed in the evidence; the total is always reported.
const MAX_LISTED: usize = 20;

fn verdict(failures: &[Value]) -> CheckStatus {
    if failures.is_empty() {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

fn listed(failures: &[Value]) -> Vec<Value> {
    failures.iter().take(MAX_LISTED).cloned().collect()
}

fn describe(x: &SymbolicSequence) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn spec(scale: Scale, grade: Grade) -> SpaceSpec {
    SpaceSpec::new(scale, grade).expect("grid grades are in their domains")
}

/// `(Σ_{k<=n} (C|x|)_k^p)^(1/p)` and `(Σ_{k<=n} |x_k|^p)^(1/p)`.
fn truncated_hardy_pair(terms: &[f64], p: f64) -> (f64, f64) {
    let mut run = CompensatedSum::new();
    let mut ces = CompensatedSum::new();
    let mut lp = CompensatedSum::new();
    for (i, v) in terms.iter().enumerate() {
        let v = v.abs();
        run.add(v);
        ces.add((run.value() / (i + 1) as f64).powf(p));
        lp.add(v.powf(p));
    }
    (ces.value().powf(1.0 / p), lp.value().powf(1.0 / p))
}

fn random_vector(seed: u64, index: usize, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let density = [1.0, 0.1, 0.01][index % 3];
    let scale = rng.random_range(0.1..10.0);
    (0..n).map(|_| if rng.random_bool(density) { scale * rng.random_range(-1.0..1.0) } else { 0.0 }).collect()
}

pub(super) fn hardy(cfg: &VerifyConfig) -> (CheckStatus, Value) {
    let lim = cfg.limits();
    let n = lim.hardy_n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let families = random_families(&mut rng, lim.hardy_families);
    let inputs = lim.hardy_vectors + families.len();

    let mut per_p = Vec::new();
    let mut failures = Vec::new();
    for p in [1.5, 2.0, 4.0] {
        let bound = match (cfg.conjugate)(p) {
            Ok(c) => c.p_prime,
            Err(e) => {
                failures.push(json!({"p": p, "error": e.to_string()}));
                continue;
            }
        };
        let ratios: Vec<(f64, Value)> = (0..inputs)
            .into_par_iter()
            .map(|i| {
                let (terms, label) = if i < lim.hardy_vectors {
                    (random_vector(cfg.seed, i, n), json!({"random_vector": i}))
                } else {
                    let x = &families[i - lim.hardy_vectors];
                    let view = x.truncate(n).expect("families evaluate on their prefix");
                    (view.terms, describe(x))
                };
                let (ces, lp) = truncated_hardy_pair(&terms, p);
                (if lp > 0.0 { ces / lp } else { 0.0 }, label)
            })
            .collect();
        let (max_ratio, argmax) =
            ratios.iter().fold((0.0f64, Value::Null), |acc, (r, l)| if *r > acc.0 { (*r, l.clone()) } else { acc });
        for (r, label) in &ratios {
            if !(*r <= bound + 1e-9) {
                failures.push(json!({"p": p, "bound": bound, "ratio": r, "input": label}));
            }
        }
        per_p.push(json!({"p": p, "p_prime": bound, "max_ratio": max_ratio, "argmax": argmax}));
    }
    let status = verdict(&failures);
    let summary = match status {
        CheckStatus::Pass => format!("{inputs} inputs, N = {n}: every truncated ratio is at most p′"),
        _ => format!("{} ratio(s) above the bound", failures.len()),
    };
    (
        status,
        json!({"summary": summary, "N": n, "inputs": inputs, "per_p": per_p, "failure_count": failures.len(), "failures": listed(&failures)}),
    )
}

/// A certified-infinite norm bounds everything; otherwise `lo` is a valid lower bound.
fn norm_floor(e: &NormEnclosure) -> f64 {
    if e.is_finite() {
        e.lo
    } else {
        f64::INFINITY
    }
}

pub(super) fn coordinate_bounds(cfg: &VerifyConfig) -> (CheckStatus, Value) {
    let lim = cfg.limits();
    let grid = sampled_grid(cfg.seed, lim.random_families);
    let n = lim.norm_n;
    let results: Vec<(usize, usize, Vec<Value>)> = grid
        .par_iter()
        .map(|x| {
            let (mut checked, mut skipped, mut fails) = (0, 0, Vec::new());
            for p in [1.5, 2.0, 4.0] {
                let (Ok(ces), Ok(d)) = (ces_norm(x, p, n), d_norm(x, p, n)) else {
                    skipped += 1;
                    continue;
                };
                let (ces_lo, d_lo) = (norm_floor(&ces), norm_floor(&d));
                for k in 1..=n {
                    let v = x.evaluate(k).expect("index is positive").abs();
                    checked += 2;
                    if v > k as f64 * ces_lo + 1e-9 {
                        fails.push(json!({"family": describe(x), "p": p, "n": k, "x_n": v, "ces_norm_lo": ces_lo}));
                    }
                    if v > d_lo + 1e-9 {
                        fails.push(json!({"family": describe(x), "p": p, "n": k, "x_n": v, "d_norm_lo": d_lo}));
                    }
                }
            }
            (checked, skipped, fails)
        })
        .collect();
    let checked: usize = results.iter().map(|r| r.0).sum();
    let skipped: usize = results.iter().map(|r| r.1).sum();
    let failures: Vec<Value> = results.into_iter().flat_map(|r| r.2).collect();
    (
        verdict(&failures),
        json!({
            "summary": format!("{checked} coordinate inequalities over {} families", grid.len()),
            "families": grid.len(), "N": n, "checked": checked, "skipped_unsupported": skipped,
            "failure_count": failures.len(), "failures": listed(&failures),
        }),
    )
}

pub(super) fn dnorm_basis_exact(cfg: &VerifyConfig) -> (CheckStatus, Value) {
    let max_n = cfg.limits().basis_max_n;
    let mut failures = Vec::new();
    let mut max_rel = 0.0f64;
    for p in [1.25, 2.0, 3.0] {
        for n in 1..=max_n {
            let want = ((n as f64).ln() / p).exp();
            match d_norm(&SymbolicSequence::basis(n).expect("positive"), p, 1) {
                Ok(e) => {
                    let rel = (e.lo - want).abs().max((e.hi - want).abs()) / want;
                    max_rel = max_rel.max(rel);
                    if rel > 1e-12 {
                        failures.push(json!({"p": p, "n": n, "lo": e.lo, "hi": e.hi, "want": want}));
                    }
                }
                Err(e) => failures.push(json!({"p": p, "n": n, "error": e.to_string()})),
            }
        }
    }
    (
        verdict(&failures),
        json!({"summary": format!("max relative error {max_rel:e} over n <= {max_n}"), "max_n": max_n,
               "max_relative_error": max_rel, "failure_count": failures.len(), "failures": listed(&failures)}),
    )
}

/// Extremes of `‖e_n‖_ces(q) / n^t` over `n <= max_n`.
pub(crate) struct Band {
    pub min: f64,
    pub max: f64,
    pub argmin: u64,
    pub argmax: u64,
    /// Largest enclosure width relative to its midpoint.
    pub max_rel_width: f64,
}

impl Band {
    pub fn spread(&self) -> f64 {
        self.max / self.min
    }

    fn to_json(&self, q: f64) -> Value {
        json!({"q": q, "min": self.min, "max": self.max, "argmin": self.argmin, "argmax": self.argmax,
               "spread": self.spread(), "max_relative_width": self.max_rel_width})
    }
}

/// Prefix beyond the basis index for the basis-vector enclosures.
const BASIS_EXTRA: u64 = 256;

pub(crate) fn basis_ces_band(q: f64, t: f64, max_n: u64) -> crate::Result<Band> {
    let rows: Vec<(u64, f64, f64)> = (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let e = ces_norm(&SymbolicSequence::basis(n)?, q, n + BASIS_EXTRA)?;
            let mid = 0.5 * (e.lo + e.hi);
            Ok((n, mid * (n as f64).powf(-t), (e.hi - e.lo) / mid))
        })
        .collect::<crate::Result<_>>()?;
    let mut band = Band { min: f64::INFINITY, max: 0.0, argmin: 0, argmax: 0, max_rel_width: 0.0 };
    for (n, r, w) in rows {
        if r < band.min {
            (band.min, band.argmin) = (r, n);
        }
        if r > band.max {
            (band.max, band.argmax) = (r, n);
        }
        band.max_rel_width = band.max_rel_width.max(w);
    }
    Ok(band)
}

/// Band spread allowed for the basis ratios.
pub const BAND_LIMIT: f64 = 10.0;
/// Enclosures wider than this (relative) make a band meaningless.
const BAND_NOISE: f64 = 1e-2;

pub(super) fn cesnorm_basis_asymptotic(cfg: &VerifyConfig) -> (CheckStatus, Value) {
    let max_n = cfg.limits().basis_max_n;
    let mut bands = Vec::new();
    let mut failures = Vec::new();
    let mut noisy = Vec::new();
    for q in [1.5, 2.0, 4.0] {
        let t = 1.0 / q - 1.0;
        match basis_ces_band(q, t, max_n) {
            Ok(b) => {
                if b.max_rel_width > BAND_NOISE {
                    noisy.push(q);
                } else if !(b.spread() <= BAND_LIMIT) {
                    failures.push(b.to_json(q));
                }
                bands.push(b.to_json(q));
            }
            Err(e) => failures.push(json!({"q": q, "error": e.to_string()})),
        }
    }
    if failures.is_empty() && !noisy.is_empty() {
        return (
            CheckStatus::Skip,
            json!({"reason": format!("enclosures too wide for a band at q = {noisy:?}"), "bands": bands}),
        );
    }
    (
        verdict(&failures),
        json!({"summary": format!("ratio bands over n <= {max_n} have spread at most {BAND_LIMIT}"),
               "max_n": max_n, "band_limit": BAND_LIMIT, "bands": bands, "failures": listed(&failures)}),
    )
}

/// Compares the verdicts of `C|x|` and `C²|x|` on all scales at `grades`.
fn bennett(cfg: &VerifyConfig, grades: &[Grade]) -> (CheckStatus, Value) {
    let grid = sampled_grid(cfg.seed, cfg.limits().random_families);
    let (mut checked, mut unsupported) = (0usize, 0usize);
    let mut failures = Vec::new();
    for x in &grid {
        for scale in Scale::ALL {
            for &g in grades {
                let s = spec(scale, g);
                let (Ok(once), Ok(twice)) = (image_membership(x, 1, s), image_membership(x, 2, s)) else {
                    unsupported += 1;
                    continue;
                };
                if once.status == Status::Unsupported || twice.status == Status::Unsupported {
                    unsupported += 1;
                    continue;
                }
                checked += 1;
                if once.status != twice.status {
                    failures.push(json!({"family": describe(x), "space": s, "once": once.status, "twice": twice.status}));
                }
            }
        }
    }
    let anchor = SymbolicSequence::power_log(2.0, 0.0).expect("valid");
    let k1 = cesaro_class(&anchor);
    let k2: AsymptoticClass = k1.cesaro();
    (
        verdict(&failures),
        json!({
            "summary": format!("{checked} verdict pairs agree over {} families", grid.len()),
            "families": grid.len(), "checked": checked, "unsupported": unsupported,
            "anchor": {"family": describe(&anchor), "class_of_C": k1, "class_of_C2": k2},
            "failure_count": failures.len(), "failures": listed(&failures),
        }),
    )
}

pub(super) fn bennett_base(cfg: &VerifyConfig) -> (CheckStatus, Value) {
    let grades: Vec<Grade> = EXPONENTS.iter().map(|&p| Grade::Exact(p)).collect();
    bennett(cfg, &grades)
}

pub(super) fn bennett_graded(cfg: &VerifyConfig) -> (CheckStatus, Value) {
    let grades: Vec<Grade> = grade_grid().into_iter().filter(|g| !matches!(g, Grade::Exact(_))).collect();
    bennett(cfg, &grades)
}

pub(super) fn solid_core(cfg: &VerifyConfig) -> (CheckStatus, Value) {
    let grid = sampled_grid(cfg.seed, cfg.limits().random_families);
    let (mut checked, mut unsupported) = (0usize, 0usize);
    let mut failures = Vec::new();
    for x in &grid {
        for g in grade_grid() {
            let ces = membership(x, spec(Scale::Ces, g));
            if ces.status == Status::Unsupported {
                unsupported += 1;
                continue;
            }
            for target in [Scale::Ell, Scale::D] {
                let img = image_membership(x, 1, spec(target, g)).expect("times is 1");
                if img.status == Status::Unsupported {
                    unsupported += 1;
                    continue;
                }
                checked += 1;
                if img.status != ces.status {
                    failures.push(json!({"family": describe(x), "grade": g.to_string(), "target": target,
                                         "image": img.status, "ces": ces.status}));
                }
            }
        }
    }
    (
        verdict(&failures),
        json!({"summary": format!("{checked} image verdicts match ces membership"), "checked": checked,
               "unsupported": unsupported, "failure_count": failures.len(), "failures": listed(&failures)}),
    )
}

pub(super) fn inclusion_lattice(cfg: &VerifyConfig) -> (CheckStatus, Value) {
    let grid = sampled_grid(cfg.seed, cfg.limits().random_families);
    let mut implications = 0usize;
    let mut failures = Vec::new();
    let inf = f64::INFINITY;
    let is_in = |x: &SymbolicSequence, scale, g| membership(x, spec(scale, g)).is_in();
    for x in &grid {
        let mut imply = |name: &str, a: (Scale, Grade), b: (Scale, Grade)| {
            implications += 1;
            if is_in(x, a.0, a.1) && !is_in(x, b.0, b.1) {
                failures.push(json!({"family": describe(x), "rule": name,
                                     "from": spec(a.0, a.1), "to": spec(b.0, b.1)}));
            }
        };
        for scale in Scale::ALL {
            imply("plus(1) ⊆ plus(p)", (scale, Grade::Plus(1.0)), (scale, Grade::Plus(EXPONENTS[0])));
            for (i, &p) in EXPONENTS.iter().enumerate() {
                imply("p- ⊆ p", (scale, Grade::Minus(p)), (scale, Grade::Exact(p)));
                imply("p ⊆ p+", (scale, Grade::Exact(p)), (scale, Grade::Plus(p)));
                imply("p- ⊆ ∞-", (scale, Grade::Minus(p)), (scale, Grade::Minus(inf)));
                for &q in &EXPONENTS[i + 1..] {
                    imply("exact monotone", (scale, Grade::Exact(p)), (scale, Grade::Exact(q)));
                    imply("plus monotone", (scale, Grade::Plus(p)), (scale, Grade::Plus(q)));
                    imply("minus monotone", (scale, Grade::Minus(p)), (scale, Grade::Minus(q)));
                    imply("r < p: r ⊆ p-", (scale, Grade::Exact(p)), (scale, Grade::Minus(q)));
                }
            }
        }
        for (i, &p) in EXPONENTS.iter().enumerate() {
            for &q in &EXPONENTS[i..] {
                for g in [Grade::Exact as fn(f64) -> Grade, Grade::Plus, Grade::Minus] {
                    imply("d ⊆ ℓ", (Scale::D, g(p)), (Scale::Ell, g(q)));
                    imply("ℓ ⊆ ces", (Scale::Ell, g(p)), (Scale::Ces, g(q)));
                }
            }
        }
        imply("d(1+) ⊆ ℓ(1+)", (Scale::D, Grade::Plus(1.0)), (Scale::Ell, Grade::Plus(1.0)));
        imply("ℓ(1+) ⊆ ces(1+)", (Scale::Ell, Grade::Plus(1.0)), (Scale::Ces, Grade::Plus(1.0)));
        imply("d(∞-) ⊆ ℓ(∞-)", (Scale::D, Grade::Minus(inf)), (Scale::Ell, Grade::Minus(inf)));
        imply("ℓ(∞-) ⊆ ces(∞-)", (Scale::Ell, Grade::Minus(inf)), (Scale::Ces, Grade::Minus(inf)));
    }

    let witnesses: Vec<(String, f64, Option<f64>, crate::Result<usize>)> = list_claims()
        .par_iter()
        .flat_map_iter(|info| {
            info.sample_params()
                .into_iter()
                .map(move |(p, q)| (info.id.to_string(), p, q, build_witness(info.id, Some(p), q).map(|w| w.assertions.len())))
        })
        .collect();
    let mut witness_assertions = 0;
    for (id, p, q, r) in &witnesses {
        match r {
            Ok(k) => witness_assertions += k,
            Err(e) => failures.push(json!({"claim": id, "p": p, "q": q, "error": e.to_string()})),
        }
    }
    (
        verdict(&failures),
        json!({
            "summary": format!("{implications} inclusion implications and {} witnesses", witnesses.len()),
            "implications": implications, "witness_builds": witnesses.len(), "witness_assertions": witness_assertions,
            "failure_count": failures.len(), "failures": listed(&failures),
        }),
    )
}

/// The three schedules of one base exponent: `p + 1/k` (decreasing),
/// `p - (p-1)/(k+1)` (increasing), and `1 + k` for `p = ∞`.
pub fn schedules() -> Vec<(String, Vec<f64>)> {
    let mut out = Vec::new();
    for p in [1.5, 2.0, 3.0] {
        out.push((format!("{p}+"), (1..=6).map(|k| p + 1.0 / k as f64).collect()));
        out.push((format!("{p}-"), (1..=6).map(|k| p - (p - 1.0) / (k + 1) as f64).collect()));
    }
    out.push(("inf-".into(), (1..=6).map(|k| 1.0 + k as f64).collect()));
    out
}

/// Smallest `n` with `n^-q + n^(1-q)/(q-1)` below `level^q`, an upper bound for
/// `‖e_n‖_ces(q)^q` that decreases in `n`.
pub fn basis_ces_threshold(q: f64, level: f64) -> u64 {
    let bound = |n: u64| {
        let n = n as f64;
        n.powf(-q) + n.powf(1.0 - q) / (q - 1.0)
    };
    // a little headroom so certified enclosures, not just the values, clear the level
    let target = level.powf(q) * (1.0 - 1e-6);
    let mut hi = 1u64;
    while bound(hi) >= target {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bound(mid) < target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

pub const BASIS_LEVEL: f64 = 1e-2;
pub const BASIS_REACH: f64 = 1e3;

pub(super) fn basis_behavior(cfg: &VerifyConfig) -> (CheckStatus, Value) {
    let max_n = cfg.limits().basis_max_n;
    let window = max_n.min(1000);
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for (name, sched) in schedules() {
        let p1 = sched[0];
        // d side: strictly increasing and reaching the level within 10^(3 p1)
        let d = |n: u64| d_norm(&SymbolicSequence::basis(n).expect("positive"), p1, 1).map(|e| e.lo);
        let mut prev = 0.0;
        for n in 1..=max_n {
            match d(n) {
                Ok(v) if v > prev => prev = v,
                Ok(v) => {
                    failures.push(json!({"schedule": name, "p1": p1, "n": n, "d_norm": v, "previous": prev}));
                    break;
                }
                Err(e) => failures.push(json!({"schedule": name, "n": n, "error": e.to_string()})),
            }
        }
        // first index at or beyond 10^(3 p1)
        let reach = BASIS_REACH.powf(p1).ceil() as u64;
        let at_reach = d(reach).unwrap_or(f64::NAN);
        if !(at_reach >= BASIS_REACH * (1.0 - 1e-12)) {
            failures.push(json!({"schedule": name, "p1": p1, "n": reach, "d_norm": at_reach}));
        }

        // ces side: below the level from n0 on, and decreasing there
        let mut ces_rows = Vec::new();
        for &q in &sched {
            let n0 = basis_ces_threshold(q, BASIS_LEVEL);
            let shared_n = n0 + window + BASIS_EXTRA;
            let mids: crate::Result<Vec<(f64, f64)>> = (n0..n0 + window)
                .into_par_iter()
                .map(|n| {
                    let e = ces_norm(&SymbolicSequence::basis(n)?, q, shared_n)?;
                    Ok((0.5 * (e.lo + e.hi), e.hi))
                })
                .collect();
            let mut worst = 0.0f64;
            match mids {
                Ok(m) => {
                    for (i, w) in m.windows(2).enumerate() {
                        if !(w[1].0 < w[0].0) {
                            failures.push(json!({"schedule": name, "q": q, "n": n0 + i as u64 + 1, "not_decreasing": [w[0].0, w[1].0]}));
                            break;
                        }
                    }
                    worst = m.iter().map(|v| v.1).fold(0.0, f64::max);
                }
                Err(e) => failures.push(json!({"schedule": name, "q": q, "error": e.to_string()})),
            }
            // geometric probes far beyond the window
            let mut last_lo = f64::INFINITY;
            for j in 0..=10u32 {
                let n = n0.saturating_mul(1 << j);
                match ces_norm(&SymbolicSequence::basis(n).expect("positive"), q, n + BASIS_EXTRA) {
                    Ok(e) => {
                        worst = worst.max(e.hi);
                        if !(e.hi < last_lo) {
                            failures.push(json!({"schedule": name, "q": q, "n": n, "not_decreasing": e.hi}));
                        }
                        last_lo = e.lo;
                    }
                    Err(e) => failures.push(json!({"schedule": name, "q": q, "n": n, "error": e.to_string()})),
                }
            }
            if !(worst < BASIS_LEVEL) {
                failures.push(json!({"schedule": name, "q": q, "n0": n0, "max_norm_beyond_n0": worst}));
            }
            ces_rows.push(json!({"q": q, "n0": n0, "max_norm_beyond_n0": worst}));
        }
        rows.push(json!({"schedule": name, "exponents": sched, "p1": p1, "reach_n": reach, "d_norm_at_reach": at_reach, "ces": ces_rows}));
    }
    (
        verdict(&failures),
        json!({"summary": format!("basis unbounded in d(p_1) and below {BASIS_LEVEL} in ces(q) beyond n0"),
               "schedules": rows, "failure_count": failures.len(), "failures": listed(&failures)}),
    )
}

/// `Σ_k |x_k| k^t` over the support of `e_n`.
fn weighted_basis_seminorm(n: u64, t: f64) -> f64 {
    let x = SymbolicSequence::basis(n).expect("positive");
    let end = x.support_end().unwrap_or(0);
    (1..=end).map(|k| x.evaluate(k).expect("positive index").abs() * (k as f64).powf(t)).sum::<CompensatedSum>().value()
}

pub(super) fn koethe_grading(cfg: &VerifyConfig) -> (CheckStatus, Value) {
    let max_n = cfg.limits().basis_max_n;
    let probes: Vec<u64> = {
        let mut v: Vec<u64> = (0..=40).map(|i| (max_n as f64).powf(i as f64 / 40.0).round() as u64).collect();
        v.dedup();
        v
    };
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for p in [1.5, 2.0, 3.0] {
        let qs: Vec<f64> = (1..=6).map(|k| p + 1.0 / k as f64).collect();
        let ts: Vec<f64> = qs.iter().map(|q| 1.0 / q - 1.0).collect();
        let limit = 1.0 / p - 1.0;
        for (k, &t) in ts.iter().enumerate() {
            if !(t < limit) || (k > 0 && !(t > ts[k - 1])) {
                failures.push(json!({"p": p, "k": k + 1, "t": t, "limit": limit}));
            }
        }
        let mut bands = Vec::new();
        for (&q, &t) in qs.iter().zip(&ts) {
            match basis_ces_band(q, t, max_n) {
                Ok(b) => {
                    if !(b.spread() <= BAND_LIMIT) {
                        failures.push(b.to_json(q));
                    }
                    bands.push(b.to_json(q));
                }
                Err(e) => failures.push(json!({"q": q, "error": e.to_string()})),
            }
        }
        let mut max_rel = 0.0f64;
        for &n in &probes {
            let weights: Vec<f64> = ts.iter().copied().chain((1..=6).map(|k| -1.0 / k as f64)).collect();
            for t in weights {
                let got = weighted_basis_seminorm(n, t);
                let want = ((n as f64).ln() * t).exp();
                let rel = (got - want).abs() / want;
                max_rel = max_rel.max(rel);
                if rel > 1e-12 {
                    failures.push(json!({"n": n, "t": t, "seminorm": got, "want": want}));
                }
            }
            // both gradings grow along the schedule on every basis vector
            let norms: Vec<f64> = qs
                .iter()
                .map(|&q| ces_norm(&SymbolicSequence::basis(n).expect("positive"), q, n + BASIS_EXTRA).map(|e| 0.5 * (e.lo + e.hi)).unwrap_or(f64::NAN))
                .collect();
            for k in 1..qs.len() {
                let w = |t: f64| (n as f64).powf(t);
                if !(norms[k] >= norms[k - 1]) || !(w(ts[k]) >= w(ts[k - 1])) {
                    failures.push(json!({"p": p, "n": n, "k": k + 1, "ces": [norms[k - 1], norms[k]]}));
                }
            }
        }
        rows.push(json!({"p": p, "schedule": qs, "weights": ts, "bands": bands, "max_seminorm_relative_error": max_rel}));
    }
    (
        verdict(&failures),
        json!({"summary": "basis ces norms interleave with the weighted seminorms n^t, t < -1/p′", "per_p": rows,
               "failure_count": failures.len(), "failures": listed(&failures)}),
    )
}

pub(super) fn cesaro_maps_into(cfg: &VerifyConfig) -> (CheckStatus, Value) {
    let grid = sampled_grid(cfg.seed, cfg.limits().random_families);
    let (mut checked, mut premises) = (0usize, 0usize);
    let mut failures = Vec::new();
    for x in &grid {
        for g in grade_grid() {
            checked += 1;
            if !membership(x, spec(Scale::Ces, g)).is_in() {
                continue;
            }
            premises += 1;
            let img = image_membership(x, 1, spec(Scale::D, g)).expect("times is 1");
            if !img.is_in() {
                failures.push(json!({"family": describe(x), "grade": g.to_string(), "image": img.status}));
            }
        }
    }
    (
        verdict(&failures),
        json!({"summary": format!("{premises} ces memberships map into the matching d space"), "checked": checked,
               "premises": premises, "failure_count": failures.len(), "failures": listed(&failures)}),
    )
}
