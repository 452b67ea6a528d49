//! Certified enclosures of `‖x‖_p`, `‖x‖_ces(p) = ‖C|x|‖_p` and
//! `‖x‖_d(p) = ‖x̂‖_p`.
//!
//! Every enclosure is a finite prefix sum plus a proven bound on the tail of
//! the `p`-th power series. When that tail is infinite the result carries a
//! [`DivergenceCertificate`] instead of an upper bound.

mod tail;

use serde::{Deserialize, Serialize};

use crate::cesaro::{envelope_symbolic, Envelope};
use crate::error::{Error, Result};
use crate::sequence::{log_factor, power_log_term, spike_log_height, SymbolicSequence};
use crate::sum::CompensatedSum;

pub use tail::{
    dyadic_tail, power_log_tail, power_log_tail_start, DivergenceCertificate, TailBound, DIVERGENCE_THRESHOLD,
    TAIL_SLACK,
};

/// Longest prefix any norm will sum explicitly.
pub const MAX_PREFIX: u64 = 1 << 27;

/// `p` together with `p' = p / (p - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjugateExponent {
    pub p: f64,
    pub p_prime: f64,
}

/// The Hölder conjugate of `p ∈ (1, ∞)`.
pub fn conjugate(p: f64) -> Result<ConjugateExponent> {
    if !p.is_finite() || p <= 1.0 {
        return Err(Error::InvalidParameter(format!("conjugate exponent needs 1 < p < ∞, got {p}")));
    }
    Ok(ConjugateExponent { p, p_prime: p / (p - 1.0) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NormMethod {
    ExactFinite,
    IntegralTail,
    DivergentLowerBound,
}

/// `lo <= norm <= hi`; `hi` is `+∞` exactly when the norm is certified infinite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEnclosure {
    pub lo: f64,
    #[serde(with = "crate::float_json")]
    pub hi: f64,
    #[serde(rename = "N")]
    pub n: u64,
    pub method: NormMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<DivergenceCertificate>,
}

impl NormEnclosure {
    fn exact(power_sum: f64, p: f64, n: u64) -> Self {
        let v = power_sum.powf(1.0 / p);
        Self { lo: v, hi: v, n, method: NormMethod::ExactFinite, certificate: None }
    }

    fn exact_value(v: f64, n: u64) -> Self {
        Self { lo: v, hi: v, n, method: NormMethod::ExactFinite, certificate: None }
    }

    fn from_parts(prefix: f64, tail: TailBound, p: f64, n: u64) -> Self {
        match tail {
            TailBound::Finite { lo, hi } => Self {
                lo: (prefix + lo).powf(1.0 / p),
                hi: (prefix + hi).powf(1.0 / p),
                n,
                method: NormMethod::IntegralTail,
                certificate: None,
            },
            TailBound::Divergent(cert) => Self {
                lo: (prefix + cert.minorant).powf(1.0 / p),
                hi: f64::INFINITY,
                n,
                method: NormMethod::DivergentLowerBound,
                certificate: Some(cert),
            },
        }
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

fn check_args(p: f64, n: u64) -> Result<()> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::InvalidParameter(format!("norm exponent must satisfy 1 <= p < ∞, got {p}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("truncation level N must be >= 1".into()));
    }
    Ok(())
}

fn check_prefix(n: u64) -> Result<()> {
    if n > MAX_PREFIX {
        return Err(Error::Unsupported(format!("explicit prefix of {n} terms exceeds the limit {MAX_PREFIX}")));
    }
    Ok(())
}

fn floor_log2(n: u64) -> u64 {
    63 - u64::from(n.leading_zeros())
}

fn finite_power_sum(values: impl IntoIterator<Item = f64>, p: f64) -> f64 {
    values.into_iter().map(|v| v.abs().powf(p)).sum::<CompensatedSum>().value()
}

/// Enclosure of `‖x‖_p`.
pub fn lp_norm(seq: &SymbolicSequence, p: f64, n: u64) -> Result<NormEnclosure> {
    check_args(p, n)?;
    match seq {
        SymbolicSequence::UnitBasis { n: k } => Ok(NormEnclosure::exact_value(1.0, n.max(*k))),
        SymbolicSequence::FiniteSupport { values } => {
            Ok(NormEnclosure::exact(finite_power_sum(values.iter().copied(), p), p, n.max(values.len() as u64)))
        }
        SymbolicSequence::PowerLog { a, b } => {
            let (s, beta) = (a * p, b * p);
            let n_eff = n.max(power_log_tail_start(s, beta));
            check_prefix(n_eff)?;
            let prefix = (1..=n_eff).rev().map(|k| power_log_term(s, beta, k as f64)).sum::<CompensatedSum>().value();
            let tail = power_log_tail(s, beta, n_eff, DIVERGENCE_THRESHOLD)?;
            Ok(NormEnclosure::from_parts(prefix, tail, p, n_eff))
        }
        SymbolicSequence::LacunarySpike { gamma, delta } => {
            let blocks = floor_log2(n);
            let prefix = (1..=blocks).map(|j| (p * spike_log_height(*gamma, *delta, j)).exp()).sum::<CompensatedSum>().value();
            let tail = dyadic_tail(1.0, gamma * p, delta * p, blocks + 1, DIVERGENCE_THRESHOLD)?;
            Ok(NormEnclosure::from_parts(prefix, tail, p, n))
        }
    }
}

/// Enclosure of `‖x̂‖_p`.
pub fn d_norm(seq: &SymbolicSequence, p: f64, n: u64) -> Result<NormEnclosure> {
    check_args(p, n)?;
    if let SymbolicSequence::LacunarySpike { gamma, delta } = seq {
        if *gamma > 0.0 {
            return Ok(unbounded_spike(*gamma, *delta, p, n));
        }
    }
    match envelope_symbolic(seq)? {
        Envelope::Plateau { height, len } => Ok(NormEnclosure::exact_value(height * (len as f64).powf(1.0 / p), n.max(len))),
        Envelope::Finite { values } => {
            let len = values.len() as u64;
            Ok(NormEnclosure::exact(finite_power_sum(values, p), p, n.max(len)))
        }
        env @ (Envelope::Identity { .. } | Envelope::Prefixed { .. }) => {
            let SymbolicSequence::PowerLog { a, b } = seq else { unreachable!("power-log envelopes only") };
            let (s, beta) = (a * p, b * p);
            let n0 = seq.tail_monotone_index().unwrap_or(1);
            let n_eff = n.max(n0).max(power_log_tail_start(s, beta));
            check_prefix(n_eff)?;
            let prefix = (1..=n_eff).rev().map(|k| env.evaluate(k).powf(p)).sum::<CompensatedSum>().value();
            // beyond n0 the envelope is the sequence itself
            let tail = power_log_tail(s, beta, n_eff, DIVERGENCE_THRESHOLD)?;
            Ok(NormEnclosure::from_parts(prefix, tail, p, n_eff))
        }
        Envelope::Dyadic { gamma, delta, block_sup } => {
            // x̂ is constant on (2^(j-1), 2^j], which holds 2^(j-1) integers (2 for j = 1)
            let last = floor_log2(n).max(block_sup.len() as u64).max(1);
            let prefix = (1..=last)
                .map(|j| {
                    let log_h = match block_sup.get((j - 1) as usize) {
                        Some(h) => h.ln(),
                        None => spike_log_height(gamma, delta, j),
                    };
                    let log_w = if j == 1 { std::f64::consts::LN_2 } else { (j - 1) as f64 * std::f64::consts::LN_2 };
                    (log_w + p * log_h).exp()
                })
                .sum::<CompensatedSum>()
                .value();
            let tail = dyadic_tail(0.5, 1.0 + gamma * p, delta * p, last + 1, DIVERGENCE_THRESHOLD)?;
            Ok(NormEnclosure::from_parts(prefix, tail, p, 1u64.checked_shl(last as u32).unwrap_or(u64::MAX)))
        }
    }
}

/// Spikes with growing heights: `‖x̂‖_p >= x̂_1 >= h_j` for every `j`.
fn unbounded_spike(gamma: f64, delta: f64, p: f64, n: u64) -> NormEnclosure {
    let target = DIVERGENCE_THRESHOLD.ln();
    let mut j = 1u64;
    while p * spike_log_height(gamma, delta, j) <= target {
        j += 1;
    }
    let minorant = (p * spike_log_height(gamma, delta, j)).exp();
    NormEnclosure {
        lo: minorant.powf(1.0 / p),
        hi: f64::INFINITY,
        n,
        method: NormMethod::DivergentLowerBound,
        // the first coordinate of the envelope already dominates h_j
        certificate: Some(DivergenceCertificate { minorant, log_horizon: 0.0 }),
    }
}

/// Prefix data of `C|x|` over `1..=n`: `(Σ_{k<=n} |x_k|, Σ_{m<=n} (C|x|)_m^p)`.
fn ces_prefix(seq: &SymbolicSequence, p: f64, n: u64) -> (f64, f64) {
    let mut s = CompensatedSum::new();
    let mut acc = CompensatedSum::new();
    for m in 1..=n {
        s.add(seq.term(m).abs());
        acc.add((s.value() / m as f64).powf(p));
    }
    (s.value(), acc.value())
}

/// `Σ_{m > n} (S/m)^p`, i.e. the tail of a sequence whose averages are `S/m`.
fn harmonic_tail(total: f64, p: f64, n: u64) -> Result<TailBound> {
    let scale = total.powf(p);
    Ok(power_log_tail(p, 0.0, n, DIVERGENCE_THRESHOLD / scale)?.scaled(scale))
}

/// Enclosure of `‖C|x|‖_p`.
pub fn ces_norm(seq: &SymbolicSequence, p: f64, n: u64) -> Result<NormEnclosure> {
    check_args(p, n)?;
    if seq.is_zero() {
        return Ok(NormEnclosure::exact_value(0.0, n));
    }
    match seq {
        SymbolicSequence::UnitBasis { n: k } => {
            // (C e_k)_m = 1/m for m >= k and 0 before
            let n_eff = n.max(*k);
            check_prefix(n_eff - k)?;
            let prefix = (*k..=n_eff).rev().map(|m| (m as f64).powf(-p)).sum::<CompensatedSum>().value();
            Ok(NormEnclosure::from_parts(prefix, harmonic_tail(1.0, p, n_eff)?, p, n_eff))
        }
        SymbolicSequence::FiniteSupport { values } => {
            let n_eff = n.max(values.len() as u64);
            check_prefix(n_eff)?;
            let (total, prefix) = ces_prefix(seq, p, n_eff);
            Ok(NormEnclosure::from_parts(prefix, harmonic_tail(total, p, n_eff)?, p, n_eff))
        }
        SymbolicSequence::PowerLog { a, b } => ces_power_log(seq, *a, *b, p, n),
        SymbolicSequence::LacunarySpike { gamma, delta } => ces_spike(seq, *gamma, *delta, p, n),
    }
}

/// `(A (Σ u)^(1/p) + B (Σ v)^(1/p))^p`: Minkowski for `Σ (A u' + B v')^p`.
fn minkowski(a: f64, sum_u: f64, b: f64, sum_v: f64, p: f64) -> f64 {
    (a.max(0.0) * sum_u.powf(1.0 / p) + b * sum_v.powf(1.0 / p)).powf(p)
}

fn finite_hi(t: TailBound) -> Option<f64> {
    match t {
        TailBound::Finite { hi, .. } => Some(hi),
        TailBound::Divergent(_) => None,
    }
}

fn finite_lo(t: TailBound) -> f64 {
    match t {
        TailBound::Finite { lo, .. } => lo,
        TailBound::Divergent(c) => c.minorant,
    }
}

fn ces_power_log(seq: &SymbolicSequence, a: f64, b: f64, p: f64, n: u64) -> Result<NormEnclosure> {
    let summable = a > 1.0 || (a == 1.0 && b > 1.0);
    let mut n_eff = n.max(3).max(seq.tail_monotone_index().unwrap_or(1));
    if summable {
        n_eff = n_eff.max(power_log_tail_start(a, b));
    }
    check_prefix(n_eff)?;
    let (s_n, prefix) = ces_prefix(seq, p, n_eff);
    let harmonic = harmonic_tail(s_n, p, n_eff)?;

    if summable {
        // S_N <= S_m <= S_N + Σ_{k > N} x_k, so C_m lies between S_N/m and that over m
        let tail_hi = finite_hi(power_log_tail(a, b, n_eff, DIVERGENCE_THRESHOLD)?)
            .expect("summable power-log tail is finite");
        let tail = match harmonic {
            TailBound::Finite { lo, hi } => {
                let ratio = ((s_n + tail_hi) / s_n).powf(p);
                TailBound::Finite { lo, hi: hi * ratio * (1.0 + TAIL_SLACK) }
            }
            div => div,
        };
        return Ok(NormEnclosure::from_parts(prefix, tail, p, n_eff));
    }
    if p == 1.0 {
        return Ok(NormEnclosure::from_parts(prefix, harmonic, p, n_eff));
    }
    if a < 1.0 && (a * p < 1.0 || (a * p == 1.0 && b * p <= 1.0)) {
        // for m >= 2N the average of x over (N, m] is at least x_m / 2
        let start = n_eff.max(power_log_tail_start(a * p, b * p));
        let cert = power_log_tail(a * p, b * p, 2 * start, DIVERGENCE_THRESHOLD * p.exp2())?;
        let TailBound::Divergent(_) = cert else {
            return Err(Error::Unsupported(format!("no Cesàro divergence bound for powerlog a = {a}, b = {b} at p = {p}")));
        };
        return Ok(NormEnclosure::from_parts(prefix, cert.scaled(p.exp2().recip()), p, n_eff));
    }
    let hi = power_log_ces_walk(a, b, p, n_eff as f64, s_n)?;
    let lo = finite_lo(harmonic);
    Ok(NormEnclosure::from_parts(prefix, TailBound::Finite { lo, hi: hi.max(lo) }, p, n_eff))
}

const WALK_STEPS: usize = 200_000;
const WALK_CHECK_EVERY: usize = 64;

/// Upper bound on `Σ_{m > t0} (C x)_m^p` for `x = n^-a L^-b` with `a <= 1`,
/// given `s0 >= Σ_{k <= t0} x_k` and `x` nonincreasing from `t0`.
///
/// Walks geometric windows `(t, t']`, bounding the window's partial sums by
/// rectangles, and closes the remaining tail with `C_m <= A/m + B g(m)` and
/// Minkowski. Every window end yields a valid bound; the smallest is kept.
fn power_log_ces_walk(a: f64, b: f64, p: f64, t0: f64, s0: f64) -> Result<f64> {
    let close = |t: f64, s: f64| -> Option<f64> {
        let l = log_factor(t);
        let (a_c, b_c, g_s, g_beta) = if a < 1.0 {
            // F(t) = t^(1-a) L^-b has F' >= κ x from t on
            let kappa = (1.0 - a) - b.max(0.0) / l;
            if kappa <= 0.0 {
                return None;
            }
            (s - t.powf(1.0 - a) * l.powf(-b) / kappa, 1.0 / kappa, a * p, b * p)
        } else if b < 1.0 {
            (s - l.powf(1.0 - b) / (1.0 - b), 1.0 / (1.0 - b), p, -(1.0 - b) * p)
        } else {
            // ln y <= 2 (sqrt y - 1) with y = L(m) / L(t)
            (s - 2.0, 2.0 / l.sqrt(), p, -0.5 * p)
        };
        let sum_h = tail::power_log_tail_hi(p, 0.0, t)?;
        let sum_g = tail::power_log_tail_hi(g_s, g_beta, t)?;
        Some(minkowski(a_c, sum_h, b_c, sum_g, p))
    };

    let mut t = t0;
    let mut s = CompensatedSum::new();
    s.add(s0);
    let mut walked = CompensatedSum::new();
    let mut best = f64::INFINITY;
    for i in 0..WALK_STEPS {
        if i % WALK_CHECK_EVERY == 0 {
            if let Some(rest) = close(t, s.value()) {
                let total = walked.value() + rest;
                best = best.min(total);
                if rest <= 1e-13 * total {
                    break;
                }
            }
        }
        let r = 1.0 + 1e-3 * (1.0 + i as f64 / 1000.0);
        let next = (t * r).floor().max(t + 1.0);
        let width = next - t;
        // x_k <= x(t) for t < k <= next, and C_m <= S_next / t there
        s.add(width * power_log_term(a, b, t));
        walked.add(width * (s.value() / t).powf(p));
        t = next;
        if t > 1e300 {
            break;
        }
    }
    if best.is_finite() {
        Ok(best * (1.0 + TAIL_SLACK))
    } else {
        Err(Error::Unsupported(format!("no Cesàro tail bound for powerlog a = {a}, b = {b} at p = {p}")))
    }
}

fn ces_spike(seq: &SymbolicSequence, gamma: f64, delta: f64, p: f64, n: u64) -> Result<NormEnclosure> {
    // the prefix covers dyadic blocks [2^J, 2^(J+1)) for J < first
    let first = (floor_log2(n) + 1).max(2);
    let n_eff = (1u64 << first) - 1;
    check_prefix(n_eff)?;
    let (p_prev, prefix) = ces_prefix(seq, p, n_eff);
    let harmonic = harmonic_tail(p_prev, p, n_eff)?;
    if p == 1.0 {
        return Ok(NormEnclosure::from_parts(prefix, harmonic, p, n_eff));
    }
    // a block holds 2^J indices m with C_m >= P_J / 2^(J+1) >= h_J / 2^(J+1)
    let block_lower = dyadic_tail((-p).exp2(), 1.0 - p + gamma * p, delta * p, first, DIVERGENCE_THRESHOLD)?;
    if let TailBound::Divergent(_) = block_lower {
        return Ok(NormEnclosure::from_parts(prefix, block_lower, p, n_eff));
    }
    let hi = spike_ces_walk(gamma, delta, p, first, p_prev)?;
    let lo = finite_lo(harmonic);
    Ok(NormEnclosure::from_parts(prefix, TailBound::Finite { lo, hi: hi.max(lo) }, p, n_eff))
}

/// `ln Σ_{2^j <= m < 2^(j+1)} m^-p`, bounded above by the integral from `2^j - 1`.
fn ln_block_sum(j: u64, p: f64) -> f64 {
    let ln_start = |j: u64| j as f64 * std::f64::consts::LN_2 + (-(-(j as f64)).exp2()).ln_1p();
    let e1 = (1.0 - p) * ln_start(j);
    let e2 = (1.0 - p) * ln_start(j + 1);
    e1 + (-(e2 - e1).exp_m1()).ln() - (p - 1.0).ln()
}

/// Upper bound on the Cesàro `p`-th power sum over dyadic blocks `J >= first`
/// for a spike family, given `p0 = P_{first-1}` (the sum of the earlier heights).
///
/// Block `J` contributes at most `P_J^p Σ_block m^-p`; blocks are summed
/// explicitly and the rest is closed with `P_K <= A + B φ(K)` and Minkowski.
fn spike_ces_walk(gamma: f64, delta: f64, p: f64, first: u64, p0: f64) -> Result<f64> {
    let close = |j: u64, pj: f64| -> Option<f64> {
        let next = j + 1;
        if gamma < 0.0 || (gamma == 0.0 && delta > 1.0) {
            // heights are summable: C_m <= P_∞ / m
            let rest = finite_hi(tail::dyadic_tail_raw(1.0, gamma, delta, next, DIVERGENCE_THRESHOLD).ok()?)?;
            let ln_h = (1.0 - p) * (next as f64 * std::f64::consts::LN_2 + (-(-(next as f64)).exp2()).ln_1p());
            return Some((pj + rest).powf(p) * ln_h.exp() / (p - 1.0));
        }
        let geometric = (next as f64 * (1.0 - p)).exp2() / (1.0 - (1.0 - p).exp2());
        let jf = j as f64;
        let (a_c, b_c, kappa, mu) = if gamma == 0.0 && delta < 1.0 {
            (pj - jf.powf(1.0 - delta) / (1.0 - delta), 1.0 / (1.0 - delta), 1.0 - p, -(1.0 - delta) * p)
        } else if gamma == 0.0 {
            // ln(K/j) <= 2 (sqrt(K/j) - 1)
            (pj - 2.0, 2.0 / jf.sqrt(), 1.0 - p, -0.5 * p)
        } else {
            // heights grow by at least ρ per block from here on
            let rho = gamma.exp2() * (next as f64 / (next + 1) as f64).powf(delta.max(0.0));
            if rho <= 1.0 {
                return None;
            }
            (pj, rho / (rho - 1.0), 1.0 - p + gamma * p, delta * p)
        };
        let phi = finite_hi(tail::dyadic_tail_raw(1.0, kappa, mu, next, DIVERGENCE_THRESHOLD).ok()?)?;
        Some(minkowski(a_c, geometric, b_c, phi, p))
    };

    let mut pj = CompensatedSum::new();
    pj.add(p0);
    let mut walked = CompensatedSum::new();
    let mut best = f64::INFINITY;
    let mut j = first - 1;
    loop {
        if let Some(rest) = close(j, pj.value()) {
            let total = walked.value() + rest;
            best = best.min(total);
            if rest <= 1e-13 * total {
                break;
            }
        }
        j += 1;
        if j > 1000 {
            break;
        }
        pj.add(spike_log_height(gamma, delta, j).exp());
        let term = (p * pj.value().ln() + ln_block_sum(j, p)).exp();
        if !term.is_finite() {
            break;
        }
        walked.add(term);
    }
    if best.is_finite() {
        Ok(best * (1.0 + TAIL_SLACK))
    } else {
        Err(Error::Unsupported(format!("no Cesàro tail bound for spike γ = {gamma}, δ = {delta} at p = {p}")))
    }
}

#[cfg(test)]
mod tests;
