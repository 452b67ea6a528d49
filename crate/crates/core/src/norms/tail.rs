//! Rigorous bounds for the two tail shapes every norm reduces to:
//! power-log series `Σ n^-s L(n)^-β` and dyadic series `Σ_j c 2^(jκ) j^-μ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::log_factor;
use crate::sum::CompensatedSum;

/// A tail minorant has to pass this value before a series is declared divergent.
pub const DIVERGENCE_THRESHOLD: f64 = 1e6;

/// Relative outward slack applied once to every finite tail upper bound.
pub const TAIL_SLACK: f64 = 1e-9;

const MAX_EXPLICIT_TERMS: u64 = 50_000_000;

/// Proof that a series of nonnegative terms is infinite: the partial sum up to
/// `exp(log_horizon)` already exceeds `minorant`, and `minorant` passed the
/// divergence threshold. An infinite `log_horizon` means the horizon is too
/// large for a double (iterated-logarithm divergence).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivergenceCertificate {
    pub minorant: f64,
    #[serde(with = "crate::float_json")]
    pub log_horizon: f64,
}

/// Bounds on a nonnegative tail sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailBound {
    Finite { lo: f64, hi: f64 },
    Divergent(DivergenceCertificate),
}

impl TailBound {
    pub fn scaled(self, c: f64) -> Self {
        match self {
            Self::Finite { lo, hi } => Self::Finite { lo: c * lo, hi: c * hi },
            Self::Divergent(cert) => Self::Divergent(DivergenceCertificate { minorant: c * cert.minorant, ..cert }),
        }
    }
}

/// Smallest integer `T` such that `t^-s L(t)^-β` is nonincreasing on `[T, ∞)`.
pub fn power_log_tail_start(s: f64, beta: f64) -> u64 {
    monotone_start(s, beta).ceil().min(u64::MAX as f64 / 4.0) as u64
}

fn monotone_start(s: f64, beta: f64) -> f64 {
    if beta < 0.0 && s > 0.0 {
        // t^-s L^-β decreases once L(t) >= -β/s
        (-beta / s - 1.0).exp().max(1.0)
    } else {
        1.0
    }
}

/// From here on the closed-form upper bound for `β < 0` applies: it needs
/// `(s - 1) L(T) > -β`; ask for twice that.
fn closed_upper_start(s: f64, beta: f64) -> f64 {
    let mut need = monotone_start(s, beta);
    if beta < 0.0 && s > 1.0 {
        need = need.max((2.0 * -beta / (s - 1.0) - 1.0).exp());
    }
    need
}

/// Upper bound on `Σ_{n > t} n^-s L(n)^-β` from the closed form alone, for a
/// (possibly huge) integer `t` held as a double; `None` when `t` is below the
/// closed form's range or the series diverges.
pub(crate) fn power_log_tail_hi(s: f64, beta: f64, t: f64) -> Option<f64> {
    if t < closed_upper_start(s, beta) {
        return None;
    }
    power_log_integral(s, beta, t).map(|(_, hi)| hi)
}

/// Upper bound on `Σ_{n > t} n^-s L(n)^-β` for `t` past the monotone start:
/// rectangles over geometric windows until the closed form takes over.
fn power_log_upper(s: f64, beta: f64, t0: f64) -> Option<f64> {
    let target = closed_upper_start(s, beta).ceil();
    if !(target <= 1e300) {
        return None;
    }
    let mut acc = CompensatedSum::new();
    let mut t = t0;
    let mut i = 0u64;
    while t < target {
        let r = 1.0 + 1e-3 * (1.0 + i as f64 / 1000.0);
        let next = (t * r).floor().max(t + 1.0).min(target);
        // terms with t < n <= next are at most f(t)
        acc.add((next - t) * crate::sequence::power_log_term(s, beta, t));
        t = next;
        i += 1;
    }
    power_log_integral(s, beta, t).map(|(_, hi)| acc.value() + hi)
}

/// `∫_T^∞ t^-s L(t)^-β dt` bounded from below and above.
///
/// `None` when the integral is infinite. Requires `T >= power_log_tail_start`.
fn power_log_integral(s: f64, beta: f64, t: f64) -> Option<(f64, f64)> {
    let k = s - 1.0;
    let v = log_factor(t);
    if k > 0.0 {
        // substitute u = ln t and linearise ln(1 + u) at u = ln T (concavity)
        let base = t.powf(-k) * v.powf(-beta);
        let (lo, hi) = if beta >= 0.0 {
            (base / (k + beta / v), base / k)
        } else {
            let m = -beta;
            let hi = if k * v > m { base / (k - m / v) } else { f64::INFINITY };
            (base / k, hi)
        };
        Some((lo, hi))
    } else if k == 0.0 && beta > 1.0 {
        let exact = v.powf(1.0 - beta) / (beta - 1.0);
        Some((exact, exact))
    } else {
        None
    }
}

/// `∫_{T0}^{W} t^-s L(t)^-β dt >= threshold` for some `W`; returns the
/// certificate with `ln W`.
fn power_log_divergence(s: f64, beta: f64, t0: f64, threshold: f64) -> DivergenceCertificate {
    let k = s - 1.0;
    let u0 = t0.ln();
    let v0 = 1.0 + u0;
    if k == 0.0 {
        // ∫ dv / v^β in v = 1 + ln t
        let log_horizon = if beta == 1.0 {
            (v0.ln() + threshold).exp() - 1.0
        } else {
            let e = 1.0 - beta;
            (v0.powf(e) + threshold * e).powf(1.0 / e) - 1.0
        };
        return DivergenceCertificate { minorant: threshold, log_horizon };
    }
    // k < 0: integrand e^{|k| u} (1+u)^-β; bound the log factor by its worst
    // value on the window and grow the window until the mass passes threshold
    let g = -k;
    let mass = |du: f64| {
        let log_floor = if beta >= 0.0 { -beta * (1.0 + u0 + du).ln() } else { -beta * v0.ln() };
        (log_floor + g * u0).exp() * (g * du).exp_m1() / g
    };
    let mut hi = 1.0f64;
    while mass(hi) < threshold {
        hi *= 2.0;
        if !hi.is_finite() {
            return DivergenceCertificate { minorant: threshold, log_horizon: f64::INFINITY };
        }
    }
    // shrink the window so the reported horizon is not wildly oversized
    let mut lo = 0.0f64;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mass(mid) >= threshold {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    DivergenceCertificate { minorant: mass(hi), log_horizon: u0 + hi }
}

/// `Σ_{n > N} n^-s L(n)^-β`.
///
/// `N` must be at least [`power_log_tail_start`]`(s, β)`; the sum is then
/// enclosed by the integrals from `N + 1` and from `N` (the latter summed by
/// rectangles where the closed form is not yet sharp enough). Divergent tails return a
/// certificate whose minorant reaches `threshold`.
pub fn power_log_tail(s: f64, beta: f64, n: u64, threshold: f64) -> Result<TailBound> {
    let start = power_log_tail_start(s, beta);
    if n < start {
        return Err(Error::InvalidParameter(format!(
            "power-log tail bound for s = {s}, β = {beta} needs N >= {start}, got {n}"
        )));
    }
    let t = n as f64;
    match power_log_integral(s, beta, t + 1.0) {
        Some((lo, _)) => {
            let hi = power_log_upper(s, beta, t).ok_or_else(|| {
                Error::Unsupported(format!("power-log tail s = {s}, β = {beta} is too flat to bound from N = {n}"))
            })?;
            Ok(TailBound::Finite { lo, hi: hi * (1.0 + TAIL_SLACK) })
        }
        None => Ok(TailBound::Divergent(power_log_divergence(s, beta, t + 1.0, threshold))),
    }
}

/// `Σ_{j >= start} c · 2^(jκ) · j^-μ` for `c > 0`, `start >= 1`.
pub fn dyadic_tail(c: f64, kappa: f64, mu: f64, start: u64, threshold: f64) -> Result<TailBound> {
    Ok(match dyadic_tail_raw(c, kappa, mu, start, threshold)? {
        TailBound::Finite { lo, hi } => TailBound::Finite { lo, hi: hi * (1.0 + TAIL_SLACK) },
        div => div,
    })
}

/// [`dyadic_tail`] without the additive slack, for callers that combine
/// several bounds and add slack once at the end.
pub(crate) fn dyadic_tail_raw(c: f64, kappa: f64, mu: f64, start: u64, threshold: f64) -> Result<TailBound> {
    if !(c > 0.0) || start == 0 {
        return Err(Error::InvalidParameter(format!("dyadic tail needs c > 0 and start >= 1 (c = {c}, start = {start})")));
    }
    let term = |j: u64| c * (j as f64 * kappa * std::f64::consts::LN_2 - mu * (j as f64).ln()).exp();
    let explicit = |from: u64, to: u64| -> f64 { (from..to).map(term).sum::<CompensatedSum>().value() };

    if kappa < 0.0 {
        // ratio of consecutive terms is at most ρ < 1 from j_e on
        let mut j_e = start + 64;
        if mu < 0.0 {
            let need = 1.0 / ((-kappa / -mu).exp2() - 1.0);
            j_e = j_e.max(need.ceil() as u64 + 1);
        }
        if j_e - start > MAX_EXPLICIT_TERMS {
            return Err(Error::Unsupported(format!("dyadic tail κ = {kappa}, μ = {mu} decays too slowly to bound")));
        }
        let rho = kappa.exp2() * (1.0 + 1.0 / j_e as f64).powf(mu.min(0.0).abs());
        let head = explicit(start, j_e);
        let first = term(j_e);
        return Ok(TailBound::Finite { lo: head + first, hi: head + first / (1.0 - rho) });
    }

    if kappa == 0.0 && mu > 1.0 {
        let j_e = start + 64;
        let head = explicit(start, j_e);
        let je = j_e as f64;
        let int = c * je.powf(1.0 - mu) / (mu - 1.0);
        return Ok(TailBound::Finite { lo: head + int, hi: head + int + term(j_e) });
    }

    if kappa == 0.0 {
        // Σ_{start}^{W} j^-μ >= ∫_{start}^{W} t^-μ dt for monotone terms either way
        let s0 = start as f64;
        let target = threshold / c;
        let w = if mu == 1.0 {
            (s0.ln() + target).exp()
        } else {
            let e = 1.0 - mu;
            (s0.powf(e) + target * e).powf(1.0 / e)
        };
        return Ok(TailBound::Divergent(DivergenceCertificate {
            minorant: threshold,
            log_horizon: w.ceil() * std::f64::consts::LN_2,
        }));
    }

    // κ > 0: terms eventually grow geometrically; sum until the threshold
    let mut acc = CompensatedSum::new();
    let mut j = start;
    while acc.value() < threshold {
        if j - start > MAX_EXPLICIT_TERMS {
            return Err(Error::Unsupported(format!("dyadic tail κ = {kappa}, μ = {mu} grows too slowly to certify")));
        }
        acc.add(term(j));
        j += 1;
    }
    Ok(TailBound::Divergent(DivergenceCertificate {
        minorant: acc.value(),
        log_horizon: (j - 1) as f64 * std::f64::consts::LN_2,
    }))
}
