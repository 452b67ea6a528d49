//! The Cesàro averaging operator, its square, and the decreasing envelope
//! `x̂_n = sup_{k >= n} |x_k|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{spike_height, SymbolicSequence, TailKind, TruncatedView};
use crate::sum::CompensatedSum;

/// Prefix means `(x_1 + ... + x_k) / k` with a compensated running sum.
pub fn cesaro(view: &TruncatedView) -> TruncatedView {
    let mut acc = CompensatedSum::new();
    let terms = view
        .terms
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            acc.add(x);
            acc.value() / (i + 1) as f64
        })
        .collect();
    TruncatedView { terms, tail_kind: TailKind::Unknown }
}

/// `C` applied once or twice.
pub fn cesaro_iterate(view: &TruncatedView, times: u32) -> Result<TruncatedView> {
    match times {
        1 => Ok(cesaro(view)),
        2 => Ok(cesaro(&cesaro(view))),
        _ => Err(Error::InvalidParameter(format!("Cesàro iterate supports 1 or 2 applications, got {times}"))),
    }
}

/// Suffix maxima of `|terms|`, capped below by `tail_sup`.
///
/// `tail_sup` must equal `sup_{k > N} |x_k|` of the underlying infinite
/// sequence (see [`certified_tail_sup`]); the output is then exact.
pub fn envelope(view: &TruncatedView, tail_sup: f64) -> Result<TruncatedView> {
    if !(tail_sup >= 0.0) || tail_sup.is_infinite() {
        return Err(Error::InvalidParameter(format!("tail supremum must be finite and >= 0, got {tail_sup}")));
    }
    let mut terms = vec![0.0; view.terms.len()];
    let mut running = tail_sup;
    for (out, x) in terms.iter_mut().zip(&view.terms).rev() {
        running = running.max(x.abs());
        *out = running;
    }
    let tail_kind = if tail_sup == 0.0 { TailKind::Zero } else { TailKind::EventuallyMonotoneFrom(1) };
    Ok(TruncatedView { terms, tail_kind })
}

/// `sup_{k > N} |x_k|` for a family, exactly.
pub fn certified_tail_sup(seq: &SymbolicSequence, len: u64) -> Result<f64> {
    match seq {
        SymbolicSequence::FiniteSupport { values } => {
            Ok(values.iter().skip(len as usize).fold(0.0, |m, v| m.max(v.abs())))
        }
        SymbolicSequence::UnitBasis { n } => Ok(if *n > len { 1.0 } else { 0.0 }),
        SymbolicSequence::PowerLog { .. } => {
            let n0 = seq.tail_monotone_index().unwrap_or(1);
            Ok((len + 1..=n0.max(len + 1)).map(|k| seq.term(k)).fold(0.0, f64::max))
        }
        SymbolicSequence::LacunarySpike { .. } => {
            let env = envelope_symbolic(seq)?;
            // the first spike beyond N sits in the block of m = N + 1 or later,
            // and x̂ is constant on each block
            Ok(env.evaluate(len + 1))
        }
    }
}

/// Closed-form description of `x̂` for a family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Envelope {
    /// The family is already nonincreasing: `x̂ = x`.
    Identity { sequence: SymbolicSequence },
    /// `x̂_m = head[m-1]` for `m <= head.len()`, then `x̂_m = x_m`.
    Prefixed { head: Vec<f64>, tail: SymbolicSequence },
    /// `x̂_m = height` for `m <= len`, zero afterwards.
    Plateau { height: f64, len: u64 },
    /// Finitely supported envelope.
    Finite { values: Vec<f64> },
    /// Constant on dyadic blocks `(2^(j-1), 2^j]` (block 1 is `{1, 2}`):
    /// `x̂_m = block_sup[j-1]` while `j <= block_sup.len()`, then the spike
    /// height `h_j` itself.
    Dyadic { gamma: f64, delta: f64, block_sup: Vec<f64> },
}

impl Envelope {
    /// `x̂_m` for `m >= 1`.
    pub fn evaluate(&self, m: u64) -> f64 {
        assert!(m >= 1, "envelope index starts at 1");
        match self {
            Self::Identity { sequence } => sequence.term(m).abs(),
            Self::Prefixed { head, tail } => match head.get((m - 1) as usize) {
                Some(h) => *h,
                None => tail.term(m).abs(),
            },
            Self::Plateau { height, len } => {
                if m <= *len {
                    *height
                } else {
                    0.0
                }
            }
            Self::Finite { values } => values.get((m - 1) as usize).copied().unwrap_or(0.0),
            Self::Dyadic { gamma, delta, block_sup } => {
                let j = dyadic_block(m);
                match block_sup.get((j - 1) as usize) {
                    Some(h) => *h,
                    None => spike_height(*gamma, *delta, j),
                }
            }
        }
    }
}

/// Block index `max(1, ceil(log2 m))`.
#[inline]
pub(crate) fn dyadic_block(m: u64) -> u64 {
    if m <= 2 {
        1
    } else {
        64 - u64::from((m - 1).leading_zeros())
    }
}

/// First `j` from which spike heights `2^(j*gamma) j^-delta` never increase;
/// `None` when they grow without bound.
pub(crate) fn spike_monotone_block(gamma: f64, delta: f64) -> Option<u64> {
    if gamma > 0.0 {
        return None;
    }
    if delta >= 0.0 {
        return Some(1);
    }
    if gamma == 0.0 {
        return None;
    }
    // h_{j+1} <= h_j  iff  (1 + 1/j)^|delta| <= 2^-gamma
    let bound = 1.0 / ((-gamma / -delta).exp2() - 1.0);
    let mut j = bound.ceil().max(1.0) as u64;
    while j > 1 && spike_height(gamma, delta, j - 1) >= spike_height(gamma, delta, j) {
        j -= 1;
    }
    while spike_height(gamma, delta, j + 1) > spike_height(gamma, delta, j) {
        j += 1;
    }
    Some(j)
}

/// The exact decreasing envelope of a family.
///
/// Spikes with `gamma > 0` have unbounded heights, so their envelope is
/// infinite and the call is rejected; such sequences lie outside every `d(p)`.
pub fn envelope_symbolic(seq: &SymbolicSequence) -> Result<Envelope> {
    match seq {
        SymbolicSequence::PowerLog { .. } => {
            let n0 = seq.tail_monotone_index().unwrap_or(1);
            if n0 <= 1 {
                return Ok(Envelope::Identity { sequence: seq.clone() });
            }
            let mut head = vec![0.0; (n0 - 1) as usize];
            let mut running = seq.term(n0);
            for m in (1..n0).rev() {
                running = running.max(seq.term(m));
                head[(m - 1) as usize] = running;
            }
            Ok(Envelope::Prefixed { head, tail: seq.clone() })
        }
        SymbolicSequence::UnitBasis { n } => Ok(Envelope::Plateau { height: 1.0, len: *n }),
        SymbolicSequence::FiniteSupport { .. } => {
            let view = seq.truncate(seq.support_end().unwrap_or(0).max(1) as usize)?;
            Ok(Envelope::Finite { values: envelope(&view, 0.0)?.terms })
        }
        SymbolicSequence::LacunarySpike { gamma, delta } => {
            let j0 = spike_monotone_block(*gamma, *delta).ok_or_else(|| {
                Error::Unsupported(format!(
                    "spike heights 2^(j*{gamma}) j^-{delta} are unbounded; the envelope is infinite"
                ))
            })?;
            let mut block_sup = vec![0.0; j0 as usize];
            let mut running = spike_height(*gamma, *delta, j0);
            for j in (1..=j0).rev() {
                running = running.max(spike_height(*gamma, *delta, j));
                block_sup[(j - 1) as usize] = running;
            }
            Ok(Envelope::Dyadic { gamma: *gamma, delta: *delta, block_sup })
        }
    }
}
