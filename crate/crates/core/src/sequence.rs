//! Closed-form nonnegative sequence families and their finite views.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `L(n) = 1 + ln n`, the logarithmic factor used by every power-log family.
#[inline]
pub fn log_factor(t: f64) -> f64 {
    1.0 + t.ln()
}

/// A closed-form sequence `x = (x_n)_{n >= 1}`.
///
/// Construct through [`SymbolicSequence::power_log`] and friends (or serde),
/// which enforce the parameter invariants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", try_from = "RawSequence")]
pub enum SymbolicSequence {
    /// `x_n = n^-a * L(n)^-b`.
    #[serde(rename = "powerlog")]
    PowerLog { a: f64, b: f64 },
    /// `x_n = 2^(j*gamma) * j^-delta` at `n = 2^j` (`j >= 1`), zero elsewhere.
    #[serde(rename = "spike")]
    LacunarySpike { gamma: f64, delta: f64 },
    /// The canonical basis vector `e_n`.
    #[serde(rename = "basis")]
    UnitBasis { n: u64 },
    /// `x_k = values[k-1]` for `k <= values.len()`, zero afterwards.
    #[serde(rename = "finite")]
    FiniteSupport { values: Vec<f64> },
}

#[derive(Deserialize)]
#[serde(tag = "family")]
enum RawSequence {
    #[serde(rename = "powerlog")]
    PowerLog {
        a: f64,
        #[serde(default)]
        b: f64,
    },
    #[serde(rename = "spike")]
    LacunarySpike {
        gamma: f64,
        #[serde(default)]
        delta: f64,
    },
    #[serde(rename = "basis")]
    UnitBasis { n: u64 },
    #[serde(rename = "finite")]
    FiniteSupport { values: Vec<f64> },
}

impl TryFrom<RawSequence> for SymbolicSequence {
    type Error = Error;

    fn try_from(raw: RawSequence) -> Result<Self> {
        match raw {
            RawSequence::PowerLog { a, b } => Self::power_log(a, b),
            RawSequence::LacunarySpike { gamma, delta } => Self::spike(gamma, delta),
            RawSequence::UnitBasis { n } => Self::basis(n),
            RawSequence::FiniteSupport { values } => Self::finite(values),
        }
    }
}

impl SymbolicSequence {
    pub fn power_log(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!("powerlog needs finite a, b (got {a}, {b})")));
        }
        if a < 0.0 {
            return Err(Error::InvalidParameter(format!("powerlog needs a >= 0 (got {a})")));
        }
        if a == 0.0 && b < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "powerlog with a = 0 needs b >= 0 to stay bounded (got b = {b})"
            )));
        }
        Ok(Self::PowerLog { a, b })
    }

    pub fn spike(gamma: f64, delta: f64) -> Result<Self> {
        if !gamma.is_finite() || !delta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "spike needs finite gamma, delta (got {gamma}, {delta})"
            )));
        }
        if gamma == 0.0 && delta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "spike with gamma = 0 needs delta >= 0 (got {delta})"
            )));
        }
        Ok(Self::LacunarySpike { gamma, delta })
    }

    pub fn basis(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("basis index must be >= 1".into()));
        }
        Ok(Self::UnitBasis { n })
    }

    pub fn finite(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("finite support holds non-finite value {bad}")));
        }
        Ok(Self::FiniteSupport { values })
    }

    /// `x_n` for `n >= 1`.
    pub fn evaluate(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidIndex(n));
        }
        Ok(self.term(n))
    }

    /// `x_n` without the index check; `n` must be at least 1.
    #[inline]
    pub(crate) fn term(&self, n: u64) -> f64 {
        match self {
            Self::PowerLog { a, b } => power_log_term(*a, *b, n as f64),
            Self::LacunarySpike { gamma, delta } => {
                if n >= 2 && n.is_power_of_two() {
                    spike_height(*gamma, *delta, n.trailing_zeros() as u64)
                } else {
                    0.0
                }
            }
            Self::UnitBasis { n: k } => {
                if n == *k {
                    1.0
                } else {
                    0.0
                }
            }
            Self::FiniteSupport { values } => values.get((n - 1) as usize).copied().unwrap_or(0.0),
        }
    }

    /// Index of the last nonzero coordinate (0 for the zero sequence), or
    /// `None` for families with infinite support.
    pub fn support_end(&self) -> Option<u64> {
        match self {
            Self::UnitBasis { n } => Some(*n),
            Self::FiniteSupport { values } => {
                Some(values.iter().rposition(|v| *v != 0.0).map_or(0, |i| i as u64 + 1))
            }
            _ => None,
        }
    }

    /// True for the identically zero sequence.
    pub fn is_zero(&self) -> bool {
        self.support_end() == Some(0)
    }

    /// `x_1, ..., x_N` as a [`TruncatedView`].
    pub fn truncate(&self, len: usize) -> Result<TruncatedView> {
        if len == 0 {
            return Err(Error::InvalidParameter("truncation length must be >= 1".into()));
        }
        let terms = (1..=len as u64).map(|n| self.term(n)).collect();
        let tail_kind = match (self.support_end(), self.tail_monotone_index()) {
            (Some(end), _) if end <= len as u64 => TailKind::Zero,
            (_, Some(n0)) => TailKind::EventuallyMonotoneFrom(n0),
            _ => TailKind::Unknown,
        };
        Ok(TruncatedView { terms, tail_kind })
    }

    /// Least `N0` from which `|x_n|` is nonincreasing, when known in closed form.
    ///
    /// Finite supports report `support_end + 1`; spikes are never pointwise
    /// monotone and report `None`.
    pub fn tail_monotone_index(&self) -> Option<u64> {
        match self {
            Self::PowerLog { a, b } => Some(power_log_monotone_index(*a, *b)),
            Self::LacunarySpike { .. } => None,
            Self::UnitBasis { .. } | Self::FiniteSupport { .. } => self.support_end().map(|e| e + 1),
        }
    }
}

#[inline]
pub(crate) fn power_log_term(a: f64, b: f64, t: f64) -> f64 {
    let mut x = t.powf(-a);
    if b != 0.0 {
        x *= log_factor(t).powf(-b);
    }
    x
}

/// Height `2^(j*gamma) * j^-delta` of the spike at `n = 2^j`.
#[inline]
pub(crate) fn spike_height(gamma: f64, delta: f64, j: u64) -> f64 {
    let j = j as f64;
    let mut h = (j * gamma).exp2();
    if delta != 0.0 {
        h *= j.powf(-delta);
    }
    h
}

/// Natural log of a spike height, usable where the height itself overflows.
#[inline]
pub(crate) fn spike_log_height(gamma: f64, delta: f64, j: u64) -> f64 {
    let j = j as f64;
    j * gamma * std::f64::consts::LN_2 - delta * j.ln()
}

/// `t^-s L(t)^-beta` is nonincreasing on `[t*, inf)` with `L(t*) = -beta/s`;
/// returns the least integer from which the sampled sequence is nonincreasing.
pub(crate) fn power_log_monotone_index(s: f64, beta: f64) -> u64 {
    if beta >= 0.0 || s <= 0.0 {
        return 1;
    }
    let start = ((-beta / s) - 1.0).exp().ceil().max(1.0) as u64;
    if start > 1 && power_log_term(s, beta, (start - 1) as f64) >= power_log_term(s, beta, start as f64) {
        start - 1
    } else {
        start
    }
}

/// What is known about a view's coordinates beyond its last term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailKind {
    Zero,
    EventuallyMonotoneFrom(u64),
    Unknown,
}

/// The first `N` coordinates of a sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedView {
    pub terms: Vec<f64>,
    pub tail_kind: TailKind,
}

impl TruncatedView {
    pub fn new(terms: Vec<f64>, tail_kind: TailKind) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidParameter("a view needs at least one term".into()));
        }
        Ok(Self { terms, tail_kind })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}
