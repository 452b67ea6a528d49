//! Convergence of `Σ_n f(n)^q` as a function of `q` for the series shapes
//! that membership questions reduce to.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Relative tolerance for comparing exponents.
pub const EXPONENT_TOL: f64 = 1e-12;

pub fn cmp_exponent(x: f64, y: f64) -> Ordering {
    if x.is_infinite() || y.is_infinite() {
        return x.partial_cmp(&y).unwrap_or(Ordering::Equal);
    }
    if x == y || (x - y).abs() <= EXPONENT_TOL * x.abs().max(y.abs()).max(1.0) {
        Ordering::Equal
    } else if x < y {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// Finitely many nonzero terms.
    Always,
    /// Terms `Θ(n^-a L^-b LL^-c)`.
    Power { a: f64, b: f64, c: f64 },
    /// `Σ_j 2^(j(k0 + k1 q)) j^(-μ q)`.
    Dyadic { k0: f64, k1: f64, mu: f64 },
    /// Unbounded terms.
    Never,
}

impl Shape {
    pub fn converges(&self, q: f64) -> bool {
        match *self {
            Shape::Always => true,
            Shape::Never => false,
            Shape::Power { a, b, c } => {
                // integral test: compare (aq, bq, cq) with (1, 1, 1) lexicographically
                for e in [a * q, b * q, c * q] {
                    match cmp_exponent(e, 1.0) {
                        Ordering::Greater => return true,
                        Ordering::Less => return false,
                        Ordering::Equal => {}
                    }
                }
                false
            }
            Shape::Dyadic { k0, k1, mu } => match cmp_exponent(k0 + k1 * q, 0.0) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => cmp_exponent(mu * q, 1.0) == Ordering::Greater,
            },
        }
    }

    /// `(crit, attained)` over `q ∈ [1, ∞)`: convergence fails below `crit`,
    /// holds above it, and `attained` is convergence at `crit` itself.
    pub fn critical(&self) -> Result<(f64, bool)> {
        let raw = match *self {
            Shape::Always => 1.0,
            Shape::Never => f64::INFINITY,
            Shape::Power { a, .. } => {
                if a > 0.0 {
                    1.0 / a
                } else {
                    f64::INFINITY
                }
            }
            Shape::Dyadic { k0, k1, mu } => {
                if k1 < 0.0 {
                    -k0 / k1
                } else if k1 == 0.0 {
                    match cmp_exponent(k0, 0.0) {
                        Ordering::Less => 1.0,
                        Ordering::Greater => f64::INFINITY,
                        Ordering::Equal if mu > 0.0 => 1.0 / mu,
                        Ordering::Equal => f64::INFINITY,
                    }
                } else if self.converges(1.0) {
                    return Err(Error::Unsupported(format!(
                        "dyadic shape k0 = {k0}, k1 = {k1} converges only on a bounded range of exponents"
                    )));
                } else {
                    f64::INFINITY
                }
            }
        };
        let crit = raw.max(1.0);
        let attained = crit.is_finite() && self.converges(crit);
        Ok((crit, attained))
    }
}
