//! Deterministic family grids and seeded random samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sequence::SymbolicSequence;
use crate::space::Grade;

/// Exponents used for exact, `+` and `-` grades.
pub const EXPONENTS: [f64; 7] = [1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0];

/// Every grade of every exponent in [`EXPONENTS`], plus `1+` and `∞-`.
pub fn grade_grid() -> Vec<Grade> {
    let mut out = vec![Grade::Plus(1.0), Grade::Minus(f64::INFINITY)];
    for p in EXPONENTS {
        out.extend([Grade::Exact(p), Grade::Plus(p), Grade::Minus(p)]);
    }
    out
}

/// A fixed grid covering every family and parameter regime.
pub fn family_grid() -> Vec<SymbolicSequence> {
    let mut out = Vec::new();
    for a in [0.0, 0.25, 0.4, 0.5, 0.75, 1.0, 1.5, 2.0] {
        for b in [-1.0, 0.0, 0.5, 1.0, 2.0] {
            if let Ok(x) = SymbolicSequence::power_log(a, b) {
                out.push(x);
            }
        }
    }
    for gamma in [-1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5] {
        for delta in [-1.0, 0.0, 0.5, 1.0, 2.0] {
            if let Ok(x) = SymbolicSequence::spike(gamma, delta) {
                out.push(x);
            }
        }
    }
    for n in [1, 2, 9, 100] {
        out.push(SymbolicSequence::basis(n).expect("basis index is positive"));
    }
    for values in [vec![1.0, -2.0, 0.5], vec![0.0, 0.0, 3.0], vec![0.0; 4]] {
        out.push(SymbolicSequence::finite(values).expect("finite values"));
    }
    out
}

/// `count` symbolic families with parameters drawn from `rng`.
pub fn random_families(rng: &mut ChaCha8Rng, count: usize) -> Vec<SymbolicSequence> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = if rng.random_bool(0.5) {
            SymbolicSequence::power_log(rng.random_range(0.2..2.5), rng.random_range(-1.0..2.5))
        } else {
            SymbolicSequence::spike(rng.random_range(-1.2..1.2), rng.random_range(-1.0..2.5))
        };
        if let Ok(x) = x {
            out.push(x);
        }
    }
    out
}

/// The fixed grid followed by `extra` seeded random families.
pub fn sampled_grid(seed: u64, extra: usize) -> Vec<SymbolicSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = family_grid();
    out.extend(random_families(&mut rng, extra));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_are_deterministic() {
        assert_eq!(sampled_grid(7, 30), sampled_grid(7, 30));
        assert_ne!(sampled_grid(7, 30), sampled_grid(8, 30));
        assert!(family_grid().len() > 80);
    }
}
