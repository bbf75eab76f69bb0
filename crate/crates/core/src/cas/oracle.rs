//! Seeded random assignments for cross-checking symbolic equalities numerically.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expr::FieldExpr;
use super::numeric::{numeric_eval, relative_gap, Assignment};
use super::CasError;

/// Tolerance on [`relative_gap`] for two expressions to count as equal.
pub const TOLERANCE: f64 = 1e-9;

/// Draws fields in [-2, 2] and couplings in [0.2, 2].
pub fn random_assignment(rng: &mut impl Rng) -> Assignment {
    let mut a = Assignment::new();
    for name in ["A", "dtheta", "dchi", "chi", "theta", "F"] {
        a.set(name, rng.gen_range(-2.0..=2.0)).expect("independent name");
    }
    for name in ["e", "mu", "lambda"] {
        a.set(name, rng.gen_range(0.2..=2.0)).expect("independent name");
    }
    a
}

/// Largest relative gap between `lhs` and `rhs` over `trials` assignments
/// drawn from `seed`.
pub fn max_gap(lhs: &FieldExpr, rhs: &FieldExpr, seed: u64, trials: usize) -> Result<f64, CasError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    for _ in 0..trials {
        let a = random_assignment(&mut rng);
        worst = worst.max(relative_gap(numeric_eval(lhs, &a)?, numeric_eval(rhs, &a)?));
    }
    Ok(worst)
}
