//! Rejection sampling and its envelope-only variant.
//!
//! Each trial throws a dart `(x, y)` with `x` uniform in `[0, n)` and `y`
//! uniform in `[0, p*)`, accepting when `y < p_x`. The expected trial count
//! is `n * p* / sum(p)`.

use super::{validate, RngStream, SamplerError};

/// Trials before a rejection sampler reports that it cannot terminate.
pub const TRIAL_CAP: u32 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RejState {
    pub p_star: f64,
}

impl RejState {
    /// Expected trials per generation for a distribution summing to `total`.
    pub fn expected_trials(&self, n: usize, total: f64) -> f64 {
        n as f64 * self.p_star / total
    }
}

/// Envelope `p* = max p_i`.
pub fn rej_init(weights: &[f64]) -> Result<RejState, SamplerError> {
    validate(weights)?;
    Ok(RejState { p_star: weights.iter().copied().fold(0.0, f64::max) })
}

/// One dart: integer `x`, then real `y`.
#[inline]
pub fn rej_dart(n: usize, p_star: f64, rng: &mut RngStream) -> (usize, f64) {
    let x = rng.index(n);
    let y = rng.below(p_star);
    (x, y)
}

/// Returns the accepted index and the number of trials used.
pub fn rej_generate(
    mut weight: impl FnMut(usize) -> f64,
    n: usize,
    p_star: f64,
    rng: &mut RngStream,
) -> Result<(usize, u32), SamplerError> {
    if n == 0 {
        return Err(SamplerError::EmptyDomain);
    }
    let mut trials = 0;
    while trials < TRIAL_CAP {
        trials += 1;
        let (x, y) = rej_dart(n, p_star, rng);
        if y < weight(x) {
            return Ok((x, trials));
        }
    }
    Err(SamplerError::TrialCapExceeded { trials })
}

/// [`rej_generate`] with a caller-asserted envelope; no pass over the
/// weights ever happens. `user_p_star` must bound every weight.
#[inline]
pub fn orej_generate(
    weight: impl FnMut(usize) -> f64,
    n: usize,
    user_p_star: f64,
    rng: &mut RngStream,
) -> Result<(usize, u32), SamplerError> {
    rej_generate(weight, n, user_p_star, rng)
}
