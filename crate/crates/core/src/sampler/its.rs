//! Inverse transformation sampling.

use super::{validate, RngStream, SamplerError};

#[derive(Clone, Debug, PartialEq)]
pub struct ItsState {
    pub cumulative: Vec<f64>,
}

impl ItsState {
    pub fn total(&self) -> f64 {
        *self.cumulative.last().expect("ItsState is never empty")
    }

    pub fn generate(&self, rng: &mut RngStream) -> usize {
        its_generate(&self.cumulative, rng)
    }
}

pub fn its_init(weights: &[f64]) -> Result<ItsState, SamplerError> {
    let mut cumulative = Vec::with_capacity(weights.len());
    its_init_into(weights, &mut cumulative)?;
    Ok(ItsState { cumulative })
}

/// Writes the plain running sums of `weights` into `out`.
pub fn its_init_into(weights: &[f64], out: &mut Vec<f64>) -> Result<(), SamplerError> {
    validate(weights)?;
    out.clear();
    let mut acc = 0.0;
    out.extend(weights.iter().map(|&w| {
        acc += w;
        acc
    }));
    Ok(())
}

/// Draws the search target, uniform in `[0, total)`.
#[inline]
pub fn its_draw(total: f64, rng: &mut RngStream) -> f64 {
    rng.below(total)
}

/// Smallest `i` with `x < cumulative[i]`. Requires `x < cumulative.last()`.
/// Elements with zero weight are never returned.
#[inline]
pub fn its_search(cumulative: &[f64], x: f64) -> usize {
    let (mut lo, mut hi) = (0, cumulative.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if x < cumulative[mid] {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

#[inline]
pub fn its_generate(cumulative: &[f64], rng: &mut RngStream) -> usize {
    let total = cumulative[cumulative.len() - 1];
    its_search(cumulative, its_draw(total, rng))
}
