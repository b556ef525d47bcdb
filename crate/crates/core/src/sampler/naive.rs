use super::{RngStream, SamplerError};

/// Uniform index in `[0, n)`; one integer draw.
#[inline]
pub fn naive_generate(n: usize, rng: &mut RngStream) -> Result<usize, SamplerError> {
    if n == 0 {
        return Err(SamplerError::EmptyDomain);
    }
    Ok(rng.index(n))
}
