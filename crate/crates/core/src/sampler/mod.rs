//! Discrete-distribution sampling methods.
//!
//! Each weighted method splits into an initialization phase over a weight
//! sequence and a generation phase that draws an index. Generation draws
//! come from a caller-owned [`RngStream`] in a fixed order:
//!
//! | method | draws per generation            |
//! |--------|---------------------------------|
//! | NAIVE  | 1 integer                       |
//! | ITS    | 1 real                          |
//! | ALIAS  | 1 integer, then 1 real          |
//! | REJ    | per trial: 1 integer, then 1 real |
//! | O-REJ  | per trial: 1 integer, then 1 real |
//!
//! ITS and REJ work on raw weights; ALIAS normalizes internally.

mod alias;
mod its;
mod naive;
mod rej;

pub use alias::{alias_draw, alias_generate, alias_init, alias_init_into, alias_pick, AliasScratch, AliasSlot, AliasState};
pub use its::{its_draw, its_generate, its_init, its_init_into, its_search, ItsState};
pub use naive::naive_generate;
pub use rej::{orej_generate, rej_dart, rej_generate, rej_init, RejState, TRIAL_CAP};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use crate::rng::RngStream;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplerError {
    #[error("cannot sample from an empty domain")]
    EmptyDomain,
    #[error("weights sum to zero")]
    ZeroMass,
    #[error("weight {value} at index {index} is negative or not finite")]
    InvalidWeight { index: usize, value: f64 },
    #[error("rejection sampler gave up after {trials} trials")]
    TrialCapExceeded { trials: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SamplerKind {
    Naive,
    Its,
    Alias,
    Rej,
    ORej,
}

impl SamplerKind {
    pub const ALL: [SamplerKind; 5] = [Self::Naive, Self::Its, Self::Alias, Self::Rej, Self::ORej];

    pub fn name(self) -> &'static str {
        match self {
            Self::Naive => "naive",
            Self::Its => "its",
            Self::Alias => "alias",
            Self::Rej => "rej",
            Self::ORej => "orej",
        }
    }

    /// Whether the method has an initialization phase over the weights.
    pub fn has_init(self) -> bool {
        matches!(self, Self::Its | Self::Alias | Self::Rej)
    }
}

impl fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SamplerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "naive" => Ok(Self::Naive),
            "its" => Ok(Self::Its),
            "alias" => Ok(Self::Alias),
            "rej" => Ok(Self::Rej),
            "orej" => Ok(Self::ORej),
            other => Err(format!("unknown sampling method {other:?} (expected naive, its, alias, rej, orej)")),
        }
    }
}

/// Checks a weight sequence and returns its sum.
pub(crate) fn validate(weights: &[f64]) -> Result<f64, SamplerError> {
    if weights.is_empty() {
        return Err(SamplerError::EmptyDomain);
    }
    let mut sum = 0.0;
    for (index, &value) in weights.iter().enumerate() {
        if !(value.is_finite() && value >= 0.0) {
            return Err(SamplerError::InvalidWeight { index, value });
        }
        sum += value;
    }
    if sum > 0.0 {
        Ok(sum)
    } else {
        Err(SamplerError::ZeroMass)
    }
}
