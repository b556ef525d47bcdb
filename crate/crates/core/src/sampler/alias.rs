//! Alias sampling with Vose's two-worklist construction.
//!
//! Both worklists are FIFO and seeded in ascending index order, so a given
//! weight sequence always yields the same table.

use super::{validate, RngStream, SamplerError};

const NONE: u32 = u32::MAX;

/// One bucket: threshold `prob` for `first`, otherwise `second`.
/// Probability and alias share a slot so a draw touches one cache line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AliasSlot {
    pub prob: f64,
    pub first: u32,
    pub second: u32,
}

impl AliasSlot {
    /// Marks a distribution with no mass (used by precomputed tables).
    pub const DEAD: AliasSlot = AliasSlot { prob: 0.0, first: NONE, second: NONE };

    #[inline]
    pub fn is_dead(&self) -> bool {
        self.first == NONE
    }

    pub fn second(&self) -> Option<usize> {
        (self.second != NONE).then_some(self.second as usize)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AliasState {
    pub slots: Vec<AliasSlot>,
}

impl AliasState {
    /// The probability table `H`.
    pub fn prob_table(&self) -> Vec<f64> {
        self.slots.iter().map(|s| s.prob).collect()
    }

    /// The alias table `A` as `(first, second)` buckets.
    pub fn alias_table(&self) -> Vec<(usize, Option<usize>)> {
        self.slots.iter().map(|s| (s.first as usize, s.second())).collect()
    }

    pub fn generate(&self, rng: &mut RngStream) -> usize {
        alias_generate(&self.slots, rng)
    }
}

/// Reusable worklists for [`alias_init_into`].
#[derive(Default, Debug)]
pub struct AliasScratch {
    scaled: Vec<f64>,
    small: Vec<u32>,
    large: Vec<u32>,
}

pub fn alias_init(weights: &[f64]) -> Result<AliasState, SamplerError> {
    let mut slots = Vec::with_capacity(weights.len());
    alias_init_into(weights, &mut slots, &mut AliasScratch::default())?;
    Ok(AliasState { slots })
}

pub fn alias_init_into(
    weights: &[f64],
    out: &mut Vec<AliasSlot>,
    scratch: &mut AliasScratch,
) -> Result<(), SamplerError> {
    let sum = validate(weights)?;
    let n = weights.len();
    let scale = n as f64 / sum;
    let AliasScratch { scaled, small, large } = scratch;
    scaled.clear();
    scaled.extend(weights.iter().map(|&w| w * scale));
    small.clear();
    large.clear();
    for (i, &q) in scaled.iter().enumerate() {
        if q < 1.0 {
            small.push(i as u32);
        } else {
            large.push(i as u32);
        }
    }
    out.clear();
    out.resize(n, AliasSlot { prob: 1.0, first: 0, second: NONE });

    let (mut si, mut li) = (0, 0);
    while si < small.len() && li < large.len() {
        let l = small[si];
        si += 1;
        let g = large[li];
        out[l as usize] = AliasSlot { prob: scaled[l as usize], first: l, second: g };
        let rest = (scaled[g as usize] + scaled[l as usize]) - 1.0;
        scaled[g as usize] = rest;
        if rest < 1.0 {
            li += 1;
            small.push(g);
        }
    }
    // Leftovers carry mass 1 up to rounding.
    for &i in large[li..].iter().chain(&small[si..]) {
        out[i as usize] = AliasSlot { prob: 1.0, first: i, second: NONE };
    }
    Ok(())
}

/// Draws the slot index, then the threshold variate.
#[inline]
pub fn alias_draw(n: usize, rng: &mut RngStream) -> (usize, f64) {
    let x = rng.index(n);
    let y = rng.unit();
    (x, y)
}

#[inline]
pub fn alias_pick(slot: &AliasSlot, y: f64) -> usize {
    if y < slot.prob {
        slot.first as usize
    } else {
        slot.second as usize
    }
}

#[inline]
pub fn alias_generate(slots: &[AliasSlot], rng: &mut RngStream) -> usize {
    let (x, y) = alias_draw(slots.len(), rng);
    alias_pick(&slots[x], y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Probability mass each element receives from the table.
    fn reconstruct(s: &AliasState) -> Vec<f64> {
        let n = s.slots.len();
        let mut mass = vec![0.0; n];
        for slot in &s.slots {
            mass[slot.first as usize] += slot.prob;
            if let Some(second) = slot.second() {
                mass[second] += 1.0 - slot.prob;
            }
        }
        mass.iter().map(|m| m / n as f64).collect()
    }

    fn assert_invariants(weights: &[f64], s: &AliasState) {
        let sum: f64 = weights.iter().sum();
        for (i, m) in reconstruct(s).iter().enumerate() {
            assert!((m - weights[i] / sum).abs() < 1e-9, "element {i}: {m} vs {}", weights[i] / sum);
        }
        for slot in &s.slots {
            assert!((0.0..=1.0).contains(&slot.prob));
            if slot.second().is_none() {
                assert_eq!(slot.prob, 1.0);
            }
        }
    }

    #[test]
    fn uniform_has_no_aliases() {
        let s = alias_init(&[0.25; 4]).unwrap();
        assert_eq!(s.prob_table(), vec![1.0; 4]);
        assert_eq!(s.alias_table(), (0..4).map(|i| (i, None)).collect::<Vec<_>>());
    }

    #[test]
    fn single_element() {
        let s = alias_init(&[1.0]).unwrap();
        assert_eq!(s.prob_table(), vec![1.0]);
        assert_eq!(s.alias_table(), vec![(0, None)]);
        let mut rng = RngStream::new(3);
        assert!((0..100).all(|_| s.generate(&mut rng) == 0));
    }

    #[test]
    fn skewed_reconstruction() {
        let w = [0.5, 0.25, 0.25];
        assert_invariants(&w, &alias_init(&w).unwrap());
    }

    #[test]
    fn pick_uses_threshold() {
        let slot = AliasSlot { prob: 0.75, first: 2, second: 5 };
        assert_eq!(alias_pick(&slot, 0.8), 5);
        assert_eq!(alias_pick(&slot, 0.7), 2);
    }

    #[test]
    fn zero_weights_never_drawn() {
        let s = alias_init(&[0.0, 3.0, 0.0, 1.0]).unwrap();
        let mut rng = RngStream::new(8);
        for _ in 0..100_000 {
            let i = s.generate(&mut rng);
            assert!(i == 1 || i == 3);
        }
    }

    #[test]
    fn frequencies_match_weights() {
        let s = alias_init(&[1.0, 2.0, 3.0]).unwrap();
        let mut rng = RngStream::new(23);
        let mut counts = [0usize; 3];
        let draws = 1_000_000;
        for _ in 0..draws {
            counts[s.generate(&mut rng)] += 1;
        }
        for (c, p) in counts.iter().zip([1.0 / 6.0, 1.0 / 3.0, 0.5]) {
            assert!((*c as f64 / draws as f64 - p).abs() < 0.01);
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let w: Vec<f64> = (0..50).map(|i| ((i * 37) % 11) as f64 + 0.5).collect();
        assert_eq!(alias_init(&w).unwrap(), alias_init(&w).unwrap());
    }

    proptest! {
        #[test]
        fn reconstruction_invariant(ws in proptest::collection::vec(0.0f64..10.0, 1..300)) {
            prop_assume!(ws.iter().sum::<f64>() > 0.0);
            assert_invariants(&ws, &alias_init(&ws).unwrap());
        }
    }
}
