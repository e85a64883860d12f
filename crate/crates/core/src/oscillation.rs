//! The oscillation invariant and its monotonicity under reduction.
//!
//! The edge-path of a word sits at the basepoint between letters and crosses
//! the far point of the first circle exactly once per index-1 letter, so the
//! number of basepoint-separated visits to that far point equals the count of
//! index-1 letters, in either sign. Cancelling an adjacent inverse pair
//! removes zero or two such letters and never creates one, so the count never
//! increases along any reduction. The reduced form therefore attains the
//! minimum over the whole group-element class, and on the witness words that
//! minimum grows without bound.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{ReducedWord, Word};

/// Number of index-1 letters in a measured word, both signs counted.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct OscillationCount(pub usize);

impl fmt::Display for OscillationCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Counts index-1 letters of the word as given, without reducing. Deleting
/// letters of index above any k >= 1 leaves the count unchanged; the empty
/// word counts 0.
pub fn oscillation_number(w: &Word) -> OscillationCount {
    OscillationCount(w.letters().iter().filter(|l| l.index() == 1).count())
}

/// The minimum oscillation count over every word representing the same group
/// element. Cancellations only delete letters, so the unique normal form is
/// the exact minimizer and the minimum is its count.
pub fn min_oscillation_in_class(w: &Word) -> OscillationCount {
    oscillation_number(&w.reduce())
}

/// One stop of a reduction: the word as it stood and its oscillation count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub word: Word,
    pub oscillation: OscillationCount,
}

/// A complete single-cancellation reduction, first step the input word, last
/// step its normal form, consecutive words differing by one adjacent-pair
/// cancellation. Oscillation counts are non-increasing along any such trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn terminal(&self) -> &TraceStep {
        self.steps.last().expect("traces have at least one step")
    }

    pub fn counts_non_increasing(&self) -> bool {
        self.steps
            .windows(2)
            .all(|pair| pair[1].oscillation <= pair[0].oscillation)
    }
}

/// A recorded reduction that broke an invariant the mathematics forbids;
/// either signals an implementation bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("oscillation count increased at step {step}")]
    OscillationIncreased { trace: ReductionTrace, step: usize },
    #[error("terminal word of the trace is not the normal form")]
    TerminalNotNormalForm { trace: ReductionTrace },
}

/// Reduces `w` to normal form by repeatedly cancelling one adjacent inverse
/// pair chosen uniformly at random by a generator seeded with `seed`, and
/// records every intermediate word with its oscillation count. The choice is
/// randomized because monotonicity is claimed for every reduction order, not
/// one canonical order. Errors carry the offending trace.
pub fn verify_reduction_monotone(w: &Word, seed: u64) -> Result<ReductionTrace, TraceError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = vec![TraceStep {
        word: w.clone(),
        oscillation: oscillation_number(w),
    }];

    loop {
        let current = &steps.last().expect("nonempty").word;
        let positions = current.cancelling_pair_positions();
        if positions.is_empty() {
            break;
        }
        let pos = positions[rng.gen_range(0..positions.len())];
        let next = current.remove_cancelling_pair(pos);
        steps.push(TraceStep {
            oscillation: oscillation_number(&next),
            word: next,
        });
    }

    let trace = ReductionTrace { steps };
    if let Some(step) = trace
        .steps
        .windows(2)
        .position(|pair| pair[1].oscillation > pair[0].oscillation)
    {
        return Err(TraceError::OscillationIncreased {
            trace,
            step: step + 1,
        });
    }
    let normal_form: ReducedWord = w.reduce();
    if trace.terminal().word != *normal_form.as_word() {
        return Err(TraceError::TerminalNotNormalForm { trace });
    }
    Ok(trace)
}
