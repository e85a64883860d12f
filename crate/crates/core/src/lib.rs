//! Word calculus for the wedge of countably many shrinking circles.
//!
//! Loops based at the wedge point are modeled as finite words over generators
//! `y_1, y_2, ...`, one per circle. The crate provides:
//!
//! - free reduction to the unique normal form and the induced group
//!   operations ([`word`]);
//! - the erasure retractions that collapse circles above a chosen index, and
//!   the canonical homomorphism into the inverse limit of the finite-wedge
//!   groups, truncated to [`CoherentSequence`] values with an exact dyadic
//!   ultrametric ([`projections`]);
//! - the oscillation invariant, a count that no reduction step can raise and
//!   that bounds every representative of a group element from below
//!   ([`oscillation`]);
//! - the witness family `counterexample_word(n)`, whose class-minimal
//!   oscillation `2n` grows without bound while its truncated image converges
//!   to the identity at rate `2^-n`. The two limits pull in opposite
//!   directions: the map into the inverse limit forgets the divergence, which
//!   is exactly why it cannot be an embedding ([`table`]);
//! - a deterministic property-verification suite over all of the above
//!   ([`verify`]).
//!
//! The `earring` binary exposes the same operations on the command line using
//! the canonical text encoding of [`encoding`].

pub mod encoding;
pub mod oscillation;
pub mod projections;
pub mod table;
pub mod verify;
pub mod word;

pub use encoding::{format_word, parse_word, ParseReducedWordError, ParseWordError};
pub use oscillation::{
    min_oscillation_in_class, oscillation_number, verify_reduction_monotone, OscillationCount,
    ReductionTrace, TraceError, TraceStep,
};
pub use projections::{
    check_coherence, delete_above, distance, erase_above, erase_top, phi_truncated,
    sequence_limit_report, CoherentSequence, CoordinateReport, DistanceValue, LimitReport,
    ParseSequenceError, ProjectionError,
};
pub use table::{counterexample_row, rows, run_table, CounterexampleRow, TableError, TableFormat};
pub use verify::{run_verify, PropertyResult, VerifyConfig, VerifyError, VerifyReport};
pub use word::{
    counterexample_word, inflate, Letter, ReducedWord, Sign, WitnessIndexError, Word,
};
