//! Erasure retractions, truncated coherent sequences, and the dyadic
//! ultrametric on them.
//!
//! Collapsing every circle of index above k to the basepoint sends a loop to a
//! loop of the finite wedge of the first k circles; on words this is deletion
//! of every letter of index above k. [`delete_above`] performs the deletion
//! alone, yielding the unreduced image path; [`erase_above`] reduces
//! afterwards, yielding the induced map on group elements. Collecting the
//! images at depths 1..K gives a [`CoherentSequence`], a truncation of an
//! inverse-limit element. Truncations of different depths are never compared:
//! agreement through depth K is all a truncation can certify.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::encoding::ParseReducedWordError;
use crate::word::{ReducedWord, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("depth must be at least 1")]
    ZeroDepth,
    #[error("top index must be at least 1")]
    ZeroTopIndex,
    #[error("word contains index {index}, above the stated top index {top}")]
    IndexAboveTop { index: usize, top: usize },
    #[error("entry {entry} contains index {index}, above its depth")]
    EntryIndexAboveDepth { entry: usize, index: usize },
    #[error("bonding relation fails at entry {depth}: erasing its top generator does not give the entry below")]
    IncoherentAtDepth { depth: usize },
    #[error("depth mismatch: {left} vs {right}; truncations of different depths are incomparable")]
    DepthMismatch { left: usize, right: usize },
    #[error("empty sequence list")]
    EmptyList,
}

/// Deletes every letter of index above `k` without reducing. This is the
/// letter-level image of the collapsing retraction: each deleted letter
/// becomes a stay-at-basepoint segment of the image path, so index-1 letters
/// are untouched for every k >= 1 and the oscillation count is preserved
/// exactly.
pub fn delete_above(w: &Word, k: usize) -> Word {
    w.letters()
        .iter()
        .copied()
        .filter(|letter| letter.index() <= k)
        .collect()
}

/// Deletes every letter of index above `k`, then reduces: the induced
/// homomorphism onto the free group on `y_1 .. y_k`. Deletion can bring
/// inverse letters together, so reduction may cancel further; only the
/// group-level identity `erase_above(uv, k) = erase_above(u,k) *
/// erase_above(v,k)` survives, not letter counts. `k = 0` erases everything.
pub fn erase_above(w: &Word, k: usize) -> ReducedWord {
    delete_above(w, k).reduce()
}

/// Deletes the single top generator `y_n` from a word supported on indices
/// <= n: the bonding map of the inverse system, equal to `erase_above(w,
/// n-1)`. Words with letters above `n` are rejected rather than silently
/// truncated.
pub fn erase_top(w: &ReducedWord, n: usize) -> Result<ReducedWord, ProjectionError> {
    if n == 0 {
        return Err(ProjectionError::ZeroTopIndex);
    }
    if w.max_index() > n {
        return Err(ProjectionError::IndexAboveTop {
            index: w.max_index(),
            top: n,
        });
    }
    Ok(erase_above(w, n - 1))
}

/// True iff entry k is supported on indices <= k for every k and each
/// adjacent pair satisfies the bonding relation `erase_top(entry_k, k) =
/// entry_{k-1}`. Accepts arbitrary candidate lists, entry 1 first.
pub fn check_coherence(entries: &[ReducedWord]) -> bool {
    for (i, entry) in entries.iter().enumerate() {
        if entry.max_index() > i + 1 {
            return false;
        }
    }
    entries.windows(2).enumerate().all(|(i, pair)| {
        erase_top(&pair[1], i + 2).expect("support checked above") == pair[0]
    })
}

/// A depth-K truncation of an inverse-limit element: reduced words
/// `entry 1 .. entry K`, entry k supported on indices <= k, adjacent entries
/// related by the bonding maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoherentSequence {
    entries: Vec<ReducedWord>,
}

impl CoherentSequence {
    /// Validates support and coherence; entry 1 first.
    pub fn from_entries(entries: Vec<ReducedWord>) -> Result<CoherentSequence, ProjectionError> {
        if entries.is_empty() {
            return Err(ProjectionError::ZeroDepth);
        }
        for (i, entry) in entries.iter().enumerate() {
            if entry.max_index() > i + 1 {
                return Err(ProjectionError::EntryIndexAboveDepth {
                    entry: i + 1,
                    index: entry.max_index(),
                });
            }
        }
        for (i, pair) in entries.windows(2).enumerate() {
            let bonded = erase_top(&pair[1], i + 2).expect("support checked above");
            if bonded != pair[0] {
                return Err(ProjectionError::IncoherentAtDepth { depth: i + 2 });
            }
        }
        Ok(CoherentSequence { entries })
    }

    /// The identity element truncated at `depth`: all entries empty.
    ///
    /// Panics at depth 0; truncations have at least one coordinate.
    pub fn trivial(depth: usize) -> CoherentSequence {
        assert!(depth >= 1, "truncations have at least one coordinate");
        CoherentSequence {
            entries: vec![ReducedWord::empty(); depth],
        }
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[ReducedWord] {
        &self.entries
    }

    /// Entry at coordinate `k`, 1-based. Panics outside `1..=depth`.
    pub fn entry(&self, k: usize) -> &ReducedWord {
        assert!(k >= 1 && k <= self.entries.len(), "coordinate out of range");
        &self.entries[k - 1]
    }

    /// True iff this is the truncated identity: every entry empty.
    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|entry| entry.is_empty())
    }
}

/// The canonical homomorphism, truncated at `depth`: coordinate k is the
/// image of `w` in the free group on `y_1 .. y_k`. Coherent by construction.
pub fn phi_truncated(w: &Word, depth: usize) -> Result<CoherentSequence, ProjectionError> {
    if depth == 0 {
        return Err(ProjectionError::ZeroDepth);
    }
    let entries = (1..=depth).map(|k| erase_above(w, k)).collect();
    CoherentSequence::from_entries(entries)
}

/// An exact dyadic distance. `Log2(-k)` denotes 2^-k, the distance between
/// truncations first disagreeing at coordinate k; `EqualThroughDepth` means
/// no disagreement up to the shared truncation depth, and orders strictly
/// below every `Log2` value. Variant order makes the derived ordering agree
/// with the numeric one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DistanceValue {
    EqualThroughDepth,
    Log2(i64),
}

impl DistanceValue {
    /// The exponent, or None when equal through depth.
    pub fn log2(self) -> Option<i64> {
        match self {
            DistanceValue::EqualThroughDepth => None,
            DistanceValue::Log2(v) => Some(v),
        }
    }
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceValue::EqualThroughDepth => f.write_str("equal through shared depth"),
            DistanceValue::Log2(v) => write!(f, "2^{v}"),
        }
    }
}

/// Product-topology ultrametric on truncations of equal depth: 2^-k at the
/// first disagreeing coordinate. Depth mismatch is an error; agreement beyond
/// the shared truncation is unknowable, never assumed.
pub fn distance(
    a: &CoherentSequence,
    b: &CoherentSequence,
) -> Result<DistanceValue, ProjectionError> {
    if a.depth() != b.depth() {
        return Err(ProjectionError::DepthMismatch {
            left: a.depth(),
            right: b.depth(),
        });
    }
    for (i, (x, y)) in a.entries.iter().zip(&b.entries).enumerate() {
        if x != y {
            return Ok(DistanceValue::Log2(-((i + 1) as i64)));
        }
    }
    Ok(DistanceValue::EqualThroughDepth)
}

/// Stabilization of one coordinate within a finite list of truncations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateReport {
    /// The coordinate k this report describes.
    pub coordinate: usize,
    pub stabilizes: bool,
    /// Constant value of the tail, when one exists.
    pub terminal: Option<ReducedWord>,
    /// 1-based position in the list where the constant tail begins.
    pub position: Option<usize>,
}

/// Coordinatewise stabilization report over a finite list of truncations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    pub coordinates: Vec<CoordinateReport>,
    /// Present iff every coordinate stabilizes; equals the member at the
    /// latest stabilization position.
    pub candidate_limit: Option<CoherentSequence>,
}

/// Reports, for each coordinate, whether the entries become constant within
/// the supplied list. A coordinate stabilizes at the minimal position from
/// which the entries are constant through the end, provided that tail has
/// length at least two; a tail of length one certifies nothing. Nothing is
/// extrapolated beyond the list.
pub fn sequence_limit_report(
    list: &[CoherentSequence],
) -> Result<LimitReport, ProjectionError> {
    let first = list.first().ok_or(ProjectionError::EmptyList)?;
    let depth = first.depth();
    for member in list {
        if member.depth() != depth {
            return Err(ProjectionError::DepthMismatch {
                left: depth,
                right: member.depth(),
            });
        }
    }

    let mut coordinates = Vec::with_capacity(depth);
    for k in 1..=depth {
        // Walk backwards to the start of the maximal constant tail.
        let mut start = list.len() - 1;
        while start > 0 && list[start - 1].entry(k) == list[start].entry(k) {
            start -= 1;
        }
        let tail_len = list.len() - start;
        if tail_len >= 2 {
            coordinates.push(CoordinateReport {
                coordinate: k,
                stabilizes: true,
                terminal: Some(list[start].entry(k).clone()),
                position: Some(start + 1),
            });
        } else {
            coordinates.push(CoordinateReport {
                coordinate: k,
                stabilizes: false,
                terminal: None,
                position: None,
            });
        }
    }

    let candidate_limit = coordinates
        .iter()
        .map(|c| c.position)
        .collect::<Option<Vec<_>>>()
        .map(|positions| {
            let latest = positions.into_iter().max().expect("depth >= 1");
            list[latest - 1].clone()
        });

    Ok(LimitReport {
        coordinates,
        candidate_limit,
    })
}

impl fmt::Display for CoherentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "depth {}", self.depth())?;
        for (i, entry) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{entry}")?;
        }
        Ok(())
    }
}

/// Rejected coherent-sequence text or JSON.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseSequenceError {
    #[error("missing \"depth K\" header line")]
    MissingHeader,
    #[error("header depth {header} does not match the {actual} entries supplied")]
    DepthMismatch { header: usize, actual: usize },
    #[error("entry {entry}: {source}")]
    Entry {
        entry: usize,
        source: ParseReducedWordError,
    },
    #[error(transparent)]
    Invalid(#[from] ProjectionError),
}

impl FromStr for CoherentSequence {
    type Err = ParseSequenceError;

    fn from_str(s: &str) -> Result<CoherentSequence, ParseSequenceError> {
        let mut lines = s.lines().filter(|line| !line.trim().is_empty());
        let header = lines.next().ok_or(ParseSequenceError::MissingHeader)?;
        let depth: usize = header
            .trim()
            .strip_prefix("depth ")
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or(ParseSequenceError::MissingHeader)?;
        let mut entries = Vec::new();
        for (i, line) in lines.enumerate() {
            let entry = line
                .parse::<ReducedWord>()
                .map_err(|source| ParseSequenceError::Entry {
                    entry: i + 1,
                    source,
                })?;
            entries.push(entry);
        }
        if entries.len() != depth {
            return Err(ParseSequenceError::DepthMismatch {
                header: depth,
                actual: entries.len(),
            });
        }
        Ok(CoherentSequence::from_entries(entries)?)
    }
}

#[derive(Serialize, Deserialize)]
struct SequenceRepr {
    depth: usize,
    entries: Vec<ReducedWord>,
}

impl Serialize for CoherentSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SequenceRepr {
            depth: self.depth(),
            entries: self.entries.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoherentSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<CoherentSequence, D::Error> {
        let repr = SequenceRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.depth {
            return Err(D::Error::custom(format!(
                "declared depth {} does not match {} entries",
                repr.depth,
                repr.entries.len()
            )));
        }
        CoherentSequence::from_entries(repr.entries).map_err(D::Error::custom)
    }
}
