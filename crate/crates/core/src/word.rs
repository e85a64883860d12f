//! Finite words over countably many free generators and their normal forms.
//!
//! A generator `y_k` stands for one counterclockwise traversal of the k-th
//! circle of the wedge; `y_k^-1` is the clockwise traversal. A [`Word`] is an
//! arbitrary finite sequence of such traversals, the empty word being the
//! constant loop at the basepoint. Free reduction (repeated deletion of
//! adjacent inverse pairs) terminates at a unique normal form regardless of
//! deletion order; [`ReducedWord`] carries that invariant in the type.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Traversal orientation of a single circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// Counterclockwise: the generator `y_k` itself.
    Positive,
    /// Clockwise: the inverse `y_k^-1`.
    Negative,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// One traversal of one circle: a generator index (1-based) plus orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    index: usize,
    sign: Sign,
}

impl Letter {
    /// A letter for circle `index` with the given orientation.
    ///
    /// Panics if `index` is zero; generator indices are 1-based.
    pub fn new(index: usize, sign: Sign) -> Letter {
        assert!(index >= 1, "generator indices are 1-based");
        Letter { index, sign }
    }

    /// `y_index`.
    pub fn positive(index: usize) -> Letter {
        Letter::new(index, Sign::Positive)
    }

    /// `y_index^-1`.
    pub fn negative(index: usize) -> Letter {
        Letter::new(index, Sign::Negative)
    }

    pub fn index(self) -> usize {
        self.index
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn inverse(self) -> Letter {
        Letter {
            index: self.index,
            sign: self.sign.flipped(),
        }
    }

    /// True when the two letters cancel as an adjacent pair.
    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

/// A finite, possibly unreduced word. Unreduced words are first-class values:
/// they model based edge-loops before any homotopy is applied.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    /// Builds a word from signed indices: `k` means `y_k`, `-k` means `y_k^-1`.
    ///
    /// Panics on a zero entry; zero encodes no generator.
    pub fn from_signed(signed: &[i64]) -> Word {
        let letters = signed
            .iter()
            .map(|&v| {
                assert!(v != 0, "zero does not encode a generator");
                if v > 0 {
                    Letter::positive(v as usize)
                } else {
                    Letter::negative(v.unsigned_abs() as usize)
                }
            })
            .collect();
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index appearing in the word; 0 when empty.
    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    /// Concatenation of loops; the basepoint is implicit at the junction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// The word repeated `times` times.
    pub fn repeat(&self, times: usize) -> Word {
        Word {
            letters: self.letters.repeat(times),
        }
    }

    /// Letters reversed with orientations flipped, so that
    /// `w.concat(&w.inverse())` reduces to the empty word.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// True when no two adjacent letters cancel.
    pub fn is_reduced(&self) -> bool {
        self.letters
            .windows(2)
            .all(|pair| !pair[0].is_inverse_of(pair[1]))
    }

    /// Free reduction to the unique normal form: a single left-to-right pass
    /// with a pushdown of surviving letters. Linear time and space.
    pub fn reduce(&self) -> ReducedWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            if stack.last().is_some_and(|&top| top.is_inverse_of(letter)) {
                stack.pop();
            } else {
                stack.push(letter);
            }
        }
        ReducedWord { word: Word { letters: stack } }
    }

    /// Concatenate-then-reduce: the group operation on loop classes.
    pub fn multiply(&self, other: &Word) -> ReducedWord {
        self.concat(other).reduce()
    }

    /// True iff both words reduce to the same normal form, i.e. they represent
    /// the same element of the free group.
    pub fn equal_in_group(&self, other: &Word) -> bool {
        self.reduce() == other.reduce()
    }

    /// Positions `i` such that letters `i` and `i + 1` cancel.
    pub fn cancelling_pair_positions(&self) -> Vec<usize> {
        self.letters
            .windows(2)
            .enumerate()
            .filter(|(_, pair)| pair[0].is_inverse_of(pair[1]))
            .map(|(i, _)| i)
            .collect()
    }

    /// The word with the cancelling pair at `pos`, `pos + 1` removed.
    ///
    /// Panics if the letters at that position do not cancel.
    pub fn remove_cancelling_pair(&self, pos: usize) -> Word {
        assert!(
            self.letters[pos].is_inverse_of(self.letters[pos + 1]),
            "letters at {pos} do not cancel"
        );
        let mut letters = Vec::with_capacity(self.len() - 2);
        letters.extend_from_slice(&self.letters[..pos]);
        letters.extend_from_slice(&self.letters[pos + 2..]);
        Word { letters }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Word {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}

/// A word with no adjacent cancelling pair: the canonical representative of a
/// free-group element. A reduced word of max index at most `n` represents an
/// element of the free group on `y_1 .. y_n`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    word: Word,
}

impl ReducedWord {
    pub fn empty() -> ReducedWord {
        ReducedWord::default()
    }

    /// Wraps a word the caller has already checked; panics on an unreduced one.
    pub fn from_word(word: Word) -> ReducedWord {
        assert!(word.is_reduced(), "word is not freely reduced");
        ReducedWord { word }
    }

    pub fn as_word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }
}

impl std::ops::Deref for ReducedWord {
    type Target = Word;

    fn deref(&self) -> &Word {
        &self.word
    }
}

impl From<ReducedWord> for Word {
    fn from(reduced: ReducedWord) -> Word {
        reduced.word
    }
}

/// Witness index below the start of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("witness words start at index 2, got {0}")]
pub struct WitnessIndexError(pub usize);

/// The witness word `f_n`: the four-letter block `y_1^-1 y_n^-1 y_1 y_n`
/// repeated `n` times. Already reduced, of length `4n`. These are the loops
/// whose oscillation grows without bound while their finite-wedge projections
/// all die; the family starts at `n = 2` (at `n = 1` the block collapses).
pub fn counterexample_word(n: usize) -> Result<Word, WitnessIndexError> {
    if n < 2 {
        return Err(WitnessIndexError(n));
    }
    let block = Word::from_letters(vec![
        Letter::negative(1),
        Letter::negative(n),
        Letter::positive(1),
        Letter::positive(n),
    ]);
    Ok(block.repeat(n))
}

/// Grows `w` by `steps` insertions of adjacent cancelling pairs at positions
/// and indices drawn from a generator fully determined by `seed`. The result
/// is an unreduced representative of the same group element:
/// `inflate(w, s, seed).reduce() == w.reduce()` and the length grows by `2s`.
///
/// Identical seeds reproduce identical words across runs and platforms.
pub fn inflate(w: &Word, steps: usize, seed: u64) -> Word {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let index_range = 1..=w.max_index().max(1) + 1;

    // Draw the whole insertion schedule first: at step i the word has
    // w.len() + 2i letters, so w.len() + 2i + 1 insertion slots.
    let mut insertions = Vec::with_capacity(steps);
    for i in 0..steps {
        let position = rng.gen_range(0..=w.len() + 2 * i);
        let index = rng.gen_range(index_range.clone());
        let letter = match rng.gen::<bool>() {
            true => Letter::positive(index),
            false => Letter::negative(index),
        };
        insertions.push((position, letter));
    }

    apply_pair_insertions(w, &insertions)
}

/// Applies `insert [letter, letter^-1] at position p` operations, each
/// position interpreted relative to the word as it stood at that step.
///
/// Realized offline: an element inserted at step i keeps exactly its p
/// predecessors among everything present at step i, and nothing placed later
/// ever sits between an element and those predecessors. Walking the schedule
/// backwards and dropping each letter into the (p+1)-th still-free slot of
/// the final array therefore reproduces sequential insertion exactly, in
/// O(steps log len) instead of the quadratic memmove cost.
fn apply_pair_insertions(w: &Word, insertions: &[(usize, Letter)]) -> Word {
    let final_len = w.len() + 2 * insertions.len();
    let mut slots = FreeSlots::new(final_len);
    let mut letters = vec![None; final_len];

    for &(position, letter) in insertions.iter().rev() {
        let first = slots.take_kth_free(position);
        letters[first] = Some(letter);
        // The partner occupied the very next position at insertion time, so
        // it takes what is now the (position+1)-th free slot.
        let second = slots.take_kth_free(position);
        letters[second] = Some(letter.inverse());
    }

    let mut original = w.letters().iter();
    let letters = letters
        .into_iter()
        .map(|slot| slot.unwrap_or_else(|| *original.next().expect("slot count matches")))
        .collect();
    Word { letters }
}

/// Fenwick tree over free/occupied slots supporting "take the k-th free slot"
/// (k is 0-based) in O(log n).
struct FreeSlots {
    tree: Vec<usize>,
    len: usize,
}

impl FreeSlots {
    fn new(len: usize) -> FreeSlots {
        let mut slots = FreeSlots {
            tree: vec![0; len + 1],
            len,
        };
        for i in 0..len {
            slots.add(i, 1);
        }
        slots
    }

    fn add(&mut self, index: usize, delta: isize) {
        let mut i = index + 1;
        while i <= self.len {
            self.tree[i] = (self.tree[i] as isize + delta) as usize;
            i += i & i.wrapping_neg();
        }
    }

    fn take_kth_free(&mut self, k: usize) -> usize {
        let mut remaining = k + 1;
        let mut pos = 0;
        let mut mask = self.len.next_power_of_two();
        while mask > 0 {
            let next = pos + mask;
            if next <= self.len && self.tree[next] < remaining {
                remaining -= self.tree[next];
                pos = next;
            }
            mask >>= 1;
        }
        // pos is 1 past the last prefix with fewer than k+1 free slots.
        self.add(pos, -1);
        pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    /// Brute-force oracle: rescan for any adjacent cancelling pair and delete
    /// it, until none remains. Independent of the pushdown implementation.
    fn naive_reduce(w: &Word) -> Word {
        let mut current = w.clone();
        loop {
            let positions = current.cancelling_pair_positions();
            match positions.first() {
                Some(&pos) => current = current.remove_cancelling_pair(pos),
                None => return current,
            }
        }
    }

    /// Quadratic reference for inflate: literal sequential Vec insertion.
    fn naive_pair_insertions(w: &Word, insertions: &[(usize, Letter)]) -> Word {
        let mut letters = w.letters().to_vec();
        for &(position, letter) in insertions {
            letters.insert(position, letter.inverse());
            letters.insert(position, letter);
        }
        Word::from_letters(letters)
    }

    fn f(n: usize) -> Word {
        counterexample_word(n).unwrap()
    }

    #[test]
    fn reduce_cancels_inverse_pair() {
        let w = Word::from_signed(&[1, -1]);
        assert!(w.reduce().is_empty());
    }

    #[test]
    fn reduce_keeps_witness_word_fixed() {
        let w = f(2);
        assert_eq!(w, Word::from_signed(&[-1, -2, 1, 2, -1, -2, 1, 2]));
        assert!(w.is_reduced());
        assert_eq!(w.reduce().as_word(), &w);
    }

    #[test]
    fn reduce_matches_hand_oracle() {
        let w = Word::from_signed(&[2, 1, -1, -2, 3]);
        assert_eq!(naive_reduce(&w), Word::from_signed(&[3]));
        assert_eq!(w.reduce().as_word(), &Word::from_signed(&[3]));
    }

    #[test]
    fn multiply_has_identity_and_inverses() {
        let w = Word::from_signed(&[1, 2, -1]);
        assert_eq!(Word::empty().multiply(&w), w.reduce());
        assert!(Word::from_signed(&[1])
            .multiply(&Word::from_signed(&[-1]))
            .is_empty());
        let u = Word::from_signed(&[1, 2]);
        let v = Word::from_signed(&[-2, -1, 3]);
        assert_eq!(u.multiply(&v).as_word(), &Word::from_signed(&[3]));
    }

    #[test]
    fn inverse_reverses_and_negates() {
        assert_eq!(Word::empty().inverse(), Word::empty());
        assert_eq!(
            Word::from_signed(&[1, 2]).inverse(),
            Word::from_signed(&[-2, -1])
        );
        let w = f(2);
        assert!(w.multiply(&w.inverse()).is_empty());
    }

    #[test]
    fn equal_in_group_compares_normal_forms() {
        assert!(!Word::from_signed(&[1]).equal_in_group(&Word::from_signed(&[2])));
        assert!(Word::from_signed(&[1, 2, -2]).equal_in_group(&Word::from_signed(&[1])));
    }

    #[test]
    fn witness_word_layout() {
        assert_eq!(f(2), Word::from_signed(&[-1, -2, 1, 2, -1, -2, 1, 2]));
        let w3 = f(3);
        assert_eq!(w3.len(), 12);
        assert_eq!(w3, Word::from_signed(&[-1, -3, 1, 3]).repeat(3));
        for n in 2..=100 {
            let w = f(n);
            assert_eq!(w.len(), 4 * n);
            assert!(w.is_reduced());
        }
    }

    #[test]
    fn witness_word_rejects_small_indices() {
        assert_eq!(counterexample_word(0), Err(WitnessIndexError(0)));
        assert_eq!(counterexample_word(1), Err(WitnessIndexError(1)));
    }

    #[test]
    fn inflate_zero_steps_is_identity() {
        let w = f(2);
        assert_eq!(inflate(&w, 0, 7), w);
    }

    #[test]
    fn inflate_preserves_class_and_length() {
        let w = f(2);
        let inflated = inflate(&w, 5, 1);
        assert_eq!(inflated.len(), 18);
        assert!(inflated.equal_in_group(&w));
        for seed in 0..20 {
            assert!(inflate(&w, 10, seed).equal_in_group(&w));
        }
    }

    #[test]
    fn inflate_is_deterministic_per_seed() {
        let w = f(3);
        assert_eq!(inflate(&w, 12, 42), inflate(&w, 12, 42));
        assert_ne!(inflate(&w, 12, 42), inflate(&w, 12, 43));
    }

    #[test]
    fn offline_insertion_matches_sequential_reference() {
        let base = Word::from_signed(&[-1, 2, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let steps = rng.gen_range(0..12);
            let mut insertions = Vec::new();
            for i in 0..steps {
                let position = rng.gen_range(0..=base.len() + 2 * i);
                let index = rng.gen_range(1..=4);
                let letter = if rng.gen::<bool>() {
                    Letter::positive(index)
                } else {
                    Letter::negative(index)
                };
                insertions.push((position, letter));
            }
            assert_eq!(
                apply_pair_insertions(&base, &insertions),
                naive_pair_insertions(&base, &insertions)
            );
        }
    }

    fn arb_letter() -> impl Strategy<Value = Letter> {
        (1usize..=4, any::<bool>()).prop_map(|(index, positive)| {
            if positive {
                Letter::positive(index)
            } else {
                Letter::negative(index)
            }
        })
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(arb_letter(), 0..24).prop_map(Word::from_letters)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(w in arb_word()) {
            let once = w.reduce();
            prop_assert_eq!(once.as_word().reduce(), once);
        }

        #[test]
        fn reduce_matches_naive_oracle(w in arb_word()) {
            prop_assert_eq!(w.reduce().into_word(), naive_reduce(&w));
        }

        #[test]
        fn reduce_never_grows(w in arb_word()) {
            let reduced = w.reduce();
            prop_assert!(reduced.len() <= w.len());
            prop_assert_eq!(reduced.len() == w.len(), w.is_reduced());
        }

        #[test]
        fn multiply_is_associative(u in arb_word(), v in arb_word(), w in arb_word()) {
            let left = u.multiply(&v).multiply(&w);
            let right = u.multiply(&v.multiply(&w));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_cancels(w in arb_word()) {
            prop_assert!(w.multiply(&w.inverse()).is_empty());
            prop_assert!(w.inverse().multiply(&w).is_empty());
        }

        #[test]
        fn inflate_never_changes_the_class(w in arb_word(), steps in 0usize..30, seed in any::<u64>()) {
            let inflated = inflate(&w, steps, seed);
            prop_assert_eq!(inflated.len(), w.len() + 2 * steps);
            prop_assert!(inflated.equal_in_group(&w));
        }
    }
}
