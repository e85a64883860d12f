//! Python bindings for the earring word calculus: words, reduction, erasure
//! retractions, truncated inverse-limit sequences, the oscillation count, and
//! the witness table. Domain errors surface as ValueError.

use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use earring::encoding::parse_word;
use earring::word::{Letter, Word as CoreWord};

fn value_error(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn letters_from_signed(signed: &[i64]) -> PyResult<CoreWord> {
    let mut letters = Vec::with_capacity(signed.len());
    for (i, &v) in signed.iter().enumerate() {
        if v == 0 {
            return Err(value_error(format!(
                "entry {} is zero; generator indices start at 1",
                i + 1
            )));
        }
        let index = v.unsigned_abs() as usize;
        letters.push(if v > 0 {
            Letter::positive(index)
        } else {
            Letter::negative(index)
        });
    }
    Ok(CoreWord::from_letters(letters))
}

/// A finite word over the generators y_1, y_2, ...; possibly unreduced.
#[pyclass(frozen, eq, hash)]
#[derive(PartialEq, Eq, Hash)]
struct Word {
    inner: CoreWord,
}

#[pymethods]
impl Word {
    /// Accepts the canonical encoding ("-1 -2 1 2", empty word "e") or a
    /// list of signed indices ([-1, -2, 1, 2]).
    #[new]
    fn new(spec: &Bound<'_, PyAny>) -> PyResult<Word> {
        if let Ok(text) = spec.extract::<String>() {
            let inner = parse_word(&text).map_err(value_error)?;
            return Ok(Word { inner });
        }
        if let Ok(signed) = spec.extract::<Vec<i64>>() {
            return Ok(Word {
                inner: letters_from_signed(&signed)?,
            });
        }
        Err(PyTypeError::new_err(
            "expected an encoding string or a list of signed integers",
        ))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word(\"{}\")", self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Letters as signed indices: k for y_k, -k for its inverse.
    fn signed(&self) -> Vec<i64> {
        self.inner
            .letters()
            .iter()
            .map(|l| {
                let index = i64::try_from(l.index()).expect("generator index fits in 64 bits");
                match l.sign() {
                    earring::Sign::Positive => index,
                    earring::Sign::Negative => -index,
                }
            })
            .collect()
    }

    /// The free normal form.
    fn reduce(&self) -> Word {
        Word {
            inner: self.inner.reduce().into_word(),
        }
    }

    fn is_reduced(&self) -> bool {
        self.inner.is_reduced()
    }

    fn inverse(&self) -> Word {
        Word {
            inner: self.inner.inverse(),
        }
    }

    /// Concatenate-then-reduce: the group operation.
    fn multiply(&self, other: &Word) -> Word {
        Word {
            inner: self.inner.multiply(&other.inner).into_word(),
        }
    }

    /// True iff both words reduce to the same normal form.
    fn equal_in_group(&self, other: &Word) -> bool {
        self.inner.equal_in_group(&other.inner)
    }

    /// Largest generator index present; 0 for the empty word.
    fn max_index(&self) -> usize {
        self.inner.max_index()
    }

    /// Count of index-1 letters, both signs, as written.
    fn oscillation_number(&self) -> usize {
        earring::oscillation_number(&self.inner).0
    }

    /// Minimum oscillation count over the whole group-element class.
    fn min_oscillation_in_class(&self) -> usize {
        earring::min_oscillation_in_class(&self.inner).0
    }
}

/// A depth-K truncation of an inverse-limit element.
#[pyclass(frozen, eq, hash)]
#[derive(PartialEq, Eq, Hash)]
struct CoherentSequence {
    inner: earring::CoherentSequence,
}

#[pymethods]
impl CoherentSequence {
    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CoherentSequence(depth={})", self.inner.depth())
    }

    fn depth(&self) -> usize {
        self.inner.depth()
    }

    /// Entries for coordinates 1..=depth, as reduced words.
    fn entries(&self) -> Vec<Word> {
        self.inner
            .entries()
            .iter()
            .map(|entry| Word {
                inner: entry.as_word().clone(),
            })
            .collect()
    }

    /// True iff every entry is the empty word.
    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }
}

/// The witness word for index n: the block [-1, -n, 1, n] repeated n times.
#[pyfunction]
fn counterexample_word(n: usize) -> PyResult<Word> {
    earring::counterexample_word(n)
        .map(|inner| Word { inner })
        .map_err(value_error)
}

/// Inserts `steps` adjacent cancelling pairs at seed-determined positions,
/// keeping the group element fixed.
#[pyfunction]
fn inflate(word: &Word, steps: usize, seed: u64) -> Word {
    Word {
        inner: earring::inflate(&word.inner, steps, seed),
    }
}

/// Deletes letters of index above k without reducing.
#[pyfunction]
fn delete_above(word: &Word, k: usize) -> Word {
    Word {
        inner: earring::delete_above(&word.inner, k),
    }
}

/// Deletes letters of index above k and reduces.
#[pyfunction]
fn erase_above(word: &Word, k: usize) -> Word {
    Word {
        inner: earring::erase_above(&word.inner, k).into_word(),
    }
}

/// Image of the word in the inverse limit, truncated at `depth`.
#[pyfunction]
fn phi(word: &Word, depth: usize) -> PyResult<CoherentSequence> {
    earring::phi_truncated(&word.inner, depth)
        .map(|inner| CoherentSequence { inner })
        .map_err(value_error)
}

/// Log2 of the distance between two truncations of equal depth, or None when
/// they agree through their shared depth.
#[pyfunction]
fn distance(a: &CoherentSequence, b: &CoherentSequence) -> PyResult<Option<i64>> {
    earring::distance(&a.inner, &b.inner)
        .map(|d| d.log2())
        .map_err(value_error)
}

/// Witness dichotomy rows for n = 2..=n_max as dicts.
#[pyfunction]
fn counterexample_table(
    py: Python<'_>,
    n_max: usize,
    depth: usize,
) -> PyResult<Vec<Py<PyDict>>> {
    let rows = earring::rows(n_max, depth).map_err(value_error)?;
    rows.into_iter()
        .map(|row| {
            let dict = PyDict::new(py);
            dict.set_item("n", row.n)?;
            dict.set_item("word_length", row.word_length)?;
            dict.set_item("oscillation", row.oscillation)?;
            dict.set_item("diverge_depth", row.diverge_depth)?;
            dict.set_item("log2_distance", row.log2_distance)?;
            Ok(dict.unbind())
        })
        .collect()
}

#[pymodule]
fn earring_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Word>()?;
    m.add_class::<CoherentSequence>()?;
    m.add_function(wrap_pyfunction!(counterexample_word, m)?)?;
    m.add_function(wrap_pyfunction!(inflate, m)?)?;
    m.add_function(wrap_pyfunction!(delete_above, m)?)?;
    m.add_function(wrap_pyfunction!(erase_above, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample_table, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
