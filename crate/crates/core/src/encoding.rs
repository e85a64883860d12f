//! Canonical text encoding of words.
//!
//! A word is rendered as whitespace-separated nonzero decimal integers, where
//! `k` denotes `y_k` and `-k` denotes `y_k^-1`; the empty word is the single
//! character `e`. This encoding is the contract for the command line and all
//! file formats. `parse_word` and `format_word` are exact inverses.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::word::{Letter, ReducedWord, Word};

/// Rejected word text. Token positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseWordError {
    #[error("empty input; the empty word is written \"e\"")]
    EmptyInput,
    #[error("token {position} is \"{token}\", not a nonzero decimal integer")]
    NotAnInteger { position: usize, token: String },
    #[error("token {position} is zero; generator indices start at 1")]
    ZeroIndex { position: usize },
}

/// Rejected text for a value that must be in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseReducedWordError {
    #[error(transparent)]
    Parse(#[from] ParseWordError),
    #[error("word \"{0}\" is not freely reduced")]
    NotReduced(String),
}

pub fn parse_word(text: &str) -> Result<Word, ParseWordError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseWordError::EmptyInput);
    }
    if trimmed == "e" {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    for (i, token) in trimmed.split_whitespace().enumerate() {
        let position = i + 1;
        let value: i64 = token.parse().map_err(|_| ParseWordError::NotAnInteger {
            position,
            token: token.to_string(),
        })?;
        if value == 0 {
            return Err(ParseWordError::ZeroIndex { position });
        }
        let index = value.unsigned_abs() as usize;
        letters.push(if value > 0 {
            Letter::positive(index)
        } else {
            Letter::negative(index)
        });
    }
    Ok(Word::from_letters(letters))
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        for (i, letter) in self.letters().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match letter.sign() {
                crate::word::Sign::Positive => write!(f, "{}", letter.index())?,
                crate::word::Sign::Negative => write!(f, "-{}", letter.index())?,
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Word, ParseWordError> {
        parse_word(s)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_word().fmt(f)
    }
}

impl FromStr for ReducedWord {
    type Err = ParseReducedWordError;

    fn from_str(s: &str) -> Result<ReducedWord, ParseReducedWordError> {
        let word = parse_word(s)?;
        if !word.is_reduced() {
            return Err(ParseReducedWordError::NotReduced(word.to_string()));
        }
        Ok(ReducedWord::from_word(word))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Word, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(D::Error::custom)
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<ReducedWord, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_first_period_of_the_witness() {
        let w = parse_word("-1 -2 1 2").unwrap();
        assert_eq!(w, Word::from_signed(&[-1, -2, 1, 2]));
    }

    #[test]
    fn empty_word_is_the_letter_e() {
        assert_eq!(parse_word("e").unwrap(), Word::empty());
        assert_eq!(parse_word("  e\n").unwrap(), Word::empty());
        assert_eq!(format_word(&Word::empty()), "e");
    }

    #[test]
    fn zero_token_is_rejected_with_its_position() {
        assert_eq!(
            parse_word("1 0 2"),
            Err(ParseWordError::ZeroIndex { position: 2 })
        );
    }

    #[test]
    fn non_integer_token_is_rejected_with_its_position() {
        assert_eq!(
            parse_word("1 y2"),
            Err(ParseWordError::NotAnInteger {
                position: 2,
                token: "y2".to_string()
            })
        );
        assert!(matches!(
            parse_word("99999999999999999999999"),
            Err(ParseWordError::NotAnInteger { position: 1, .. })
        ));
    }

    #[test]
    fn empty_input_is_rejected() {
        assert_eq!(parse_word(""), Err(ParseWordError::EmptyInput));
        assert_eq!(parse_word("   "), Err(ParseWordError::EmptyInput));
    }

    #[test]
    fn formats_with_single_spaces() {
        assert_eq!(format_word(&Word::from_signed(&[-1, 2])), "-1 2");
        assert_eq!(
            format_word(&crate::word::counterexample_word(2).unwrap()),
            "-1 -2 1 2 -1 -2 1 2"
        );
    }

    #[test]
    fn reduced_word_text_must_be_reduced() {
        assert!("1 2 -2".parse::<ReducedWord>().is_err());
        let w: ReducedWord = "1 2".parse().unwrap();
        assert_eq!(w.as_word(), &Word::from_signed(&[1, 2]));
    }

    #[test]
    fn words_serialize_as_encoding_strings() {
        let w = Word::from_signed(&[-1, 3]);
        assert_eq!(serde_json::to_string(&w).unwrap(), "\"-1 3\"");
        let back: Word = serde_json::from_str("\"-1 3\"").unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<ReducedWord>("\"1 -1\"").is_err());
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((1usize..=30, any::<bool>()), 0..40).prop_map(|pairs| {
            pairs
                .into_iter()
                .map(|(index, positive)| {
                    if positive {
                        Letter::positive(index)
                    } else {
                        Letter::negative(index)
                    }
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn format_then_parse_round_trips(w in arb_word()) {
            prop_assert_eq!(parse_word(&format_word(&w)).unwrap(), w);
        }
    }
}
