//! The witness dichotomy table: one row per witness index, divergence data
//! next to convergence data.
//!
//! Each row juxtaposes the class-minimal oscillation of the witness word,
//! which grows without bound, with its distance from the identity in the
//! truncated inverse limit, which shrinks to nothing. Every cell is
//! recomputed from the word, erasure, and oscillation operations; no cell is
//! filled in from a formula.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oscillation::min_oscillation_in_class;
use crate::projections::{distance, phi_truncated, CoherentSequence};
use crate::word::counterexample_word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("the witness family starts at n = 2, got max n {0}")]
    MaxTooSmall(usize),
    #[error("max n {n_max} exceeds depth {depth}; the distance at n would be censored by the truncation")]
    MaxExceedsDepth { n_max: usize, depth: usize },
}

/// Output encodings of the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown table format \"{0}\"; expected text, json, or csv")]
pub struct ParseTableFormatError(String);

impl FromStr for TableFormat {
    type Err = ParseTableFormatError;

    fn from_str(s: &str) -> Result<TableFormat, ParseTableFormatError> {
        match s {
            "text" => Ok(TableFormat::Text),
            "json" => Ok(TableFormat::Json),
            "csv" => Ok(TableFormat::Csv),
            other => Err(ParseTableFormatError(other.to_string())),
        }
    }
}

/// One witness index: length and class-minimal oscillation of the witness
/// word on the divergence side, first nontrivial coordinate of its truncated
/// image and log2 distance from the identity on the convergence side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRow {
    pub n: usize,
    pub word_length: usize,
    pub oscillation: usize,
    pub diverge_depth: usize,
    pub log2_distance: i64,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    rows: Vec<CounterexampleRow>,
}

/// Computes the row for witness index `n` at truncation `depth`, each field
/// through the public operations.
///
/// Panics unless 2 <= n <= depth; `rows` validates once for a whole table.
pub fn counterexample_row(n: usize, depth: usize) -> CounterexampleRow {
    assert!(n >= 2 && n <= depth, "witness index out of range");
    let word = counterexample_word(n).expect("n >= 2");
    let seq = phi_truncated(&word, depth).expect("depth >= 2");
    let diverge_depth = (1..=depth)
        .find(|&k| !seq.entry(k).is_empty())
        .expect("the witness is nontrivial at its own index");
    let log2_distance = distance(&seq, &CoherentSequence::trivial(depth))
        .expect("depths match")
        .log2()
        .expect("the witness image is not the identity");
    CounterexampleRow {
        n,
        word_length: word.len(),
        oscillation: min_oscillation_in_class(&word).0,
        diverge_depth,
        log2_distance,
    }
}

/// Rows for n = 2 ..= n_max in ascending order.
pub fn rows(n_max: usize, depth: usize) -> Result<Vec<CounterexampleRow>, TableError> {
    if n_max < 2 {
        return Err(TableError::MaxTooSmall(n_max));
    }
    if n_max > depth {
        return Err(TableError::MaxExceedsDepth { n_max, depth });
    }
    Ok((2..=n_max).map(|n| counterexample_row(n, depth)).collect())
}

/// Renders the full table in the requested format, without a trailing
/// newline. Identical arguments produce byte-identical output.
pub fn run_table(n_max: usize, depth: usize, format: TableFormat) -> Result<String, TableError> {
    let rows = rows(n_max, depth)?;
    Ok(match format {
        TableFormat::Text => render_text(&rows),
        TableFormat::Json => {
            serde_json::to_string(&TableRepr { rows }).expect("plain integers serialize")
        }
        TableFormat::Csv => render_csv(&rows),
    })
}

const COLUMNS: [&str; 5] = [
    "n",
    "word_length",
    "oscillation",
    "diverge_depth",
    "log2_distance",
];

fn cells(row: &CounterexampleRow) -> [String; 5] {
    [
        row.n.to_string(),
        row.word_length.to_string(),
        row.oscillation.to_string(),
        row.diverge_depth.to_string(),
        row.log2_distance.to_string(),
    ]
}

fn render_text(rows: &[CounterexampleRow]) -> String {
    let mut widths = COLUMNS.map(str::len);
    let all_cells: Vec<[String; 5]> = rows.iter().map(cells).collect();
    for row in &all_cells {
        for (width, cell) in widths.iter_mut().zip(row) {
            *width = (*width).max(cell.len());
        }
    }
    let mut out = String::new();
    for (i, name) in COLUMNS.iter().enumerate() {
        if i > 0 {
            out.push_str("  ");
        }
        write!(out, "{name:>width$}", width = widths[i]).expect("string write");
    }
    for row in &all_cells {
        out.push('\n');
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            write!(out, "{cell:>width$}", width = widths[i]).expect("string write");
        }
    }
    out
}

fn render_csv(rows: &[CounterexampleRow]) -> String {
    let mut out = COLUMNS.join(",");
    for row in rows {
        out.push('\n');
        out.push_str(&cells(row).join(","));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_rows_match_the_four_pipelines() {
        let row = counterexample_row(2, 8);
        assert_eq!(
            row,
            CounterexampleRow {
                n: 2,
                word_length: 8,
                oscillation: 4,
                diverge_depth: 2,
                log2_distance: -2
            }
        );
        let row = counterexample_row(5, 8);
        assert_eq!(
            row,
            CounterexampleRow {
                n: 5,
                word_length: 20,
                oscillation: 10,
                diverge_depth: 5,
                log2_distance: -5
            }
        );
    }

    #[test]
    fn rows_run_ascending_with_monotone_columns() {
        let rows = rows(16, 16).unwrap();
        assert_eq!(rows.len(), 15);
        for pair in rows.windows(2) {
            assert_eq!(pair[1].n, pair[0].n + 1);
            assert!(pair[1].oscillation > pair[0].oscillation);
            assert!(pair[1].log2_distance < pair[0].log2_distance);
        }
    }

    #[test]
    fn bad_ranges_are_usage_errors() {
        assert_eq!(rows(1, 8), Err(TableError::MaxTooSmall(1)));
        assert_eq!(
            rows(9, 8),
            Err(TableError::MaxExceedsDepth { n_max: 9, depth: 8 })
        );
    }

    #[test]
    fn text_format_aligns_columns() {
        let table = run_table(3, 4, TableFormat::Text).unwrap();
        let expected = "\
n  word_length  oscillation  diverge_depth  log2_distance
2            8            4              2             -2
3           12            6              3             -3";
        assert_eq!(table, expected);
    }

    #[test]
    fn csv_format_has_header_and_no_trailing_separator() {
        let table = run_table(3, 4, TableFormat::Csv).unwrap();
        assert_eq!(
            table,
            "n,word_length,oscillation,diverge_depth,log2_distance\n2,8,4,2,-2\n3,12,6,3,-3"
        );
    }

    #[test]
    fn json_format_round_trips() {
        let table = run_table(3, 4, TableFormat::Json).unwrap();
        assert_eq!(
            table,
            "{\"rows\":[{\"n\":2,\"word_length\":8,\"oscillation\":4,\"diverge_depth\":2,\"log2_distance\":-2},{\"n\":3,\"word_length\":12,\"oscillation\":6,\"diverge_depth\":3,\"log2_distance\":-3}]}"
        );
        let repr: TableRepr = serde_json::from_str(&table).unwrap();
        assert_eq!(repr.rows, rows(3, 4).unwrap());
    }

    #[test]
    fn formats_agree_on_values() {
        let rows = rows(10, 12).unwrap();
        let csv = run_table(10, 12, TableFormat::Csv).unwrap();
        for (line, row) in csv.lines().skip(1).zip(&rows) {
            assert_eq!(line, cells(row).join(","));
        }
        let json = run_table(10, 12, TableFormat::Json).unwrap();
        let repr: TableRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(repr.rows, rows);
    }

    #[test]
    fn format_names_parse() {
        assert_eq!("text".parse(), Ok(TableFormat::Text));
        assert_eq!("json".parse(), Ok(TableFormat::Json));
        assert_eq!("csv".parse(), Ok(TableFormat::Csv));
        assert!("tsv".parse::<TableFormat>().is_err());
    }
}
