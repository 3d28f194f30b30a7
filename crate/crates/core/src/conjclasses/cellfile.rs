//! Plain-text storage for conjugacy cells.
//!
//! ```text
//! rmclass-cells v1 n=2 count=5
//! cell 0 size 1
//! 10
//! 01
//! 00
//! cell 1 size 3
//! ...
//! ```
//!
//! Each cell lists the rows of `A` followed by `b`, all as `0`/`1` strings.
//! Lines end in LF. Anything after the last cell other than blank lines is
//! rejected, and imported cells must have invertible matrices whose sizes sum
//! to `|AGL(n,2)|`.

use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::group::AffineElement;
use crate::MAX_N;

use super::{validate_cells, ConjCell};

pub const CELL_FILE_MAGIC: &str = "rmclass-cells v1";

pub fn write_cells(n: usize, cells: &[ConjCell]) -> String {
    let mut out = String::new();
    writeln!(out, "{CELL_FILE_MAGIC} n={n} count={}", cells.len()).unwrap();
    for (i, cell) in cells.iter().enumerate() {
        writeln!(out, "cell {i} size {}", cell.size()).unwrap();
        for r in 0..n {
            writeln!(out, "{}", cell.rep().matrix().row(r)).unwrap();
        }
        writeln!(out, "{}", cell.rep().shift()).unwrap();
    }
    out
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn header_field<'a>(token: Option<&'a str>, key: &str, line: usize) -> Result<&'a str> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected {key}=<value>")))
}

fn parse_bits(text: &str, n: usize, line: usize) -> Result<BitVector> {
    if text.len() != n || !text.bytes().all(|c| c == b'0' || c == b'1') {
        return Err(parse_err(line, format!("expected {n} binary digits, got {text:?}")));
    }
    text.parse().map_err(|_| parse_err(line, "bad bit string"))
}

/// Parses and validates a cell file.
pub fn read_cells(text: &str) -> Result<Vec<ConjCell>> {
    if text.contains('\r') {
        return Err(Error::Parse("cell files must use LF line endings".into()));
    }
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty cell file".into()))?;
    let rest = header
        .strip_prefix(CELL_FILE_MAGIC)
        .ok_or_else(|| parse_err(1, format!("missing {CELL_FILE_MAGIC:?} header")))?;
    let mut tokens = rest.split_whitespace();
    let n: usize = header_field(tokens.next(), "n", 1)?
        .parse()
        .map_err(|_| parse_err(1, "bad n"))?;
    let count: usize = header_field(tokens.next(), "count", 1)?
        .parse()
        .map_err(|_| parse_err(1, "bad count"))?;
    if tokens.next().is_some() {
        return Err(parse_err(1, "unexpected header fields"));
    }
    if n == 0 || n > MAX_N {
        return Err(parse_err(1, format!("n must be in 1..={MAX_N}")));
    }

    let mut cells = Vec::with_capacity(count);
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::Parse(format!("unexpected end of file, expected {what}")))
    };
    for index in 0..count {
        let (ln, line) = next("cell header")?;
        let parts: Vec<&str> = line.split(' ').collect();
        let [kw, idx, size_kw, size] = parts.as_slice() else {
            return Err(parse_err(ln, "expected `cell <index> size <size>`"));
        };
        if *kw != "cell" || *size_kw != "size" || idx.parse::<usize>().ok() != Some(index) {
            return Err(parse_err(ln, format!("expected `cell {index} size <size>`")));
        }
        let size: BigUint = size.parse().map_err(|_| parse_err(ln, "bad size"))?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, line) = next("matrix row")?;
            rows.push(parse_bits(line, n, ln)?);
        }
        let (ln, line) = next("shift vector")?;
        let b = parse_bits(line, n, ln)?;
        let a = BitMatrix::from_rows(&rows, n)?;
        let rep = AffineElement::new(a, b).map_err(|e| Error::Validation(format!("cell {index}: {e}")))?;
        cells.push(ConjCell::new(rep, size).map_err(|e| Error::Validation(format!("cell {index}: {e}")))?);
    }
    for (ln, line) in lines {
        if !line.trim().is_empty() {
            return Err(parse_err(ln, "trailing data after the last cell"));
        }
    }
    validate_cells(n, &cells)?;
    Ok(cells)
}
