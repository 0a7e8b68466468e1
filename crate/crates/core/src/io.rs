//! Text formats.
//!
//! Squares and rectangles: one row per line, whitespace-separated tokens,
//! optional leading `#` comment lines. Distinct tokens become the symbols
//! `0, 1, ...` in order of first appearance, and the [`SymbolTable`] keeps
//! the original names so output can restore them. Several squares in one
//! file are separated by blank lines.
//!
//! Matrices: a header line `m n`, then `m` lines of `n` tokens, each an
//! integer or a fraction `p/q`.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::latin::{LatinCube, LatinRectangle, LatinSquare, Path, Transversal};
use crate::matrix::{ExactMatrix, Rational, ZeroOneMatrix};

/// External names of the internal symbols `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolTable {
    tokens: Vec<String>,
}

impl SymbolTable {
    /// Tokens `"0"`, `"1"`, ... naming each symbol by its own index.
    pub fn numeric(n: usize) -> Self {
        Self {
            tokens: (0..n).map(|k| k.to_string()).collect(),
        }
    }

    pub fn from_tokens(tokens: Vec<String>) -> Self {
        Self { tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token(&self, symbol: usize) -> Option<&str> {
        self.tokens.get(symbol).map(String::as_str)
    }

    pub fn symbol(&self, token: &str) -> Option<usize> {
        self.tokens.iter().position(|t| t == token)
    }

    /// Extends the table to `order` names. New symbols get the integers
    /// following the largest numeric token, skipping names already in use.
    pub fn extended(&self, order: usize) -> Self {
        let mut tokens = self.tokens.clone();
        let mut next = tokens
            .iter()
            .filter_map(|t| t.parse::<i64>().ok())
            .max()
            .map_or(0, |m| m + 1);
        while tokens.len() < order {
            let candidate = next.to_string();
            next += 1;
            if !tokens.contains(&candidate) {
                tokens.push(candidate);
            }
        }
        Self { tokens }
    }
}

/// A rectangle together with the names its symbols had in the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedRectangle {
    pub rect: LatinRectangle,
    pub symbols: SymbolTable,
}

impl ParsedRectangle {
    pub fn into_square(self) -> Result<(LatinSquare, SymbolTable)> {
        Ok((self.rect.into_square()?, self.symbols))
    }
}

/// Non-comment lines grouped into blocks separated by blank lines.
fn blocks(text: &str) -> Vec<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        if trimmed.is_empty() {
            if !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
        } else {
            current.push((no + 1, trimmed));
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

fn parse_block(lines: &[(usize, &str)], order: Option<usize>) -> Result<ParsedRectangle> {
    let mut tokens: Vec<String> = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut width = None;
    for &(no, line) in lines {
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                *index.entry(tok).or_insert_with(|| {
                    tokens.push(tok.to_string());
                    tokens.len() - 1
                })
            })
            .collect();
        let expected = *width.get_or_insert(row.len());
        if row.len() != expected {
            return Err(Error::RaggedRow {
                line: no,
                expected,
                found: row.len(),
            });
        }
        rows.push(row);
    }
    let r = rows.len();
    let s = width.unwrap_or(0);
    let n = order.unwrap_or(r.max(s));
    if tokens.len() > n {
        return Err(Error::TooManySymbols {
            found: tokens.len(),
            order: n,
        });
    }
    let symbols = SymbolTable { tokens };
    let rename = |sym: String| -> String {
        sym.parse::<usize>()
            .ok()
            .and_then(|k| symbols.token(k))
            .map_or(sym.clone(), str::to_string)
    };
    let rect = LatinRectangle::new(n, &rows).map_err(|e| match e {
        Error::RowRepeat { row, symbol } => Error::RowRepeat {
            row,
            symbol: rename(symbol),
        },
        Error::ColumnRepeat { col, symbol } => Error::ColumnRepeat {
            col,
            symbol: rename(symbol),
        },
        other => other,
    })?;
    Ok(ParsedRectangle { rect, symbols })
}

/// Parses a single rectangle. Without an explicit order, `n = max(r, s)`.
pub fn parse_rectangle(text: &str, order: Option<usize>) -> Result<ParsedRectangle> {
    let blocks = blocks(text);
    match blocks.as_slice() {
        [] => Err(Error::Empty),
        [one] => parse_block(one, order),
        _ => Err(Error::Malformed(format!(
            "expected one rectangle, found {} blocks",
            blocks.len()
        ))),
    }
}

/// Parses a single Latin square.
pub fn parse_square(text: &str) -> Result<(LatinSquare, SymbolTable)> {
    parse_rectangle(text, None)?.into_square()
}

/// Parses blank-line separated squares, each with its own symbol table.
pub fn parse_squares(text: &str) -> Result<Vec<(LatinSquare, SymbolTable)>> {
    let blocks = blocks(text);
    if blocks.is_empty() {
        return Err(Error::Empty);
    }
    blocks
        .iter()
        .map(|b| parse_block(b, None)?.into_square())
        .collect()
}

fn render_rows<'a>(rows: impl Iterator<Item = &'a [u8]>, symbols: Option<&SymbolTable>) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .map(|&v| match symbols.and_then(|t| t.token(v as usize)) {
                Some(tok) => tok.to_string(),
                None => v.to_string(),
            })
            .collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Writes a rectangle, restoring token names when a table is given.
pub fn write_rectangle(rect: &LatinRectangle, symbols: Option<&SymbolTable>) -> String {
    let table = symbols.map(|t| t.extended(rect.order()));
    render_rows((0..rect.rows()).map(|i| rect.row(i)), table.as_ref())
}

pub fn write_square(sq: &LatinSquare, symbols: Option<&SymbolTable>) -> String {
    let table = symbols.map(|t| t.extended(sq.order()));
    render_rows((0..sq.order()).map(|i| sq.row(i)), table.as_ref())
}

/// Squares separated by blank lines.
pub fn write_squares(squares: &[LatinSquare]) -> String {
    squares
        .iter()
        .map(|s| write_square(s, None))
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_rational(tok: &str) -> Result<Rational> {
    let bad = || Error::Malformed(format!("`{tok}` is not an integer or fraction"));
    match tok.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Malformed(format!("`{tok}` has a zero denominator")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(tok).map_err(|_| bad())?,
        )),
    }
}

fn matrix_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(no, l)| (no + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_header(lines: &[(usize, &str)]) -> Result<(usize, usize)> {
    let (_, header) = lines.first().ok_or(Error::Empty)?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Malformed(format!("bad header `{header}`")))
        })
        .collect::<Result<_>>()?;
    match dims.as_slice() {
        [m, n] => Ok((*m, *n)),
        _ => Err(Error::Malformed(format!(
            "header must be `m n`, got `{header}`"
        ))),
    }
}

/// Parses the `m n` header format into an exact matrix.
pub fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let lines = matrix_lines(text);
    let (m, n) = parse_header(&lines)?;
    let body = &lines[1..];
    if body.len() != m {
        return Err(Error::Malformed(format!(
            "header announces {m} rows, found {}",
            body.len()
        )));
    }
    let rows = body
        .iter()
        .map(|&(no, line)| {
            let row: Vec<Rational> = line
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::RaggedRow {
                    line: no,
                    expected: n,
                    found: row.len(),
                });
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    if m == 0 {
        return Ok(ExactMatrix::zeros(0, n));
    }
    ExactMatrix::from_rows(rows)
}

/// Parses a zero-one matrix. Rows may also be written as compact digit
/// strings such as `0110`.
pub fn parse_zero_one(text: &str) -> Result<ZeroOneMatrix> {
    let lines = matrix_lines(text);
    let (m, n) = parse_header(&lines)?;
    let body = &lines[1..];
    if body.len() != m {
        return Err(Error::Malformed(format!(
            "header announces {m} rows, found {}",
            body.len()
        )));
    }
    let mut out = ZeroOneMatrix::zeros(m, n);
    for (i, &(no, line)) in body.iter().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let digits: Vec<char> = if toks.len() == 1 && n > 1 {
            toks[0].chars().collect()
        } else {
            toks.iter()
                .map(|t| {
                    if t.len() == 1 {
                        t.chars().next().unwrap()
                    } else {
                        '?'
                    }
                })
                .collect()
        };
        if digits.len() != n {
            return Err(Error::RaggedRow {
                line: no,
                expected: n,
                found: digits.len(),
            });
        }
        for (j, c) in digits.into_iter().enumerate() {
            match c {
                '0' => {}
                '1' => out.set(i, j, true),
                _ => {
                    return Err(Error::Malformed(format!(
                        "line {no}: entry {} is not 0 or 1",
                        j + 1
                    )))
                }
            }
        }
    }
    Ok(out)
}

pub fn write_matrix(m: &ExactMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_zero_one(m: &ZeroOneMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<&str> = (0..m.cols())
            .map(|j| if m.get(i, j) { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// One `n x n` zero-one layer per symbol `k`, layers separated by blank lines.
pub fn write_cube(cube: &LatinCube) -> String {
    let n = cube.order();
    (0..n)
        .map(|k| {
            let layer = ZeroOneMatrix::from_fn(n, n, |i, j| cube.get(i, j, k));
            write_zero_one(&layer)
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// The column chosen in each row, space separated.
pub fn write_path(path: &Path) -> String {
    let cols: Vec<String> = path.columns().iter().map(ToString::to_string).collect();
    format!("{}\n", cols.join(" "))
}

/// `row:col=symbol` for each cell of the transversal.
pub fn write_transversal(t: &Transversal, symbols: Option<&SymbolTable>) -> String {
    let cells: Vec<String> = t
        .cells()
        .zip(t.symbols())
        .map(|((i, j), &s)| {
            let name = symbols
                .and_then(|tab| tab.token(s as usize))
                .map_or(s.to_string(), str::to_string);
            format!("{i}:{j}={name}")
        })
        .collect();
    format!("{}\n", cells.join(" "))
}
