//! Plain-text table files: a header line `R C`, then `R` lines of `C`
//! whitespace-separated entries. Matrices and lattice-vector lists use
//! integers; weight files may use rationals written `p/q`.

use std::fmt::{self, Display};
use std::str::FromStr;

use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<T>>,
}

/// A configuration matrix.
pub type MatrixFile = Table<i64>;
/// Lattice vectors, one per line.
pub type VectorListFile = Table<i64>;
/// Rational vectors (weights), one per line.
pub type WeightFile = Table<BigRational>;

impl<T> Table<T> {
    /// Builds a table from rows of equal length `cols`.
    pub fn new(cols: usize, data: Vec<Vec<T>>) -> Self {
        debug_assert!(data.iter().all(|r| r.len() == cols));
        Table { rows: data.len(), cols, data }
    }
}

impl<T: FromStr> Table<T> {
    /// Parses the file format. Blank lines and lines starting with `#` are
    /// skipped; anything else must match the header exactly.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header line \"R C\""))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let [r, c] = dims[..] else {
            return Err(err(hl, format!("header must be \"R C\", found {header:?}")));
        };
        let rows: usize = r.parse().map_err(|_| err(hl, format!("bad row count {r:?}")))?;
        let cols: usize = c.parse().map_err(|_| err(hl, format!("bad column count {c:?}")))?;
        let mut data = Vec::with_capacity(rows);
        for (ln, line) in lines {
            if data.len() == rows {
                return Err(err(ln, format!("more than the {rows} rows announced in the header")));
            }
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(err(ln, format!("expected {cols} entries, found {}", entries.len())));
            }
            let row = entries
                .iter()
                .map(|e| e.parse::<T>().map_err(|_| err(ln, format!("bad entry {e:?}"))))
                .collect::<Result<Vec<T>, _>>()?;
            data.push(row);
        }
        if data.len() != rows {
            let last = text.lines().count().max(1);
            return Err(err(last, format!("expected {rows} rows, found {}", data.len())));
        }
        Ok(Table { rows, cols, data })
    }
}

impl<T: Display> Display for Table<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for row in &self.data {
            let mut first = true;
            for x in row {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
                first = false;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Parses an inline list such as `1,0,3/2` (commas or whitespace).
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>, ParseError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| err(1, format!("bad entry {t:?}"))))
        .collect()
}

/// `(a,b,c)`.
pub fn tuple<T: Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn monomial(u: &[i64]) -> String {
    let parts: Vec<String> = u
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// The binomial `x^{v+} - x^{v-}` of a lattice vector, variables numbered from 1.
pub fn binomial(v: &[i64]) -> String {
    let plus: Vec<i64> = v.iter().map(|&x| x.max(0)).collect();
    let minus: Vec<i64> = v.iter().map(|&x| (-x).max(0)).collect();
    format!("{} - {}", monomial(&plus), monomial(&minus))
}
