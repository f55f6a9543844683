//! Plain-text matrix format shared by every file type.
//!
//! ```text
//! GFMAT v1 p k rows cols
//! modulus c0 c1 ... ck        (optional; Conway polynomial otherwise)
//! a11 a12 ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::fmt::Write as _;

use super::field::{Elem, Field};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Line cursor over a text document that skips blanks and comments and keeps
/// 1-based line numbers for error messages.
pub struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    pub fn new(text: &'a str) -> Lines<'a> {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines { lines, pos: 0 }
    }

    pub fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    pub fn next_line(&mut self) -> Result<(usize, &'a str)> {
        let line = self.lines.get(self.pos).copied().ok_or_else(|| Error::Parse {
            line: self.lines.last().map_or(1, |l| l.0),
            msg: "unexpected end of input".into(),
        })?;
        self.pos += 1;
        Ok(line)
    }

    pub fn is_done(&self) -> bool {
        self.pos >= self.lines.len()
    }

    /// Error unless every line was consumed.
    pub fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some((line, _)) => Err(Error::Parse {
                line,
                msg: "trailing content".into(),
            }),
        }
    }

    /// Next line, which must start with `keyword`; returns the remaining tokens.
    pub fn expect(&mut self, keyword: &str) -> Result<(usize, Vec<&'a str>)> {
        let (line, text) = self.next_line()?;
        let mut tokens = text.split_whitespace();
        if tokens.next() != Some(keyword) {
            return Err(Error::Parse {
                line,
                msg: format!("expected '{}'", keyword),
            });
        }
        Ok((line, tokens.collect()))
    }
}

pub(crate) fn parse_num<T: std::str::FromStr>(line: usize, token: &str) -> Result<T> {
    token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("not a number: '{}'", token),
    })
}

/// Parse `p k` plus an optional `modulus` line following at the cursor.
pub(crate) fn parse_field(line: usize, p: &str, k: &str, lines: &mut Lines) -> Result<Field> {
    let p: u32 = parse_num(line, p)?;
    let k: u32 = parse_num(line, k)?;
    let with_line = |e: Error| match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            line,
            msg: other.to_string(),
        },
    };
    if let Some((mline, text)) = lines.peek() {
        if text.starts_with("modulus") {
            lines.next_line()?;
            let coeffs: Vec<u32> = text
                .split_whitespace()
                .skip(1)
                .map(|t| parse_num(mline, t))
                .collect::<Result<_>>()?;
            if coeffs.len() != k as usize + 1 {
                return Err(Error::Parse {
                    line: mline,
                    msg: format!("modulus needs {} coefficients", k + 1),
                });
            }
            return Field::with_modulus(p, coeffs).map_err(with_line);
        }
    }
    Field::new(p, k).map_err(with_line)
}

/// Field header used inside other formats: `field p k`, optional modulus line.
pub fn parse_field_line(lines: &mut Lines) -> Result<Field> {
    let (line, toks) = lines.expect("field")?;
    if toks.len() != 2 {
        return Err(Error::Parse {
            line,
            msg: "expected 'field p k'".into(),
        });
    }
    parse_field(line, toks[0], toks[1], lines)
}

pub fn write_field_line(out: &mut String, field: &Field) {
    let _ = writeln!(out, "field {} {}", field.p(), field.k());
    write_modulus(out, field);
}

fn write_modulus(out: &mut String, field: &Field) {
    if field.k() > 1 {
        let m: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "modulus {}", m.join(" "));
    }
}

/// Parse `rows` lines of `cols` elements.
pub fn parse_matrix_body(lines: &mut Lines, field: &Field, rows: usize, cols: usize) -> Result<Matrix> {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (line, text) = lines.next_line()?;
        let row: Vec<Elem> = text
            .split_whitespace()
            .map(|t| parse_num(line, t))
            .collect::<Result<_>>()?;
        if row.len() != cols {
            return Err(Error::Parse {
                line,
                msg: format!("expected {} entries, found {}", cols, row.len()),
            });
        }
        if let Some(bad) = row.iter().find(|&&x| x >= field.order()) {
            return Err(Error::Parse {
                line,
                msg: format!("{} is not an element of {}", bad, field),
            });
        }
        data.extend(row);
    }
    Matrix::from_vec(field, rows, cols, data)
}

pub fn write_matrix_body(out: &mut String, m: &Matrix) {
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

/// Parse a complete `GFMAT v1` document.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = Lines::new(text);
    let m = parse_matrix_from(&mut lines)?;
    lines.finish()?;
    Ok(m)
}

pub fn parse_matrix_from(lines: &mut Lines) -> Result<Matrix> {
    let (line, toks) = lines.expect("GFMAT")?;
    if toks.len() != 5 || toks[0] != "v1" {
        return Err(Error::Parse {
            line,
            msg: "expected 'GFMAT v1 p k rows cols'".into(),
        });
    }
    let field = parse_field(line, toks[1], toks[2], lines)?;
    let rows = parse_num(line, toks[3])?;
    let cols = parse_num(line, toks[4])?;
    parse_matrix_body(lines, &field, rows, cols)
}

pub fn write_matrix(m: &Matrix) -> String {
    let mut out = String::new();
    let f = m.field();
    let _ = writeln!(out, "GFMAT v1 {} {} {} {}", f.p(), f.k(), m.rows(), m.cols());
    write_modulus(&mut out, f);
    write_matrix_body(&mut out, m);
    out
}
