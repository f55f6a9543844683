//! `GFREP v1` representation files.
//!
//! ```text
//! GFREP v1
//! field p k
//! modulus c0 ... ck      (optional)
//! dim d gens m
//! label name             (optional)
//! <m blocks of d rows>
//! ```

use std::fmt::Write as _;

use super::Representation;
use crate::error::{Error, Result};
use crate::gfla::io::{parse_field_line, parse_matrix_body, parse_num, write_field_line, write_matrix_body, Lines};

/// Parse without checking invertibility (for validation reports).
pub fn parse_representation_unchecked(text: &str) -> Result<Representation> {
    let mut lines = Lines::new(text);
    let (line, toks) = lines.expect("GFREP")?;
    if toks != ["v1"] {
        return Err(Error::Parse {
            line,
            msg: "expected 'GFREP v1'".into(),
        });
    }
    let field = parse_field_line(&mut lines)?;
    let (line, toks) = lines.expect("dim")?;
    if toks.len() != 3 || toks[1] != "gens" {
        return Err(Error::Parse {
            line,
            msg: "expected 'dim d gens m'".into(),
        });
    }
    let dim: usize = parse_num(line, toks[0])?;
    let count: usize = parse_num(line, toks[2])?;
    let mut label = String::from("M");
    if let Some((_, text)) = lines.peek() {
        if let Some(rest) = text.strip_prefix("label") {
            label = rest.trim().to_string();
            lines.next_line()?;
        }
    }
    let gens = (0..count)
        .map(|_| parse_matrix_body(&mut lines, &field, dim, dim))
        .collect::<Result<Vec<_>>>()?;
    lines.finish()?;
    Ok(Representation::new_unchecked(&field, dim, gens, &label))
}

/// Parse and check that every generator is invertible.
pub fn parse_representation(text: &str) -> Result<Representation> {
    let r = parse_representation_unchecked(text)?;
    Representation::new(r.field(), r.dim(), r.generators().to_vec(), r.label())
}

pub fn write_representation(rep: &Representation) -> String {
    let mut out = String::from("GFREP v1\n");
    write_field_line(&mut out, rep.field());
    let _ = writeln!(out, "dim {} gens {}", rep.dim(), rep.num_generators());
    let _ = writeln!(out, "label {}", rep.label());
    for g in rep.generators() {
        write_matrix_body(&mut out, g);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfla::Field;
    use crate::modrep::groups;

    #[test]
    fn round_trip() {
        let f = Field::new(5, 2).unwrap();
        let m = groups::regular_module(&f, &groups::symmetric_gens(3), "reg");
        let text = write_representation(&m);
        let back = parse_representation(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.label(), "reg");
    }

    #[test]
    fn singular_generator_named() {
        let text = "GFREP v1\nfield 3 1\ndim 2 gens 2\n1 0\n0 1\n1 1\n1 1\n";
        assert_eq!(
            parse_representation(text).unwrap_err(),
            Error::SingularGenerator { index: 1 }
        );
        assert!(parse_representation_unchecked(text).is_ok());
    }
}
