//! Plain-text vector and matrix files.
//!
//! A vector file starts with `q=<q> r=<r> [poly=<c_0,...,c_m>]` and holds one
//! vector per line as whitespace-separated element codes. Matrix files use
//! `q=<q> rows=<rows> cols=<cols> [poly=...]` and one matrix row per line.
//! `poly` is only written for a non-default modulus.

use std::path::Path;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::{FqMatrix, FqVector};

/// A list of vectors read from a vector file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorFile {
    pub field: Field,
    pub r: usize,
    pub vectors: Vec<FqVector>,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Header {
    q: usize,
    poly: Option<Vec<u8>>,
    keys: Vec<(String, usize, usize)>,
}

fn parse_header(line: &str) -> Result<Header> {
    let mut q = None;
    let mut poly = None;
    let mut keys = Vec::new();
    for (col, tok) in tokens(line) {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(1, col, format!("expected key=value, found `{tok}`")))?;
        match k {
            "q" => q = Some(parse_usize(v, 1, col)?),
            "poly" => {
                let coefs = v
                    .split(',')
                    .map(|c| {
                        c.parse::<u8>()
                            .map_err(|_| parse_err(1, col, format!("bad coefficient `{c}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                poly = Some(coefs);
            }
            _ => keys.push((k.to_string(), parse_usize(v, 1, col)?, col)),
        }
    }
    let q = q.ok_or_else(|| parse_err(1, 1, "header is missing q="))?;
    Ok(Header { q, poly, keys })
}

impl Header {
    fn take(&self, key: &str) -> Result<usize> {
        self.keys
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, _)| *v)
            .ok_or_else(|| parse_err(1, 1, format!("header is missing {key}=")))
    }

    fn field(&self) -> Result<Field> {
        Field::with_modulus(self.q, self.poly.as_deref()).map_err(|e| parse_err(1, 1, e.to_string()))
    }

    fn reject_unknown(&self, allowed: &[&str]) -> Result<()> {
        match self.keys.iter().find(|(k, _, _)| !allowed.contains(&k.as_str())) {
            Some((k, _, col)) => Err(parse_err(1, *col, format!("unknown header key `{k}`"))),
            None => Ok(()),
        }
    }
}

/// (1-based column, token) pairs.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - line.as_ptr() as usize + 1, tok))
}

fn parse_usize(s: &str, line: usize, col: usize) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| parse_err(line, col, format!("expected an integer, found `{s}`")))
}

fn parse_row(field: &Field, line: &str, lineno: usize, width: usize) -> Result<FqVector> {
    let mut codes = Vec::with_capacity(width);
    for (col, tok) in tokens(line) {
        let c = parse_usize(tok, lineno, col)?;
        if c >= field.q() {
            return Err(parse_err(
                lineno,
                col,
                format!("element code {c} is not below q={}", field.q()),
            ));
        }
        codes.push(c);
    }
    if codes.len() != width {
        return Err(parse_err(
            lineno,
            1,
            format!("expected {width} entries, found {}", codes.len()),
        ));
    }
    FqVector::from_codes(field, &codes)
}

pub fn parse_vectors(text: &str) -> Result<VectorFile> {
    let mut lines = text.lines();
    let header = parse_header(lines.next().ok_or_else(|| parse_err(1, 1, "empty file"))?)?;
    header.reject_unknown(&["r"])?;
    let field = header.field()?;
    let r = header.take("r")?;
    let vectors = lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_row(&field, l, i + 2, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(VectorFile { field, r, vectors })
}

pub fn format_vectors(field: &Field, r: usize, vectors: &[FqVector]) -> String {
    let mut out = header_line(field, &format!("r={r}"));
    for v in vectors {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<FqMatrix> {
    let mut lines = text.lines();
    let header = parse_header(lines.next().ok_or_else(|| parse_err(1, 1, "empty file"))?)?;
    header.reject_unknown(&["rows", "cols"])?;
    let field = header.field()?;
    let rows = header.take("rows")?;
    let cols = header.take("cols")?;
    let vs = lines
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_row(&field, l, i + 2, cols))
        .collect::<Result<Vec<_>>>()?;
    if vs.len() != rows {
        return Err(parse_err(
            vs.len() + 2,
            1,
            format!("expected {rows} rows, found {}", vs.len()),
        ));
    }
    FqMatrix::from_rows(&field, cols, &vs)
}

pub fn format_matrix(m: &FqMatrix) -> String {
    let mut out = header_line(m.field(), &format!("rows={} cols={}", m.rows(), m.cols()));
    for i in 0..m.rows() {
        out.push_str(&m.row(i).to_string());
        out.push('\n');
    }
    out
}

fn header_line(field: &Field, dims: &str) -> String {
    let mut out = format!("q={} {dims}", field.q());
    if !field.has_default_modulus() {
        let poly: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
        out.push_str(&format!(" poly={}", poly.join(",")));
    }
    out.push('\n');
    out
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn load_vectors(path: impl AsRef<Path>) -> Result<VectorFile> {
    parse_vectors(&read(path.as_ref())?)
}

pub fn save_vectors(path: impl AsRef<Path>, field: &Field, r: usize, vectors: &[FqVector]) -> Result<()> {
    write(path.as_ref(), &format_vectors(field, r, vectors))
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<FqMatrix> {
    parse_matrix(&read(path.as_ref())?)
}

pub fn save_matrix(path: impl AsRef<Path>, m: &FqMatrix) -> Result<()> {
    write(path.as_ref(), &format_matrix(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_roundtrip() {
        let text = "q=3 r=3\n0 0 0\n1 1 0\n0 1 0\n";
        let vf = parse_vectors(text).unwrap();
        assert_eq!(vf.vectors.len(), 3);
        assert_eq!(format_vectors(&vf.field, vf.r, &vf.vectors), text);
    }

    #[test]
    fn matrix_roundtrip_with_poly() {
        let text = "q=9 rows=2 cols=3 poly=2,1,1\n1 8 0\n3 4 5\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.field().modulus(), &[2, 1, 1]);
        assert_eq!(format_matrix(&m), text);
    }

    #[test]
    fn default_poly_is_not_written() {
        let m = parse_matrix("q=4 rows=1 cols=2 poly=1,1,1\n1 3\n").unwrap();
        assert_eq!(format_matrix(&m), "q=4 rows=1 cols=2\n1 3\n");
    }

    #[test]
    fn code_out_of_range() {
        let err = parse_vectors("q=3 r=2\n1 2\n0 3\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 3,
                message: "element code 3 is not below q=3".into()
            }
        );
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_vectors(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_vectors("r=2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_vectors("q=2 r=2\n1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_vectors("q=2 r=x\n"), Err(Error::Parse { line: 1, column: 5, .. })));
        assert!(matches!(parse_vectors("q=6 r=1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            parse_matrix("q=2 rows=2 cols=2\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_matrix("q=2 rows=1 cols=2 depth=3\n1 0\n"),
            Err(Error::Parse { line: 1, column: 19, .. })
        ));
    }
}
