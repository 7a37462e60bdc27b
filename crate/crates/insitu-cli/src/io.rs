//! File formats: Matrix Market (coordinate and array, real and complex)
//! and a whitespace dense text format, plus the complex token syntax
//! `re+imi` used by dense text and the streaming front end.
//!
//! All numeric output goes through `{}` / `{:e}` formatting, which Rust
//! guarantees to be shortest round-trip, so written files parse back to
//! bit-identical values.

use insitu::{ComplexMatrix, ComplexScalar, ComplexVector};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line of the offending input, 0 when not line-specific.
    pub line: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.msg)
        } else {
            write!(f, "line {}: {}", self.line, self.msg)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

/// Parse one scalar token: plain real (`3`, `-2.5`, `1e-3`), pure
/// imaginary (`4i`, `-i`, `2.5e-1i`), or a sum `re+imi` / `re-imi`
/// written without spaces (`3+4i`, `1e-3-2e-4i`).
pub fn parse_complex_token(tok: &str) -> Result<ComplexScalar, String> {
    let bad = || format!("invalid number {tok:?}");
    if tok.is_empty() {
        return Err(bad());
    }
    if let Some(body) = tok.strip_suffix(['i', 'I']) {
        // find the split between real and imaginary: the last +/- that is
        // neither leading nor an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k];
            if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let re: f64 = re_str.parse().map_err(|_| bad())?;
        let im: f64 = match im_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            s => s.parse().map_err(|_| bad())?,
        };
        Ok(ComplexScalar::new(re, im))
    } else {
        let re: f64 = tok.parse().map_err(|_| bad())?;
        Ok(ComplexScalar::new(re, 0.0))
    }
}

/// Shortest round-trip rendering of one entry in `re+imi` token form.
pub fn format_complex_token(z: ComplexScalar) -> String {
    if z.im == 0.0 && z.im.is_sign_positive() {
        format!("{}", z.re)
    } else if z.im.is_sign_negative() || z.im.is_nan() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

struct MmHeader {
    coordinate: bool,
    complex: bool,
}

fn parse_mm_header(line: &str) -> Result<MmHeader, ParseError> {
    let toks: Vec<String> = line.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if toks.len() != 5 || toks[0] != "%%matrixmarket" || toks[1] != "matrix" {
        return Err(err(1, "expected header `%%MatrixMarket matrix <format> <field> <symmetry>`"));
    }
    let coordinate = match toks[2].as_str() {
        "coordinate" => true,
        "array" => false,
        other => return Err(err(1, format!("unsupported format {other:?}"))),
    };
    let complex = match toks[3].as_str() {
        "real" => false,
        "complex" => true,
        other => {
            return Err(err(1, format!("unsupported field {other:?} (only real and complex)")))
        }
    };
    if toks[4] != "general" {
        return Err(err(1, format!("unsupported symmetry {:?} (only general)", toks[4])));
    }
    Ok(MmHeader { coordinate, complex })
}

/// Parse a Matrix Market file into a dense matrix. Coordinate entries
/// are scattered into zeros; array data is column-major per the format.
pub fn parse_matrix_market(text: &str) -> Result<ComplexMatrix, ParseError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    let (_, first) = lines.next().ok_or_else(|| err(0, "empty input"))?;
    let header = parse_mm_header(first)?;

    let mut data_lines =
        lines.filter(|(_, l)| !l.trim_start().starts_with('%') && !l.trim().is_empty());

    let (szline_no, szline) = data_lines.next().ok_or_else(|| err(0, "missing size line"))?;
    let sizes: Vec<usize> = szline
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| err(szline_no, format!("invalid size token {t:?}"))))
        .collect::<Result<_, _>>()?;

    if header.coordinate {
        let [m, n, nnz] = sizes[..] else {
            return Err(err(szline_no, "coordinate size line must be `rows cols nonzeros`"));
        };
        if m == 0 || n == 0 {
            return Err(err(szline_no, "matrix dimensions must be positive"));
        }
        let mut entries = vec![ComplexScalar::new(0.0, 0.0); m * n];
        let mut seen = vec![false; m * n];
        let mut count = 0usize;
        for (no, line) in data_lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let want = if header.complex { 4 } else { 3 };
            if toks.len() != want {
                return Err(err(no, format!("expected {want} tokens, found {}", toks.len())));
            }
            let i: usize = toks[0].parse().map_err(|_| err(no, "invalid row index"))?;
            let j: usize = toks[1].parse().map_err(|_| err(no, "invalid column index"))?;
            if i < 1 || i > m || j < 1 || j > n {
                return Err(err(no, format!("index ({i}, {j}) outside {m} x {n}")));
            }
            let re: f64 = toks[2].parse().map_err(|_| err(no, "invalid real part"))?;
            let im: f64 = if header.complex {
                toks[3].parse().map_err(|_| err(no, "invalid imaginary part"))?
            } else {
                0.0
            };
            let slot = (i - 1) * n + (j - 1);
            if seen[slot] {
                return Err(err(no, format!("duplicate entry for ({i}, {j})")));
            }
            seen[slot] = true;
            entries[slot] = ComplexScalar::new(re, im);
            count += 1;
        }
        if count != nnz {
            return Err(err(0, format!("declared {nnz} entries, found {count}")));
        }
        ComplexMatrix::new(m, n, entries).map_err(|e| err(0, e.to_string()))
    } else {
        let [m, n] = sizes[..] else {
            return Err(err(szline_no, "array size line must be `rows cols`"));
        };
        if m == 0 || n == 0 {
            return Err(err(szline_no, "matrix dimensions must be positive"));
        }
        let mut values = Vec::with_capacity(m * n);
        for (no, line) in data_lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if header.complex {
                if toks.len() != 2 {
                    return Err(err(no, "complex array entries are `re im` pairs"));
                }
                let re: f64 = toks[0].parse().map_err(|_| err(no, "invalid real part"))?;
                let im: f64 = toks[1].parse().map_err(|_| err(no, "invalid imaginary part"))?;
                values.push(ComplexScalar::new(re, im));
            } else {
                for t in toks {
                    let re: f64 = t.parse().map_err(|_| err(no, format!("invalid value {t:?}")))?;
                    values.push(ComplexScalar::new(re, 0.0));
                }
            }
            if values.len() > m * n {
                return Err(err(no, format!("more than {} values", m * n)));
            }
        }
        if values.len() != m * n {
            return Err(err(0, format!("expected {} values, found {}", m * n, values.len())));
        }
        // array data runs down columns
        let mut entries = vec![ComplexScalar::new(0.0, 0.0); m * n];
        for (k, v) in values.into_iter().enumerate() {
            let (j, i) = (k / m, k % m);
            entries[i * n + j] = v;
        }
        ComplexMatrix::new(m, n, entries).map_err(|e| err(0, e.to_string()))
    }
}

/// Parse the dense text format: one matrix row per line, entries
/// whitespace-separated in `re+imi` token form; `%` or `#` lines are
/// comments.
pub fn parse_dense_text(text: &str) -> Result<ComplexMatrix, ParseError> {
    let mut rows: Vec<Vec<ComplexScalar>> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let no = no + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') || trimmed.starts_with('#') {
            continue;
        }
        let row: Vec<ComplexScalar> = trimmed
            .split_whitespace()
            .map(|t| parse_complex_token(t).map_err(|m| err(no, m)))
            .collect::<Result<_, _>>()?;
        if let Some(prev) = rows.last() {
            if row.len() != prev.len() {
                return Err(err(no, format!("row has {} entries, expected {}", row.len(), prev.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(err(0, "no matrix rows found"));
    }
    ComplexMatrix::from_rows(&rows).map_err(|e| err(0, e.to_string()))
}

/// Detect the format by the `%%MatrixMarket` banner and parse.
pub fn parse_matrix_auto(text: &str) -> Result<ComplexMatrix, ParseError> {
    if text.trim_start().to_ascii_lowercase().starts_with("%%matrixmarket") {
        parse_matrix_market(text)
    } else {
        parse_dense_text(text)
    }
}

/// Parse a vector from either format: a single row or a single column.
pub fn parse_vector_auto(text: &str) -> Result<ComplexVector, ParseError> {
    let m = parse_matrix_auto(text)?;
    let v = if m.cols() == 1 {
        m.col_vec(0)
    } else if m.rows() == 1 {
        m.row_slice(0).to_vec()
    } else {
        return Err(err(
            0,
            format!("expected a vector, found a {} x {} matrix", m.rows(), m.cols()),
        ));
    };
    ComplexVector::new(v).map_err(|e| err(0, e.to_string()))
}

/// Write Matrix Market array/complex/general, column-major, shortest
/// round-trip decimals.
pub fn write_matrix_market(a: &ComplexMatrix) -> String {
    let (m, n) = a.shape();
    let mut out = String::from("%%MatrixMarket matrix array complex general\n");
    out.push_str(&format!("{m} {n}\n"));
    for j in 0..n {
        for i in 0..m {
            let z = a.get(i, j);
            out.push_str(&format!("{} {}\n", z.re, z.im));
        }
    }
    out
}

/// Write a vector as an `n x 1` Matrix Market array.
pub fn write_vector_market(v: &ComplexVector) -> String {
    let mut out = String::from("%%MatrixMarket matrix array complex general\n");
    out.push_str(&format!("{} 1\n", v.dim()));
    for k in 0..v.dim() {
        let z = v.get(k);
        out.push_str(&format!("{} {}\n", z.re, z.im));
    }
    out
}
