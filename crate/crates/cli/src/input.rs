//! Dictionary files and representation specs.

use std::fmt;
use std::path::Path;

use anyhow::Context;
use polarsparse::{AtomMatrix, Matrix, Tolerances, Vector};

/// Input problems that are not errors of the core library.
#[derive(Debug)]
pub enum InputError {
    Parse(String),
    Dimension(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Parse(msg) => write!(f, "parse error: {msg}"),
            InputError::Dimension(msg) => write!(f, "dimension mismatch: {msg}"),
        }
    }
}

impl std::error::Error for InputError {}

fn parse_number(token: &str, what: &str) -> Result<f64, InputError> {
    let v: f64 = token
        .parse()
        .map_err(|_| InputError::Parse(format!("{what}: `{token}` is not a number")))?;
    if !v.is_finite() {
        return Err(InputError::Parse(format!(
            "{what}: `{token}` is not finite"
        )));
    }
    Ok(v)
}

/// Parses a whitespace matrix whose columns are the atoms. Lines starting
/// with `#` and blank lines are skipped.
pub fn parse_dictionary(text: &str) -> Result<Matrix, InputError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| parse_number(t, &format!("line {}", lineno + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(InputError::Parse(format!(
                    "line {} has {} entries, expected {}",
                    lineno + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(InputError::Parse("dictionary has no rows".into()));
    }
    let (d, n) = (rows.len(), rows[0].len());
    Ok(Matrix::from_fn(d, n, |i, j| rows[i][j]))
}

pub fn load_dictionary(path: &Path, tol: &Tolerances) -> anyhow::Result<AtomMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let matrix = parse_dictionary(&text)?;
    AtomMatrix::new(matrix, tol).with_context(|| format!("invalid dictionary {}", path.display()))
}

/// Parses a dense list (`1 0 -2` or `1,0,-2`) or 1-based sparse entries
/// (`1:1 3:-2`) into a vector of length `len`.
pub fn parse_spec(spec: &str, len: usize) -> Result<Vector, InputError> {
    let tokens: Vec<&str> = spec
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    let sparse = tokens.iter().filter(|t| t.contains(':')).count();
    if sparse == 0 {
        let values = tokens
            .iter()
            .map(|t| parse_number(t, "vector"))
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != len {
            return Err(InputError::Dimension(format!(
                "got {} entries, expected {len}",
                values.len()
            )));
        }
        return Ok(Vector::from_vec(values));
    }
    if sparse != tokens.len() {
        return Err(InputError::Parse(
            "cannot mix dense and index:value entries".into(),
        ));
    }
    let mut out = Vector::zeros(len);
    let mut seen = vec![false; len];
    for token in tokens {
        let (idx, value) = token.split_once(':').unwrap();
        let idx: usize = idx
            .parse()
            .map_err(|_| InputError::Parse(format!("`{token}`: bad index")))?;
        if idx == 0 || idx > len {
            return Err(InputError::Dimension(format!(
                "index {idx} outside 1..={len}"
            )));
        }
        if seen[idx - 1] {
            return Err(InputError::Parse(format!("index {idx} given twice")));
        }
        seen[idx - 1] = true;
        out[idx - 1] = parse_number(value, token)?;
    }
    Ok(out)
}
