//! Input parsing: system files, gauge files, and the small value grammars
//! used by flags (`--start`, `--point`, `--poly`).
//!
//! A system file is a JSON document `{"n": N, "matrix": [[poly, ...], ...]}`
//! where each polynomial is a list of rational coefficient strings in
//! ascending degree — `"x+3"` is `["3", "1"]` — and a rational is `"p"` or
//! `"p/q"`.  Optional `name`/`notes` fields are accepted and ignored.

use std::fs;
use std::path::Path;

use serde_json::Value;
use skewdyn::multipoly::{Mono, MultiPoly};
use skewdyn::poly::Poly;
use skewdyn::polymat::PolyMatrix;
use skewdyn::rat::{parse_rat, Rat};
use skewdyn::system::{PointState, SkewSystem};

/// CLI-level failure, split by exit code: input problems exit 2 and
/// not-applicable commands exit 3.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    NotApplicable(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> CliError {
        CliError::Input(msg.into())
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) => m,
            CliError::NotApplicable(m) => m,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::NotApplicable(_) => 3,
        }
    }
}

impl From<skewdyn::SkewError> for CliError {
    fn from(e: skewdyn::SkewError) -> CliError {
        CliError::Input(e.to_string())
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: invalid JSON: {e}", path.display())))
}

fn parse_poly(v: &Value, at: &str) -> Result<Poly, CliError> {
    let list = v
        .as_array()
        .ok_or_else(|| CliError::input(format!("{at}: polynomial must be a list of strings")))?;
    let mut coeffs = Vec::with_capacity(list.len());
    for (i, c) in list.iter().enumerate() {
        let s = c.as_str().ok_or_else(|| {
            CliError::input(format!("{at}: coefficient {i} must be a string"))
        })?;
        let r = parse_rat(s)
            .map_err(|e| CliError::input(format!("{at}: coefficient {i}: {e}")))?;
        coeffs.push(r);
    }
    Ok(Poly::new(coeffs))
}

/// Parses a matrix file body `{"n": N, "matrix": [[poly, ...], ...]}` into
/// a polynomial matrix, checking the declared dimension.
pub fn parse_matrix_document(v: &Value, what: &str) -> Result<PolyMatrix, CliError> {
    let obj = v
        .as_object()
        .ok_or_else(|| CliError::input(format!("{what}: document must be an object")))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::input(format!("{what}: missing integer field \"n\"")))?
        as usize;
    if n == 0 {
        return Err(CliError::input(format!("{what}: dimension must be positive")));
    }
    let grid = obj
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::input(format!("{what}: missing array field \"matrix\"")))?;
    if grid.len() != n {
        return Err(CliError::input(format!(
            "{what}: expected {n} rows, found {}",
            grid.len()
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, row) in grid.iter().enumerate() {
        let cells = row.as_array().ok_or_else(|| {
            CliError::input(format!("{what}: row {i} must be a list of polynomials"))
        })?;
        if cells.len() != n {
            return Err(CliError::input(format!(
                "{what}: row {i} has {} entries, expected {n}",
                cells.len()
            )));
        }
        let mut out = Vec::with_capacity(n);
        for (j, cell) in cells.iter().enumerate() {
            out.push(parse_poly(cell, &format!("{what}: entry ({i},{j})"))?);
        }
        rows.push(out);
    }
    Ok(PolyMatrix::from_rows(rows))
}

/// Reads and validates a system file.
pub fn load_system(path: &Path) -> Result<SkewSystem, CliError> {
    let doc = read_json(path)?;
    let matrix = parse_matrix_document(&doc, &path.display().to_string())?;
    SkewSystem::new(matrix).map_err(|e| {
        CliError::input(format!("{}: not a valid system: {e}", path.display()))
    })
}

/// Reads a gauge transform file (same schema as a system file) and checks
/// unimodularity.
pub fn load_transform(path: &Path) -> Result<skewdyn::system::GaugeTransform, CliError> {
    let doc = read_json(path)?;
    let matrix = parse_matrix_document(&doc, &path.display().to_string())?;
    skewdyn::system::GaugeTransform::new(matrix).map_err(|e| {
        CliError::input(format!("{}: not a valid gauge transform: {e}", path.display()))
    })
}

/// Parses `--start "x;y1,...,yn"` into a phase-space point.
pub fn parse_start(s: &str, n: usize) -> Result<PointState, CliError> {
    let (x_part, y_part) = s.split_once(';').ok_or_else(|| {
        CliError::input(format!("--start {s:?}: expected \"x;y1,...,y{n}\""))
    })?;
    let x = parse_rat(x_part.trim())
        .map_err(|e| CliError::input(format!("--start: base coordinate: {e}")))?;
    let y = parse_rat_list(y_part, n, "--start")?;
    Ok(PointState::new(x, y))
}

/// Parses `--point "y1,...,yn"` into a fibre point.
pub fn parse_point(s: &str, n: usize) -> Result<Vec<Rat>, CliError> {
    parse_rat_list(s, n, "--point")
}

fn parse_rat_list(s: &str, n: usize, flag: &str) -> Result<Vec<Rat>, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(CliError::input(format!(
            "{flag}: expected {n} coordinates, found {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            parse_rat(p.trim()).map_err(|e| CliError::input(format!("{flag}: {e}")))
        })
        .collect()
}

/// Parses `--poly` as a JSON list of terms `[[coeff, x_exp, [y_exps]], ...]`,
/// e.g. `[["1", 0, [1, 0]], ["-1", 0, [0, 2]]]` for `y1 - y2^2`.
pub fn parse_multipoly(s: &str, n: usize) -> Result<MultiPoly, CliError> {
    let doc: Value = serde_json::from_str(s)
        .map_err(|e| CliError::input(format!("--poly: invalid JSON: {e}")))?;
    let list = doc
        .as_array()
        .ok_or_else(|| CliError::input("--poly: expected a list of terms"))?;
    let mut terms = Vec::with_capacity(list.len());
    for (i, term) in list.iter().enumerate() {
        let tuple = term
            .as_array()
            .filter(|t| t.len() == 3)
            .ok_or_else(|| {
                CliError::input(format!(
                    "--poly: term {i} must be [coeff, x_exp, [y_exps]]"
                ))
            })?;
        let coeff = tuple[0]
            .as_str()
            .ok_or_else(|| CliError::input(format!("--poly: term {i}: coefficient must be a string")))
            .and_then(|c| {
                parse_rat(c).map_err(|e| CliError::input(format!("--poly: term {i}: {e}")))
            })?;
        let x_exp = tuple[1].as_u64().ok_or_else(|| {
            CliError::input(format!("--poly: term {i}: x exponent must be a nonnegative integer"))
        })? as u32;
        let y_list = tuple[2].as_array().ok_or_else(|| {
            CliError::input(format!("--poly: term {i}: y exponents must be a list"))
        })?;
        if y_list.len() != n {
            return Err(CliError::input(format!(
                "--poly: term {i}: expected {n} y exponents, found {}",
                y_list.len()
            )));
        }
        let mut y = Vec::with_capacity(n);
        for e in y_list {
            let v = e.as_u64().ok_or_else(|| {
                CliError::input(format!("--poly: term {i}: y exponents must be nonnegative integers"))
            })?;
            y.push(v as u32);
        }
        terms.push((Mono::new(x_exp, y), coeff));
    }
    Ok(MultiPoly::from_terms(n, terms))
}

/// Constant diagonal entries of a matrix, or `None` when any off-diagonal
/// entry is nonzero or a diagonal entry is nonconstant.
pub fn constant_diagonal(m: &PolyMatrix) -> Option<Vec<Rat>> {
    let n = m.dim();
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && !m.entry(i, j).is_zero() {
                return None;
            }
        }
        diag.push(m.entry(i, i).constant_value()?);
    }
    Some(diag)
}
