//! JSON file formats for fields, algebras, automorphisms and setups, and the
//! element literal grammar.

use std::path::Path;

use loopder_core::catalog;
use loopder_core::laurent::Style;
use loopder_core::{Algebra, Error, Field, FieldKind, Matrix, Result, Scalar, SetupSpec, UnitChoice};
use serde::{Deserialize, Serialize};

/// A field descriptor as stored in files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl FieldSpec {
    pub fn of(field: &Field) -> Self {
        match field.kind() {
            FieldKind::Rational => FieldSpec { kind: "rational".into(), m: None, p: None },
            FieldKind::Cyclotomic => FieldSpec { kind: "cyclotomic".into(), m: Some(field.m()), p: None },
            FieldKind::Prime => FieldSpec { kind: "prime".into(), m: Some(field.m()), p: Some(field.characteristic()) },
        }
    }

    pub fn build(&self) -> Result<Field> {
        match self.kind.as_str() {
            "rational" => Ok(Field::rational()),
            "cyclotomic" => Field::cyclotomic(self.m.unwrap_or(1)),
            "prime" => {
                let p = self.p.ok_or_else(|| parse_error("prime field needs p"))?;
                Field::prime(p, self.m.unwrap_or(1))
            }
            other => Err(parse_error(&format!("unknown field kind '{other}'"))),
        }
    }
}

/// Parses `rational`, `cyclotomic:M` or `prime:P:M`.
pub fn parse_field(text: &str) -> Result<Field> {
    let parts: Vec<&str> = text.trim().split(':').collect();
    let num = |s: &str| s.parse::<u64>().map_err(|_| parse_error(&format!("bad number '{s}' in field")));
    match parts.as_slice() {
        ["rational"] | ["Q"] => Ok(Field::rational()),
        ["cyclotomic", m] => Field::cyclotomic(num(m)?),
        ["prime", p, m] => Field::prime(num(p)?, num(m)?),
        _ => Err(parse_error(&format!("unknown field '{text}'; use rational, cyclotomic:M or prime:P:M"))),
    }
}

pub fn parse_error(msg: &str) -> Error {
    Error::Parse { pos: 0, msg: msg.to_string() }
}

/// `{ "field", "dim", "basis", "table" }` where `table[i][j]` lists the
/// nonzero `[k, literal]` components of `b_i b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    pub table: Vec<Vec<Vec<(usize, String)>>>,
}

impl AlgebraFile {
    pub fn of(a: &Algebra) -> Self {
        let n = a.dim();
        let table = (0..n)
            .map(|i| (0..n).map(|j| a.basis_product(i, j).iter().map(|(k, c)| (*k, c.to_string())).collect()).collect())
            .collect();
        AlgebraFile { field: FieldSpec::of(a.field()), dim: n, basis: a.names().to_vec(), table }
    }

    pub fn build(&self) -> Result<Algebra> {
        let f = self.field.build()?;
        let n = self.dim;
        if self.basis.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.basis.len() });
        }
        if self.table.len() != n || self.table.iter().any(|row| row.len() != n) {
            return Err(parse_error("table must be dim x dim"));
        }
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.iter().map(|(k, lit)| Ok((*k, f.parse(lit)?))).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::new(&f, self.basis.clone(), table)
    }
}

/// An algebra given by catalog name or inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Name(String),
    Inline(AlgebraFile),
}

impl AlgebraRef {
    pub fn build(&self, field: &Field) -> Result<Algebra> {
        match self {
            AlgebraRef::Name(name) => catalog::algebra_by_name(name, field),
            AlgebraRef::Inline(file) => file.build(),
        }
    }
}

pub type MatrixRows = Vec<Vec<String>>;

pub fn matrix_rows(m: &Matrix) -> MatrixRows {
    (0..m.rows()).map(|r| m.row(r).iter().map(|c| c.to_string()).collect()).collect()
}

pub fn build_matrix(field: &Field, rows: &MatrixRows) -> Result<Matrix> {
    let rows = rows
        .iter()
        .map(|row| row.iter().map(|lit| field.parse(lit)).collect::<Result<Vec<Scalar>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

/// `{ "algebra", "m", "matrix" }`, column convention.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub algebra: AlgebraRef,
    pub m: u64,
    pub matrix: MatrixRows,
}

/// A setup: algebras, automorphisms (identity when omitted), period and
/// either an explicit unit literal or a residue to search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub a: AlgebraRef,
    pub s: AlgebraRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma1: Option<MatrixRows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma2: Option<MatrixRows>,
    pub m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

impl SetupFile {
    pub fn of(spec: &SetupSpec) -> Self {
        let u = match &spec.unit {
            UnitChoice::Explicit(u) => Some(render_element(&spec.s, u)),
            UnitChoice::Search { .. } => None,
        };
        let q = match &spec.unit {
            UnitChoice::Search { q } => Some(*q),
            UnitChoice::Explicit(_) => None,
        };
        SetupFile {
            field: Some(FieldSpec::of(spec.a.field())),
            a: AlgebraRef::Inline(AlgebraFile::of(&spec.a)),
            s: AlgebraRef::Inline(AlgebraFile::of(&spec.s)),
            sigma1: Some(matrix_rows(&spec.sigma1)),
            sigma2: Some(matrix_rows(&spec.sigma2)),
            m: spec.m,
            u,
            q,
        }
    }

    /// `default_field` applies when the file names no field.
    pub fn build(&self, default_field: &Field) -> Result<SetupSpec> {
        let field = match &self.field {
            Some(spec) => spec.build()?,
            None => default_field.clone(),
        };
        let a = self.a.build(&field)?;
        let s = self.s.build(&field)?;
        let sigma = |rows: &Option<MatrixRows>, n: usize| match rows {
            Some(rows) => build_matrix(&field, rows),
            None => Ok(Matrix::identity(&field, n)),
        };
        let sigma1 = sigma(&self.sigma1, a.dim())?;
        let sigma2 = sigma(&self.sigma2, s.dim())?;
        let unit = match (&self.u, self.q) {
            (Some(u), _) => UnitChoice::Explicit(parse_element(u, &s)?),
            (None, q) => UnitChoice::Search { q: q.unwrap_or(1) },
        };
        Ok(SetupSpec { a, s, sigma1, sigma2, m: self.m, unit })
    }
}

/// Splits at `sep` outside square brackets.
fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&text[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Parses `c*name + c*name + ...` over the basis names of `a`; a bare
/// `name` or `-name` has coefficient `±1`, and `0` is the zero element.
pub fn parse_element(text: &str, a: &Algebra) -> Result<Vec<Scalar>> {
    let f = a.field();
    let mut v = a.zero();
    if text.trim() == "0" {
        return Ok(v);
    }
    for term in split_top_level(text, '+') {
        let term = term.trim();
        let (coeff, name) = match split_top_level(term, '*').as_slice() {
            [name] => match name.strip_prefix('-') {
                Some(rest) => (f.from_int(-1), rest.trim()),
                None => (f.one(), name.trim()),
            },
            [c, name] => (f.parse(c.trim())?, name.trim()),
            _ => return Err(parse_error(&format!("bad element term '{term}'"))),
        };
        let k = a.index_of(name).ok_or_else(|| parse_error(&format!("unknown basis element '{name}'")))?;
        v[k] = f.add(&v[k], &coeff);
    }
    Ok(v)
}

pub fn render_element(a: &Algebra, v: &[Scalar]) -> String {
    let f = a.field();
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(k, c)| if f.is_one(c) { a.names()[k].clone() } else { format!("{c}*{}", a.names()[k]) })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::NotInDomain(format!("cannot read {}: {e}", path.display())))
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse { pos: e.column(), msg: format!("line {}: {e}", e.line()) })
}

/// Resolves a catalog name or an algebra file path.
pub fn load_algebra(arg: &str, field: &Field) -> Result<Algebra> {
    let path = Path::new(arg);
    if path.is_file() {
        from_json::<AlgebraFile>(&read(path)?)?.build()
    } else {
        catalog::algebra_by_name(arg, field)
    }
}

/// Resolves a catalog setup name or a setup file path.
pub fn load_setup(arg: &str, field: &Field, style: Style) -> Result<SetupSpec> {
    let path = Path::new(arg);
    if path.is_file() {
        from_json::<SetupFile>(&read(path)?)?.build(field)
    } else {
        catalog::setup_by_name(arg, field, style)
    }
}

/// Reads an automorphism file.
pub fn load_automorphism(path: &str, field: &Field) -> Result<(Algebra, Matrix, u64)> {
    let file: AutomorphismFile = from_json(&read(Path::new(path))?)?;
    let field = match &file.field {
        Some(spec) => spec.build()?,
        None => field.clone(),
    };
    let a = file.algebra.build(&field)?;
    let m = build_matrix(a.field(), &file.matrix)?;
    Ok((a, m, file.m))
}
