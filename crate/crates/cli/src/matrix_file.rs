//! JSON file format for operators on `C^dA ⊗ C^dB`.
//!
//! ```json
//! {
//!   "dims": [3, 3],
//!   "matrix": [[[re, im], ...], ...],
//!   "metadata": { "name": "...", "method": "kernel", "epsilon": 0.0, "N": 0.125 }
//! }
//! ```
//!
//! Numbers are written with 17 significant digits, so a write/read cycle is
//! bit-exact.

use std::io::{self, Write};
use std::path::Path;

use edgestate_core::{BipartiteOperator, Complex64, ComplexMatrix};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub normalization: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<f64>,
    /// `Tr(W ρ)` against the source state.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dims: [usize; 2],
    pub matrix: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl MatrixFile {
    pub fn from_operator(op: &BipartiteOperator, metadata: Option<Metadata>) -> Self {
        let m = op.matrix();
        let matrix = (0..m.rows())
            .map(|r| m.row(r).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        MatrixFile {
            dims: [op.dim_a(), op.dim_b()],
            matrix,
            metadata,
        }
    }

    /// Checks the shape and builds the operator. Hermiticity is left to the caller.
    pub fn to_operator(&self) -> Result<BipartiteOperator, CliError> {
        let [da, db] = self.dims;
        let n = da * db;
        if da == 0 || db == 0 {
            return Err(CliError::Parse("dims must be positive".into()));
        }
        if self.matrix.len() != n || self.matrix.iter().any(|row| row.len() != n) {
            return Err(CliError::Parse(format!(
                "matrix must be {n}x{n} for dims [{da}, {db}]"
            )));
        }
        let data = self
            .matrix
            .iter()
            .flatten()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let m = ComplexMatrix::from_vec(n, n, data).map_err(|e| CliError::Parse(e.to_string()))?;
        BipartiteOperator::new(da, db, m).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn name(&self) -> Option<&str> {
        self.metadata.as_ref()?.name.as_deref()
    }

    pub fn to_json(&self) -> String {
        let mut out = Vec::new();
        let mut ser = Serializer::with_formatter(&mut out, Digits17(PrettyFormatter::new()));
        self.serialize(&mut ser).expect("in-memory serialization");
        out.push(b'\n');
        String::from_utf8(out).expect("serde_json writes UTF-8")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("not a matrix file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }
}

/// Pretty JSON with every float written as `{:.16e}`.
struct Digits17(PrettyFormatter<'static>);

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}
