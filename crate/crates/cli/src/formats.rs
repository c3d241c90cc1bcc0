//! JSON file formats for states and measurements.
//!
//! Complex numbers are two-element arrays `[re, im]`; matrices are row-major
//! lists of rows.
//!
//! ```json
//! {"dims": [2, 2], "matrix": [[[0.25, 0], ...], ...]}
//! {"dim": 2, "vectors": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]}
//! {"dim": 2, "elements": [[[[1, 0], [0, 0]], [[0, 0], [0, 0]]], ...]}
//! ```

use std::fs;
use std::path::Path;

use entrosep_core::measurements::{GeneralPovm, Measurement, RankOnePovm};
use entrosep_core::{ComplexMatrix, DensityMatrix, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub type JsonComplex = [f64; 2];
pub type JsonMatrix = Vec<Vec<JsonComplex>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: [usize; 2],
    pub matrix: JsonMatrix,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankOneFile {
    pub dim: usize,
    pub vectors: Vec<Vec<JsonComplex>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralFile {
    pub dim: usize,
    pub elements: Vec<JsonMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PovmFile {
    RankOne(RankOneFile),
    General(GeneralFile),
}

/// A list of POVMs, as written by `construct` for MUB, MUM and SIC sets.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmSetFile {
    pub povms: Vec<PovmFile>,
}

/// Local measurements for `check`: joint measurements `(a, b)` and an
/// optional outcome pairing used by the correlation measure.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupFile {
    pub pairs: Vec<PairEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub a: PovmFile,
    pub b: PovmFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Vec<usize>>,
}

/// Any of the documents above, recognized by its keys.
#[derive(Debug, Clone)]
pub enum Document {
    State(StateFile),
    Povm(PovmFile),
    PovmSet(PovmSetFile),
    Setup(SetupFile),
}

fn c64(z: &JsonComplex) -> C64 {
    C64::new(z[0], z[1])
}

fn json_complex(z: C64) -> JsonComplex {
    // Normalize -0.0 so that output is stable across platforms.
    [z.re + 0.0, z.im + 0.0]
}

pub fn matrix_from_json(rows: &JsonMatrix) -> Result<ComplexMatrix, CliError> {
    let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(c64).collect()).collect();
    ComplexMatrix::from_rows(&rows).map_err(|e| CliError::input(format!("bad matrix: {e}")))
}

pub fn matrix_to_json(m: &ComplexMatrix) -> JsonMatrix {
    (0..m.rows()).map(|r| m.row(r).iter().copied().map(json_complex).collect()).collect()
}

fn vector_to_json(v: &[C64]) -> Vec<JsonComplex> {
    v.iter().copied().map(json_complex).collect()
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let (da, db) = rho.subsystem_dims().unwrap_or((rho.dim(), 1));
        Self { dims: [da, db], matrix: matrix_to_json(rho.matrix()) }
    }

    pub fn to_density(&self) -> Result<DensityMatrix, CliError> {
        let m = matrix_from_json(&self.matrix)?;
        let dims = (self.dims[0], self.dims[1]);
        if dims.0 * dims.1 != m.rows() || !m.is_square() {
            return Err(CliError::input(format!(
                "dims {}x{} do not match a {}x{} matrix",
                dims.0,
                dims.1,
                m.rows(),
                m.cols()
            )));
        }
        DensityMatrix::new(m, Some(dims)).map_err(|e| CliError::input(format!("state rejected: {e}")))
    }
}

impl PovmFile {
    pub fn from_measurement(m: &Measurement) -> Self {
        match m {
            Measurement::RankOne(r) => Self::rank_one(r),
            Measurement::General(g) => Self::general(g),
        }
    }

    pub fn rank_one(r: &RankOnePovm) -> Self {
        Self::RankOne(RankOneFile { dim: r.dim(), vectors: r.vectors().iter().map(|v| vector_to_json(v)).collect() })
    }

    pub fn general(g: &GeneralPovm) -> Self {
        Self::General(GeneralFile { dim: g.dim(), elements: g.elements().iter().map(matrix_to_json).collect() })
    }

    pub fn to_measurement(&self) -> Result<Measurement, CliError> {
        let rejected = |e: entrosep_core::Error| CliError::input(format!("measurement rejected: {e}"));
        match self {
            Self::RankOne(f) => {
                let vectors = f.vectors.iter().map(|v| v.iter().map(c64).collect()).collect();
                Ok(RankOnePovm::new(f.dim, vectors).map_err(rejected)?.into())
            }
            Self::General(f) => {
                let elements = f.elements.iter().map(matrix_from_json).collect::<Result<Vec<_>, _>>()?;
                Ok(GeneralPovm::new(f.dim, elements).map_err(rejected)?.into())
            }
        }
    }
}

/// Parses `text`, dispatching on the top-level keys. Errors carry the line
/// and column reported by the JSON parser.
pub fn parse_document(text: &str, origin: &str) -> Result<Document, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("{origin}: {e}")))?;
    let keys = value.as_object().map(|o| o.keys().cloned().collect::<Vec<_>>()).unwrap_or_default();
    let has = |k: &str| keys.iter().any(|x| x == k);
    let strict = |e: serde_json::Error| CliError::input(format!("{origin}: {e}"));
    if has("matrix") {
        serde_json::from_str(text).map(Document::State).map_err(strict)
    } else if has("vectors") {
        serde_json::from_str(text).map(|f| Document::Povm(PovmFile::RankOne(f))).map_err(strict)
    } else if has("elements") {
        serde_json::from_str(text).map(|f| Document::Povm(PovmFile::General(f))).map_err(strict)
    } else if has("povms") {
        serde_json::from_str(text).map(Document::PovmSet).map_err(strict)
    } else if has("pairs") {
        serde_json::from_str(text).map(Document::Setup).map_err(strict)
    } else {
        Err(CliError::input(format!(
            "{origin}: unrecognized document; expected one of the keys matrix, vectors, elements, povms, pairs"
        )))
    }
}

pub fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    parse_document(&text, &path.display().to_string())
}

pub fn read_state(path: &Path) -> Result<DensityMatrix, CliError> {
    match read_document(path)? {
        Document::State(s) => s.to_density(),
        _ => Err(CliError::input(format!("{}: expected a state document with a \"matrix\" key", path.display()))),
    }
}

pub fn read_setup(path: &Path) -> Result<SetupFile, CliError> {
    match read_document(path)? {
        Document::Setup(s) => Ok(s),
        _ => Err(CliError::input(format!("{}: expected a setup document with a \"pairs\" key", path.display()))),
    }
}

pub fn read_rank_one(path: &Path) -> Result<RankOnePovm, CliError> {
    match read_document(path)? {
        Document::Povm(p) => match p.to_measurement()? {
            Measurement::RankOne(r) => Ok(r),
            Measurement::General(_) => Err(CliError::input(format!("{}: expected a rank-one POVM", path.display()))),
        },
        _ => Err(CliError::input(format!("{}: expected a POVM document", path.display()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use entrosep_core::states::werner_qubit;

    #[test]
    fn state_round_trip() {
        let rho = werner_qubit(0.4).unwrap();
        let text = serde_json::to_string(&StateFile::from_density(&rho)).unwrap();
        let Document::State(s) = parse_document(&text, "t").unwrap() else { panic!() };
        assert_eq!(s.to_density().unwrap(), rho);
    }

    #[test]
    fn povm_round_trip() {
        let z = RankOnePovm::computational_basis(3);
        let text = serde_json::to_string(&PovmFile::rank_one(&z)).unwrap();
        let Document::Povm(p) = parse_document(&text, "t").unwrap() else { panic!() };
        assert_eq!(p.to_measurement().unwrap().as_rank_one(), Some(&z));
        let g = GeneralPovm::from_rank_one(&z);
        let text = serde_json::to_string(&PovmFile::general(&g)).unwrap();
        let Document::Povm(p) = parse_document(&text, "t").unwrap() else { panic!() };
        assert_eq!(p.to_measurement().unwrap().outcomes(), 3);
    }

    #[test]
    fn errors_point_at_the_line() {
        let text = "{\n  \"dims\": [1, 1],\n  \"matrix\": [[[1, 0, 3]]]\n}";
        let err = parse_document(text, "f.json").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        let err = parse_document("{\"dims\": [1,1], \"matrix\": [[[NaN, 0]]]}", "f.json").unwrap_err();
        assert!(err.to_string().contains("f.json"));
        assert!(parse_document("{\"foo\": 1}", "f.json").is_err());
    }

    #[test]
    fn non_hermitian_state_is_rejected() {
        let s = StateFile { dims: [1, 2], matrix: vec![vec![[0.5, 0.0], [0.3, 0.0]], vec![[0.0, 0.0], [0.5, 0.0]]] };
        let err = s.to_density().unwrap_err().to_string();
        assert!(err.contains("Hermitian"), "{err}");
    }
}
