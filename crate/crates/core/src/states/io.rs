//! JSON state files.
//!
//! ```json
//! {"kind":"pure","dims":[2,2],"amps":[[0.7071067811865476,0.0],[0.0,0.0],[0.0,0.0],[0.7071067811865476,0.0]]}
//! {"kind":"mixed","dims":[2],"mat":[[[0.5,0.0],[0.0,0.0]],[[0.0,0.0],[0.5,0.0]]]}
//! ```
//!
//! Amplitudes and matrix entries are `[re, im]` pairs, row-major, with
//! subsystem 0 as the most significant digit of the composite index.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DensityOperator, MultipartiteState, QuantumState};
use crate::error::{Error, Result};
use crate::tensor::{ComplexMatrix, DimList};

/// Deviations up to this are renormalized on load; larger ones are rejected.
const LOAD_TOL: f64 = 1e-6;
/// Inputs this close to valid are taken verbatim so round trips are bit exact.
const EXACT_TOL: f64 = 1e-14;

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Pure,
    Mixed,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    kind: Kind,
    dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    amps: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mat: Option<Vec<Vec<[f64; 2]>>>,
}

fn to_pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn from_pair(p: &[f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn state_to_json(state: &QuantumState) -> Result<String> {
    let file = match state {
        QuantumState::Pure(s) => StateFile {
            kind: Kind::Pure,
            dims: s.dims().as_slice().to_vec(),
            amps: Some(s.amps().iter().map(to_pair).collect()),
            mat: None,
        },
        QuantumState::Mixed(r) => {
            let m = r.matrix();
            StateFile {
                kind: Kind::Mixed,
                dims: r.dims().as_slice().to_vec(),
                amps: None,
                mat: Some(
                    (0..m.dim())
                        .map(|i| m.row(i).iter().map(to_pair).collect())
                        .collect(),
                ),
            }
        }
    };
    Ok(serde_json::to_string(&file)?)
}

pub fn state_from_json(text: &str) -> Result<QuantumState> {
    let file: StateFile = serde_json::from_str(text)?;
    let dims = DimList::new(file.dims)?;
    match file.kind {
        Kind::Pure => {
            let amps: Vec<Complex64> = file
                .amps
                .ok_or_else(|| Error::InvalidState("pure state without \"amps\"".into()))?
                .iter()
                .map(from_pair)
                .collect();
            if amps.len() != dims.total() {
                return Err(Error::DimMismatch(format!(
                    "{} amplitudes for dims {:?}",
                    amps.len(),
                    dims.as_slice()
                )));
            }
            let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if !norm.is_finite() || (norm - 1.0).abs() > LOAD_TOL {
                return Err(Error::InvalidState(format!(
                    "amplitude norm {norm} deviates from 1 by more than {LOAD_TOL:e}"
                )));
            }
            let state = if (norm - 1.0).abs() <= EXACT_TOL {
                MultipartiteState::new(dims, amps)?
            } else {
                MultipartiteState::from_unnormalized(dims, amps)?
            };
            Ok(QuantumState::Pure(state))
        }
        Kind::Mixed => {
            let rows = file
                .mat
                .ok_or_else(|| Error::InvalidState("mixed state without \"mat\"".into()))?;
            let n = dims.total();
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::DimMismatch(format!(
                    "matrix shape does not match dims {:?}",
                    dims.as_slice()
                )));
            }
            let mat =
                ComplexMatrix::from_row_major(rows.iter().flatten().map(from_pair).collect())?;
            let dev = mat.hermitian_deviation();
            if dev > LOAD_TOL {
                return Err(Error::InvalidState(format!(
                    "matrix not Hermitian (deviation {dev:e})"
                )));
            }
            let tr = mat.trace();
            if (tr.re - 1.0).abs() > LOAD_TOL || tr.im.abs() > LOAD_TOL {
                return Err(Error::InvalidState(format!("trace {tr} is not 1")));
            }
            let mat = if dev <= EXACT_TOL && (tr.re - 1.0).abs() <= EXACT_TOL {
                mat
            } else {
                mat.hermitian_part().scale(Complex64::new(1.0 / tr.re, 0.0))
            };
            Ok(QuantumState::Mixed(DensityOperator::new(dims, mat)?))
        }
    }
}

pub fn load_state(path: impl AsRef<Path>) -> Result<QuantumState> {
    state_from_json(&std::fs::read_to_string(path)?)
}

pub fn save_state(state: &QuantumState, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, state_to_json(state)?)?;
    Ok(())
}
