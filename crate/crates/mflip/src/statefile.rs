//! Tensor-state JSON files.
//!
//! ```json
//! {"dims": [2, 2], "kind": "pure", "amplitudes": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]}
//! {"dims": [2], "kind": "mixed", "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}
//! ```
//!
//! Amplitudes are row-major with subsystem 0 most significant.

use std::fmt;

use mflip_core::{CMatrix, Complex64, DensityMatrix, Dims, StateVector};
use serde::{Deserialize, Serialize};

/// Pure inputs whose norm is off by less than this are renormalized;
/// decimal text rarely round-trips to a norm within 1e-12.
pub const RENORMALIZE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl LoadedState {
    pub fn dims(&self) -> &Dims {
        match self {
            LoadedState::Pure(psi) => psi.dims(),
            LoadedState::Mixed(rho) => rho.dims(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            LoadedState::Pure(psi) => psi.to_density(),
            LoadedState::Mixed(rho) => rho.clone(),
        }
    }
}

#[derive(Debug)]
pub enum LoadError {
    Json(serde_json::Error),
    Format(String),
    State(mflip_core::Error),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Json(e) => write!(f, "malformed state file: {e}"),
            LoadError::Format(m) => write!(f, "invalid state file: {m}"),
            LoadError::State(e) => write!(f, "invalid state: {e}"),
        }
    }
}

impl std::error::Error for LoadError {}

impl LoadError {
    pub fn is_numerical(&self) -> bool {
        matches!(self, LoadError::State(e) if e.is_numerical())
    }
}

fn complex(pair: &[f64; 2]) -> Result<Complex64, LoadError> {
    if pair.iter().all(|x| x.is_finite()) {
        Ok(Complex64::new(pair[0], pair[1]))
    } else {
        Err(LoadError::Format("non-finite number".into()))
    }
}

impl StateFile {
    pub fn from_json(text: &str) -> Result<Self, LoadError> {
        serde_json::from_str(text).map_err(LoadError::Json)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("state file serializes")
    }

    pub fn load(&self) -> Result<LoadedState, LoadError> {
        let dims = Dims::new(self.dims.clone()).map_err(LoadError::State)?;
        let total = dims.total();
        match (self.kind, &self.amplitudes, &self.matrix) {
            (Kind::Pure, Some(amps), None) => {
                if amps.len() != total {
                    return Err(LoadError::Format(format!("expected {total} amplitudes, found {}", amps.len())));
                }
                let amps = amps.iter().map(complex).collect::<Result<Vec<_>, _>>()?;
                let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                if (norm - 1.0).abs() > RENORMALIZE_TOL {
                    return Err(LoadError::State(mflip_core::Error::NotNormalized(norm)));
                }
                let psi = if (norm - 1.0).abs() <= mflip_core::tol::NORM {
                    StateVector::new(dims, amps)
                } else {
                    StateVector::normalized(dims, amps)
                };
                psi.map(LoadedState::Pure).map_err(LoadError::State)
            }
            (Kind::Mixed, None, Some(rows)) => {
                if rows.len() != total || rows.iter().any(|r| r.len() != total) {
                    return Err(LoadError::Format(format!("matrix must be {total} x {total}")));
                }
                let mut m = CMatrix::zeros(total, total);
                for (i, row) in rows.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        m[(i, j)] = complex(v)?;
                    }
                }
                DensityMatrix::new(dims, m).map(LoadedState::Mixed).map_err(LoadError::State)
            }
            (Kind::Pure, _, _) => Err(LoadError::Format("a pure state needs `amplitudes` and no `matrix`".into())),
            (Kind::Mixed, _, _) => Err(LoadError::Format("a mixed state needs `matrix` and no `amplitudes`".into())),
        }
    }

    pub fn from_pure(psi: &StateVector) -> Self {
        StateFile {
            dims: psi.dims().local().to_vec(),
            kind: Kind::Pure,
            amplitudes: Some(psi.amplitudes().iter().map(|a| [a.re, a.im]).collect()),
            matrix: None,
        }
    }

    pub fn from_mixed(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        StateFile {
            dims: rho.dims().local().to_vec(),
            kind: Kind::Mixed,
            amplitudes: None,
            matrix: Some(
                (0..m.nrows())
                    .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                    .collect(),
            ),
        }
    }
}
