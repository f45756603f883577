//! JSON state files: `{"dims": [...], "matrix": [[[re, im], ...], ...]}` or
//! `{"dims": [...], "vector": [[re, im], ...]}`.

use std::path::Path;

use anyhow::{bail, Context};
use num_complex::Complex64;
use qcorr::{ComplexMatrix, ComplexVector, DensityMatrix, Dims, PureState};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<[f64; 2]>>,
}

/// A state read from disk, kept pure when the file stores a vector.
#[derive(Debug, Clone)]
pub enum LoadedState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl LoadedState {
    pub fn density(&self) -> DensityMatrix {
        match self {
            LoadedState::Pure(p) => p.to_density(),
            LoadedState::Mixed(r) => r.clone(),
        }
    }

    /// The pure state, recovered from a rank-one matrix if necessary.
    pub fn pure(&self) -> qcorr::Result<PureState> {
        match self {
            LoadedState::Pure(p) => Ok(p.clone()),
            LoadedState::Mixed(r) => PureState::from_density(r),
        }
    }
}

fn entry([re, im]: [f64; 2]) -> Complex64 {
    Complex64::new(re, im)
}

impl StateFile {
    pub fn from_pure(psi: &PureState) -> Self {
        StateFile {
            dims: psi.dims().as_slice().to_vec(),
            matrix: None,
            vector: Some(psi.vector().iter().map(|z| [z.re, z.im]).collect()),
        }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let rows = (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect();
        StateFile { dims: rho.dims().as_slice().to_vec(), matrix: Some(rows), vector: None }
    }

    pub fn into_state(self) -> anyhow::Result<LoadedState> {
        let dims = Dims::new(self.dims).context("invalid dims")?;
        match (self.matrix, self.vector) {
            (Some(rows), None) => {
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    bail!("matrix must be square");
                }
                let m = ComplexMatrix::from_fn(n, n, |r, c| entry(rows[r][c]));
                Ok(LoadedState::Mixed(DensityMatrix::new(m, dims).context("invalid density matrix")?))
            }
            (None, Some(v)) => {
                let v = ComplexVector::from_iterator(v.len(), v.into_iter().map(entry));
                Ok(LoadedState::Pure(PureState::new(v, dims).context("invalid state vector")?))
            }
            (Some(_), Some(_)) => bail!("state file has both `matrix` and `vector`"),
            (None, None) => bail!("state file needs a `matrix` or a `vector`"),
        }
    }
}

pub fn read_state(path: &Path) -> anyhow::Result<LoadedState> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: StateFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    file.into_state().with_context(|| format!("loading {}", path.display()))
}

pub fn write_state(path: &Path, file: &StateFile) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(file)?;
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
