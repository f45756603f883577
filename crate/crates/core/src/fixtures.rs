//! Named states used throughout tests, audits and the CLI.

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{self, ComplexMatrix, ComplexVector};
use crate::state::{DensityMatrix, Dims, PureState};

fn basis(dim: usize, k: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(dim);
    v[k] = Complex64::new(1.0, 0.0);
    v
}

/// `(|00> + |11>)/√2`.
pub fn bell_phi_plus() -> PureState {
    ghz(2)
}

/// `(|0…0> + |1…1>)/√2` on `n` qubits.
pub fn ghz(n: usize) -> PureState {
    let dim = 1 << n;
    let mut v = basis(dim, 0) + basis(dim, dim - 1);
    v /= Complex64::new(2f64.sqrt(), 0.0);
    PureState::new(v, Dims::qubits(n)).expect("normalized")
}

/// Equal superposition of the single-excitation basis states on `n` qubits.
pub fn w(n: usize) -> PureState {
    let dim = 1 << n;
    let mut v = ComplexVector::zeros(dim);
    for k in 0..n {
        v[1 << k] = Complex64::new(1.0, 0.0);
    }
    PureState::normalized(v, Dims::qubits(n)).expect("nonzero")
}

/// Computational basis product state `|bits>`.
pub fn product_bits(bits: &[u8]) -> PureState {
    let n = bits.len();
    let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b as usize & 1));
    PureState::new(basis(1 << n, idx), Dims::qubits(n)).expect("normalized")
}

/// `|+>|0…0>` with `n_env` trailing zeros.
pub fn plus_zeros(n_env: usize) -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus =
        PureState::new(ComplexVector::from_vec(vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)]), Dims::qubits(1))
            .expect("normalized");
    if n_env == 0 {
        plus
    } else {
        plus.tensor(&product_bits(&vec![0; n_env]))
    }
}

/// Werner state `p |Φ+><Φ+| + (1 - p) I/4`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    let bell = bell_phi_plus().to_density();
    DensityMatrix::maximally_mixed(Dims::qubits(2)).mix(&bell, p)
}

/// `Σ p_i |ii><ii|` on two qudits of dimension `probs.len()`.
pub fn classical_classical(probs: &[f64]) -> Result<DensityMatrix> {
    let d = probs.len();
    let mut diag = vec![0.0; d * d];
    for (i, &p) in probs.iter().enumerate() {
        diag[i * d + i] = p;
    }
    DensityMatrix::new(linalg::diag(&diag), Dims::new(vec![d, d])?)
}

/// `Σ p_i ρ_i ⊗ |i><i|` with the classical register as the last subsystem.
pub fn classical_quantum(probs: &[f64], states: &[DensityMatrix]) -> Result<DensityMatrix> {
    assert_eq!(probs.len(), states.len());
    let d = probs.len();
    let mut acc: Option<ComplexMatrix> = None;
    for (i, (&p, rho)) in probs.iter().zip(states).enumerate() {
        let reg = linalg::outer(&basis(d, i), &basis(d, i));
        let term = linalg::kron(rho.matrix(), &reg) * Complex64::new(p, 0.0);
        acc = Some(match acc {
            Some(a) => a + term,
            None => term,
        });
    }
    let mut dims = states[0].dims().as_slice().to_vec();
    dims.push(d);
    DensityMatrix::new(acc.expect("non-empty ensemble"), Dims::new(dims)?)
}
