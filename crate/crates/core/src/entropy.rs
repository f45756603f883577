//! Entropic functionals, all in bits.

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::state::DensityMatrix;

/// Eigenvalues below this count as outside the support.
pub const SUPPORT_CUTOFF: f64 = 1e-12;

/// `-x log2 x` with the `0 log 0 = 0` convention; input clamped to `[0, 1]`.
#[inline]
pub fn eta(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Shannon entropy of a spectrum or probability vector.
pub fn spectrum_entropy(values: &[f64]) -> f64 {
    values.iter().map(|&l| eta(l)).sum()
}

/// `h(p) = -p log2 p - (1-p) log2 (1-p)`.
pub fn binary_entropy(p: f64) -> f64 {
    eta(p) + eta(1.0 - p)
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    matrix_entropy(rho.matrix())
}

/// Entropy of a Hermitian unit-trace matrix without a `DensityMatrix` wrapper.
pub fn matrix_entropy(m: &ComplexMatrix) -> f64 {
    spectrum_entropy(&linalg::eigvalsh(m))
}

/// Entropy of an unnormalized 2x2 block `[[a, b], [b*, d]]` after normalizing by its trace.
#[inline]
pub(crate) fn entropy_2x2(a: f64, d: f64, b: num_complex::Complex64) -> f64 {
    let t = a + d;
    if t <= 0.0 {
        return 0.0;
    }
    let (hi, lo) = linalg::eigvals_2x2(a / t, d / t, b / t);
    eta(hi) + eta(lo)
}

fn check_same_dim(x: &DensityMatrix, y: &DensityMatrix) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: y.dim() });
    }
    Ok(())
}

/// Quantum relative entropy `Tr x log2 x - Tr x log2 y`.
///
/// Returns `+inf` when the support of `x` is not contained in the support of
/// `y`, decided with [`SUPPORT_CUTOFF`] on both spectra.
pub fn relative_entropy(x: &DensityMatrix, y: &DensityMatrix) -> Result<f64> {
    check_same_dim(x, y)?;
    Ok(relative_entropy_matrices(x.matrix(), y.matrix()))
}

pub(crate) fn relative_entropy_matrices(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    let ex = linalg::eig_hermitian_unchecked(x);
    let ey = linalg::eig_hermitian_unchecked(y);
    let neg_hx: f64 = -spectrum_entropy(&ex.values);
    let mut cross = 0.0;
    for (k, &mu) in ey.values.iter().enumerate() {
        let v = ey.vectors.column(k);
        let weight = (v.adjoint() * x * v)[(0, 0)].re;
        if mu < SUPPORT_CUTOFF {
            if weight > SUPPORT_CUTOFF {
                return f64::INFINITY;
            }
            continue;
        }
        cross += weight * mu.log2();
    }
    (neg_hx - cross).max(0.0)
}

/// `‖x - y‖₁ / 2`.
pub fn trace_distance_half(x: &DensityMatrix, y: &DensityMatrix) -> Result<f64> {
    check_same_dim(x, y)?;
    Ok(trace_distance_matrices(x.matrix(), y.matrix()))
}

pub(crate) fn trace_distance_matrices(x: &ComplexMatrix, y: &ComplexMatrix) -> f64 {
    let diff = x - y;
    let sum: f64 = linalg::eigvalsh(&diff).iter().map(|l| l.abs()).sum();
    (0.5 * sum).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::state::{random_density_matrix, Dims};

    fn qubit(p: &[f64]) -> DensityMatrix {
        DensityMatrix::diagonal(p, Dims::qubits(1)).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert!(von_neumann_entropy(&fixtures::bell_phi_plus().to_density()).abs() < 1e-12);
        assert!((von_neumann_entropy(&qubit(&[0.5, 0.5])) - 1.0).abs() < 1e-15);
        // h(1/4) from the closed form 2 - (3/4) log2 3
        let h14 = 2.0 - 0.75 * 3f64.log2();
        assert!((von_neumann_entropy(&qubit(&[0.75, 0.25])) - h14).abs() < 1e-14);
        assert!((h14 - 0.811_278_124_459_132_8).abs() < 1e-15);
    }

    #[test]
    fn entropy_is_additive() {
        let a = random_density_matrix(&Dims::qubits(1), 2, 1).unwrap();
        let b = random_density_matrix(&Dims::new(vec![3]).unwrap(), 3, 2).unwrap();
        let lhs = von_neumann_entropy(&a.tensor(&b));
        assert!((lhs - von_neumann_entropy(&a) - von_neumann_entropy(&b)).abs() < 1e-10);
    }

    #[test]
    fn relative_entropy_examples() {
        let r = random_density_matrix(&Dims::qubits(2), 4, 3).unwrap();
        assert!(relative_entropy(&r, &r).unwrap().abs() < 1e-12);
        assert!((relative_entropy(&qubit(&[1.0, 0.0]), &qubit(&[0.5, 0.5])).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(relative_entropy(&qubit(&[1.0, 0.0]), &qubit(&[0.0, 1.0])).unwrap(), f64::INFINITY);
        assert!(relative_entropy(&r, &qubit(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn trace_distance_examples() {
        let r = random_density_matrix(&Dims::qubits(2), 3, 4).unwrap();
        assert!(trace_distance_half(&r, &r).unwrap().abs() < 1e-15);
        assert!((trace_distance_half(&qubit(&[1.0, 0.0]), &qubit(&[0.0, 1.0])).unwrap() - 1.0).abs() < 1e-15);
        assert!((trace_distance_half(&qubit(&[0.75, 0.25]), &qubit(&[0.5, 0.5])).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn entropy_2x2_matches_general() {
        let r = random_density_matrix(&Dims::qubits(1), 2, 9).unwrap();
        let m = r.matrix() * num_complex::Complex64::new(0.3, 0.0);
        let direct = entropy_2x2(m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]);
        assert!((direct - von_neumann_entropy(&r)).abs() < 1e-13);
    }

    #[test]
    fn pinsker_holds_on_random_pairs() {
        for seed in 0..50 {
            let x = random_density_matrix(&Dims::new(vec![3]).unwrap(), 3, seed).unwrap();
            let y = random_density_matrix(&Dims::new(vec![3]).unwrap(), 3, 1000 + seed).unwrap();
            let d = trace_distance_half(&x, &y).unwrap();
            let s = relative_entropy(&x, &y).unwrap();
            assert!(s + 1e-9 >= d * d * 2.0 / std::f64::consts::LN_2, "seed {seed}");
        }
    }
}
