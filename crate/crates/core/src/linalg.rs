//! Dense complex linear algebra on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Tolerance used when checking Hermiticity of generic inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n, n)
}

pub fn diag(values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    ComplexMatrix::from_fn(n, n, |i, j| if i == j { c(values[i], 0.0) } else { c(0.0, 0.0) })
}

/// Outer product `|u><v|`.
pub fn outer(u: &ComplexVector, v: &ComplexVector) -> ComplexMatrix {
    u * v.adjoint()
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

pub fn kron_vec(a: &ComplexVector, b: &ComplexVector) -> ComplexVector {
    a.kronecker(b)
}

/// Largest elementwise deviation `|m - m†|`.
pub fn hermitian_deviation(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    if n != m.ncols() {
        return f64::INFINITY;
    }
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues, descending.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, ordered like `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = diag(&self.values);
        &self.vectors * d * self.vectors.adjoint()
    }

    /// Applies a real function to the spectrum: `V f(Λ) V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let vals: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        &self.vectors * diag(&vals) * self.vectors.adjoint()
    }
}

/// Eigen-decomposition of a Hermitian matrix with eigenvalues in descending order.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let dev = hermitian_deviation(m);
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    Ok(eig_hermitian_unchecked(m))
}

pub(crate) fn eig_hermitian_unchecked(m: &ComplexMatrix) -> HermitianEigen {
    let n = m.nrows();
    // symmetrize so round-off in the lower triangle cannot leak in
    let sym = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    HermitianEigen { values, vectors }
}

/// Eigenvalues only, descending.
pub fn eigvalsh(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.nrows();
    if n == 1 {
        return vec![m[(0, 0)].re];
    }
    if n == 2 {
        let (hi, lo) = eigvals_2x2(m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]);
        return vec![hi, lo];
    }
    eig_hermitian_unchecked(m).values
}

/// Closed-form spectrum of `[[a, b], [b*, d]]`.
#[inline]
pub fn eigvals_2x2(a: f64, d: f64, b: Complex64) -> (f64, f64) {
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let r = (half * half + b.norm_sqr()).sqrt();
    (mean + r, mean - r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(n: usize, m: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, m, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    #[test]
    fn kron_identities() {
        assert_eq!(kron(&identity(2), &identity(2)), identity(4));
        let k = kron(&diag(&[1.0, 0.0]), &diag(&[0.0, 1.0]));
        assert_eq!(k, diag(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_matches_index_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_matrix(2, 2, &mut rng);
        let b = random_matrix(2, 3, &mut rng);
        let k = kron(&a, &b);
        let (p, q) = b.shape();
        assert_eq!(k.shape(), (4, 6));
        for i in 0..2 {
            for j in 0..2 {
                for kk in 0..p {
                    for l in 0..q {
                        assert_eq!(k[(i * p + kk, j * q + l)], a[(i, j)] * b[(kk, l)]);
                    }
                }
            }
        }
    }

    #[test]
    fn eig_of_identity_and_pauli_x() {
        let e = eig_hermitian(&identity(2)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0]);

        let x = ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let e = eig_hermitian(&x).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
        // |+> for +1, |-> for -1, up to phase
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = e.vectors.column(0);
        let v1 = e.vectors.column(1);
        assert!(((v0[0] * v0[1].conj()).re - 0.5).abs() < 1e-12);
        assert!(((v1[0] * v1[1].conj()).re + 0.5).abs() < 1e-12);
        assert!((v0[0].norm() - s).abs() < 1e-12);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = random_matrix(4, 4, &mut rng);
            let h = &g + g.adjoint();
            let e = eig_hermitian(&h).unwrap();
            assert!(max_abs_diff(&e.reconstruct(), &h) <= 1e-10);
            let unit = e.vectors.adjoint() * &e.vectors;
            assert!(max_abs_diff(&unit, &identity(4)) <= 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn closed_form_2x2_matches_general() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_matrix(2, 2, &mut rng);
            let h = &g + g.adjoint();
            let (hi, lo) = eigvals_2x2(h[(0, 0)].re, h[(1, 1)].re, h[(0, 1)]);
            let e = eig_hermitian(&h).unwrap();
            assert!((hi - e.values[0]).abs() < 1e-12);
            assert!((lo - e.values[1]).abs() < 1e-12);
        }
    }
}
