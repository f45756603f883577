//! Quantum states with an explicit tensor-product structure.

use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector};

/// Hermiticity and trace tolerance applied by the public constructors.
pub const CONSTRUCTOR_TOL: f64 = 1e-12;
/// Tolerance for quantities derived from validated states.
pub const DERIVED_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted in a density matrix.
pub const EIGEN_FLOOR: f64 = -1e-10;

/// Ordered subsystem dimensions; subsystem 0 is the most significant tensor factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dims(Vec<usize>);

impl Dims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidDims("no subsystems".into()));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDims(format!("subsystem dimension {d} < 2")));
        }
        Ok(Dims(dims))
    }

    pub fn qubits(n: usize) -> Self {
        assert!(n > 0, "at least one qubit");
        Dims(vec![2; n])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn subsystem(&self, index: usize) -> Result<usize> {
        self.0.get(index).copied().ok_or(Error::IndexOutOfRange { index, count: self.0.len() })
    }

    /// Dimensions of a subset of subsystems, in ascending index order.
    pub fn restrict(&self, keep: &[usize]) -> Result<Dims> {
        let keep = self.normalize_selection(keep)?;
        Ok(Dims(keep.iter().map(|&k| self.0[k]).collect()))
    }

    /// Sorted, deduplicated, range-checked copy of a subsystem selection.
    pub fn normalize_selection(&self, sel: &[usize]) -> Result<Vec<usize>> {
        if sel.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut out = sel.to_vec();
        out.sort_unstable();
        out.dedup();
        if let Some(&bad) = out.iter().find(|&&k| k >= self.0.len()) {
            return Err(Error::IndexOutOfRange { index: bad, count: self.0.len() });
        }
        Ok(out)
    }

    pub fn complement(&self, sel: &[usize]) -> Vec<usize> {
        (0..self.0.len()).filter(|k| !sel.contains(k)).collect()
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for k in (0..self.0.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.0[k + 1];
        }
        strides
    }

    /// Flat-index offsets of every multi-index over `subset` (ascending, lexicographic).
    pub(crate) fn offsets(&self, subset: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut offsets = vec![0usize];
        for &k in subset {
            let mut next = Vec::with_capacity(offsets.len() * self.0[k]);
            for &base in &offsets {
                for i in 0..self.0[k] {
                    next.push(base + i * strides[k]);
                }
            }
            offsets = next;
        }
        offsets
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: Dims,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix, dims: Dims) -> Result<Self> {
        Self::validated(mat, dims, CONSTRUCTOR_TOL)
    }

    fn validated(mat: ComplexMatrix, dims: Dims, tol: f64) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::InvalidDensityMatrix(format!("matrix is {}x{}", mat.nrows(), mat.ncols())));
        }
        if mat.nrows() != dims.total() {
            return Err(Error::DimensionMismatch { expected: dims.total(), found: mat.nrows() });
        }
        let dev = linalg::hermitian_deviation(&mat);
        if dev > tol {
            return Err(Error::NotHermitian(dev));
        }
        let tr = linalg::trace(&mat);
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr} != 1")));
        }
        let lmin = *linalg::eigvalsh(&mat).last().unwrap();
        if lmin < EIGEN_FLOOR {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {lmin:e}")));
        }
        Ok(DensityMatrix { mat, dims })
    }

    /// Wraps a matrix produced from an already valid state by a trace- and
    /// positivity-preserving map. Round-off asymmetry is removed.
    pub(crate) fn derived(mat: ComplexMatrix, dims: Dims) -> Self {
        let n = mat.nrows();
        let sym = ComplexMatrix::from_fn(n, n, |i, j| (mat[(i, j)] + mat[(j, i)].conj()) * 0.5);
        debug_assert_eq!(n, dims.total());
        debug_assert!((linalg::trace(&sym).re - 1.0).abs() < DERIVED_TOL);
        DensityMatrix { mat: sym, dims }
    }

    pub fn from_pure(psi: &PureState) -> Self {
        Self::derived(linalg::outer(psi.vector(), psi.vector()), psi.dims().clone())
    }

    pub fn maximally_mixed(dims: Dims) -> Self {
        let n = dims.total();
        DensityMatrix { mat: linalg::identity(n) / Complex64::new(n as f64, 0.0), dims }
    }

    /// Diagonal state in the computational basis.
    pub fn diagonal(probs: &[f64], dims: Dims) -> Result<Self> {
        Self::new(linalg::diag(probs), dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigvalsh(&self.mat)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues().last().unwrap()
    }

    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Number of eigenvalues above `cutoff`.
    pub fn rank(&self, cutoff: f64) -> usize {
        self.eigenvalues().iter().filter(|&&l| l > cutoff).count()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.dims.0.clone();
        dims.extend_from_slice(&other.dims.0);
        DensityMatrix { mat: linalg::kron(&self.mat, &other.mat), dims: Dims(dims) }
    }

    /// Convex combination `(1 - w) self + w other`.
    pub fn mix(&self, other: &DensityMatrix, w: f64) -> Result<DensityMatrix> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::OutOfRange(format!("mixing weight {w}")));
        }
        let mat = &self.mat * Complex64::new(1.0 - w, 0.0) + &other.mat * Complex64::new(w, 0.0);
        Ok(DensityMatrix::derived(mat, self.dims.clone()))
    }

    /// Conjugation by a unitary acting on the whole space.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.nrows() });
        }
        Ok(DensityMatrix::derived(u * &self.mat * u.adjoint(), self.dims.clone()))
    }

    /// Reduced state on `keep`; the kept subsystems retain their relative order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = self.dims.normalize_selection(keep)?;
        let traced = self.dims.complement(&keep);
        let kept_off = self.dims.offsets(&keep);
        let traced_off = self.dims.offsets(&traced);
        let n = kept_off.len();
        let out = ComplexMatrix::from_fn(n, n, |r, c| {
            traced_off.iter().map(|&t| self.mat[(kept_off[r] + t, kept_off[c] + t)]).sum()
        });
        Ok(DensityMatrix::derived(out, self.dims.restrict(&keep)?))
    }

    /// Reorders subsystems: subsystem `order[k]` of `self` becomes subsystem `k`.
    pub fn permute(&self, order: &[usize]) -> Result<DensityMatrix> {
        let perm = validate_permutation(order, self.dims.len())?;
        let new_dims = Dims(perm.iter().map(|&k| self.dims.0[k]).collect());
        let map = permutation_map(&self.dims, &perm);
        let n = self.dim();
        let out = ComplexMatrix::from_fn(n, n, |r, c| self.mat[(map[r], map[c])]);
        Ok(DensityMatrix { mat: out, dims: new_dims })
    }
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    vec: ComplexVector,
    dims: Dims,
}

impl PureState {
    pub fn new(vec: ComplexVector, dims: Dims) -> Result<Self> {
        if vec.len() != dims.total() {
            return Err(Error::DimensionMismatch { expected: dims.total(), found: vec.len() });
        }
        let norm = vec.norm();
        if (norm - 1.0).abs() > CONSTRUCTOR_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(PureState { vec, dims })
    }

    /// Normalizes `vec` before wrapping it.
    pub fn normalized(vec: ComplexVector, dims: Dims) -> Result<Self> {
        let norm = vec.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Self::new(vec / Complex64::new(norm, 0.0), dims)
    }

    /// Recovers the state vector of a rank-one density matrix, up to a global phase.
    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        let purity = rho.purity();
        if (1.0 - purity).abs() > DERIVED_TOL {
            return Err(Error::NotPure(purity));
        }
        let eig = linalg::eig_hermitian_unchecked(rho.matrix());
        Self::normalized(eig.vectors.column(0).into_owned(), rho.dims().clone())
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.vec
    }

    pub fn dims(&self) -> &Dims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.0.clone();
        dims.extend_from_slice(&other.dims.0);
        PureState { vec: linalg::kron_vec(&self.vec, &other.vec), dims: Dims(dims) }
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }

    /// Reduced state on `keep` computed from the amplitudes, without forming
    /// the full projector.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = self.dims.normalize_selection(keep)?;
        let traced = self.dims.complement(&keep);
        let kept_off = self.dims.offsets(&keep);
        let traced_off = self.dims.offsets(&traced);
        let psi =
            ComplexMatrix::from_fn(kept_off.len(), traced_off.len(), |k, t| self.vec[kept_off[k] + traced_off[t]]);
        Ok(DensityMatrix::derived(&psi * psi.adjoint(), self.dims.restrict(&keep)?))
    }

    pub fn permute(&self, order: &[usize]) -> Result<PureState> {
        let perm = validate_permutation(order, self.dims.len())?;
        let new_dims = Dims(perm.iter().map(|&k| self.dims.0[k]).collect());
        let map = permutation_map(&self.dims, &perm);
        let vec = ComplexVector::from_fn(self.dim(), |r, _| self.vec[map[r]]);
        Ok(PureState { vec, dims: new_dims })
    }
}

fn validate_permutation(order: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::InvalidDims(format!("permutation of length {} for {n} subsystems", order.len())));
    }
    for &k in order {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, count: n });
        }
        if std::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidDims(format!("subsystem {k} repeated in permutation")));
        }
    }
    Ok(order.to_vec())
}

// new flat index -> old flat index
fn permutation_map(dims: &Dims, perm: &[usize]) -> Vec<usize> {
    dims.offsets(perm)
}

/// Seeded generator shared by all random constructors.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn gaussian_vector(n: usize, rng: &mut ChaCha8Rng) -> ComplexVector {
    ComplexVector::from_fn(n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    })
}

/// Haar-random pure state drawn with an explicit generator.
pub fn random_pure_state_with(dims: &Dims, rng: &mut ChaCha8Rng) -> PureState {
    loop {
        let v = gaussian_vector(dims.total(), rng);
        if let Ok(psi) = PureState::normalized(v, dims.clone()) {
            return psi;
        }
    }
}

/// Haar-random pure state; deterministic for a fixed seed.
pub fn random_pure_state(dims: &Dims, seed: u64) -> PureState {
    random_pure_state_with(dims, &mut seeded_rng(seed))
}

/// Random mixed state of the given rank, obtained by tracing out the ancilla of a
/// Haar-random purification.
pub fn random_density_matrix_with(dims: &Dims, rank: usize, rng: &mut ChaCha8Rng) -> Result<DensityMatrix> {
    let dim = dims.total();
    if rank == 0 || rank > dim {
        return Err(Error::RankOutOfRange { rank, dim });
    }
    if rank == 1 {
        return Ok(random_pure_state_with(dims, rng).to_density());
    }
    let psi = random_pure_state_with(&Dims::new(vec![dim, rank])?, rng);
    let m = ComplexMatrix::from_fn(dim, rank, |i, a| psi.vec[i * rank + a]);
    let g = &m * m.adjoint();
    Ok(DensityMatrix::derived(g, dims.clone()))
}

pub fn random_density_matrix(dims: &Dims, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_matrix_with(dims, rank, &mut seeded_rng(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn dims_validation() {
        assert!(Dims::new(vec![]).is_err());
        assert!(Dims::new(vec![2, 1]).is_err());
        let d = Dims::new(vec![2, 3, 2]).unwrap();
        assert_eq!(d.total(), 12);
        assert_eq!(d.restrict(&[2, 0]).unwrap().as_slice(), &[2, 2]);
        assert_eq!(d.complement(&[1]), vec![0, 2]);
    }

    #[test]
    fn product_state_partial_trace() {
        let a = random_density_matrix(&Dims::new(vec![2]).unwrap(), 2, 1).unwrap();
        let b = random_density_matrix(&Dims::new(vec![3]).unwrap(), 3, 2).unwrap();
        let ab = a.tensor(&b);
        let ra = ab.partial_trace(&[0]).unwrap();
        let rb = ab.partial_trace(&[1]).unwrap();
        assert!(linalg::max_abs_diff(ra.matrix(), a.matrix()) < 1e-14);
        assert!(linalg::max_abs_diff(rb.matrix(), b.matrix()) < 1e-14);
    }

    #[test]
    fn bell_marginals_are_maximally_mixed() {
        let bell = fixtures::bell_phi_plus().to_density();
        for k in 0..2 {
            let r = bell.partial_trace(&[k]).unwrap();
            assert!(linalg::max_abs_diff(r.matrix(), &(linalg::identity(2) * Complex64::new(0.5, 0.0))) < 1e-15);
        }
    }

    #[test]
    fn complementary_marginals_are_isospectral() {
        let psi = random_pure_state(&Dims::qubits(3), 99);
        let rho = psi.to_density();
        let r12 = rho.partial_trace(&[1, 2]).unwrap().eigenvalues();
        let r0 = rho.partial_trace(&[0]).unwrap().eigenvalues();
        assert!((r12[0] - r0[0]).abs() < 1e-10);
        assert!((r12[1] - r0[1]).abs() < 1e-10);
        assert!(r12[2].abs() < 1e-10 && r12[3].abs() < 1e-10);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = fixtures::bell_phi_plus().to_density();
        assert_eq!(rho.partial_trace(&[]), Err(Error::EmptySelection));
        assert!(matches!(rho.partial_trace(&[2]), Err(Error::IndexOutOfRange { index: 2, .. })));
    }

    #[test]
    fn pure_reduction_matches_density_route() {
        let psi = random_pure_state(&Dims::new(vec![2, 3, 2]).unwrap(), 5);
        let rho = psi.to_density();
        for keep in [vec![0], vec![1], vec![0, 2], vec![1, 2]] {
            let a = psi.reduced(&keep).unwrap();
            let b = rho.partial_trace(&keep).unwrap();
            assert!(linalg::max_abs_diff(a.matrix(), b.matrix()) < 1e-14);
        }
    }

    #[test]
    fn permute_swaps_factors() {
        let a = random_density_matrix(&Dims::new(vec![2]).unwrap(), 2, 3).unwrap();
        let b = random_density_matrix(&Dims::new(vec![3]).unwrap(), 2, 4).unwrap();
        let swapped = a.tensor(&b).permute(&[1, 0]).unwrap();
        assert!(linalg::max_abs_diff(swapped.matrix(), b.tensor(&a).matrix()) < 1e-15);
        assert_eq!(swapped.dims().as_slice(), &[3, 2]);
    }

    #[test]
    fn random_pure_state_is_normalized_and_deterministic() {
        let dims = Dims::qubits(3);
        let a = random_pure_state(&dims, 42);
        let b = random_pure_state(&dims, 42);
        assert!((a.vector().norm() - 1.0).abs() < 1e-12);
        assert_eq!(a, b);
        assert_ne!(a, random_pure_state(&dims, 43));
    }

    #[test]
    fn haar_average_marginal_is_maximally_mixed() {
        let dims = Dims::qubits(2);
        let mut rng = seeded_rng(2024);
        let mut acc = ComplexMatrix::zeros(2, 2);
        let samples = 10_000;
        for _ in 0..samples {
            acc += random_pure_state_with(&dims, &mut rng).reduced(&[0]).unwrap().matrix();
        }
        acc /= Complex64::new(samples as f64, 0.0);
        let target = linalg::identity(2) * Complex64::new(0.5, 0.0);
        assert!(linalg::max_abs_diff(&acc, &target) < 0.02);
    }

    #[test]
    fn random_density_matrix_ranks() {
        let dims = Dims::qubits(2);
        let pure = random_density_matrix(&dims, 1, 8).unwrap();
        assert!((pure.purity() - 1.0).abs() < 1e-10);
        let full = random_density_matrix(&dims, 4, 8).unwrap();
        assert!(full.min_eigenvalue() > 0.0);
        assert_eq!(full, random_density_matrix(&dims, 4, 8).unwrap());
        assert!(DensityMatrix::new(full.matrix().clone(), dims.clone()).is_ok());
        assert_eq!(random_density_matrix(&dims, 5, 8), Err(Error::RankOutOfRange { rank: 5, dim: 4 }));
        assert!(random_density_matrix(&dims, 0, 8).is_err());
    }

    #[test]
    fn constructor_rejects_bad_inputs() {
        let d = Dims::qubits(1);
        assert!(DensityMatrix::new(linalg::diag(&[0.6, 0.6]), d.clone()).is_err());
        assert!(DensityMatrix::new(linalg::diag(&[1.2, -0.2]), d.clone()).is_err());
        let nh = ComplexMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(0.5, 0.), Complex64::new(0.1, 0.), Complex64::new(0.0, 0.), Complex64::new(0.5, 0.)],
        );
        assert!(matches!(DensityMatrix::new(nh, d.clone()), Err(Error::NotHermitian(_))));
        assert!(PureState::new(ComplexVector::from_element(2, Complex64::new(1.0, 0.0)), d).is_err());
    }
}
