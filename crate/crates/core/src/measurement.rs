//! Local projective measurements and the classical correlations they extract.
//!
//! Classical correlations are the largest post-measurement mutual information
//! over rank-1 projective measurements on a single qubit. The search runs a
//! coarse grid over Bloch angles and refines the best grid points with a
//! simplex search.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::entropy::{self, eta};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector};
use crate::optim::{self, SimplexOptions};
use crate::state::{DensityMatrix, Dims, DERIVED_TOL};

/// Direction of a rank-1 qubit projector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    /// Polar angle in `[0, π]`.
    pub theta: f64,
    /// Azimuth in `[0, 2π)`.
    pub phi: f64,
}

impl BlochAngles {
    /// Maps arbitrary real angles onto the canonical ranges via the Bloch vector.
    pub fn new(theta: f64, phi: f64) -> Self {
        let (x, y, z) = (theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos());
        let theta = z.clamp(-1.0, 1.0).acos();
        let mut phi = if x.abs() < 1e-300 && y.abs() < 1e-300 { 0.0 } else { y.atan2(x) };
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        BlochAngles { theta, phi }
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        [self.theta.sin() * self.phi.cos(), self.theta.sin() * self.phi.sin(), self.theta.cos()]
    }

    /// `|n>` and `|-n>`.
    pub fn basis(&self) -> [ComplexVector; 2] {
        qubit_basis(self.theta, self.phi)
    }
}

#[inline]
fn qubit_basis(theta: f64, phi: f64) -> [ComplexVector; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = Complex64::from_polar(1.0, phi);
    [
        ComplexVector::from_vec(vec![Complex64::new(c, 0.0), e * s]),
        ComplexVector::from_vec(vec![Complex64::new(s, 0.0), -e * c]),
    ]
}

/// Complete set of orthogonal projectors acting on one subsystem.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMeasurement {
    projectors: Vec<ComplexMatrix>,
    subsystem: usize,
}

const PROJECTOR_TOL: f64 = 1e-10;

impl ProjectiveMeasurement {
    pub fn new(projectors: Vec<ComplexMatrix>, subsystem: usize) -> Result<Self> {
        let d = projectors.first().ok_or(Error::EmptySelection)?.nrows();
        let mut sum = ComplexMatrix::zeros(d, d);
        for (a, p) in projectors.iter().enumerate() {
            if p.shape() != (d, d) {
                return Err(Error::DimensionMismatch { expected: d, found: p.nrows() });
            }
            let herm = linalg::hermitian_deviation(p);
            let idem = linalg::max_abs_diff(&(p * p), p);
            if herm > PROJECTOR_TOL || idem > PROJECTOR_TOL {
                return Err(Error::InvalidDensityMatrix(format!("element {a} is not a projector")));
            }
            for q in &projectors[a + 1..] {
                if (p * q).iter().any(|z| z.norm() > PROJECTOR_TOL) {
                    return Err(Error::InvalidDensityMatrix("projectors not orthogonal".into()));
                }
            }
            sum += p;
        }
        if linalg::max_abs_diff(&sum, &linalg::identity(d)) > PROJECTOR_TOL {
            return Err(Error::InvalidDensityMatrix("projectors do not sum to identity".into()));
        }
        Ok(ProjectiveMeasurement { projectors, subsystem })
    }

    /// Rank-1 projectors onto an orthonormal basis.
    pub fn from_basis(basis: &[ComplexVector], subsystem: usize) -> Result<Self> {
        Self::new(basis.iter().map(|v| linalg::outer(v, v)).collect(), subsystem)
    }

    /// Projectors onto the computational basis of a `d`-level subsystem.
    pub fn computational(d: usize, subsystem: usize) -> Self {
        let projectors = (0..d)
            .map(|k| {
                let mut p = ComplexMatrix::zeros(d, d);
                p[(k, k)] = Complex64::new(1.0, 0.0);
                p
            })
            .collect();
        ProjectiveMeasurement { projectors, subsystem }
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn subsystem(&self) -> usize {
        self.subsystem
    }

    pub fn local_dim(&self) -> usize {
        self.projectors[0].nrows()
    }
}

/// Rank-1 projectors onto `|n>` and `|-n>`.
pub fn qubit_projectors(angles: BlochAngles, subsystem: usize) -> ProjectiveMeasurement {
    let [up, _] = angles.basis();
    let p0 = linalg::outer(&up, &up);
    let p1 = linalg::identity(2) - &p0;
    ProjectiveMeasurement { projectors: vec![p0, p1], subsystem }
}

fn embed(op: &ComplexMatrix, subsystem: usize, dims: &Dims) -> ComplexMatrix {
    let d = dims.as_slice();
    let before: usize = d[..subsystem].iter().product();
    let after: usize = d[subsystem + 1..].iter().product();
    let left = linalg::kron(&linalg::identity(before), op);
    linalg::kron(&left, &linalg::identity(after))
}

/// `Σ_α (I ⊗ P_α) ρ (I ⊗ P_α)`.
pub fn apply_local_measurement(rho: &DensityMatrix, m: &ProjectiveMeasurement) -> Result<DensityMatrix> {
    let local = rho.dims().subsystem(m.subsystem)?;
    if local != m.local_dim() {
        return Err(Error::DimensionMismatch { expected: local, found: m.local_dim() });
    }
    let n = rho.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for p in &m.projectors {
        let full = embed(p, m.subsystem, rho.dims());
        out += &full * rho.matrix() * &full;
    }
    Ok(DensityMatrix::derived(out, rho.dims().clone()))
}

/// Settings of the grid-plus-simplex search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings {
    /// Grid points per angle.
    pub grid: usize,
    /// Number of best grid points refined by the simplex search.
    pub starts: usize,
    /// Simplex diameter at which refinement stops.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings { grid: 24, starts: 5, tol: 1e-8, max_iter: 2_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Goal {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleOptimum {
    pub angles: BlochAngles,
    pub value: f64,
    pub starts_used: usize,
    pub converged: bool,
}

/// Grid points in evaluation order; the poles appear once each.
pub fn angle_grid(n_theta: usize, n_phi: usize) -> Vec<(f64, f64)> {
    let n_theta = n_theta.max(2);
    let n_phi = n_phi.max(1);
    let mut pts = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        let theta = PI * i as f64 / (n_theta - 1) as f64;
        let pole = i == 0 || i == n_theta - 1;
        for j in 0..if pole { 1 } else { n_phi } {
            pts.push((theta, 2.0 * PI * j as f64 / n_phi as f64));
        }
    }
    pts
}

/// Optimizes a function of Bloch angles with a coarse grid followed by simplex
/// refinement of the best `starts` grid points. Ties resolve to the earliest
/// grid point.
pub fn optimize_angles<F>(f: F, goal: Goal, settings: &OptimizerSettings) -> AngleOptimum
where
    F: Fn(f64, f64) -> f64,
{
    let sign = match goal {
        Goal::Maximize => -1.0,
        Goal::Minimize => 1.0,
    };
    let cost = |t: f64, p: f64| sign * f(t, p);
    let grid = angle_grid(settings.grid, settings.grid);
    let mut scored: Vec<(usize, f64)> = grid.iter().enumerate().map(|(k, &(t, p))| (k, cost(t, p))).collect();
    scored.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));

    let starts = settings.starts.min(scored.len());
    let step_theta = 0.5 * PI / (settings.grid.max(2) - 1) as f64;
    let step_phi = PI / settings.grid.max(1) as f64;
    let opts = SimplexOptions { tol: settings.tol, max_iter: settings.max_iter };

    let (mut best_x, mut best_cost) = {
        let (k, v) = scored[0];
        (grid[k], v)
    };
    let mut converged = starts > 0;
    for &(k, _) in scored.iter().take(starts) {
        let (t0, p0) = grid[k];
        let r = optim::minimize(|x| cost(x[0], x[1]), &[t0, p0], &[step_theta, step_phi], opts);
        converged &= r.converged;
        if r.value < best_cost {
            best_cost = r.value;
            best_x = (r.x[0], r.x[1]);
        }
    }
    AngleOptimum {
        angles: BlochAngles::new(best_x.0, best_x.1),
        value: sign * best_cost,
        starts_used: starts,
        converged,
    }
}

/// Blocks `B_kl = <k|ρ|l>` of a state with respect to one qubit subsystem,
/// plus the entropy of the unmeasured remainder.
#[derive(Debug, Clone)]
pub(crate) struct QubitConditioning {
    b00: ComplexMatrix,
    b01: ComplexMatrix,
    b11: ComplexMatrix,
    rest: ComplexMatrix,
    rest_entropy: f64,
}

impl QubitConditioning {
    pub(crate) fn new(rho: &DensityMatrix, measured: usize) -> Result<Self> {
        let dims = rho.dims();
        let local = dims.subsystem(measured)?;
        if local != 2 {
            return Err(Error::UnsupportedDimension(local));
        }
        if dims.len() < 2 {
            return Err(Error::InvalidDims("need at least one unmeasured subsystem".into()));
        }
        let rest = dims.complement(&[measured]);
        let rest_off = dims.offsets(&rest);
        let m_off = dims.offsets(&[measured]);
        let n = rest_off.len();
        let block = |k: usize, l: usize| {
            ComplexMatrix::from_fn(n, n, |r, c| rho.matrix()[(rest_off[r] + m_off[k], rest_off[c] + m_off[l])])
        };
        let (b00, b01, b11) = (block(0, 0), block(0, 1), block(1, 1));
        let rest = &b00 + &b11;
        let rest_entropy = entropy::matrix_entropy(&rest);
        Ok(QubitConditioning { b00, b01, b11, rest, rest_entropy })
    }

    /// Unnormalized conditional state `<v|ρ|v>` on the unmeasured subsystems.
    fn conditional(&self, v: &ComplexVector) -> ComplexMatrix {
        let cross = &self.b01 * (v[0].conj() * v[1]);
        &self.b00 * Complex64::new(v[0].norm_sqr(), 0.0)
            + &self.b11 * Complex64::new(v[1].norm_sqr(), 0.0)
            + &cross
            + cross.adjoint()
    }

    /// `Σ_α p_α H(ρ_{rest|α})`.
    fn conditional_entropy(&self, theta: f64, phi: f64) -> f64 {
        let [up, _] = qubit_basis(theta, phi);
        let m0 = self.conditional(&up);
        let m1 = &self.rest - &m0;
        if m0.nrows() == 2 {
            let p0 = (m0[(0, 0)].re + m0[(1, 1)].re).clamp(0.0, 1.0);
            let p1 = (m1[(0, 0)].re + m1[(1, 1)].re).clamp(0.0, 1.0);
            p0 * entropy::entropy_2x2(m0[(0, 0)].re, m0[(1, 1)].re, m0[(0, 1)])
                + p1 * entropy::entropy_2x2(m1[(0, 0)].re, m1[(1, 1)].re, m1[(0, 1)])
        } else {
            weighted_entropy(&m0) + weighted_entropy(&m1)
        }
    }

    /// Post-measurement mutual information for the measurement along `(theta, phi)`.
    pub(crate) fn mutual_information(&self, theta: f64, phi: f64) -> f64 {
        self.rest_entropy - self.conditional_entropy(theta, phi)
    }
}

// p H(M/p) = -Σ λ log λ + p log p, with λ the eigenvalues of M
fn weighted_entropy(m: &ComplexMatrix) -> f64 {
    let p = linalg::trace(m).re;
    if p <= 0.0 {
        return 0.0;
    }
    let s: f64 = linalg::eigvalsh(m).iter().map(|&l| eta(l)).sum();
    s - eta(p)
}

/// Result of the classical-correlation search.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOptimum {
    /// Classical correlations in bits.
    pub value: f64,
    pub argmax: ProjectiveMeasurement,
    pub angles: BlochAngles,
    pub starts_used: usize,
    pub converged: bool,
}

/// Classical correlations: the maximal mutual information between the measured
/// qubit and all remaining subsystems after a projective measurement on the former.
pub fn classical_correlations(
    rho: &DensityMatrix,
    measured: usize,
    settings: &OptimizerSettings,
) -> Result<MeasurementOptimum> {
    let cond = QubitConditioning::new(rho, measured)?;
    let opt = optimize_angles(|t, p| cond.mutual_information(t, p), Goal::Maximize, settings);
    // mutual information is non-negative; clip round-off
    let value = opt.value.max(0.0);
    Ok(MeasurementOptimum {
        value,
        argmax: qubit_projectors(opt.angles, measured),
        angles: opt.angles,
        starts_used: opt.starts_used,
        converged: opt.converged,
    })
}

/// Post-measurement mutual information between `measured` and the rest for a
/// fixed qubit measurement direction.
pub fn measured_mutual_information(rho: &DensityMatrix, measured: usize, angles: BlochAngles) -> Result<f64> {
    let cond = QubitConditioning::new(rho, measured)?;
    Ok(cond.mutual_information(angles.theta, angles.phi))
}

/// Checks that a measurement output is still a valid state within derived tolerances.
pub fn is_valid_post_measurement(rho: &DensityMatrix) -> bool {
    linalg::hermitian_deviation(rho.matrix()) <= DERIVED_TOL
        && (linalg::trace(rho.matrix()).re - 1.0).abs() <= DERIVED_TOL
        && rho.min_eigenvalue() >= -DERIVED_TOL
}
