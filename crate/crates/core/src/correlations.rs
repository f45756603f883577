//! Mutual information, discord and entanglement measures for bipartitions.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::entropy::{self, binary_entropy, eta, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, ComplexVector};
use crate::measurement::{classical_correlations, OptimizerSettings, ProjectiveMeasurement};
use crate::optim::{self, SimplexOptions};
use crate::state::{gaussian_vector, DensityMatrix, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// A state together with a split of its subsystems into two groups.
#[derive(Debug, Clone, PartialEq)]
pub struct Bipartition {
    rho: DensityMatrix,
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(rho: DensityMatrix, side_a: &[usize], side_b: &[usize]) -> Result<Self> {
        let a = rho.dims().normalize_selection(side_a)?;
        let b = rho.dims().normalize_selection(side_b)?;
        if a.iter().any(|k| b.contains(k)) {
            return Err(Error::InvalidDims("sides of a bipartition overlap".into()));
        }
        if a.len() + b.len() != rho.dims().len() {
            return Err(Error::InvalidDims("bipartition does not cover every subsystem".into()));
        }
        Ok(Bipartition { rho, side_a: a, side_b: b })
    }

    /// Splits a two-subsystem state as `0 | 1`.
    pub fn pair(rho: DensityMatrix) -> Result<Self> {
        if rho.dims().len() != 2 {
            return Err(Error::InvalidDims(format!("expected two subsystems, found {}", rho.dims().len())));
        }
        Self::new(rho, &[0], &[1])
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn side(&self, side: Side) -> &[usize] {
        match side {
            Side::A => &self.side_a,
            Side::B => &self.side_b,
        }
    }

    pub fn side_dim(&self, side: Side) -> usize {
        self.side(side).iter().map(|&k| self.rho.dims().as_slice()[k]).product()
    }
}

/// `I, J, D, E, H(ρ_A)` for one bipartition and one measured side.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationRecord {
    pub mutual_info: f64,
    pub classical: f64,
    pub discord: f64,
    /// Present when both sides are single qubits.
    pub eof: Option<f64>,
    pub entropy_a: f64,
    pub measured_side: Side,
    pub optimal_measurement: ProjectiveMeasurement,
}

/// `H(ρ_A) + H(ρ_B) - H(ρ_AB)` for two disjoint subsystem groups of `rho`.
pub fn mutual_information_split(rho: &DensityMatrix, a: &[usize], b: &[usize]) -> Result<f64> {
    let mut ab: Vec<usize> = a.iter().chain(b).copied().collect();
    ab.sort_unstable();
    let joint = if ab.len() == rho.dims().len() {
        von_neumann_entropy(rho)
    } else {
        von_neumann_entropy(&rho.partial_trace(&ab)?)
    };
    let ha = von_neumann_entropy(&rho.partial_trace(a)?);
    let hb = von_neumann_entropy(&rho.partial_trace(b)?);
    Ok(ha + hb - joint)
}

pub fn mutual_information(b: &Bipartition) -> f64 {
    mutual_information_split(&b.rho, &b.side_a, &b.side_b).expect("validated bipartition")
}

/// Discord with measurement on `measured`; the measured side must be one qubit.
pub fn quantum_discord(b: &Bipartition, measured: Side, settings: &OptimizerSettings) -> Result<CorrelationRecord> {
    let sel = b.side(measured);
    let dim = b.side_dim(measured);
    if sel.len() != 1 || dim != 2 {
        return Err(Error::UnsupportedDimension(dim));
    }
    let mutual_info = mutual_information(b);
    let opt = classical_correlations(&b.rho, sel[0], settings)?;
    let eof = if b.rho.dims().as_slice() == [2, 2] { Some(eof_two_qubit(&b.rho)?) } else { None };
    Ok(CorrelationRecord {
        mutual_info,
        classical: opt.value,
        discord: mutual_info - opt.value,
        eof,
        entropy_a: von_neumann_entropy(&b.rho.partial_trace(&b.side_a)?),
        measured_side: measured,
        optimal_measurement: opt.argmax,
    })
}

pub fn entanglement_entropy(psi: &PureState, side_a: &[usize]) -> Result<f64> {
    Ok(von_neumann_entropy(&psi.reduced(side_a)?))
}

fn sigma_yy() -> ComplexMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    ComplexMatrix::from_row_slice(4, 4, &[z, z, z, -one, z, z, one, z, z, one, z, z, -one, z, z, z])
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims().as_slice() != [2, 2] {
        return Err(Error::InvalidDims(format!("expected two qubits, found {}", rho.dims())));
    }
    Ok(())
}

/// Wootters concurrence of a two-qubit state.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let yy = sigma_yy();
    let tilde = &yy * rho.matrix().map(|z| z.conj()) * &yy;
    // R = √ρ ρ̃ √ρ is Hermitian PSD and isospectral with ρ ρ̃
    let sqrt_rho = linalg::eig_hermitian_unchecked(rho.matrix()).map(|l| l.max(0.0).sqrt());
    let r = &sqrt_rho * tilde * &sqrt_rho;
    let lambdas: Vec<f64> = linalg::eigvalsh(&r).iter().map(|&l| l.max(0.0).sqrt()).collect();
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// `E = h((1 + √(1 - C²)) / 2)`.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt()))
}

/// Entanglement of formation of a two-qubit state via the concurrence closed form.
pub fn eof_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

/// Settings of the numeric convex-roof search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexRoofSettings {
    pub restarts: usize,
    pub seed: u64,
    pub max_sweeps: usize,
    /// A sweep that lowers the average entropy by less than this ends a restart.
    pub sweep_tol: f64,
}

impl Default for ConvexRoofSettings {
    fn default() -> Self {
        ConvexRoofSettings { restarts: 20, seed: 0, max_sweeps: 400, sweep_tol: 1e-7 }
    }
}

/// Largest total dimension accepted by [`eof_convex_roof_numeric`].
pub const CONVEX_ROOF_MAX_DIM: usize = 16;

/// Default ensemble size: twice the rank.
pub fn default_ensemble_size(rho: &DensityMatrix) -> usize {
    2 * rho.rank(entropy::SUPPORT_CUTOFF)
}

/// Upper estimate of the entanglement of formation obtained by searching over
/// ensemble decompositions.
///
/// Decompositions of size `m` are the columns `U |ψ̃_k>` of an `m × m` unitary
/// applied to the (zero-padded) scaled eigenvectors of `rho`. The unitary is
/// improved by sweeps of two-member mixing rotations, each optimized with the
/// simplex search, from `restarts` random starting unitaries. Any value
/// returned is achieved by an explicit decomposition.
pub fn eof_convex_roof_numeric(
    rho: &DensityMatrix,
    ensemble_size: usize,
    settings: &ConvexRoofSettings,
) -> Result<f64> {
    let dims = rho.dims().as_slice();
    if dims.len() != 2 {
        return Err(Error::InvalidDims(format!("expected a bipartite state, found {}", rho.dims())));
    }
    if rho.dim() > CONVEX_ROOF_MAX_DIM {
        return Err(Error::TooLarge(format!("dimension {} > {CONVEX_ROOF_MAX_DIM}", rho.dim())));
    }
    let eig = linalg::eig_hermitian_unchecked(rho.matrix());
    let scaled: Vec<ComplexVector> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > entropy::SUPPORT_CUTOFF)
        .map(|(k, &l)| eig.vectors.column(k) * Complex64::new(l.sqrt(), 0.0))
        .collect();
    let rank = scaled.len();
    if ensemble_size < rank {
        return Err(Error::OutOfRange(format!("ensemble size {ensemble_size} below rank {rank}")));
    }
    let roof = Roof::new(dims[0], dims[1]);
    if rank == 1 {
        return Ok(roof.weighted(&scaled[0]));
    }
    let best = (0..settings.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(settings.seed.wrapping_add(r as u64));
            let u = random_unitary(ensemble_size, &mut rng);
            let mut members: Vec<ComplexVector> = (0..ensemble_size)
                .map(|j| {
                    scaled.iter().enumerate().fold(ComplexVector::zeros(rho.dim()), |acc, (k, v)| acc + v * u[(j, k)])
                })
                .collect();
            roof.descend(&mut members, settings)
        })
        .collect::<Vec<f64>>();
    Ok(best.into_iter().fold(f64::INFINITY, f64::min))
}

/// Average-entanglement objective for decompositions of a `da × db` state.
struct Roof {
    da: usize,
    db: usize,
}

impl Roof {
    fn new(da: usize, db: usize) -> Self {
        Roof { da, db }
    }

    /// `‖φ‖² · S(Tr_B |φ><φ| / ‖φ‖²)` for an unnormalized member.
    fn weighted(&self, phi: &ComplexVector) -> f64 {
        self.weighted_by(|k| phi[k])
    }

    /// Same as [`Roof::weighted`] for the member `c φ_j + e φ_l`, without materializing it.
    fn weighted_mix(&self, pj: &ComplexVector, pl: &ComplexVector, c: Complex64, e: Complex64) -> f64 {
        self.weighted_by(|k| pj[k] * c + pl[k] * e)
    }

    fn weighted_by(&self, amp: impl Fn(usize) -> Complex64) -> f64 {
        let (da, db) = (self.da, self.db);
        let (small, large, a_small) = if da <= db { (da, db, true) } else { (db, da, false) };
        let at = |s: usize, l: usize| if a_small { amp(s * db + l) } else { amp(l * db + s) };
        if small == 2 {
            let (mut a, mut d, mut b) = (0.0, 0.0, Complex64::new(0.0, 0.0));
            for l in 0..large {
                let (x, y) = (at(0, l), at(1, l));
                a += x.norm_sqr();
                d += y.norm_sqr();
                b += x * y.conj();
            }
            let t = a + d;
            if t <= 0.0 {
                return 0.0;
            }
            let (hi, lo) = linalg::eigvals_2x2(a, d, b);
            return eta(hi.max(0.0)) + eta(lo.max(0.0)) - eta(t);
        }
        let cols: Vec<Complex64> = (0..small * large).map(|k| at(k / large, k % large)).collect();
        let red = ComplexMatrix::from_fn(small, small, |i, j| {
            (0..large).map(|l| cols[i * large + l] * cols[j * large + l].conj()).sum()
        });
        let t = linalg::trace(&red).re;
        if t <= 0.0 {
            return 0.0;
        }
        linalg::eigvalsh(&red).iter().map(|&l| eta(l.max(0.0))).sum::<f64>() - eta(t)
    }

    fn total(&self, members: &[ComplexVector]) -> f64 {
        members.iter().map(|m| self.weighted(m)).sum()
    }

    fn descend(&self, members: &mut [ComplexVector], settings: &ConvexRoofSettings) -> f64 {
        let m = members.len();
        let mut current = self.total(members);
        let opts = SimplexOptions { tol: 1e-5, max_iter: 1_000 };
        for _ in 0..settings.max_sweeps {
            let before = current;
            for j in 0..m {
                for l in j + 1..m {
                    let (pj, pl) = (members[j].clone(), members[l].clone());
                    let base = self.weighted(&pj) + self.weighted(&pl);
                    let cost = |x: &[f64]| {
                        let (c, e) = rotation_coefficients(x[0], x[1]);
                        self.weighted_mix(&pj, &pl, c, e) + self.weighted_mix(&pl, &pj, c, -e.conj())
                    };
                    let mut start = [0.0, 0.0];
                    let mut start_val = base;
                    for (t, a) in crate::measurement::angle_grid(5, 4) {
                        let v = cost(&[t / 2.0, a]);
                        if v < start_val {
                            start_val = v;
                            start = [t / 2.0, a];
                        }
                    }
                    let r = optim::minimize(cost, &start, &[0.1, 0.3], opts);
                    if r.value < base {
                        let (nj, nl) = rotate(&pj, &pl, r.x[0], r.x[1]);
                        members[j] = nj;
                        members[l] = nl;
                    }
                }
            }
            current = self.total(members);
            if before - current < settings.sweep_tol {
                break;
            }
        }
        current
    }
}

fn rotation_coefficients(theta: f64, alpha: f64) -> (Complex64, Complex64) {
    (Complex64::new(theta.cos(), 0.0), Complex64::from_polar(theta.sin(), alpha))
}

// (φ_j, φ_l) -> (c φ_j + e φ_l, c φ_l - e* φ_j)
fn rotate(pj: &ComplexVector, pl: &ComplexVector, theta: f64, alpha: f64) -> (ComplexVector, ComplexVector) {
    let (c, e) = rotation_coefficients(theta, alpha);
    (pj * c + pl * e, pl * c - pj * e.conj())
}

/// Haar unitary from the QR decomposition of a complex Gaussian matrix.
fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let cols: Vec<ComplexVector> = (0..n).map(|_| gaussian_vector(n, rng)).collect();
    let g = ComplexMatrix::from_columns(&cols);
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    // fix the phase freedom so the distribution is Haar
    let phases: Vec<Complex64> = (0..n)
        .map(|k| {
            let d = r[(k, k)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect();
    ComplexMatrix::from_fn(n, n, |i, j| q[(i, j)] * phases[j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::measurement::{apply_local_measurement, qubit_projectors, BlochAngles};
    use crate::state::{random_density_matrix, random_pure_state, Dims};

    fn s() -> OptimizerSettings {
        OptimizerSettings::default()
    }

    /// Brute-force measurement sweep through the explicit post-measurement state.
    fn dense_grid_classical(rho: &DensityMatrix, measured: usize, n: usize) -> f64 {
        let other = 1 - measured;
        let mut best = f64::NEG_INFINITY;
        for i in 0..n {
            for j in 0..n {
                let a = BlochAngles::new(
                    std::f64::consts::PI * i as f64 / (n - 1) as f64,
                    2.0 * std::f64::consts::PI * j as f64 / n as f64,
                );
                let post = apply_local_measurement(rho, &qubit_projectors(a, measured)).unwrap();
                best = best.max(mutual_information_split(&post, &[other], &[measured]).unwrap());
            }
        }
        best
    }

    #[test]
    fn mutual_information_examples() {
        let prod = random_density_matrix(&Dims::qubits(1), 2, 3)
            .unwrap()
            .tensor(&random_density_matrix(&Dims::qubits(1), 2, 4).unwrap());
        assert!(mutual_information(&Bipartition::pair(prod).unwrap()).abs() < 1e-12);
        let bell = fixtures::bell_phi_plus().to_density();
        assert!((mutual_information(&Bipartition::pair(bell).unwrap()) - 2.0).abs() < 1e-12);
        let cc = fixtures::classical_classical(&[0.5, 0.5]).unwrap();
        assert!((mutual_information(&Bipartition::pair(cc).unwrap()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bipartition_validation() {
        let rho = DensityMatrix::maximally_mixed(Dims::qubits(3));
        assert!(Bipartition::new(rho.clone(), &[0], &[0, 1]).is_err());
        assert!(Bipartition::new(rho.clone(), &[0], &[1]).is_err());
        assert!(Bipartition::new(rho.clone(), &[0, 2], &[1]).is_ok());
        assert!(Bipartition::pair(rho).is_err());
    }

    #[test]
    fn discord_of_bell_state() {
        let b = Bipartition::pair(fixtures::bell_phi_plus().to_density()).unwrap();
        for side in [Side::A, Side::B] {
            let r = quantum_discord(&b, side, &s()).unwrap();
            assert!((r.discord - 1.0).abs() < 1e-10);
            assert!((r.classical - 1.0).abs() < 1e-10);
            assert!((r.eof.unwrap() - 1.0).abs() < 1e-10);
            assert_eq!(r.measured_side, side);
        }
    }

    #[test]
    fn classical_quantum_state_has_zero_discord_on_register() {
        let a0 = random_density_matrix(&Dims::qubits(1), 2, 10).unwrap();
        let a1 = random_density_matrix(&Dims::qubits(1), 2, 11).unwrap();
        let cq = fixtures::classical_quantum(&[0.35, 0.65], &[a0, a1]).unwrap();
        let r = quantum_discord(&Bipartition::pair(cq).unwrap(), Side::B, &s()).unwrap();
        assert!(r.discord.abs() < 2e-6, "{}", r.discord);
        assert!((r.mutual_info - r.classical - r.discord).abs() < 1e-12);
    }

    #[test]
    fn werner_discord_matches_dense_grid() {
        let w = fixtures::werner(0.5).unwrap();
        let r = quantum_discord(&Bipartition::pair(w.clone()).unwrap(), Side::B, &s()).unwrap();
        let oracle = r.mutual_info - dense_grid_classical(&w, 1, 200);
        assert!((r.discord - oracle).abs() < 1e-5);
    }

    #[test]
    fn discord_is_asymmetric() {
        // measuring the register finds no discord; measuring the quantum side does
        let plus = DensityMatrix::from_pure(&fixtures::plus_zeros(0));
        let zero = DensityMatrix::diagonal(&[1.0, 0.0], Dims::qubits(1)).unwrap();
        let cq = fixtures::classical_quantum(&[0.5, 0.5], &[zero, plus]).unwrap();
        let b = Bipartition::pair(cq).unwrap();
        let on_b = quantum_discord(&b, Side::B, &s()).unwrap().discord;
        let on_a = quantum_discord(&b, Side::A, &s()).unwrap().discord;
        assert!(on_b.abs() < 2e-6);
        assert!((on_a - on_b).abs() > 0.1, "{on_a} vs {on_b}");
    }

    #[test]
    fn pure_state_discord_equals_entanglement_entropy() {
        for seed in 0..10 {
            let psi = random_pure_state(&Dims::qubits(2), seed);
            let ent = entanglement_entropy(&psi, &[0]).unwrap();
            let b = Bipartition::pair(psi.to_density()).unwrap();
            let r = quantum_discord(&b, Side::B, &s()).unwrap();
            assert!((r.discord - ent).abs() < 2e-6);
            assert!((r.eof.unwrap() - ent).abs() < 1e-6);
        }
    }

    #[test]
    fn entanglement_entropy_examples() {
        assert!(entanglement_entropy(&fixtures::product_bits(&[0, 1]), &[0]).unwrap().abs() < 1e-12);
        assert!((entanglement_entropy(&fixtures::bell_phi_plus(), &[1]).unwrap() - 1.0).abs() < 1e-12);
        let ghz = fixtures::ghz(3);
        for cut in [[0], [1], [2]] {
            assert!((entanglement_entropy(&ghz, &cut).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn wootters_examples() {
        assert!((eof_two_qubit(&fixtures::bell_phi_plus().to_density()).unwrap() - 1.0).abs() < 1e-10);
        assert!(eof_two_qubit(&fixtures::classical_classical(&[0.5, 0.5]).unwrap()).unwrap().abs() < 1e-12);
        // Werner: C = max(0, (3p - 1)/2)
        let c = concurrence(&fixtures::werner(0.8).unwrap()).unwrap();
        assert!((c - 0.7).abs() < 1e-10);
        assert!(eof_two_qubit(&DensityMatrix::maximally_mixed(Dims::qubits(3))).is_err());
    }

    #[test]
    fn convex_roof_werner_matches_closed_form() {
        let w = fixtures::werner(0.8).unwrap();
        let closed = eof_two_qubit(&w).unwrap();
        let numeric = eof_convex_roof_numeric(&w, default_ensemble_size(&w), &ConvexRoofSettings::default()).unwrap();
        assert!(closed <= numeric + 1e-9);
        assert!((numeric - closed).abs() < 5e-4, "{numeric} vs {closed}");
    }

    #[test]
    fn convex_roof_pure_and_separable() {
        let psi = random_pure_state(&Dims::qubits(2), 77);
        let rho = psi.to_density();
        let e = eof_convex_roof_numeric(&rho, 2, &ConvexRoofSettings::default()).unwrap();
        assert!((e - entanglement_entropy(&psi, &[0]).unwrap()).abs() < 1e-6);

        let mut sep = DensityMatrix::maximally_mixed(Dims::qubits(2));
        let ps = [0.2, 0.3, 0.5];
        let mut acc: Option<DensityMatrix> = None;
        for (i, &p) in ps.iter().enumerate() {
            let a = random_density_matrix(&Dims::qubits(1), 1 + i % 2, 30 + i as u64).unwrap();
            let b = random_density_matrix(&Dims::qubits(1), 1 + (i + 1) % 2, 40 + i as u64).unwrap();
            let t = a.tensor(&b);
            acc = Some(match acc {
                None => t,
                Some(prev) => prev.mix(&t, p / ps[..=i].iter().sum::<f64>()).unwrap(),
            });
        }
        sep = acc.unwrap_or(sep);
        let e = eof_convex_roof_numeric(&sep, default_ensemble_size(&sep), &ConvexRoofSettings::default()).unwrap();
        assert!(e <= 1e-4, "{e}");
    }

    #[test]
    fn convex_roof_rejects_large_inputs() {
        let big = DensityMatrix::maximally_mixed(Dims::new(vec![4, 5]).unwrap());
        assert!(matches!(eof_convex_roof_numeric(&big, 40, &ConvexRoofSettings::default()), Err(Error::TooLarge(_))));
        let w = fixtures::werner(0.5).unwrap();
        assert!(eof_convex_roof_numeric(&w, 2, &ConvexRoofSettings::default()).is_err());
    }
}
