//! Star network of one system qubit coupled to `N` environment qubits by
//! c-maybe gates, starting from `|+⟩|0…0⟩`.
//!
//! The final state is `(|0⟩|0⟩^N + |1⟩|φ⟩^N)/√2` with `|φ⟩ = a|0⟩ + √(1-a²)|1⟩`,
//! so every marginal used by the sweep has a closed form whose coherences
//! decay as powers of `a`. The brute-force statevector path exists to check
//! those closed forms for small `N`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bounds::{self, BoundAudit, ENTROPY_FLOOR};
use crate::correlations::{eof_two_qubit, mutual_information_split};
use crate::entropy::von_neumann_entropy;
use crate::error::{Error, Result};
use crate::linalg::{c, outer, ComplexMatrix, ComplexVector};
use crate::measurement::{classical_correlations, OptimizerSettings};
use crate::state::{DensityMatrix, Dims, PureState};

/// Largest environment handled by [`build_universe_brute`].
pub const MAX_BRUTE_ENV: usize = 12;

/// Default environment sizes of the sweep.
pub const DEFAULT_N: [usize; 3] = [2, 10, 50];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarConfig {
    n_env: usize,
    a: f64,
}

impl StarConfig {
    pub fn new(n_env: usize, a: f64) -> Result<Self> {
        if n_env == 0 {
            return Err(Error::OutOfRange("the environment needs at least one qubit".into()));
        }
        check_a(a)?;
        Ok(StarConfig { n_env, a })
    }

    pub fn n_env(&self) -> usize {
        self.n_env
    }

    pub fn a(&self) -> f64 {
        self.a
    }
}

fn check_a(a: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::OutOfRange(format!("gate parameter a = {a} outside [0, 1]")));
    }
    Ok(())
}

/// `I₂ ⊕ [[a, s], [s, -a]]` with `s = √(1-a²)`; the first qubit is the control.
pub fn cmaybe_gate(a: f64) -> Result<ComplexMatrix> {
    check_a(a)?;
    let s = (1.0 - a * a).max(0.0).sqrt();
    let mut u = ComplexMatrix::zeros(4, 4);
    u[(0, 0)] = c(1.0, 0.0);
    u[(1, 1)] = c(1.0, 0.0);
    u[(2, 2)] = c(a, 0.0);
    u[(2, 3)] = c(s, 0.0);
    u[(3, 2)] = c(s, 0.0);
    u[(3, 3)] = c(-a, 0.0);
    Ok(u)
}

/// Applies a two-qubit gate to qubits `(q0, q1)` of an `n`-qubit register
/// (qubit 0 is the most significant bit).
fn apply_two_qubit(amps: &mut [Complex64], n: usize, q0: usize, q1: usize, gate: &ComplexMatrix) {
    let b0 = 1usize << (n - 1 - q0);
    let b1 = 1usize << (n - 1 - q1);
    for base in 0..amps.len() {
        if base & (b0 | b1) != 0 {
            continue;
        }
        let idx = [base, base | b1, base | b0, base | b0 | b1];
        let old = idx.map(|i| amps[i]);
        for (r, &i) in idx.iter().enumerate() {
            amps[i] = (0..4).map(|k| gate[(r, k)] * old[k]).sum();
        }
    }
}

/// Exact statevector of `1 + N` qubits with the system as qubit 0.
pub fn build_universe_brute(cfg: &StarConfig) -> Result<PureState> {
    let n_env = cfg.n_env;
    if n_env > MAX_BRUTE_ENV {
        return Err(Error::TooLarge(format!(
            "brute-force statevector limited to {MAX_BRUTE_ENV} environment qubits, requested {n_env}"
        )));
    }
    let n = n_env + 1;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    let h = std::f64::consts::FRAC_1_SQRT_2;
    amps[0] = c(h, 0.0);
    amps[1 << n_env] = c(h, 0.0);
    let gate = cmaybe_gate(cfg.a)?;
    for site in 1..=n_env {
        apply_two_qubit(&mut amps, n, 0, site, &gate);
    }
    PureState::new(ComplexVector::from_vec(amps), Dims::qubits(n))
}

/// Closed-form marginals of the final star state.
#[derive(Debug, Clone, PartialEq)]
pub struct StarMarginals {
    pub system: DensityMatrix,
    /// System (first) and one environment site (second).
    pub system_site: DensityMatrix,
    /// Two environment sites; present when `N ≥ 2`.
    pub site_pair: Option<DensityMatrix>,
}

/// `½(|u⟩⟨u| + |v⟩⟨v| + overlap·(|u⟩⟨v| + |v⟩⟨u|))`.
fn two_branch(u: &ComplexVector, v: &ComplexVector, overlap: f64, dims: Dims) -> DensityMatrix {
    let cross = outer(u, v) * c(overlap, 0.0);
    let m = (outer(u, u) + outer(v, v) + &cross + cross.adjoint()) * c(0.5, 0.0);
    DensityMatrix::derived(m, dims)
}

pub fn analytic_marginals(cfg: &StarConfig) -> StarMarginals {
    let a = cfg.a;
    let n = cfg.n_env as i32;
    let s = (1.0 - a * a).max(0.0).sqrt();
    let zero = ComplexVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
    let one = ComplexVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
    let phi = ComplexVector::from_vec(vec![c(a, 0.0), c(s, 0.0)]);
    let kron = crate::linalg::kron_vec;

    let system = two_branch(&zero, &one, a.powi(n), Dims::qubits(1));
    let system_site = two_branch(&kron(&zero, &zero), &kron(&one, &phi), a.powi(n - 1), Dims::qubits(2));
    // tracing out the system removes the branch coherence: the two sites are
    // an equal mixture of |00⟩ and |φφ⟩ with no cross term
    let site_pair = (cfg.n_env >= 2).then(|| two_branch(&kron(&zero, &zero), &kron(&phi, &phi), 0.0, Dims::qubits(2)));
    StarMarginals { system, system_site, site_pair }
}

/// One point of the sweep. Site averages equal single-site values by
/// permutation symmetry of the environment.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n_env: usize,
    pub a: f64,
    pub h_s: f64,
    pub avg_eof: f64,
    pub avg_classical: f64,
    pub avg_discord: f64,
    /// `None` where `H(ρ_S)` vanishes.
    pub delta: Option<f64>,
    /// `δ·H(ρ_S)`; `None` together with `delta`.
    pub bound: Option<f64>,
}

impl SweepRow {
    /// `D̄ ≤ δ H(ρ_S)`. With `H(ρ_S) = 0` the right-hand side is 0 for any δ.
    pub fn discord_audit(&self) -> BoundAudit {
        BoundAudit::inequality(
            format!("discord-bound[n={},a={}]", self.n_env, self.a),
            self.avg_discord,
            self.bound.unwrap_or(0.0),
            bounds::AUDIT_TOL,
        )
    }

    /// `Ē ≤ δ H(ρ_S)`, with the same convention as [`SweepRow::discord_audit`].
    pub fn eof_audit(&self) -> BoundAudit {
        BoundAudit::inequality(
            format!("eof-bound[n={},a={}]", self.n_env, self.a),
            self.avg_eof,
            self.bound.unwrap_or(0.0),
            bounds::AUDIT_TOL,
        )
    }
}

pub fn sweep_point(cfg: &StarConfig, settings: &OptimizerSettings) -> Result<SweepRow> {
    let marginals = analytic_marginals(cfg);
    let h_s = von_neumann_entropy(&marginals.system);
    let rho = &marginals.system_site;
    let (avg_eof, avg_classical, avg_discord, delta) = if h_s > ENTROPY_FLOOR {
        let report = bounds::consensus_from_marginals(h_s, std::slice::from_ref(rho), settings)?;
        (report.mean_eof(), report.mean_classical(), report.mean_discord(), Some(report.delta))
    } else {
        let j = classical_correlations(rho, 1, settings)?.value;
        let i = mutual_information_split(rho, &[0], &[1])?;
        (eof_two_qubit(rho)?, j, i - j, None)
    };
    Ok(SweepRow {
        n_env: cfg.n_env,
        a: cfg.a,
        h_s,
        avg_eof,
        avg_classical,
        avg_discord,
        delta,
        bound: delta.map(|d| d * h_s),
    })
}

/// Rows ordered by `N` (as listed) and then by `a`.
pub fn run_sweep(n_list: &[usize], a_grid: &[f64], settings: &OptimizerSettings) -> Result<Vec<SweepRow>> {
    let configs =
        n_list.iter().flat_map(|&n| a_grid.iter().map(move |&a| StarConfig::new(n, a))).collect::<Result<Vec<_>>>()?;
    configs.par_iter().map(|cfg| sweep_point(cfg, settings)).collect()
}

/// `min, min + step, …` up to `max`, snapping the final point onto `max`
/// when it lands within rounding distance.
pub fn linear_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !min.is_finite() || !max.is_finite() || max < min {
        return Err(Error::OutOfRange(format!("malformed grid: min {min}, max {max}, step {step}")));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|k| {
            let x = min + k as f64 * step;
            if (x - max).abs() < 1e-9 {
                max
            } else {
                x
            }
        })
        .collect())
}

/// The default `a` grid `0, 0.05, …, 1`.
pub fn default_a_grid() -> Vec<f64> {
    linear_grid(0.0, 1.0, 0.05).expect("valid default grid")
}
