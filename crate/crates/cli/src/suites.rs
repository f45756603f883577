//! Seeded random-state suites that drive the bound audits.
//!
//! Samples are drawn sequentially from one ChaCha stream, then audited in
//! parallel and reassembled in trial order, so a suite's rows depend only on
//! its seed and trial count.

use clap::ValueEnum;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qcorr::bounds::{self, full_rank, EnvState};
use qcorr::state::{random_density_matrix_with, random_pure_state_with, seeded_rng};
use qcorr::{BoundAudit, DensityMatrix, Dims, OptimizerSettings, PureState, Side};

use crate::statefile::LoadedState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Koashi-Winter saturation on Haar 3-qubit universes.
    Kw,
    /// Mean discord ≤ δ·H(S) on Haar 1+3-qubit universes.
    DiscordBound,
    /// Per-site and mean entanglement of formation ≤ δ·H(S).
    EofBound,
    /// No discord without classical correlations, on two-qubit states.
    Remark,
    /// Discord/entanglement conservation on Haar 3-qubit states.
    Fanchini,
    /// D ≤ m1 ≤ m2 on full-rank two-qubit states.
    Continuity,
    /// Relative entropy ≤ its trace-distance upper bound, dimensions 2, 3, 4.
    Jens,
    /// H(ρ‖ρ_P) ≤ ε + f on full-rank two-qubit states.
    FBound,
    /// Pairwise entanglement bound inside Haar 4-qubit environments.
    EnvBound,
}

impl Suite {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_owned()
    }
}

/// Input of one trial.
#[derive(Debug, Clone)]
pub enum Sample {
    Pure(PureState),
    Mixed(DensityMatrix),
    Pair(DensityMatrix, DensityMatrix),
}

fn haar(dims: &Dims, rng: &mut ChaCha8Rng) -> Sample {
    Sample::Pure(random_pure_state_with(dims, rng))
}

fn mixed(dims: &Dims, rank: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    random_density_matrix_with(dims, rank, rng).expect("rank within dimension")
}

/// Two-qubit states for the remark suite: generic states of every rank,
/// products, and products perturbed by a small admixture, which populate
/// the neighbourhood of the zero-J set.
pub fn remark_sample(trial: usize, rng: &mut ChaCha8Rng) -> DensityMatrix {
    let one = Dims::qubits(1);
    match trial % 4 {
        0 | 1 => {
            let rank = rng.random_range(1..=4);
            mixed(&Dims::qubits(2), rank, rng)
        }
        2 => {
            let product = mixed(&one, 2, rng).tensor(&mixed(&one, 2, rng));
            let weight = 10f64.powf(-rng.random_range(2.0..5.0));
            product.mix(&mixed(&Dims::qubits(2), 4, rng), weight).expect("matching dims")
        }
        _ => mixed(&one, 2, rng).tensor(&mixed(&one, 2, rng)),
    }
}

/// Draws the inputs of `trials` trials from `seed`.
pub fn samples(suite: Suite, trials: usize, seed: u64) -> Vec<Sample> {
    let mut rng = seeded_rng(seed);
    let q = Dims::qubits;
    (0..trials)
        .map(|t| match suite {
            Suite::Kw | Suite::Fanchini => haar(&q(3), &mut rng),
            Suite::DiscordBound | Suite::EofBound | Suite::EnvBound => haar(&q(4), &mut rng),
            Suite::Remark => Sample::Mixed(remark_sample(t, &mut rng)),
            Suite::Continuity | Suite::FBound => Sample::Mixed(full_rank(&mixed(&q(2), 4, &mut rng))),
            Suite::Jens => {
                let d = [2, 3, 4][t % 3];
                let dims = Dims::new(vec![d]).expect("d ≥ 2");
                let x = full_rank(&mixed(&dims, d, &mut rng));
                let y = full_rank(&mixed(&dims, d, &mut rng));
                Sample::Pair(x, y)
            }
        })
        .collect()
}

/// Converts a state file into a suite input.
pub fn sample_from_file(suite: Suite, state: &LoadedState) -> anyhow::Result<Sample> {
    Ok(match suite {
        Suite::Kw | Suite::Fanchini | Suite::DiscordBound | Suite::EofBound | Suite::EnvBound => {
            Sample::Pure(state.pure()?)
        }
        Suite::Remark | Suite::Continuity | Suite::FBound => Sample::Mixed(state.density()),
        Suite::Jens => anyhow::bail!("the jens suite compares pairs of states and cannot read a single state file"),
    })
}

fn audit_one(suite: Suite, sample: &Sample, settings: &OptimizerSettings) -> qcorr::Result<Vec<BoundAudit>> {
    use Sample::*;
    Ok(match (suite, sample) {
        (Suite::Kw, Pure(psi)) => vec![bounds::koashi_winter_audit(psi, 0, 1, settings)?],
        (Suite::DiscordBound, Pure(psi)) => vec![bounds::discord_bound_audit(psi, 0, settings)?],
        (Suite::EofBound, Pure(psi)) => {
            let report = bounds::eof_bound_audit(psi, 0, settings)?;
            let mut rows = report.per_site;
            rows.push(report.average);
            rows
        }
        (Suite::Remark, Mixed(rho)) => vec![bounds::remark_audit(rho, settings)?.audit],
        (Suite::Fanchini, Pure(psi)) => vec![bounds::fanchini_identity_audit(psi, 0, 1, settings)?.audit],
        (Suite::Continuity, Mixed(rho)) => {
            let c = bounds::continuity_chain_audit(rho, Side::B, settings)?;
            vec![c.discord_vs_m1, c.m1_vs_m2]
        }
        (Suite::FBound, Mixed(rho)) => vec![bounds::f_bound_audit(rho, Side::B, settings)?.audit],
        (Suite::Jens, Pair(x, y)) => {
            let rel = qcorr::relative_entropy(x, y)?;
            let bound = bounds::relative_entropy_upper_bound(x, y)?;
            vec![BoundAudit::inequality("jens", rel, bound, 1e-9)]
        }
        (Suite::EnvBound, Pure(psi)) => bounds::env_eof_bound_audits(&EnvState::Pure(psi.clone()), settings)?,
        _ => return Err(qcorr::Error::InvalidDims(format!("input does not fit the {} suite", suite.name()))),
    })
}

/// Audits every sample; labels are prefixed with the trial index (`t<k>:`).
pub fn run_suite(suite: Suite, samples: &[Sample], settings: &OptimizerSettings) -> qcorr::Result<Vec<BoundAudit>> {
    let per_trial = samples.par_iter().map(|s| audit_one(suite, s, settings)).collect::<qcorr::Result<Vec<_>>>()?;
    Ok(per_trial
        .into_iter()
        .enumerate()
        .flat_map(|(t, rows)| {
            rows.into_iter().map(move |a| {
                let label = format!("t{t}:{}", a.label);
                a.relabel(label)
            })
        })
        .collect())
}
