//! Consensus parameters and audits of the bounds on quantum correlations.
//!
//! Every audit reports `lhs ≤ rhs` (or `lhs = rhs` for identities) together
//! with the tolerance it was judged against. Tolerances combine a numerical
//! floor with an allowance for projective measurements underestimating the
//! optimal classical correlations.

use std::cell::Cell;

use crate::correlations::{eof_two_qubit, mutual_information_split, Side};
use crate::entropy::{self, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::linalg;
use crate::measurement::{
    apply_local_measurement, classical_correlations, optimize_angles, qubit_projectors, Goal, OptimizerSettings,
};
use crate::state::{DensityMatrix, PureState};

/// Floating-point allowance shared by all audits.
pub const NUMERIC_SLACK: f64 = 1e-6;
/// Allowance for the projective search falling short of the optimal classical correlations.
pub const OPTIMIZATION_SLACK: f64 = 2e-3;
/// Default tolerance of inequality audits.
pub const AUDIT_TOL: f64 = NUMERIC_SLACK + OPTIMIZATION_SLACK;
/// Tolerance of the discord/entanglement conservation identity on three qubits.
pub const IDENTITY_TOL: f64 = 5e-3;
/// Below this, `H(ρ_S)` is treated as zero and consensus is undefined.
pub const ENTROPY_FLOOR: f64 = 1e-9;
/// Classical correlations below this count as absent in the remark audit.
pub const REMARK_J_ZERO: f64 = 1e-4;
/// Discord above this, with absent classical correlations, is a counterexample.
pub const REMARK_D_MAX: f64 = 2e-3;

/// Outcome of checking one inequality or identity.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundAudit {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs` for inequalities, `-|lhs - rhs|` for identities.
    pub slack: f64,
    pub satisfied: bool,
    pub tolerance: f64,
    /// Distance from saturation, when the audit tracks one.
    pub gap: Option<f64>,
}

impl BoundAudit {
    /// Audit of `lhs ≤ rhs`.
    pub fn inequality(label: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = rhs - lhs;
        BoundAudit { label: label.into(), lhs, rhs, slack, satisfied: slack >= -tolerance, tolerance, gap: None }
    }

    /// Audit of `lhs = rhs`.
    pub fn equality(label: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let gap = (lhs - rhs).abs();
        BoundAudit {
            label: label.into(),
            lhs,
            rhs,
            slack: -gap,
            satisfied: gap <= tolerance,
            tolerance,
            gap: Some(gap),
        }
    }

    pub fn with_gap(mut self, gap: f64) -> Self {
        self.gap = Some(gap);
        self
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

fn require_qubit(dims: &[usize], index: usize) -> Result<()> {
    let d = *dims.get(index).ok_or(Error::IndexOutOfRange { index, count: dims.len() })?;
    if d != 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(())
}

/// Two-site marginal with `first` as subsystem 0 and `second` as subsystem 1.
pub fn ordered_pair(psi: &PureState, first: usize, second: usize) -> Result<DensityMatrix> {
    if first == second {
        return Err(Error::InvalidDims(format!("pair ({first}, {second}) repeats a subsystem")));
    }
    let rho = psi.reduced(&[first, second])?;
    if first < second {
        Ok(rho)
    } else {
        rho.permute(&[1, 0])
    }
}

/// Audits `E(ρ_SF) ≤ H(ρ_S) - J(ρ_{S Ě})`, where the complement `Ě` of `S ∪ F`
/// is a single qubit that is measured directly. The gap to saturation is
/// reported as well.
pub fn koashi_winter_audit(
    psi: &PureState,
    system: usize,
    fragment: usize,
    settings: &OptimizerSettings,
) -> Result<BoundAudit> {
    let dims = psi.dims().as_slice();
    require_qubit(dims, system)?;
    require_qubit(dims, fragment)?;
    let rest: Vec<usize> = (0..dims.len()).filter(|&k| k != system && k != fragment).collect();
    let rest_dim: usize = rest.iter().map(|&k| dims[k]).product();
    if rest.len() != 1 || rest_dim != 2 {
        return Err(Error::UnsupportedDimension(rest_dim));
    }
    let e = eof_two_qubit(&ordered_pair(psi, system, fragment)?)?;
    let h = von_neumann_entropy(&psi.reduced(&[system])?);
    let j = classical_correlations(&ordered_pair(psi, system, rest[0])?, 1, settings)?.value;
    let rhs = h - j;
    Ok(BoundAudit::inequality("koashi-winter", e, rhs, AUDIT_TOL).with_gap((e - rhs).abs()))
}

/// `J(ρ_{S Ě_{/site}})` from saturation of the Koashi-Winter relation:
/// `H(ρ_S) - E(ρ_{S ε_site})`.
pub fn kw_j_complement(psi: &PureState, system: usize, site: usize) -> Result<f64> {
    let h = von_neumann_entropy(&psi.reduced(&[system])?);
    kw_complement_from(h, &ordered_pair(psi, system, site)?)
}

fn kw_complement_from(h_s: f64, rho_s_site: &DensityMatrix) -> Result<f64> {
    Ok((h_s - eof_two_qubit(rho_s_site)?).max(0.0))
}

/// Consensus parameters δ_i and δ with the classical correlations they are built from.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusReport {
    pub delta_i: Vec<f64>,
    pub delta: f64,
    pub h_s: f64,
    /// `J(ρ_{S Ě})`, equal to `H(ρ_S)` for a pure universe.
    pub j_full: f64,
    /// `J(ρ_{S ε̌_i})`, measured on the site.
    pub j_site: Vec<f64>,
    /// `J(ρ_{S Ě_{/i}})` from Koashi-Winter saturation.
    pub j_complement: Vec<f64>,
    /// `I(ρ_{S ε_i})`.
    pub mutual_info_site: Vec<f64>,
    /// `E(ρ_{S ε_i})`.
    pub eof_site: Vec<f64>,
}

impl ConsensusReport {
    pub fn discord_site(&self) -> Vec<f64> {
        self.mutual_info_site.iter().zip(&self.j_site).map(|(i, j)| i - j).collect()
    }

    pub fn mean_discord(&self) -> f64 {
        mean(&self.discord_site())
    }

    pub fn mean_eof(&self) -> f64 {
        mean(&self.eof_site)
    }

    pub fn mean_classical(&self) -> f64 {
        mean(&self.j_site)
    }

    pub fn bound(&self) -> f64 {
        self.delta * self.h_s
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Builds the consensus report from `H(ρ_S)` and the system-site marginals
/// `ρ_{S ε_i}` (system first, site second).
pub fn consensus_from_marginals(
    h_s: f64,
    site_marginals: &[DensityMatrix],
    settings: &OptimizerSettings,
) -> Result<ConsensusReport> {
    if h_s <= ENTROPY_FLOOR {
        return Err(Error::UndefinedConsensus(h_s));
    }
    if site_marginals.is_empty() {
        return Err(Error::InvalidDims("no environment sites".into()));
    }
    let j_full = h_s;
    let n = site_marginals.len();
    let (mut j_site, mut j_complement) = (Vec::with_capacity(n), Vec::with_capacity(n));
    let (mut mutual_info_site, mut eof_site) = (Vec::with_capacity(n), Vec::with_capacity(n));
    let mut delta_i = Vec::with_capacity(n);
    for rho in site_marginals {
        let e = eof_two_qubit(rho)?;
        let j = classical_correlations(rho, 1, settings)?.value;
        let jc = (h_s - e).max(0.0);
        delta_i.push((j_full - j.min(jc)) / h_s);
        j_site.push(j);
        j_complement.push(jc);
        eof_site.push(e);
        mutual_info_site.push(mutual_information_split(rho, &[0], &[1])?);
    }
    let delta = mean(&delta_i);
    Ok(ConsensusReport { delta_i, delta, h_s, j_full, j_site, j_complement, mutual_info_site, eof_site })
}

/// Consensus parameters of a pure universe with a qubit system and qubit sites.
pub fn consensus_delta(psi: &PureState, system: usize, settings: &OptimizerSettings) -> Result<ConsensusReport> {
    let dims = psi.dims().as_slice();
    require_qubit(dims, system)?;
    let sites = psi.dims().complement(&[system]);
    for &k in &sites {
        require_qubit(dims, k)?;
    }
    let h_s = von_neumann_entropy(&psi.reduced(&[system])?);
    if h_s <= ENTROPY_FLOOR {
        return Err(Error::UndefinedConsensus(h_s));
    }
    let marginals = sites.iter().map(|&k| ordered_pair(psi, system, k)).collect::<Result<Vec<_>>>()?;
    consensus_from_marginals(h_s, &marginals, settings)
}

/// `D̄(ρ_{S ε̌_i}) ≤ δ H(ρ_S)`.
pub fn discord_bound_from(report: &ConsensusReport) -> BoundAudit {
    BoundAudit::inequality("discord-bound", report.mean_discord(), report.bound(), AUDIT_TOL)
}

pub fn discord_bound_audit(psi: &PureState, system: usize, settings: &OptimizerSettings) -> Result<BoundAudit> {
    Ok(discord_bound_from(&consensus_delta(psi, system, settings)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EofBoundReport {
    /// `E(ρ_{S ε_i}) ≤ δ_i H(ρ_S)` for each site.
    pub per_site: Vec<BoundAudit>,
    /// `Ē ≤ δ H(ρ_S)`.
    pub average: BoundAudit,
}

impl EofBoundReport {
    pub fn satisfied(&self) -> bool {
        self.average.satisfied && self.per_site.iter().all(|a| a.satisfied)
    }
}

pub fn eof_bound_from(report: &ConsensusReport) -> EofBoundReport {
    let per_site = report
        .eof_site
        .iter()
        .zip(&report.delta_i)
        .enumerate()
        .map(|(i, (&e, &d))| BoundAudit::inequality(format!("eof-bound[{i}]"), e, d * report.h_s, AUDIT_TOL))
        .collect();
    let average = BoundAudit::inequality("eof-bound", report.mean_eof(), report.bound(), AUDIT_TOL);
    EofBoundReport { per_site, average }
}

pub fn eof_bound_audit(psi: &PureState, system: usize, settings: &OptimizerSettings) -> Result<EofBoundReport> {
    Ok(eof_bound_from(&consensus_delta(psi, system, settings)?))
}

/// Classical and quantum correlations of a two-qubit state, measured on subsystem 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RemarkAudit {
    pub classical: f64,
    pub discord: f64,
    /// Absent classical correlations together with non-negligible discord.
    pub counterexample: bool,
    pub audit: BoundAudit,
}

/// Checks that vanishing classical correlations come with vanishing discord.
pub fn remark_audit(rho: &DensityMatrix, settings: &OptimizerSettings) -> Result<RemarkAudit> {
    if rho.dims().len() != 2 {
        return Err(Error::InvalidDims(format!("expected a bipartite state, found {}", rho.dims())));
    }
    let j = classical_correlations(rho, 1, settings)?.value;
    let i = mutual_information_split(rho, &[0], &[1])?;
    let d = i - j;
    let no_classical = j < REMARK_J_ZERO;
    let audit = if no_classical {
        BoundAudit::inequality("remark", d, 0.0, REMARK_D_MAX)
    } else {
        // implication holds vacuously; record D ≤ I
        BoundAudit::inequality("remark(vacuous)", d, i, REMARK_D_MAX)
    };
    Ok(RemarkAudit { classical: j, discord: d, counterexample: no_classical && d > REMARK_D_MAX, audit })
}

/// The four terms of `E(ρ_{S E/i}) + E(ρ_{S ε_i}) = D(ρ_{S ε̌_i}) + D(ρ_{S Ě/i})` on three qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct FanchiniTerms {
    pub eof_complement: f64,
    pub eof_site: f64,
    pub discord_site: f64,
    pub discord_complement: f64,
    pub audit: BoundAudit,
}

pub fn fanchini_identity_audit(
    psi: &PureState,
    system: usize,
    site: usize,
    settings: &OptimizerSettings,
) -> Result<FanchiniTerms> {
    let dims = psi.dims().as_slice();
    if dims != [2, 2, 2] {
        return Err(Error::InvalidDims(format!("expected three qubits, found {}", psi.dims())));
    }
    if system >= 3 || site >= 3 || system == site {
        return Err(Error::InvalidDims(format!("system {system} and site {site} must be distinct qubits")));
    }
    let other = 3 - system - site;
    let rho_site = ordered_pair(psi, system, site)?;
    let rho_other = ordered_pair(psi, system, other)?;
    let discord = |rho: &DensityMatrix| -> Result<f64> {
        let j = classical_correlations(rho, 1, settings)?.value;
        Ok(mutual_information_split(rho, &[0], &[1])? - j)
    };
    let eof_complement = eof_two_qubit(&rho_other)?;
    let eof_site = eof_two_qubit(&rho_site)?;
    let discord_site = discord(&rho_site)?;
    let discord_complement = discord(&rho_other)?;
    let audit =
        BoundAudit::equality("fanchini", eof_complement + eof_site, discord_site + discord_complement, IDENTITY_TOL);
    Ok(FanchiniTerms { eof_complement, eof_site, discord_site, discord_complement, audit })
}

fn side_index(side: Side) -> usize {
    match side {
        Side::A => 0,
        Side::B => 1,
    }
}

fn require_full_rank(rho: &DensityMatrix) -> Result<()> {
    let lmin = rho.min_eigenvalue();
    if lmin <= entropy::SUPPORT_CUTOFF {
        return Err(Error::RankDeficient(lmin));
    }
    Ok(())
}

/// `D ≤ m₁ ≤ m₂`, with `m₁ = min_P {H(ρ‖ρ_P) - H(ρ_F‖ρ_{F,P})}` and `m₂ = min_P H(ρ‖ρ_P)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityAudit {
    pub discord: f64,
    pub m1: f64,
    pub m2: f64,
    /// Largest violation of `H(ρ‖ρ_P) = H(ρ_P) - H(ρ)` over every evaluated measurement.
    pub pinching_error: f64,
    pub discord_vs_m1: BoundAudit,
    pub m1_vs_m2: BoundAudit,
}

impl ContinuityAudit {
    pub fn satisfied(&self) -> bool {
        self.discord_vs_m1.satisfied && self.m1_vs_m2.satisfied
    }

    /// The chain collapsed into one audit: `D ≤ m₂` with the worse of the two slacks.
    pub fn combined(&self) -> BoundAudit {
        let worst = if self.discord_vs_m1.slack <= self.m1_vs_m2.slack { &self.discord_vs_m1 } else { &self.m1_vs_m2 };
        BoundAudit { label: "continuity".into(), lhs: self.discord, rhs: self.m2, gap: None, ..worst.clone() }
    }
}

pub fn continuity_chain_audit(
    rho: &DensityMatrix,
    measured: Side,
    settings: &OptimizerSettings,
) -> Result<ContinuityAudit> {
    if rho.dims().len() != 2 {
        return Err(Error::InvalidDims(format!("expected a bipartite state, found {}", rho.dims())));
    }
    let f = side_index(measured);
    let s = 1 - f;
    require_qubit(rho.dims().as_slice(), f)?;
    require_full_rank(rho)?;

    let j = classical_correlations(rho, f, settings)?.value;
    let discord = mutual_information_split(rho, &[s], &[f])? - j;

    let h_rho = von_neumann_entropy(rho);
    let rho_f = rho.partial_trace(&[f])?;
    let pinching_error = Cell::new(0.0f64);
    let relative_terms = |theta: f64, phi: f64| -> (f64, f64) {
        let m = qubit_projectors(crate::measurement::BlochAngles::new(theta, phi), f);
        let post = apply_local_measurement(rho, &m).expect("validated measurement");
        let rel = entropy::relative_entropy_matrices(rho.matrix(), post.matrix());
        let identity = von_neumann_entropy(&post) - h_rho;
        pinching_error.set(pinching_error.get().max((rel - identity).abs()));
        let post_f = post.partial_trace(&[f]).expect("valid subsystem");
        let rel_f = entropy::relative_entropy_matrices(rho_f.matrix(), post_f.matrix());
        (rel, rel_f)
    };
    let m1 = optimize_angles(
        |t, p| {
            let (rel, rel_f) = relative_terms(t, p);
            rel - rel_f
        },
        Goal::Minimize,
        settings,
    )
    .value;
    let m2 = optimize_angles(|t, p| relative_terms(t, p).0, Goal::Minimize, settings).value;
    Ok(ContinuityAudit {
        discord,
        m1,
        m2,
        pinching_error: pinching_error.get(),
        discord_vs_m1: BoundAudit::inequality("continuity:D<=m1", discord, m1, AUDIT_TOL),
        m1_vs_m2: BoundAudit::inequality("continuity:m1<=m2", m1, m2, AUDIT_TOL),
    })
}

/// Upper limit on `H(x‖y)` in terms of the trace distance and smallest eigenvalues.
pub fn relative_entropy_upper_bound(x: &DensityMatrix, y: &DensityMatrix) -> Result<f64> {
    let d = entropy::trace_distance_half(x, y)?;
    let ly = y.min_eigenvalue();
    if ly <= 0.0 {
        return Err(Error::RankDeficient(ly));
    }
    let lx = x.min_eigenvalue();
    let first = (ly + d) * (1.0 + d / ly).log2();
    let second = if lx <= 0.0 { 0.0 } else { lx * (1.0 + d / lx).log2() };
    Ok(first - second)
}

/// Terms of `H(ρ‖ρ_P̃) ≤ ε + f(ρ_F, P̃)` for the measurement that maximizes
/// post-measurement mutual information.
#[derive(Debug, Clone, PartialEq)]
pub struct FBoundAudit {
    pub relative_entropy: f64,
    pub epsilon: f64,
    pub f: f64,
    pub audit: BoundAudit,
}

pub fn f_bound_audit(rho: &DensityMatrix, measured: Side, settings: &OptimizerSettings) -> Result<FBoundAudit> {
    if rho.dims().len() != 2 {
        return Err(Error::InvalidDims(format!("expected a bipartite state, found {}", rho.dims())));
    }
    let f_idx = side_index(measured);
    require_qubit(rho.dims().as_slice(), f_idx)?;
    let best = classical_correlations(rho, f_idx, settings)?;
    let post = apply_local_measurement(rho, &best.argmax)?;
    let rho_f = rho.partial_trace(&[f_idx])?;
    let post_f = post.partial_trace(&[f_idx])?;
    require_full_rank(&post_f)?;
    let relative_entropy = entropy::relative_entropy(rho, &post)?;
    let marginal = entropy::relative_entropy(&rho_f, &post_f)?;
    let epsilon = relative_entropy - marginal;
    let f = relative_entropy_upper_bound(&rho_f, &post_f)?;
    let audit = BoundAudit::inequality("f-bound", relative_entropy, epsilon + f, NUMERIC_SLACK);
    Ok(FBoundAudit { relative_entropy, epsilon, f, audit })
}

/// Environment state for the pairwise consensus quantifier.
#[derive(Debug, Clone, PartialEq)]
pub enum EnvState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl EnvState {
    fn n_sites(&self) -> usize {
        match self {
            EnvState::Pure(p) => p.dims().len(),
            EnvState::Mixed(r) => r.dims().len(),
        }
    }

    fn dims(&self) -> &[usize] {
        match self {
            EnvState::Pure(p) => p.dims().as_slice(),
            EnvState::Mixed(r) => r.dims().as_slice(),
        }
    }

    fn site(&self, i: usize) -> Result<DensityMatrix> {
        match self {
            EnvState::Pure(p) => p.reduced(&[i]),
            EnvState::Mixed(r) => r.partial_trace(&[i]),
        }
    }

    fn pair(&self, i: usize, j: usize) -> Result<DensityMatrix> {
        match self {
            EnvState::Pure(p) => ordered_pair(p, i, j),
            EnvState::Mixed(r) => {
                let rho = r.partial_trace(&[i, j])?;
                if i < j {
                    Ok(rho)
                } else {
                    rho.permute(&[1, 0])
                }
            }
        }
    }
}

/// Pairwise classical correlations inside an environment and the quantifier δᵉ_i.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvConsensusReport {
    /// `None` where `H(ρ_{ε_i})` vanishes.
    pub delta_eps: Vec<Option<f64>>,
    pub entropies: Vec<f64>,
    /// `J(ρ_{ε_i ε̌_j})`, measured on `ε_j`; the diagonal is `None`.
    pub pairwise_j: Vec<Vec<Option<f64>>>,
}

pub fn env_consensus(env: &EnvState, settings: &OptimizerSettings) -> Result<EnvConsensusReport> {
    let n = env.n_sites();
    if n < 2 {
        return Err(Error::InvalidDims("environment needs at least two sites".into()));
    }
    for k in 0..n {
        require_qubit(env.dims(), k)?;
    }
    let entropies = (0..n).map(|i| Ok(von_neumann_entropy(&env.site(i)?))).collect::<Result<Vec<f64>>>()?;
    let mut pairwise_j = vec![vec![None; n]; n];
    for (i, row) in pairwise_j.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i != j {
                *cell = Some(classical_correlations(&env.pair(i, j)?, 1, settings)?.value);
            }
        }
    }
    let delta_eps = (0..n)
        .map(|i| {
            if entropies[i] <= ENTROPY_FLOOR {
                return None;
            }
            let min_j = pairwise_j[i].iter().flatten().copied().fold(f64::INFINITY, f64::min);
            Some(1.0 - min_j / entropies[i])
        })
        .collect();
    Ok(EnvConsensusReport { delta_eps, entropies, pairwise_j })
}

fn env_eof_bound_from(env: &PureState, report: &EnvConsensusReport, i: usize, j: usize) -> Result<BoundAudit> {
    let e = eof_two_qubit(&ordered_pair(env, i, j)?)?;
    let rhs = report.delta_eps[i].map_or(0.0, |d| d * report.entropies[i]);
    Ok(BoundAudit::inequality(format!("env-bound[{i},{j}]"), e, rhs, AUDIT_TOL))
}

/// Audits `E(ρ_{ε_i ε_j}) ≤ δᵉ_i H(ρ_{ε_i})` for a pure environment.
pub fn env_eof_bound_audit(env: &EnvState, i: usize, j: usize, settings: &OptimizerSettings) -> Result<BoundAudit> {
    let EnvState::Pure(psi) = env else {
        return Err(Error::MixedEnvironment);
    };
    let n = psi.dims().len();
    for k in [i, j] {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, count: n });
        }
    }
    let report = env_consensus(env, settings)?;
    env_eof_bound_from(psi, &report, i, j)
}

/// Every ordered pair `(i, j)`, `i ≠ j`, sharing one consensus computation.
pub fn env_eof_bound_audits(env: &EnvState, settings: &OptimizerSettings) -> Result<Vec<BoundAudit>> {
    let EnvState::Pure(psi) = env else {
        return Err(Error::MixedEnvironment);
    };
    let report = env_consensus(env, settings)?;
    let n = psi.dims().len();
    let mut out = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(env_eof_bound_from(psi, &report, i, j)?);
            }
        }
    }
    Ok(out)
}

/// Largest elementwise difference between two states of equal dimension.
pub fn max_elementwise_gap(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    linalg::max_abs_diff(a.matrix(), b.matrix())
}

/// Weight of the maximally mixed state used to make sampled states full rank.
pub const FULL_RANK_MIX: f64 = 1e-6;

/// `(1 - 1e-6)·ρ + 1e-6·I/d`, which is full rank for any input.
pub fn full_rank(rho: &DensityMatrix) -> DensityMatrix {
    rho.mix(&DensityMatrix::maximally_mixed(rho.dims().clone()), FULL_RANK_MIX).expect("matching dimensions")
}
