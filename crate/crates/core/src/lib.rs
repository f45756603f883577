//! Classical and quantum correlations of small multipartite states, the
//! consensus bounds that limit them, and the star-network model used to
//! illustrate those bounds.

pub mod bounds;
pub mod correlations;
pub mod entropy;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod measurement;
pub mod optim;
pub mod starsim;
pub mod state;

pub use bounds::{consensus_delta, BoundAudit, ConsensusReport, EnvConsensusReport, EnvState};
pub use correlations::{
    entanglement_entropy, eof_two_qubit, mutual_information, quantum_discord, Bipartition, CorrelationRecord, Side,
};
pub use entropy::{relative_entropy, trace_distance_half, von_neumann_entropy};
pub use error::{Error, Result};
pub use linalg::{kron, ComplexMatrix, ComplexVector};
pub use measurement::{classical_correlations, MeasurementOptimum, OptimizerSettings, ProjectiveMeasurement};
pub use starsim::{run_sweep, StarConfig, SweepRow};
pub use state::{random_density_matrix, random_pure_state, DensityMatrix, Dims, PureState};
