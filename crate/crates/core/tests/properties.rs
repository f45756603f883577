use proptest::prelude::*;

use qcorr::bounds::{self, full_rank};
use qcorr::entropy::relative_entropy;
use qcorr::linalg::max_abs_diff;
use qcorr::measurement::{apply_local_measurement, qubit_projectors, BlochAngles};
use qcorr::starsim::{analytic_marginals, build_universe_brute};
use qcorr::{random_density_matrix, random_pure_state, von_neumann_entropy, Dims, OptimizerSettings, StarConfig};

fn quick() -> OptimizerSettings {
    OptimizerSettings { grid: 16, ..OptimizerSettings::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pinching_identity(seed in 0u64..10_000, theta in 0.0..std::f64::consts::PI, phi in 0.0..std::f64::consts::TAU) {
        let rho = random_density_matrix(&Dims::qubits(2), 4, seed).unwrap();
        let m = qubit_projectors(BlochAngles::new(theta, phi), 1);
        let post = apply_local_measurement(&rho, &m).unwrap();
        let rel = relative_entropy(&rho, &post).unwrap();
        let identity = von_neumann_entropy(&post) - von_neumann_entropy(&rho);
        prop_assert!((rel - identity).abs() <= 1e-9);
    }

    #[test]
    fn relative_entropy_below_upper_bound(seed in 0u64..10_000, d in 2usize..=4) {
        let dims = Dims::new(vec![d]).unwrap();
        let x = full_rank(&random_density_matrix(&dims, d, seed).unwrap());
        let y = full_rank(&random_density_matrix(&dims, d, seed ^ 0xABCD).unwrap());
        let rel = relative_entropy(&x, &y).unwrap();
        prop_assert!(rel <= bounds::relative_entropy_upper_bound(&x, &y).unwrap() + 1e-9);
    }

    #[test]
    fn consensus_report_invariants(seed in 0u64..10_000) {
        let psi = random_pure_state(&Dims::qubits(4), seed);
        let r = bounds::consensus_delta(&psi, 0, &quick()).unwrap();
        let mean = r.delta_i.iter().sum::<f64>() / r.delta_i.len() as f64;
        prop_assert!((r.delta - mean).abs() <= 1e-12);
        for d in &r.delta_i {
            prop_assert!((-1e-9..=1.0 + 1e-9).contains(d));
        }
        prop_assert!(bounds::discord_bound_from(&r).satisfied);
        prop_assert!(bounds::eof_bound_from(&r).satisfied());
    }

    #[test]
    fn star_marginals_match_statevector(n in 2usize..=9, a in 0.0f64..=1.0) {
        let cfg = StarConfig::new(n, a).unwrap();
        let psi = build_universe_brute(&cfg).unwrap();
        let m = analytic_marginals(&cfg);
        prop_assert!(max_abs_diff(m.system_site.matrix(), psi.reduced(&[0, n]).unwrap().matrix()) <= 1e-12);
        prop_assert!(max_abs_diff(m.site_pair.unwrap().matrix(), psi.reduced(&[1, n]).unwrap().matrix()) <= 1e-12);
    }

    #[test]
    fn star_rows_respect_bounds(n in 1usize..=60, a in 0.0f64..=1.0) {
        let row = qcorr::starsim::sweep_point(&StarConfig::new(n, a).unwrap(), &quick()).unwrap();
        prop_assert!(row.eof_audit().satisfied);
        prop_assert!(row.discord_audit().satisfied);
    }
}

/// δ_i = 0 exactly when fragment, complement and whole environment carry the
/// same classical information; δ_i = 1 exactly when the fragment carries none.
#[test]
fn consensus_extremes_match_their_characterization() {
    let slack = bounds::AUDIT_TOL;
    for seed in 0..40 {
        let psi = random_pure_state(&Dims::qubits(3), 7_000 + seed);
        let r = bounds::consensus_delta(&psi, 0, &OptimizerSettings::default()).unwrap();
        for i in 0..r.delta_i.len() {
            let agree = (r.j_full - r.j_site[i]).abs() <= slack && (r.j_full - r.j_complement[i]).abs() <= slack;
            if r.delta_i[i].abs() <= 1e-9 {
                assert!(agree);
            }
            if agree {
                assert!(r.delta_i[i] <= slack / r.h_s + 1e-12);
            }
            if r.delta_i[i] >= 1.0 - 1e-9 {
                assert!(r.j_site[i].min(r.j_complement[i]) <= slack);
            }
            if r.j_site[i] <= slack {
                assert!(r.delta_i[i] >= 1.0 - slack / r.h_s - 1e-12);
            }
        }
    }
    // a site that is a product with the rest carries no information about S: δ_i = 1
    let psi = random_pure_state(&Dims::qubits(3), 11).tensor(&qcorr::fixtures::product_bits(&[1]));
    let r = bounds::consensus_delta(&psi, 0, &OptimizerSettings::default()).unwrap();
    assert!(r.j_site[2] < 1e-9 && (r.delta_i[2] - 1.0).abs() < 1e-9);

    let ghz = qcorr::fixtures::ghz(4);
    let r = bounds::consensus_delta(&ghz, 0, &OptimizerSettings::default()).unwrap();
    for i in 0..3 {
        assert!(r.delta_i[i].abs() < 1e-9);
        assert!(r.j_site[i] > 1.0 - 1e-9);
        assert!((r.j_full - r.j_site[i]).abs() < 1e-9 && (r.j_full - r.j_complement[i]).abs() < 1e-9);
    }
}
