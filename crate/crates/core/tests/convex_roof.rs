use qcorr::correlations::{default_ensemble_size, eof_convex_roof_numeric, eof_two_qubit, ConvexRoofSettings};
use qcorr::{random_density_matrix, Dims};

#[test]
fn numeric_convex_roof_agrees_with_wootters() {
    let settings = ConvexRoofSettings::default();
    let mut worst: f64 = 0.0;
    for seed in 0..50u64 {
        let rank = 2 + (seed as usize % 3);
        let rho = random_density_matrix(&Dims::qubits(2), rank, 500 + seed).unwrap();
        let closed = eof_two_qubit(&rho).unwrap();
        let numeric = eof_convex_roof_numeric(&rho, default_ensemble_size(&rho), &settings).unwrap();
        assert!(closed <= numeric + 1e-9, "seed {seed}: closed form {closed} above numeric {numeric}");
        assert!(numeric - closed < 1e-3, "seed {seed}: rank {rank}, {numeric} vs {closed}");
        worst = worst.max(numeric - closed);
    }
    println!("largest convex-roof excess over closed form: {worst:.3e}");
}
