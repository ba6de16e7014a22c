//! Verification suites behind `icotherm verify` and `icotherm photonic-check`:
//! randomized equivalence and consistency checks with seeded, reproducible
//! sampling. Each suite reports its max deviation against the tolerance.

use ico_thermo::ico::{self, ControlState};
use ico_thermo::photonic;
use ico_thermo::qmat::ComplexMatrix;
use ico_thermo::sampling;
use ico_thermo::thermo::{self, SweepMode};
use ico_thermo::unfolded::{self, UnfoldSetup};
use ico_thermo::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct SuiteResult {
    pub name: &'static str,
    pub max_deviation: f64,
}

/// Trace distance between the unfolded circuit, the closed form and the
/// constant-channel Kraus switch, over random setups.
fn suite_unfolded_equivalence(trials: usize, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let setup = UnfoldSetup::new(
            sampling::random_density(rng, 2),
            sampling::random_density(rng, 2),
            sampling::random_density(rng, 2),
            sampling::random_density(rng, 2),
        )
        .expect("qubit states");
        let closed = unfolded::switch_constant_closed_form(&setup);
        let circuit = unfolded::unfolded_circuit(&setup).expect("circuit");
        let kraus = unfolded::switch_constant_kraus(&setup).expect("kraus route");
        worst = worst
            .max(circuit.trace_distance(&closed))
            .max(kraus.trace_distance(&closed));
    }
    SuiteResult {
        name: "unfolded_equivalence",
        max_deviation: worst,
    }
}

/// Completeness of the switch built from random channels with 1..=4 Kraus
/// operators each.
fn suite_switch_cptp(trials: usize, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let n1 = rng.random_range(1..=4);
        let n2 = rng.random_range(1..=4);
        let ch1 = sampling::random_channel(rng, 2, n1);
        let ch2 = sampling::random_channel(rng, 2, n2);
        let w = ico::switch_kraus(&ch1, &ch2).expect("qubit channels");
        worst = worst.max(w.validate().max_deviation);
    }
    SuiteResult {
        name: "switch_cptp",
        max_deviation: worst,
    }
}

/// Closed-form populations/probabilities against the 16-branch matrix
/// evolution over random (f1, p, alpha).
fn suite_closed_form_vs_matrix(trials: usize, rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let f1 = rng.random_range(0.01..0.99);
        let p = rng.random_range(0.01..0.99);
        let alpha = rng.random_range(0.0..=1.0);
        let ctrl = ControlState::new(alpha).expect("alpha in range");
        worst = worst.max(ico::switch_routes_deviation(f1, &ctrl, p).expect("valid inputs"));
    }
    SuiteResult {
        name: "closed_form_vs_matrix",
        max_deviation: worst,
    }
}

/// Coherent channel choice never reverses the heat-flow direction:
/// deviation is the largest |ΔQ| among wrong-signed grid points.
fn suite_coherent_control_sign() -> SuiteResult {
    let grid = thermo::uniform_grid(0.25, 2.0, 200);
    let records = thermo::sweep_heat(1.0, 1.0, 0.5, &grid, SweepMode::Coherent)
        .expect("valid sweep");
    let mut worst = 0.0f64;
    for r in &records {
        let gradient = r.te_over_ts - 1.0;
        for dq in [r.dq_plus, r.dq_minus] {
            if dq * gradient < 0.0 {
                worst = worst.max(dq.abs());
            }
        }
    }
    SuiteResult {
        name: "coherent_control_sign",
        max_deviation: worst,
    }
}

pub fn run_verify(trials: usize, seed: u64) -> Vec<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        suite_unfolded_equivalence(trials, &mut rng),
        suite_switch_cptp(trials, &mut rng),
        suite_closed_form_vs_matrix(trials, &mut rng),
        suite_coherent_control_sign(),
    ]
}

pub fn run_photonic_check(trials: usize, seed: u64) -> Vec<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = ComplexMatrix::identity(2);

    let mut unitarity = 0.0f64;
    for _ in 0..trials {
        let theta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        for u in [photonic::hwp(theta), photonic::qwp(theta)] {
            unitarity = unitarity.max(u.adjoint().matmul(&u).max_abs_diff(&id));
        }
    }

    let mut rz = 0.0f64;
    for _ in 0..trials {
        let alpha = rng.random_range(-std::f64::consts::TAU..std::f64::consts::TAU);
        rz = rz.max(photonic::phase_aligned_distance(
            &photonic::rz_waveplate_product(alpha),
            &photonic::jones_rz(alpha),
        ));
    }

    let targets = [(0usize, 0usize), (0, 1), (1, 1), (1, 0)];
    let mut rows = 0.0f64;
    for (row, &(r, c)) in photonic::kraus_angle_table().iter().zip(&targets) {
        let op = photonic::row_operator(row);
        let target = ComplexMatrix::ketbra(2, r, c, Complex64::ONE);
        rows = rows.max(photonic::phase_aligned_distance(&op, &target));
    }

    let mut reconstruction = 0.0f64;
    let populations = thermo::uniform_grid(0.05, 0.95, 10);
    for &f1 in &populations {
        for &p in &populations {
            for alpha in [0.25, 0.5, 0.75] {
                reconstruction = reconstruction.max(
                    photonic::reconstruction_deviation(f1, p, alpha).expect("valid inputs"),
                );
            }
        }
    }

    // the demonstration angle: a 1.25π rotation driven by plates at
    // 1.25π/2 and 1.25π/4
    let alpha_c = photonic::adiabat_angle(1.0, 1.5, std::f64::consts::PI).expect("positive");
    let rz_demo = photonic::phase_aligned_distance(
        &photonic::rz_waveplate_product(alpha_c),
        &photonic::jones_rz(alpha_c),
    );

    vec![
        SuiteResult {
            name: "waveplate_unitarity",
            max_deviation: unitarity,
        },
        SuiteResult {
            name: "rz_decomposition",
            max_deviation: rz.max(rz_demo),
        },
        SuiteResult {
            name: "table_rows_vs_kraus",
            max_deviation: rows,
        },
        SuiteResult {
            name: "reconstruction_grid",
            max_deviation: reconstruction,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_suites_pass_at_default_tolerance() {
        for suite in run_verify(25, 42) {
            assert!(
                suite.max_deviation < 1e-12,
                "{}: {}",
                suite.name,
                suite.max_deviation
            );
        }
    }

    #[test]
    fn photonic_suites_pass_at_default_tolerance() {
        for suite in run_photonic_check(10, 7) {
            assert!(
                suite.max_deviation < 1e-12,
                "{}: {}",
                suite.name,
                suite.max_deviation
            );
        }
    }
}
