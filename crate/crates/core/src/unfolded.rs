//! Controlled-SWAP realization of the switch of two constant channels: the
//! closed-form output, the four-register circuit that reproduces it in a
//! definite causal order, and the two-qubit conditional-swap formula.
//!
//! Circuit registers are ordered (E1, E2, T, C) with C least significant.
//! The closed form and all returned joint states use system ⊗ control
//! ordering (control least significant).

use num_complex::Complex64;

use crate::channels::make_constant;
use crate::error::{Error, Result};
use crate::ico::switch_kraus;
use crate::qmat::{
    kron, kron_all, measure_qubit_pm, partial_trace, permute_subsystems, ComplexMatrix,
    DensityMatrix, TOL_ALGEBRA, TOL_PROB,
};

/// Inputs for the constant-channel switch and its unfolded circuit:
/// the two prepared states τ1, τ2, the target state ρ and the control γ.
#[derive(Debug, Clone)]
pub struct UnfoldSetup {
    pub tau1: DensityMatrix,
    pub tau2: DensityMatrix,
    pub rho: DensityMatrix,
    pub gamma: DensityMatrix,
}

impl UnfoldSetup {
    pub fn new(
        tau1: DensityMatrix,
        tau2: DensityMatrix,
        rho: DensityMatrix,
        gamma: DensityMatrix,
    ) -> Result<Self> {
        for (name, m) in [("tau1", &tau1), ("tau2", &tau2), ("rho", &rho), ("gamma", &gamma)] {
            if m.dim() != 2 {
                return Err(Error::DimensionMismatch(format!(
                    "{name} must be a qubit state, got dim {}",
                    m.dim()
                )));
            }
        }
        Ok(Self {
            tau1,
            tau2,
            rho,
            gamma,
        })
    }
}

/// SWAP on two qubits.
pub fn swap_gate() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    m.set(0, 0, Complex64::ONE);
    m.set(1, 2, Complex64::ONE);
    m.set(2, 1, Complex64::ONE);
    m.set(3, 3, Complex64::ONE);
    m
}

/// Controlled SWAP on (a, b, ctrl) with ctrl least significant: |0⟩ acts as
/// identity, |1⟩ swaps the targets.
pub fn cswap_gate() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(8);
    for a in 0..2usize {
        for b in 0..2usize {
            for c in 0..2usize {
                let (aa, bb) = if c == 0 { (a, b) } else { (b, a) };
                m.set(aa * 4 + bb * 2 + c, a * 4 + b * 2 + c, Complex64::ONE);
            }
        }
    }
    m
}

/// Embeds `gate` (acting on the listed qubits, in that order) into an
/// n-qubit unitary. Qubits count from the most significant factor.
pub fn embed_gate(gate: &ComplexMatrix, qubits: &[usize], n_qubits: usize) -> ComplexMatrix {
    let total = 1usize << n_qubits;
    assert_eq!(gate.dim(), 1 << qubits.len());
    let mut out = ComplexMatrix::zeros(total);
    for idx in 0..total {
        let bit = |i: usize, q: usize| (i >> (n_qubits - 1 - q)) & 1;
        let mut sub_in = 0usize;
        for &q in qubits {
            sub_in = sub_in * 2 + bit(idx, q);
        }
        for sub_out in 0..gate.dim() {
            let amp = gate.get(sub_out, sub_in);
            if amp == Complex64::ZERO {
                continue;
            }
            let mut jdx = idx;
            let mut so = sub_out;
            for &q in qubits.iter().rev() {
                let mask = 1usize << (n_qubits - 1 - q);
                jdx = (jdx & !mask) | ((so & 1) << (n_qubits - 1 - q));
                so >>= 1;
            }
            out.set(jdx, idx, out.get(jdx, idx) + amp);
        }
    }
    out
}

/// The unfolded-circuit unitary on (E1, E2, T, C):
/// cSWAP(E1,E2;C), then SWAP(E1,E2), then cSWAP(E2,T;C).
pub fn unfolded_unitary() -> ComplexMatrix {
    let u1 = embed_gate(&cswap_gate(), &[0, 1, 3], 4);
    let u2 = embed_gate(&swap_gate(), &[0, 1], 4);
    let u3 = embed_gate(&cswap_gate(), &[1, 2, 3], 4);
    u3.matmul(&u2).matmul(&u1)
}

/// Output of the switch of two constant channels on ρ ⊗ γ, in closed form
/// (system ⊗ control):
///   c00 τ1⊗|0⟩⟨0| + c11 τ2⊗|1⟩⟨1| + c01 τ1ρτ2⊗|0⟩⟨1| + c10 τ2ρτ1⊗|1⟩⟨0|
/// with c_ij the entries of γ.
pub fn switch_constant_closed_form(setup: &UnfoldSetup) -> DensityMatrix {
    let t1 = setup.tau1.mat();
    let t2 = setup.tau2.mat();
    let r = setup.rho.mat();
    let g = setup.gamma.mat();
    let block = |i: usize, j: usize, m: &ComplexMatrix| {
        kron(m, &ComplexMatrix::ketbra(2, i, j, Complex64::ONE)).scale(g.get(i, j))
    };
    let out = block(0, 0, t1)
        .add(&block(1, 1, t2))
        .add(&block(0, 1, &t1.matmul(r).matmul(t2)))
        .add(&block(1, 0, &t2.matmul(r).matmul(t1)));
    DensityMatrix::new(out).expect("closed form preserves the density-matrix invariants")
}

/// Runs the four-register circuit with the registers loaded exactly as
/// given: E1←e1, E2←e2, T←t, C←c. Returns the E1 ⊗ C state after tracing
/// out E2 and T. With this raw loading the surviving branch for γ = |1⟩⟨1|
/// is e1, i.e. the roles of the two prepared states come out interchanged
/// relative to the constant-channel switch.
pub fn unfolded_circuit_raw(
    e1: &DensityMatrix,
    e2: &DensityMatrix,
    t: &DensityMatrix,
    c: &DensityMatrix,
) -> Result<DensityMatrix> {
    let init = kron_all(&[e1.mat(), e2.mat(), t.mat(), c.mat()]);
    let u = unfolded_unitary();
    let fin = u.sandwich(&init);
    let reduced = partial_trace(&fin, &[2, 2, 2, 2], &[0, 3])?;
    DensityMatrix::new(reduced)
}

/// Circuit route for the constant-channel switch: loads E1←τ2, E2←τ1 so the
/// output matches `switch_constant_closed_form` (the raw loading reproduces
/// it with τ1 ↔ τ2 interchanged).
pub fn unfolded_circuit(setup: &UnfoldSetup) -> Result<DensityMatrix> {
    unfolded_circuit_raw(&setup.tau2, &setup.tau1, &setup.rho, &setup.gamma)
}

/// Kraus route for the same map: the switch of the two constant channels
/// applied to γ ⊗ ρ, reordered to system ⊗ control.
pub fn switch_constant_kraus(setup: &UnfoldSetup) -> Result<DensityMatrix> {
    let c1 = make_constant(&setup.tau1)?;
    let c2 = make_constant(&setup.tau2)?;
    let w = switch_kraus(&c1, &c2)?;
    let joint = kron(setup.gamma.mat(), setup.rho.mat());
    let out = w.apply_raw(&joint)?;
    DensityMatrix::new(permute_subsystems(&out, &[2, 2], &[1, 0]))
}

/// Conditional outcome of the two-qubit conditional-swap protocol.
#[derive(Debug, Clone)]
pub struct CswapOutcome {
    pub rho_plus: Option<DensityMatrix>,
    pub rho_minus: Option<DensityMatrix>,
    pub p_plus: f64,
    pub p_minus: f64,
}

/// Coherently controlled swap of two thermal qubits, with the first state
/// also feeding the target register, so the conditional states obey
///   ρ± = (τ1 + τ2 ± τ1²τ2 ± τ2τ1²) / (2 (1 ± Tr[τ1²τ2])).
/// The circuit route (controlled-SWAP network, control measured in |±⟩,
/// second target discarded) and the closed form must agree within 1e-12.
pub fn cswap_two_qubit(tau1: &DensityMatrix, tau2: &DensityMatrix) -> Result<CswapOutcome> {
    let setup = UnfoldSetup::new(
        tau1.clone(),
        tau2.clone(),
        tau1.clone(),
        DensityMatrix::from_pure(&[
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ])?,
    )?;
    let joint = unfolded_circuit(&setup)?;

    let t1 = tau1.mat();
    let t2 = tau2.mat();
    let t1t1t2 = t1.matmul(t1).matmul(t2);
    let t2t1t1 = t2.matmul(t1).matmul(t1);
    let overlap = t1t1t2.trace().re;

    let branch = |plus: bool| -> Result<(f64, Option<DensityMatrix>)> {
        let sign = if plus { 1.0 } else { -1.0 };
        // circuit route: control is the least significant factor of `joint`
        let (p_circ, raw) = measure_qubit_pm(joint.mat(), 2, 1, plus);
        // closed form
        let p_closed = 0.5 * (1.0 + sign * overlap);
        if (p_circ - p_closed).abs() > TOL_ALGEBRA {
            return Err(Error::RouteMismatch((p_circ - p_closed).abs()));
        }
        if p_closed <= TOL_PROB {
            return Ok((p_closed, None));
        }
        let s = Complex64::new(sign, 0.0);
        let numer = t1.add(t2).add(&t1t1t2.scale(s)).add(&t2t1t1.scale(s));
        let closed = numer.scale(Complex64::new(1.0 / (2.0 * (1.0 + sign * overlap)), 0.0));
        let circ = raw.scale(Complex64::new(1.0 / p_circ, 0.0));
        let dev = circ.max_abs_diff(&closed);
        if dev > TOL_ALGEBRA {
            return Err(Error::RouteMismatch(dev));
        }
        Ok((p_closed, Some(DensityMatrix::new(closed)?)))
    };

    let (p_plus, rho_plus) = branch(true)?;
    let (p_minus, rho_minus) = branch(false)?;
    Ok(CswapOutcome {
        rho_plus,
        rho_minus,
        p_plus,
        p_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn plus_state() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::from_pure(&[c(s, 0.0), c(s, 0.0)]).unwrap()
    }

    fn random_setup(rng: &mut ChaCha8Rng) -> UnfoldSetup {
        UnfoldSetup::new(
            sampling::random_density(rng, 2),
            sampling::random_density(rng, 2),
            sampling::random_density(rng, 2),
            sampling::random_density(rng, 2),
        )
        .unwrap()
    }

    #[test]
    fn closed_form_definite_control() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let setup = UnfoldSetup::new(
            sampling::random_density(&mut rng, 2),
            sampling::random_density(&mut rng, 2),
            sampling::random_density(&mut rng, 2),
            DensityMatrix::thermal_qubit(1.0).unwrap(), // |0⟩⟨0|
        )
        .unwrap();
        let out = switch_constant_closed_form(&setup);
        let expect = kron(
            setup.tau1.mat(),
            &ComplexMatrix::ketbra(2, 0, 0, Complex64::ONE),
        );
        assert!(out.mat().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn closed_form_maximally_mixed_offdiagonal_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let rho = sampling::random_density(&mut rng, 2);
        let setup = UnfoldSetup::new(
            DensityMatrix::maximally_mixed(2),
            DensityMatrix::maximally_mixed(2),
            rho.clone(),
            plus_state(),
        )
        .unwrap();
        let out = switch_constant_closed_form(&setup);
        // block ⟨·,0|out|·,1⟩ should be ρ/8
        for i in 0..2 {
            for j in 0..2 {
                let got = out.mat().get(2 * i, 2 * j + 1);
                assert!((got - rho.mat().get(i, j) * c(0.125, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn closed_form_matches_kraus_switch() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let setup = UnfoldSetup::new(
                sampling::random_thermal_qubit(&mut rng),
                sampling::random_thermal_qubit(&mut rng),
                sampling::random_density(&mut rng, 2),
                plus_state(),
            )
            .unwrap();
            let a = switch_constant_closed_form(&setup);
            let b = switch_constant_kraus(&setup).unwrap();
            assert!(a.trace_distance(&b) < TOL_ALGEBRA);
        }
    }

    #[test]
    fn circuit_single_branch_control() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let mut setup = random_setup(&mut rng);
        setup.gamma = DensityMatrix::thermal_qubit(0.0).unwrap(); // |1⟩⟨1|
        let circ = unfolded_circuit(&setup).unwrap();
        let closed = switch_constant_closed_form(&setup);
        assert!(circ.trace_distance(&closed) < TOL_ALGEBRA);
        let expect = kron(
            setup.tau2.mat(),
            &ComplexMatrix::ketbra(2, 1, 1, Complex64::ONE),
        );
        assert!(circ.mat().max_abs_diff(&expect) < 1e-13);
    }

    #[test]
    fn circuit_matches_closed_form_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..50 {
            let setup = random_setup(&mut rng);
            let circ = unfolded_circuit(&setup).unwrap();
            let closed = switch_constant_closed_form(&setup);
            assert!(circ.trace_distance(&closed) < TOL_ALGEBRA);
        }
    }

    #[test]
    fn raw_circuit_matches_pure_state_expression() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..10 {
            let psi1 = sampling::random_pure(&mut rng, 2);
            let psi2 = sampling::random_pure(&mut rng, 2);
            let phi = sampling::random_pure(&mut rng, 2);
            let gam = sampling::random_pure(&mut rng, 2);
            let out = unfolded_circuit_raw(
                &DensityMatrix::from_pure(&psi1).unwrap(),
                &DensityMatrix::from_pure(&psi2).unwrap(),
                &DensityMatrix::from_pure(&phi).unwrap(),
                &DensityMatrix::from_pure(&gam).unwrap(),
            )
            .unwrap();

            let inner = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
                a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
            };
            let (c0, c1) = (gam[0], gam[1]);
            let term = |amp: Complex64, ket: &[Complex64], bra: &[Complex64], i: usize, j: usize| {
                kron(
                    &ComplexMatrix::outer(ket, bra),
                    &ComplexMatrix::ketbra(2, i, j, Complex64::ONE),
                )
                .scale(amp)
            };
            // |c0|²|ψ2⟩⟨ψ2|⊗|0⟩⟨0| + |c1|²|ψ1⟩⟨ψ1|⊗|1⟩⟨1|
            //   + c0 c̄1 ⟨φ|ψ1⟩⟨ψ2|φ⟩ |ψ2⟩⟨ψ1|⊗|0⟩⟨1| + h.c.
            let amp01 = c0 * c1.conj() * inner(&phi, &psi1) * inner(&psi2, &phi);
            let amp10 = c1 * c0.conj() * inner(&phi, &psi2) * inner(&psi1, &phi);
            let expect = term(c0 * c0.conj(), &psi2, &psi2, 0, 0)
                .add(&term(c1 * c1.conj(), &psi1, &psi1, 1, 1))
                .add(&term(amp01, &psi2, &psi1, 0, 1))
                .add(&term(amp10, &psi1, &psi2, 1, 0));
            assert!(out.mat().max_abs_diff(&expect) < 1e-13);
        }
    }

    #[test]
    fn cswap_equal_thermal_pair() {
        let tau = DensityMatrix::thermal_qubit(0.25).unwrap();
        let out = cswap_two_qubit(&tau, &tau).unwrap();
        let minus = out.rho_minus.unwrap();
        assert!((minus.mat().get(0, 0).re - 5.0 / 12.0).abs() < 1e-12);
        assert!((minus.mat().get(1, 1).re - 7.0 / 12.0).abs() < 1e-12);
        let plus = out.rho_plus.unwrap();
        assert!((plus.excited_population() - 17.0 / 92.0).abs() < 1e-12);
        assert!(plus.excited_population() < 0.25); // conditional cooling
    }

    #[test]
    fn cswap_maximally_mixed_fixed_point() {
        let mixed = DensityMatrix::maximally_mixed(2);
        let out = cswap_two_qubit(&mixed, &mixed).unwrap();
        for rho in [out.rho_plus.unwrap(), out.rho_minus.unwrap()] {
            assert!(rho.mat().max_abs_diff(mixed.mat()) < 1e-13);
        }
    }

    #[test]
    fn cswap_gibbs_preserving_for_diagonal_inputs() {
        // diagonal targets and a diagonal control are invariant under cSWAP
        let tau = DensityMatrix::thermal_qubit(0.25).unwrap();
        let gamma = DensityMatrix::thermal_qubit(0.35).unwrap();
        let state = kron_all(&[tau.mat(), tau.mat(), gamma.mat()]);
        let u = cswap_gate();
        assert!(u.sandwich(&state).max_abs_diff(&state) < 1e-15);
    }

    #[test]
    fn cswap_equal_temperature_population_bookkeeping() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..5 {
            let tau = sampling::random_thermal_qubit(&mut rng);
            let out = cswap_two_qubit(&tau, &tau).unwrap();
            let unconditional = out.p_plus * out.rho_plus.unwrap().excited_population()
                + out.p_minus * out.rho_minus.unwrap().excited_population();
            assert!((unconditional - tau.excited_population()).abs() < 1e-12);
        }
    }

    #[test]
    fn cswap_population_moves_toward_half_on_minus() {
        for f in [0.1, 0.25, 0.4] {
            let tau = DensityMatrix::thermal_qubit(f).unwrap();
            let out = cswap_two_qubit(&tau, &tau).unwrap();
            let fm = out.rho_minus.unwrap().excited_population();
            assert!(fm > f && fm < 0.5, "f={f}, fm={fm}");
            assert!((fm - (1.0 + f) / 3.0).abs() < 1e-12);
        }
    }
}
