//! Jones-calculus layer of the experiment: wave-plate matrices, the
//! R_Z decomposition used for the adiabatic strokes, thermal-state
//! preparation angles, the Kraus↔HWP-angle table, and the 16-run
//! decomposed reconstruction of the switch output.
//!
//! Polarization convention: |H⟩ = |e⟩ = index 0, |V⟩ = |g⟩ = index 1.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ico::{self, ControlState, SwitchOutcome};
use crate::qmat::{kron, measure_qubit_pm, ComplexMatrix, DensityMatrix, TOL_ALGEBRA};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WavePlateKind {
    Hwp,
    Qwp,
}

/// A wave plate with its fast axis rotated by `theta`.
#[derive(Debug, Clone, Copy)]
pub struct WavePlateSetting {
    pub kind: WavePlateKind,
    pub theta: f64,
}

impl WavePlateSetting {
    pub fn matrix(&self) -> ComplexMatrix {
        match self.kind {
            WavePlateKind::Hwp => hwp(self.theta),
            WavePlateKind::Qwp => qwp(self.theta),
        }
    }
}

/// HWP@θ = [[cos2θ, sin2θ], [sin2θ, −cos2θ]].
pub fn hwp(theta: f64) -> ComplexMatrix {
    let (s, c) = (2.0 * theta).sin_cos();
    ComplexMatrix::from_real(2, &[c, s, s, -c]).expect("2x2")
}

/// QWP@θ = [[cos²θ + i sin²θ, (1−i) sinθ cosθ], [(1−i) sinθ cosθ, sin²θ + i cos²θ]].
pub fn qwp(theta: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let off = Complex64::new(s * c, -s * c);
    ComplexMatrix::from_slice(
        2,
        &[
            Complex64::new(c2, s2),
            off,
            off,
            Complex64::new(s2, c2),
        ],
    )
    .expect("2x2")
}

/// R_Z(α) = diag(e^{−iα/2}, e^{iα/2}).
pub fn jones_rz(alpha: f64) -> ComplexMatrix {
    ComplexMatrix::diagonal(&[
        Complex64::from_polar(1.0, -alpha / 2.0),
        Complex64::from_polar(1.0, alpha / 2.0),
    ])
}

/// QWP@π/4 · HWP@α/2 · HWP@α/4 · QWP@−π/4, which equals R_Z(α) up to a
/// constant global phase.
pub fn rz_waveplate_product(alpha: f64) -> ComplexMatrix {
    use std::f64::consts::FRAC_PI_4;
    qwp(FRAC_PI_4)
        .matmul(&hwp(alpha / 2.0))
        .matmul(&hwp(alpha / 4.0))
        .matmul(&qwp(-FRAC_PI_4))
}

/// Largest entrywise |a·e^{−iφ} − b| after aligning the global phase φ
/// that maximizes overlap. Falls back to a plain comparison when the
/// overlap vanishes.
pub fn phase_aligned_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let overlap = b.adjoint().matmul(a).trace();
    if overlap.norm() < 1e-14 {
        return a.max_abs_diff(b);
    }
    let phase = overlap / overlap.norm();
    a.scale(phase.conj()).max_abs_diff(b)
}

/// Jones rotation angle simulating an adiabatic stroke that ramps the gap
/// between ω1 and ω2 over duration τ: α = (ω1 + ω2) τ / 2.
pub fn adiabat_angle(omega1: f64, omega2: f64, tau: f64) -> Result<f64> {
    if !(omega1 > 0.0) || !(omega2 > 0.0) || !(tau > 0.0) {
        return Err(Error::OutOfRange(format!(
            "omega1={omega1}, omega2={omega2}, tau={tau} must be positive"
        )));
    }
    Ok((omega1 + omega2) * tau / 2.0)
}

/// HWP angle preparing excited population f1 = cos²2θ, on the branch
/// θ ∈ [0, π/4].
pub fn prep_angle(f1: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&f1) {
        return Err(Error::OutOfRange(format!("population {f1} not in [0,1]")));
    }
    Ok(0.5 * f1.sqrt().acos())
}

/// Which post-processing weight a decomposed run carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchWeight {
    /// √p amplitude: weight p.
    Excitation,
    /// √(1−p) amplitude: weight 1−p.
    Relaxation,
}

impl BranchWeight {
    pub fn value(&self, p: f64) -> f64 {
        match self {
            BranchWeight::Excitation => p,
            BranchWeight::Relaxation => 1.0 - p,
        }
    }
}

/// One row of the Kraus↔HWP-angle correspondence: the four plate angles
/// (HWP1..HWP4) realizing one unweighted thermalizing-channel operator.
#[derive(Debug, Clone, Copy)]
pub struct KrausAngleRow {
    pub kraus_index: usize,
    pub angles: [f64; 4],
    pub weight: BranchWeight,
}

/// The four rows of the angle table.
pub fn kraus_angle_table() -> [KrausAngleRow; 4] {
    use std::f64::consts::FRAC_PI_4 as Q;
    [
        KrausAngleRow {
            kraus_index: 0,
            angles: [0.0, 0.0, Q, 0.0],
            weight: BranchWeight::Excitation,
        },
        KrausAngleRow {
            kraus_index: 1,
            angles: [Q, 0.0, Q, 0.0],
            weight: BranchWeight::Excitation,
        },
        KrausAngleRow {
            kraus_index: 2,
            angles: [0.0, Q, 0.0, 0.0],
            weight: BranchWeight::Relaxation,
        },
        KrausAngleRow {
            kraus_index: 3,
            angles: [Q, Q, 0.0, 0.0],
            weight: BranchWeight::Relaxation,
        },
    ]
}

/// Net operator a Table row implements. The interferometer is modeled as
/// HWP1, HWP2 on the input, the polarizing splitter keeping the H component
/// with the folded path re-entering the output plates in the V mode, then
/// HWP3, HWP4:  K ∝ HWP4 · HWP3 · |V⟩⟨H| · HWP2 · HWP1.
/// The result is the row's unweighted Kraus operator up to a sign, which
/// cancels in every sandwich K ρ K†.
pub fn row_operator(row: &KrausAngleRow) -> ComplexMatrix {
    let [t1, t2, t3, t4] = row.angles;
    let selector = ComplexMatrix::ketbra(2, 1, 0, Complex64::ONE);
    hwp(t4)
        .matmul(&hwp(t3))
        .matmul(&selector)
        .matmul(&hwp(t2))
        .matmul(&hwp(t1))
}

/// Joint switch operator of one decomposed run: the (i, j) branch built
/// from the unweighted row operators,
///   W̃_ij = |0⟩⟨0|_c ⊗ A_i A_j + |1⟩⟨1|_c ⊗ A_j A_i.
pub fn branch_operator(i: usize, j: usize) -> ComplexMatrix {
    let table = kraus_angle_table();
    let a_i = row_operator(&table[i]);
    let a_j = row_operator(&table[j]);
    let p0 = ComplexMatrix::ketbra(2, 0, 0, Complex64::ONE);
    let p1 = ComplexMatrix::ketbra(2, 1, 1, Complex64::ONE);
    kron(&p0, &a_i.matmul(&a_j)).add(&kron(&p1, &a_j.matmul(&a_i)))
}

fn reconstruct_summed_state(f1: f64, p: f64, ctrl: &ControlState) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("population p={p} not in [0,1]")));
    }
    let rho_s = DensityMatrix::thermal_qubit(f1)?;
    let joint_in = kron(ctrl.density().mat(), rho_s.mat());
    let table = kraus_angle_table();
    let mut summed = ComplexMatrix::zeros(4);
    for (i, row_i) in table.iter().enumerate() {
        for (j, row_j) in table.iter().enumerate() {
            let weight = row_i.weight.value(p) * row_j.weight.value(p);
            if weight == 0.0 {
                continue;
            }
            let evolved = branch_operator(i, j).sandwich(&joint_in);
            summed = summed.add(&evolved.scale(Complex64::new(weight, 0.0)));
        }
    }
    Ok(summed)
}

/// Max deviation between the 16-run reconstruction and `ico::run_switch`
/// over probabilities and conditional states at one parameter point.
pub fn reconstruction_deviation(f1: f64, p: f64, alpha: f64) -> Result<f64> {
    let ctrl = ControlState::new(alpha)?;
    let summed = reconstruct_summed_state(f1, p, &ctrl)?;
    let reference = ico::run_switch(f1, &ctrl, p)?;
    let mut dev = 0.0f64;
    for (plus, p_ref, rho_ref) in [
        (true, reference.p_plus, &reference.rho_plus),
        (false, reference.p_minus, &reference.rho_minus),
    ] {
        let (prob, raw) = measure_qubit_pm(&summed, 2, 0, plus);
        dev = dev.max((prob - p_ref).abs());
        if let Some(r) = rho_ref {
            dev = dev.max(
                raw.scale(Complex64::new(1.0 / prob, 0.0))
                    .max_abs_diff(r.mat()),
            );
        }
    }
    Ok(dev)
}

/// Reconstructs the switch output the way the decomposed experiment does:
/// each of the 16 (i, j) branches is evolved independently with unweighted
/// plate-angle operators, weighted by its p/(1−p) monomial in
/// post-processing, summed, and the control projected onto |±⟩. The result
/// must match `ico::run_switch` within 1e-12.
pub fn reconstruct_switch_state(f1: f64, p: f64, alpha: f64) -> Result<SwitchOutcome> {
    let dev = reconstruction_deviation(f1, p, alpha)?;
    if dev > TOL_ALGEBRA {
        return Err(Error::RouteMismatch(dev));
    }
    let ctrl = ControlState::new(alpha)?;
    let summed = reconstruct_summed_state(f1, p, &ctrl)?;
    let extract = |plus: bool| -> Result<(f64, Option<DensityMatrix>, f64)> {
        let (prob, raw) = measure_qubit_pm(&summed, 2, 0, plus);
        if prob <= crate::qmat::TOL_PROB {
            return Ok((prob, None, f64::NAN));
        }
        let rho = DensityMatrix::new(raw.scale(Complex64::new(1.0 / prob, 0.0)))?;
        let f = rho.excited_population();
        Ok((prob, Some(rho), f))
    };
    let (p_plus, rho_plus, f_plus) = extract(true)?;
    let (p_minus, rho_minus, f_minus) = extract(false)?;
    Ok(SwitchOutcome {
        rho_plus,
        rho_minus,
        p_plus,
        p_minus,
        f_plus,
        f_minus,
    })
}
