//! Qubit channels in Kraus form: generalized amplitude damping, the
//! thermalizing channel it reduces to at full interaction strength, and
//! constant channels that prepare a fixed output state.
//!
//! Basis convention throughout: index 0 = |e⟩, index 1 = |g⟩, so a thermal
//! state with excited population f is diag(f, 1-f).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmat::{apply_kraus, ComplexMatrix, DensityMatrix, TOL_ALGEBRA};

/// A CPTP map as a finite list of Kraus operators.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    ops: Vec<ComplexMatrix>,
    label: String,
}

/// Result of a completeness check: max entrywise |ΣK†K − I| and whether it
/// passes the 1e-12 gate.
#[derive(Debug, Clone, Copy)]
pub struct CptpCheck {
    pub max_deviation: f64,
    pub passes: bool,
}

/// Max entrywise |Σ K†K − I|. An empty list reports deviation 1 (Σ = 0).
pub fn validate_cptp(ops: &[ComplexMatrix]) -> CptpCheck {
    let Some(first) = ops.first() else {
        return CptpCheck {
            max_deviation: 1.0,
            passes: false,
        };
    };
    let dim = first.dim();
    let mut sum = ComplexMatrix::zeros(dim);
    for k in ops {
        sum = sum.add(&k.adjoint().matmul(k));
    }
    let dev = sum.max_abs_diff(&ComplexMatrix::identity(dim));
    CptpCheck {
        max_deviation: dev,
        passes: dev <= TOL_ALGEBRA,
    }
}

impl KrausChannel {
    /// Builds a channel, enforcing the completeness invariant Σ K†K = I.
    pub fn new(ops: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if let Some(first) = ops.first() {
            let dim = first.dim();
            if ops.iter().any(|k| k.dim() != dim) {
                return Err(Error::DimensionMismatch(format!(
                    "channel '{label}' mixes operator dimensions"
                )));
            }
        }
        let check = validate_cptp(&ops);
        if !check.passes {
            return Err(Error::NotCptp(check.max_deviation));
        }
        Ok(Self { ops, label })
    }

    /// Builds a channel without the completeness check; for deliberately
    /// non-trace-preserving operator sets (e.g. feeding `validate_cptp`).
    pub fn from_ops_unchecked(ops: Vec<ComplexMatrix>, label: impl Into<String>) -> Self {
        Self {
            ops,
            label: label.into(),
        }
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.ops.first().map_or(0, |k| k.dim())
    }

    pub fn validate(&self) -> CptpCheck {
        validate_cptp(&self.ops)
    }

    /// ρ ↦ Σ K ρ K†, revalidated as a density matrix.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        DensityMatrix::new(apply_kraus(&self.ops, rho.mat())?)
    }

    /// Same map on a raw matrix, without density-matrix validation.
    pub fn apply_raw(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        apply_kraus(&self.ops, m)
    }
}

/// Transition frequency and bath temperature (ħ = k_B = 1).
#[derive(Debug, Clone, Copy)]
pub struct ThermalParams {
    pub omega: f64,
    pub temperature: f64,
}

impl ThermalParams {
    pub fn new(omega: f64, temperature: f64) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::OutOfRange(format!("omega {omega} must be > 0")));
        }
        if !(temperature >= 0.0) {
            return Err(Error::OutOfRange(format!(
                "temperature {temperature} must be >= 0"
            )));
        }
        Ok(Self { omega, temperature })
    }

    /// Thermal excited-state population f = 1/(1 + e^{ω/T}) ∈ [0, 1/2].
    pub fn excited_population(&self) -> f64 {
        1.0 / (1.0 + (self.omega / self.temperature).exp())
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Generalized amplitude damping with excitation probability `p` and
/// interaction strength `r`, in the ordered basis (|e⟩, |g⟩):
///   E0 = √p (|e⟩⟨e| + √(1−r)|g⟩⟨g|),   E1 = √(pr) |e⟩⟨g|,
///   E2 = √(1−p)(√(1−r)|e⟩⟨e| + |g⟩⟨g|), E3 = √((1−p)r) |g⟩⟨e|.
pub fn make_gad(p: f64, r: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&r) {
        return Err(Error::OutOfRange(format!(
            "GAD parameters p={p}, r={r} must lie in [0,1]"
        )));
    }
    let sp = p.sqrt();
    let sq = (1.0 - p).sqrt();
    let sr = r.sqrt();
    let s1r = (1.0 - r).sqrt();
    let e0 = ComplexMatrix::diagonal(&[re(sp), re(sp * s1r)]);
    let e1 = ComplexMatrix::ketbra(2, 0, 1, re(sp * sr));
    let e2 = ComplexMatrix::diagonal(&[re(sq * s1r), re(sq)]);
    let e3 = ComplexMatrix::ketbra(2, 1, 0, re(sq * sr));
    KrausChannel::new(vec![e0, e1, e2, e3], format!("gad(p={p}, r={r})"))
}

/// Thermalizing channel with raw excited-population parameter `p`; sends
/// every input to diag(p, 1−p). Values p > 1/2 (negative temperature) are
/// permitted for tomography-replication runs.
pub fn make_thermalizing_p(p: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("population p={p} not in [0,1]")));
    }
    let sp = p.sqrt();
    let sq = (1.0 - p).sqrt();
    let k0 = ComplexMatrix::ketbra(2, 0, 0, re(sp));
    let k1 = ComplexMatrix::ketbra(2, 0, 1, re(sp));
    let k2 = ComplexMatrix::ketbra(2, 1, 1, re(sq));
    let k3 = ComplexMatrix::ketbra(2, 1, 0, re(sq));
    KrausChannel::new(vec![k0, k1, k2, k3], format!("thermalizing(p={p})"))
}

/// Thermalizing channel at temperature T for gap ω: p = 1/(1 + e^{ω/T}).
pub fn make_thermalizing(params: &ThermalParams) -> Result<KrausChannel> {
    make_thermalizing_p(params.excited_population())
}

/// Constant channel preparing `tau` for every input, with Kraus operators
/// √τ |m⟩⟨n| over the computational basis.
pub fn make_constant(tau: &DensityMatrix) -> Result<KrausChannel> {
    if tau.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "constant channel expects a qubit state, got dim {}",
            tau.dim()
        )));
    }
    let root = tau.mat().sqrt_psd()?;
    let mut ops = Vec::with_capacity(4);
    for m in 0..2 {
        for n in 0..2 {
            // √τ|m⟩⟨n|: column n holds column m of √τ
            let mut op = ComplexMatrix::zeros(2);
            for i in 0..2 {
                op.set(i, n, root.get(i, m));
            }
            ops.push(op);
        }
    }
    KrausChannel::new(ops, "constant")
}
