//! Heat bookkeeping for the switch outcomes, the closed-form thresholds that
//! bound the anomalous-flow windows, and the temperature-sweep engine.
//!
//! Sign convention: positive heat is energy flowing into the system.
//! Units: ħ = k_B = 1, temperatures in units of the system gap.

use crate::error::{Error, Result};
use crate::ico::{self, ControlState, SwitchOutcome};
use crate::qmat::TOL_PROB;

/// Heat record at one channel temperature: ΔQ± = P± ω (f± − f1).
#[derive(Debug, Clone, Copy)]
pub struct HeatRecord {
    pub te_over_ts: f64,
    pub p_plus: f64,
    pub p_minus: f64,
    pub dq_plus: f64,
    pub dq_minus: f64,
    pub f_plus: f64,
    pub f_minus: f64,
}

/// Builds the heat record for a switch outcome. With H = (ω/2)σ_z the two
/// levels differ by ω, so a population shift f± − f1 carries heat ω per unit.
/// An impossible outcome contributes zero heat.
pub fn heat_exchange(outcome: &SwitchOutcome, f1: f64, omega: f64, te_over_ts: f64) -> HeatRecord {
    let dq = |p: f64, f: f64| {
        if p > TOL_PROB {
            p * omega * (f - f1)
        } else {
            0.0
        }
    };
    HeatRecord {
        te_over_ts,
        p_plus: outcome.p_plus,
        p_minus: outcome.p_minus,
        dq_plus: dq(outcome.p_plus, outcome.f_plus),
        dq_minus: dq(outcome.p_minus, outcome.f_minus),
        f_plus: outcome.f_plus,
        f_minus: outcome.f_minus,
    }
}

/// Thermal population f = 1/(1 + e^{ω/T}).
pub fn thermal_population(omega: f64, temperature: f64) -> f64 {
    1.0 / (1.0 + (omega / temperature).exp())
}

/// Minimal channel temperature for conditional heating of a hotter system:
/// T_E > T_S/2.
pub fn heating_threshold(omega: f64, t_s: f64) -> Result<f64> {
    if !(omega > 0.0) || !(t_s > 0.0) {
        return Err(Error::OutOfRange(format!(
            "omega={omega}, t_s={t_s} must be positive"
        )));
    }
    Ok(t_s / 2.0)
}

/// Population form of the heating condition: f− > f1 iff
/// f2 > f1² / (1 − 2 f1 + 2 f1²).
pub fn heated_via_inequality(f1: f64, f2: f64) -> bool {
    f2 > f1 * f1 / (1.0 - 2.0 * f1 + 2.0 * f1 * f1)
}

/// Maximal channel temperature for conditional cooling of a colder system:
/// T_E < ω / (2 artanh(sinh(ω/T_S) / (cosh(ω/T_S) + 2))).
pub fn cooling_threshold(omega: f64, t_s: f64) -> Result<f64> {
    if !(omega > 0.0) || !(t_s > 0.0) {
        return Err(Error::OutOfRange(format!(
            "omega={omega}, t_s={t_s} must be positive"
        )));
    }
    let x = omega / t_s;
    Ok(omega / (2.0 * (x.sinh() / (x.cosh() + 2.0)).atanh()))
}

/// Population form of the cooling condition: f+ < f1 iff
/// f2 < 1 + (1 − f1²) / (−1 − 2 f1 + 2 f1²).
pub fn cooled_via_inequality(f1: f64, f2: f64) -> bool {
    f2 < 1.0 + (1.0 - f1 * f1) / (-1.0 - 2.0 * f1 + 2.0 * f1 * f1)
}

/// Which process drives the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Quantum switch (indefinite order), measured control.
    Ico,
    /// Definite order, control fixed at |0⟩_c.
    Classical,
    /// Coherent control of the channel choice.
    Coherent,
}

/// Uniform grid of `steps` points on [min, max], endpoints included.
pub fn uniform_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let h = (max - min) / (steps - 1) as f64;
            (0..steps).map(|i| min + h * i as f64).collect()
        }
    }
}

/// One heat record per channel temperature in `te_grid` (absolute units),
/// for a system thermal at (ω, T_S).
pub fn sweep_heat(
    t_s: f64,
    omega: f64,
    alpha: f64,
    te_grid: &[f64],
    mode: SweepMode,
) -> Result<Vec<HeatRecord>> {
    if !(t_s > 0.0) || !(omega > 0.0) {
        return Err(Error::OutOfRange(format!(
            "t_s={t_s}, omega={omega} must be positive"
        )));
    }
    if te_grid.is_empty()
        || te_grid[0] <= 0.0
        || te_grid.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::OutOfRange(
            "temperature grid must be strictly increasing and positive".into(),
        ));
    }
    let ctrl = ControlState::new(alpha)?;
    let f1 = thermal_population(omega, t_s);
    let mut records = Vec::with_capacity(te_grid.len());
    for &te in te_grid {
        let p = thermal_population(omega, te);
        let outcome = match mode {
            SweepMode::Ico => ico::run_switch(f1, &ctrl, p)?,
            SweepMode::Classical => ico::classical_collapse(p)?,
            SweepMode::Coherent => ico::coherent_control(f1, &ctrl, p)?,
        };
        records.push(heat_exchange(&outcome, f1, omega, te / t_s));
    }
    Ok(records)
}
