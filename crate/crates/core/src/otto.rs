//! Four-stroke Otto cycle whose heat-absorption stroke is driven by the
//! switch with a measured control: adiabatic compression, conditional
//! thermalization repeated until the |−⟩ outcome, adiabatic expansion,
//! reset against the hot channel, and the Landauer cost of erasing the
//! measurement record.

use crate::error::{Error, Result};
use crate::ico::{self, ControlState};
use crate::qmat::TOL_PROB;
use crate::thermo::thermal_population;

/// Cycle parameters. The working qubit has H(t) = ω(t) σ_z/2 alternating
/// between ω1 and ω2; the cold contact runs at T2, the reset contact at T4,
/// and the demon's memory is erased against a reservoir at `t_r`.
#[derive(Debug, Clone, Copy)]
pub struct OttoConfig {
    pub omega1: f64,
    pub omega2: f64,
    pub t2: f64,
    pub t4: f64,
    pub t_r: f64,
    pub alpha: f64,
}

impl OttoConfig {
    pub fn new(omega1: f64, omega2: f64, t2: f64, t4: f64, t_r: f64, alpha: f64) -> Result<Self> {
        if !(omega1 > 0.0) || omega2 < omega1 {
            return Err(Error::OutOfRange(format!(
                "need omega2 >= omega1 > 0, got omega1={omega1}, omega2={omega2}"
            )));
        }
        if !(t2 > 0.0) || t4 < t2 {
            return Err(Error::OutOfRange(format!(
                "need 0 < t2 <= t4, got t2={t2}, t4={t4}"
            )));
        }
        if !(t_r > 0.0) {
            return Err(Error::OutOfRange(format!("t_r={t_r} must be positive")));
        }
        ControlState::new(alpha)?;
        Ok(Self {
            omega1,
            omega2,
            t2,
            t4,
            t_r,
            alpha,
        })
    }
}

/// Per-cycle energy ledger. Work/heat are positive when energy flows into
/// the system. `reset_heat_expected` and `expected_attempts` account for
/// the repeat-until-success conditioning; they are diagnostics and do not
/// enter the COP.
#[derive(Debug, Clone, Copy)]
pub struct OttoReport {
    pub ratio: f64,
    pub w1: f64,
    pub q2: f64,
    pub w3: f64,
    pub q4: f64,
    pub w_net: f64,
    pub p_minus: f64,
    pub f_minus: f64,
    pub delta_s: f64,
    pub w_era: f64,
    pub cop: f64,
    pub expected_attempts: f64,
    pub reset_heat_expected: f64,
}

/// Shannon entropy of a binary outcome, in nats.
pub fn shannon_binary(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Mean number of repetitions until the |−⟩ outcome (geometric law).
pub fn expected_attempts(p_minus: f64) -> Result<f64> {
    if !(p_minus > 0.0 && p_minus <= 1.0) {
        return Err(Error::OutOfRange(format!(
            "p_minus={p_minus} not in (0,1]"
        )));
    }
    Ok(1.0 / p_minus)
}

/// Runs one cycle.
///
/// Stroke I:   ω1 → ω2 on the thermal state at (ω1, T4), population f1
///             unchanged, W_I = (ω2−ω1)(f1 − 1/2).
/// Stroke II:  switch of two thermalizing channels at (ω2, T2), conditioned
///             on |−⟩_c; Q_II = ω2 (f− − f1).
/// Stroke III: ω2 → ω1, W_III = (ω1−ω2)(f− − 1/2).
/// Stroke IV:  reset to the (ω1, T4) thermal state, Q_IV = ω1 (f1 − f−).
/// Erasure:    W_era = t_r · ΔS with ΔS the Shannon entropy of (P+, P−).
/// COP = (Q_II + |W|) / (W_era / P−) with W = W_I + W_III.
pub fn run_cycle(cfg: &OttoConfig) -> Result<OttoReport> {
    let ctrl = ControlState::new(cfg.alpha)?;
    let f1 = thermal_population(cfg.omega1, cfg.t4);
    let f2 = thermal_population(cfg.omega2, cfg.t2);
    let outcome = ico::run_switch(f1, &ctrl, f2)?;
    if outcome.p_minus <= TOL_PROB || outcome.rho_minus.is_none() {
        return Err(Error::ImpossibleOutcome(outcome.p_minus));
    }
    let f_minus = outcome.f_minus;
    let p_minus = outcome.p_minus;

    let w1 = (cfg.omega2 - cfg.omega1) * (f1 - 0.5);
    let q2 = cfg.omega2 * (f_minus - f1);
    let w3 = (cfg.omega1 - cfg.omega2) * (f_minus - 0.5);
    let q4 = cfg.omega1 * (f1 - f_minus);
    let w_net = w1 + w3;

    let delta_s = shannon_binary(p_minus);
    let w_era = cfg.t_r * delta_s;
    let cop = (q2 + w_net.abs()) / (w_era / p_minus);

    // failed attempts leave the system in ρ+; the auxiliary contact at T1
    // restores population f1 before the next try
    let attempts = 1.0 / p_minus;
    let failures = (1.0 - p_minus) / p_minus;
    let reset_heat_expected = failures * cfg.omega2 * (f1 - outcome.f_plus);

    Ok(OttoReport {
        ratio: cfg.omega2 / cfg.omega1,
        w1,
        q2,
        w3,
        q4,
        w_net,
        p_minus,
        f_minus,
        delta_s,
        w_era,
        cop,
        expected_attempts: attempts,
        reset_heat_expected,
    })
}

/// One report per frequency ratio, ω2 = ratio · ω1. Ratios where the |−⟩
/// outcome is impossible surface as errors for the caller to report.
pub fn sweep_ratio(cfg_base: &OttoConfig, ratio_grid: &[f64]) -> Result<Vec<Result<OttoReport>>> {
    if ratio_grid.is_empty() || ratio_grid.iter().any(|&r| r < 1.0) {
        return Err(Error::OutOfRange(
            "ratio grid must be nonempty with every ratio >= 1".into(),
        ));
    }
    Ok(ratio_grid
        .iter()
        .map(|&ratio| {
            let cfg = OttoConfig {
                omega2: ratio * cfg_base.omega1,
                ..*cfg_base
            };
            run_cycle(&cfg)
        })
        .collect())
}
