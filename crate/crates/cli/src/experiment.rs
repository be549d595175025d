use std::f64::consts::PI;

use rabiqed_core::checks::{self, Check};
use rabiqed_core::exec::Execution;
use rabiqed_core::jaynes_cummings::{build_jc, compare_rwa, excitation_number_drift_with, Dynamics};
use rabiqed_core::photon::{
    build_mode, coupling_from_frequency, coupling_from_intensity, full_transition_probabilities, total_hamiltonian,
    HybridState, Spin,
};
use rabiqed_core::semiclassical::{
    exact_transition_probability, propagate_spin_with, rabi_frequency, resonance_sweep_with, transition_probability,
    FieldConfig, SpinorState,
};

use crate::config::{Experiment, RunConfig, TimeGrid};
use crate::error::{CliError, Result};
use crate::output::{format_real, ResultTable};

/// Default integration step relative to the generalized Rabi period.
const DT_PER_RABI: f64 = 1e-3;

fn ctx(exp: Experiment) -> impl Fn(rabiqed_core::Error) -> CliError {
    move |source| CliError::Run {
        experiment: exp.name(),
        source,
    }
}

fn field(cfg: &RunConfig) -> Result<FieldConfig> {
    let p = &cfg.physics;
    let mut f = FieldConfig::circular(p.b.unwrap_or(0.0), p.b3.unwrap_or(0.0), p.omega.unwrap_or(0.0))
        .map_err(ctx(cfg.experiment))?;
    f.mu = p.mu;
    Ok(f)
}

fn grid(cfg: &RunConfig) -> Result<&TimeGrid> {
    cfg.grid.as_ref().ok_or(CliError::Missing {
        key: "grid.t_end",
        experiment: cfg.experiment.name(),
    })
}

/// Runs the configured experiment. Sweep points are evaluated with `exec`;
/// row order always follows the input grid.
pub fn run_experiment(cfg: &RunConfig, exec: Execution) -> Result<ResultTable> {
    let mut table = match cfg.experiment {
        Experiment::Semiclassical => semiclassical(cfg)?,
        Experiment::ResonanceSweep => resonance(cfg, exec)?,
        Experiment::QuantumRabi => quantum_rabi(cfg, exec)?,
        Experiment::JcCompare => jc_compare(cfg, exec)?,
        Experiment::FermionCheck => check_table(checks::fermion_checks().map_err(ctx(cfg.experiment))?)?,
    };
    table.set_meta("rabiqed_version", env!("CARGO_PKG_VERSION"));
    table.set_meta("experiment", cfg.experiment);
    for (k, v) in &cfg.entries {
        table.set_meta(format!("config.{k}"), v);
    }
    Ok(table)
}

fn semiclassical(cfg: &RunConfig) -> Result<ResultTable> {
    let exp = cfg.experiment;
    let f = field(cfg)?;
    let g = grid(cfg)?;
    let times = g.times();
    let rabi = rabi_frequency(&f);
    let dt_max = g
        .dt_max
        .unwrap_or(if rabi > 0.0 { DT_PER_RABI / rabi } else { DT_PER_RABI });

    // The spin starts in |−⟩ at t = 0, which may precede the first sample.
    let offset = usize::from(times[0] > 0.0);
    let mut path = Vec::with_capacity(times.len() + offset);
    if offset == 1 {
        path.push(0.0);
    }
    path.extend_from_slice(&times);
    let traj = propagate_spin_with(&f, SpinorState::minus(), &path, dt_max, g.integrator).map_err(ctx(exp))?;

    let mut table = ResultTable::new(["t", "P_exact", "P_numeric", "abs_err"]);
    table.set_meta("resolved.dt_max", format_real(dt_max));
    table.set_meta("resolved.integrator", format!("{:?}", g.integrator).to_lowercase());
    for (t, p) in times.iter().zip(&traj.transition_prob[offset..]) {
        let exact = exact_transition_probability(&f, *t).map_err(ctx(exp))?;
        table.push(vec![(*t).into(), exact.into(), (*p).into(), (exact - p).abs().into()])?;
    }
    Ok(table)
}

fn resonance(cfg: &RunConfig, exec: Execution) -> Result<ResultTable> {
    let sweep = cfg.sweep.as_ref().ok_or(CliError::Missing {
        key: "sweep.omega",
        experiment: cfg.experiment.name(),
    })?;
    let f = field(cfg)?;
    let horizon = sweep.horizon.unwrap_or(PI / f.amplitude);
    let points = resonance_sweep_with(&f, &sweep.omega_grid, horizon, exec).map_err(ctx(cfg.experiment))?;
    let mut table = ResultTable::new(["omega", "P_max"]);
    table.set_meta("resolved.horizon", format_real(horizon));
    for p in points {
        table.push(vec![p.omega.into(), p.peak.into()])?;
    }
    Ok(table)
}

fn quantum_rabi(cfg: &RunConfig, exec: Execution) -> Result<ResultTable> {
    let exp = cfg.experiment;
    let p = &cfg.physics;
    let (b, b3, w) = (p.b.unwrap_or(0.0), p.b3.unwrap_or(0.0), p.omega.unwrap_or(0.0));
    let n_max = p.n_max.unwrap_or(0);
    let coupling = p.rabi.unwrap_or_else(|| coupling_from_intensity(b, p.n));
    let mode = build_mode(n_max, w).map_err(ctx(exp))?;
    let model = total_hamiltonian(&mode, b3, coupling);
    let delta = model.detuning();
    let times = grid(cfg)?.times();
    let quantum = full_transition_probabilities(&model, p.n, &times, exec).map_err(ctx(exp))?;

    let mut table = ResultTable::new(["t", "P_quantum", "P_classical", "diff"]);
    table.set_meta("resolved.Omega", format_real(coupling));
    table.set_meta("resolved.detuning", format_real(delta));
    for (t, q) in times.iter().zip(quantum) {
        let c = transition_probability(b, delta, *t);
        table.push(vec![(*t).into(), q.into(), c.into(), (q - c).abs().into()])?;
    }
    Ok(table)
}

fn jc_compare(cfg: &RunConfig, exec: Execution) -> Result<ResultTable> {
    let exp = cfg.experiment;
    let p = &cfg.physics;
    let w = p.omega.unwrap_or(0.0);
    let mode = build_mode(p.n_max.unwrap_or(0), w).map_err(ctx(exp))?;
    let g = p.g.unwrap_or_else(|| coupling_from_frequency(p.mu, w));
    let jc = build_jc(&mode, p.b3.unwrap_or(0.0), g);
    let psi0 = HybridState::basis(Spin::Down, p.n, mode.dim()).map_err(ctx(exp))?;
    let times = grid(cfg)?.times();
    let cmp = compare_rwa(&jc, &psi0, &times, exec).map_err(ctx(exp))?;
    let x = excitation_number_drift_with(&jc, Dynamics::Full, &psi0, &times, exec).map_err(ctx(exp))?;

    let mut table = ResultTable::new(["t", "P_full", "P_rwa", "excitation_number"]);
    table.set_meta("resolved.g", format_real(g));
    for (((t, a), b), xn) in times.iter().zip(cmp.full).zip(cmp.rwa).zip(x) {
        table.push(vec![(*t).into(), a.into(), b.into(), xn.into()])?;
    }
    Ok(table)
}

/// `(check, pass, max_deviation)` rows.
pub fn check_table(checks: Vec<Check>) -> Result<ResultTable> {
    let mut table = ResultTable::new(["check", "pass", "max_deviation"]);
    for c in checks {
        let verdict = if c.passed() { "pass" } else { "fail" };
        table.push(vec![c.name.as_str().into(), verdict.into(), c.max_deviation.into()])?;
    }
    Ok(table)
}

/// The full invariant suite behind `rabiqed check`.
pub fn invariant_suite() -> Result<Vec<Check>> {
    let exp = Experiment::FermionCheck;
    let mut all = checks::fermion_checks().map_err(ctx(exp))?;
    all.extend(checks::algebra_checks().map_err(ctx(exp))?);
    Ok(all)
}
