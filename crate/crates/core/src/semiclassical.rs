//! Spin-½ particle in a classical magnetic field.
//!
//! The spinor obeys `i dψ/dt = (F(t)·σ) ψ` where `F` is the field expressed in
//! energy units (the Stern–Gerlach factor `−μ` with `μ = −1` is absorbed). For
//! the circular field `F = (B cos ωt, B sin ωt, B₃)` the problem is solved
//! exactly in the frame rotating with the field; [`propagate_spin`] handles
//! arbitrary fields numerically and is checked against that solution.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{c, re, CMatrix, CVector, C64, NORM_TOL, ZERO};
use crate::exec::{self, Execution};
use crate::{Error, Result};

/// Shape of the transverse field.
#[derive(Clone, Default)]
pub enum Polarization {
    /// `(B cos ωt, B sin ωt, B₃)`.
    #[default]
    Circular,
    /// `(2B cos ωt, 0, B₃)`: the sum of two counter-rotating circular fields.
    Linear,
    /// Caller-supplied field; `B`, `B₃` and `ω` are carried for bookkeeping only.
    Custom(Arc<dyn Fn(f64) -> [f64; 3] + Send + Sync>),
}

impl fmt::Debug for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarization::Circular => f.write_str("Circular"),
            Polarization::Linear => f.write_str("Linear"),
            Polarization::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FieldConfig {
    /// Transverse amplitude `B ≥ 0`.
    pub amplitude: f64,
    /// Longitudinal component `B₃`.
    pub longitudinal: f64,
    /// Drive angular frequency `ω`.
    pub omega: f64,
    /// Magnetic moment. Only enters the photon coupling `Ω = −μ√(2ω)`.
    pub mu: f64,
    pub polarization: Polarization,
}

impl FieldConfig {
    pub fn circular(amplitude: f64, longitudinal: f64, omega: f64) -> Result<Self> {
        let cfg = FieldConfig {
            amplitude,
            longitudinal,
            omega,
            mu: -1.0,
            polarization: Polarization::Circular,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn linear(amplitude: f64, longitudinal: f64, omega: f64) -> Result<Self> {
        let cfg = FieldConfig {
            polarization: Polarization::Linear,
            ..FieldConfig::circular(amplitude, longitudinal, omega)?
        };
        Ok(cfg)
    }

    pub fn with_omega(&self, omega: f64) -> Self {
        FieldConfig { omega, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("B", self.amplitude),
            ("B3", self.longitudinal),
            ("omega", self.omega),
            ("mu", self.mu),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, format!("must be finite, got {v}")));
            }
        }
        if self.amplitude < 0.0 {
            return Err(Error::invalid("B", format!("must be >= 0, got {}", self.amplitude)));
        }
        Ok(())
    }

    fn require_circular(&self) -> Result<()> {
        self.validate()?;
        match self.polarization {
            Polarization::Circular => Ok(()),
            ref p => Err(Error::invalid(
                "polarization",
                format!("operation needs a circular field, got {p:?}"),
            )),
        }
    }
}

/// A deterministic classical field `t ↦ F(t)`.
pub trait FieldSampler: Sync {
    fn sample(&self, t: f64) -> [f64; 3];
}

impl FieldSampler for FieldConfig {
    fn sample(&self, t: f64) -> [f64; 3] {
        let (b, b3, w) = (self.amplitude, self.longitudinal, self.omega);
        match &self.polarization {
            Polarization::Circular => [b * (w * t).cos(), b * (w * t).sin(), b3],
            Polarization::Linear => [2.0 * b * (w * t).cos(), 0.0, b3],
            Polarization::Custom(f) => f(t),
        }
    }
}

/// Adapter turning a closure into a [`FieldSampler`].
pub struct FnField<F>(pub F);

impl<F: Fn(f64) -> [f64; 3] + Sync> FieldSampler for FnField<F> {
    fn sample(&self, t: f64) -> [f64; 3] {
        (self.0)(t)
    }
}

/// `δ = 2B₃ − ω`.
pub fn detuning(cfg: &FieldConfig) -> f64 {
    2.0 * cfg.longitudinal - cfg.omega
}

/// `Ω̃ = √((δ/2)² + B²)`.
pub fn rabi_frequency(cfg: &FieldConfig) -> f64 {
    (0.5 * detuning(cfg)).hypot(cfg.amplitude)
}

/// `σ₃B₃ + B(σ₁ cos ωt + σ₂ sin ωt)`.
pub fn rabi_hamiltonian(cfg: &FieldConfig, t: f64) -> Result<CMatrix> {
    cfg.require_circular()?;
    Ok(field_hamiltonian(cfg.sample(t)))
}

/// `F·σ` as a 2×2 matrix.
pub fn field_hamiltonian([f1, f2, f3]: [f64; 3]) -> CMatrix {
    CMatrix::from_rows([[re(f3), c(f1, -f2)], [c(f1, f2), re(-f3)]])
}

/// The time-independent Hamiltonian `(δ/2)σ₃ + Bσ₁` seen from the frame
/// co-rotating with the field.
pub fn rotating_frame_hamiltonian(cfg: &FieldConfig) -> Result<CMatrix> {
    cfg.require_circular()?;
    Ok(field_hamiltonian([cfg.amplitude, 0.0, 0.5 * detuning(cfg)]))
}

/// `R_z(ωt) = exp(−i(ω/2)σ₃t)`.
pub fn rotation_operator(omega: f64, t: f64) -> CMatrix {
    let half = 0.5 * omega * t;
    CMatrix::from_diagonal(&[C64::cis(-half), C64::cis(half)])
}

/// `(B²/Ω̃²) sin²(Ω̃t)` with `Ω̃² = (δ/2)² + B²`; zero when `Ω̃ = 0`.
pub fn transition_probability(amplitude: f64, detuning: f64, t: f64) -> f64 {
    let b2 = amplitude * amplitude;
    let w2 = 0.25 * detuning * detuning + b2;
    if w2 == 0.0 {
        return 0.0;
    }
    let s = (w2.sqrt() * t).sin();
    (b2 / w2 * s * s).clamp(0.0, 1.0)
}

/// Probability of the `|−⟩ → |+⟩` flip after time `t` in a circular field.
pub fn exact_transition_probability(cfg: &FieldConfig, t: f64) -> Result<f64> {
    cfg.require_circular()?;
    Ok(transition_probability(cfg.amplitude, detuning(cfg), t))
}

/// Normalized two-component spinor in the basis `{|+⟩, |−⟩}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorState([C64; 2]);

impl SpinorState {
    pub fn new(plus: C64, minus: C64) -> Result<Self> {
        let s = SpinorState([plus, minus]);
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(s)
    }

    pub fn plus() -> Self {
        SpinorState([C64::new(1.0, 0.0), ZERO])
    }

    pub fn minus() -> Self {
        SpinorState([ZERO, C64::new(1.0, 0.0)])
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        self.0
    }

    pub fn norm(&self) -> f64 {
        (self.0[0].norm_sqr() + self.0[1].norm_sqr()).sqrt()
    }

    /// `|⟨+|ψ⟩|²`.
    pub fn population_plus(&self) -> f64 {
        self.0[0].norm_sqr()
    }

    pub fn to_vector(&self) -> CVector {
        CVector::new(self.0.to_vec())
    }

    pub fn transformed(&self, u: &CMatrix) -> Result<SpinorState> {
        let v = u.apply(&self.to_vector())?;
        Ok(SpinorState([v[0], v[1]]))
    }

    /// `exp(−i h (F·σ)) ψ` in closed form.
    fn step(&self, [f1, f2, f3]: [f64; 3], h: f64) -> SpinorState {
        let r = (f1 * f1 + f2 * f2 + f3 * f3).sqrt();
        if r == 0.0 {
            return *self;
        }
        let (s, cs) = (r * h).sin_cos();
        let [a, b] = self.0;
        // (F·σ)ψ
        let fa = a * f3 + b * c(f1, -f2);
        let fb = a * c(f1, f2) - b * f3;
        let k = c(0.0, -s / r);
        SpinorState([a * cs + k * fa, b * cs + k * fb])
    }
}

/// One-step scheme for [`propagate_spin_with`]. Both are products of exact
/// exponentials and therefore unitary step by step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Integrator {
    /// Exponential of the field sampled at the step midpoint; second order.
    Midpoint,
    /// Fourth-order commutator-free Magnus scheme: two exponentials built
    /// from the field at the Gauss–Legendre nodes.
    #[default]
    Magnus4,
}

impl Integrator {
    fn advance<F: FieldSampler + ?Sized>(self, field: &F, psi: SpinorState, t: f64, h: f64) -> SpinorState {
        match self {
            Integrator::Midpoint => psi.step(field.sample(t + 0.5 * h), h),
            Integrator::Magnus4 => {
                let r3 = 3f64.sqrt();
                let (c1, c2) = (0.5 - r3 / 6.0, 0.5 + r3 / 6.0);
                let (a1, a2) = ((3.0 - 2.0 * r3) / 12.0, (3.0 + 2.0 * r3) / 12.0);
                let f1 = field.sample(t + c1 * h);
                let f2 = field.sample(t + c2 * h);
                let mix = |x: f64, y: f64| -> [f64; 3] {
                    [x * f1[0] + y * f2[0], x * f1[1] + y * f2[1], x * f1[2] + y * f2[2]]
                };
                psi.step(mix(a2, a1), h).step(mix(a1, a2), h)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<SpinorState>,
    /// `|⟨+|ψ(t)⟩|²`. Identical in the lab and rotating frames since `R_z`
    /// is diagonal.
    pub transition_prob: Vec<f64>,
}

impl SpinTrajectory {
    /// States transformed to the frame rotating at `omega`, `R_z†(ωt) ψ(t)`.
    pub fn rotating_frame_states(&self, omega: f64) -> Vec<SpinorState> {
        self.times
            .iter()
            .zip(&self.states)
            .map(|(&t, s)| {
                s.transformed(&rotation_operator(omega, t).adjoint())
                    .expect("2x2 by construction")
            })
            .collect()
    }
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid("time"));
    }
    if let Some(i) = grid.iter().position(|t| !t.is_finite()) {
        return Err(Error::NonAscendingGrid { index: i });
    }
    if let Some(i) = grid.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::NonAscendingGrid { index: i + 1 });
    }
    Ok(())
}

/// Integrates `i dψ/dt = (F·σ)ψ` from `grid[0]`, recording the state at every
/// grid time. Each grid interval is split into equal steps no longer than
/// `dt_max`. Uses [`Integrator::Magnus4`].
pub fn propagate_spin<F: FieldSampler + ?Sized>(
    field: &F,
    psi0: SpinorState,
    grid: &[f64],
    dt_max: f64,
) -> Result<SpinTrajectory> {
    propagate_spin_with(field, psi0, grid, dt_max, Integrator::default())
}

pub fn propagate_spin_with<F: FieldSampler + ?Sized>(
    field: &F,
    psi0: SpinorState,
    grid: &[f64],
    dt_max: f64,
    integrator: Integrator,
) -> Result<SpinTrajectory> {
    let norm = psi0.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    check_grid(grid)?;
    if !(dt_max > 0.0 && dt_max.is_finite()) {
        return Err(Error::invalid("dt_max", format!("must be positive, got {dt_max}")));
    }

    let mut states = Vec::with_capacity(grid.len());
    let mut psi = psi0;
    states.push(psi);
    for w in grid.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let n = ((t1 - t0) / dt_max).ceil().max(1.0) as usize;
        let h = (t1 - t0) / n as f64;
        for k in 0..n {
            psi = integrator.advance(field, psi, t0 + k as f64 * h, h);
        }
        states.push(psi);
    }
    let transition_prob = states.iter().map(SpinorState::population_plus).collect();
    Ok(SpinTrajectory {
        times: grid.to_vec(),
        states,
        transition_prob,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResonancePoint {
    pub omega: f64,
    /// Largest flip probability reached on `[0, horizon]`.
    pub peak: f64,
}

/// `max_{0 ≤ t ≤ T} (B²/Ω̃²) sin²(Ω̃t)`: the envelope once `Ω̃T ≥ π/2`, the
/// value at `T` before that.
pub fn peak_transition_probability(amplitude: f64, detuning: f64, horizon: f64) -> f64 {
    let w = (0.5 * detuning).hypot(amplitude);
    if w * horizon >= FRAC_PI_2 {
        transition_probability(amplitude, detuning, FRAC_PI_2 / w)
    } else {
        transition_probability(amplitude, detuning, horizon)
    }
}

pub fn resonance_sweep(cfg_base: &FieldConfig, omega_grid: &[f64], horizon: f64) -> Result<Vec<ResonancePoint>> {
    resonance_sweep_with(cfg_base, omega_grid, horizon, Execution::default())
}

/// Peak flip probability over `[0, horizon]` for every drive frequency in
/// `omega_grid`, in grid order.
pub fn resonance_sweep_with(
    cfg_base: &FieldConfig,
    omega_grid: &[f64],
    horizon: f64,
    exec: Execution,
) -> Result<Vec<ResonancePoint>> {
    cfg_base.require_circular()?;
    if omega_grid.is_empty() {
        return Err(Error::EmptyGrid("omega"));
    }
    if !(horizon >= 0.0 && horizon.is_finite()) {
        return Err(Error::invalid("horizon", format!("must be >= 0, got {horizon}")));
    }
    exec::try_map(omega_grid, exec, |&omega| {
        let cfg = cfg_base.with_omega(omega);
        cfg.validate()?;
        Ok(ResonancePoint {
            omega,
            peak: peak_transition_probability(cfg.amplitude, detuning(&cfg), horizon),
        })
    })
}

/// The grid point with the largest peak; ties resolve to the first.
pub fn resonance_peak(points: &[ResonancePoint]) -> Option<ResonancePoint> {
    points
        .iter()
        .copied()
        .fold(None, |best: Option<ResonancePoint>, p| match best {
            Some(b) if b.peak >= p.peak => Some(b),
            _ => Some(p),
        })
}
