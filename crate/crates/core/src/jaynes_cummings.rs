//! Linearly polarized field: the full quantum Rabi Hamiltonian and its rotating
//! wave approximation.
//!
//! A linear field `2B cos ωt` is the sum of two circular fields rotating in
//! opposite senses. After quantization the co-rotating half reproduces the
//! circular model of [`crate::photon`]; the counter-rotating half couples
//! sectors with different excitation number `N̂ + σ₃/2`.

use crate::algebra::{pauli, re, tensor, CMatrix, CVector, C64};
use crate::exec::{self, Execution};
use crate::photon::{self, sector_population, BosonMode, HybridState, Spin};
use crate::semiclassical::check_grid;
use crate::{Error, Result};

/// The two circular halves `(Ĥ₊, Ĥ₋)` of the linear-field interaction
/// `2B cos(ωt) σ₁`.
pub fn linear_field_split(amplitude: f64, omega: f64, t: f64) -> (CMatrix, CMatrix) {
    let phase = C64::cis(-omega * t);
    let half = |p: C64| -> CMatrix { CMatrix::from_rows([[re(0.0), p * amplitude], [p.conj() * amplitude, re(0.0)]]) };
    (half(phase), half(phase.conj()))
}

#[derive(Clone, Debug)]
pub struct JCModel {
    pub mode: BosonMode,
    pub b3: f64,
    pub coupling: f64,
    /// `ω(I⊗N̂) + B₃(σ₃⊗I)`.
    pub h_free: CMatrix,
    /// `g(|+⟩⟨−|⊗b̂ + |−⟩⟨+|⊗b̂⁺)`.
    pub rwa_interaction: CMatrix,
    /// `g(|+⟩⟨−|⊗b̂⁺ + |−⟩⟨+|⊗b̂)`.
    pub h_counter: CMatrix,
    /// `h_free + g σ₁⊗(b̂ + b̂⁺)`.
    pub h_full: CMatrix,
    /// `h_free + rwa_interaction`.
    pub h_rwa: CMatrix,
}

/// Which Hamiltonian drives an evolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dynamics {
    Full,
    Rwa,
}

impl JCModel {
    pub fn hamiltonian(&self, which: Dynamics) -> &CMatrix {
        match which {
            Dynamics::Full => &self.h_full,
            Dynamics::Rwa => &self.h_rwa,
        }
    }

    pub fn fock_dim(&self) -> usize {
        self.mode.dim()
    }

    /// `σ₃ ⊗ (−1)^N̂`.
    pub fn parity(&self) -> CMatrix {
        tensor(&pauli::sigma_z(), &self.mode.parity())
    }

    /// `N̂ + σ₃/2` on spin⊗Fock.
    pub fn excitation_number(&self) -> CMatrix {
        excitation_operator(self.mode.dim())
    }
}

fn excitation_operator(d: usize) -> CMatrix {
    CMatrix::from_real_diagonal(
        &(0..2 * d)
            .map(|k| (k % d) as f64 + if k < d { 0.5 } else { -0.5 })
            .collect::<Vec<_>>(),
    )
}

/// Builds the linear-field model. The mode energy is `|ω|`; the polarization
/// sign of the mode plays no role since both circular halves are kept.
pub fn build_jc(mode: &BosonMode, b3: f64, coupling: f64) -> JCModel {
    let d = mode.dim();
    let h_free = &tensor(&CMatrix::identity(2), mode.number()).scale_real(mode.energy())
        + &tensor(&pauli::sigma_z(), &CMatrix::identity(d)).scale_real(b3);
    let (b, bd) = (mode.annihilate(), mode.create());
    let rwa_interaction = (&tensor(&pauli::raising(), b) + &tensor(&pauli::lowering(), bd)).scale_real(coupling);
    let h_counter = (&tensor(&pauli::raising(), bd) + &tensor(&pauli::lowering(), b)).scale_real(coupling);
    let field = b + bd;
    let h_full = &h_free + &tensor(&pauli::sigma_x(), &field).scale_real(coupling);
    let h_rwa = &h_free + &rwa_interaction;
    JCModel {
        mode: mode.clone(),
        b3,
        coupling,
        h_free,
        rwa_interaction,
        h_counter,
        h_full,
        h_rwa,
    }
}

/// Entrywise distance between the rotating-wave interaction and the
/// circular-field interaction with `Ω = g`.
pub fn rwa_equivalence_check(model: &JCModel) -> Result<f64> {
    let mode = photon::build_mode(model.mode.n_max(), model.mode.energy())?;
    let circular = photon::total_hamiltonian(&mode, model.b3, model.coupling);
    model.rwa_interaction.max_abs_diff(&circular.interaction)
}

/// Spin sector opposite to the one holding most of `psi0`.
fn flipped_sector(psi0: &HybridState) -> Spin {
    let d = psi0.fock_dim();
    let up = sector_population(psi0.vector(), Spin::Up, d);
    if up >= 0.5 {
        Spin::Down
    } else {
        Spin::Up
    }
}

fn sample_series<R: Send>(
    model: &JCModel,
    which: Dynamics,
    psi0: &HybridState,
    grid: &[f64],
    exec: Execution,
    f: impl Fn(&CVector) -> R + Sync + Send,
) -> Result<Vec<R>> {
    if psi0.fock_dim() != model.fock_dim() {
        return Err(Error::DimensionMismatch {
            op: "jc evolution",
            left: (model.fock_dim(), 1),
            right: (psi0.fock_dim(), 1),
        });
    }
    psi0.ensure_interior()?;
    check_grid(grid)?;
    let states = photon::evolve_samples(model.hamiltonian(which), psi0.vector(), grid, exec)?;
    Ok(exec::map(&states, exec, f))
}

/// `⟨N̂ + σ₃/2⟩` along the evolution generated by `which`.
pub fn excitation_number_drift(model: &JCModel, which: Dynamics, psi0: &HybridState, grid: &[f64]) -> Result<Vec<f64>> {
    excitation_number_drift_with(model, which, psi0, grid, Execution::default())
}

pub fn excitation_number_drift_with(
    model: &JCModel,
    which: Dynamics,
    psi0: &HybridState,
    grid: &[f64],
    exec: Execution,
) -> Result<Vec<f64>> {
    let d = model.fock_dim();
    sample_series(model, which, psi0, grid, exec, |psi| {
        psi.as_slice()
            .iter()
            .enumerate()
            .map(|(k, a)| a.norm_sqr() * ((k % d) as f64 + if k < d { 0.5 } else { -0.5 }))
            .sum()
    })
}

/// `max − min` of a series.
pub fn drift_amplitude(series: &[f64]) -> f64 {
    let (lo, hi) = series.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
        (lo.min(x), hi.max(x))
    });
    if series.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

/// Spin-flipped sector population under both Hamiltonians on a shared grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RwaComparison {
    pub times: Vec<f64>,
    pub full: Vec<f64>,
    pub rwa: Vec<f64>,
}

impl RwaComparison {
    pub fn max_deviation(&self) -> f64 {
        self.full
            .iter()
            .zip(&self.rwa)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn compare_rwa(model: &JCModel, psi0: &HybridState, grid: &[f64], exec: Execution) -> Result<RwaComparison> {
    let target = flipped_sector(psi0);
    let d = model.fock_dim();
    let pop = |psi: &CVector| sector_population(psi, target, d);
    Ok(RwaComparison {
        times: grid.to_vec(),
        full: sample_series(model, Dynamics::Full, psi0, grid, exec, pop)?,
        rwa: sample_series(model, Dynamics::Rwa, psi0, grid, exec, pop)?,
    })
}

/// Sampling step used by [`rwa_error_curve`].
pub const RWA_SAMPLE_STEP: f64 = 0.01;

/// `max_t |P_full(t) − P_rwa(t)|` over `[0, horizon]` sampled every
/// [`RWA_SAMPLE_STEP`], where `P` is the population of the spin sector
/// opposite to the initial one.
pub fn rwa_error_curve(model: &JCModel, psi0: &HybridState, horizon: f64) -> Result<f64> {
    rwa_error_curve_with(model, psi0, horizon, Execution::default())
}

pub fn rwa_error_curve_with(model: &JCModel, psi0: &HybridState, horizon: f64, exec: Execution) -> Result<f64> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::invalid("horizon", format!("must be positive, got {horizon}")));
    }
    let n = (horizon / RWA_SAMPLE_STEP).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|k| horizon * k as f64 / n as f64).collect();
    Ok(compare_rwa(model, psi0, &grid, exec)?.max_deviation())
}

/// Expectation of `h` along the evolution it generates.
pub fn energy_series(model: &JCModel, which: Dynamics, psi0: &HybridState, grid: &[f64]) -> Result<Vec<f64>> {
    let h = model.hamiltonian(which);
    sample_series(model, which, psi0, grid, Execution::default(), |psi| {
        psi.expectation(h).map(|e| e.re).unwrap_or(f64::NAN)
    })
}
