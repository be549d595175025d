//! The circular field as a single quantized mode.
//!
//! The spin⊗Fock space is ordered `|s⟩⊗|n⟩` with the spin on the outer index:
//! `|+, n⟩` sits at `n` and `|−, n⟩` at `D + n`, where `D = n_max + 1`.
//!
//! Truncating the ladder at `n_max` only spoils the commutator on the top
//! level. The Schrödinger-picture Hamiltonian is block diagonal in the pairs
//! `{|n,+⟩, |n+1,−⟩}`, so every block below the top one is reproduced exactly.

use crate::algebra::{self, pauli, re, tensor, CMatrix, CVector, HermitianEigen, C64};
use crate::exec::{self, Execution};
use crate::semiclassical::transition_probability;
use crate::{Error, Result};

/// Truncated ladder operators for one boson mode.
#[derive(Clone, Debug, PartialEq)]
pub struct BosonMode {
    n_max: usize,
    omega: f64,
    annihilate: CMatrix,
    create: CMatrix,
    number: CMatrix,
}

/// Builds `b̂`, `b̂⁺` and `N̂` on levels `0..=n_max`.
///
/// A negative `omega` selects the opposite circular polarization: the
/// matrices are unchanged (`b̂` still lowers the photon number and photons
/// carry energy `|ω|`), but interactions that depend on the polarization
/// exchange `b̂ ↔ b̂⁺`. See [`BosonMode::is_reversed`].
pub fn build_mode(n_max: usize, omega: f64) -> Result<BosonMode> {
    if n_max == 0 {
        return Err(Error::invalid("n_max", "must be >= 1"));
    }
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::invalid(
            "omega",
            format!("must be finite and non-zero, got {omega}"),
        ));
    }
    let d = n_max + 1;
    let mut annihilate = CMatrix::zeros(d, d);
    for n in 1..d {
        annihilate[(n - 1, n)] = re((n as f64).sqrt());
    }
    let create = annihilate.adjoint();
    let number = CMatrix::from_real_diagonal(&(0..d).map(|n| n as f64).collect::<Vec<_>>());
    Ok(BosonMode {
        n_max,
        omega,
        annihilate,
        create,
        number,
    })
}

impl BosonMode {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Fock dimension `n_max + 1`.
    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    /// Signed mode frequency.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Photon energy `|ω|`.
    pub fn energy(&self) -> f64 {
        self.omega.abs()
    }

    pub fn is_reversed(&self) -> bool {
        self.omega < 0.0
    }

    pub fn annihilate(&self) -> &CMatrix {
        &self.annihilate
    }

    pub fn create(&self) -> &CMatrix {
        &self.create
    }

    pub fn number(&self) -> &CMatrix {
        &self.number
    }

    /// The pair `(A, A⁺)` multiplying `|+⟩⟨−|` and `|−⟩⟨+|` in the circular
    /// interaction: `(b̂, b̂⁺)`, exchanged for the reversed polarization.
    pub(crate) fn circular_pair(&self) -> (&CMatrix, &CMatrix) {
        if self.is_reversed() {
            (&self.create, &self.annihilate)
        } else {
            (&self.annihilate, &self.create)
        }
    }

    /// `(−1)^N̂`.
    pub fn parity(&self) -> CMatrix {
        CMatrix::from_real_diagonal(
            &(0..self.dim())
                .map(|n| if n % 2 == 0 { 1.0 } else { -1.0 })
                .collect::<Vec<_>>(),
        )
    }
}

/// `Ĥ = |ω| N̂`.
pub fn free_field_hamiltonian(mode: &BosonMode) -> CMatrix {
    mode.number().scale_real(mode.energy())
}

/// Coupling from the mode frequency, `Ω = −μ√(2|ω|)`.
pub fn coupling_from_frequency(mu: f64, omega: f64) -> f64 {
    -mu * (2.0 * omega.abs()).sqrt()
}

/// Coupling that reproduces a classical amplitude `B` with `n` photons,
/// from `Ω²(n+1) = B²`.
pub fn coupling_from_intensity(amplitude: f64, n: usize) -> f64 {
    amplitude / ((n + 1) as f64).sqrt()
}

/// Spin label of the two-level system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    fn outer(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// Index of `|s, n⟩` in a spin⊗Fock space with Fock dimension `dim`.
pub fn hybrid_index(spin: Spin, n: usize, dim: usize) -> usize {
    spin.outer() * dim + n
}

/// Normalized vector on spin⊗Fock.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridState {
    vector: CVector,
    fock_dim: usize,
}

impl HybridState {
    pub fn new(vector: CVector, fock_dim: usize) -> Result<Self> {
        if vector.dim() != 2 * fock_dim {
            return Err(Error::DimensionMismatch {
                op: "hybrid state",
                left: (vector.dim(), 1),
                right: (2 * fock_dim, 1),
            });
        }
        vector.ensure_normalized()?;
        Ok(HybridState { vector, fock_dim })
    }

    /// `|s, n⟩`.
    pub fn basis(spin: Spin, n: usize, fock_dim: usize) -> Result<Self> {
        if n >= fock_dim {
            return Err(Error::invalid("n", format!("{n} exceeds n_max = {}", fock_dim - 1)));
        }
        Ok(HybridState {
            vector: CVector::basis(2 * fock_dim, hybrid_index(spin, n, fock_dim)),
            fock_dim,
        })
    }

    pub fn vector(&self) -> &CVector {
        &self.vector
    }

    pub fn fock_dim(&self) -> usize {
        self.fock_dim
    }

    pub fn amplitude(&self, spin: Spin, n: usize) -> C64 {
        self.vector[hybrid_index(spin, n, self.fock_dim)]
    }

    /// Highest photon number carrying amplitude above `1e-14`.
    pub fn max_level(&self) -> usize {
        (0..self.fock_dim)
            .rev()
            .find(|&n| self.amplitude(Spin::Up, n).norm() > 1e-14 || self.amplitude(Spin::Down, n).norm() > 1e-14)
            .unwrap_or(0)
    }

    /// Rejects states reaching within two levels of the truncation.
    pub fn ensure_interior(&self) -> Result<()> {
        let limit = self.fock_dim.saturating_sub(3);
        let level = self.max_level();
        if level > limit || self.fock_dim < 3 {
            return Err(Error::TruncationSupport { level, limit });
        }
        Ok(())
    }
}

/// Total population of the given spin sector, summed over photon numbers.
pub fn sector_population(psi: &CVector, spin: Spin, fock_dim: usize) -> f64 {
    (0..fock_dim)
        .map(|n| psi[hybrid_index(spin, n, fock_dim)].norm_sqr())
        .sum()
}

/// The quantized circular-field model in the Schrödinger picture.
#[derive(Clone, Debug)]
pub struct QuantizedModel {
    pub mode: BosonMode,
    pub b3: f64,
    pub coupling: f64,
    /// `ω(I⊗N̂) + B₃(σ₃⊗I) + Ĥ_SI`.
    pub h_total: CMatrix,
    /// `|ω|(I⊗N̂) + (ω/2)(σ₃⊗I)`, the conserved excitation energy.
    pub h0_prime: CMatrix,
    /// `(δ/2)(σ₃⊗I) + Ĥ_SI`.
    pub h1: CMatrix,
    /// `Ω(|+⟩⟨−|⊗b̂ + |−⟩⟨+|⊗b̂⁺)`.
    pub interaction: CMatrix,
}

impl QuantizedModel {
    pub fn dim(&self) -> usize {
        self.h_total.rows()
    }

    /// `δ = 2B₃ − ω`.
    pub fn detuning(&self) -> f64 {
        2.0 * self.b3 - self.mode.omega()
    }

    /// Spin plus interaction part of `h_total`, i.e. without the field energy.
    pub fn spin_and_interaction(&self) -> CMatrix {
        &spin_term(self.b3, self.mode.dim()) + &self.interaction
    }
}

fn spin_term(b3: f64, fock_dim: usize) -> CMatrix {
    tensor(&pauli::sigma_z(), &CMatrix::identity(fock_dim)).scale_real(b3)
}

/// `Ω(|+⟩⟨−| ⊗ A + |−⟩⟨+| ⊗ A⁺)` with `(A, A⁺)` from [`BosonMode`]'s
/// polarization.
pub fn circular_interaction(mode: &BosonMode, coupling: f64) -> CMatrix {
    let (a, a_dag) = mode.circular_pair();
    (&tensor(&pauli::raising(), a) + &tensor(&pauli::lowering(), a_dag)).scale_real(coupling)
}

/// `N̂ + σ₃/2` on spin⊗Fock (sign of the spin part follows the polarization).
pub fn excitation_number(mode: &BosonMode) -> CMatrix {
    let d = mode.dim();
    let s = if mode.is_reversed() { -0.5 } else { 0.5 };
    CMatrix::from_real_diagonal(
        &(0..2 * d)
            .map(|k| {
                let (spin, n) = (k / d, k % d);
                n as f64 + if spin == 0 { s } else { -s }
            })
            .collect::<Vec<_>>(),
    )
}

pub fn total_hamiltonian(mode: &BosonMode, b3: f64, coupling: f64) -> QuantizedModel {
    let d = mode.dim();
    let w = mode.omega();
    let energy = mode.energy();
    let interaction = circular_interaction(mode, coupling);
    let delta = 2.0 * b3 - w;

    let mut h_total = interaction.clone();
    let mut h1 = interaction.clone();
    let mut h0 = CMatrix::zeros(2 * d, 2 * d);
    for k in 0..2 * d {
        let (spin, n) = (k / d, (k % d) as f64);
        let sz = if spin == 0 { 1.0 } else { -1.0 };
        h_total[(k, k)] = re(energy * n + b3 * sz);
        h1[(k, k)] = re(0.5 * delta * sz);
        // |ω|(n ± 1/2) with the half-integer formed first, so degenerate
        // partners get bit-identical energies.
        h0[(k, k)] = re(energy * (n + 0.5 * sz * w.signum()));
    }
    QuantizedModel {
        mode: mode.clone(),
        b3,
        coupling,
        h_total,
        h0_prime: h0,
        h1,
        interaction,
    }
}

/// Largest interior deviation between the Heisenberg-picture `U†b̂U`,
/// `U = exp(−i|ω|N̂t)`, and `b̂e^{−i|ω|t}`, over 33 times in `[0, horizon]`.
pub fn heisenberg_evolution_check(mode: &BosonMode, horizon: f64) -> Result<f64> {
    let h = free_field_hamiltonian(mode);
    let eig = HermitianEigen::new(&h)?;
    let interior: Vec<usize> = (0..mode.n_max()).collect();
    let steps = 32;
    let mut worst = 0.0f64;
    for k in 0..=steps {
        let t = horizon * k as f64 / steps as f64;
        let u = eig.propagator(t);
        let heis = &(&u.adjoint() * mode.annihilate()) * &u;
        let expect = mode.annihilate().scale(C64::cis(-mode.energy() * t));
        let dev = heis.project(&interior).max_abs_diff(&expect.project(&interior))?;
        worst = worst.max(dev);
    }
    Ok(worst)
}

/// One 2×2 sector of the block-diagonal Hamiltonian, in the basis
/// `{|n,+⟩, |n+1,−⟩}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorBlock {
    pub h0: CMatrix,
    pub h1: CMatrix,
}

pub fn block_hamiltonian(n: usize, omega: f64, delta: f64, coupling: f64) -> SectorBlock {
    let g = coupling * ((n + 1) as f64).sqrt();
    SectorBlock {
        h0: CMatrix::identity(2).scale_real(omega * (n as f64 + 0.5)),
        h1: CMatrix::from_rows([[re(0.5 * delta), re(g)], [re(g), re(-0.5 * delta)]]),
    }
}

/// Indices of `{|n,+⟩, |n+1,−⟩}` in the full space.
pub fn sector_indices(n: usize, fock_dim: usize) -> [usize; 2] {
    [
        hybrid_index(Spin::Up, n, fock_dim),
        hybrid_index(Spin::Down, n + 1, fock_dim),
    ]
}

/// `|⟨+,n| e^{−iĤ₁t} |n+1,−⟩|² = Ω²(n+1)/w² · sin²(wt)`, `w² = (δ/2)² + Ω²(n+1)`.
pub fn quantum_transition_probability(n: usize, delta: f64, coupling: f64, t: f64) -> f64 {
    transition_probability(coupling * ((n + 1) as f64).sqrt(), delta, t)
}

/// `(quantum, classical)` flip probabilities with the coupling fixed by
/// `Ω²(n+1) = B²`.
pub fn semiclassical_correspondence(n: usize, amplitude: f64, delta: f64, t: f64) -> Result<(f64, f64)> {
    if amplitude.is_nan() || amplitude <= 0.0 {
        return Err(Error::invalid("B", format!("must be > 0, got {amplitude}")));
    }
    let coupling = coupling_from_intensity(amplitude, n);
    Ok((
        quantum_transition_probability(n, delta, coupling, t),
        transition_probability(amplitude, delta, t),
    ))
}

/// `U₁ = exp(−iĤ₁t)`.
pub fn interaction_picture_evolution(model: &QuantizedModel, t: f64) -> Result<CMatrix> {
    algebra::hermitian_expm(&model.h1, t)
}

/// `max |exp(iĤ₀′t) exp(−iĤ_S t) − exp(−iĤ₁t)|`.
pub fn interaction_split_deviation(model: &QuantizedModel, t: f64) -> Result<f64> {
    let u0_inv = algebra::hermitian_expm(&model.h0_prime, -t)?;
    let us = algebra::hermitian_expm(&model.h_total, t)?;
    let u1 = interaction_picture_evolution(model, t)?;
    (&u0_inv * &us).max_abs_diff(&u1)
}

/// Evolves `psi0` under a time-independent Hermitian `h` and samples it at
/// each time, in order.
pub fn evolve_samples(h: &CMatrix, psi0: &CVector, times: &[f64], exec: Execution) -> Result<Vec<CVector>> {
    let eig = HermitianEigen::new(h)?;
    let coeffs = eig.coefficients(psi0)?;
    Ok(exec::map(times, exec, |&t| eig.evolve_coefficients(&coeffs, t)))
}

/// `|⟨+,n|ψ(t)⟩|²` starting from `|n+1,−⟩` under the full truncated `h_total`.
pub fn full_transition_probabilities(
    model: &QuantizedModel,
    n: usize,
    times: &[f64],
    exec: Execution,
) -> Result<Vec<f64>> {
    let d = model.mode.dim();
    let start = HybridState::basis(Spin::Down, n + 1, d)?;
    start.ensure_interior()?;
    let target = hybrid_index(Spin::Up, n, d);
    let states = evolve_samples(&model.h_total, start.vector(), times, exec)?;
    Ok(states.iter().map(|s| s[target].norm_sqr()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{commutator, unitarity_defect, ONE, ZERO};
    use std::f64::consts::PI;

    #[test]
    fn ladder_for_single_photon() {
        let m = build_mode(1, 1.0).unwrap();
        assert_eq!(*m.annihilate(), CMatrix::from_rows([[ZERO, ONE], [ZERO, ZERO]]));
    }

    #[test]
    fn truncated_commutator() {
        // [b, b†] by hand for n_max = 2: b = [[0,1,0],[0,0,√2],[0,0,0]].
        let m = build_mode(2, 1.0).unwrap();
        let b = m.annihilate();
        let mut bbd = CMatrix::zeros(3, 3);
        let mut bdb = CMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    bbd[(i, j)] += b[(i, k)] * b[(j, k)].conj();
                    bdb[(i, j)] += b[(k, i)].conj() * b[(k, j)];
                }
            }
        }
        let oracle = &bbd - &bdb;
        let comm = commutator(m.annihilate(), m.create()).unwrap();
        assert!(comm.max_abs_diff(&oracle).unwrap() < 1e-15);
        assert!(
            comm.max_abs_diff(&CMatrix::from_real_diagonal(&[1.0, 1.0, -2.0]))
                .unwrap()
                < 1e-15
        );
    }

    #[test]
    fn ladder_actions() {
        let m = build_mode(5, 1.0).unwrap();
        for n in 0..=5 {
            let v = CVector::basis(6, n);
            let down = m.annihilate().apply(&v).unwrap();
            let up = m.create().apply(&v).unwrap();
            if n > 0 {
                assert!((down[n - 1].re - (n as f64).sqrt()).abs() < 1e-15);
            } else {
                assert_eq!(down.norm(), 0.0);
            }
            if n < 5 {
                assert!((up[n + 1].re - ((n + 1) as f64).sqrt()).abs() < 1e-15);
            } else {
                assert_eq!(up.norm(), 0.0);
            }
        }
        let nn = m.create() * m.annihilate();
        assert!(nn.max_abs_diff(m.number()).unwrap() < 1e-14);
    }

    #[test]
    fn number_spectrum() {
        let m = build_mode(4, 0.5).unwrap();
        let ev = HermitianEigen::new(m.number()).unwrap().sorted_values();
        for (k, e) in ev.iter().enumerate() {
            assert!((e - k as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn build_mode_rejects_degenerate_input() {
        assert!(build_mode(0, 1.0).is_err());
        assert!(build_mode(3, 0.0).is_err());
        let m = build_mode(3, -2.0).unwrap();
        assert_eq!(m.energy(), 2.0);
        assert!(m.is_reversed());
        assert_eq!(
            free_field_hamiltonian(&m),
            CMatrix::from_real_diagonal(&[0.0, 2.0, 4.0, 6.0])
        );
    }

    #[test]
    fn free_field_hamiltonian_cases() {
        let m = build_mode(1, 2.0).unwrap();
        assert_eq!(free_field_hamiltonian(&m), CMatrix::from_real_diagonal(&[0.0, 2.0]));
        let m = build_mode(6, 0.7).unwrap();
        let h = free_field_hamiltonian(&m);
        assert!(commutator(&h, m.number()).unwrap().is_zero());
        // [H, b] = −ωb away from the truncation edge
        let c = commutator(&h, m.annihilate()).unwrap();
        let interior: Vec<usize> = (0..6).collect();
        let expect = m.annihilate().scale_real(-0.7);
        assert!(c.project(&interior).max_abs_diff(&expect.project(&interior)).unwrap() < 1e-15);
    }

    #[test]
    fn uncoupled_hamiltonian_is_diagonal() {
        let m = build_mode(4, 1.3).unwrap();
        let model = total_hamiltonian(&m, 0.4, 0.0);
        let d = m.dim();
        for n in 0..d {
            let up = hybrid_index(Spin::Up, n, d);
            let dn = hybrid_index(Spin::Down, n, d);
            assert!((model.h_total[(up, up)].re - (1.3 * n as f64 + 0.4)).abs() < 1e-15);
            assert!((model.h_total[(dn, dn)].re - (1.3 * n as f64 - 0.4)).abs() < 1e-15);
        }
        assert_eq!(
            model
                .h_total
                .max_abs_diff(&CMatrix::from_diagonal(&model.h_total.diagonal()))
                .unwrap(),
            0.0
        );
    }

    #[test]
    fn split_is_exact() {
        for (w, b3, g) in [(1.0, 0.5, 0.3), (0.7, 1.1, 0.05), (2.3, -0.4, 1.7), (-1.2, 0.3, 0.4)] {
            let m = build_mode(6, w).unwrap();
            let model = total_hamiltonian(&m, b3, g);
            assert!(commutator(&model.h0_prime, &model.h1).unwrap().is_zero());
            let sum = &model.h0_prime + &model.h1;
            assert!(sum.max_abs_diff(&model.h_total).unwrap() < 1e-14);
            for h in [&model.h_total, &model.h0_prime, &model.h1] {
                assert!(h.is_hermitian());
            }
            assert!(commutator(&excitation_number(&m), &model.h_total).unwrap().is_zero());
        }
    }

    #[test]
    fn interaction_matrix_element() {
        let m = build_mode(6, 1.0).unwrap();
        let model = total_hamiltonian(&m, 0.5, 0.3);
        let d = m.dim();
        for n in 0..5 {
            let el = model.h1[(hybrid_index(Spin::Up, n, d), hybrid_index(Spin::Down, n + 1, d))];
            assert!((el.re - 0.3 * ((n + 1) as f64).sqrt()).abs() < 1e-15 && el.im == 0.0);
        }
    }

    #[test]
    fn heisenberg_check() {
        let m = build_mode(3, 1.0).unwrap();
        assert_eq!(heisenberg_evolution_check(&m, 0.0).unwrap(), 0.0);
        assert!(heisenberg_evolution_check(&m, PI / 4.0).unwrap() < 1e-12);
        let m = build_mode(8, 1.7).unwrap();
        assert!(heisenberg_evolution_check(&m, 25.0).unwrap() < 1e-9);
    }

    #[test]
    fn block_cases() {
        let blk = block_hamiltonian(0, 1.0, 0.0, 0.4);
        assert_eq!(blk.h1, pauli::sigma_x().scale_real(0.4));
        assert_eq!(blk.h0, CMatrix::identity(2).scale_real(0.5));
        for (n, d, g) in [(0, 0.3, 0.2), (3, -1.0, 0.7), (7, 2.0, 0.05)] {
            let blk = block_hamiltonian(n, 1.0, d, g);
            let ev = HermitianEigen::new(&blk.h1).unwrap().sorted_values();
            let w = (0.25 * d * d + g * g * (n + 1) as f64).sqrt();
            assert!((ev[0] + w).abs() < 1e-14 && (ev[1] - w).abs() < 1e-14);
        }
    }

    #[test]
    fn block_is_projection_of_full_model() {
        let (w, b3, g) = (0.9, 0.8, 0.35);
        let m = build_mode(7, w).unwrap();
        let model = total_hamiltonian(&m, b3, g);
        for n in 0..=5 {
            let idx = sector_indices(n, m.dim());
            let blk = block_hamiltonian(n, w, model.detuning(), g);
            assert!(model.h1.project(&idx).max_abs_diff(&blk.h1).unwrap() < 1e-15);
            assert!(model.h0_prime.project(&idx).max_abs_diff(&blk.h0).unwrap() < 1e-15);
        }
    }

    #[test]
    fn transition_probability_cases() {
        for t in [0.0, 1.0, 3.3] {
            assert_eq!(quantum_transition_probability(4, 0.3, 0.0, t), 0.0);
            let p = quantum_transition_probability(0, 0.0, 0.7, t);
            assert!((p - (0.7 * t).sin().powi(2)).abs() < 1e-15);
        }
        assert_eq!(quantum_transition_probability(0, 0.0, 0.0, 2.0), 0.0);
    }

    #[test]
    fn transition_probability_matches_block_exponential() {
        let (n, d, g, t) = (2, 0.6, 0.3, 5.0);
        let blk = block_hamiltonian(n, 1.0, d, g);
        let u = algebra::hermitian_expm(&blk.h1, t).unwrap();
        let brute = u[(0, 1)].norm_sqr();
        assert!((quantum_transition_probability(n, d, g, t) - brute).abs() < 1e-12);
    }

    #[test]
    fn transition_probability_is_periodic() {
        let (n, d, g) = (3, 0.4, 0.25);
        let w = (0.25 * d * d + g * g * (n + 1) as f64).sqrt();
        for t in [0.1, 1.7, 4.0] {
            let p = quantum_transition_probability(n, d, g, t);
            let q = quantum_transition_probability(n, d, g, t + PI / w);
            assert!((p - q).abs() < 1e-12);
            assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn correspondence_cases() {
        for (n, b, d, t) in [(0, 1.0, 0.0, 0.7), (5, 0.3, 1.2, 9.1), (40, 2.0, -0.5, 3.3)] {
            let (q, c) = semiclassical_correspondence(n, b, d, t).unwrap();
            assert!((q - c).abs() < 1e-14);
        }
        assert_eq!(coupling_from_intensity(0.8, 0), 0.8);
        let (q, c) = semiclassical_correspondence(99, 1.0, 0.0, PI / 2.0).unwrap();
        assert!((q - 1.0).abs() < 1e-14 && (c - 1.0).abs() < 1e-14);
        assert!(semiclassical_correspondence(0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn coupling_from_frequency_default_moment() {
        assert!((coupling_from_frequency(-1.0, 2.0) - 2.0).abs() < 1e-15);
        assert!((coupling_from_frequency(1.0, 0.5) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn interaction_picture_cases() {
        let m = build_mode(4, 1.1).unwrap();
        let model = total_hamiltonian(&m, 0.6, 0.4);
        let u0 = interaction_picture_evolution(&model, 0.0).unwrap();
        assert!(u0.max_abs_diff(&CMatrix::identity(10)).unwrap() < 1e-14);

        let u = interaction_picture_evolution(&model, 2.7).unwrap();
        assert!(unitarity_defect(&u) < 1e-12);
        let d = m.dim();
        // Only diagonal and |n,±⟩ ↔ |n±1,∓⟩ entries may be non-zero.
        for i in 0..2 * d {
            for j in 0..2 * d {
                let (si, ni) = (i / d, (i % d) as i64);
                let (sj, nj) = (j / d, (j % d) as i64);
                let allowed = i == j || (si == 0 && sj == 1 && nj == ni + 1) || (si == 1 && sj == 0 && ni == nj + 1);
                if !allowed {
                    assert!(u[(i, j)].norm() < 1e-13, "({i},{j}) = {:?}", u[(i, j)]);
                }
            }
        }
        assert!(interaction_split_deviation(&model, 2.7).unwrap() < 1e-9);
    }

    #[test]
    fn full_evolution_matches_closed_form() {
        let (n, b, d) = (2, 1.0, 0.5);
        let w = 1.0;
        let m = build_mode(n + 3, w).unwrap();
        let model = total_hamiltonian(&m, 0.5 * (d + w), coupling_from_intensity(b, n));
        let times: Vec<f64> = (0..50).map(|k| 0.2 * k as f64).collect();
        let full = full_transition_probabilities(&model, n, &times, Execution::Sequential).unwrap();
        for (t, p) in times.iter().zip(full) {
            assert!((p - transition_probability(b, d, *t)).abs() < 1e-10);
        }
    }

    #[test]
    fn hybrid_state_support_rules() {
        assert!(HybridState::basis(Spin::Down, 2, 5).unwrap().ensure_interior().is_ok());
        assert!(matches!(
            HybridState::basis(Spin::Down, 3, 5).unwrap().ensure_interior(),
            Err(Error::TruncationSupport { level: 3, limit: 2 })
        ));
        assert!(HybridState::basis(Spin::Up, 5, 5).is_err());
        assert!(HybridState::new(CVector::zeros(10), 5).is_err());
    }
}
