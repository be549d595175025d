//! Second quantization of the Pauli spinor.
//!
//! The two spinor components become fermionic modes `ψ̂₁, ψ̂₂` acting on
//! `|n₁, n₂⟩`, ordered `{|0,0⟩, |0,1⟩, |1,0⟩, |1,1⟩}` (mode 1 outer). The
//! Jordan–Wigner representation is `ψ̂₁ = a⊗I`, `ψ̂₂ = Z⊗a` with
//! `a = |0⟩⟨1|` and `Z = diag(1, −1)`.
//!
//! The single-fermion states `|1,0⟩` and `|0,1⟩` play the roles of `|+⟩` and
//! `|−⟩`; on that sector the fermionic model reduces to the spin model of
//! [`crate::photon`].

use crate::algebra::{pauli, tensor, CMatrix, ONE, ZERO};
use crate::photon::{self, BosonMode};
use crate::Result;

/// `|0,0⟩`.
pub const VACUUM: usize = 0;
/// `|0,1⟩`, identified with `|−⟩`.
pub const MINUS: usize = 1;
/// `|1,0⟩`, identified with `|+⟩`.
pub const PLUS: usize = 2;
/// `|1,1⟩`.
pub const DOUBLE: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct FermionRegister {
    pub psi1: CMatrix,
    pub psi2: CMatrix,
}

pub fn build_register() -> FermionRegister {
    let a = CMatrix::from_rows([[ZERO, ONE], [ZERO, ZERO]]);
    let z = pauli::sigma_z();
    FermionRegister {
        psi1: tensor(&a, &CMatrix::identity(2)),
        psi2: tensor(&z, &a),
    }
}

impl FermionRegister {
    pub fn mode(&self, i: usize) -> &CMatrix {
        match i {
            1 => &self.psi1,
            2 => &self.psi2,
            _ => panic!("fermion mode index must be 1 or 2, got {i}"),
        }
    }

    /// `ψ̂ᵢ⁺ψ̂ᵢ`.
    pub fn occupation(&self, i: usize) -> CMatrix {
        let p = self.mode(i);
        &p.adjoint() * p
    }

    /// `ψ̂₁⁺ψ̂₁ + ψ̂₂⁺ψ̂₂`.
    pub fn total_number(&self) -> CMatrix {
        &self.occupation(1) + &self.occupation(2)
    }
}

/// `B₃(ψ̂₁⁺ψ̂₁ − ψ̂₂⁺ψ̂₂)`.
pub fn free_spinor_hamiltonian(reg: &FermionRegister, b3: f64) -> CMatrix {
    (&reg.occupation(1) - &reg.occupation(2)).scale_real(b3)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngularSet {
    pub j_plus: CMatrix,
    pub j_minus: CMatrix,
    pub j3: CMatrix,
}

/// `Ĵ₊ = ψ̂₁⁺ψ̂₂`, `Ĵ₋ = ψ̂₂⁺ψ̂₁`, `Ĵ₃ = (ψ̂₁⁺ψ̂₁ − ψ̂₂⁺ψ̂₂)/2`.
pub fn build_angular(reg: &FermionRegister) -> AngularSet {
    AngularSet {
        j_plus: &reg.psi1.adjoint() * &reg.psi2,
        j_minus: &reg.psi2.adjoint() * &reg.psi1,
        j3: (&reg.occupation(1) - &reg.occupation(2)).scale_real(0.5),
    }
}

impl AngularSet {
    /// `Ĵ² = Ĵ₃² + (Ĵ₊Ĵ₋ + Ĵ₋Ĵ₊)/2`.
    pub fn casimir(&self) -> CMatrix {
        let pm = &self.j_plus * &self.j_minus;
        let mp = &self.j_minus * &self.j_plus;
        &(&self.j3 * &self.j3) + &(&pm + &mp).scale_real(0.5)
    }
}

/// Which ladder operator accompanies `Ĵ₊` in the interaction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PhotonOrdering {
    /// `Ĵ₊b̂ + Ĵ₋b̂⁺`, for `ω > 0`.
    #[default]
    Normal,
    /// `Ĵ₊b̂⁺ + Ĵ₋b̂`, for `ω < 0`.
    Exchanged,
}

impl PhotonOrdering {
    pub fn for_mode(mode: &BosonMode) -> Self {
        if mode.is_reversed() {
            PhotonOrdering::Exchanged
        } else {
            PhotonOrdering::Normal
        }
    }
}

/// `Ω(Ĵ₊⊗b̂ + Ĵ₋⊗b̂⁺)` on fermion⊗Fock (fermion outer), with the ladder
/// operators exchanged for [`PhotonOrdering::Exchanged`].
pub fn hybrid_interaction(reg: &FermionRegister, mode: &BosonMode, coupling: f64, ordering: PhotonOrdering) -> CMatrix {
    let j = build_angular(reg);
    let (b, bd) = match ordering {
        PhotonOrdering::Normal => (mode.annihilate(), mode.create()),
        PhotonOrdering::Exchanged => (mode.create(), mode.annihilate()),
    };
    (&tensor(&j.j_plus, b) + &tensor(&j.j_minus, bd)).scale_real(coupling)
}

/// The same interaction assembled from the field operators as
/// `Ω(ψ̂₁⁺ψ̂₂⊗b̂ + (ψ̂₁⁺ψ̂₂)⁺⊗b̂⁺)`.
///
/// The Hermitian partner `(ψ̂₁⁺ψ̂₂)⁺ = ψ̂₂⁺ψ̂₁ = −ψ̂₁ψ̂₂⁺`: the product written
/// in the opposite order carries a fermionic sign.
pub fn hybrid_interaction_from_fields(reg: &FermionRegister, mode: &BosonMode, coupling: f64) -> CMatrix {
    let hop = &reg.psi1.adjoint() * &reg.psi2;
    (&tensor(&hop, mode.annihilate()) + &tensor(&hop.adjoint(), mode.create())).scale_real(coupling)
}

/// Indices of `|1,0⟩⊗|n⟩` followed by `|0,1⟩⊗|n⟩`, i.e. the single-fermion
/// sector in spin⊗Fock order.
pub fn single_fermion_indices(fock_dim: usize) -> Vec<usize> {
    (0..fock_dim)
        .map(|n| PLUS * fock_dim + n)
        .chain((0..fock_dim).map(|n| MINUS * fock_dim + n))
        .collect()
}

/// Projects `Ĥ_sf⊗I + Ĥ_sI` onto the single-fermion sector and returns the
/// largest entrywise distance to the spin-plus-interaction part of the
/// circular photon model.
pub fn semiclassical_reduction(reg: &FermionRegister, mode: &BosonMode, b3: f64, coupling: f64) -> Result<f64> {
    let d = mode.dim();
    let full = &tensor(&free_spinor_hamiltonian(reg, b3), &CMatrix::identity(d))
        + &hybrid_interaction(reg, mode, coupling, PhotonOrdering::for_mode(mode));
    let reduced = full.project(&single_fermion_indices(d));
    let spin_model = photon::total_hamiltonian(mode, b3, coupling).spin_and_interaction();
    reduced.max_abs_diff(&spin_model)
}
