//! Named operator identities evaluated on concrete matrices, reported as
//! pass/fail rows with the measured deviation.

use crate::algebra::{anticommutator, commutator, hermitian_expm, pauli, tensor, unitarity_defect, CMatrix, I};
use crate::fermion::{self, PhotonOrdering, MINUS, PLUS};
use crate::jaynes_cummings::{build_jc, rwa_equivalence_check};
use crate::photon::{build_mode, total_hamiltonian};
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, max_deviation: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            max_deviation,
            tolerance,
        }
    }

    fn exact(name: impl Into<String>, max_deviation: f64) -> Self {
        Self::new(name, max_deviation, 0.0)
    }

    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

/// Relative bound on the diagonal of the truncated `[b̂, b̂⁺]`, in units of
/// `n_max`: four ulps.
pub const BOSON_ULP_TOL: f64 = 4.0 * f64::EPSILON;

fn dev(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    a.max_abs_diff(b)
}

/// Fermionic register identities: anticommutators, su(2), the physical-basis
/// representation and the reduction to the spin model.
pub fn fermion_checks() -> Result<Vec<Check>> {
    let reg = fermion::build_register();
    let j = fermion::build_angular(&reg);
    let id = CMatrix::identity(4);
    let zero = CMatrix::zeros(4, 4);
    let mut out = Vec::new();

    let mut acr = 0.0f64;
    let mut ann = 0.0f64;
    let mut cre = 0.0f64;
    for i in 1..=2 {
        for k in 1..=2 {
            let expect = if i == k { &id } else { &zero };
            acr = acr.max(dev(&anticommutator(reg.mode(i), &reg.mode(k).adjoint())?, expect)?);
            ann = ann.max(anticommutator(reg.mode(i), reg.mode(k))?.max_abs());
            cre = cre.max(anticommutator(&reg.mode(i).adjoint(), &reg.mode(k).adjoint())?.max_abs());
        }
    }
    out.push(Check::exact("anticommutator {psi_i, psi_j^+} = delta_ij", acr));
    out.push(Check::exact("anticommutator {psi_i, psi_j} = 0", ann));
    out.push(Check::exact("anticommutator {psi_i^+, psi_j^+} = 0", cre));

    out.push(Check::exact(
        "[J3, J+] = J+",
        dev(&commutator(&j.j3, &j.j_plus)?, &j.j_plus)?,
    ));
    out.push(Check::exact(
        "[J3, J-] = -J-",
        dev(&commutator(&j.j3, &j.j_minus)?, &-&j.j_minus)?,
    ));
    out.push(Check::exact(
        "[J+, J-] = 2 J3",
        dev(&commutator(&j.j_plus, &j.j_minus)?, &j.j3.scale_real(2.0))?,
    ));
    out.push(Check::exact("J- = (J+)^+", dev(&j.j_minus, &j.j_plus.adjoint())?));

    let phys = [PLUS, MINUS];
    let raising = (&pauli::sigma_x() + &pauli::sigma_y().scale(I)).scale_real(0.5);
    let rep = dev(&j.j_plus.project(&phys), &raising)?
        .max(dev(&j.j_minus.project(&phys), &raising.adjoint())?)
        .max(dev(&j.j3.project(&phys), &pauli::sigma_z().scale_real(0.5))?);
    out.push(Check::exact("J on {|1,0>,|0,1>} = sigma/2", rep));
    out.push(Check::exact(
        "J^2 = 3/4 on single-fermion sector",
        dev(&j.casimir().project(&phys), &CMatrix::identity(2).scale_real(0.75))?,
    ));

    let mode = build_mode(4, 1.0)?;
    let num = tensor(&reg.total_number(), &CMatrix::identity(mode.dim()));
    let hi = fermion::hybrid_interaction(&reg, &mode, 0.37, PhotonOrdering::Normal);
    let hf = tensor(
        &fermion::free_spinor_hamiltonian(&reg, 0.81),
        &CMatrix::identity(mode.dim()),
    );
    out.push(Check::exact(
        "fermion number conserved",
        commutator(&num, &hi)?.max_abs().max(commutator(&num, &hf)?.max_abs()),
    ));
    out.push(Check::exact(
        "interaction: field form = J form",
        dev(&fermion::hybrid_interaction_from_fields(&reg, &mode, 0.37), &hi)?,
    ));

    let mut red = 0.0f64;
    for (n_max, b3, g) in [(3, 0.7, 0.2), (5, 1.3, 0.45), (5, -0.25, 0.9)] {
        let m = build_mode(n_max, 1.0)?;
        red = red.max(fermion::semiclassical_reduction(&reg, &m, b3, g)?);
    }
    out.push(Check::exact("single-fermion reduction = spin model", red));
    Ok(out)
}

/// Matrix substrate and bosonic identities.
pub fn algebra_checks() -> Result<Vec<Check>> {
    let (sx, sy, sz, id) = (pauli::sigma_x(), pauli::sigma_y(), pauli::sigma_z(), pauli::identity());
    let mut out = vec![
        Check::exact("sigma1 sigma2 = i sigma3", dev(&(&sx * &sy), &sz.scale(I))?),
        Check::exact(
            "[sigma1, sigma2] = 2i sigma3",
            dev(&commutator(&sx, &sy)?, &sz.scale(I * 2.0))?,
        ),
        Check::exact(
            "{sigma1, sigma1} = 2",
            dev(&anticommutator(&sx, &sx)?, &id.scale_real(2.0))?,
        ),
    ];

    let h = &(&sx.scale_real(0.3) + &sy.scale_real(-1.1)) + &sz.scale_real(0.6);
    let mut unit = 0.0f64;
    for t in [0.1, 1.0, 10.0] {
        unit = unit.max(unitarity_defect(&hermitian_expm(&h, t)?));
    }
    out.push(Check::new("expm unitarity", unit, 1e-10));
    let group = dev(
        &(&hermitian_expm(&h, 0.7)? * &hermitian_expm(&h, 2.2)?),
        &hermitian_expm(&h, 2.9)?,
    )?;
    out.push(Check::new("expm group law", group, 1e-9));

    let (a, b, c, d) = (&sx + &sz.scale(I), &sy.scale_real(0.5), &(&sz + &sx), &sy.scale(I));
    let mixed = dev(&(&tensor(&a, b) * &tensor(c, d)), &tensor(&(&a * c), &(b * d)))?;
    out.push(Check::new("tensor mixed product", mixed, 1e-12));

    // Matrix elements are rounded √n, so (√n)² may miss n by an ulp; the
    // diagonal is held to a few ulps of n_max, everything else to zero.
    let mut trunc_diag = 0.0f64;
    let mut trunc_off = 0.0f64;
    for n_max in 1..=8 {
        let m = build_mode(n_max, 1.0)?;
        let mut diag = vec![1.0; n_max + 1];
        diag[n_max] = -(n_max as f64);
        let comm = commutator(m.annihilate(), m.create())?;
        let diff = &comm - &CMatrix::from_real_diagonal(&diag);
        for r in 0..=n_max {
            for c in 0..=n_max {
                let e = diff[(r, c)].norm();
                if r == c {
                    trunc_diag = trunc_diag.max(e / n_max as f64);
                } else {
                    trunc_off = trunc_off.max(e);
                }
            }
        }
    }
    out.push(Check::new(
        "boson [b, b+] diagonal = (1, ..., 1, -n_max)",
        trunc_diag,
        BOSON_ULP_TOL,
    ));
    out.push(Check::exact("boson [b, b+] off-diagonal = 0", trunc_off));

    let mut split = 0.0f64;
    for n_max in 1..=8 {
        let m = build_mode(n_max, 0.83)?;
        let model = total_hamiltonian(&m, 0.61, 0.29);
        split = split.max(commutator(&model.h0_prime, &model.h1)?.max_abs());
    }
    out.push(Check::exact("[H0', H1] = 0", split));

    let m = build_mode(6, 1.0)?;
    let jc = build_jc(&m, 0.5, 0.3);
    out.push(Check::exact(
        "RWA interaction = circular interaction",
        rwa_equivalence_check(&jc)?,
    ));
    out.push(Check::exact(
        "[H_full, parity] = 0",
        commutator(&jc.h_full, &jc.parity())?.max_abs(),
    ));
    out.push(Check::exact(
        "[H_rwa, N + sigma3/2] = 0",
        commutator(&jc.h_rwa, &jc.excitation_number())?.max_abs(),
    ));
    Ok(out)
}
