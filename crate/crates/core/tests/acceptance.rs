//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p rabiqed-core --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rabiqed_core::algebra::{anticommutator, commutator, pauli, CMatrix, I};
use rabiqed_core::exec::Execution;
use rabiqed_core::fermion::{self, MINUS, PLUS};
use rabiqed_core::jaynes_cummings::{build_jc, rwa_equivalence_check, rwa_error_curve};
use rabiqed_core::photon::{
    build_mode, coupling_from_intensity, full_transition_probabilities, interaction_split_deviation,
    semiclassical_correspondence, total_hamiltonian, HybridState, Spin,
};
use rabiqed_core::semiclassical::{
    exact_transition_probability, propagate_spin, rabi_frequency, resonance_peak, resonance_sweep, FieldConfig,
    SpinorState,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    run: fn() -> Outcome,
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

const AC1_TOL: f64 = 1e-8;
const AC1_BUDGET: Duration = Duration::from_secs(2);

fn ac1_semiclassical() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (b, b3, w) in [(1.0, 1.0, 2.0), (1.0, 1.5, 1.0), (0.3, 1.0, 2.6)] {
        let start = Instant::now();
        let cfg = FieldConfig::circular(b, b3, w).map_err(|e| e.to_string())?;
        let dt_max = 1e-3 / rabi_frequency(&cfg);
        let grid = linspace(0.0, 20.0, 2001);
        let traj = propagate_spin(&cfg, SpinorState::minus(), &grid, dt_max).map_err(|e| e.to_string())?;
        let mut err = 0.0f64;
        for (t, p) in grid.iter().zip(&traj.transition_prob) {
            err = err.max((p - exact_transition_probability(&cfg, *t).unwrap()).abs());
        }
        let elapsed = start.elapsed();
        let case_ok = err <= AC1_TOL && elapsed < AC1_BUDGET;
        ok &= case_ok;
        lines.push(format!(
            "({b},{b3},{w}): max err {err:.2e} in {:.3}s",
            elapsed.as_secs_f64()
        ));
    }
    verdict(ok, format!("{} (tol {AC1_TOL:e}, budget 2 s)", lines.join("; ")))
}

fn ac2_resonance() -> Outcome {
    let b = 0.1;
    let cfg = FieldConfig::circular(b, 1.0, 0.0).map_err(|e| e.to_string())?;
    let grid: Vec<f64> = (0..=200).map(|k| 1.0 + 0.01 * k as f64).collect();
    let pts = resonance_sweep(&cfg, &grid, PI / b).map_err(|e| e.to_string())?;
    let best = resonance_peak(&pts).ok_or("empty sweep")?;
    let ok = (best.omega - 2.0).abs() <= 0.01 + 1e-12 && best.peak >= 1.0 - 1e-6;
    verdict(
        ok,
        format!(
            "argmax omega = {:.4}, peak = {:.10} (need 2.00±0.01, ≥ 1-1e-6)",
            best.omega, best.peak
        ),
    )
}

fn ac3_correspondence() -> Outcome {
    let b = 1.0;
    let w = 1.0;
    let times = linspace(0.0, 10.0, 200);
    let mut closed = 0.0f64;
    let mut full = 0.0f64;
    for n in [0usize, 3, 10] {
        for delta in [0.0, 1.0] {
            for &t in &times {
                let (q, c) = semiclassical_correspondence(n, b, delta, t).map_err(|e| e.to_string())?;
                closed = closed.max((q - c).abs());
            }
            let mode = build_mode(n + 3, w).map_err(|e| e.to_string())?;
            let model = total_hamiltonian(&mode, 0.5 * (delta + w), coupling_from_intensity(b, n));
            let probs =
                full_transition_probabilities(&model, n, &times, Execution::Parallel).map_err(|e| e.to_string())?;
            for (t, p) in times.iter().zip(probs) {
                let (_, c) = semiclassical_correspondence(n, b, delta, *t).unwrap();
                full = full.max((p - c).abs());
            }
        }
    }
    verdict(
        closed <= 1e-12 && full <= 1e-8,
        format!("closed-form max diff {closed:.2e} (tol 1e-12), full-matrix max diff {full:.2e} (tol 1e-8)"),
    )
}

fn ac4_interaction_split() -> Outcome {
    let mut comm = 0.0f64;
    for n_max in 1..=8 {
        for (w, b3, g) in [(1.0, 0.5, 0.3), (0.83, 0.61, 0.29), (2.7, -1.3, 1.9)] {
            let mode = build_mode(n_max, w).map_err(|e| e.to_string())?;
            let model = total_hamiltonian(&mode, b3, g);
            comm = comm.max(commutator(&model.h0_prime, &model.h1).unwrap().max_abs());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut split = 0.0f64;
    for _ in 0..5 {
        let n_max = rng.random_range(3..=8);
        let w = rng.random_range(0.2..3.0);
        let b3 = rng.random_range(-2.0..2.0);
        let g = rng.random_range(0.01..1.5);
        let t = rng.random_range(0.1..10.0);
        let mode = build_mode(n_max, w).map_err(|e| e.to_string())?;
        let model = total_hamiltonian(&mode, b3, g);
        split = split.max(interaction_split_deviation(&model, t).map_err(|e| e.to_string())?);
    }
    verdict(
        comm == 0.0 && split <= 1e-9,
        format!("max |[h0', h1]| = {comm:e} (exact), split deviation {split:.2e} (tol 1e-9)"),
    )
}

fn ac5_algebra() -> Outcome {
    let mut boson_diag = 0.0f64;
    let mut boson_off = 0.0f64;
    for n_max in 1..=12 {
        let m = build_mode(n_max, 1.0).map_err(|e| e.to_string())?;
        let comm = commutator(m.annihilate(), m.create()).unwrap();
        for r in 0..=n_max {
            for c in 0..=n_max {
                let expect = if r != c {
                    0.0
                } else if r == n_max {
                    -(n_max as f64)
                } else {
                    1.0
                };
                let e = (comm[(r, c)].re - expect).abs() + comm[(r, c)].im.abs();
                if r == c {
                    boson_diag = boson_diag.max(e / n_max as f64);
                } else {
                    boson_off = boson_off.max(e);
                }
            }
        }
    }

    let reg = fermion::build_register();
    let id = CMatrix::identity(4);
    let mut anti = 0.0f64;
    for i in 1..=2 {
        for j in 1..=2 {
            let expect = if i == j { id.clone() } else { CMatrix::zeros(4, 4) };
            anti = anti
                .max(
                    anticommutator(reg.mode(i), &reg.mode(j).adjoint())
                        .unwrap()
                        .max_abs_diff(&expect)
                        .unwrap(),
                )
                .max(anticommutator(reg.mode(i), reg.mode(j)).unwrap().max_abs())
                .max(
                    anticommutator(&reg.mode(i).adjoint(), &reg.mode(j).adjoint())
                        .unwrap()
                        .max_abs(),
                );
        }
    }
    let j = fermion::build_angular(&reg);
    let su2 = commutator(&j.j_plus, &j.j_minus)
        .unwrap()
        .max_abs_diff(&j.j3.scale_real(2.0))
        .unwrap()
        .max(commutator(&j.j3, &j.j_plus).unwrap().max_abs_diff(&j.j_plus).unwrap())
        .max(
            commutator(&j.j3, &j.j_minus)
                .unwrap()
                .max_abs_diff(&j.j_minus.scale_real(-1.0))
                .unwrap(),
        );
    let phys = [PLUS, MINUS];
    let raising = (&pauli::sigma_x() + &pauli::sigma_y().scale(I)).scale_real(0.5);
    let rep = j
        .j_plus
        .project(&phys)
        .max_abs_diff(&raising)
        .unwrap()
        .max(j.j_minus.project(&phys).max_abs_diff(&raising.adjoint()).unwrap());

    let ok = boson_off == 0.0 && boson_diag <= 4.0 * f64::EPSILON && anti == 0.0 && su2 == 0.0 && rep == 0.0;
    verdict(
        ok,
        format!(
            "boson off-diag {boson_off:e} (exact), diag {boson_diag:.1e}·n_max (≤ 4 ulp); \
             anticommutators {anti:e}, su(2) {su2:e}, sigma representation {rep:e} (all exact)"
        ),
    )
}

fn ac6_reduction() -> Outcome {
    let reg = fermion::build_register();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n_max in [3usize, 5] {
        for _ in 0..3 {
            let b3 = rng.random_range(-2.0..2.0);
            let g = rng.random_range(0.01..2.0);
            let mode = build_mode(n_max, 1.0).map_err(|e| e.to_string())?;
            worst = worst.max(fermion::semiclassical_reduction(&reg, &mode, b3, g).map_err(|e| e.to_string())?);
            cases += 1;
        }
    }
    verdict(worst == 0.0, format!("{cases} cases, max deviation {worst:e} (exact)"))
}

fn ac7_jc_structure() -> Outcome {
    let mut equiv = 0.0f64;
    let mut rwa_comm = 0.0f64;
    let mut full_comm = f64::INFINITY;
    let mut parity = 0.0f64;
    for (n_max, g) in [(4, 0.05), (8, 0.3), (12, 1.1)] {
        let mode = build_mode(n_max, 1.0).map_err(|e| e.to_string())?;
        let jc = build_jc(&mode, 0.5, g);
        let x = jc.excitation_number();
        equiv = equiv.max(rwa_equivalence_check(&jc).map_err(|e| e.to_string())?);
        rwa_comm = rwa_comm.max(commutator(&jc.h_rwa, &x).unwrap().max_abs());
        full_comm = full_comm.min(commutator(&jc.h_full, &x).unwrap().frobenius());
        parity = parity.max(commutator(&jc.h_full, &jc.parity()).unwrap().max_abs());
    }
    verdict(
        equiv == 0.0 && rwa_comm == 0.0 && full_comm > 0.0 && parity == 0.0,
        format!(
            "rwa_equivalence {equiv:e}, |[h_rwa, X]| {rwa_comm:e}, min ‖[h_full, X]‖ {full_comm:.3e} (> 0), \
             |[h_full, parity]| {parity:e}"
        ),
    )
}

fn ac8_counter_rotating() -> Outcome {
    let start = Instant::now();
    let mode = build_mode(20, 1.0).map_err(|e| e.to_string())?;
    let psi0 = HybridState::basis(Spin::Down, 0, mode.dim()).map_err(|e| e.to_string())?;
    let strong = rwa_error_curve(&build_jc(&mode, 0.5, 0.05), &psi0, 200.0).map_err(|e| e.to_string())?;
    let weak = rwa_error_curve(&build_jc(&mode, 0.5, 0.005), &psi0, 200.0).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    verdict(
        weak < strong && elapsed < Duration::from_secs(30),
        format!(
            "d(g=0.05) = {strong:.4e}, d(g=0.005) = {weak:.4e}, {:.2}s (budget 30 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: "AC1",
            title: "exact vs numeric semiclassical",
            run: ac1_semiclassical,
        },
        Criterion {
            id: "AC2",
            title: "resonance location",
            run: ac2_resonance,
        },
        Criterion {
            id: "AC3",
            title: "quantum-classical correspondence",
            run: ac3_correspondence,
        },
        Criterion {
            id: "AC4",
            title: "interaction-picture split",
            run: ac4_interaction_split,
        },
        Criterion {
            id: "AC5",
            title: "algebra suites",
            run: ac5_algebra,
        },
        Criterion {
            id: "AC6",
            title: "fermion semiclassical reduction",
            run: ac6_reduction,
        },
        Criterion {
            id: "AC7",
            title: "JC/RWA structure",
            run: ac7_jc_structure,
        },
        Criterion {
            id: "AC8",
            title: "counter-rotating suppression",
            run: ac8_counter_rotating,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        match (c.run)() {
            Ok(detail) => println!("[PASS] {} {}: {}", c.id, c.title, detail),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {} {}: {}", c.id, c.title, detail);
            }
        }
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
