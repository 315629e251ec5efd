//! Acceptance suite: one test per criterion, each asserting its stated
//! tolerance and printing a pass line (run with `--nocapture` to see them).

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcorr::correlations::{measure_all, qd_cc, qd_oracle};
use qcorr::noisedyn::{
    dephasing_propagate, evolve, steady_collective, steady_detuning_only, steady_local,
    steady_transverse_only, EvolutionConfig, Trajectory,
};
use qcorr::qstate::{
    BellState, CoherenceSign, DensityMatrix, HamiltonianParams, NoiseConfig, ProductState, XState,
};
use qcorr_cli::{alpha_steady_record, run_scan_alpha, run_scan_beta, run_table1, ScanFamily,
    ScanNoise};

const GAMMA: f64 = 0.05;
const THIRD: f64 = 1.0 / 3.0;

fn free() -> HamiltonianParams {
    HamiltonianParams::free()
}

fn pass(number: usize, name: &str) {
    println!("acceptance {number:02} {name}: PASS");
}

fn table_states() -> Vec<(&'static str, DensityMatrix)> {
    vec![
        ("gg", DensityMatrix::product(ProductState::Gg)),
        ("eg", DensityMatrix::product(ProductState::Eg)),
        ("phi+", DensityMatrix::bell(BellState::PhiPlus)),
        ("phi-", DensityMatrix::bell(BellState::PhiMinus)),
        ("psi+", DensityMatrix::bell(BellState::PsiPlus)),
        ("psi-", DensityMatrix::bell(BellState::PsiMinus)),
    ]
}

fn global_cases() -> Vec<(&'static str, NoiseConfig)> {
    vec![
        ("detuning-only", NoiseConfig::global(GAMMA, 0.0).unwrap()),
        ("transverse-only", NoiseConfig::global(0.0, GAMMA).unwrap()),
        ("collective", NoiseConfig::global(GAMMA, GAMMA).unwrap()),
    ]
}

fn global_steady(noise: &NoiseConfig, x0: &XState) -> XState {
    match (noise.gamma_delta > 0.0, noise.gamma_omega > 0.0) {
        (true, false) => steady_detuning_only(x0),
        (false, true) => steady_transverse_only(x0),
        (true, true) => steady_collective(x0),
        (false, false) => *x0,
    }
}

/// Conservation bounds every trajectory in this suite must satisfy.
fn assert_conserved(traj: &Trajectory, context: &str, x_structured: bool) {
    let report = traj.conservation();
    assert!(
        report.max_trace_drift <= 1e-10,
        "{context}: trace drift {:e}",
        report.max_trace_drift
    );
    assert!(
        report.max_hermiticity_defect <= 1e-10,
        "{context}: hermiticity defect {:e}",
        report.max_hermiticity_defect
    );
    assert!(
        report.min_eigenvalue >= -1e-10,
        "{context}: min eigenvalue {:e}",
        report.min_eigenvalue
    );
    if x_structured {
        assert!(
            report.max_off_x_leakage <= 1e-10,
            "{context}: off-X leakage {:e}",
            report.max_off_x_leakage
        );
    }
}

fn evolve_free(
    rho0: &DensityMatrix,
    noise: &NoiseConfig,
    t_end: f64,
    record_every: usize,
) -> Trajectory {
    let cfg = EvolutionConfig::new(t_end, 0.01, record_every).unwrap();
    let traj = evolve(rho0, &free(), noise, &cfg).unwrap();
    assert_conserved(&traj, "acceptance trajectory", true);
    traj
}

#[test]
fn criterion_01_table1_reproduction() {
    let started = Instant::now();
    let entries = run_table1();
    assert_eq!(entries.len(), 12);
    for entry in &entries {
        assert!(
            entry.max_gap() <= 2e-3,
            "{}/{}: gap {:e}",
            entry.state,
            entry.block,
            entry.max_gap()
        );
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "table1 took {elapsed:?}");
    pass(1, "table1-reproduction");
}

#[test]
fn criterion_02_steady_discord_by_map_and_integration() {
    let cases = [
        (ProductState::Gg, NoiseConfig::global(0.0, GAMMA).unwrap(), 0.311),
        (ProductState::Gg, NoiseConfig::global(GAMMA, GAMMA).unwrap(), THIRD),
        (ProductState::Eg, NoiseConfig::global(GAMMA, GAMMA).unwrap(), 0.126),
    ];
    for (state, noise, expected) in cases {
        let rho0 = DensityMatrix::product(state);
        let x0 = rho0.to_x_state().unwrap();

        let (qd_map, _) = qd_cc(&global_steady(&noise, &x0));
        assert!(
            (qd_map - expected).abs() <= 1e-3,
            "map route: {qd_map} vs {expected}"
        );

        let traj = evolve_free(&rho0, &noise, 20.0 / GAMMA, 40_000);
        let x_final = traj.final_state().to_x_state().unwrap();
        let (qd_evolved, _) = qd_cc(&x_final);
        assert!(
            (qd_evolved - expected).abs() <= 1e-3,
            "integration route: {qd_evolved} vs {expected}"
        );
    }
    pass(2, "steady-discord-two-routes");
}

#[test]
fn criterion_03_transverse_noise_keeps_classical_correlations() {
    let rho0 = DensityMatrix::bell(BellState::PhiPlus);
    let noise = NoiseConfig::global(0.0, GAMMA).unwrap();
    let traj = evolve_free(&rho0, &noise, 20.0 / GAMMA, 100);

    let mut previous_eof = f64::INFINITY;
    let mut previous_qd = f64::INFINITY;
    let mut last = (0.0, 0.0);
    for (t, state) in traj.iter() {
        let x = state.to_x_state().unwrap();
        let record = measure_all(&x);
        assert!(
            (record.cc - 1.0).abs() <= 1e-6,
            "cc = {} at t = {t}",
            record.cc
        );
        assert!(record.eof <= previous_eof + 1e-9, "eof rose at t = {t}");
        assert!(record.qd <= previous_qd + 1e-9, "qd rose at t = {t}");
        previous_eof = record.eof;
        previous_qd = record.qd;
        last = (record.eof, record.qd);
    }
    assert!(last.0 < 1e-3, "final eof {}", last.0);
    assert!(last.1 < 1e-3, "final qd {}", last.1);
    pass(3, "transverse-only-classical-correlations");
}

#[test]
fn criterion_04_collective_noise_esd_and_discord_revival() {
    let rho0 = DensityMatrix::bell(BellState::PhiPlus);
    let noise = NoiseConfig::global(GAMMA, GAMMA).unwrap();
    let traj = evolve_free(&rho0, &noise, 20.0 / GAMMA, 100);

    let records: Vec<_> = traj
        .iter()
        .map(|(t, state)| (t, measure_all(&state.to_x_state().unwrap())))
        .collect();

    // Entanglement dies at a finite sample and stays exactly zero.
    let death = records
        .iter()
        .position(|(_, r)| r.eof == 0.0)
        .expect("entanglement sudden death happens");
    assert!(death > 0, "initial state is entangled");
    assert!(death < records.len() - 1, "death is at finite time");
    assert!(records[death..].iter().all(|(_, r)| r.eof == 0.0));

    // Discord dips to an interior minimum and then revives to 1/3.
    let (min_idx, _) = records
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.qd.partial_cmp(&b.1 .1.qd).unwrap())
        .unwrap();
    assert!(min_idx > 0 && min_idx < records.len() - 1, "interior minimum");
    let final_qd = records.last().unwrap().1.qd;
    let min_qd = records[min_idx].1.qd;
    assert!(final_qd > min_qd + 0.01, "discord revives after the minimum");
    assert!((final_qd - THIRD).abs() <= 1e-3, "final qd {final_qd}");
    pass(4, "collective-esd-discord-revival");
}

#[test]
fn criterion_05_alpha_scan_maxima() {
    let n_points = 2001;
    let psi = run_scan_alpha(ScanFamily::PsiAlphaPlus, ScanNoise::TransverseOnly, n_points)
        .unwrap();

    let near = |target: f64| {
        psi.maxima
            .iter()
            .find(|m| (m.location - target).abs() <= 5e-3)
            .unwrap_or_else(|| panic!("no maximum within 5e-3 of {target}"))
    };
    let low = near(0.169);
    let high = near(0.986);
    assert!((low.value - THIRD).abs() <= 1e-3, "max qd {}", low.value);
    assert!((high.value - THIRD).abs() <= 1e-3, "max qd {}", high.value);

    let bell_point = alpha_steady_record(
        ScanFamily::PsiAlphaPlus,
        ScanNoise::TransverseOnly,
        std::f64::consts::FRAC_1_SQRT_2,
    )
    .unwrap();
    assert!(bell_point.qd.abs() <= 1e-9, "qd at 1/sqrt2: {}", bell_point.qd);

    let phi = run_scan_alpha(ScanFamily::PhiAlphaPlus, ScanNoise::TransverseOnly, n_points)
        .unwrap();
    for (a, b) in psi.records.iter().zip(&phi.records) {
        assert!((a.qd - b.qd).abs() <= 1e-9, "family curves differ");
    }
    pass(5, "alpha-scan-maxima");
}

#[test]
fn criterion_06_beta_states_are_uniformly_maximally_discordant() {
    let result = run_scan_beta(101).unwrap();
    assert_eq!(result.records.len(), 101);
    for (beta, record) in result.values.iter().zip(&result.records) {
        assert!(
            (record.qd - THIRD).abs() <= 1e-9,
            "qd {} at beta {beta}",
            record.qd
        );
        assert_eq!(record.eof, 0.0, "eof nonzero at beta {beta}");
    }
    pass(6, "beta-family-maximal-discord");
}

#[test]
fn criterion_07_c_class_maximal_discord_under_dephasing() {
    use num_complex::Complex64;
    for k in 0..20 {
        let magnitude = (k + 1) as f64 / 20.0 / 3.0;
        let phase = k as f64 * std::f64::consts::TAU / 20.0;
        let sign = if k % 2 == 0 {
            CoherenceSign::Plus
        } else {
            CoherenceSign::Minus
        };
        let coherence = Complex64::from_polar(magnitude, phase);
        let x0 = DensityMatrix::c_class(sign, coherence)
            .unwrap()
            .to_x_state()
            .unwrap();
        let (qd, _) = qd_cc(&steady_detuning_only(&x0));
        assert!(
            (qd - THIRD).abs() <= 1e-9,
            "qd {qd} for c = {coherence} ({sign:?})"
        );
    }
    pass(7, "c-class-maximal-discord");
}

#[test]
fn criterion_08_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20260811);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let x = XState::sample(&mut rng);
        let (formula, _) = qd_cc(&x);
        let searched = qd_oracle(&x, 64, 40);
        worst = worst.max((formula - searched).abs());
    }
    assert!(worst <= 1e-4, "max |formula - oracle| = {worst:e}");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "oracle sweep took {elapsed:?}");
    pass(8, "oracle-equivalence");
}

#[test]
fn criterion_09_analytic_versus_numeric() {
    // Closed-form dephasing against integration over t in [0, 5/Γ].
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let dephasing = NoiseConfig::global(GAMMA, 0.0).unwrap();
    let mut states = vec![DensityMatrix::bell(BellState::PsiPlus).to_x_state().unwrap()];
    states.push(XState::sample(&mut rng));
    for x0 in states {
        let traj = evolve_free(&x0.to_density(), &dephasing, 5.0 / GAMMA, 100);
        for (t, state) in traj.iter() {
            let analytic = dephasing_propagate(&x0, GAMMA, t).to_density();
            let gap = state.max_abs_diff(&analytic);
            assert!(gap <= 1e-8, "dephasing gap {gap:e} at t = {t}");
        }
    }

    // Steady maps against long-time integration, six states × three cases.
    for (state_name, rho0) in table_states() {
        let x0 = rho0.to_x_state().unwrap();
        for (case_name, noise) in global_cases() {
            let traj = evolve_free(&rho0, &noise, 20.0 / GAMMA, 40_000);
            let expected = global_steady(&noise, &x0).to_density();
            let gap = traj.final_state().max_abs_diff(&expected);
            assert!(gap <= 1e-6, "{state_name}/{case_name}: gap {gap:e}");
        }
    }
    pass(9, "analytic-versus-numeric");
}

#[test]
fn criterion_10_local_noise_destroys_quantum_correlations() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let cases = [
        NoiseConfig::local(GAMMA, 0.0).unwrap(),
        NoiseConfig::local(0.0, GAMMA).unwrap(),
        NoiseConfig::local(GAMMA, GAMMA).unwrap(),
    ];
    for sample in 0..100 {
        let x0 = XState::sample(&mut rng);
        for noise in &cases {
            let steady = steady_local(&x0, noise).unwrap();
            let record = measure_all(&steady);
            record.validate().unwrap();
            assert!(
                record.qd.abs() <= 1e-9,
                "sample {sample}: qd {} under {noise:?}",
                record.qd
            );
            assert_eq!(record.eof, 0.0, "sample {sample}: eof under {noise:?}");

            if noise.gamma_delta == 0.0 {
                // Transverse-only: populations equalize and both coherences
                // take the value ¼(ρ₁₄(0) + ρ₂₃(0) + h.c.), exactly.
                let expected = ((x0.c14() + x0.c14().conj())
                    + (x0.c23() + x0.c23().conj()))
                    * 0.25;
                assert_eq!(steady.populations(), [0.25; 4]);
                assert_eq!(steady.c14(), expected);
                assert_eq!(steady.c23(), expected);
            }
        }

        // Spot-check the maps against long-time integration.
        if sample < 3 {
            for noise in &cases {
                let traj = evolve_free(&x0.to_density(), noise, 20.0 / GAMMA, 40_000);
                let expected = steady_local(&x0, noise).unwrap().to_density();
                let gap = traj.final_state().max_abs_diff(&expected);
                assert!(gap <= 1e-6, "sample {sample}: local gap {gap:e}");
            }
        }
    }
    pass(10, "local-noise-negative-result");
}

#[test]
fn criterion_11_conservation_suite() {
    let mut cases = global_cases();
    cases.push(("local-both", NoiseConfig::local(GAMMA, GAMMA).unwrap()));
    cases.push(("local-transverse", NoiseConfig::local(0.0, GAMMA).unwrap()));
    for (state_name, rho0) in table_states() {
        for (case_name, noise) in &cases {
            let traj = evolve_free(&rho0, noise, 200.0, 500);
            assert_conserved(&traj, &format!("{state_name}/{case_name}"), true);
        }
    }
    pass(11, "conservation-suite");
}

#[test]
fn criterion_12_decoherence_free_subspaces() {
    let collective = NoiseConfig::global(GAMMA, GAMMA).unwrap();
    let transverse = NoiseConfig::global(0.0, GAMMA).unwrap();
    let dephasing = NoiseConfig::global(GAMMA, 0.0).unwrap();
    let cfg = EvolutionConfig::new(200.0, 0.01, 500).unwrap();

    // The singlet is untouched by the full collective dynamics, including a
    // coherently driven run.
    let phi_minus = DensityMatrix::bell(BellState::PhiMinus);
    for h in [free(), HamiltonianParams::new(0.4, 0.3).unwrap()] {
        let traj = evolve(&phi_minus, &h, &collective, &cfg).unwrap();
        assert_conserved(&traj, "phi- collective", h.is_free());
        for (t, state) in traj.iter() {
            let gap = state.max_abs_diff(&phi_minus);
            assert!(gap <= 1e-9, "phi- moved by {gap:e} at t = {t}");
        }
    }

    // Ψ⁻ is safe under transverse noise alone.
    let psi_minus = DensityMatrix::bell(BellState::PsiMinus);
    let traj = evolve(&psi_minus, &free(), &transverse, &cfg).unwrap();
    assert_conserved(&traj, "psi- transverse", true);
    for (t, state) in traj.iter() {
        let gap = state.max_abs_diff(&psi_minus);
        assert!(gap <= 1e-9, "psi- moved by {gap:e} at t = {t}");
    }

    // Diagonal states and both inner Bell states are safe under longitudinal
    // noise alone.
    for rho0 in [
        DensityMatrix::product(ProductState::Gg),
        DensityMatrix::product(ProductState::Ee),
        DensityMatrix::product(ProductState::Eg),
        DensityMatrix::product(ProductState::Ge),
        DensityMatrix::maximally_mixed(),
        DensityMatrix::bell(BellState::PhiPlus),
        DensityMatrix::bell(BellState::PhiMinus),
    ] {
        let traj = evolve(&rho0, &free(), &dephasing, &cfg).unwrap();
        assert_conserved(&traj, "dephasing DFS", true);
        for (t, state) in traj.iter() {
            let gap = state.max_abs_diff(&rho0);
            assert!(gap <= 1e-9, "diagonal state moved by {gap:e} at t = {t}");
        }
    }
    pass(12, "decoherence-free-subspaces");
}
