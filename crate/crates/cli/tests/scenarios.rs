//! Scenario-level invariant: for noise-only runs, the closed-form steady
//! measures coincide with the measures of the integrated trajectory's final
//! sample.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcorr::qstate::{
    AlphaFamily, BellState, CoherenceSign, HamiltonianParams, NoiseConfig, NoiseTopology,
    ProductState,
};
use qcorr::EvolutionConfig;
use qcorr_cli::{run_evolve, run_steady, InitialState, RunConfig};

fn random_initial(rng: &mut ChaCha8Rng) -> InitialState {
    match rng.random_range(0..6) {
        0 => InitialState::Product(
            [
                ProductState::Gg,
                ProductState::Ee,
                ProductState::Eg,
                ProductState::Ge,
            ][rng.random_range(0..4)],
        ),
        1 => InitialState::Bell(
            [
                BellState::PsiPlus,
                BellState::PsiMinus,
                BellState::PhiPlus,
                BellState::PhiMinus,
            ][rng.random_range(0..4)],
        ),
        2 => InitialState::Alpha {
            family: [
                AlphaFamily::PhiPlus,
                AlphaFamily::PsiPlus,
                AlphaFamily::PsiMinus,
            ][rng.random_range(0..3)],
            alpha: rng.random_range(0.0..=1.0),
        },
        3 => InitialState::Beta(rng.random_range(0.0..=1.0)),
        4 => InitialState::CClass {
            sign: if rng.random() {
                CoherenceSign::Plus
            } else {
                CoherenceSign::Minus
            },
            coherence: Complex64::from_polar(
                rng.random_range(0.01..=1.0 / 3.0),
                rng.random_range(0.0..std::f64::consts::TAU),
            ),
        },
        _ => InitialState::Werner(rng.random_range(-1.0 / 3.0..=1.0)),
    }
}

fn random_noise(rng: &mut ChaCha8Rng) -> NoiseConfig {
    let strength = || 0.05;
    match rng.random_range(0..4) {
        0 => NoiseConfig::global(strength(), 0.0),
        1 => NoiseConfig::global(0.0, strength()),
        2 => NoiseConfig::global(strength(), strength()),
        _ => NoiseConfig::new(
            strength(),
            if rng.random() { strength() } else { 0.0 },
            NoiseTopology::Local,
        ),
    }
    .unwrap()
}

#[test]
fn steady_command_matches_long_time_evolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(811);
    for case in 0..20 {
        let noise = random_noise(&mut rng);
        let horizon = 20.0 / noise.min_active_rate().unwrap();
        let steps = (horizon / 0.01).round() as usize;
        let cfg = RunConfig {
            initial: random_initial(&mut rng),
            hamiltonian: HamiltonianParams::free(),
            noise,
            evolution: EvolutionConfig::new(horizon, 0.01, steps).unwrap(),
            output: None,
        };

        let steady = run_steady(&cfg).unwrap();
        let rows = run_evolve(&cfg).unwrap();
        let (_, evolved) = rows.last().unwrap();
        steady.validate().unwrap();
        evolved.validate().unwrap();

        let pairs = [
            ("eof", steady.eof, evolved.eof),
            ("concurrence", steady.concurrence, evolved.concurrence),
            ("qd", steady.qd, evolved.qd),
            ("cc", steady.cc, evolved.cc),
            ("mutual_info", steady.mutual_info, evolved.mutual_info),
            ("gmqd", steady.gmqd, evolved.gmqd),
            (
                "linear_entropy",
                steady.linear_entropy,
                evolved.linear_entropy,
            ),
        ];
        for (name, map_value, evolved_value) in pairs {
            assert!(
                (map_value - evolved_value).abs() <= 1e-5,
                "case {case} ({:?}): {name} differs: map {map_value} vs evolved {evolved_value}",
                cfg.initial
            );
        }
    }
}
