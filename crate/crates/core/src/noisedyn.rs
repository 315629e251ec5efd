//! Time evolution under the white-noise master equation and the closed-form
//! steady-state maps it admits.
//!
//! Global topology:
//!   dρ/dt = −i[H₀, ρ] − (Γ_Δ/4)[S_z,[S_z,ρ]] − (Γ_Ω/4)[S_x,[S_x,ρ]]
//! with S_a = σ_a^A + σ_a^B and H₀ = ½(Δ₀ S_z + Ω₀ S_x).
//!
//! Local topology (independent fields on each qubit):
//!   dρ/dt = −(Γ_Δ/4)Σᵢ[σ_z^i,[σ_z^i,ρ]] − (Γ_Ω/4)Σᵢ[σ_x^i,[σ_x^i,ρ]]

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{
    hermiticity_defect, DensityMatrix, HamiltonianParams, NoiseConfig, NoiseTopology, XState,
};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// S_z = σ_z^A + σ_z^B = diag(2, 0, 0, −2).
fn collective_sz() -> Matrix4<Complex64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(c(2.0), c(0.0), c(0.0), c(-2.0)))
}

/// S_x = σ_x^A + σ_x^B.
fn collective_sx() -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    // σ_x^A couples (ee,ge) and (eg,gg); σ_x^B couples (ee,eg) and (ge,gg).
    for (i, j) in [(0, 2), (1, 3), (0, 1), (2, 3)] {
        m[(i, j)] = c(1.0);
        m[(j, i)] = c(1.0);
    }
    m
}

fn sigma_z_a() -> Matrix4<Complex64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(c(1.0), c(1.0), c(-1.0), c(-1.0)))
}

fn sigma_z_b() -> Matrix4<Complex64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(c(1.0), c(-1.0), c(1.0), c(-1.0)))
}

fn sigma_x_a() -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    for (i, j) in [(0, 2), (1, 3)] {
        m[(i, j)] = c(1.0);
        m[(j, i)] = c(1.0);
    }
    m
}

fn sigma_x_b() -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    for (i, j) in [(0, 1), (2, 3)] {
        m[(i, j)] = c(1.0);
        m[(j, i)] = c(1.0);
    }
    m
}

/// The constant generator of the master equation: optional coherent part plus
/// a list of double-commutator dissipators −(γ/4)[A,[A,ρ]].
struct Generator {
    hamiltonian: Option<Matrix4<Complex64>>,
    /// (γ/4, A, A²) per dissipation channel with γ > 0.
    channels: Vec<(f64, Matrix4<Complex64>, Matrix4<Complex64>)>,
}

impl Generator {
    fn new(h: &HamiltonianParams, noise: &NoiseConfig) -> Self {
        let mut channels = Vec::new();
        let mut push = |gamma: f64, a: Matrix4<Complex64>| {
            if gamma > 0.0 {
                let a_sq = a * a;
                channels.push((0.25 * gamma, a, a_sq));
            }
        };
        let hamiltonian = match noise.topology {
            NoiseTopology::Global => {
                push(noise.gamma_delta, collective_sz());
                push(noise.gamma_omega, collective_sx());
                if h.is_free() {
                    None
                } else {
                    Some(collective_sz() * c(0.5 * h.delta0) + collective_sx() * c(0.5 * h.omega0))
                }
            }
            NoiseTopology::Local => {
                push(noise.gamma_delta, sigma_z_a());
                push(noise.gamma_delta, sigma_z_b());
                push(noise.gamma_omega, sigma_x_a());
                push(noise.gamma_omega, sigma_x_b());
                None
            }
        };
        Self {
            hamiltonian,
            channels,
        }
    }

    fn rhs(&self, rho: &Matrix4<Complex64>) -> Matrix4<Complex64> {
        let mut out = Matrix4::zeros();
        if let Some(h) = &self.hamiltonian {
            let comm = h * rho - rho * h;
            out -= comm * Complex64::new(0.0, 1.0);
        }
        for (rate, a, a_sq) in &self.channels {
            // [A,[A,ρ]] = A²ρ + ρA² − 2AρA
            let a_rho_a = a * rho * a;
            out -= (a_sq * rho + rho * a_sq - a_rho_a * c(2.0)) * c(*rate);
        }
        out
    }
}

/// Time derivative of ρ under the configured master equation.
pub fn master_rhs(
    rho: &DensityMatrix,
    h: &HamiltonianParams,
    noise: &NoiseConfig,
) -> Matrix4<Complex64> {
    Generator::new(h, noise).rhs(rho.matrix())
}

/// Fixed-step integration plan: total time, step, and sampling stride.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionConfig {
    t_end: f64,
    dt: f64,
    record_every: usize,
}

impl EvolutionConfig {
    pub fn new(t_end: f64, dt: f64, record_every: usize) -> Result<Self> {
        if !t_end.is_finite() || t_end <= 0.0 {
            return Err(Error::OutOfRange {
                name: "t_end",
                value: t_end,
                range: "(0, inf)",
            });
        }
        if !dt.is_finite() || dt <= 0.0 || dt > t_end {
            return Err(Error::OutOfRange {
                name: "dt",
                value: dt,
                range: "(0, t_end]",
            });
        }
        if record_every == 0 {
            return Err(Error::OutOfRange {
                name: "record_every",
                value: 0.0,
                range: "[1, inf)",
            });
        }
        Ok(Self {
            t_end,
            dt,
            record_every,
        })
    }

    /// Plan with the default step for the given rates.
    pub fn with_default_step(
        t_end: f64,
        h: &HamiltonianParams,
        noise: &NoiseConfig,
        record_every: usize,
    ) -> Result<Self> {
        Self::new(t_end, default_step(h, noise).min(t_end), record_every)
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn record_every(&self) -> usize {
        self.record_every
    }
}

/// Default integration step 0.01/max(1, Γ_Δ, Γ_Ω, |Δ₀|, |Ω₀|).
pub fn default_step(h: &HamiltonianParams, noise: &NoiseConfig) -> f64 {
    0.01 / fastest_rate(h, noise)
}

fn fastest_rate(h: &HamiltonianParams, noise: &NoiseConfig) -> f64 {
    1.0f64
        .max(noise.gamma_delta)
        .max(noise.gamma_omega)
        .max(h.delta0.abs())
        .max(h.omega0.abs())
}

/// Worst-case integrator diagnostics accumulated over the recorded samples
/// of a trajectory. Trace and Hermiticity defects are measured before the
/// per-sample cleanup, positivity and X leakage after.
#[derive(Debug, Clone, Copy)]
pub struct ConservationReport {
    pub max_trace_drift: f64,
    pub max_hermiticity_defect: f64,
    pub min_eigenvalue: f64,
    pub max_off_x_leakage: f64,
}

impl ConservationReport {
    fn start(rho0: &DensityMatrix) -> Self {
        Self {
            max_trace_drift: (rho0.trace().re - 1.0).abs(),
            max_hermiticity_defect: 0.0,
            min_eigenvalue: rho0.min_eigenvalue(),
            max_off_x_leakage: rho0.off_x_leakage(),
        }
    }

    fn absorb_raw(&mut self, raw: &Matrix4<Complex64>) {
        let tr = raw.trace();
        let drift = ((tr.re - 1.0).powi(2) + tr.im.powi(2)).sqrt();
        self.max_trace_drift = self.max_trace_drift.max(drift);
        self.max_hermiticity_defect = self.max_hermiticity_defect.max(hermiticity_defect(raw));
    }

    fn absorb_clean(&mut self, rho: &DensityMatrix) {
        self.min_eigenvalue = self.min_eigenvalue.min(rho.min_eigenvalue());
        self.max_off_x_leakage = self.max_off_x_leakage.max(rho.off_x_leakage());
    }
}

/// Time-ordered sequence of recorded states starting at t = 0.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<DensityMatrix>,
    conservation: ConservationReport,
}

impl Trajectory {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory contains t = 0")
    }

    pub fn final_state(&self) -> &DensityMatrix {
        self.states.last().expect("trajectory contains t = 0")
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &DensityMatrix)> {
        self.times.iter().cloned().zip(self.states.iter())
    }

    pub fn conservation(&self) -> &ConservationReport {
        &self.conservation
    }
}

/// Integrate the master equation with classical fixed-step RK4.
///
/// Recorded samples (every `record_every` steps, plus the final step) are
/// re-Hermitized and trace-renormalized; the march continues from the cleaned
/// state. Rejects steps with dt·max(Γ_Δ, Γ_Ω, |Δ₀|, |Ω₀|, 1) > 0.1.
pub fn evolve(
    rho0: &DensityMatrix,
    h: &HamiltonianParams,
    noise: &NoiseConfig,
    cfg: &EvolutionConfig,
) -> Result<Trajectory> {
    let rate = fastest_rate(h, noise);
    if cfg.dt * rate > 0.1 + 1e-12 {
        return Err(Error::StepTooLarge {
            dt: cfg.dt,
            limit: 0.1 / rate,
        });
    }
    let gen = Generator::new(h, noise);
    let n_steps = (cfg.t_end / cfg.dt).round().max(1.0) as usize;

    let mut report = ConservationReport::start(rho0);
    let mut times = Vec::with_capacity(n_steps / cfg.record_every + 2);
    let mut states = Vec::with_capacity(n_steps / cfg.record_every + 2);
    times.push(0.0);
    states.push(rho0.clone());

    let mut rho = *rho0.matrix();
    for step in 1..=n_steps {
        rho = rk4_step(&gen, &rho, cfg.dt);
        if step % cfg.record_every == 0 || step == n_steps {
            report.absorb_raw(&rho);
            rho = cleanup(&rho);
            let state = DensityMatrix::new(rho)?;
            report.absorb_clean(&state);
            times.push(step as f64 * cfg.dt);
            states.push(state);
        }
    }
    Ok(Trajectory {
        times,
        states,
        conservation: report,
    })
}

fn rk4_step(gen: &Generator, rho: &Matrix4<Complex64>, dt: f64) -> Matrix4<Complex64> {
    let half = c(0.5 * dt);
    let k1 = gen.rhs(rho);
    let k2 = gen.rhs(&(rho + k1 * half));
    let k3 = gen.rhs(&(rho + k2 * half));
    let k4 = gen.rhs(&(rho + k3 * c(dt)));
    rho + (k1 + k2 * c(2.0) + k3 * c(2.0) + k4) * c(dt / 6.0)
}

fn cleanup(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let herm = (m + m.adjoint()) * c(0.5);
    let tr = herm.trace().re;
    herm / c(tr)
}

/// Closed-form propagator for global longitudinal noise alone: populations
/// and ρ₂₃ are frozen, ρ₁₄ decays as e^(−4·Γ_Δ·t).
pub fn dephasing_propagate(x0: &XState, gamma_delta: f64, t: f64) -> XState {
    debug_assert!(gamma_delta >= 0.0 && t >= 0.0);
    let decay = (-4.0 * gamma_delta * t).exp();
    XState::new(x0.populations(), x0.c14() * decay, x0.c23())
        .expect("dephasing only shrinks the outer coherence")
}

/// Steady map for Γ_Δ > 0, Γ_Ω = 0 (global): populations and ρ₂₃ preserved,
/// ρ₁₄ → 0.
pub fn steady_detuning_only(x0: &XState) -> XState {
    XState::new(x0.populations(), c(0.0), x0.c23())
        .expect("dropping a coherence preserves positivity")
}

/// Steady map for Γ_Δ = 0, Γ_Ω > 0 (global).
pub fn steady_transverse_only(x0: &XState) -> XState {
    let [p1, p2, p3, p4] = x0.populations();
    let re14 = 2.0 * x0.c14().re; // ρ₁₄(0) + ρ₄₁(0)
    let re23 = 2.0 * x0.c23().re; // ρ₂₃(0) + ρ₃₂(0)
    let outer = (3.0 * (p1 + p4) + p2 + p3 - re14 + re23) / 8.0;
    let inner = (p1 + p4 + 3.0 * (p2 + p3) + re14 - re23) / 8.0;
    let c14_ss = (-(p1 + p4) + p2 + p3 + 3.0 * re14 + re23) / 8.0;
    let c23_ss = (p1 + p4 - (p2 + p3) + re14 + 3.0 * re23) / 8.0;
    XState::new([outer, inner, inner, outer], c(c14_ss), c(c23_ss))
        .expect("transverse-noise steady map preserves positivity")
}

/// Steady map for Γ_Δ > 0, Γ_Ω > 0 (global): ρ₁₄ → 0 and the remaining
/// elements mix symmetrically.
pub fn steady_collective(x0: &XState) -> XState {
    let [p1, p2, p3, p4] = x0.populations();
    let re23 = 2.0 * x0.c23().re;
    let outer = (2.0 * (p1 + p4) + p2 + p3 + re23) / 6.0;
    let inner = (p1 + p4 + 2.0 * (p2 + p3) - re23) / 6.0;
    let c23_ss = (p1 + p4 - p2 - p3 + 2.0 * re23) / 6.0;
    XState::new([outer, inner, inner, outer], c(0.0), c(c23_ss))
        .expect("collective-noise steady map preserves positivity")
}

/// Steady map for independent (local) noise on each qubit.
///
/// Any active σ_z channel kills both coherences. With only the σ_x channels
/// active, the state dephases in the |±⟩⊗|±⟩ basis: populations equalize to
/// 1/4 and both coherences settle to ¼(ρ₁₄(0) + ρ₂₃(0) + h.c.). With both
/// channels active only I/4 survives.
pub fn steady_local(x0: &XState, noise: &NoiseConfig) -> Result<XState> {
    if noise.topology != NoiseTopology::Local {
        return Err(Error::TopologyMismatch {
            expected: NoiseTopology::Local,
            found: noise.topology,
        });
    }
    let dephasing = noise.gamma_delta > 0.0;
    let transverse = noise.gamma_omega > 0.0;
    let ss = match (dephasing, transverse) {
        (false, false) => {
            return Err(Error::InvalidNoise(
                "local steady state needs at least one nonzero noise strength".into(),
            ))
        }
        (true, false) => XState::new(x0.populations(), c(0.0), c(0.0)),
        (true, true) => XState::new([0.25; 4], c(0.0), c(0.0)),
        (false, true) => {
            // ¼(ρ₁₄(0) + ρ₂₃(0) + h.c.); conjugate pairs are summed first so
            // the imaginary parts cancel exactly.
            let coh =
                ((x0.c14() + x0.c14().conj()) + (x0.c23() + x0.c23().conj())) * 0.25;
            XState::new([0.25; 4], coh, coh)
        }
    };
    Ok(ss.expect("local steady map preserves positivity"))
}
