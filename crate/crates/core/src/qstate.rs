//! Two-qubit state representations and initial-state factories.
//!
//! The computational basis is fixed as |1⟩=|ee⟩, |2⟩=|eg⟩, |3⟩=|ge⟩,
//! |4⟩=|gg⟩ (first label = qubit A, second = qubit B), so that ρ₁₄ couples
//! |ee⟩↔|gg⟩ and ρ₂₃ couples |eg⟩↔|ge⟩. Internally indices run 0..4.

use nalgebra::{Matrix4, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Elementwise tolerance for the Hermiticity check.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance for |Tr ρ − 1|.
pub const TRACE_TOL: f64 = 1e-12;
/// Minimum eigenvalue must satisfy λ_min ≥ −PSD_TOL.
pub const PSD_TOL: f64 = 1e-10;
/// Largest magnitude allowed outside the X pattern when converting to [`XState`].
pub const X_STRUCTURE_TOL: f64 = 1e-10;

/// The four two-qubit product basis states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductState {
    Ee,
    Eg,
    Ge,
    Gg,
}

/// The four Bell states. Ψ± = (|ee⟩±|gg⟩)/√2 live in the outer (ρ₁₄)
/// coherence sector, Φ± = (|eg⟩±|ge⟩)/√2 in the inner (ρ₂₃) sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

/// Bell-like pure-state families parametrized by a degree of correlation α.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaFamily {
    /// α|eg⟩ + √(1−α²)|ge⟩
    PhiPlus,
    /// α|ee⟩ + √(1−α²)|gg⟩
    PsiPlus,
    /// α|ee⟩ − √(1−α²)|gg⟩
    PsiMinus,
}

/// Sign of the ρ₂₃ coherence in the c-parametrized state class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceSign {
    Plus,
    Minus,
}

/// Whether the fluctuating fields are common to both qubits or independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseTopology {
    Global,
    Local,
}

/// Coherent-part parameters of the rotating-frame Hamiltonian
/// H₀ = ½[Δ₀(σ_z^A+σ_z^B) + Ω₀(σ_x^A+σ_x^B)], in units of ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianParams {
    pub delta0: f64,
    pub omega0: f64,
}

impl HamiltonianParams {
    pub fn new(delta0: f64, omega0: f64) -> Result<Self> {
        if !delta0.is_finite() {
            return Err(Error::OutOfRange {
                name: "delta0",
                value: delta0,
                range: "finite reals",
            });
        }
        if !omega0.is_finite() {
            return Err(Error::OutOfRange {
                name: "omega0",
                value: omega0,
                range: "finite reals",
            });
        }
        Ok(Self { delta0, omega0 })
    }

    /// Δ₀ = Ω₀ = 0: no coherent evolution, noise acts alone.
    pub fn free() -> Self {
        Self {
            delta0: 0.0,
            omega0: 0.0,
        }
    }

    pub fn is_free(&self) -> bool {
        self.delta0 == 0.0 && self.omega0 == 0.0
    }
}

impl Default for HamiltonianParams {
    fn default() -> Self {
        Self::free()
    }
}

/// Noise strengths Γ_Δ (longitudinal) and Γ_Ω (transverse), in units of ω,
/// together with the noise topology.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseConfig {
    pub gamma_delta: f64,
    pub gamma_omega: f64,
    pub topology: NoiseTopology,
}

impl NoiseConfig {
    pub fn new(gamma_delta: f64, gamma_omega: f64, topology: NoiseTopology) -> Result<Self> {
        if !gamma_delta.is_finite() || gamma_delta < 0.0 {
            return Err(Error::OutOfRange {
                name: "gamma_delta",
                value: gamma_delta,
                range: "[0, inf)",
            });
        }
        if !gamma_omega.is_finite() || gamma_omega < 0.0 {
            return Err(Error::OutOfRange {
                name: "gamma_omega",
                value: gamma_omega,
                range: "[0, inf)",
            });
        }
        Ok(Self {
            gamma_delta,
            gamma_omega,
            topology,
        })
    }

    pub fn global(gamma_delta: f64, gamma_omega: f64) -> Result<Self> {
        Self::new(gamma_delta, gamma_omega, NoiseTopology::Global)
    }

    pub fn local(gamma_delta: f64, gamma_omega: f64) -> Result<Self> {
        Self::new(gamma_delta, gamma_omega, NoiseTopology::Local)
    }

    /// Largest configured noise strength.
    pub fn max_rate(&self) -> f64 {
        self.gamma_delta.max(self.gamma_omega)
    }

    /// Smallest nonzero noise strength, if any channel is active.
    pub fn min_active_rate(&self) -> Option<f64> {
        match (self.gamma_delta > 0.0, self.gamma_omega > 0.0) {
            (true, true) => Some(self.gamma_delta.min(self.gamma_omega)),
            (true, false) => Some(self.gamma_delta),
            (false, true) => Some(self.gamma_omega),
            (false, false) => None,
        }
    }

    pub fn any_active(&self) -> bool {
        self.gamma_delta > 0.0 || self.gamma_omega > 0.0
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub(crate) fn hermiticity_defect(m: &Matrix4<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in i..4 {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub(crate) fn min_eigenvalue(m: &Matrix4<Complex64>) -> f64 {
    // Eigensolver assumes exact Hermiticity; symmetrize round-off first.
    let h = (m + m.adjoint()) * c(0.5);
    SymmetricEigen::new(h)
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// Indices (row, col) with row < col that lie outside the X pattern.
pub(crate) const OFF_X_UPPER: [(usize, usize); 4] = [(0, 1), (0, 2), (1, 3), (2, 3)];

/// A validated 4×4 two-qubit density matrix: Hermitian, unit trace,
/// positive semidefinite (within the module tolerances).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: Matrix4<Complex64>,
}

impl DensityMatrix {
    /// Validate and wrap a raw matrix.
    pub fn new(m: Matrix4<Complex64>) -> Result<Self> {
        let defect = hermiticity_defect(&m);
        if defect > HERMITICITY_TOL {
            return Err(Error::NotHermitian { defect });
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace: tr.re });
        }
        let min_ev = min_eigenvalue(&m);
        if min_ev < -PSD_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min_ev,
            });
        }
        Ok(Self { m })
    }

    /// Wrap a matrix that is valid by construction (crate-internal factories).
    pub(crate) fn from_valid(m: Matrix4<Complex64>) -> Self {
        debug_assert!(hermiticity_defect(&m) <= HERMITICITY_TOL);
        debug_assert!((m.trace().re - 1.0).abs() <= TRACE_TOL);
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.m
    }

    /// Element ρ_{ij} with zero-based indices.
    pub fn element(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.m)
    }

    /// Largest magnitude among the elements outside the X pattern.
    pub fn off_x_leakage(&self) -> f64 {
        OFF_X_UPPER
            .iter()
            .map(|&(i, j)| self.m[(i, j)].norm().max(self.m[(j, i)].norm()))
            .fold(0.0, f64::max)
    }

    /// Largest elementwise difference |ρ_{ij} − σ_{ij}|.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[(i, j)] - other.m[(i, j)]).norm());
            }
        }
        worst
    }

    /// The maximally mixed state I/4.
    pub fn maximally_mixed() -> Self {
        Self::from_valid(Matrix4::identity() * c(0.25))
    }

    fn from_pure(amplitudes: [Complex64; 4]) -> Self {
        let mut m = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = amplitudes[i] * amplitudes[j].conj();
            }
        }
        Self::from_valid(m)
    }

    /// Projector onto one of the product basis states.
    pub fn product(which: ProductState) -> Self {
        let idx = match which {
            ProductState::Ee => 0,
            ProductState::Eg => 1,
            ProductState::Ge => 2,
            ProductState::Gg => 3,
        };
        let mut amps = [c(0.0); 4];
        amps[idx] = c(1.0);
        Self::from_pure(amps)
    }

    /// Projector onto one of the Bell states, with exact ±1/2 entries.
    pub fn bell(which: BellState) -> Self {
        let outer = [0.5, 0.0, 0.0, 0.5];
        let inner = [0.0, 0.5, 0.5, 0.0];
        let x = match which {
            BellState::PsiPlus => XState::new(outer, c(0.5), c(0.0)),
            BellState::PsiMinus => XState::new(outer, c(-0.5), c(0.0)),
            BellState::PhiPlus => XState::new(inner, c(0.0), c(0.5)),
            BellState::PhiMinus => XState::new(inner, c(0.0), c(-0.5)),
        };
        x.expect("Bell projectors are valid X states").to_density()
    }

    /// Bell-like pure state with degree of correlation `alpha` ∈ [0, 1].
    pub fn alpha_state(family: AlphaFamily, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) || !alpha.is_finite() {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
                range: "[0, 1]",
            });
        }
        let a = c(alpha);
        let b = c((1.0 - alpha * alpha).max(0.0).sqrt());
        let amps = match family {
            AlphaFamily::PhiPlus => [c(0.0), a, b, c(0.0)],
            AlphaFamily::PsiPlus => [a, c(0.0), c(0.0), b],
            AlphaFamily::PsiMinus => [a, c(0.0), c(0.0), -b],
        };
        Ok(Self::from_pure(amps))
    }

    /// Mixture β|Ψ⁺⟩⟨Ψ⁺| + (1−β)|Φ⁺⟩⟨Φ⁺| with β ∈ [0, 1].
    pub fn beta_state(beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) || !beta.is_finite() {
            return Err(Error::OutOfRange {
                name: "beta",
                value: beta,
                range: "[0, 1]",
            });
        }
        let outer = 0.5 * beta;
        let inner = 0.5 * (1.0 - beta);
        let x = XState::new([outer, inner, inner, outer], c(outer), c(inner))
            .expect("beta mixture is a valid X state");
        Ok(x.to_density())
    }

    /// The state ⅓(|Φ^±⟩⟨Φ^±| + |ee⟩⟨ee| + |gg⟩⟨gg|) + c|ee⟩⟨gg| + c*|gg⟩⟨ee|,
    /// valid for 0 < |c| ≤ 1/3.
    pub fn c_class(sign: CoherenceSign, coherence: Complex64) -> Result<Self> {
        let mag = coherence.norm();
        if !mag.is_finite() || mag == 0.0 || mag > 1.0 / 3.0 + 1e-15 {
            return Err(Error::OutOfRange {
                name: "|c|",
                value: mag,
                range: "(0, 1/3]",
            });
        }
        let c23 = match sign {
            CoherenceSign::Plus => c(1.0 / 6.0),
            CoherenceSign::Minus => c(-1.0 / 6.0),
        };
        let x = XState::new(
            [1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0],
            coherence,
            c23,
        )
        .expect("c-class state is a valid X state for |c| <= 1/3");
        Ok(x.to_density())
    }

    /// Werner-form mixture (1−ε)/4 · I + ε|Φ⁻⟩⟨Φ⁻| with ε ∈ [−1/3, 1].
    pub fn werner(epsilon: f64) -> Result<Self> {
        if !(-1.0 / 3.0..=1.0).contains(&epsilon) || !epsilon.is_finite() {
            return Err(Error::OutOfRange {
                name: "epsilon",
                value: epsilon,
                range: "[-1/3, 1]",
            });
        }
        let outer = 0.25 * (1.0 - epsilon);
        let inner = 0.25 * (1.0 + epsilon);
        let x = XState::new([outer, inner, inner, outer], c(0.0), c(-0.5 * epsilon))
            .expect("Werner state is a valid X state for epsilon in [-1/3, 1]");
        Ok(x.to_density())
    }

    /// Compact X-structured view. Fails if any off-X element exceeds 1e-10.
    pub fn to_x_state(&self) -> Result<XState> {
        for &(i, j) in OFF_X_UPPER.iter() {
            let mag = self.m[(i, j)].norm().max(self.m[(j, i)].norm());
            if mag > X_STRUCTURE_TOL {
                return Err(Error::NotXStructured {
                    row: i + 1,
                    col: j + 1,
                    magnitude: mag,
                });
            }
        }
        XState::new(
            [
                self.m[(0, 0)].re,
                self.m[(1, 1)].re,
                self.m[(2, 2)].re,
                self.m[(3, 3)].re,
            ],
            self.m[(0, 3)],
            self.m[(1, 2)],
        )
    }
}

/// Compact representation of an X-structured density matrix: four real
/// populations plus the two anti-diagonal coherences ρ₁₄ and ρ₂₃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    p: [f64; 4],
    c14: Complex64,
    c23: Complex64,
}

impl XState {
    /// Tolerated slack on the simplex and block-positivity constraints.
    pub const TOL: f64 = 1e-12;

    pub fn new(p: [f64; 4], c14: Complex64, c23: Complex64) -> Result<Self> {
        for (i, &pi) in p.iter().enumerate() {
            if !pi.is_finite() || pi < -Self::TOL {
                return Err(Error::OutOfRange {
                    name: ["p1", "p2", "p3", "p4"][i],
                    value: pi,
                    range: "[0, 1]",
                });
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > Self::TOL {
            return Err(Error::TraceNotOne { trace: sum });
        }
        if c14.norm_sqr() > p[0] * p[3] + Self::TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: p[0] * p[3] - c14.norm_sqr(),
            });
        }
        if c23.norm_sqr() > p[1] * p[2] + Self::TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: p[1] * p[2] - c23.norm_sqr(),
            });
        }
        Ok(Self { p, c14, c23 })
    }

    pub fn populations(&self) -> [f64; 4] {
        self.p
    }

    pub fn p1(&self) -> f64 {
        self.p[0]
    }

    pub fn p2(&self) -> f64 {
        self.p[1]
    }

    pub fn p3(&self) -> f64 {
        self.p[2]
    }

    pub fn p4(&self) -> f64 {
        self.p[3]
    }

    /// Coherence ρ₁₄ between |ee⟩ and |gg⟩.
    pub fn c14(&self) -> Complex64 {
        self.c14
    }

    /// Coherence ρ₂₃ between |eg⟩ and |ge⟩.
    pub fn c23(&self) -> Complex64 {
        self.c23
    }

    /// Embed back into a full density matrix, preserving all fields exactly.
    pub fn to_density(&self) -> DensityMatrix {
        let mut m = Matrix4::zeros();
        for i in 0..4 {
            m[(i, i)] = c(self.p[i]);
        }
        m[(0, 3)] = self.c14;
        m[(3, 0)] = self.c14.conj();
        m[(1, 2)] = self.c23;
        m[(2, 1)] = self.c23.conj();
        DensityMatrix::from_valid(m)
    }

    /// Eigenvalues of the embedded matrix, sorted in descending order.
    ///
    /// The X pattern splits into two 2×2 blocks, each contributing
    /// mean ± √(half-gap² + |coherence|²).
    pub fn eigenvalues(&self) -> [f64; 4] {
        let outer_mid = 0.5 * (self.p[0] + self.p[3]);
        let outer_rad = (0.25 * (self.p[0] - self.p[3]).powi(2) + self.c14.norm_sqr()).sqrt();
        let inner_mid = 0.5 * (self.p[1] + self.p[2]);
        let inner_rad = (0.25 * (self.p[1] - self.p[2]).powi(2) + self.c23.norm_sqr()).sqrt();
        let mut ev = [
            outer_mid + outer_rad,
            outer_mid - outer_rad,
            inner_mid + inner_rad,
            inner_mid - inner_rad,
        ];
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        ev
    }

    /// Draw a random valid X state: populations uniform on the simplex,
    /// coherence magnitudes uniform within their positivity bounds, phases
    /// uniform. Positive semidefinite by construction.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut cuts = [0.0f64, 0.0, 0.0];
        for cut in cuts.iter_mut() {
            *cut = rng.random::<f64>();
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let p = [
            cuts[0],
            cuts[1] - cuts[0],
            cuts[2] - cuts[1],
            1.0 - cuts[2],
        ];
        let r14 = rng.random::<f64>() * (p[0] * p[3]).sqrt();
        let r23 = rng.random::<f64>() * (p[1] * p[2]).sqrt();
        let c14 = Complex64::from_polar(r14, rng.random_range(0.0..TAU));
        let c23 = Complex64::from_polar(r23, rng.random_range(0.0..TAU));
        Self::new(p, c14, c23).expect("sampler output satisfies the X-state constraints")
    }
}
