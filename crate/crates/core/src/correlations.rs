//! Quantum and classical correlation measures for X-structured two-qubit
//! states, plus a brute-force measurement-optimization oracle for discord.
//!
//! Discord and classical correlations follow the closed-form branch
//! structure for X states with the measurement performed on subsystem B;
//! the oracle minimizes the measured conditional entropy over projective
//! measurements directly and is kept independent of the closed forms.

use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix2, Matrix3, Matrix4, SymmetricEigen, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::XState;

/// Default (θ, φ) grid resolution of the discord oracle: 64 × 128 points.
pub const DEFAULT_ORACLE_GRID: usize = 64;
/// Default number of neighborhood-shrinking refinement rounds.
pub const DEFAULT_ORACLE_REFINE: usize = 40;

/// Which subsystem the oracle measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasuredParty {
    A,
    B,
}

/// All correlation and mixedness measures of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationRecord {
    pub eof: f64,
    pub concurrence: f64,
    pub qd: f64,
    pub cc: f64,
    pub mutual_info: f64,
    pub gmqd: f64,
    pub linear_entropy: f64,
}

impl CorrelationRecord {
    /// Check the record invariants: total correlations split into discord
    /// plus classical correlations, and every field within its range
    /// (1e-9 slack for round-off).
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("eof", self.eof, 0.0, 1.0),
            ("concurrence", self.concurrence, 0.0, 1.0),
            ("qd", self.qd, 0.0, f64::INFINITY),
            ("cc", self.cc, 0.0, f64::INFINITY),
            ("mutual_info", self.mutual_info, 0.0, f64::INFINITY),
            ("gmqd", self.gmqd, 0.0, 0.5),
            ("linear_entropy", self.linear_entropy, 0.0, 1.0),
        ];
        for (name, value, lo, hi) in fields {
            if !value.is_finite() || value < lo - 1e-9 || value > hi + 1e-9 {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    range: "stated measure range",
                });
            }
        }
        let split = (self.mutual_info - self.qd - self.cc).abs();
        if split > 1e-9 {
            return Err(Error::OutOfRange {
                name: "mutual_info - qd - cc",
                value: split,
                range: "[0, 1e-9]",
            });
        }
        Ok(())
    }
}

/// Binary entropy h[x] = −x log₂x − (1−x) log₂(1−x), with the argument
/// clamped into [0, 1] to absorb round-off and 0·log₂0 = 0.
pub fn binary_entropy(x: f64) -> f64 {
    debug_assert!((-1e-9..=1.0 + 1e-9).contains(&x), "h[{x}] out of range");
    let x = x.clamp(0.0, 1.0);
    neg_p_log2_p(x) + neg_p_log2_p(1.0 - x)
}

fn neg_p_log2_p(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

fn shannon(ps: &[f64]) -> f64 {
    ps.iter().map(|&p| neg_p_log2_p(p.clamp(0.0, 1.0))).sum()
}

/// Concurrence of an X state: 2·max{0, |ρ₁₄|−√(ρ₂₂ρ₃₃), |ρ₂₃|−√(ρ₁₁ρ₄₄)}.
pub fn concurrence(x: &XState) -> f64 {
    let [p1, p2, p3, p4] = x.populations();
    let outer = x.c14().norm() - (p2.max(0.0) * p3.max(0.0)).sqrt();
    let inner = x.c23().norm() - (p1.max(0.0) * p4.max(0.0)).sqrt();
    2.0 * outer.max(inner).max(0.0)
}

/// Entanglement of formation via the concurrence.
pub fn eof(x: &XState) -> f64 {
    let c = concurrence(x);
    binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt()))
}

/// Quantum discord and classical correlations of an X state, measurement on
/// subsystem B.
///
/// Returns (QD, CC) = (min{Q₁, Q₂}, max{CC₁, CC₂}); both branches are always
/// evaluated. Q₂/CC₂ stem from a σ_z measurement, Q₁/CC₁ from the σ_x branch
/// with its conditional entropy h[τ].
pub fn qd_cc(x: &XState) -> (f64, f64) {
    let [p1, p2, p3, p4] = x.populations();
    let s_full = shannon(&x.eigenvalues());
    let s_a = binary_entropy(p1 + p2);
    let s_b = binary_entropy(p1 + p3);

    let coherence_sum = x.c14().norm() + x.c23().norm();
    let tau = 0.5
        * (1.0
            + ((1.0 - 2.0 * (p3 + p4)).powi(2) + 4.0 * coherence_sum * coherence_sum).sqrt());
    let d1 = binary_entropy(tau);
    let d2 = shannon(&[p1, p2, p3, p4]) - s_b;

    let q1 = s_b - s_full + d1;
    let q2 = s_b - s_full + d2;
    let cc1 = s_a - d1;
    let cc2 = s_a - d2;
    (q1.min(q2), cc1.max(cc2))
}

/// Mutual information S(ρ_A) + S(ρ_B) − S(ρ); the reduced states of an X
/// state are diagonal.
pub fn mutual_information(x: &XState) -> f64 {
    let [p1, p2, p3, _] = x.populations();
    binary_entropy(p1 + p2) + binary_entropy(p1 + p3) - shannon(&x.eigenvalues())
}

fn pauli_matrices() -> [Matrix2<Complex64>; 3] {
    let z = |re: f64, im: f64| Complex64::new(re, im);
    [
        Matrix2::new(z(0.0, 0.0), z(1.0, 0.0), z(1.0, 0.0), z(0.0, 0.0)),
        Matrix2::new(z(0.0, 0.0), z(0.0, -1.0), z(0.0, 1.0), z(0.0, 0.0)),
        Matrix2::new(z(1.0, 0.0), z(0.0, 0.0), z(0.0, 0.0), z(-1.0, 0.0)),
    ]
}

/// Geometric discord from the Bloch decomposition, normalized so Bell states
/// score 0.5. Measurement on B: with Bloch vector y of subsystem B and
/// correlation tensor T, returns ¼(‖y‖² + ‖T‖² − k_max[y yᵀ + TᵀT]).
pub fn gmqd(x: &XState) -> f64 {
    let rho = x.to_density();
    let m = rho.matrix();
    let paulis = pauli_matrices();
    let id2 = Matrix2::<Complex64>::identity();

    let mut y = Vector3::zeros();
    let mut t = Matrix3::zeros();
    for i in 0..3 {
        y[i] = (m * id2.kronecker(&paulis[i])).trace().re;
        for j in 0..3 {
            t[(i, j)] = (m * paulis[i].kronecker(&paulis[j])).trace().re;
        }
    }
    let k = y * y.transpose() + t.transpose() * t;
    let k_max = SymmetricEigen::new(k)
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    0.25 * (y.norm_squared() + t.norm_squared() - k_max)
}

/// Linear entropy S_L = (4/3)(1 − Tr ρ²).
pub fn linear_entropy(x: &XState) -> f64 {
    let purity: f64 = x.populations().iter().map(|p| p * p).sum::<f64>()
        + 2.0 * x.c14().norm_sqr()
        + 2.0 * x.c23().norm_sqr();
    (4.0 / 3.0) * (1.0 - purity)
}

/// Populate every measure for one state.
pub fn measure_all(x: &XState) -> CorrelationRecord {
    let (qd, cc) = qd_cc(x);
    CorrelationRecord {
        eof: eof(x),
        concurrence: concurrence(x),
        qd,
        cc,
        mutual_info: mutual_information(x),
        gmqd: gmqd(x),
        linear_entropy: linear_entropy(x),
    }
}

/// Brute-force discord: grid search plus shrinking-neighborhood refinement
/// over projective measurements on subsystem B. `grid` is clamped to ≥ 32.
///
/// Deterministic for fixed arguments; independent of the closed-form path
/// (full-matrix partial traces and a dense eigensolver throughout).
pub fn qd_oracle(x: &XState, grid: usize, refine_iters: usize) -> f64 {
    qd_oracle_measuring(x, MeasuredParty::B, grid, refine_iters)
}

/// [`qd_oracle`] with an explicit choice of measured subsystem.
pub fn qd_oracle_measuring(
    x: &XState,
    party: MeasuredParty,
    grid: usize,
    refine_iters: usize,
) -> f64 {
    let grid = grid.max(32);
    let rho = x.to_density();
    let m = rho.matrix();

    let eigenvalues = SymmetricEigen::new(*m).eigenvalues;
    let s_full = shannon(eigenvalues.as_slice());
    let s_measured = reduced_entropy(m, party);

    let n_phi = 2 * grid;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=grid {
        let theta = PI * i as f64 / grid as f64;
        for j in 0..n_phi {
            let phi = TAU * j as f64 / n_phi as f64;
            let value = conditional_entropy(m, party, theta, phi);
            if value < best.0 {
                best = (value, theta, phi);
            }
        }
    }

    let (mut best_value, mut theta, mut phi) = best;
    let mut dtheta = PI / grid as f64;
    let mut dphi = TAU / n_phi as f64;
    for _ in 0..refine_iters {
        for i in [-1.0, 0.0, 1.0] {
            for j in [-1.0, 0.0, 1.0] {
                if i == 0.0 && j == 0.0 {
                    continue;
                }
                let t_try = (theta + i * dtheta).clamp(0.0, PI);
                let p_try = (phi + j * dphi).rem_euclid(TAU);
                let value = conditional_entropy(m, party, t_try, p_try);
                if value < best_value {
                    best_value = value;
                    theta = t_try;
                    phi = p_try;
                }
            }
        }
        dtheta *= 0.6;
        dphi *= 0.6;
    }

    s_measured - s_full + best_value
}

/// Entropy of the reduced state of one party, from a dense partial trace.
fn reduced_entropy(m: &Matrix4<Complex64>, party: MeasuredParty) -> f64 {
    let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (k, row_slots) in r.iter_mut().enumerate() {
        for (l, slot) in row_slots.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for other in 0..2 {
                let (row, col) = match party {
                    MeasuredParty::B => (2 * other + k, 2 * other + l),
                    MeasuredParty::A => (2 * k + other, 2 * l + other),
                };
                acc += m[(row, col)];
            }
            *slot = acc;
        }
    }
    let half_gap = 0.5 * (r[0][0].re - r[1][1].re);
    let radius = (half_gap * half_gap + r[0][1].norm_sqr()).sqrt();
    binary_entropy(0.5 + radius)
}

/// Average post-measurement entropy Σ_b p_b S(ρ_unmeasured|b) for the
/// projective measurement along Bloch direction (θ, φ) on `party`.
fn conditional_entropy(
    m: &Matrix4<Complex64>,
    party: MeasuredParty,
    theta: f64,
    phi: f64,
) -> f64 {
    let (sin_half, cos_half) = (0.5 * theta).sin_cos();
    let phase = Complex64::from_polar(1.0, phi);
    let kets = [
        [Complex64::new(cos_half, 0.0), phase * sin_half],
        [Complex64::new(sin_half, 0.0), -phase * cos_half],
    ];

    let mut total = 0.0;
    for ket in &kets {
        let mut block = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (free, row_slots) in block.iter_mut().enumerate() {
            for (free2, slot) in row_slots.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for meas in 0..2 {
                    for meas2 in 0..2 {
                        let (row, col) = match party {
                            MeasuredParty::B => (2 * free + meas, 2 * free2 + meas2),
                            MeasuredParty::A => (2 * meas + free, 2 * meas2 + free2),
                        };
                        acc += ket[meas].conj() * m[(row, col)] * ket[meas2];
                    }
                }
                *slot = acc;
            }
        }
        let prob = block[0][0].re + block[1][1].re;
        if prob > 1e-15 {
            let half_gap = 0.5 * (block[0][0].re - block[1][1].re) / prob;
            let off = block[0][1].norm() / prob;
            let radius = (half_gap * half_gap + off * off).sqrt();
            total += prob * binary_entropy(0.5 + radius);
        }
    }
    total
}
