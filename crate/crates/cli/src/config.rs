//! Flat key-value run configuration: one `key = value` per line, `#` starts
//! a comment, unknown keys are rejected. All physical quantities are in
//! units of ω.
//!
//! ```text
//! initial      = bell:phi_plus
//! gamma_delta  = 0.05
//! gamma_omega  = 0.05
//! topology     = global
//! t_end        = 400.0
//! record_every = 100
//! output       = phi_plus.csv
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use qcorr::noisedyn::default_step;
use qcorr::{
    AlphaFamily, BellState, CoherenceSign, DensityMatrix, EvolutionConfig, HamiltonianParams,
    NoiseConfig, NoiseTopology, ProductState,
};

use crate::error::CliError;

/// Tagged choice of initial state, mirroring the state factories.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Product(ProductState),
    Bell(BellState),
    Alpha { family: AlphaFamily, alpha: f64 },
    Beta(f64),
    CClass { sign: CoherenceSign, coherence: Complex64 },
    Werner(f64),
}

impl InitialState {
    /// Construct the density matrix; factory preconditions are re-checked.
    pub fn build(&self) -> Result<DensityMatrix, qcorr::Error> {
        match *self {
            InitialState::Product(which) => Ok(DensityMatrix::product(which)),
            InitialState::Bell(which) => Ok(DensityMatrix::bell(which)),
            InitialState::Alpha { family, alpha } => DensityMatrix::alpha_state(family, alpha),
            InitialState::Beta(beta) => DensityMatrix::beta_state(beta),
            InitialState::CClass { sign, coherence } => DensityMatrix::c_class(sign, coherence),
            InitialState::Werner(eps) => DensityMatrix::werner(eps),
        }
    }

    /// Parse the colon-separated form used in config files, e.g.
    /// `bell:phi_plus`, `alpha:psi_plus:0.169`, `c_class:plus:0.1+0.05i`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        let usage = "expected product:<gg|ee|eg|ge>, bell:<psi_plus|psi_minus|phi_plus|phi_minus>, \
                     alpha:<phi_plus|psi_plus|psi_minus>:<a>, beta:<b>, \
                     c_class:<plus|minus>:<c>, or werner:<e>";
        match parts.as_slice() {
            ["product", which] => {
                let which = match *which {
                    "gg" => ProductState::Gg,
                    "ee" => ProductState::Ee,
                    "eg" => ProductState::Eg,
                    "ge" => ProductState::Ge,
                    other => return Err(format!("unknown product state `{other}`")),
                };
                Ok(InitialState::Product(which))
            }
            ["bell", which] => {
                let which = match *which {
                    "psi_plus" => BellState::PsiPlus,
                    "psi_minus" => BellState::PsiMinus,
                    "phi_plus" => BellState::PhiPlus,
                    "phi_minus" => BellState::PhiMinus,
                    other => return Err(format!("unknown Bell state `{other}`")),
                };
                Ok(InitialState::Bell(which))
            }
            ["alpha", family, value] => {
                let family = match *family {
                    "phi_plus" => AlphaFamily::PhiPlus,
                    "psi_plus" => AlphaFamily::PsiPlus,
                    "psi_minus" => AlphaFamily::PsiMinus,
                    other => return Err(format!("unknown alpha family `{other}`")),
                };
                let alpha = parse_f64(value)?;
                Ok(InitialState::Alpha { family, alpha })
            }
            ["beta", value] => Ok(InitialState::Beta(parse_f64(value)?)),
            ["c_class", sign, value] => {
                let sign = match *sign {
                    "plus" => CoherenceSign::Plus,
                    "minus" => CoherenceSign::Minus,
                    other => return Err(format!("unknown coherence sign `{other}`")),
                };
                let coherence = Complex64::from_str(value)
                    .map_err(|_| format!("`{value}` is not a complex number (try 0.1+0.05i)"))?;
                Ok(InitialState::CClass { sign, coherence })
            }
            ["werner", value] => Ok(InitialState::Werner(parse_f64(value)?)),
            _ => Err(format!("cannot parse initial state `{text}`; {usage}")),
        }
    }
}

fn parse_f64(text: &str) -> Result<f64, String> {
    text.parse::<f64>()
        .map_err(|_| format!("`{text}` is not a number"))
}

/// A fully validated run: initial state, Hamiltonian, noise, integration
/// plan, and optional output path.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub initial: InitialState,
    pub hamiltonian: HamiltonianParams,
    pub noise: NoiseConfig,
    pub evolution: EvolutionConfig,
    pub output: Option<PathBuf>,
}

pub fn parse_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path)?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<RunConfig, CliError> {
    let mut initial: Option<InitialState> = None;
    let mut delta0 = 0.0;
    let mut omega0 = 0.0;
    let mut gamma_delta = 0.0;
    let mut gamma_omega = 0.0;
    let mut topology = NoiseTopology::Global;
    let mut t_end: Option<f64> = None;
    let mut dt: Option<f64> = None;
    let mut record_every: usize = 10;
    let mut output: Option<PathBuf> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| CliError::Parse {
            line,
            message: format!("expected `key = value`, got `{body}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |message: String| CliError::Parse { line, message };
        match key {
            "initial" => initial = Some(InitialState::parse(value).map_err(bad)?),
            "delta0" => delta0 = parse_f64(value).map_err(bad)?,
            "omega0" => omega0 = parse_f64(value).map_err(bad)?,
            "gamma_delta" => gamma_delta = parse_f64(value).map_err(bad)?,
            "gamma_omega" => gamma_omega = parse_f64(value).map_err(bad)?,
            "topology" => {
                topology = match value {
                    "global" => NoiseTopology::Global,
                    "local" => NoiseTopology::Local,
                    other => {
                        return Err(bad(format!(
                            "unknown topology `{other}` (expected global or local)"
                        )))
                    }
                }
            }
            "t_end" => t_end = Some(parse_f64(value).map_err(bad)?),
            "dt" => dt = Some(parse_f64(value).map_err(bad)?),
            "record_every" => {
                record_every = value
                    .parse::<usize>()
                    .map_err(|_| bad(format!("`{value}` is not a positive integer")))?
            }
            "output" => output = Some(PathBuf::from(value)),
            other => return Err(CliError::Parse {
                line,
                message: format!("unknown key `{other}`"),
            }),
        }
    }

    let initial = initial.ok_or_else(|| {
        CliError::Config("missing required key `initial`".to_string())
    })?;
    // Surface factory precondition violations (e.g. alpha outside [0,1]) now.
    initial.build()?;
    let hamiltonian = HamiltonianParams::new(delta0, omega0)?;
    let noise = NoiseConfig::new(gamma_delta, gamma_omega, topology)?;

    // Default horizon: long enough to reach the steady state of the slowest
    // active channel; default step follows the integrator's stability rule.
    let t_end = t_end.unwrap_or_else(|| match noise.min_active_rate() {
        Some(gamma) => 20.0 / gamma,
        None => 10.0,
    });
    let dt = dt.unwrap_or_else(|| default_step(&hamiltonian, &noise).min(t_end));
    let evolution = EvolutionConfig::new(t_end, dt, record_every)?;

    Ok(RunConfig {
        initial,
        hamiltonian,
        noise,
        evolution,
        output,
    })
}
