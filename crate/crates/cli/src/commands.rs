//! The five commands: trajectory CSVs, steady-state measures, the
//! steady-state reference table, and the α/β parameter scans.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use qcorr::correlations::measure_all;
use qcorr::noisedyn::{evolve, steady_collective, steady_detuning_only, steady_local,
    steady_transverse_only};
use qcorr::qstate::{AlphaFamily, BellState, DensityMatrix, NoiseTopology, ProductState};
use qcorr::CorrelationRecord;

use crate::config::RunConfig;
use crate::error::CliError;

/// Column layout shared by every CSV this crate writes (first column varies:
/// `t`, `alpha`, or `beta`).
pub const CSV_HEADER: &str = "t,eof,concurrence,qd,cc,mutual_info,gmqd,linear_entropy";

/// The five measures tabulated in the steady-state reference table.
pub const MEASURE_COLUMNS: [&str; 5] = ["eof", "qd", "gmqd", "cc", "linear_entropy"];

fn fmt(value: f64) -> String {
    format!("{value:.9}")
}

fn record_fields(r: &CorrelationRecord) -> [f64; 7] {
    [
        r.eof,
        r.concurrence,
        r.qd,
        r.cc,
        r.mutual_info,
        r.gmqd,
        r.linear_entropy,
    ]
}

fn write_with_io_context(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|err| {
        CliError::Io(std::io::Error::new(
            err.kind(),
            format!("cannot write {}: {err}", path.display()),
        ))
    })
}

// ---------------------------------------------------------------------------
// evolve

/// Integrate the configured run and measure every recorded sample.
pub fn run_evolve(cfg: &RunConfig) -> Result<Vec<(f64, CorrelationRecord)>, CliError> {
    let rho0 = cfg.initial.build()?;
    let traj = evolve(&rho0, &cfg.hamiltonian, &cfg.noise, &cfg.evolution)?;
    let mut rows = Vec::with_capacity(traj.len());
    for (t, state) in traj.iter() {
        let x = state.to_x_state().map_err(|err| {
            CliError::Config(format!(
                "correlation measures are defined for X-structured states only, but the \
                 trajectory leaves the X form at t = {t} ({err}); run with omega0 = 0"
            ))
        })?;
        rows.push((t, measure_all(&x)));
    }
    Ok(rows)
}

/// Render trajectory rows as CSV (LF line endings, `.` decimal separator).
pub fn evolve_csv(rows: &[(f64, CorrelationRecord)]) -> String {
    let mut out = String::with_capacity(rows.len() * 96 + CSV_HEADER.len() + 1);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (t, record) in rows {
        out.push_str(&fmt(*t));
        for field in record_fields(record) {
            out.push(',');
            out.push_str(&fmt(field));
        }
        out.push('\n');
    }
    out
}

pub fn cmd_evolve(
    cfg: &RunConfig,
    out: Option<&Path>,
    gnuplot: bool,
) -> Result<PathBuf, CliError> {
    let path = out
        .map(Path::to_path_buf)
        .or_else(|| cfg.output.clone())
        .ok_or_else(|| {
            CliError::Config(
                "no output path: set `output = ...` in the config or pass --out".to_string(),
            )
        })?;
    let rows = run_evolve(cfg)?;
    write_with_io_context(&path, &evolve_csv(&rows))?;
    if gnuplot {
        let script = plot_script(&path, "t", &["eof", "qd", "cc"]);
        write_with_io_context(&path.with_extension("gp"), &script)?;
    }
    println!("wrote {} samples to {}", rows.len(), path.display());
    Ok(path)
}

// ---------------------------------------------------------------------------
// steady

/// Apply the steady map selected by the noise configuration and measure it.
/// Valid only for Δ₀ = Ω₀ = 0 and at least one active noise channel.
pub fn run_steady(cfg: &RunConfig) -> Result<CorrelationRecord, CliError> {
    if !cfg.hamiltonian.is_free() {
        return Err(CliError::Config(
            "the closed-form steady maps hold only for delta0 = 0 and omega0 = 0".to_string(),
        ));
    }
    let x0 = cfg.initial.build()?.to_x_state()?;
    let noise = &cfg.noise;
    let steady = match noise.topology {
        NoiseTopology::Local => steady_local(&x0, noise)?,
        NoiseTopology::Global => match (noise.gamma_delta > 0.0, noise.gamma_omega > 0.0) {
            (false, false) => {
                return Err(CliError::Config(
                    "steady state needs at least one nonzero noise strength".to_string(),
                ))
            }
            (true, false) => steady_detuning_only(&x0),
            (false, true) => steady_transverse_only(&x0),
            (true, true) => steady_collective(&x0),
        },
    };
    Ok(measure_all(&steady))
}

/// Key-value rendering used by the `steady` subcommand.
pub fn steady_text(record: &CorrelationRecord) -> String {
    let names = [
        "eof",
        "concurrence",
        "qd",
        "cc",
        "mutual_info",
        "gmqd",
        "linear_entropy",
    ];
    let mut out = String::new();
    for (name, value) in names.iter().zip(record_fields(record)) {
        let _ = writeln!(out, "{name}={}", fmt(value));
    }
    out
}

pub fn cmd_steady(cfg: &RunConfig) -> Result<(), CliError> {
    let record = run_steady(cfg)?;
    print!("{}", steady_text(&record));
    Ok(())
}

// ---------------------------------------------------------------------------
// table1

/// One initial state under one noise block, with the published values.
#[derive(Debug, Clone)]
pub struct Table1Entry {
    pub state: &'static str,
    pub block: &'static str,
    /// eof, qd, gmqd, cc, linear_entropy
    pub computed: [f64; 5],
    pub reference: [f64; 5],
}

impl Table1Entry {
    pub fn gaps(&self) -> [f64; 5] {
        std::array::from_fn(|k| (self.computed[k] - self.reference[k]).abs())
    }

    pub fn max_gap(&self) -> f64 {
        self.gaps().iter().cloned().fold(0.0, f64::max)
    }
}

const THIRD: f64 = 1.0 / 3.0;
const SIX_NINTHS: f64 = 6.0 / 9.0;
const EIGHT_NINTHS: f64 = 8.0 / 9.0;

/// Published steady-state values: (state label, initial state,
/// transverse-only block, collective block); each block is
/// [EoF, QD, GMQD, CC, S_L].
fn table1_reference() -> Vec<(&'static str, DensityMatrix, [f64; 5], [f64; 5])> {
    let bell_row = [1.0, 1.0, 0.5, 1.0, 0.0];
    let classical_row = [0.0, 0.0, 0.0, 1.0, SIX_NINTHS];
    let product_left = [0.0, 0.311, 0.0625, 0.189, 0.833];
    let discordant_right = [0.0, THIRD, 0.0556, 0.0817, EIGHT_NINTHS];
    vec![
        (
            "gg/ee",
            DensityMatrix::product(ProductState::Gg),
            product_left,
            discordant_right,
        ),
        (
            "eg/ge",
            DensityMatrix::product(ProductState::Eg),
            product_left,
            [0.0, 0.126, 0.0556, 0.0817, EIGHT_NINTHS],
        ),
        (
            "phi+",
            DensityMatrix::bell(BellState::PhiPlus),
            classical_row,
            discordant_right,
        ),
        (
            "phi-",
            DensityMatrix::bell(BellState::PhiMinus),
            bell_row,
            bell_row,
        ),
        (
            "psi+",
            DensityMatrix::bell(BellState::PsiPlus),
            classical_row,
            discordant_right,
        ),
        (
            "psi-",
            DensityMatrix::bell(BellState::PsiMinus),
            bell_row,
            discordant_right,
        ),
    ]
}

fn tabulated(record: &CorrelationRecord) -> [f64; 5] {
    [
        record.eof,
        record.qd,
        record.gmqd,
        record.cc,
        record.linear_entropy,
    ]
}

/// Compute the full 6×2 steady-state table from the closed-form maps.
pub fn run_table1() -> Vec<Table1Entry> {
    let mut entries = Vec::with_capacity(12);
    for (state, rho0, left_ref, right_ref) in table1_reference() {
        let x0 = rho0.to_x_state().expect("table states are X structured");
        let left = measure_all(&steady_transverse_only(&x0));
        let right = measure_all(&steady_collective(&x0));
        entries.push(Table1Entry {
            state,
            block: "transverse",
            computed: tabulated(&left),
            reference: left_ref,
        });
        entries.push(Table1Entry {
            state,
            block: "collective",
            computed: tabulated(&right),
            reference: right_ref,
        });
    }
    entries
}

pub fn table1_text(entries: &[Table1Entry]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<6} {:<11} {:>8} {:>8} {:>8} {:>8} {:>8}   {:>9}",
        "state", "block", "EoF", "QD", "GMQD", "CC", "S_L", "max|gap|"
    );
    for entry in entries {
        let c = entry.computed;
        let _ = writeln!(
            out,
            "{:<6} {:<11} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}   {:>9.1e}",
            entry.state, entry.block, c[0], c[1], c[2], c[3], c[4], entry.max_gap()
        );
    }
    out
}

pub fn table1_csv(entries: &[Table1Entry]) -> String {
    let mut out = String::from("state,block,measure,computed,reference,abs_gap\n");
    for entry in entries {
        for (k, measure) in MEASURE_COLUMNS.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                entry.state,
                entry.block,
                measure,
                fmt(entry.computed[k]),
                fmt(entry.reference[k]),
                fmt((entry.computed[k] - entry.reference[k]).abs()),
            );
        }
    }
    out
}

pub fn cmd_table1(out: Option<&Path>) -> Result<(), CliError> {
    let entries = run_table1();
    print!("{}", table1_text(&entries));
    let path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("table1.csv"));
    write_with_io_context(&path, &table1_csv(&entries))?;
    println!("wrote {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// scans

/// Pure-state families scanned over the degree of correlation α.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFamily {
    PhiAlphaPlus,
    PsiAlphaPlus,
}

/// Noise combination whose steady map the scan applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanNoise {
    TransverseOnly,
    Collective,
}

/// A refined local maximum of the scanned steady discord.
#[derive(Debug, Clone, Copy)]
pub struct ScanMaximum {
    pub location: f64,
    pub value: f64,
}

/// Grid of parameter values with the steady-state measures at each point.
#[derive(Debug, Clone)]
pub struct ScanResult {
    pub parameter: &'static str,
    pub values: Vec<f64>,
    pub records: Vec<CorrelationRecord>,
    pub maxima: Vec<ScanMaximum>,
}

/// Steady-state measures for one α under the selected noise case.
pub fn alpha_steady_record(
    family: ScanFamily,
    noise: ScanNoise,
    alpha: f64,
) -> Result<CorrelationRecord, CliError> {
    let family = match family {
        ScanFamily::PhiAlphaPlus => AlphaFamily::PhiPlus,
        ScanFamily::PsiAlphaPlus => AlphaFamily::PsiPlus,
    };
    let x0 = DensityMatrix::alpha_state(family, alpha)?.to_x_state()?;
    let steady = match noise {
        ScanNoise::TransverseOnly => steady_transverse_only(&x0),
        ScanNoise::Collective => steady_collective(&x0),
    };
    Ok(measure_all(&steady))
}

pub fn run_scan_alpha(
    family: ScanFamily,
    noise: ScanNoise,
    n_points: usize,
) -> Result<ScanResult, CliError> {
    if n_points < 50 {
        return Err(CliError::Config(format!(
            "scan-alpha needs at least 50 points, got {n_points}"
        )));
    }
    let values = uniform_grid(n_points);
    let records = values
        .iter()
        .map(|&alpha| alpha_steady_record(family, noise, alpha))
        .collect::<Result<Vec<_>, _>>()?;
    let qd: Vec<f64> = records.iter().map(|r| r.qd).collect();
    let maxima = refine_maxima(&values, &qd, |alpha| {
        alpha_steady_record(family, noise, alpha)
            .map(|r| r.qd)
            .unwrap_or(f64::NEG_INFINITY)
    });
    Ok(ScanResult {
        parameter: "alpha",
        values,
        records,
        maxima,
    })
}

/// β scan of the Ψ⁺/Φ⁺ mixture family under the collective steady map.
pub fn run_scan_beta(n_points: usize) -> Result<ScanResult, CliError> {
    if n_points < 11 {
        return Err(CliError::Config(format!(
            "scan-beta needs at least 11 points, got {n_points}"
        )));
    }
    let values = uniform_grid(n_points);
    let records = values
        .iter()
        .map(|&beta| {
            let x0 = DensityMatrix::beta_state(beta)?.to_x_state()?;
            Ok(measure_all(&steady_collective(&x0)))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let qd: Vec<f64> = records.iter().map(|r| r.qd).collect();
    let maxima = refine_maxima(&values, &qd, |beta| {
        DensityMatrix::beta_state(beta)
            .ok()
            .and_then(|rho| rho.to_x_state().ok())
            .map(|x0| measure_all(&steady_collective(&x0)).qd)
            .unwrap_or(f64::NEG_INFINITY)
    });
    Ok(ScanResult {
        parameter: "beta",
        values,
        records,
        maxima,
    })
}

fn uniform_grid(n_points: usize) -> Vec<f64> {
    let last = (n_points - 1) as f64;
    (0..n_points).map(|i| i as f64 / last).collect()
}

/// Locate strict grid maxima and refine each: a 3-point quadratic vertex as
/// the first guess, then a golden-section polish inside the bracket. Flat
/// curves fall back to the global grid maximum.
fn refine_maxima(xs: &[f64], ys: &[f64], f: impl Fn(f64) -> f64) -> Vec<ScanMaximum> {
    let mut maxima = Vec::new();
    for i in 1..xs.len() - 1 {
        if ys[i] > ys[i - 1] && ys[i] >= ys[i + 1] {
            maxima.push(refine_bracket(
                (xs[i - 1], ys[i - 1]),
                (xs[i], ys[i]),
                (xs[i + 1], ys[i + 1]),
                &f,
            ));
        }
    }
    if maxima.is_empty() {
        let (k, &value) = ys
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .expect("scan grids are non-empty");
        maxima.push(ScanMaximum {
            location: xs[k],
            value,
        });
    }
    maxima
}

fn refine_bracket(
    left: (f64, f64),
    mid: (f64, f64),
    right: (f64, f64),
    f: &impl Fn(f64) -> f64,
) -> ScanMaximum {
    let (xl, yl) = left;
    let (xm, ym) = mid;
    let (xr, yr) = right;

    let mut best = ScanMaximum {
        location: xm,
        value: ym,
    };

    // Quadratic vertex through the three bracket points.
    let denom = (xm - xl) * (ym - yr) - (xm - xr) * (ym - yl);
    if denom.abs() > f64::EPSILON {
        let vertex = xm
            - 0.5 * ((xm - xl).powi(2) * (ym - yr) - (xm - xr).powi(2) * (ym - yl)) / denom;
        let vertex = vertex.clamp(xl, xr);
        let value = f(vertex);
        if value > best.value {
            best = ScanMaximum {
                location: vertex,
                value,
            };
        }
    }

    // Golden-section search handles the kink the parabola cannot model.
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (xl, xr);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..90 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let polished = 0.5 * (a + b);
    let value = f(polished);
    if value > best.value {
        best = ScanMaximum {
            location: polished,
            value,
        };
    }
    best
}

/// Render a scan as CSV; the first column is the scanned parameter.
pub fn scan_csv(result: &ScanResult) -> String {
    let mut out = String::new();
    out.push_str(result.parameter);
    out.push_str(&CSV_HEADER["t".len()..]);
    out.push('\n');
    for (value, record) in result.values.iter().zip(&result.records) {
        out.push_str(&fmt(*value));
        for field in record_fields(record) {
            out.push(',');
            out.push_str(&fmt(field));
        }
        out.push('\n');
    }
    out
}

fn scan_summary(result: &ScanResult) -> String {
    let mut out = String::new();
    for m in &result.maxima {
        let _ = writeln!(
            out,
            "maximum: {} = {:.6}, qd = {:.6}",
            result.parameter, m.location, m.value
        );
    }
    out
}

pub fn cmd_scan_alpha(
    family: ScanFamily,
    noise: ScanNoise,
    n_points: usize,
    out: Option<&Path>,
    gnuplot: bool,
) -> Result<(), CliError> {
    let result = run_scan_alpha(family, noise, n_points)?;
    let path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("scan_alpha.csv"));
    write_with_io_context(&path, &scan_csv(&result))?;
    if gnuplot {
        let script = plot_script(&path, "alpha", &["qd", "eof"]);
        write_with_io_context(&path.with_extension("gp"), &script)?;
    }
    print!("{}", scan_summary(&result));
    println!("wrote {}", path.display());
    Ok(())
}

pub fn cmd_scan_beta(n_points: usize, out: Option<&Path>, gnuplot: bool) -> Result<(), CliError> {
    let result = run_scan_beta(n_points)?;
    let path = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("scan_beta.csv"));
    write_with_io_context(&path, &scan_csv(&result))?;
    if gnuplot {
        let script = plot_script(&path, "beta", &["qd", "eof"]);
        write_with_io_context(&path.with_extension("gp"), &script)?;
    }
    print!("{}", scan_summary(&result));
    println!("wrote {}", path.display());
    Ok(())
}

/// Companion gnuplot script referencing the CSV by name.
fn plot_script(csv_path: &Path, x_label: &str, columns: &[&str]) -> String {
    let csv_name = csv_path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| csv_path.display().to_string());
    let header: Vec<&str> = CSV_HEADER.split(',').collect();
    let mut out = String::from("set datafile separator \",\"\nset key autotitle columnhead\n");
    let _ = writeln!(out, "set xlabel \"{x_label}\"");
    let mut plots = Vec::new();
    for column in columns {
        if let Some(idx) = header.iter().position(|h| h == column) {
            plots.push(format!("\"{csv_name}\" using 1:{} with lines", idx + 1));
        }
    }
    let _ = writeln!(out, "plot {}", plots.join(", \\\n     "));
    out.push_str("pause -1\n");
    out
}
