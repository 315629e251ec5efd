use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qcorr_cli::{
    cmd_evolve, cmd_scan_alpha, cmd_scan_beta, cmd_steady, cmd_table1, parse_config, ScanFamily,
    ScanNoise,
};

/// Two qubits in noisy classical fields: trajectories, steady states, and
/// correlation scans.
#[derive(Parser)]
#[command(name = "qcorr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the master equation and write per-sample measures as CSV.
    Evolve {
        /// Run configuration file (key = value lines).
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path (overrides `output` from the config).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a companion gnuplot script next to the CSV.
        #[arg(long)]
        gnuplot: bool,
    },
    /// Apply the closed-form steady map and print the measures.
    Steady {
        #[arg(long)]
        config: PathBuf,
    },
    /// Steady-state table for the product and Bell states under both noise
    /// blocks, next to the published values.
    Table1 {
        /// Output CSV path (default: table1.csv).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Steady discord across the Bell-like α families.
    ScanAlpha {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum)]
        noise: NoiseArg,
        #[arg(long, default_value_t = 501)]
        points: usize,
        /// Output CSV path (default: scan_alpha.csv).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        gnuplot: bool,
    },
    /// Steady discord across the β mixtures under collective noise.
    ScanBeta {
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Output CSV path (default: scan_beta.csv).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        gnuplot: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// α|eg⟩ + √(1−α²)|ge⟩
    PhiAlphaPlus,
    /// α|ee⟩ + √(1−α²)|gg⟩
    PsiAlphaPlus,
}

impl From<FamilyArg> for ScanFamily {
    fn from(arg: FamilyArg) -> Self {
        match arg {
            FamilyArg::PhiAlphaPlus => ScanFamily::PhiAlphaPlus,
            FamilyArg::PsiAlphaPlus => ScanFamily::PsiAlphaPlus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NoiseArg {
    /// Γ_Δ = 0, Γ_Ω > 0
    TransverseOnly,
    /// Γ_Δ > 0, Γ_Ω > 0
    Collective,
}

impl From<NoiseArg> for ScanNoise {
    fn from(arg: NoiseArg) -> Self {
        match arg {
            NoiseArg::TransverseOnly => ScanNoise::TransverseOnly,
            NoiseArg::Collective => ScanNoise::Collective,
        }
    }
}

/// Die quietly when a pager or `head` closes our stdout, like other unix
/// tools, instead of panicking on the failed write.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Evolve {
            config,
            out,
            gnuplot,
        } => parse_config(&config).and_then(|cfg| {
            cmd_evolve(&cfg, out.as_deref(), gnuplot).map(|_| ())
        }),
        Command::Steady { config } => parse_config(&config).and_then(|cfg| cmd_steady(&cfg)),
        Command::Table1 { out } => cmd_table1(out.as_deref()),
        Command::ScanAlpha {
            family,
            noise,
            points,
            out,
            gnuplot,
        } => cmd_scan_alpha(family.into(), noise.into(), points, out.as_deref(), gnuplot),
        Command::ScanBeta {
            points,
            out,
            gnuplot,
        } => cmd_scan_beta(points, out.as_deref(), gnuplot),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
