mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::Format;

#[derive(Parser, Debug, Serialize)]
#[command(
    name = "dynatomic",
    version,
    about = "Multiplicities of periodic points of polynomial maps over finite fields and Q"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Map description (JSON).
    #[arg(long, global = true)]
    pub map: Option<PathBuf>,
    /// Point as "a,b" or "[a:b]"; `t` is the generator of the extension given by --point-ext.
    #[arg(long, global = true)]
    pub point: Option<String>,
    /// Degree over the base field of the field the point coordinates live in.
    #[arg(long, global = true, default_value_t = 1)]
    pub point_ext: u32,
    #[arg(long, global = true)]
    pub n: Option<u64>,
    #[arg(long, global = true)]
    pub n_max: Option<u64>,
    /// Largest extension degree s searched when enumerating points.
    #[arg(long, global = true, default_value_t = 2)]
    pub ext_bound: u32,
    /// Initial truncation order T_0.
    #[arg(long, global = true, default_value_t = 8)]
    pub trunc: u32,
    /// Largest truncation order before an iterate is declared degenerate.
    #[arg(long, global = true, default_value_t = 32)]
    pub max_trunc: u32,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Standard)]
    pub method: MethodArg,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 10)]
    pub count: usize,
    /// Primes allowed in the fuzz corpus (repeatable).
    #[arg(long = "prime", global = true)]
    pub primes: Vec<u64>,
    /// Dimension N of projective space for `degrees`.
    #[arg(long, global = true, default_value_t = 1)]
    pub dim: u32,
    /// Map degree d for `degrees`.
    #[arg(long, global = true, default_value_t = 2)]
    pub degree: u64,
    #[serde(skip)]
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// a_P(n) and a*_P(n) at one point.
    Mult,
    /// a_P(n) and a*_P(n) at one point for n = 1..=n_max.
    Astar,
    /// The cycles Φ_n and Φ*_n over extensions up to --ext-bound.
    Cycle,
    /// Theorem checks on one map or on a seeded random corpus.
    Verify,
    /// deg Φ_n and deg Φ*_n for maps of P^N of degree d.
    Degrees,
    /// Lefschetz numbers L_k and periodic Lefschetz numbers l_k.
    Lefschetz,
    /// Eigenvalues and Jordan blocks of the derivative of φ^m at a point.
    Spectral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Standard,
    Truncation,
    CrossCheck,
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    if let Some(n) = std::env::var("DYNATOMIC_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let (name, run) = match cfg.command {
        Command::Mult => ("mult", commands::mult(&cfg)),
        Command::Astar => ("astar", commands::astar(&cfg)),
        Command::Cycle => ("cycle", commands::cycle(&cfg)),
        Command::Verify => ("verify", commands::verify(&cfg)),
        Command::Degrees => ("degrees", commands::degrees(&cfg)),
        Command::Lefschetz => ("lefschetz", commands::lefschetz(&cfg)),
        Command::Spectral => ("spectral", commands::spectral(&cfg)),
    };
    let (outcome, input_hash) = match run {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let config = serde_json::to_value(&cfg).expect("config serializes");
    if let Err(e) = output::emit(name, config, &input_hash, &outcome, cfg.format, cfg.out.as_deref()) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    if !outcome.violations.is_empty() {
        eprintln!("{} violation(s) found", outcome.violations.len());
    }
    ExitCode::from(exit_status(&outcome))
}

/// 0 when no theorem check failed, 2 otherwise.
fn exit_status(outcome: &output::Outcome) -> u8 {
    if outcome.violations.is_empty() {
        0
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn violations_set_exit_status() {
        let mut o = output::Outcome::new(json!({}), vec![], vec![]);
        assert_eq!(exit_status(&o), 0);
        o.violations
            .push(json!({"theorem": "effectivity", "witness": {"n": 2}}));
        assert_eq!(exit_status(&o), 2);
    }
}
