//! `perlab`: persistence-probability laboratory for Lamperti transforms
//! of integrated fractional Brownian motion and Riemann-Liouville
//! processes.
//!
//! Subcommands: verify, corr-eval, corr-limit, drift-check, sample,
//! estimate, curve, figure1. Exit codes: 0 success, 1 check failure,
//! 2 usage or validation error.

mod commands;
mod output;

use clap::{Parser, Subcommand};
use commands::{parse_f64_list, EXIT_USAGE};
use output::Format;
use perlab::persistence::ProcessFamily;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "perlab", version, about)]
struct Cli {
    /// Worker threads for Monte-Carlo runs (results never depend on it).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,

    /// Output file path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the deterministic identity and bound suite; exit 0 iff all pass.
    Verify {
        /// Override the H grid of the hypergeometric identity checks
        /// (comma-separated list).
        #[arg(long)]
        h: Option<String>,
        /// Testing hook: offset added to every r_H evaluation; any
        /// nonzero value must make the suite fail.
        #[arg(long, default_value_t = 0.0, hide = true)]
        perturb_r_rl: f64,
    },

    /// Evaluate a correlation function at given lags.
    CorrEval {
        #[arg(long)]
        family: String,
        #[arg(long)]
        h: Option<f64>,
        /// Rate of the Ornstein-Uhlenbeck correlation e^{−rate·τ}.
        #[arg(long, default_value_t = 1.0)]
        rate: f64,
        /// Time rescaling γ: evaluates A(τ/γ).
        #[arg(long, default_value_t = 1.0)]
        time_scale: f64,
        /// Comma-separated lag list.
        #[arg(long)]
        tau: String,
    },

    /// Tables of |rescaled correlation − limit| demonstrating the
    /// small-H / large-H correlation limits.
    CorrLimit {
        /// ifbm or rl.
        #[arg(long)]
        family: String,
        /// h0 (H → 0) or h1 (H → 1).
        #[arg(long, default_value = "h0")]
        direction: String,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        tau: Option<String>,
        /// Riemann-Liouville rescaling exponent: γ = exp(a/(2H)).
        #[arg(long, default_value_t = 1.0)]
        a: f64,
    },

    /// Verify the drift function φ(t) = c∫_{1/2}^t (t−s)^{H−1/2} s^{−η} ds:
    /// φ(1) = 1, nondecreasing, and ≥ 1 from t = 1 on.
    DriftCheck {
        #[arg(long)]
        h: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long, default_value_t = 100.0)]
        t_max: f64,
        #[arg(long, default_value_t = 400)]
        grid_points: usize,
    },

    /// Dump sampled paths (rows = paths, columns = grid points).
    Sample {
        /// gsp (stationary from --family), fbm, rl, or ifbm-lamperti.
        #[arg(long, default_value = "gsp")]
        law: String,
        #[arg(long, default_value = "ou")]
        family: String,
        #[arg(long)]
        h: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        rate: f64,
        #[arg(long, default_value_t = 1.0)]
        time_scale: f64,
        #[arg(long)]
        horizon: f64,
        #[arg(long)]
        grid_step: f64,
        #[arg(long, default_value_t = 10)]
        paths: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Monte-Carlo persistence probability P(Z < 0 on [0, T]).
    Estimate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        h: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        rate: f64,
        #[arg(long, default_value_t = 1.0)]
        time_scale: f64,
        #[arg(long)]
        horizon: f64,
        #[arg(long, default_value_t = 0.005)]
        grid_step: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Exponent-versus-H curve for one process family.
    Curve {
        /// ifbm, rl, or fbm.
        #[arg(long)]
        family: String,
        /// Comma-separated H list.
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0.005)]
        grid_step: f64,
        /// Fit window "T_min,T_max".
        #[arg(long, default_value = "2,8")]
        window: String,
        #[arg(long, default_value_t = 4)]
        window_points: usize,
        /// Optional time rescaling per point: a number, 'h', or
        /// 'one-minus-h' (estimates θ/γ).
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Reproduce the exponent-relations figure: Monte-Carlo curves for
    /// integrated FBM and Riemann-Liouville plus exact reference rows.
    Figure1 {
        /// Trials per curve point (--full multiplies by 10).
        #[arg(long, default_value_t = 150_000)]
        trials: u64,
        #[arg(long, default_value_t = 0.01)]
        grid_step: f64,
        #[arg(long, default_value = "2,8")]
        window: String,
        #[arg(long, default_value_t = 4)]
        window_points: usize,
        /// Integrated-FBM H grid.
        #[arg(long, default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
        h_ifbm: String,
        /// Riemann-Liouville H grid.
        #[arg(long, default_value = "0.3,0.5,0.75,1.0,1.5,2.0,2.5,3.0")]
        h_rl: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Scale the trial budget by 10.
        #[arg(long)]
        full: bool,
    },
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let v = parse_f64_list(s, "window")?;
    if v.len() != 2 || !(v[0] < v[1]) {
        return Err(format!(
            "--window must be 'T_min,T_max' with T_min < T_max, got '{s}'"
        ));
    }
    Ok((v[0], v[1]))
}

fn parse_family(s: &str) -> Result<ProcessFamily, String> {
    match s {
        "ifbm" => Ok(ProcessFamily::Ifbm),
        "rl" => Ok(ProcessFamily::Rl),
        "fbm" => Ok(ProcessFamily::Fbm),
        other => Err(format!("unknown family '{other}' (expected ifbm|rl|fbm)")),
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err("--workers must be >= 1".into());
        }
        // Values are worker-count independent by construction; the pool
        // size only affects wall time.
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let format = cli.format;
    let out = cli.out.as_deref();

    match cli.command {
        Command::Verify { h, perturb_r_rl } => {
            commands::cmd_verify(h.as_deref(), perturb_r_rl, format, out)
        }
        Command::CorrEval {
            family,
            h,
            rate,
            time_scale,
            tau,
        } => {
            let spec = commands::build_spec(&family, h, rate, time_scale)?;
            let taus = parse_f64_list(&tau, "tau")?;
            commands::cmd_corr_eval(&spec, &taus, format, out)
        }
        Command::CorrLimit {
            family,
            direction,
            h,
            tau,
            a,
        } => commands::cmd_corr_limit(
            &family,
            &direction,
            h.as_deref(),
            tau.as_deref(),
            a,
            format,
            out,
        ),
        Command::DriftCheck {
            h,
            eta,
            t_max,
            grid_points,
        } => commands::cmd_drift_check(h, eta, t_max, grid_points, format, out),
        Command::Sample {
            law,
            family,
            h,
            rate,
            time_scale,
            horizon,
            grid_step,
            paths,
            seed,
        } => {
            let spec = if law == "gsp" {
                Some(commands::build_spec(&family, h, rate, time_scale)?)
            } else {
                None
            };
            commands::cmd_sample(
                &law,
                spec.as_ref(),
                h,
                horizon,
                grid_step,
                paths,
                seed,
                format,
                out,
            )
        }
        Command::Estimate {
            family,
            h,
            rate,
            time_scale,
            horizon,
            grid_step,
            trials,
            seed,
        } => {
            let spec = commands::build_spec(&family, h, rate, time_scale)?;
            commands::cmd_estimate(&spec, horizon, grid_step, trials, seed, format, out)
        }
        Command::Curve {
            family,
            h,
            trials,
            grid_step,
            window,
            window_points,
            gamma,
            seed,
        } => {
            let fam = parse_family(&family)?;
            let hs = parse_f64_list(&h, "h")?;
            let win = parse_window(&window)?;
            commands::cmd_curve(
                fam,
                &hs,
                trials,
                grid_step,
                win,
                window_points,
                gamma.as_deref(),
                seed,
                format,
                out,
            )
        }
        Command::Figure1 {
            trials,
            grid_step,
            window,
            window_points,
            h_ifbm,
            h_rl,
            seed,
            full,
        } => {
            let win = parse_window(&window)?;
            let h_ifbm = parse_f64_list(&h_ifbm, "h-ifbm")?;
            let h_rl = parse_f64_list(&h_rl, "h-rl")?;
            let trials = if full { trials * 10 } else { trials };
            commands::cmd_figure1(
                trials,
                grid_step,
                win,
                window_points,
                &h_ifbm,
                &h_rl,
                seed,
                format,
                out,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
