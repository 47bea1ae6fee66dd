use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use ota_signaling::harness::{emit_csv, emit_plot, snr_range, ErrorMetric, SimConfig, SweepResult};
use ota_signaling::{Result, Scheme};

/// Monte Carlo detection-error sweep for signature-based OTA signaling.
#[derive(Debug, Parser)]
#[command(name = "simulate", version)]
struct Args {
    /// Scheme to simulate: sts, walsh, gold, zc or all
    #[arg(long)]
    scheme: Option<String>,
    /// Number of simultaneous transmitters (1 or 2)
    #[arg(long)]
    signals: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    snr_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    snr_stop: Option<f64>,
    #[arg(long)]
    snr_step: Option<f64>,
    /// Trials per SNR point
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Flat key = value configuration file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// OFDM symbols correlated coherently by the sequence receivers
    #[arg(long)]
    coherent_span: Option<usize>,
    /// Error counting: message or set
    #[arg(long)]
    error_metric: Option<ErrorMetric>,
    /// Run trials on one thread
    #[arg(long)]
    serial: bool,
    /// CSV output path
    #[arg(long, default_value = "results.csv")]
    out: PathBuf,
    /// Optional SVG plot path
    #[arg(long)]
    plot: Option<PathBuf>,
}

fn build_config(args: &Args) -> Result<(SimConfig, Vec<Scheme>)> {
    let mut cfg = match &args.config {
        Some(path) => SimConfig::from_file(path)?,
        None => SimConfig::default(),
    };
    let schemes = match args.scheme.as_deref() {
        Some("all") => Scheme::ALL.to_vec(),
        Some(s) => vec![s.parse()?],
        None => vec![cfg.scheme],
    };
    if let Some(n) = args.signals {
        cfg.num_signals = n;
    }
    if args.snr_start.is_some() || args.snr_stop.is_some() || args.snr_step.is_some() {
        let start = args
            .snr_start
            .or(cfg.snr_db_list.first().copied())
            .unwrap_or(-10.0);
        let stop = args
            .snr_stop
            .or(cfg.snr_db_list.last().copied())
            .unwrap_or(30.0);
        cfg.snr_db_list = snr_range(start, stop, args.snr_step.unwrap_or(2.0))?;
    }
    if let Some(t) = args.trials {
        cfg.trials_per_point = t;
    }
    if let Some(s) = args.seed {
        cfg.master_seed = s;
    }
    if let Some(span) = args.coherent_span {
        cfg.coherent_span = span;
    }
    if let Some(m) = args.error_metric {
        cfg.error_metric = m;
    }
    if args.serial {
        cfg.parallel = false;
    }
    for &s in &schemes {
        cfg.with_scheme(s).validate()?;
    }
    Ok((cfg, schemes))
}

fn run(args: &Args) -> Result<()> {
    let (cfg, schemes) = build_config(args)?;
    let mut results = Vec::new();
    for scheme in schemes {
        let started = std::time::Instant::now();
        let r = ota_signaling::harness::run_sweep(&cfg.with_scheme(scheme))?;
        eprintln!(
            "{scheme} ({} signal(s)): {} points in {:.1}s",
            cfg.num_signals,
            r.points.len(),
            started.elapsed().as_secs_f64()
        );
        results.push(r);
    }
    let merged = SweepResult::merge(results);
    emit_csv(&merged, &args.out)?;
    if let Some(plot) = &args.plot {
        emit_plot(&[merged], plot)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("simulate: {e}");
            ExitCode::from(2)
        }
    }
}
