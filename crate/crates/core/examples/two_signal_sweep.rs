//! Error rate against SNR with two simultaneous transmitters, every scheme,
//! plotted next to the STS single-transmitter curve.
//!
//! Usage: cargo run --release --example two_signal_sweep [-- TRIALS [OUT_DIR]]

use std::path::PathBuf;

use ota_signaling::harness::{emit_csv, emit_plot, run_sweep, SimConfig, SweepResult};
use ota_signaling::Scheme;

fn main() -> ota_signaling::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args
        .next()
        .map_or(2000, |t| t.parse().expect("TRIALS must be an integer"));
    let dir = args.next().map_or_else(std::env::temp_dir, PathBuf::from);

    let cfg = SimConfig {
        trials_per_point: trials,
        num_signals: 2,
        ..SimConfig::default()
    };
    let mut parts = Scheme::ALL
        .iter()
        .map(|&s| run_sweep(&cfg.with_scheme(s)))
        .collect::<ota_signaling::Result<Vec<_>>>()?;
    parts.push(run_sweep(&cfg.with_scheme(Scheme::Sts).with_signals(1))?);
    let result = SweepResult::merge(parts);

    for scheme in Scheme::ALL {
        let curve = result.curve(scheme, 2);
        let top = curve.last().expect("non-empty sweep");
        println!(
            "{scheme:>5}: {:.2e} at {} dB with two transmitters",
            top.error_rate, top.snr_db
        );
    }
    let csv = dir.join("two_signal.csv");
    let svg = dir.join("two_signal.svg");
    emit_csv(&result, &csv)?;
    emit_plot(&[result], &svg)?;
    println!("wrote {} and {}", csv.display(), svg.display());
    Ok(())
}
