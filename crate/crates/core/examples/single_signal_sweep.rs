//! Error rate against SNR for one transmitter, every scheme. Writes a CSV
//! and an SVG plot.
//!
//! Usage: cargo run --release --example single_signal_sweep [-- TRIALS [OUT_DIR]]

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
        ..SimConfig::default()
    };
    let result = SweepResult::merge(
        Scheme::ALL
            .iter()
            .map(|&s| run_sweep(&cfg.with_scheme(s)))
            .collect::<ota_signaling::Result<Vec<_>>>()?,
    );
    for scheme in Scheme::ALL {
        match result.snr_at_rate(scheme, 1, 1e-2) {
            Some(snr) => println!("{scheme:>5}: 1e-2 at {snr:.2} dB"),
            None => println!("{scheme:>5}: 1e-2 not reached"),
        }
    }
    let csv = dir.join("single_signal.csv");
    let svg = dir.join("single_signal.svg");
    emit_csv(&result, &csv)?;
    emit_plot(&[result], &svg)?;
    println!("wrote {} and {}", csv.display(), svg.display());
    Ok(())
}
