//! Load a sweep configuration from a flat key = value file and run a
//! short sweep with it.
//!
//! Usage: cargo run --example config_file [-- PATH]

use std::path::PathBuf;

use ota_signaling::harness::{run_sweep, write_csv, SimConfig};

fn main() -> ota_signaling::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/default.toml")
        });
    let mut cfg = SimConfig::from_file(&path)?;
    println!("{cfg:#?}");

    cfg.snr_db_list = vec![0.0, 10.0, 20.0];
    cfg.trials_per_point = 200;
    let result = run_sweep(&cfg)?;
    write_csv(&result, std::io::stdout()).expect("stdout is writable");
    Ok(())
}
