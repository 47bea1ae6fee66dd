//! Build an STS subframe, modulate it into a cyclic-prefixed OFDM stream
//! and write it as interleaved little-endian f32 I/Q.
//!
//! Usage: cargo run --example ofdm_waveform [-- OUT.iq]

use std::path::PathBuf;

use ota_signaling::grid::{
    export_iq_file, from_time_domain, to_time_domain, OfdmParams, ResourceGrid,
};
use ota_signaling::sts::{digits_from_message, map_to_grid, sts_encode, StsConfig};

fn main() -> ota_signaling::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("sts_subframe.iq"));

    let params = OfdmParams::default();
    params.validate()?;
    let cfg = StsConfig::standard();
    let cw = sts_encode(&digits_from_message(12, &cfg)?, &cfg);
    let grid = map_to_grid(&cw, &ResourceGrid::subframe(), 1, cfg.band_width(), 1.0)?;

    let samples = to_time_domain(&grid, &params)?;
    println!(
        "fft {} at {} kHz spacing, {:.2} MHz sample rate, {} samples per subframe",
        params.fft_size,
        params.subcarrier_spacing / 1e3,
        params.sample_rate() / 1e6,
        samples.len()
    );
    let energy: f64 = samples.iter().map(|z| z.norm_sqr()).sum();
    println!(
        "grid energy {:.3}, stream energy including cyclic prefixes {:.3}",
        grid.energy(),
        energy
    );

    let back = from_time_domain(&samples, &params, grid.num_subcarriers())?;
    let err = grid
        .as_slice()
        .iter()
        .zip(back.as_slice())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("round-trip error {err:.1e}");

    export_iq_file(&samples, &out)?;
    println!("wrote {}", out.display());
    Ok(())
}
