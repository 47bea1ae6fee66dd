//! STS encoding and decoding: every message becomes one tone per OFDM
//! symbol, and two messages sent at once never share a tone.

use num_complex::Complex64;
use ota_signaling::detect::detect_sts;
use ota_signaling::grid::ResourceGrid;
use ota_signaling::sts::{digits_from_message, map_to_grid, sts_encode, StsConfig};

fn main() -> ota_signaling::Result<()> {
    let cfg = StsConfig::standard();
    println!(
        "S = {}, K = {}, N = {}, beta = {}, {} messages",
        cfg.band_width(),
        cfg.k(),
        cfg.n(),
        cfg.beta().value(),
        cfg.message_count()
    );

    let a = sts_encode(&digits_from_message(5, &cfg)?, &cfg);
    let b = sts_encode(&digits_from_message(40, &cfg)?, &cfg);
    println!("message  5 -> tones {:?}", a.tones().collect::<Vec<_>>());
    println!("message 40 -> tones {:?}", b.tones().collect::<Vec<_>>());
    println!("Hamming distance {}", a.hamming_distance(&b));

    // Two transmitters, the second 6 dB weaker, on the same subframe.
    let offset = 1;
    let blank = ResourceGrid::subframe();
    let mut rx = map_to_grid(&a, &blank, offset, cfg.band_width(), 1.0)?;
    rx.add_scaled(
        &map_to_grid(&b, &blank, offset, cfg.band_width(), 1.0)?,
        Complex64::new(0.5, 0.0),
    )?;

    let report = detect_sts(&rx, &cfg, offset, 2)?;
    println!("detected {:?}", report.detected_set);
    for (m, score) in report.ranked_hypotheses.iter().take(4) {
        println!("  message {m:2}: path energy {score:.3}");
    }
    Ok(())
}
