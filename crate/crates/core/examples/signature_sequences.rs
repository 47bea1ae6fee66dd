//! Walsh, Gold and Zadoff-Chu signatures and their correlation properties.

use ota_signaling::seqgen::{gold, periodic_correlation, walsh, zadoff_chu, SequenceFamily};

fn main() -> ota_signaling::Result<()> {
    for family in [
        SequenceFamily::Walsh,
        SequenceFamily::Gold,
        SequenceFamily::ZadoffChu,
    ] {
        println!(
            "{family}: length {}, {} signatures",
            family.length(),
            family.family_size()
        );
    }

    let w3 = walsh(3)?;
    let w5 = walsh(5)?;
    println!(
        "Walsh <3,3> = {}, <3,5> = {}",
        periodic_correlation(&w3.chips, &w3.chips, 0).re,
        periodic_correlation(&w3.chips, &w5.chips, 0).re
    );

    let g0 = gold(0)?;
    let g9 = gold(9)?;
    let mut values: Vec<i64> = (0..g0.len())
        .map(|s| periodic_correlation(&g0.chips, &g9.chips, s).re.round() as i64)
        .collect();
    values.sort();
    values.dedup();
    println!("Gold 0 vs 9 cross-correlation values: {values:?}");

    let z1 = zadoff_chu(1)?;
    let z2 = zadoff_chu(2)?;
    let side = (1..z1.len())
        .map(|s| periodic_correlation(&z1.chips, &z1.chips, s).norm())
        .fold(0.0, f64::max);
    println!("ZC root 1 worst autocorrelation sidelobe {side:.2e}");
    println!(
        "ZC roots 1/2 cross-correlation magnitude {:.3} (sqrt 1021 = {:.3})",
        periodic_correlation(&z1.chips, &z2.chips, 17).norm(),
        1021f64.sqrt()
    );
    Ok(())
}
