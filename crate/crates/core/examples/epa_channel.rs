//! One EPA fading realization: tap gains over time and the frequency
//! response across the 73-subcarrier band.

use ota_signaling::channel::{doppler_hz, make_epa_channel, ChannelGeometry, PowerDelayProfile};
use ota_signaling::grid::{OfdmParams, SUBFRAME_SUBCARRIERS};

fn main() {
    let fd = doppler_hz(3.0, 2.0e9);
    let profile = PowerDelayProfile::epa();
    println!("Doppler {fd:.3} Hz");
    for (tau, p) in profile.delays().iter().zip(profile.powers()) {
        println!("  tap {:>4.0} ns  weight {p:.4}", tau * 1e9);
    }

    let chan = make_epa_channel(7, fd);
    for t in [0.0, 0.01, 0.05, 0.1] {
        let g = chan.tap_gain(0, t);
        println!("t = {t:>4} s  first tap {:+.3}{:+.3}j", g.re, g.im);
    }

    let params = OfdmParams::default();
    let geometry = ChannelGeometry::new(&profile, &params, SUBFRAME_SUBCARRIERS);
    let h = geometry.response(&chan);
    let mags: Vec<f64> = h.symbol(0).iter().map(|z| z.norm()).collect();
    let (lo, hi) = mags
        .iter()
        .fold((f64::MAX, 0.0f64), |(a, b), &m| (a.min(m), b.max(m)));
    println!("|H| across the band in symbol 0: min {lo:.3}, max {hi:.3}");
    let drift = (h.get(36, 13) - h.get(36, 0)).norm() / h.get(36, 0).norm();
    println!("relative change at the band centre over one subframe: {drift:.2e}");
}
