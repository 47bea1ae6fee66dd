//! Tapped-delay-line Rayleigh fading (EPA profile, Clarke Doppler spectrum)
//! applied per resource element, and complex AWGN.
//!
//! Each tap is a sum of sinusoids with random arrival angles and phases, so
//! its gain is approximately complex Gaussian with autocorrelation
//! `J0(2 pi f_d tau)`. With a cyclic prefix longer than the delay spread the
//! channel acts on OFDM as a per-subcarrier multiplication by
//! `H(f, t) = sum_l g_l(t) exp(-j 2 pi f tau_l)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::grid::{OfdmParams, ResourceGrid};

/// Sinusoids per tap. Enough for the envelope to pass a KS test against
/// Rayleigh at 1e5 samples.
pub const SINUSOIDS_PER_TAP: usize = 32;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Maximum Doppler shift for a terminal moving at `speed_kmh` on carrier
/// `carrier_hz`.
pub fn doppler_hz(speed_kmh: f64, carrier_hz: f64) -> f64 {
    speed_kmh / 3.6 * carrier_hz / SPEED_OF_LIGHT
}

/// Tap delays and relative powers. Powers are normalized to unit total.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerDelayProfile {
    delays_s: Vec<f64>,
    powers: Vec<f64>,
}

impl PowerDelayProfile {
    pub fn new(delays_s: &[f64], powers_db: &[f64]) -> Result<Self> {
        if delays_s.is_empty() || delays_s.len() != powers_db.len() {
            return Err(Error::Config(
                "delay profile needs matching non-empty tap lists".into(),
            ));
        }
        if delays_s[0] != 0.0 || delays_s.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(
                "tap delays must start at 0 and strictly increase".into(),
            ));
        }
        let linear: Vec<f64> = powers_db.iter().map(|p| 10f64.powf(p / 10.0)).collect();
        let total: f64 = linear.iter().sum();
        Ok(Self {
            delays_s: delays_s.to_vec(),
            powers: linear.iter().map(|p| p / total).collect(),
        })
    }

    /// Extended Pedestrian A.
    pub fn epa() -> Self {
        Self::new(
            &[0.0, 30e-9, 70e-9, 90e-9, 110e-9, 190e-9, 410e-9],
            &[0.0, -1.0, -2.0, -3.0, -8.0, -17.2, -20.8],
        )
        .expect("EPA profile is well formed")
    }

    /// A single unit-power tap at zero delay (flat fading).
    pub fn flat() -> Self {
        Self::new(&[0.0], &[0.0]).expect("single tap is well formed")
    }

    pub fn num_taps(&self) -> usize {
        self.delays_s.len()
    }

    pub fn delays(&self) -> &[f64] {
        &self.delays_s
    }

    /// Linear tap powers summing to one.
    pub fn powers(&self) -> &[f64] {
        &self.powers
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Sinusoid {
    amplitude: Complex64,
    omega: f64,
}

/// One draw of the fading process: per-tap sinusoid sets, fixed after
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelRealization {
    profile: PowerDelayProfile,
    doppler_hz: f64,
    taps: Vec<Vec<Sinusoid>>,
}

/// EPA realization seeded by `seed`.
pub fn make_epa_channel(seed: u64, doppler_hz: f64) -> ChannelRealization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ChannelRealization::sum_of_sinusoids(PowerDelayProfile::epa(), doppler_hz, &mut rng)
}

impl ChannelRealization {
    pub fn sum_of_sinusoids<R: Rng + ?Sized>(
        profile: PowerDelayProfile,
        doppler_hz: f64,
        rng: &mut R,
    ) -> Self {
        assert!(doppler_hz >= 0.0, "Doppler frequency must be non-negative");
        let taps = profile
            .powers()
            .iter()
            .map(|&p| {
                let a = (p / SINUSOIDS_PER_TAP as f64).sqrt();
                (0..SINUSOIDS_PER_TAP)
                    .map(|_| {
                        let angle: f64 = rng.random_range(0.0..2.0 * PI);
                        let phase: f64 = rng.random_range(0.0..2.0 * PI);
                        Sinusoid {
                            amplitude: Complex64::from_polar(a, phase),
                            omega: 2.0 * PI * doppler_hz * angle.cos(),
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            profile,
            doppler_hz,
            taps,
        }
    }

    /// Time-invariant channel with the given tap gains.
    pub fn fixed(profile: PowerDelayProfile, gains: &[Complex64]) -> Self {
        assert_eq!(profile.num_taps(), gains.len());
        let taps = gains
            .iter()
            .map(|&g| {
                vec![Sinusoid {
                    amplitude: g,
                    omega: 0.0,
                }]
            })
            .collect();
        Self {
            profile,
            doppler_hz: 0.0,
            taps,
        }
    }

    /// Unit flat channel.
    pub fn identity() -> Self {
        Self::fixed(PowerDelayProfile::flat(), &[Complex64::new(1.0, 0.0)])
    }

    pub fn profile(&self) -> &PowerDelayProfile {
        &self.profile
    }

    pub fn doppler_hz(&self) -> f64 {
        self.doppler_hz
    }

    pub fn tap_gain(&self, tap: usize, t: f64) -> Complex64 {
        self.taps[tap]
            .iter()
            .map(|s| s.amplitude * Complex64::from_polar(1.0, s.omega * t))
            .sum()
    }

    pub fn tap_gains(&self, t: f64) -> Vec<Complex64> {
        (0..self.taps.len()).map(|l| self.tap_gain(l, t)).collect()
    }

    /// Tap gains at every time of `schedule`, as `[time][tap]`. Each
    /// sinusoid is advanced by phase rotation instead of being re-evaluated.
    pub fn tap_gains_on(&self, schedule: &TimeSchedule) -> Vec<Vec<Complex64>> {
        let mut out = vec![vec![Complex64::new(0.0, 0.0); self.taps.len()]; schedule.len()];
        let mut rotators = vec![Complex64::new(0.0, 0.0); schedule.steps.len()];
        for (l, tap) in self.taps.iter().enumerate() {
            for s in tap {
                for (r, &dt) in rotators.iter_mut().zip(&schedule.steps) {
                    *r = Complex64::from_polar(1.0, s.omega * dt);
                }
                let mut z = s.amplitude * Complex64::from_polar(1.0, s.omega * schedule.start);
                out[0][l] += z;
                for (n, &k) in schedule.step_of.iter().enumerate() {
                    z *= rotators[k];
                    out[n + 1][l] += z;
                }
            }
        }
        out
    }

    /// `H(f, t)` for baseband frequency offset `f_offset`.
    pub fn freq_response(&self, t: f64, f_offset: f64) -> Complex64 {
        self.profile
            .delays()
            .iter()
            .enumerate()
            .map(|(l, &tau)| {
                self.tap_gain(l, t) * Complex64::from_polar(1.0, -2.0 * PI * f_offset * tau)
            })
            .sum()
    }
}

pub fn freq_response(chan: &ChannelRealization, t: f64, f_offset: f64) -> Complex64 {
    chan.freq_response(t, f_offset)
}

/// Sample times `t_0 < t_1 < ..` stored as a start time and an index into a
/// short list of distinct increments.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSchedule {
    start: f64,
    steps: Vec<f64>,
    step_of: Vec<usize>,
}

impl TimeSchedule {
    pub fn new(times: &[f64]) -> Self {
        assert!(!times.is_empty(), "schedule needs at least one time");
        let mut steps: Vec<f64> = Vec::new();
        let step_of = times
            .windows(2)
            .map(|w| {
                let dt = w[1] - w[0];
                match steps.iter().position(|&s| (s - dt).abs() <= 1e-15) {
                    Some(i) => i,
                    None => {
                        steps.push(dt);
                        steps.len() - 1
                    }
                }
            })
            .collect();
        Self {
            start: times[0],
            steps,
            step_of,
        }
    }

    pub fn len(&self) -> usize {
        self.step_of.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Precomputed per-subcarrier tap phasors and symbol times for one grid
/// layout, so that many realizations can be applied cheaply.
#[derive(Clone, Debug)]
pub struct ChannelGeometry {
    subcarriers: usize,
    symbols: usize,
    schedule: TimeSchedule,
    /// `[subcarrier][tap]`, flattened.
    steering: Vec<Complex64>,
    /// `[tap][subcarrier]`, split into real and imaginary planes.
    steering_re: Vec<f64>,
    steering_im: Vec<f64>,
    taps: usize,
}

impl ChannelGeometry {
    pub fn new(profile: &PowerDelayProfile, params: &OfdmParams, subcarriers: usize) -> Self {
        let taps = profile.num_taps();
        let mut steering = Vec::with_capacity(subcarriers * taps);
        for s in 0..subcarriers {
            let f = params.subcarrier_offset_hz(s, subcarriers);
            steering.extend(
                profile
                    .delays()
                    .iter()
                    .map(|tau| Complex64::from_polar(1.0, -2.0 * PI * f * tau)),
            );
        }
        let mut steering_re = vec![0.0; subcarriers * taps];
        let mut steering_im = vec![0.0; subcarriers * taps];
        for s in 0..subcarriers {
            for l in 0..taps {
                let e = steering[s * taps + l];
                steering_re[l * subcarriers + s] = e.re;
                steering_im[l * subcarriers + s] = e.im;
            }
        }
        let times: Vec<f64> = (0..params.num_symbols())
            .map(|n| params.symbol_mid_time(n))
            .collect();
        Self {
            subcarriers,
            symbols: times.len(),
            schedule: TimeSchedule::new(&times),
            steering,
            steering_re,
            steering_im,
            taps,
        }
    }

    /// Frequency response of every resource element.
    pub fn response(&self, chan: &ChannelRealization) -> ResourceGrid {
        assert_eq!(
            chan.profile().num_taps(),
            self.taps,
            "profile/geometry mismatch"
        );
        let mut h = ResourceGrid::new(self.subcarriers, self.symbols);
        for (n, gains) in chan.tap_gains_on(&self.schedule).iter().enumerate() {
            for (s, z) in h.symbol_mut(n).iter_mut().enumerate() {
                let row = &self.steering[s * self.taps..(s + 1) * self.taps];
                *z = row.iter().zip(gains).map(|(e, g)| e * g).sum();
            }
        }
        h
    }

    /// `out += gain * H .* grid` with `H` the response of `chan`. The
    /// response is only evaluated where `grid` is nonzero.
    pub fn accumulate(
        &self,
        grid: &ResourceGrid,
        chan: &ChannelRealization,
        gain: f64,
        out: &mut ResourceGrid,
    ) -> Result<()> {
        let expected = (self.subcarriers, self.symbols);
        if grid.dims() != expected || out.dims() != expected {
            return Err(Error::DimensionMismatch {
                got: grid.dims(),
                expected,
            });
        }
        assert_eq!(
            chan.profile().num_taps(),
            self.taps,
            "profile/geometry mismatch"
        );
        let m = self.subcarriers;
        let mut h_re = vec![0.0; m];
        let mut h_im = vec![0.0; m];
        for (n, gains) in chan.tap_gains_on(&self.schedule).iter().enumerate() {
            let x = grid.symbol(n);
            let o = out.symbol_mut(n);
            let occupied = x.iter().filter(|x| x.re != 0.0 || x.im != 0.0).count();
            if occupied * 4 < m {
                for (s, (o, x)) in o.iter_mut().zip(x).enumerate() {
                    if x.re == 0.0 && x.im == 0.0 {
                        continue;
                    }
                    let row = &self.steering[s * self.taps..(s + 1) * self.taps];
                    let h: Complex64 = row.iter().zip(gains).map(|(e, g)| e * g).sum();
                    *o += x * h * gain;
                }
                continue;
            }
            h_re.fill(0.0);
            h_im.fill(0.0);
            for (l, g) in gains.iter().enumerate() {
                let er = &self.steering_re[l * m..(l + 1) * m];
                let ei = &self.steering_im[l * m..(l + 1) * m];
                let (gr, gi) = (g.re * gain, g.im * gain);
                for s in 0..m {
                    h_re[s] += er[s] * gr - ei[s] * gi;
                    h_im[s] += er[s] * gi + ei[s] * gr;
                }
            }
            for s in 0..m {
                o[s] += x[s] * Complex64::new(h_re[s], h_im[s]);
            }
        }
        Ok(())
    }

    pub fn apply(&self, grid: &ResourceGrid, chan: &ChannelRealization) -> Result<ResourceGrid> {
        let mut out = ResourceGrid::new(grid.num_subcarriers(), grid.num_symbols());
        self.accumulate(grid, chan, 1.0, &mut out)?;
        Ok(out)
    }
}

/// Multiply each resource element by the channel response at its symbol's
/// mid-time and its subcarrier's frequency.
pub fn apply_channel(
    grid: &ResourceGrid,
    chan: &ChannelRealization,
    params: &OfdmParams,
) -> Result<ResourceGrid> {
    if grid.num_symbols() != params.num_symbols() {
        return Err(Error::DimensionMismatch {
            got: grid.dims(),
            expected: (grid.num_subcarriers(), params.num_symbols()),
        });
    }
    ChannelGeometry::new(chan.profile(), params, grid.num_subcarriers()).apply(grid, chan)
}

/// Per-element noise variance for an OFDM-symbol SNR given the transmitted
/// energy per symbol.
pub fn noise_variance(snr_db: f64, e_symbol: f64) -> f64 {
    e_symbol / 10f64.powf(snr_db / 10.0)
}

/// Add circularly-symmetric complex Gaussian noise of variance
/// `e_symbol / 10^(snr_db/10)` per element.
pub fn add_awgn<R: Rng + ?Sized>(
    grid: &ResourceGrid,
    snr_db: f64,
    e_symbol: f64,
    rng: &mut R,
) -> ResourceGrid {
    let mut out = grid.clone();
    add_awgn_in_place(&mut out, snr_db, e_symbol, rng);
    out
}

pub fn add_awgn_in_place<R: Rng + ?Sized>(
    grid: &mut ResourceGrid,
    snr_db: f64,
    e_symbol: f64,
    rng: &mut R,
) {
    assert!(e_symbol > 0.0, "symbol energy must be positive");
    let sigma = (noise_variance(snr_db, e_symbol) / 2.0).sqrt();
    for z in grid.as_mut_slice() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *z += Complex64::new(re, im) * sigma;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epa_profile() {
        let p = PowerDelayProfile::epa();
        assert_eq!(p.num_taps(), 7);
        assert!((p.powers().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(p.delays().windows(2).all(|w| w[1] > w[0]));
        assert!(PowerDelayProfile::new(&[0.0, 0.0], &[0.0, 0.0]).is_err());
        assert!(PowerDelayProfile::new(&[1e-9], &[0.0]).is_err());
    }

    #[test]
    fn doppler_at_three_kmh() {
        let fd = doppler_hz(3.0, 2.0e9);
        assert!((fd - 5.56).abs() < 0.01);
    }

    #[test]
    fn realizations_are_seeded() {
        let a = make_epa_channel(7, 5.56);
        let b = make_epa_channel(7, 5.56);
        let c = make_epa_channel(8, 5.56);
        for t in [0.0, 1e-3, 0.25] {
            assert_eq!(a.tap_gains(t), b.tap_gains(t));
        }
        assert_ne!(a.tap_gains(0.0), c.tap_gains(0.0));
    }

    #[test]
    fn zero_doppler_is_static() {
        let ch = make_epa_channel(3, 0.0);
        assert_eq!(ch.tap_gains(0.0), ch.tap_gains(10.0));
    }

    #[test]
    fn flat_and_two_ray_responses() {
        let g = Complex64::new(0.3, -0.8);
        let flat = ChannelRealization::fixed(PowerDelayProfile::flat(), &[g]);
        for k in -36..=36 {
            assert!((flat.freq_response(0.0, k as f64 * 15e3) - g).norm() < 1e-15);
        }
        let spacing = 15e3;
        let two = ChannelRealization::fixed(
            PowerDelayProfile::new(&[0.0, 1.0 / (2.0 * spacing)], &[0.0, 0.0]).unwrap(),
            &[g, g],
        );
        for k in -10i32..=10 {
            let h = two.freq_response(0.0, k as f64 * spacing);
            if k % 2 != 0 {
                assert!(h.norm() < 1e-12);
            } else {
                assert!((h - 2.0 * g).norm() < 1e-12);
            }
        }
        let ch = make_epa_channel(1, 5.56);
        assert_eq!(ch.freq_response(1e-4, 3e4), ch.freq_response(1e-4, 3e4));
    }

    #[test]
    fn identity_channel_passes_grid_through() {
        let p = OfdmParams::default();
        let mut g = ResourceGrid::subframe();
        g.set(4, 2, Complex64::new(1.0, 2.0));
        let out = apply_channel(&g, &ChannelRealization::identity(), &p).unwrap();
        assert_eq!(out, g);
        let zero = ResourceGrid::subframe();
        assert_eq!(
            apply_channel(&zero, &make_epa_channel(2, 5.56), &p)
                .unwrap()
                .energy(),
            0.0
        );
    }

    #[test]
    fn scheduled_gains_match_direct_evaluation() {
        let p = OfdmParams::default();
        let times: Vec<f64> = (0..14).map(|n| p.symbol_mid_time(n)).collect();
        let sched = TimeSchedule::new(&times);
        assert_eq!(sched.len(), 14);
        let ch = make_epa_channel(4, 300.0);
        for (n, g) in ch.tap_gains_on(&sched).iter().enumerate() {
            for (a, b) in g.iter().zip(ch.tap_gains(times[n])) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn awgn_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut g = ResourceGrid::new(4, 2);
        g.set(1, 1, Complex64::new(1.0, 0.0));
        let out = add_awgn(&g, 400.0, 1.0, &mut rng);
        for (a, b) in out.as_slice().iter().zip(g.as_slice()) {
            assert!((a - b).norm() < 1e-15);
        }
        assert_eq!(noise_variance(10.0, 2.0), 0.2);
    }
}
