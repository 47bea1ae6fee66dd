//! Seeded Monte Carlo sweeps, configuration and result output.

mod config;
mod engine;
mod output;
mod stats;

pub use config::{
    snr_range, ChannelParams, ErrorMetric, FileConfig, ProfileKind, SimConfig, StsParams,
    DEFAULT_CARRIER_HZ, DEFAULT_SPEED_KMH,
};
pub use engine::{
    run_sweep, run_trial, transmit_grid, trial_rng, trial_seed, Simulation, TrialOutcome,
    SYMBOL_ENERGY,
};
pub use output::{emit_csv, emit_plot, plot_svg, write_csv, CSV_HEADER};
pub use stats::{wilson_interval, Z_95};

use crate::scheme::Scheme;

/// Error statistics at one SNR.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub scheme: Scheme,
    pub num_signals: usize,
    pub snr_db: f64,
    /// Bernoulli trials behind the estimate (transmitted messages or
    /// transmissions, depending on the error metric).
    pub trials: u64,
    pub errors: u64,
    pub error_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn merge(results: impl IntoIterator<Item = SweepResult>) -> Self {
        let mut points: Vec<SweepPoint> = results.into_iter().flat_map(|r| r.points).collect();
        sort_points(&mut points);
        Self { points }
    }

    /// Points ordered by scheme, signal count, then ascending SNR.
    pub fn sorted(&self) -> Vec<&SweepPoint> {
        let mut refs: Vec<&SweepPoint> = self.points.iter().collect();
        refs.sort_by(|a, b| point_key(a).partial_cmp(&point_key(b)).expect("finite SNR"));
        refs
    }

    /// Distinct (scheme, signal count) series, in output order.
    pub fn series(&self) -> Vec<(Scheme, usize)> {
        let mut keys: Vec<(Scheme, usize)> = self
            .points
            .iter()
            .map(|p| (p.scheme, p.num_signals))
            .collect();
        keys.sort();
        keys.dedup();
        keys
    }

    /// One curve, ascending in SNR.
    pub fn curve(&self, scheme: Scheme, num_signals: usize) -> Vec<&SweepPoint> {
        self.sorted()
            .into_iter()
            .filter(|p| p.scheme == scheme && p.num_signals == num_signals)
            .collect()
    }

    /// SNR at which a curve first falls to `target`, interpolating linearly
    /// in log10(error rate) between the bracketing points.
    pub fn snr_at_rate(&self, scheme: Scheme, num_signals: usize, target: f64) -> Option<f64> {
        let curve = self.curve(scheme, num_signals);
        curve.windows(2).find_map(|w| {
            let (a, b) = (w[0], w[1]);
            if a.error_rate > target && b.error_rate <= target {
                if b.error_rate <= 0.0 {
                    return Some(b.snr_db);
                }
                let (la, lb, lt) = (a.error_rate.log10(), b.error_rate.log10(), target.log10());
                Some(a.snr_db + (la - lt) / (la - lb) * (b.snr_db - a.snr_db))
            } else {
                None
            }
        })
    }
}

fn point_key(p: &SweepPoint) -> (Scheme, usize, f64) {
    (p.scheme, p.num_signals, p.snr_db)
}

fn sort_points(points: &mut [SweepPoint]) {
    points.sort_by(|a, b| point_key(a).partial_cmp(&point_key(b)).expect("finite SNR"));
}
