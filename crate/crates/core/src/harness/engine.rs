//! Monte Carlo engine.
//!
//! Every trial owns a ChaCha stream whose 256-bit seed is the tuple
//! (master seed, scheme, signal count, SNR index, trial index), so results
//! do not depend on how trials are scheduled across threads.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::{add_awgn_in_place, ChannelGeometry, ChannelRealization, PowerDelayProfile};
use crate::detect::{DetectionReport, SequenceDetector, StsDetector};
use crate::error::{Error, Result};
use crate::gf::GfField;
use crate::grid::{normalize_symbol_energy, ResourceGrid};
use crate::seqgen::map_sequence_to_grid;
use crate::sts::{digits_from_message, map_to_grid, sts_encode, StsConfig};

use super::config::{ErrorMetric, SimConfig};
use super::stats::{wilson_interval, Z_95};
use super::SweepPoint;
use super::SweepResult;

/// Transmit energy per OFDM symbol for every scheme.
pub const SYMBOL_ENERGY: f64 = 1.0;

/// Seed of the RNG stream for one trial.
pub fn trial_seed(cfg: &SimConfig, snr_index: usize, trial: u64) -> [u8; 32] {
    let mut seed = [0u8; 32];
    seed[..8].copy_from_slice(&cfg.master_seed.to_le_bytes());
    seed[8] = cfg.scheme.id();
    seed[9] = cfg.num_signals as u8;
    seed[12..16].copy_from_slice(&(snr_index as u32).to_le_bytes());
    seed[16..24].copy_from_slice(&trial.to_le_bytes());
    seed
}

pub fn trial_rng(cfg: &SimConfig, snr_index: usize, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(trial_seed(cfg, snr_index, trial))
}

enum Receiver {
    Sts(StsDetector),
    Sequence(SequenceDetector),
}

/// What happened in one trial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialOutcome {
    pub transmitted: Vec<usize>,
    pub report: DetectionReport,
}

impl TrialOutcome {
    pub fn missed(&self) -> usize {
        self.report.missed(&self.transmitted)
    }

    /// Detected set differs from the transmitted set.
    pub fn is_error(&self) -> bool {
        self.missed() > 0
    }
}

/// Everything that stays fixed across the trials of a sweep: per-message
/// transmit grids, the receiver and the channel geometry.
pub struct Simulation {
    cfg: SimConfig,
    tx_grids: Vec<ResourceGrid>,
    receiver: Receiver,
    profile: PowerDelayProfile,
    geometry: ChannelGeometry,
}

impl Simulation {
    pub fn new(cfg: &SimConfig) -> Result<Self> {
        cfg.validate()?;
        let blank = ResourceGrid::subframe();
        let (tx_grids, receiver) = match cfg.scheme.family() {
            None => {
                let field = GfField::new(cfg.sts.subcarriers)?;
                let sts = StsConfig::new(field, cfg.sts.k, cfg.sts.n)?;
                let detector = StsDetector::new(&sts, cfg.sts.band_offset)?;
                let grids = (0..sts.message_count())
                    .map(|m| {
                        let cw = sts_encode(&digits_from_message(m, &sts)?, &sts);
                        let g =
                            map_to_grid(&cw, &blank, cfg.sts.band_offset, sts.band_width(), 1.0)?;
                        Ok(normalize_symbol_energy(&g, SYMBOL_ENERGY))
                    })
                    .collect::<Result<Vec<_>>>()?;
                (grids, Receiver::Sts(detector))
            }
            Some(family) => {
                let grids = (0..cfg.codebook_size)
                    .map(|m| {
                        let seq = family.signature(m)?;
                        Ok(normalize_symbol_energy(
                            &map_sequence_to_grid(&seq, &blank, 1.0),
                            SYMBOL_ENERGY,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let detector = SequenceDetector::new(cfg.scheme, grids.clone(), cfg.coherent_span)?;
                (grids, Receiver::Sequence(detector))
            }
        };
        let profile = cfg.channel.delay_profile();
        let geometry = ChannelGeometry::new(&profile, &cfg.ofdm, blank.num_subcarriers());
        Ok(Self {
            cfg: cfg.clone(),
            tx_grids,
            receiver,
            profile,
            geometry,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    /// Transmit grid for `message`, normalized to unit energy per symbol.
    pub fn tx_grid(&self, message: usize) -> &ResourceGrid {
        &self.tx_grids[message]
    }

    pub fn message_count(&self) -> usize {
        self.tx_grids.len()
    }

    /// Received grid and transmitted messages for one trial, before detection.
    pub fn receive<R: Rng + ?Sized>(&self, snr_db: f64, rng: &mut R) -> (Vec<usize>, ResourceGrid) {
        let transmitted = sample(rng, self.tx_grids.len(), self.cfg.num_signals).into_vec();
        let mut rx = ResourceGrid::subframe();
        for (i, &m) in transmitted.iter().enumerate() {
            let chan = ChannelRealization::sum_of_sinusoids(
                self.profile.clone(),
                self.cfg.channel.doppler_hz,
                rng,
            );
            let gain = if i == 0 {
                1.0
            } else {
                10f64.powf(self.cfg.second_tx_power_db / 20.0)
            };
            self.geometry
                .accumulate(&self.tx_grids[m], &chan, gain, &mut rx)
                .expect("grids share the subframe layout");
        }
        add_awgn_in_place(&mut rx, snr_db, SYMBOL_ENERGY, rng);
        (transmitted, rx)
    }

    pub fn detect(&self, rx: &ResourceGrid) -> DetectionReport {
        let l = self.cfg.num_signals;
        match &self.receiver {
            Receiver::Sts(d) => d.detect(rx, l),
            Receiver::Sequence(d) => d.detect(rx, l),
        }
        .expect("receiver matches the subframe layout")
    }

    pub fn run_trial<R: Rng + ?Sized>(&self, snr_db: f64, rng: &mut R) -> TrialOutcome {
        let (transmitted, rx) = self.receive(snr_db, rng);
        let report = self.detect(&rx);
        TrialOutcome {
            transmitted,
            report,
        }
    }

    fn point(&self, snr_index: usize) -> SweepPoint {
        let snr_db = self.cfg.snr_db_list[snr_index];
        let outcome = |t: u64| {
            let mut rng = trial_rng(&self.cfg, snr_index, t);
            self.run_trial(snr_db, &mut rng).missed() as u64
        };
        let trials = 0..self.cfg.trials_per_point;
        let (missed_total, error_trials) = if self.cfg.parallel {
            trials
                .into_par_iter()
                .map(outcome)
                .map(|m| (m, u64::from(m > 0)))
                .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
        } else {
            trials
                .map(outcome)
                .fold((0, 0), |a, m| (a.0 + m, a.1 + u64::from(m > 0)))
        };
        let (bernoulli, errors) = match self.cfg.error_metric {
            ErrorMetric::Message => (
                self.cfg.trials_per_point * self.cfg.num_signals as u64,
                missed_total,
            ),
            ErrorMetric::Set => (self.cfg.trials_per_point, error_trials),
        };
        SweepPoint::new(
            self.cfg.scheme,
            self.cfg.num_signals,
            snr_db,
            bernoulli,
            errors,
        )
    }

    pub fn run_sweep(&self) -> SweepResult {
        let points = (0..self.cfg.snr_db_list.len())
            .map(|i| self.point(i))
            .collect();
        SweepResult { points }
    }
}

/// One trial with an explicit RNG. Returns whether the detected set differs
/// from the transmitted one.
pub fn run_trial<R: Rng + ?Sized>(cfg: &SimConfig, snr_db: f64, rng: &mut R) -> Result<bool> {
    Ok(Simulation::new(cfg)?.run_trial(snr_db, rng).is_error())
}

pub fn run_sweep(cfg: &SimConfig) -> Result<SweepResult> {
    Ok(Simulation::new(cfg)?.run_sweep())
}

impl SweepPoint {
    pub fn new(
        scheme: crate::scheme::Scheme,
        num_signals: usize,
        snr_db: f64,
        trials: u64,
        errors: u64,
    ) -> Self {
        let (ci_low, ci_high) = wilson_interval(errors, trials, Z_95);
        Self {
            scheme,
            num_signals,
            snr_db,
            trials,
            errors,
            error_rate: errors as f64 / trials as f64,
            ci_low,
            ci_high,
        }
    }
}

/// Transmit grid of `message` for a config, scaled like the engine does.
pub fn transmit_grid(cfg: &SimConfig, message: usize) -> Result<ResourceGrid> {
    let sim = Simulation::new(cfg)?;
    if message >= sim.message_count() {
        return Err(Error::MessageOutOfRange {
            message: message as u64,
            limit: sim.message_count() as u64,
        });
    }
    Ok(sim.tx_grid(message).clone())
}
