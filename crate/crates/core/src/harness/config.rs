//! Simulation configuration and its flat key/value file format.

use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::channel::{doppler_hz, PowerDelayProfile};
use crate::error::{Error, Result};
use crate::grid::{OfdmParams, SUBFRAME_SUBCARRIERS};
use crate::scheme::Scheme;
use crate::seqgen::SequenceFamily;

/// Default carrier used to turn 3 km/h into a Doppler frequency.
pub const DEFAULT_CARRIER_HZ: f64 = 2.0e9;
pub const DEFAULT_SPEED_KMH: f64 = 3.0;

/// How detection errors are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorMetric {
    /// One Bernoulli trial per transmitted message: an error is a transmitted
    /// message absent from the detected set, which (with the detected-set size
    /// fixed to the true count) is the same event as a detected message that
    /// was never sent.
    Message,
    /// One Bernoulli trial per transmission: an error is any mismatch between
    /// the detected and transmitted sets.
    Set,
}

impl FromStr for ErrorMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "message" => Ok(Self::Message),
            "set" => Ok(Self::Set),
            other => Err(Error::Config(format!("unknown error metric `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StsParams {
    /// Field size S, also the number of STS subcarriers.
    pub subcarriers: u64,
    pub k: usize,
    pub n: usize,
    /// First grid subcarrier of the STS band.
    pub band_offset: usize,
}

impl Default for StsParams {
    fn default() -> Self {
        Self {
            subcarriers: 71,
            k: 1,
            n: 14,
            band_offset: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Epa,
    Flat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChannelParams {
    pub profile: ProfileKind,
    pub doppler_hz: f64,
}

impl ChannelParams {
    pub fn delay_profile(&self) -> PowerDelayProfile {
        match self.profile {
            ProfileKind::Epa => PowerDelayProfile::epa(),
            ProfileKind::Flat => PowerDelayProfile::flat(),
        }
    }
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            profile: ProfileKind::Epa,
            doppler_hz: doppler_hz(DEFAULT_SPEED_KMH, DEFAULT_CARRIER_HZ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub scheme: Scheme,
    pub num_signals: usize,
    pub snr_db_list: Vec<f64>,
    pub trials_per_point: u64,
    pub master_seed: u64,
    pub codebook_size: usize,
    pub sts: StsParams,
    pub channel: ChannelParams,
    pub ofdm: OfdmParams,
    /// Power of the second transmitter relative to the first, in dB.
    pub second_tx_power_db: f64,
    /// OFDM symbols correlated coherently by the sequence receivers.
    pub coherent_span: usize,
    pub error_metric: ErrorMetric,
    pub parallel: bool,
}

/// `start, start+step, ..` up to and including `stop` (within rounding).
pub fn snr_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if step <= 0.0 || stop < start || !start.is_finite() || !stop.is_finite() {
        return Err(Error::Config(format!(
            "bad SNR range {start}..{stop} step {step}"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| {
            let v = start + i as f64 * step;
            // Avoid printing 0.30000000000000004-style artifacts.
            (v * 1e9).round() / 1e9
        })
        .collect())
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            scheme: Scheme::Sts,
            num_signals: 1,
            snr_db_list: snr_range(-10.0, 30.0, 2.0).expect("static range"),
            trials_per_point: 20_000,
            master_seed: 2013,
            codebook_size: 64,
            sts: StsParams::default(),
            channel: ChannelParams::default(),
            ofdm: OfdmParams::default(),
            second_tx_power_db: 0.0,
            coherent_span: 1,
            error_metric: ErrorMetric::Message,
            parallel: true,
        }
    }
}

impl SimConfig {
    pub fn with_scheme(&self, scheme: Scheme) -> Self {
        Self {
            scheme,
            ..self.clone()
        }
    }

    pub fn with_signals(&self, num_signals: usize) -> Self {
        Self {
            num_signals,
            ..self.clone()
        }
    }

    /// Number of distinct messages the scheme can carry.
    pub fn message_count(&self) -> u64 {
        match self.scheme.family() {
            None => self.sts.subcarriers.saturating_pow(self.sts.k as u32),
            Some(_) => self.codebook_size as u64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.trials_per_point == 0 {
            return bad("trials_per_point must be at least 1".into());
        }
        if self.snr_db_list.is_empty() || self.snr_db_list.iter().any(|s| !s.is_finite()) {
            return bad("the SNR list must be non-empty and finite".into());
        }
        if !(1..=2).contains(&self.num_signals) {
            return bad(format!(
                "num_signals must be 1 or 2, got {}",
                self.num_signals
            ));
        }
        if self.coherent_span == 0 || !self.ofdm.num_symbols().is_multiple_of(self.coherent_span) {
            return bad(format!(
                "coherent_span {} must divide the {} OFDM symbols",
                self.coherent_span,
                self.ofdm.num_symbols()
            ));
        }
        if self.channel.doppler_hz < 0.0 || !self.channel.doppler_hz.is_finite() {
            return bad("doppler_hz must be a non-negative number".into());
        }
        self.ofdm.validate()?;
        if SUBFRAME_SUBCARRIERS > self.ofdm.fft_size {
            return Err(Error::GridLargerThanFft {
                subcarriers: SUBFRAME_SUBCARRIERS,
                fft_size: self.ofdm.fft_size,
            });
        }
        match self.scheme.family() {
            None => {
                if self.sts.band_offset + self.sts.subcarriers as usize > SUBFRAME_SUBCARRIERS {
                    return bad(format!(
                        "STS band of {} subcarriers at offset {} does not fit in {}",
                        self.sts.subcarriers, self.sts.band_offset, SUBFRAME_SUBCARRIERS
                    ));
                }
                if self.sts.n > self.ofdm.num_symbols() {
                    return bad(format!(
                        "STS code length {} exceeds the subframe",
                        self.sts.n
                    ));
                }
            }
            Some(family) => {
                let limit = family_limit(family);
                if self.codebook_size < self.num_signals || self.codebook_size > limit {
                    return bad(format!(
                        "codebook_size must be in {}..={limit} for {}",
                        self.num_signals, self.scheme
                    ));
                }
            }
        }
        if self.message_count() < self.num_signals as u64 {
            return bad("not enough distinct messages for the signal count".into());
        }
        Ok(())
    }

    /// Load a config file on top of the defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let mut cfg = Self::default();
        FileConfig::load(path)?.apply(&mut cfg)?;
        Ok(cfg)
    }
}

fn family_limit(family: SequenceFamily) -> usize {
    family.family_size()
}

/// On-disk configuration: flat `key = value` lines (TOML syntax). Every key
/// is optional and overrides the built-in default.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub scheme: Option<String>,
    pub num_signals: Option<usize>,
    pub snr_db_list: Option<Vec<f64>>,
    pub snr_start: Option<f64>,
    pub snr_stop: Option<f64>,
    pub snr_step: Option<f64>,
    pub trials_per_point: Option<u64>,
    pub master_seed: Option<u64>,
    pub codebook_size: Option<usize>,
    pub sts_subcarriers: Option<u64>,
    pub sts_k: Option<usize>,
    pub sts_n: Option<usize>,
    pub sts_band_offset: Option<usize>,
    pub channel_profile: Option<ProfileKind>,
    pub doppler_hz: Option<f64>,
    pub speed_kmh: Option<f64>,
    pub carrier_hz: Option<f64>,
    pub fft_size: Option<usize>,
    pub cp_lengths: Option<Vec<usize>>,
    pub subcarrier_spacing_hz: Option<f64>,
    pub second_tx_power_db: Option<f64>,
    pub coherent_span: Option<usize>,
    pub error_metric: Option<ErrorMetric>,
    pub parallel: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))
    }

    /// Overlay the keys present in the file onto `cfg`.
    pub fn apply(self, cfg: &mut SimConfig) -> Result<()> {
        if let Some(s) = &self.scheme {
            cfg.scheme = s.parse()?;
        }
        set(&mut cfg.num_signals, self.num_signals);
        if let Some(list) = self.snr_db_list {
            cfg.snr_db_list = list;
        }
        if self.snr_start.is_some() || self.snr_stop.is_some() || self.snr_step.is_some() {
            let (lo, hi) = (
                cfg.snr_db_list.first().copied(),
                cfg.snr_db_list.last().copied(),
            );
            let start = self.snr_start.or(lo).unwrap_or(-10.0);
            let stop = self.snr_stop.or(hi).unwrap_or(30.0);
            let step = self.snr_step.unwrap_or(2.0);
            cfg.snr_db_list = snr_range(start, stop, step)?;
        }
        set(&mut cfg.trials_per_point, self.trials_per_point);
        set(&mut cfg.master_seed, self.master_seed);
        set(&mut cfg.codebook_size, self.codebook_size);
        set(&mut cfg.sts.subcarriers, self.sts_subcarriers);
        set(&mut cfg.sts.k, self.sts_k);
        set(&mut cfg.sts.n, self.sts_n);
        set(&mut cfg.sts.band_offset, self.sts_band_offset);
        set(&mut cfg.channel.profile, self.channel_profile);
        if self.speed_kmh.is_some() || self.carrier_hz.is_some() {
            cfg.channel.doppler_hz = doppler_hz(
                self.speed_kmh.unwrap_or(DEFAULT_SPEED_KMH),
                self.carrier_hz.unwrap_or(DEFAULT_CARRIER_HZ),
            );
        }
        set(&mut cfg.channel.doppler_hz, self.doppler_hz);
        set(&mut cfg.ofdm.fft_size, self.fft_size);
        if let Some(cp) = self.cp_lengths {
            cfg.ofdm.cp_lengths = cp;
        }
        set(&mut cfg.ofdm.subcarrier_spacing, self.subcarrier_spacing_hz);
        set(&mut cfg.second_tx_power_db, self.second_tx_power_db);
        set(&mut cfg.coherent_span, self.coherent_span);
        set(&mut cfg.error_metric, self.error_metric);
        set(&mut cfg.parallel, self.parallel);
        Ok(())
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}
