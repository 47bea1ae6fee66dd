//! Single-tone signaling (STS).
//!
//! A message `M < S^K` is written in base S as `u_1..u_K` (least
//! significant first), padded as `[0, u_1, .., u_K, 0, ..]` and multiplied by
//! the N x N Vandermonde matrix `G[m][n] = beta^(m n)` over GF(S), with
//! `beta = alpha^((S-1)/N)`. Code symbol `c_n` selects the single energized
//! subcarrier of OFDM symbol `n`, so `c_n = p(beta^n)` with
//! `p(x) = sum_k u_k x^k`. Because `p` has no constant term and degree at
//! most K, two distinct messages agree in at most K of the N positions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gf::{GfElement, GfField};
use crate::grid::ResourceGrid;

#[derive(Clone, Debug, PartialEq)]
pub struct StsConfig {
    field: GfField,
    k: usize,
    n: usize,
    beta: GfElement,
    generator: Vec<Vec<GfElement>>,
}

/// A message and its base-S digits `u_1..u_K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StsMessage {
    pub value: u64,
    pub symbols: Vec<GfElement>,
}

/// Code symbols `c_1..c_N`: the energized subcarrier of each OFDM symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StsCodeword {
    pub symbols: Vec<GfElement>,
}

impl StsCodeword {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Subcarrier index (within the STS band) of each OFDM symbol.
    pub fn tones(&self) -> impl Iterator<Item = usize> + '_ {
        self.symbols.iter().map(|c| c.value() as usize)
    }

    pub fn hamming_distance(&self, other: &StsCodeword) -> usize {
        self.symbols
            .iter()
            .zip(&other.symbols)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl StsConfig {
    pub fn new(field: GfField, k: usize, n: usize) -> Result<Self> {
        let order = field.group_order();
        let incompatible = Error::IncompatibleRate { n, k, order };
        if k == 0 || n < k || n as u64 > order || !order.is_multiple_of(n as u64) {
            return Err(incompatible);
        }
        field.modulus().checked_pow(k as u32).ok_or_else(|| {
            Error::Config(format!("S^K overflows for S={}, K={k}", field.modulus()))
        })?;
        let beta = field.alpha().pow(order / n as u64);
        debug_assert_eq!(beta.mult_order().unwrap(), n as u64);
        let generator = (0..n)
            .map(|m| (0..n).map(|c| beta.pow((m * c) as u64)).collect())
            .collect();
        Ok(Self {
            field,
            k,
            n,
            beta,
            generator,
        })
    }

    /// 71 subcarriers, rate 1/14.
    pub fn standard() -> Self {
        Self::new(GfField::new(71).expect("71 is prime"), 1, 14).expect("14 divides 70")
    }

    pub fn field(&self) -> GfField {
        self.field
    }

    /// Number of subcarriers in the STS band (the field size S).
    pub fn band_width(&self) -> usize {
        self.field.modulus() as usize
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> GfElement {
        self.beta
    }

    /// Number of distinct messages, S^K.
    pub fn message_count(&self) -> u64 {
        self.field.modulus().pow(self.k as u32)
    }

    /// The generator matrix, row-major.
    pub fn generator(&self) -> &[Vec<GfElement>] {
        &self.generator
    }
}

/// Base-S digits of `message`, least significant first.
pub fn digits_from_message(message: u64, cfg: &StsConfig) -> Result<StsMessage> {
    let limit = cfg.message_count();
    if message >= limit {
        return Err(Error::MessageOutOfRange { message, limit });
    }
    let s = cfg.field.modulus();
    let mut rest = message;
    let symbols = (0..cfg.k)
        .map(|_| {
            let d = rest % s;
            rest /= s;
            cfg.field.element(d)
        })
        .collect();
    Ok(StsMessage {
        value: message,
        symbols,
    })
}

/// Inverse of [`digits_from_message`].
pub fn message_from_digits(symbols: &[GfElement], cfg: &StsConfig) -> u64 {
    let s = cfg.field.modulus();
    symbols.iter().rev().fold(0, |acc, u| acc * s + u.value())
}

/// The N x N matrix `G[m][n] = beta^(m n)`.
pub fn build_generator(cfg: &StsConfig) -> Vec<Vec<GfElement>> {
    cfg.generator.clone()
}

/// `c = G [0, u_1, .., u_K, 0, ..]^T`.
pub fn sts_encode(msg: &StsMessage, cfg: &StsConfig) -> StsCodeword {
    assert_eq!(
        msg.symbols.len(),
        cfg.k,
        "message has the wrong number of digits"
    );
    let zero = cfg.field.zero();
    let symbols = cfg
        .generator
        .iter()
        .map(|row| {
            msg.symbols
                .iter()
                .enumerate()
                .fold(zero, |acc, (k, &u)| acc + row[k + 1] * u)
        })
        .collect();
    StsCodeword { symbols }
}

/// Energize subcarrier `offset + c_n` of symbol `n` with a real, unmodulated
/// tone of the given amplitude.
pub fn map_to_grid(
    codeword: &StsCodeword,
    grid: &ResourceGrid,
    subcarrier_offset: usize,
    band_width: usize,
    amplitude: f64,
) -> Result<ResourceGrid> {
    if grid.num_symbols() < codeword.len()
        || grid.num_subcarriers() < subcarrier_offset + band_width
    {
        return Err(Error::GridTooSmall {
            subcarriers: grid.num_subcarriers(),
            symbols: grid.num_symbols(),
            needed_subcarriers: subcarrier_offset + band_width,
            needed_symbols: codeword.len(),
        });
    }
    let mut out = grid.clone();
    for (n, tone) in codeword.tones().enumerate() {
        out.set(subcarrier_offset + tone, n, Complex64::new(amplitude, 0.0));
    }
    Ok(out)
}

/// Non-negative received energy per (band subcarrier, OFDM symbol).
#[derive(Clone, Debug, PartialEq)]
pub struct ToneScores {
    band_width: usize,
    symbols: usize,
    data: Vec<f64>,
}

impl ToneScores {
    pub fn zeros(band_width: usize, symbols: usize) -> Self {
        Self {
            band_width,
            symbols,
            data: vec![0.0; band_width * symbols],
        }
    }

    pub fn band_width(&self) -> usize {
        self.band_width
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols
    }

    pub fn get(&self, subcarrier: usize, symbol: usize) -> f64 {
        self.data[symbol * self.band_width + subcarrier]
    }

    pub fn set(&mut self, subcarrier: usize, symbol: usize, value: f64) {
        self.data[symbol * self.band_width + subcarrier] = value;
    }

    pub fn add(&mut self, subcarrier: usize, symbol: usize, value: f64) {
        self.data[symbol * self.band_width + subcarrier] += value;
    }

    /// Energy collected along a codeword's tone path.
    pub fn path_score(&self, codeword: &[usize]) -> f64 {
        codeword
            .iter()
            .enumerate()
            .map(|(n, &s)| self.data[n * self.band_width + s])
            .sum()
    }
}

/// Every codeword of a configuration, indexed by message value. Used when the
/// same code is decoded many times.
#[derive(Clone, Debug)]
pub struct StsCodebook {
    cfg: StsConfig,
    tones: Vec<Vec<usize>>,
}

/// Candidate budget for exhaustive decoding.
pub const MAX_DECODER_CANDIDATES: u64 = 1 << 22;

impl StsCodebook {
    pub fn new(cfg: &StsConfig) -> Result<Self> {
        let count = cfg.message_count();
        if count > MAX_DECODER_CANDIDATES {
            return Err(Error::Config(format!(
                "{count} STS messages exceed the exhaustive decoder budget"
            )));
        }
        let tones = (0..count)
            .map(|m| {
                let msg = digits_from_message(m, cfg).expect("m < S^K");
                sts_encode(&msg, cfg).tones().collect()
            })
            .collect();
        Ok(Self {
            cfg: cfg.clone(),
            tones,
        })
    }

    pub fn config(&self) -> &StsConfig {
        &self.cfg
    }

    pub fn len(&self) -> usize {
        self.tones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tones.is_empty()
    }

    pub fn tones(&self, message: u64) -> &[usize] {
        &self.tones[message as usize]
    }

    /// All messages ranked by path score, highest first; ties go to the
    /// smaller message.
    pub fn rank(&self, scores: &ToneScores) -> Vec<(u64, f64)> {
        let mut ranked: Vec<(u64, f64)> = self
            .tones
            .iter()
            .enumerate()
            .map(|(m, path)| (m as u64, scores.path_score(path)))
            .collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        ranked
    }

    /// The `l` best distinct messages.
    pub fn decode(&self, scores: &ToneScores, l: usize) -> Vec<(u64, f64)> {
        let mut ranked = self.rank(scores);
        ranked.truncate(l);
        ranked
    }
}

/// Exhaustive soft decoding: score every one of the S^K candidate codewords
/// by the energy along its tone path and return the `l` best.
pub fn sts_decode(scores: &ToneScores, cfg: &StsConfig, l: usize) -> Result<Vec<StsMessage>> {
    let book = StsCodebook::new(cfg)?;
    book.decode(scores, l)
        .into_iter()
        .map(|(m, _)| digits_from_message(m, cfg))
        .collect()
}
