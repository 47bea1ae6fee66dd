//! OFDM resource grid and the optional time-domain waveform path.
//!
//! A [`ResourceGrid`] is a subcarrier x OFDM-symbol matrix of complex
//! resource elements. Columns (one OFDM symbol each) are stored
//! contiguously, since most processing works symbol by symbol.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Subcarriers in the signaling region of one subframe.
pub const SUBFRAME_SUBCARRIERS: usize = 73;
/// OFDM symbols per subframe (normal cyclic prefix).
pub const SUBFRAME_SYMBOLS: usize = 14;

#[derive(Clone, Debug, PartialEq)]
pub struct ResourceGrid {
    subcarriers: usize,
    symbols: usize,
    elements: Vec<Complex64>,
}

/// All-zero grid of the given size.
pub fn make_grid(subcarriers: usize, symbols: usize) -> ResourceGrid {
    ResourceGrid::new(subcarriers, symbols)
}

impl ResourceGrid {
    pub fn new(subcarriers: usize, symbols: usize) -> Self {
        assert!(
            subcarriers >= 1 && symbols >= 1,
            "grid dimensions must be >= 1"
        );
        Self {
            subcarriers,
            symbols,
            elements: vec![Complex64::new(0.0, 0.0); subcarriers * symbols],
        }
    }

    /// The 73 x 14 subframe grid.
    pub fn subframe() -> Self {
        Self::new(SUBFRAME_SUBCARRIERS, SUBFRAME_SYMBOLS)
    }

    pub fn num_subcarriers(&self) -> usize {
        self.subcarriers
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.subcarriers, self.symbols)
    }

    fn index(&self, subcarrier: usize, symbol: usize) -> usize {
        assert!(
            subcarrier < self.subcarriers && symbol < self.symbols,
            "resource element ({subcarrier}, {symbol}) outside {}x{} grid",
            self.subcarriers,
            self.symbols
        );
        symbol * self.subcarriers + subcarrier
    }

    pub fn get(&self, subcarrier: usize, symbol: usize) -> Complex64 {
        self.elements[self.index(subcarrier, symbol)]
    }

    pub fn set(&mut self, subcarrier: usize, symbol: usize, value: Complex64) {
        let i = self.index(subcarrier, symbol);
        self.elements[i] = value;
    }

    /// Bounds-checked access returning `None` outside the grid.
    pub fn try_get(&self, subcarrier: usize, symbol: usize) -> Option<Complex64> {
        (subcarrier < self.subcarriers && symbol < self.symbols)
            .then(|| self.elements[symbol * self.subcarriers + subcarrier])
    }

    /// One OFDM symbol, indexed by subcarrier.
    pub fn symbol(&self, symbol: usize) -> &[Complex64] {
        assert!(symbol < self.symbols);
        &self.elements[symbol * self.subcarriers..(symbol + 1) * self.subcarriers]
    }

    pub fn symbol_mut(&mut self, symbol: usize) -> &mut [Complex64] {
        assert!(symbol < self.symbols);
        &mut self.elements[symbol * self.subcarriers..(symbol + 1) * self.subcarriers]
    }

    /// Elements in frequency-first order: all subcarriers of symbol 0, then
    /// symbol 1, and so on.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.elements
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.elements
    }

    pub fn energy(&self) -> f64 {
        self.elements.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn symbol_energy(&self, symbol: usize) -> f64 {
        self.symbol(symbol).iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scale(&mut self, factor: Complex64) {
        self.elements.iter_mut().for_each(|z| *z *= factor);
    }

    /// Element-wise `self += factor * other`.
    pub fn add_scaled(&mut self, other: &ResourceGrid, factor: Complex64) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                got: other.dims(),
                expected: self.dims(),
            });
        }
        for (a, b) in self.elements.iter_mut().zip(&other.elements) {
            *a += factor * b;
        }
        Ok(())
    }

    /// Number of nonzero resource elements.
    pub fn occupied(&self) -> usize {
        self.elements.iter().filter(|z| z.norm_sqr() > 0.0).count()
    }
}

/// Scale every non-empty OFDM symbol to energy `target`; empty symbols stay
/// empty.
pub fn normalize_symbol_energy(grid: &ResourceGrid, target: f64) -> ResourceGrid {
    let mut out = grid.clone();
    for n in 0..out.num_symbols() {
        let e = out.symbol_energy(n);
        if e > 0.0 {
            let k = (target / e).sqrt();
            out.symbol_mut(n).iter_mut().for_each(|z| *z *= k);
        }
    }
    out
}

/// Numerology of the OFDM modulator.
#[derive(Clone, Debug, PartialEq)]
pub struct OfdmParams {
    pub fft_size: usize,
    /// Cyclic-prefix length in samples, one entry per OFDM symbol.
    pub cp_lengths: Vec<usize>,
    pub subcarrier_spacing: f64,
}

/// Longest EPA excess delay; every cyclic prefix must outlast it.
pub const MAX_DELAY_SPREAD_S: f64 = 410e-9;

impl Default for OfdmParams {
    /// 128-point FFT at 15 kHz spacing (1.92 MHz), normal cyclic prefix for
    /// one 14-symbol subframe.
    fn default() -> Self {
        let cp_lengths = (0..SUBFRAME_SYMBOLS)
            .map(|n| if n % 7 == 0 { 10 } else { 9 })
            .collect();
        Self {
            fft_size: 128,
            cp_lengths,
            subcarrier_spacing: 15e3,
        }
    }
}

impl OfdmParams {
    pub fn sample_rate(&self) -> f64 {
        self.fft_size as f64 * self.subcarrier_spacing
    }

    pub fn num_symbols(&self) -> usize {
        self.cp_lengths.len()
    }

    /// Samples in the whole stream, cyclic prefixes included.
    pub fn stream_len(&self) -> usize {
        self.cp_lengths.iter().map(|cp| cp + self.fft_size).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.fft_size == 0 || self.cp_lengths.is_empty() || self.subcarrier_spacing <= 0.0 {
            return Err(Error::Config(
                "OFDM parameters need fft_size > 0, at least one symbol and positive spacing"
                    .into(),
            ));
        }
        let fs = self.sample_rate();
        if let Some(cp) = self
            .cp_lengths
            .iter()
            .find(|&&cp| cp as f64 / fs <= MAX_DELAY_SPREAD_S)
        {
            return Err(Error::Config(format!(
                "cyclic prefix of {cp} samples ({:.1} ns) does not exceed the 410 ns delay spread",
                *cp as f64 / fs * 1e9
            )));
        }
        Ok(())
    }

    /// Centre of the useful (post-prefix) part of symbol `n`, in seconds
    /// from the start of the subframe.
    pub fn symbol_mid_time(&self, n: usize) -> f64 {
        let start: usize = self.cp_lengths[..n]
            .iter()
            .map(|cp| cp + self.fft_size)
            .sum();
        (start + self.cp_lengths[n]) as f64 / self.sample_rate()
            + 0.5 * self.fft_size as f64 / self.sample_rate()
    }

    /// Baseband frequency offset of grid subcarrier `s` when `num_subcarriers`
    /// are centred on DC.
    pub fn subcarrier_offset_hz(&self, s: usize, num_subcarriers: usize) -> f64 {
        (s as f64 - (num_subcarriers / 2) as f64) * self.subcarrier_spacing
    }

    fn fft_bin(&self, s: usize, num_subcarriers: usize) -> usize {
        let k = s as isize - (num_subcarriers / 2) as isize;
        k.rem_euclid(self.fft_size as isize) as usize
    }
}

/// Modulate a grid into a cyclic-prefixed sample stream with a unitary
/// inverse DFT. Subcarriers are centred on DC.
pub fn to_time_domain(grid: &ResourceGrid, p: &OfdmParams) -> Result<Vec<Complex64>> {
    if grid.num_subcarriers() > p.fft_size {
        return Err(Error::GridLargerThanFft {
            subcarriers: grid.num_subcarriers(),
            fft_size: p.fft_size,
        });
    }
    if grid.num_symbols() != p.num_symbols() {
        return Err(Error::DimensionMismatch {
            got: grid.dims(),
            expected: (grid.num_subcarriers(), p.num_symbols()),
        });
    }
    let ifft = FftPlanner::new().plan_fft_inverse(p.fft_size);
    let scale = 1.0 / (p.fft_size as f64).sqrt();
    let mut out = Vec::with_capacity(p.stream_len());
    let mut buf = vec![Complex64::new(0.0, 0.0); p.fft_size];
    for n in 0..grid.num_symbols() {
        buf.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for (s, &x) in grid.symbol(n).iter().enumerate() {
            buf[p.fft_bin(s, grid.num_subcarriers())] = x;
        }
        ifft.process(&mut buf);
        buf.iter_mut().for_each(|z| *z *= scale);
        let cp = p.cp_lengths[n];
        out.extend_from_slice(&buf[p.fft_size - cp..]);
        out.extend_from_slice(&buf);
    }
    Ok(out)
}

/// Demodulate a stream produced by [`to_time_domain`] back to a grid with
/// `num_subcarriers` subcarriers.
pub fn from_time_domain(
    samples: &[Complex64],
    p: &OfdmParams,
    num_subcarriers: usize,
) -> Result<ResourceGrid> {
    if num_subcarriers > p.fft_size {
        return Err(Error::GridLargerThanFft {
            subcarriers: num_subcarriers,
            fft_size: p.fft_size,
        });
    }
    if samples.len() != p.stream_len() {
        return Err(Error::LengthMismatch {
            got: samples.len(),
            expected: p.stream_len(),
        });
    }
    let fft = FftPlanner::new().plan_fft_forward(p.fft_size);
    let scale = 1.0 / (p.fft_size as f64).sqrt();
    let mut grid = ResourceGrid::new(num_subcarriers, p.num_symbols());
    let mut pos = 0;
    let mut buf = vec![Complex64::new(0.0, 0.0); p.fft_size];
    for n in 0..p.num_symbols() {
        pos += p.cp_lengths[n];
        buf.copy_from_slice(&samples[pos..pos + p.fft_size]);
        pos += p.fft_size;
        fft.process(&mut buf);
        let col = grid.symbol_mut(n);
        for (s, x) in col.iter_mut().enumerate() {
            *x = buf[p.fft_bin(s, num_subcarriers)] * scale;
        }
    }
    Ok(grid)
}

/// Write samples as interleaved little-endian `f32` I/Q pairs.
pub fn write_iq_f32le<W: Write>(samples: &[Complex64], mut out: W) -> std::io::Result<()> {
    for z in samples {
        out.write_all(&(z.re as f32).to_le_bytes())?;
        out.write_all(&(z.im as f32).to_le_bytes())?;
    }
    out.flush()
}

/// [`write_iq_f32le`] into a file.
pub fn export_iq_file(samples: &[Complex64], path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io)?;
    write_iq_f32le(samples, std::io::BufWriter::new(file)).map_err(io)
}
