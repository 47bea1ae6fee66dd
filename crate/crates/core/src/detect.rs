//! Pilot-free receivers.
//!
//! Sequence schemes are detected by correlating the received grid with every
//! codebook entry; correlation is coherent over a span of OFDM symbols and
//! the span magnitudes are combined non-coherently. STS reads the energy of
//! every band subcarrier and hands it to the exhaustive tone-path decoder.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::ResourceGrid;
use crate::scheme::Scheme;
use crate::sts::{StsCodebook, StsConfig, ToneScores};

#[derive(Clone, Debug, PartialEq)]
pub struct DetectionReport {
    pub scheme: Scheme,
    /// Hypotheses with scores, best first.
    pub ranked_hypotheses: Vec<(usize, f64)>,
    /// The `L` best hypotheses.
    pub detected_set: Vec<usize>,
}

impl DetectionReport {
    fn from_ranked(scheme: Scheme, ranked: Vec<(usize, f64)>, l: usize) -> Self {
        let detected_set = ranked.iter().take(l).map(|&(m, _)| m).collect();
        Self {
            scheme,
            ranked_hypotheses: ranked,
            detected_set,
        }
    }

    /// Number of `transmitted` messages missing from the detected set.
    pub fn missed(&self, transmitted: &[usize]) -> usize {
        transmitted
            .iter()
            .filter(|m| !self.detected_set.contains(m))
            .count()
    }
}

/// Rank scores descending with ties to the smaller index.
pub fn rank_scores(scores: &[f64]) -> Vec<(usize, f64)> {
    let mut ranked: Vec<(usize, f64)> = scores.iter().copied().enumerate().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked
}

fn check_dims(rx: &ResourceGrid, candidate: &ResourceGrid) -> Result<()> {
    if rx.dims() != candidate.dims() {
        return Err(Error::DimensionMismatch {
            got: candidate.dims(),
            expected: rx.dims(),
        });
    }
    Ok(())
}

/// Per-symbol non-coherent correlation: for each candidate,
/// `sum_n |<rx_n, cand_n>|^2` over OFDM symbols `n`.
pub fn correlation_scores(rx: &ResourceGrid, codebook: &[ResourceGrid]) -> Result<Vec<f64>> {
    correlation_scores_with_span(rx, codebook, 1)
}

/// Correlation that is coherent over `span` consecutive OFDM symbols and
/// non-coherent across spans. `span = 1` is per-symbol combining; a span
/// covering the whole grid correlates the full sequence at once.
pub fn correlation_scores_with_span(
    rx: &ResourceGrid,
    codebook: &[ResourceGrid],
    span: usize,
) -> Result<Vec<f64>> {
    assert!(span >= 1, "coherent span must be at least one symbol");
    codebook
        .iter()
        .map(|cand| {
            check_dims(rx, cand)?;
            Ok(span_score(
                rx.as_slice(),
                cand.as_slice(),
                rx.num_subcarriers() * span,
            ))
        })
        .collect()
}

fn span_score(rx: &[Complex64], cand: &[Complex64], chunk: usize) -> f64 {
    rx.chunks(chunk)
        .zip(cand.chunks(chunk))
        .map(|(r, c)| {
            r.iter()
                .zip(c)
                .fold(Complex64::new(0.0, 0.0), |acc, (r, c)| acc + r * c.conj())
                .norm_sqr()
        })
        .sum()
}

/// Top-`l` sequence hypotheses by per-symbol correlation score.
pub fn detect_sequences(
    scheme: Scheme,
    rx: &ResourceGrid,
    codebook: &[ResourceGrid],
    l: usize,
) -> Result<DetectionReport> {
    SequenceDetector::new(scheme, codebook.to_vec(), 1)?.detect(rx, l)
}

/// A reusable correlator bank for one codebook.
#[derive(Clone, Debug)]
pub struct SequenceDetector {
    scheme: Scheme,
    codebook: Vec<ResourceGrid>,
    span: usize,
    /// Templates transposed to `[element][candidate]`, real and imaginary
    /// planes, so the inner loop runs over candidates.
    bank_re: Vec<f64>,
    bank_im: Vec<f64>,
    real_templates: bool,
}

impl SequenceDetector {
    pub fn new(scheme: Scheme, codebook: Vec<ResourceGrid>, span: usize) -> Result<Self> {
        if codebook.is_empty() || span == 0 {
            return Err(Error::Config(
                "detector needs a codebook and a span >= 1".into(),
            ));
        }
        let dims = codebook[0].dims();
        if let Some(bad) = codebook.iter().find(|g| g.dims() != dims) {
            return Err(Error::DimensionMismatch {
                got: bad.dims(),
                expected: dims,
            });
        }
        let count = codebook.len();
        let elements = dims.0 * dims.1;
        let mut bank_re = vec![0.0; elements * count];
        let mut bank_im = vec![0.0; elements * count];
        for (c, g) in codebook.iter().enumerate() {
            for (i, z) in g.as_slice().iter().enumerate() {
                bank_re[i * count + c] = z.re;
                bank_im[i * count + c] = z.im;
            }
        }
        let real_templates = bank_im.iter().all(|&v| v == 0.0);
        Ok(Self {
            scheme,
            codebook,
            span,
            bank_re,
            bank_im,
            real_templates,
        })
    }

    pub fn codebook(&self) -> &[ResourceGrid] {
        &self.codebook
    }

    pub fn span(&self) -> usize {
        self.span
    }

    pub fn scores(&self, rx: &ResourceGrid) -> Result<Vec<f64>> {
        check_dims(rx, &self.codebook[0])?;
        #[cfg(target_arch = "x86_64")]
        if std::arch::is_x86_feature_detected!("avx2") {
            // SAFETY: the CPU supports AVX2. The kernel uses plain
            // multiplies and adds, so both paths give identical bits.
            return Ok(unsafe { self.scores_avx2(rx.as_slice(), rx.num_subcarriers()) });
        }
        Ok(self.scores_kernel(rx.as_slice(), rx.num_subcarriers()))
    }

    #[cfg(target_arch = "x86_64")]
    #[target_feature(enable = "avx2")]
    unsafe fn scores_avx2(&self, rx: &[Complex64], subcarriers: usize) -> Vec<f64> {
        self.scores_kernel(rx, subcarriers)
    }

    #[inline(always)]
    fn scores_kernel(&self, rx: &[Complex64], subcarriers: usize) -> Vec<f64> {
        let count = self.codebook.len();
        let chunk = subcarriers * self.span;
        let mut scores = vec![0.0; count];
        let mut acc_re = vec![0.0; count];
        let mut acc_im = vec![0.0; count];
        for (i, z) in rx.iter().enumerate() {
            let (zr, zi) = (z.re, z.im);
            let ar = &mut acc_re[..count];
            let ai = &mut acc_im[..count];
            let tr = &self.bank_re[i * count..(i + 1) * count];
            if self.real_templates {
                for c in 0..count {
                    ar[c] += zr * tr[c];
                    ai[c] += zi * tr[c];
                }
            } else {
                let ti = &self.bank_im[i * count..(i + 1) * count];
                for c in 0..count {
                    ar[c] += zr * tr[c] + zi * ti[c];
                    ai[c] += zi * tr[c] - zr * ti[c];
                }
            }
            if (i + 1) % chunk == 0 || i + 1 == rx.len() {
                for c in 0..count {
                    scores[c] += ar[c] * ar[c] + ai[c] * ai[c];
                    ar[c] = 0.0;
                    ai[c] = 0.0;
                }
            }
        }
        scores
    }

    pub fn detect(&self, rx: &ResourceGrid, l: usize) -> Result<DetectionReport> {
        assert!(
            l >= 1 && l <= self.codebook.len(),
            "L must be in 1..=codebook size"
        );
        let ranked = rank_scores(&self.scores(rx)?);
        Ok(DetectionReport::from_ranked(self.scheme, ranked, l))
    }
}

/// `|rx(offset + s, n)|^2` for every band subcarrier `s < band_width`.
pub fn tone_energy_matrix(
    rx: &ResourceGrid,
    sts_band_offset: usize,
    band_width: usize,
) -> Result<ToneScores> {
    if sts_band_offset + band_width > rx.num_subcarriers() {
        return Err(Error::BandOutOfRange {
            offset: sts_band_offset,
            width: band_width,
            subcarriers: rx.num_subcarriers(),
        });
    }
    let mut scores = ToneScores::zeros(band_width, rx.num_symbols());
    for n in 0..rx.num_symbols() {
        let col = &rx.symbol(n)[sts_band_offset..sts_band_offset + band_width];
        for (s, z) in col.iter().enumerate() {
            scores.set(s, n, z.norm_sqr());
        }
    }
    Ok(scores)
}

/// Tone-energy STS detection of the `l` most likely distinct messages.
pub fn detect_sts(
    rx: &ResourceGrid,
    cfg: &StsConfig,
    sts_band_offset: usize,
    l: usize,
) -> Result<DetectionReport> {
    StsDetector::new(cfg, sts_band_offset)?.detect(rx, l)
}

/// STS receiver with a cached codebook.
#[derive(Clone, Debug)]
pub struct StsDetector {
    codebook: StsCodebook,
    offset: usize,
}

impl StsDetector {
    pub fn new(cfg: &StsConfig, sts_band_offset: usize) -> Result<Self> {
        Ok(Self {
            codebook: StsCodebook::new(cfg)?,
            offset: sts_band_offset,
        })
    }

    pub fn codebook(&self) -> &StsCodebook {
        &self.codebook
    }

    pub fn detect(&self, rx: &ResourceGrid, l: usize) -> Result<DetectionReport> {
        let cfg = self.codebook.config();
        if rx.num_symbols() < cfg.n() {
            return Err(Error::GridTooSmall {
                subcarriers: rx.num_subcarriers(),
                symbols: rx.num_symbols(),
                needed_subcarriers: self.offset + cfg.band_width(),
                needed_symbols: cfg.n(),
            });
        }
        let energy = tone_energy_matrix(rx, self.offset, cfg.band_width())?;
        let ranked = self
            .codebook
            .rank(&energy)
            .into_iter()
            .map(|(m, s)| (m as usize, s))
            .collect();
        Ok(DetectionReport::from_ranked(Scheme::Sts, ranked, l))
    }
}
