//! Baseline signature sequences: Walsh (1024), Gold (1023) and
//! Zadoff-Chu (1021), plus frequency-first mapping onto a resource grid.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::ResourceGrid;

pub const WALSH_LEN: usize = 1024;
pub const GOLD_LEN: usize = 1023;
pub const ZC_LEN: usize = 1021;
const GOLD_DEGREE: usize = 10;
/// 1023 relative shifts plus the two parent m-sequences.
pub const GOLD_FAMILY_SIZE: usize = GOLD_LEN + 2;

/// Recurrence taps (besides `a[k]`) of x^10 + x^3 + 1.
const GOLD_TAPS_A: &[usize] = &[3];
/// Recurrence taps of x^10 + x^8 + x^3 + x^2 + 1.
const GOLD_TAPS_B: &[usize] = &[2, 3, 8];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceFamily {
    Walsh,
    Gold,
    ZadoffChu,
}

impl SequenceFamily {
    pub fn length(self) -> usize {
        match self {
            Self::Walsh => WALSH_LEN,
            Self::Gold => GOLD_LEN,
            Self::ZadoffChu => ZC_LEN,
        }
    }

    /// Number of distinct signatures the family offers.
    pub fn family_size(self) -> usize {
        match self {
            Self::Walsh => WALSH_LEN,
            Self::Gold => GOLD_FAMILY_SIZE,
            Self::ZadoffChu => ZC_LEN - 1,
        }
    }

    /// Signature for codebook entry `message`; Zadoff-Chu roots start at 1.
    pub fn signature(self, message: usize) -> Result<SignatureSequence> {
        match self {
            Self::Walsh => walsh(message),
            Self::Gold => gold(message),
            Self::ZadoffChu => zadoff_chu(message + 1),
        }
    }
}

impl fmt::Display for SequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Walsh => "walsh",
            Self::Gold => "gold",
            Self::ZadoffChu => "zc",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignatureSequence {
    pub family: SequenceFamily,
    pub index: usize,
    pub chips: Vec<Complex64>,
}

impl SignatureSequence {
    pub fn len(&self) -> usize {
        self.chips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }
}

fn antipodal(bit: bool) -> Complex64 {
    Complex64::new(if bit { -1.0 } else { 1.0 }, 0.0)
}

/// Row `index` of the Sylvester-ordered Hadamard matrix of order 1024.
pub fn walsh(index: usize) -> Result<SignatureSequence> {
    if index >= WALSH_LEN {
        return Err(Error::IndexOutOfRange {
            kind: "Walsh",
            index,
            limit: WALSH_LEN,
        });
    }
    let chips = (0..WALSH_LEN)
        .map(|j| antipodal((index & j).count_ones() % 2 == 1))
        .collect();
    Ok(SignatureSequence {
        family: SequenceFamily::Walsh,
        index,
        chips,
    })
}

/// One period of the m-sequence with recurrence
/// `a[k+10] = a[k] ^ a[k+t1] ^ ...`, starting from the all-ones state.
pub fn m_sequence(taps: &[usize]) -> Vec<bool> {
    let mut a = vec![true; GOLD_DEGREE];
    a.reserve(GOLD_LEN - GOLD_DEGREE);
    while a.len() < GOLD_LEN {
        let k = a.len() - GOLD_DEGREE;
        let bit = taps.iter().fold(a[k], |acc, &t| acc ^ a[k + t]);
        a.push(bit);
    }
    a
}

/// The two parent m-sequences of the Gold family (x^10+x^3+1 and
/// x^10+x^8+x^3+x^2+1).
pub fn gold_parents() -> (Vec<bool>, Vec<bool>) {
    (m_sequence(GOLD_TAPS_A), m_sequence(GOLD_TAPS_B))
}

/// Gold code `index`: parent A XOR parent B advanced by `index` chips for
/// `index < 1023`; 1023 and 1024 return the parents themselves.
pub fn gold(index: usize) -> Result<SignatureSequence> {
    if index >= GOLD_FAMILY_SIZE {
        return Err(Error::IndexOutOfRange {
            kind: "Gold",
            index,
            limit: GOLD_FAMILY_SIZE,
        });
    }
    let (a, b) = gold_parents();
    let bits: Vec<bool> = match index {
        GOLD_LEN => a,
        i if i == GOLD_LEN + 1 => b,
        shift => (0..GOLD_LEN)
            .map(|n| a[n] ^ b[(n + shift) % GOLD_LEN])
            .collect(),
    };
    Ok(SignatureSequence {
        family: SequenceFamily::Gold,
        index,
        chips: bits.into_iter().map(antipodal).collect(),
    })
}

/// Odd-length Zadoff-Chu sequence `exp(-j pi u n (n+1) / 1021)`.
pub fn zadoff_chu(root: usize) -> Result<SignatureSequence> {
    if root == 0 || root >= ZC_LEN {
        return Err(Error::InvalidRoot(root));
    }
    let len = ZC_LEN as u64;
    let chips = (0..len)
        .map(|n| {
            // Reduce the phase index modulo 2N before converting to f64.
            let q = (root as u64 * n * (n + 1)) % (2 * len);
            Complex64::from_polar(1.0, -PI * q as f64 / len as f64)
        })
        .collect();
    Ok(SignatureSequence {
        family: SequenceFamily::ZadoffChu,
        index: root,
        chips,
    })
}

/// Place chips frequency-first (all subcarriers of symbol 0, then symbol 1,
/// ...) scaled by `amplitude`. Chips beyond the grid are dropped; unused
/// trailing elements stay zero.
pub fn map_sequence_to_grid(
    seq: &SignatureSequence,
    grid: &ResourceGrid,
    amplitude: f64,
) -> ResourceGrid {
    let mut out = grid.clone();
    for (re, chip) in out.as_mut_slice().iter_mut().zip(&seq.chips) {
        *re = chip * amplitude;
    }
    out
}

/// Periodic cross-correlation `sum_n a[n] conj(b[(n + shift) mod L])`.
pub fn periodic_correlation(a: &[Complex64], b: &[Complex64], shift: usize) -> Complex64 {
    let len = a.len();
    assert_eq!(len, b.len());
    (0..len).map(|n| a[n] * b[(n + shift) % len].conj()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::ResourceGrid;

    /// Sylvester construction by recursive doubling, independent of the
    /// bit-count formula.
    fn hadamard(order: usize) -> Vec<Vec<i32>> {
        let mut h = vec![vec![1]];
        while h.len() < order {
            let n = h.len();
            let mut next = vec![vec![0; 2 * n]; 2 * n];
            for i in 0..n {
                for j in 0..n {
                    next[i][j] = h[i][j];
                    next[i][j + n] = h[i][j];
                    next[i + n][j] = h[i][j];
                    next[i + n][j + n] = -h[i][j];
                }
            }
            h = next;
        }
        h
    }

    #[test]
    fn walsh_rows() {
        let h = hadamard(1024);
        for i in [0, 1, 2, 3, 63, 512, 1023] {
            let w = walsh(i).unwrap();
            let re: Vec<i32> = w.chips.iter().map(|c| c.re as i32).collect();
            assert_eq!(re, h[i]);
        }
        assert!(walsh(0).unwrap().chips.iter().all(|c| c.re == 1.0));
        let w1 = walsh(1).unwrap();
        assert!(w1
            .chips
            .iter()
            .enumerate()
            .all(|(j, c)| c.re == if j % 2 == 0 { 1.0 } else { -1.0 }));
        assert!(matches!(walsh(1024), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn walsh_rows_are_orthogonal() {
        let rows: Vec<_> = (0..64).map(|i| walsh(i).unwrap()).collect();
        for i in 0..64 {
            for j in 0..64 {
                let d: Complex64 = rows[i]
                    .chips
                    .iter()
                    .zip(&rows[j].chips)
                    .map(|(a, b)| a * b.conj())
                    .sum();
                let want = if i == j { 1024.0 } else { 0.0 };
                assert_eq!(d, Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn m_sequences_are_balanced_with_two_level_autocorrelation() {
        let (a, b) = gold_parents();
        for p in [&a, &b] {
            assert_eq!(p.iter().filter(|&&x| x).count(), 512);
            let chips: Vec<Complex64> = p.iter().map(|&x| antipodal(x)).collect();
            for s in 1..GOLD_LEN {
                assert_eq!(periodic_correlation(&chips, &chips, s).re, -1.0);
            }
        }
    }

    #[test]
    fn gold_family_cross_correlation_is_three_valued() {
        let members: Vec<_> = [0, 1, 17, 500, 1022, 1023, 1024]
            .iter()
            .map(|&i| gold(i).unwrap().chips)
            .collect();
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                for s in 0..GOLD_LEN {
                    let v = periodic_correlation(&members[i], &members[j], s).re as i64;
                    assert!([-1, -65, 63].contains(&v), "value {v}");
                }
            }
        }
        assert!(matches!(gold(1025), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn zadoff_chu_is_cazac() {
        let x = zadoff_chu(25).unwrap().chips;
        assert!(x.iter().all(|c| (c.norm() - 1.0).abs() < 1e-12));
        for s in 1..ZC_LEN {
            assert!(periodic_correlation(&x, &x, s).norm() < 1e-9);
        }
        let y = zadoff_chu(26).unwrap().chips;
        let want = (ZC_LEN as f64).sqrt();
        for s in 0..ZC_LEN {
            assert!((periodic_correlation(&x, &y, s).norm() - want).abs() < 1e-8);
        }
        assert!(matches!(zadoff_chu(0), Err(Error::InvalidRoot(0))));
        assert!(matches!(zadoff_chu(1021), Err(Error::InvalidRoot(1021))));
    }

    #[test]
    fn generation_is_deterministic() {
        for fam in [
            SequenceFamily::Walsh,
            SequenceFamily::Gold,
            SequenceFamily::ZadoffChu,
        ] {
            assert!(fam.family_size() >= 64);
            assert_eq!(fam.signature(9).unwrap(), fam.signature(9).unwrap());
            assert_eq!(fam.signature(9).unwrap().len(), fam.length());
        }
    }

    #[test]
    fn grid_mapping() {
        let g = ResourceGrid::subframe();
        let zc = map_sequence_to_grid(&zadoff_chu(1).unwrap(), &g, 1.0);
        assert_eq!(zc.occupied(), 1021);
        assert_eq!(zc.get(72, 13).norm(), 0.0);
        assert!((zc.energy() - 1021.0).abs() < 1e-9);

        let w = walsh(5).unwrap();
        let wg = map_sequence_to_grid(&w, &g, 0.5);
        assert_eq!(wg.occupied(), 1022);
        assert_eq!(wg.as_slice()[1021], w.chips[1021] * 0.5);
        assert!((wg.energy() - 0.25 * 1022.0).abs() < 1e-12);
    }

    #[test]
    fn truncated_walsh_grids_stay_nearly_orthogonal() {
        let g = ResourceGrid::subframe();
        let grids: Vec<_> = (0..64)
            .map(|i| map_sequence_to_grid(&walsh(i).unwrap(), &g, 1.0))
            .collect();
        for i in 0..64 {
            for j in i + 1..64 {
                let d: Complex64 = grids[i]
                    .as_slice()
                    .iter()
                    .zip(grids[j].as_slice())
                    .map(|(a, b)| a * b.conj())
                    .sum();
                assert!(d.norm() <= 2.0);
            }
        }
    }
}
