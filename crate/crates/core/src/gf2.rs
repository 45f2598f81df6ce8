//! Dense linear algebra over GF(2) on bit-packed rows.

use std::fmt;

/// A rows × cols matrix over GF(2), stored row-major with each row packed
/// into 64-bit words.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Self { rows, cols, stride, bits: vec![0; rows * stride] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.bits[r * self.stride + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.bits[r * self.stride + c / 64] ^= 1 << (c % 64);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.stride..(r + 1) * self.stride]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in iter_ones(self.row(r)) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let dst = r * out.stride;
            for k in iter_ones(self.row(r)) {
                let src = other.row(k);
                for (d, s) in out.bits[dst..dst + out.stride].iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Rank by Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let mut scratch = self.clone();
        scratch.reduce_in_place().len()
    }

    /// Brings the matrix to reduced row echelon form and returns the pivot
    /// column of each nonzero row, in row order.
    pub fn reduce_in_place(&mut self) -> Vec<usize> {
        let stride = self.stride;
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (next..self.rows).find(|&r| self.bits[r * stride + w] & bit != 0) else {
                continue;
            };
            if p != next {
                for k in 0..stride {
                    self.bits.swap(p * stride + k, next * stride + k);
                }
            }
            for r in 0..self.rows {
                if r != next && self.bits[r * stride + w] & bit != 0 {
                    xor_rows(&mut self.bits, stride, r, next);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[inline]
fn xor_rows(bits: &mut [u64], stride: usize, dst: usize, src: usize) {
    let (a, b) = if dst < src {
        let (lo, hi) = bits.split_at_mut(src * stride);
        (&mut lo[dst * stride..(dst + 1) * stride], &hi[..stride])
    } else {
        let (lo, hi) = bits.split_at_mut(dst * stride);
        (&mut hi[..stride], &lo[src * stride..(src + 1) * stride])
    };
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

pub(crate) fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + t)
        })
    })
}

/// Fully reduced basis of a subspace of GF(2)^n, kept so that every pivot
/// column is clear in all other basis vectors.
#[derive(Clone, Debug, Default)]
pub struct ReducedBasis {
    stride: usize,
    vectors: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl ReducedBasis {
    pub fn new(len: usize) -> Self {
        Self { stride: len.div_ceil(64), vectors: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_matrix_rows(m: &BitMatrix) -> Self {
        let mut scratch = m.clone();
        let pivots = scratch.reduce_in_place();
        let vectors = (0..pivots.len()).map(|r| scratch.row(r).to_vec()).collect();
        Self { stride: m.stride, vectors, pivots }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Reduces `v` modulo the span in place.
    pub fn reduce(&self, v: &mut [u64]) {
        debug_assert_eq!(v.len(), self.stride);
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if v[p / 64] >> (p % 64) & 1 == 1 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
    }
}
