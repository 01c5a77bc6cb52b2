//! Layered exactly-`p` subset-sum reachability over a dense box.
//!
//! Points are shifted so every coordinate is nonnegative; a sum of `c`
//! shifted points then lies in `[0, c * range_j]` along axis `j`. The box has
//! extent `p * range_j + 1` per axis and is linearised with the last axis
//! fastest, so increasing bit index is lexicographic order of the points.
//!
//! Layer `c` holds the sums of `c` distinct points seen so far. Adding a
//! point with shifted offset `o` ORs layer `c` shifted by `o` into layer
//! `c + 1`, for `c` descending so each point is used at most once. Since
//! layer `c` never leaves `[0, c * range]` and `c + 1 <= p`, a shifted bit
//! never crosses an axis boundary and no row padding is required.

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::point::{LatticePoint, PointConfiguration, MAX_DIM};

/// Upper bound on total layer storage.
pub const DP_MEMORY_BUDGET_BYTES: u128 = 1 << 30;

const PARALLEL_MIN_WORDS: usize = 1 << 15;

/// The set of `p`-fold distinct sums, stored as one bit per box cell.
#[derive(Clone, PartialEq, Eq)]
pub struct WedgeBitmap {
    dim: usize,
    p: usize,
    /// `p` times the coordinate-wise minimum of the base: the sum at bit 0.
    origin: [i64; MAX_DIM],
    extent: [usize; MAX_DIM],
    stride: [usize; MAX_DIM],
    bits: Vec<u64>,
}

impl std::fmt::Debug for WedgeBitmap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WedgeBitmap")
            .field("dim", &self.dim)
            .field("p", &self.p)
            .field("origin", &&self.origin[..self.dim])
            .field("extent", &&self.extent[..self.dim])
            .field("len", &self.len())
            .finish()
    }
}

/// `dst |= src << shift` over the first `src_words` words of `src`.
fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize, src_words: usize) {
    let ws = shift / 64;
    let bs = (shift % 64) as u32;
    let src = &src[..src_words.min(src.len())];
    let hi = (ws + src.len() + 1).min(dst.len());
    if ws >= hi {
        return;
    }
    let target = &mut dst[ws..hi];
    let kernel = |offset: usize, chunk: &mut [u64]| {
        for (i, d) in chunk.iter_mut().enumerate() {
            let k = offset + i;
            let lo = if k < src.len() { src[k] << bs } else { 0 };
            let carry = if bs > 0 && k >= 1 && k - 1 < src.len() {
                src[k - 1] >> (64 - bs)
            } else {
                0
            };
            *d |= lo | carry;
        }
    };
    if target.len() >= PARALLEL_MIN_WORDS {
        const CHUNK: usize = 1 << 12;
        target
            .par_chunks_mut(CHUNK)
            .enumerate()
            .for_each(|(ci, chunk)| kernel(ci * CHUNK, chunk));
    } else {
        kernel(0, target);
    }
}

impl WedgeBitmap {
    /// Runs the DP. Requires a nonempty base and `p <= |base|`.
    pub fn compute(base: &PointConfiguration, p: usize) -> Result<Self> {
        let n = base.len();
        if n == 0 || p > n {
            return Err(Error::InvalidArgument(format!(
                "wedge power needs 0 <= p <= {n} and a nonempty base, got p = {p}"
            )));
        }
        let dim = base.dim();
        let lo = base.min_corner().expect("nonempty");
        let hi = base.max_corner().expect("nonempty");

        let mut extent = [1usize; MAX_DIM];
        let mut range = [0usize; MAX_DIM];
        let mut origin = [0i64; MAX_DIM];
        let mut cells: u128 = 1;
        for j in 0..dim {
            let r = (hi.coords()[j] as i128 - lo.coords()[j] as i128) as u128;
            let e = r * p as u128 + 1;
            cells = cells.saturating_mul(e);
            range[j] = r as usize;
            extent[j] = usize::try_from(e).map_err(|_| Error::ArithmeticOverflow("dp extent"))?;
            let o = lo.coords()[j] as i128 * p as i128;
            origin[j] = LatticePoint::from_wide(&[o])?.coords()[0];
        }
        let words = cells.div_ceil(64);
        let bytes = words.saturating_mul(8).saturating_mul(p as u128 + 1);
        if bytes > DP_MEMORY_BUDGET_BYTES {
            return Err(Error::BudgetExceeded {
                what: "wedge DP memory (bytes)",
                needed: bytes,
                limit: DP_MEMORY_BUDGET_BYTES,
            });
        }
        let words = words as usize;

        let mut stride = [0usize; MAX_DIM];
        let mut acc = 1usize;
        for j in (0..dim).rev() {
            stride[j] = acc;
            acc *= extent[j];
        }

        let offsets: Vec<usize> = base
            .iter()
            .map(|m| {
                (0..dim)
                    .map(|j| (m.coords()[j] - lo.coords()[j]) as usize * stride[j])
                    .sum()
            })
            .collect();
        // highest bit index reachable by a sum of c points, per unit of c
        let max_index_per_point: usize = (0..dim).map(|j| range[j] * stride[j]).sum();

        let mut layers: Vec<Vec<u64>> = (0..=p).map(|_| vec![0u64; words]).collect();
        layers[0][0] = 1;
        for (i, &offset) in offsets.iter().enumerate() {
            if p == 0 {
                break;
            }
            let c_hi = i.min(p - 1);
            // layer c must still be able to reach p with the remaining points
            let c_lo = (p + i).saturating_sub(n);
            for c in (c_lo..=c_hi).rev() {
                let src_words = (c * max_index_per_point) / 64 + 1;
                let (left, right) = layers.split_at_mut(c + 1);
                or_shifted(&mut right[0], &left[c], offset, src_words);
            }
        }
        let bits = layers.swap_remove(p);
        Ok(Self {
            dim,
            p,
            origin,
            extent,
            stride,
            bits,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    fn index_of(&self, q: &LatticePoint) -> Option<usize> {
        if q.dim() != self.dim {
            return None;
        }
        let mut idx = 0usize;
        for j in 0..self.dim {
            let s = q.coords()[j] as i128 - self.origin[j] as i128;
            if s < 0 || s >= self.extent[j] as i128 {
                return None;
            }
            idx += s as usize * self.stride[j];
        }
        Some(idx)
    }

    pub fn contains(&self, q: &LatticePoint) -> bool {
        self.index_of(q)
            .is_some_and(|i| self.bits[i / 64] >> (i % 64) & 1 == 1)
    }

    fn decode(&self, mut idx: usize) -> LatticePoint {
        let mut c = [0i128; MAX_DIM];
        for j in 0..self.dim {
            c[j] = (idx / self.stride[j]) as i128 + self.origin[j] as i128;
            idx %= self.stride[j];
        }
        LatticePoint::from_wide(&c[..self.dim]).expect("sums were range checked")
    }

    /// Members in canonical (lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.bits.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(self.decode(wi * 64 + b))
            })
        })
    }

    pub fn to_configuration(&self) -> PointConfiguration {
        PointConfiguration::from_sorted_unchecked(self.dim, self.iter().collect())
    }

    /// SHA-256 over the dimension and the members' coordinates in canonical order.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.dim as u64).to_le_bytes());
        for q in self.iter() {
            for c in q.coords() {
                h.update(c.to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_or_carries_across_words() {
        let src = vec![u64::MAX, 0b1];
        let mut dst = vec![0u64; 4];
        or_shifted(&mut dst, &src, 70, 2);
        assert_eq!(dst[0], 0);
        assert_eq!(dst[1], u64::MAX << 6);
        assert_eq!(dst[2], (u64::MAX >> 58) | (1 << 6));
        assert_eq!(dst[3], 0);
    }

    #[test]
    fn shifted_or_parallel_matches_serial() {
        let n = PARALLEL_MIN_WORDS * 2 + 17;
        let src: Vec<u64> = (0..n as u64)
            .map(|i| i.wrapping_mul(0x9E37_79B9_7F4A_7C15))
            .collect();
        let mut a = vec![0u64; n + 3];
        or_shifted(&mut a, &src, 129, n);
        let mut b = vec![0u64; n + 3];
        for (k, &w) in src.iter().enumerate() {
            b[k + 2] |= w << 1;
            b[k + 3] |= w >> 63;
        }
        assert_eq!(a, b);
    }

    #[test]
    fn bitmap_iterates_in_canonical_order() {
        let s = PointConfiguration::from_xy(&[(0, 1), (1, 0), (-1, -1), (0, 0)]);
        let bm = WedgeBitmap::compute(&s, 2).unwrap();
        let pts: Vec<_> = bm.iter().collect();
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(bm.len(), 6);
        assert!(!bm.contains(&LatticePoint::xy(0, 0)));
        assert!(bm.contains(&LatticePoint::xy(1, 1)));
        assert!(!bm.contains(&LatticePoint::xy(50, 50)));
    }

    #[test]
    fn budget_guard() {
        let s = PointConfiguration::from_xy(&[(0, 0), (1_000_000, 1_000_000), (1, 0)]);
        assert!(matches!(
            WedgeBitmap::compute(&s, 2),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
