//! Bit-mask subsets of small ordered ground sets.
//!
//! Element `i` of a ground set corresponds to bit `i`. All combinatorial
//! objects in this crate (bases, regular minors, rectangles) are stored as
//! masks over the ground order.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub type Mask = u64;

/// Default cap on ground-set sizes.
pub const DEFAULT_GROUND_CAP: usize = 20;

/// Hard ceiling for the `BIMATROID_MAX_GROUND` override; tables of size
/// `2^n` stop being addressable in memory well before 64.
pub const MAX_GROUND_OVERRIDE: usize = 30;

/// Cap on ground-set sizes, overridable through `BIMATROID_MAX_GROUND`.
pub fn ground_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("BIMATROID_MAX_GROUND")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|v| v.min(MAX_GROUND_OVERRIDE))
            .unwrap_or(DEFAULT_GROUND_CAP)
    })
}

pub(crate) fn check_ground(size: usize) -> Result<()> {
    let cap = ground_cap();
    if size > cap {
        return Err(Error::GroundTooLarge { size, cap });
    }
    Ok(())
}

#[inline]
pub fn full(n: usize) -> Mask {
    if n >= 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

#[inline]
pub fn size(mask: Mask) -> usize {
    mask.count_ones() as usize
}

#[inline]
pub fn contains(mask: Mask, i: usize) -> bool {
    mask >> i & 1 == 1
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Indices of the set bits, ascending.
pub fn elements(mask: Mask) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Mask {
    indices.into_iter().fold(0, |m, i| m | 1 << i)
}

/// All subsets of `mask`, in increasing numeric order.
pub fn subsets(mask: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(0 as Mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

/// All `k`-element subsets of `{0, .., n-1}` in increasing numeric order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Mask> {
    let limit: Mask = 1 << n;
    let mut next = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(full(k))
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            (succ < limit).then_some(succ)
        };
        Some(cur)
    })
}

/// Packs the bits of `mask` selected by `keep` into the low positions
/// (order preserving).
pub fn compress(mask: Mask, keep: Mask) -> Mask {
    elements(keep)
        .enumerate()
        .filter(|&(_, i)| contains(mask, i))
        .fold(0, |acc, (pos, _)| acc | 1 << pos)
}

/// Inverse of [`compress`]: spreads the low bits of `packed` onto the
/// positions of `keep`.
pub fn expand(packed: Mask, keep: Mask) -> Mask {
    elements(keep)
        .enumerate()
        .filter(|&(pos, _)| contains(packed, pos))
        .fold(0, |acc, (_, i)| acc | 1 << i)
}

/// Binomial coefficient as `u128`; zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
