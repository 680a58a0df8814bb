//! `k`-subsets of `[n]` as single-word bitsets.
//!
//! Element `e` (1-based) lives in bit `e - 1`. Colex order on `k`-subsets is the
//! same as numeric order on their bitsets, which is what makes the ranking
//! prefix-stable when `n` grows.

use core::fmt;

use crate::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: u32 = 64;

const fn binomial_table() -> [[u64; 65]; 65] {
    let mut table = [[0u64; 65]; 65];
    let mut n = 0;
    while n <= 64 {
        table[n][0] = 1;
        let mut k = 1;
        while k <= n {
            // C(64, 32) < 2^63, so nothing in the table overflows.
            table[n][k] = table[n - 1][k - 1] + if k < n { table[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    table
}

static BINOMIAL: [[u64; 65]; 65] = binomial_table();

/// `C(n, k)`, zero when `k > n`.
#[inline]
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n || n > MAX_GROUND {
        return 0;
    }
    BINOMIAL[n as usize][k as usize]
}

/// A subset of the ground set `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    bits: u64,
    n: u8,
}

impl Vertex {
    /// Builds a vertex from 1-based element labels.
    pub fn from_elements(elements: &[u32], n: u32) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n));
        }
        let mut bits = 0u64;
        for &element in elements {
            if element == 0 || element > n {
                return Err(Error::ElementOutOfRange { element, n });
            }
            let bit = 1u64 << (element - 1);
            if bits & bit != 0 {
                return Err(Error::DuplicateElement(element));
            }
            bits |= bit;
        }
        Ok(Self { bits, n: n as u8 })
    }

    /// Builds a vertex straight from a bitset.
    pub fn from_bits(bits: u64, n: u32) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n));
        }
        if n < MAX_GROUND && bits >> n != 0 {
            let element = 64 - bits.leading_zeros();
            return Err(Error::ElementOutOfRange { element, n });
        }
        Ok(Self { bits, n: n as u8 })
    }

    /// The full range `{first, ..., last}` (1-based, inclusive), empty if `first > last`.
    pub(crate) fn range_bits(first: u32, last: u32) -> u64 {
        if first > last {
            return 0;
        }
        low_mask(last) & !low_mask(first - 1)
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ground_size(&self) -> u32 {
        u32::from(self.n)
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, element: u32) -> bool {
        element >= 1 && element <= self.ground_size() && self.bits & (1 << (element - 1)) != 0
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(&self) -> Elements {
        Elements { bits: self.bits }
    }

    /// `|self ∩ other|`.
    pub fn intersection_size(&self, other: &Vertex) -> Result<u32> {
        intersection_size(self, other)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex{}/{}", self, self.n)
    }
}

/// Subset literal, e.g. `{1,2,5}`.
impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e)?;
        }
        f.write_str("}")
    }
}

/// Iterator over the 1-based elements of a [`Vertex`].
#[derive(Clone, Debug)]
pub struct Elements {
    bits: u64,
}

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.bits == 0 {
            return None;
        }
        let pos = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some(pos + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let len = self.bits.count_ones() as usize;
        (len, Some(len))
    }
}

impl ExactSizeIterator for Elements {}

#[inline]
fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// `|a ∩ b|`; the two vertices must share a ground set.
pub fn intersection_size(a: &Vertex, b: &Vertex) -> Result<u32> {
    if a.n != b.n {
        return Err(Error::GroundSizeMismatch {
            left: a.ground_size(),
            right: b.ground_size(),
        });
    }
    Ok((a.bits & b.bits).count_ones())
}

/// Colex rank of `v` among the `k`-subsets of its ground set.
pub fn rank_colex(v: &Vertex, k: u32) -> Result<u64> {
    if v.len() != k {
        return Err(Error::WrongCardinality {
            expected: k,
            found: v.len(),
        });
    }
    Ok(rank_bits(v.bits))
}

/// Colex rank of a bitset; the cardinality is implied by the popcount.
#[inline]
pub(crate) fn rank_bits(mut bits: u64) -> u64 {
    let mut rank = 0;
    let mut j = 1usize;
    while bits != 0 {
        let pos = bits.trailing_zeros() as usize;
        rank += BINOMIAL[pos][j];
        bits &= bits - 1;
        j += 1;
    }
    rank
}

/// Inverse of [`rank_colex`].
pub fn unrank_colex(rank: u64, n: u32, k: u32) -> Result<Vertex> {
    if n > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n));
    }
    let count = binomial(n, k);
    if rank >= count {
        return Err(Error::RankOutOfRange { rank, count });
    }
    Ok(Vertex {
        bits: unrank_bits(rank, n, k),
        n: n as u8,
    })
}

#[inline]
pub(crate) fn unrank_bits(mut rank: u64, n: u32, k: u32) -> u64 {
    let mut bits = 0u64;
    let mut ones = k as usize;
    let mut pos = n as usize;
    while ones > 0 {
        pos -= 1;
        let c = BINOMIAL[pos][ones];
        if rank >= c {
            rank -= c;
            bits |= 1 << pos;
            ones -= 1;
        }
    }
    bits
}

/// The explicit pair realizing intersection size `s`:
/// `A = {1..k}` and `B = {1..s} ∪ {k+1..2k-s}`.
pub fn canonical_pair(n: u32, k: u32, s: u32) -> Result<(Vertex, Vertex)> {
    if n > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n));
    }
    if s > k {
        return Err(Error::IntersectionOutOfRange { s, k });
    }
    if n < 2 * k - s {
        return Err(Error::InvalidParams(
            "ground set too small for the canonical pair",
        ));
    }
    let a = Vertex::range_bits(1, k);
    let b = Vertex::range_bits(1, s) | Vertex::range_bits(k + 1, 2 * k - s);
    Ok((
        Vertex {
            bits: a,
            n: n as u8,
        },
        Vertex {
            bits: b,
            n: n as u8,
        },
    ))
}

/// All `k`-subsets of `[n]` in colex order, i.e. by increasing rank.
#[derive(Clone, Debug)]
pub struct KSubsets {
    next: u64,
    remaining: u64,
    n: u8,
}

impl KSubsets {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n));
        }
        Ok(Self {
            next: low_mask(k),
            remaining: binomial(n, k),
            n: n as u8,
        })
    }
}

impl Iterator for KSubsets {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.remaining == 0 {
            return None;
        }
        let current = self.next;
        self.remaining -= 1;
        if self.remaining > 0 {
            self.next = next_same_popcount(current);
        }
        Some(Vertex {
            bits: current,
            n: self.n,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

impl ExactSizeIterator for KSubsets {}

/// Gosper's hack. Only called when a successor exists, so `x != 0` and the
/// addition cannot run off the top of the word.
#[inline]
pub(crate) fn next_same_popcount(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Scatters the low bits of `compact` onto the set bits of `mask`, lowest first.
#[inline]
pub(crate) fn deposit(mut compact: u64, mut mask: u64) -> u64 {
    let mut out = 0;
    while compact != 0 && mask != 0 {
        let low = mask & mask.wrapping_neg();
        if compact & 1 != 0 {
            out |= low;
        }
        compact >>= 1;
        mask ^= low;
    }
    out
}

/// All `t`-element sub-masks of `mask`.
#[derive(Clone, Debug)]
pub(crate) struct SubMasks {
    mask: u64,
    compact: u64,
    remaining: u64,
}

impl SubMasks {
    pub(crate) fn new(mask: u64, t: u32) -> Self {
        Self {
            mask,
            compact: low_mask(t),
            remaining: binomial(mask.count_ones(), t),
        }
    }
}

impl Iterator for SubMasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.remaining == 0 {
            return None;
        }
        let current = self.compact;
        self.remaining -= 1;
        if self.remaining > 0 {
            self.compact = next_same_popcount(current);
        }
        Some(deposit(current, self.mask))
    }
}
