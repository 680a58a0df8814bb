//! Closed-form adjacency, distance and diameter oracles.
//!
//! Every function here is exact integer arithmetic on the parameters and the
//! intersection size `s = |A ∩ B|`. Ceilings are `div_ceil`; the half-integer
//! `k ± r/2` terms of the diameter formula are handled by doubling numerator and
//! denominator.

use core::fmt;

use crate::params::{ceil_div, ExactParams, GenParams};
use crate::{Error, Result};

/// A hop count, or `Infinite` between different components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(&self) -> Option<u32> {
        match *self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl From<u32> for Distance {
    fn from(d: u32) -> Self {
        Distance::Finite(d)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{}", d),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Inclusive range of intersection sizes that are adjacent in `K_{=d}(2k+r, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdjInterval {
    Empty,
    Range { lo: u32, hi: u32 },
}

impl AdjInterval {
    fn from_signed(lo: i64, hi: i64) -> Self {
        let lo = lo.max(0);
        if lo > hi {
            AdjInterval::Empty
        } else {
            AdjInterval::Range {
                lo: lo as u32,
                hi: hi as u32,
            }
        }
    }

    pub fn contains(&self, s: u32) -> bool {
        match *self {
            AdjInterval::Empty => false,
            AdjInterval::Range { lo, hi } => lo <= s && s <= hi,
        }
    }

    pub fn bounds(&self) -> Option<(u32, u32)> {
        match *self {
            AdjInterval::Empty => None,
            AdjInterval::Range { lo, hi } => Some((lo, hi)),
        }
    }
}

impl fmt::Display for AdjInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjInterval::Empty => f.write_str("[]"),
            AdjInterval::Range { lo, hi } => write!(f, "[{},{}]", lo, hi),
        }
    }
}

/// One-sided bound on `|A ∩ B|` implied by the length of a path between `A` and `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntersectionBound {
    AtLeast(i64),
    AtMost(i64),
}

impl IntersectionBound {
    pub fn admits(&self, s: u32) -> bool {
        match *self {
            IntersectionBound::AtLeast(lo) => i64::from(s) >= lo,
            IntersectionBound::AtMost(hi) => i64::from(s) <= hi,
        }
    }
}

impl fmt::Display for IntersectionBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntersectionBound::AtLeast(lo) => write!(f, "s>={}", lo),
            IntersectionBound::AtMost(hi) => write!(f, "s<={}", hi),
        }
    }
}

/// The three diameter values the harness compares. They are never reconciled here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiameterTriple {
    /// Literal value of the six-case diameter formula.
    pub theorem: Distance,
    /// Maximum of [`exact_distance`] over all intersection sizes.
    pub max_over_s: Distance,
    /// Ground truth, when a BFS was run.
    pub bfs: Option<Distance>,
}

impl DiameterTriple {
    pub fn all_agree(&self) -> bool {
        self.bfs.is_none_or(|b| b == self.max_over_s) && self.theorem == self.max_over_s
    }
}

#[inline]
fn check_s(s: u32, k: u32) -> Result<()> {
    if s > k {
        Err(Error::IntersectionOutOfRange { s, k })
    } else {
        Ok(())
    }
}

#[inline]
fn cdiv(a: u32, b: u32) -> u32 {
    ceil_div(u64::from(a), u64::from(b)) as u32
}

/// Distance in the Kneser graph `K(2k+r, k)` between two vertices meeting in `s` elements:
/// `min(2⌈(k-s)/r⌉, 2⌈s/r⌉ + 1)`, and 0 when `s = k`.
///
/// Applied for every `r >= 1`; when `r >= k - 1` it gives 1 for disjoint pairs and
/// 2 otherwise, matching the diameter-2 regime.
pub fn kneser_distance(k: u32, r: u32, s: u32) -> Result<Distance> {
    if k == 0 || r == 0 {
        return Err(Error::InvalidParams("k and r must be positive"));
    }
    check_s(s, k)?;
    Ok(Distance::Finite(kneser_distance_unchecked(k, r, s)))
}

#[inline]
fn kneser_distance_unchecked(k: u32, r: u32, s: u32) -> u32 {
    if s == k {
        return 0;
    }
    (2 * cdiv(k - s, r)).min(2 * cdiv(s, r) + 1)
}

/// Diameter of `K(2k+r, k)`: `⌈(k-1)/r⌉ + 1`.
pub fn kneser_diameter(k: u32, r: u32) -> Result<Distance> {
    if k < 2 {
        return Err(Error::InvalidParams("k must be at least 2"));
    }
    if r == 0 {
        return Err(Error::InvalidParams("r must be positive"));
    }
    Ok(Distance::Finite(cdiv(k - 1, r) + 1))
}

/// Intersection sizes joined by an edge in `K_{=d}(2k+r, k)`, `d >= 2`.
pub fn exact_adjacency_interval(params: &ExactParams) -> Result<AdjInterval> {
    let d = params.d();
    if d < 2 {
        return Err(Error::InvalidParams(
            "d = 1 is the Kneser graph itself (adjacent iff s = 0)",
        ));
    }
    let k = i64::from(params.k());
    let r = i64::from(params.r());
    if params.base().is_dense() {
        // Only d = 2 exists here, and K_{=2} is the complement of K.
        return Ok(AdjInterval::from_signed(1, k - 1));
    }
    let p = i64::from(params.p());
    let regular = !params.at_diameter() || params.base().r_divides_k_minus_1();
    let (lo, hi) = match (params.is_even(), regular) {
        (true, true) => (k - r * p, k - r * p + r - 1),
        (true, false) => (r * p - r + 1, k - r * p + r - 1),
        (false, true) => (r * p - r + 1, r * p),
        (false, false) => (r * p - r + 1, k - r * p - 1),
    };
    Ok(AdjInterval::from_signed(lo, hi))
}

/// Whether two vertices meeting in `s` elements are adjacent in `K_{=d}(2k+r, k)`.
pub fn exact_is_adjacent(params: &ExactParams, s: u32) -> Result<bool> {
    check_s(s, params.k())?;
    if s == params.k() {
        return Ok(false);
    }
    if params.d() == 1 {
        return Ok(s == 0);
    }
    Ok(exact_adjacency_interval(params)?.contains(s))
}

/// Distance in `K_{=d}(2k+r, k)` between two vertices meeting in `s` elements.
///
/// Evaluated in order: same vertex, adjacent, then the parity formula
/// (`max(2, ⌈(k-s)/rp⌉)` for `d = 2p`,
/// `min(1 + 2⌈|s-rp|/(2rp+r)⌉, 2⌈(k-s)/(2rp+r)⌉)` for `d = 2p+1`).
pub fn exact_distance(params: &ExactParams, s: u32) -> Result<Distance> {
    let k = params.k();
    check_s(s, k)?;
    if s == k {
        return Ok(Distance::Finite(0));
    }
    let r = params.r();
    if params.d() == 1 {
        return Ok(Distance::Finite(kneser_distance_unchecked(k, r, s)));
    }
    if exact_adjacency_interval(params)?.contains(s) {
        return Ok(Distance::Finite(1));
    }
    if params.base().is_dense() {
        return Ok(Distance::Finite(2));
    }
    let rp = r * params.p();
    let value = if params.is_even() {
        cdiv(k - s, rp).max(2)
    } else {
        // At d = D with r ∤ k-1 the pair s = rp is not adjacent, and the
        // first term collapses to 1; such pairs are at distance 2.
        let step = 2 * rp + r;
        (1 + 2 * cdiv(s.abs_diff(rp), step))
            .min(2 * cdiv(k - s, step))
            .max(2)
    };
    Ok(Distance::Finite(value))
}

/// Literal six-case diameter formula for `K_{=d}(2k+r, k)`, `d >= 2`.
pub fn exact_diameter_theorem(params: &ExactParams) -> Result<Distance> {
    if params.d() < 2 {
        return Err(Error::InvalidParams("diameter formula needs d >= 2"));
    }
    if params.base().is_dense() {
        return Ok(Distance::Finite(2));
    }
    let k = params.k();
    let r = params.r();
    let rp = r * params.p();
    let divides = params.base().r_divides_k_minus_1();
    let value = match (params.is_even(), params.at_diameter()) {
        // (i) and (ii)
        (_, true) if !divides => 2,
        (false, true) => 2,
        // (iii) and (iv)
        (true, _) => cdiv(k, rp),
        (false, false) => {
            let doubled_step = 2 * (2 * rp + r);
            // 2 | (k - r/2)  <=>  4 | (2k - r)
            if (2 * k - r).is_multiple_of(4) {
                // (v): ⌈(k + r/2)/(2rp+r)⌉
                cdiv(2 * k + r, doubled_step)
            } else {
                // (vi): 1 + ⌈(k + r/2 - 1)/(2rp+r)⌉
                1 + cdiv(2 * k + r - 2, doubled_step)
            }
        }
    };
    Ok(Distance::Finite(value))
}

/// Diameter of `K_{=d}(2k+r, k)` as the maximum of [`exact_distance`] over
/// `s ∈ 0..k`. Every such `s` is realized by some pair since `n >= 2k - s`.
pub fn exact_diameter_max_over_s(params: &ExactParams) -> Result<Distance> {
    let mut best = Distance::Finite(0);
    for s in 0..params.k() {
        best = best.max(exact_distance(params, s)?);
    }
    Ok(best)
}

fn gen_kneser_distance_domain(params: &GenParams) -> Result<()> {
    let (k, i, r) = (params.k(), params.i(), params.r());
    if r + 2 * i + 1 >= k {
        return Err(Error::OutsideDomain(
            "generalized Kneser distance needs r < k - 2i - 1",
        ));
    }
    if i + r == 0 {
        return Err(Error::OutsideDomain(
            "generalized Kneser distance needs i + r > 0",
        ));
    }
    Ok(())
}

/// Distance in `K(n, k, i)` with adjacency `s <= i`, where `n = 2k - i + r` and
/// `0 <= r < k - 2i - 1`.
pub fn gen_kneser_distance(n: u32, k: u32, i: u32, s: u32) -> Result<Distance> {
    let params = GenParams::kneser(n, k, i)?;
    gen_kneser_distance_for(&params, s)
}

pub(crate) fn gen_kneser_distance_for(params: &GenParams, s: u32) -> Result<Distance> {
    gen_kneser_distance_domain(params)?;
    let (k, i) = (params.k(), params.i());
    check_s(s, k)?;
    if s == k {
        return Ok(Distance::Finite(0));
    }
    if s <= i {
        return Ok(Distance::Finite(1));
    }
    let step = i + params.r();
    Ok(Distance::Finite(
        (2 * cdiv(k - s, step)).min(2 * cdiv(s - i, step) + 1),
    ))
}

/// Diameter of `K(n, k, i)`: `⌈(k-i-1)/(i+r)⌉ + 1` with `r = n - 2k + i >= 1`.
pub fn gen_kneser_diameter(n: u32, k: u32, i: u32) -> Result<Distance> {
    let params = GenParams::kneser(n, k, i)?;
    gen_kneser_diameter_for(&params)
}

pub(crate) fn gen_kneser_diameter_for(params: &GenParams) -> Result<Distance> {
    let r = params.r();
    if r == 0 {
        return Err(Error::OutsideDomain(
            "generalized Kneser diameter needs r >= 1",
        ));
    }
    let (k, i) = (params.k(), params.i());
    Ok(Distance::Finite(cdiv(k - i - 1, i + r) + 1))
}

/// Distance in `J(n, k, i)` between two vertices meeting in `s` elements.
pub fn gen_johnson_distance(n: u32, k: u32, i: u32, s: u32) -> Result<Distance> {
    let params = GenParams::johnson(n, k, i)?;
    gen_johnson_distance_for(&params, s)
}

pub(crate) fn gen_johnson_distance_for(params: &GenParams, s: u32) -> Result<Distance> {
    let (n, k, i) = (params.n(), params.k(), params.i());
    check_s(s, k)?;
    if s == k {
        return Ok(Distance::Finite(0));
    }
    let threshold = 3 * i64::from(k) - 2 * i64::from(i) - i64::from(n);
    let s_signed = i64::from(s);
    let value = if s_signed < threshold.min(i64::from(i)) {
        3
    } else if s < i {
        cdiv(k - s, k - i)
    } else {
        let step = n + 2 * i - 2 * k;
        (2 * cdiv(k - s, step)).min(2 * cdiv(s - i, step) + 1)
    };
    Ok(Distance::Finite(value))
}

/// Diameter of `J(n, k, i)`.
pub fn gen_johnson_diameter(n: u32, k: u32, i: u32) -> Result<Distance> {
    let params = GenParams::johnson(n, k, i)?;
    gen_johnson_diameter_for(&params)
}

pub(crate) fn gen_johnson_diameter_for(params: &GenParams) -> Result<Distance> {
    let (n, k, i) = (params.n(), params.k(), params.i());
    let value = if i == 0 || n + 1 < 3 * (k - i) {
        cdiv(k - i - 1, n + 2 * i - 2 * k) + 1
    } else if n < 3 * k - 2 * i {
        3
    } else {
        cdiv(k, k - i)
    };
    Ok(Distance::Finite(value))
}

/// Distance formula for either generalized family (`s <= i` convention for `K(n,k,i)`).
pub fn gen_distance(params: &GenParams, s: u32) -> Result<Distance> {
    match params.family() {
        crate::GenFamily::Kneser => gen_kneser_distance_for(params, s),
        crate::GenFamily::Johnson => gen_johnson_distance_for(params, s),
    }
}

/// Diameter formula for either generalized family.
pub fn gen_diameter(params: &GenParams) -> Result<Distance> {
    match params.family() {
        crate::GenFamily::Kneser => gen_kneser_diameter_for(params),
        crate::GenFamily::Johnson => gen_johnson_diameter_for(params),
    }
}

/// Maximum of [`gen_distance`] over the intersection sizes that actually occur.
pub fn gen_diameter_max_over_s(params: &GenParams) -> Result<Distance> {
    let mut best = Distance::Finite(0);
    for s in params.min_intersection()..params.k() {
        best = best.max(gen_distance(params, s)?);
    }
    Ok(best)
}

/// Intersection bound for two vertices of `K(2k+r, k)` joined by a path of the
/// given length: `s >= k - rp` for length `2p`, `s <= rp` for length `2p + 1`.
pub fn stahl_bound(k: u32, r: u32, path_length: u32) -> IntersectionBound {
    let rp = i64::from(r) * i64::from(path_length / 2);
    if path_length.is_multiple_of(2) {
        IntersectionBound::AtLeast(i64::from(k) - rp)
    } else {
        IntersectionBound::AtMost(rp)
    }
}

/// Intersection bound for two vertices of `K_{=d}(2k+r, k)` joined by a path of
/// length `len`, where it is known to hold:
///
/// * `d = 2p` with `d < D` or `r | k - 1`: `s >= k - len·rp`;
/// * `d = 2p + 1 < D`: `s >= k - 2ℓrp - rℓ` for `len = 2ℓ`, and
///   `s <= (2ℓ+1)rp + rℓ` for `len = 2ℓ + 1`.
///
/// `None` outside those regimes, including the dense `r >= k - 1` case.
pub fn path_length_bound(params: &ExactParams, len: u32) -> Option<IntersectionBound> {
    if params.d() < 2 || params.base().is_dense() {
        return None;
    }
    let k = i64::from(params.k());
    let r = i64::from(params.r());
    let rp = r * i64::from(params.p());
    let len = i64::from(len);
    if params.is_even() {
        if params.at_diameter() && !params.base().r_divides_k_minus_1() {
            return None;
        }
        Some(IntersectionBound::AtLeast(k - len * rp))
    } else {
        if params.at_diameter() {
            return None;
        }
        let l = len / 2;
        if len % 2 == 0 {
            Some(IntersectionBound::AtLeast(k - 2 * l * rp - r * l))
        } else {
            Some(IntersectionBound::AtMost((2 * l + 1) * rp + r * l))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::KneserParams;

    fn exact(k: u32, r: u32, d: u32) -> ExactParams {
        ExactParams::new(KneserParams::new(k, r).unwrap(), d).unwrap()
    }

    const F: fn(u32) -> Distance = Distance::Finite;

    #[test]
    fn kneser_distance_examples() {
        assert_eq!(kneser_distance(5, 1, 0), Ok(F(1)));
        assert_eq!(kneser_distance(5, 1, 5), Ok(F(0)));
        assert_eq!(kneser_distance(5, 1, 2), Ok(F(5)));
        assert_eq!(kneser_distance(2, 1, 1), Ok(F(2)));
        assert!(kneser_distance(5, 1, 6).is_err());
        assert!(kneser_distance(0, 1, 0).is_err());
        assert!(kneser_distance(3, 0, 0).is_err());
    }

    #[test]
    fn kneser_diameter_examples() {
        assert_eq!(kneser_diameter(2, 1), Ok(F(2)));
        assert_eq!(kneser_diameter(5, 1), Ok(F(5)));
        assert_eq!(kneser_diameter(7, 2), Ok(F(4)));
        assert!(kneser_diameter(1, 1).is_err());
    }

    #[test]
    fn adjacency_interval_cases() {
        let iv = |k, r, d| exact_adjacency_interval(&exact(k, r, d)).unwrap().bounds();
        assert_eq!(iv(5, 1, 2), Some((4, 4)));
        assert_eq!(iv(7, 2, 4), Some((3, 4)));
        assert_eq!(iv(8, 3, 4), Some((4, 4)));
        assert_eq!(iv(2, 1, 2), Some((1, 1)));
        assert!(exact_adjacency_interval(&exact(5, 1, 1)).is_err());
    }

    #[test]
    fn r_equals_one_closed_form() {
        // s = k - d/2 for even d, (d-1)/2 for odd d.
        for k in 2..=12 {
            for d in 2..=k {
                let expected = if d % 2 == 0 { k - d / 2 } else { (d - 1) / 2 };
                let interval = exact_adjacency_interval(&exact(k, 1, d)).unwrap();
                assert_eq!(interval.bounds(), Some((expected, expected)), "k={k} d={d}");
            }
        }
    }

    #[test]
    fn adjacency_examples() {
        assert_eq!(exact_is_adjacent(&exact(5, 1, 5), 2), Ok(true));
        assert_eq!(exact_is_adjacent(&exact(5, 1, 2), 0), Ok(false));
        assert_eq!(exact_is_adjacent(&exact(5, 1, 3), 5), Ok(false));
        assert_eq!(exact_is_adjacent(&exact(5, 1, 1), 0), Ok(true));
        assert!(exact_is_adjacent(&exact(5, 1, 3), 6).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(exact_distance(&exact(5, 1, 2), 0), Ok(F(5)));
        assert_eq!(exact_distance(&exact(5, 1, 3), 0), Ok(F(3)));
        assert_eq!(exact_distance(&exact(5, 1, 4), 0), Ok(F(3)));
        assert_eq!(exact_distance(&exact(5, 1, 4), 5), Ok(F(0)));
        assert_eq!(exact_distance(&exact(3, 2, 2), 0), Ok(F(2)));
        assert_eq!(exact_distance(&exact(3, 2, 2), 1), Ok(F(1)));
    }

    #[test]
    fn diameter_theorem_cases() {
        let th = |k, r, d| exact_diameter_theorem(&exact(k, r, d)).unwrap();
        assert_eq!(th(5, 1, 2), F(5));
        assert_eq!(th(5, 1, 5), F(2));
        assert_eq!(th(6, 2, 3), F(2));
        assert_eq!(th(7, 2, 3), F(2));
        assert_eq!(th(8, 1, 3), F(4));
        assert_eq!(th(2, 1, 2), F(2));
        assert!(exact_diameter_theorem(&exact(5, 1, 1)).is_err());
    }

    #[test]
    fn max_over_s_examples() {
        let m = |k, r, d| exact_diameter_max_over_s(&exact(k, r, d)).unwrap();
        assert_eq!(m(5, 1, 2), F(5));
        assert_eq!(m(7, 2, 3), F(3));
        assert_eq!(m(5, 1, 5), F(2));
    }

    #[test]
    fn generalized_examples() {
        assert_eq!(gen_kneser_distance(13, 6, 1, 4), Ok(F(2)));
        assert_eq!(gen_kneser_distance(13, 6, 1, 2), Ok(F(3)));
        assert_eq!(gen_kneser_distance(13, 6, 1, 6), Ok(F(0)));
        assert_eq!(gen_kneser_distance(13, 6, 1, 1), Ok(F(1)));
        assert!(matches!(
            gen_kneser_distance(15, 6, 1, 3),
            Err(Error::OutsideDomain(_))
        ));
        assert!(matches!(
            gen_kneser_distance(8, 4, 0, 1),
            Err(Error::OutsideDomain(_))
        ));
        assert_eq!(gen_kneser_diameter(13, 6, 1), Ok(F(3)));
        assert_eq!(gen_kneser_diameter(16, 7, 2), Ok(F(2)));
        assert!(gen_kneser_diameter(11, 6, 1).is_err());

        assert_eq!(gen_johnson_distance(10, 5, 2, 0), Ok(F(3)));
        assert_eq!(gen_johnson_distance(12, 5, 2, 3), Ok(F(2)));
        assert_eq!(gen_johnson_distance(12, 5, 2, 2), Ok(F(1)));
        assert_eq!(gen_johnson_diameter(10, 5, 2), Ok(F(3)));
        assert_eq!(gen_johnson_diameter(12, 5, 2), Ok(F(2)));
        assert_eq!(gen_johnson_diameter(11, 5, 0), Ok(F(5)));
        assert!(gen_johnson_distance(10, 5, 0, 1).is_err());
    }

    #[test]
    fn stahl_examples() {
        assert_eq!(stahl_bound(5, 1, 2), IntersectionBound::AtLeast(4));
        assert_eq!(stahl_bound(5, 1, 3), IntersectionBound::AtMost(1));
        assert_eq!(stahl_bound(5, 1, 0), IntersectionBound::AtLeast(5));
        assert!(stahl_bound(5, 1, 0).admits(5));
        assert!(!stahl_bound(5, 1, 3).admits(2));
    }

    #[test]
    fn path_bounds_respect_hypotheses() {
        // d = D and r ∤ k - 1: no bound.
        assert_eq!(path_length_bound(&exact(8, 3, 4), 1), None);
        assert_eq!(
            path_length_bound(&exact(5, 1, 2), 3),
            Some(IntersectionBound::AtLeast(2))
        );
        // odd d < D: len 1 gives s <= rp.
        assert_eq!(
            path_length_bound(&exact(7, 2, 3), 1),
            Some(IntersectionBound::AtMost(2))
        );
        assert_eq!(
            path_length_bound(&exact(7, 2, 3), 2),
            Some(IntersectionBound::AtLeast(7 - 4 - 2))
        );
        assert_eq!(path_length_bound(&exact(5, 1, 5), 1), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(alloc::format!("{}", Distance::Infinite), "inf");
        assert_eq!(alloc::format!("{}", F(4)), "4");
        assert_eq!(
            alloc::format!("{}", AdjInterval::Range { lo: 3, hi: 4 }),
            "[3,4]"
        );
        assert!(Distance::Infinite > F(u32::MAX));
    }
}
