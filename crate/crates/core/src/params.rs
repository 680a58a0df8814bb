//! Validated parameter records for the graph families.

use core::fmt;

use crate::subset::{binomial, MAX_GROUND};
use crate::{Error, Result};

#[inline]
pub(crate) fn ceil_div(a: u64, b: u64) -> u64 {
    debug_assert!(b > 0);
    a.div_ceil(b)
}

/// The Kneser graph `K(2k+r, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KneserParams {
    k: u32,
    r: u32,
    diameter: u32,
}

impl KneserParams {
    pub fn new(k: u32, r: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1"));
        }
        if r == 0 {
            return Err(Error::InvalidParams("r must be at least 1"));
        }
        let n = 2 * u64::from(k) + u64::from(r);
        if n > u64::from(MAX_GROUND) {
            return Err(Error::GroundSetTooLarge(n.min(u64::from(u32::MAX)) as u32));
        }
        // K(2+r, 1) is complete.
        let diameter = if k == 1 {
            1
        } else {
            ceil_div(u64::from(k - 1), u64::from(r)) as u32 + 1
        };
        Ok(Self { k, r, diameter })
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn r(&self) -> u32 {
        self.r
    }

    #[inline]
    pub fn n(&self) -> u32 {
        2 * self.k + self.r
    }

    /// Diameter `D` of the Kneser graph.
    #[inline]
    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// `r | k - 1`.
    #[inline]
    pub fn r_divides_k_minus_1(&self) -> bool {
        (self.k - 1).is_multiple_of(self.r)
    }

    /// `r >= k - 1`, where the Kneser graph has diameter at most 2.
    #[inline]
    pub fn is_dense(&self) -> bool {
        self.r + 1 >= self.k
    }

    pub fn vertex_count(&self) -> u64 {
        binomial(self.n(), self.k)
    }
}

/// The exact distance-`d` Kneser graph `K_{=d}(2k+r, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactParams {
    base: KneserParams,
    d: u32,
}

impl ExactParams {
    pub fn new(base: KneserParams, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParams("d must be at least 1"));
        }
        if d > base.diameter() {
            return Err(Error::DistanceExceedsDiameter {
                d,
                diameter: base.diameter(),
            });
        }
        Ok(Self { base, d })
    }

    #[inline]
    pub fn base(&self) -> &KneserParams {
        &self.base
    }

    #[inline]
    pub fn d(&self) -> u32 {
        self.d
    }

    /// `d = 2p` or `d = 2p + 1`.
    #[inline]
    pub fn p(&self) -> u32 {
        self.d / 2
    }

    #[inline]
    pub fn is_even(&self) -> bool {
        self.d.is_multiple_of(2)
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.base.k
    }

    #[inline]
    pub fn r(&self) -> u32 {
        self.base.r
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.base.n()
    }

    /// `d` equals the diameter of the base graph.
    #[inline]
    pub fn at_diameter(&self) -> bool {
        self.d == self.base.diameter
    }
}

/// Which generalized family a [`GenParams`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenFamily {
    /// `K(n, k, i)`: adjacency on small intersections.
    Kneser,
    /// `J(n, k, i)`: adjacency on intersections of size exactly `i`.
    Johnson,
}

impl GenFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            GenFamily::Kneser => "gen-kneser",
            GenFamily::Johnson => "johnson",
        }
    }
}

/// Adjacency convention for the generalized Kneser graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKneserConvention {
    /// `|A ∩ B| <= i`; reduces to the Kneser graph at `i = 0`.
    #[default]
    AtMost,
    /// `|A ∩ B| < i`.
    Below,
}

impl GenKneserConvention {
    pub fn tag(&self) -> &'static str {
        match self {
            GenKneserConvention::AtMost => "s<=i",
            GenKneserConvention::Below => "s<i",
        }
    }
}

/// `K(n, k, i)` or `J(n, k, i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenParams {
    n: u32,
    k: u32,
    i: u32,
    family: GenFamily,
}

impl GenParams {
    /// Checks the structural invariants; theorem domains are checked per operation.
    pub fn new(family: GenFamily, n: u32, k: u32, i: u32) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(n));
        }
        if !(n > k && k > i) {
            return Err(Error::InvalidParams("need n > k > i >= 0"));
        }
        match family {
            GenFamily::Kneser => {
                if n + i < 2 * k {
                    return Err(Error::InvalidParams("need n >= 2k - i"));
                }
            }
            GenFamily::Johnson => {
                if n < 2 * k {
                    return Err(Error::InvalidParams("need n >= 2k"));
                }
                if n == 2 * k && i == 0 {
                    return Err(Error::InvalidParams("J(2k, k, 0) is excluded"));
                }
            }
        }
        Ok(Self { n, k, i, family })
    }

    pub fn kneser(n: u32, k: u32, i: u32) -> Result<Self> {
        Self::new(GenFamily::Kneser, n, k, i)
    }

    pub fn johnson(n: u32, k: u32, i: u32) -> Result<Self> {
        Self::new(GenFamily::Johnson, n, k, i)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn i(&self) -> u32 {
        self.i
    }

    #[inline]
    pub fn family(&self) -> GenFamily {
        self.family
    }

    /// `r = n - 2k + i`, meaningful for the generalized Kneser graph.
    #[inline]
    pub fn r(&self) -> u32 {
        self.n + self.i - 2 * self.k
    }

    /// Smallest intersection size realized by two `k`-subsets of `[n]`.
    #[inline]
    pub fn min_intersection(&self) -> u32 {
        (2 * self.k).saturating_sub(self.n)
    }

    pub fn vertex_count(&self) -> u64 {
        binomial(self.n, self.k)
    }
}

/// Any built-in family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Kneser(KneserParams),
    Exact(ExactParams),
    GenKneser(GenParams, GenKneserConvention),
    Johnson(GenParams),
}

impl FamilySpec {
    pub fn n(&self) -> u32 {
        match self {
            FamilySpec::Kneser(p) => p.n(),
            FamilySpec::Exact(p) => p.n(),
            FamilySpec::GenKneser(p, _) | FamilySpec::Johnson(p) => p.n(),
        }
    }

    pub fn k(&self) -> u32 {
        match self {
            FamilySpec::Kneser(p) => p.k(),
            FamilySpec::Exact(p) => p.k(),
            FamilySpec::GenKneser(p, _) | FamilySpec::Johnson(p) => p.k(),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Kneser(_) => "kneser",
            FamilySpec::Exact(_) => "exact",
            FamilySpec::GenKneser(..) => "gen-kneser",
            FamilySpec::Johnson(_) => "johnson",
        }
    }

    pub fn vertex_count(&self) -> u64 {
        binomial(self.n(), self.k())
    }
}

/// `family=<tag> n=<n> k=<k> [r=.. d=.. i=..]`
impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family={} n={} k={}", self.tag(), self.n(), self.k())?;
        match self {
            FamilySpec::Kneser(p) => write!(f, " r={}", p.r()),
            FamilySpec::Exact(p) => write!(f, " r={} d={}", p.r(), p.d()),
            FamilySpec::GenKneser(p, _) | FamilySpec::Johnson(p) => write!(f, " i={}", p.i()),
        }
    }
}
