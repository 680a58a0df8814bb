//! Exact-distance Kneser graphs: closed-form adjacency, distance and diameter
//! oracles, plus a brute-force breadth-first search engine to check them against.
//!
//! Vertices are `k`-subsets of a ground set `[n]` with `n <= 64`, so every vertex
//! is a single `u64` and intersection sizes are one `popcount`. Everything in
//! this crate is pure; IO, reports and the command line live in the `kneser`
//! companion crate.
//!
//! ```
//! use kneser_core::{formulas, Distance, ExactParams, KneserParams};
//!
//! // K(11,5): two 5-subsets sharing 2 elements sit 5 hops apart.
//! assert_eq!(formulas::kneser_distance(5, 1, 2).unwrap(), Distance::Finite(5));
//!
//! // In the exact distance-2 graph of K(11,5) only pairs with |A∩B| = 4 are joined.
//! let params = ExactParams::new(KneserParams::new(5, 1).unwrap(), 2).unwrap();
//! let interval = formulas::exact_adjacency_interval(&params).unwrap();
//! assert_eq!(interval.bounds(), Some((4, 4)));
//! ```
#![no_std]

extern crate alloc;

pub mod error;
pub mod formulas;
pub mod graph;
pub mod params;
pub mod subset;

pub use error::Error;
pub use formulas::{AdjInterval, DiameterTriple, Distance, IntersectionBound};
pub use graph::{Budget, DistanceField, DistanceProfile, Graph, GraphMode, IntersectionRule};
pub use params::{
    ExactParams, FamilySpec, GenFamily, GenKneserConvention, GenParams, KneserParams,
};
pub use subset::{binomial, canonical_pair, intersection_size, rank_colex, unrank_colex, Vertex};

pub type Result<T> = core::result::Result<T, Error>;
