use thiserror::Error;

/// Everything that can go wrong in the core crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size {0} exceeds 64")]
    GroundSetTooLarge(u32),
    #[error("element {element} outside ground set 1..={n}")]
    ElementOutOfRange { element: u32, n: u32 },
    #[error("duplicate element {0}")]
    DuplicateElement(u32),
    #[error("vertices over different ground sets ({left} vs {right})")]
    GroundSizeMismatch { left: u32, right: u32 },
    #[error("expected a {expected}-subset, found {found} elements")]
    WrongCardinality { expected: u32, found: u32 },
    #[error("rank {rank} out of range 0..{count}")]
    RankOutOfRange { rank: u64, count: u64 },
    #[error("intersection size {s} out of range 0..={k}")]
    IntersectionOutOfRange { s: u32, k: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("d exceeds diameter {diameter}")]
    DistanceExceedsDiameter { d: u32, diameter: u32 },
    #[error("outside theorem domain: {0}")]
    OutsideDomain(&'static str),
    #[error("vertex budget exceeded: {vertices} vertices > budget {budget}")]
    BudgetExceeded { vertices: u64, budget: u64 },
    #[error("vertex {vertex} out of range 0..{count}")]
    VertexOutOfRange { vertex: u64, count: u64 },
    #[error("self loop at vertex {0}")]
    SelfLoop(u64),
}
