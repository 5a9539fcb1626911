//! Construction, certification and search for large circulant graphs of
//! given degree and diameter.
//!
//! A circulant graph is a Cayley graph of a cyclic group Z_n. The crate
//! builds record-order graphs from direct-product and stitching
//! constructions, verifies diameters by breadth-first search, maintains a
//! table of published record orders, and runs exhaustive or heuristic
//! searches for small parameters.

pub mod bounds;
pub mod builders;
pub mod cyclic;
pub mod jsonl;
pub mod metrics;
pub mod records;
pub mod search;
pub mod stitching;
pub mod sumsets;
pub mod torus;

pub use cyclic::{CirculantGraph, ConnectionSet, ResidueVector};
pub use metrics::{bfs_profile, diameter, verify_diameter_at_most, DistanceProfile};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u128),
    #[error("generator {gen} reduces to 0 mod {n}")]
    ZeroGenerator { gen: u128, n: u128 },
    #[error("generator set is empty after reduction")]
    EmptySet,
    #[error("connection set not closed under negation mod {n}: {element} present, {missing} absent")]
    Asymmetric { element: u128, missing: u128, n: u128 },
    #[error("moduli not pairwise coprime: gcd({a}, {b}) > 1")]
    NotCoprime { a: u128, b: u128 },
    #[error("modulus product overflows 128 bits")]
    ModulusOverflow,
    #[error("residue {residue} out of range for modulus {modulus}")]
    ResidueRange { residue: u128, modulus: u128 },
    #[error("value {value} out of range [0, {bound})")]
    ValueRange { value: u128, bound: u128 },
    #[error("multiplier {u} not invertible mod {n}")]
    BadMultiplier { u: u128, n: u128 },
    #[error("graph order {0} too large to address")]
    TooLarge(u128),
    #[error("work cap exceeded: {needed} edge traversals needed, cap {cap}")]
    WorkCap { needed: u128, cap: u64 },
    #[error("graph disconnected: {unreached} of {n} vertices unreachable from 0")]
    Disconnected { unreached: u128, n: u128 },
    #[error("distance exceeds {0}; distances are stored in one byte")]
    DistanceOverflow(u32),
    #[error("invalid torus parameters: {0}")]
    BadTorus(String),
    #[error("no decomposition of ({x}, {y}) within coefficient bounds")]
    NoDecomposition { x: u128, y: u128 },
    #[error("invalid ladder: {0}")]
    BadLadder(String),
    #[error("invalid base set: {0}")]
    BadBase(String),
    #[error("base set fails the length-{k} cover of Z_{w}")]
    CoverFailure { w: u128, k: usize },
    #[error("family {family}, q={q}: {reason}")]
    BadFamilyQ {
        family: &'static str,
        q: u64,
        reason: String,
    },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("stitching requires inputs of the same orientation")]
    OrientationMismatch,
    #[error("stitch input claims diameter {claimed} but BFS finds {actual}")]
    DiameterClaim { claimed: u32, actual: u32 },
    #[error("stitching needs at least two parts, got {0}")]
    TooFewParts(usize),
    #[error("record table corrupt: checksum mismatch")]
    RecordChecksum,
    #[error("record table line {line}: {reason}")]
    RecordParse { line: usize, reason: String },
    #[error("invalid graph object: {0}")]
    GraphFormat(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
