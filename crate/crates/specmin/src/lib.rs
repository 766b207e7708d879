//! Certified bounds on the minimum number of distinct eigenvalues q(G) over
//! all real symmetric matrices whose off-diagonal zero pattern is the graph G.
//!
//! The crate is organized as a pipeline:
//!
//! * [`graphs`] holds the graph model, family constructors, products, and the
//!   combinatorial predicates the bound engine consumes (unique shortest
//!   paths, zero forcing, Hamilton cycles, independent-set obstructions,
//!   spanning-subgraph embedding, connected-graph enumeration).
//! * [`spectra`] is dense symmetric linear algebra: a Jacobi eigensolver,
//!   eigenvalue clustering into multiplicity lists, pattern membership,
//!   Kronecker products, and tolerant rank.
//! * [`strongprops`] verifies the strong spectral property (SSP) and strong
//!   multiplicity property (SMP) and manages the witness registry used for
//!   spanning-subgraph lifting.
//! * [`constructions`] builds every explicit witness matrix family: flipped
//!   cycles, the signed product block matrices, clique-path and clique-star
//!   matrices, tridiagonal realizations, and bipartite/orthogonal witnesses.
//! * [`search`] finds in-pattern matrices with a prescribed spectrum or
//!   multiplicity list by seeded Levenberg-Marquardt, including the
//!   vertex-augmentation pipeline.
//! * [`catalog`] embeds the reference matrices and table data and seeds the
//!   registry.
//! * [`bounds`] combines everything into certified intervals with provenance.
//! * [`cli`] is the command-line front end.

pub mod bounds;
pub mod catalog;
pub mod cli;
pub mod constructions;
pub mod graphs;
pub mod search;
pub mod spectra;
pub mod strongprops;

/// Crate-wide error type. Variants mirror the failure modes named in the
/// module contracts so CLI and FFI layers can map them to stable codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("order mismatch: {0}")]
    OrderMismatch(String),
    #[error("missing element: {0}")]
    MissingElement(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("multiplicity mismatch: {0}")]
    MultiplicityMismatch(String),
    #[error("spectrum not symmetric about zero")]
    SpectrumNotSymmetric,
    #[error("nonzero diagonal entry required: {0}")]
    ZeroDiagonalEntry(String),
    #[error("diagonal must be zero: {0}")]
    NonzeroDiagonal(String),
    #[error("spectrum is not a consecutive integer run: {0}")]
    SpectrumNotConsecutiveIntegers(String),
    #[error("degree condition violated: {0}")]
    DegreeConditionViolated(String),
    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("realization failed: {0}")]
    RealizationFailed(String),
    #[error("catalog corrupt: {0}")]
    CatalogCorrupt(String),
    #[error("infeasible report for {graph}: lo {lo} > hi {hi}")]
    InfeasibleReport { graph: String, lo: u32, hi: u32 },
    #[error("count mismatch: {0}")]
    CountMismatch(String),
    #[error("unknown key: {0}")]
    UnknownKey(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("eigensolver failed to converge after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
