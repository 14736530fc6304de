//! Error and certificate types shared across the crate.
//!
//! Validation failures carry enough context to name the offending axiom and
//! the witnesses, so reports can print actionable certificates instead of a
//! bare `false`.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CoreError>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CoreError {
    #[error("order relation has a cycle: {}", cycle.join(" <= "))]
    OrderCycle { cycle: Vec<String> },

    #[error("too many irreducibles: {found} (limit {limit})")]
    TooManyIrreducibles { found: usize, limit: usize },

    #[error("operands belong to different frames")]
    FrameMismatch,

    #[error("structure too large to enumerate ({what})")]
    TooLarge { what: String },

    #[error("generating set does not cover: join of `{cover}` is not top")]
    NotCovering { cover: String },

    #[error("base is not directed: no base member refines `{left}` ∩ `{right}`")]
    NotDirected { left: String, right: String },

    #[error("no strong star refinement found for base cover `{cover}`")]
    NoStarRefinement { cover: String },

    #[error("entourage `{entourage}` is not reflexive: misses the diagonal at `{witness}`")]
    NotReflexive { entourage: String, witness: String },

    #[error("no symmetric companion in the filter for entourage `{entourage}`")]
    NoSymmetricCompanion { entourage: String },

    #[error("no transitivity witness F with F∘F ≤ `{entourage}`")]
    NoTransitivityWitness { entourage: String },

    #[error("empty uniformity base")]
    EmptyBase,

    #[error("map is not a frame homomorphism: {reason}")]
    NotFrameHom { reason: String },

    #[error("map has no left adjoint: fails to preserve meets at {witness}")]
    NoLeftAdjoint { witness: String },

    #[error("metric axiom violated: {axiom} at ({x}, {y}, {z})")]
    MetricAxiom {
        axiom: String,
        x: String,
        y: String,
        z: String,
    },

    #[error("neighbourhood does not contain the group identity")]
    MissingIdentity,

    #[error("relation is not interpolative at ({left}, {right})")]
    NotInterpolative { left: String, right: String },

    #[error("relation is not contained in rather-below at ({left}, {right})")]
    NotRatherBelow { left: String, right: String },

    #[error("target structure is not admissible")]
    NotAdmissible,

    #[error("map is not a uniform morphism: {reason}")]
    NotUniformMorphism { reason: String },

    #[error("map is not a uniform embedding: {reason}")]
    NotUniformEmbedding { reason: String },

    #[error("map is not strongly dense: positive `{witness}` maps to bottom")]
    NotStronglyDense { witness: String },

    #[error("presentation refers to undeclared generator {index}")]
    UnknownGenerator { index: usize },

    #[error("interval is empty: lower bound {lo} is not below upper bound {hi}")]
    EmptyInterval { lo: String, hi: String },

    #[error("precision must be positive, got {0}")]
    NonpositivePrecision(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("p-adic operands use different primes: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Unsupported(String),
}

impl CoreError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        CoreError::Parse {
            line,
            msg: msg.into(),
        }
    }
}
