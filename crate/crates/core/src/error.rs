use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational {0:?}: expected \"num\" or \"num/den\"")]
    ParseRational(String),

    #[error("cannot parse partition {0:?}: expected comma-separated weakly decreasing positive integers")]
    ParsePartition(String),

    #[error("unknown module label {0:?} (expected h0, h1/2 or h1/16)")]
    UnknownModule(String),

    #[error("vectors live in different weight spaces ({left} vs {right})")]
    WeightMismatch { left: u32, right: u32 },

    #[error("vectors belong to different Verma modules")]
    SpecMismatch,

    #[error("t-substitution by q^{shift} needs q-exponent denominator {needed}, series uses {have}")]
    ScaleResolution { shift: String, needed: u64, have: u64 },

    #[error("substituting t -> t q^n with half-integral n needs an even t-offset d, got d = {0}")]
    OddTOffset(u32),

    #[error("generator at weight {weight} is not singular: L_{mode} does not annihilate it")]
    NotSingular { weight: u32, mode: i32 },

    #[error("q-truncation {q_truncation} is smaller than max weight {max_weight}")]
    TruncationTooSmall { q_truncation: u32, max_weight: u32 },

    #[error("no singular vector found at level {level} for c = {c}, h = {h}")]
    MissingSingularVector { c: String, h: String, level: u32 },

    #[error("{0}")]
    Inconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
