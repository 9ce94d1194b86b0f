use thiserror::Error;

/// Errors raised across the crate. Every variant names the module that
/// produced it together with the offending slot, vertex or field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quiver: {0}")]
    InvalidQuiver(String),

    #[error("quiver: height function violated on arrow {source_vertex}->{target}")]
    HeightMismatch { source_vertex: String, target: String },

    #[error("config: field `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("{module}: window too small: {detail}")]
    WindowTooSmall { module: &'static str, detail: String },

    #[error("ar_knit: two projectives ({first}, {second}) match the mesh at {slot}")]
    AmbiguousProjectiveInsertion {
        slot: String,
        first: String,
        second: String,
    },

    #[error("ar_knit: dimension vector {dim} identifies {count} stable vertices")]
    AmbiguousIdentification { dim: String, count: usize },

    #[error("ar_knit: knitting failed at {slot}: {detail}")]
    KnitFailure { slot: String, detail: String },

    #[error("{module}: no vertex at {what}")]
    UnknownVertex { module: &'static str, what: String },

    #[error("orbits_strata: pair is not dominant at projective slot {slot} (defect {defect})")]
    NotDominant { slot: String, defect: i64 },

    #[error("orbits_strata: W is nonzero at {slot}, which is not the image of a projective")]
    WSupportNotProjective { slot: String },

    #[error("orbits_strata: {0}")]
    Inconsistent(String),

    #[error("qchar: monomial is not dominant at {slot} (exponent {exponent})")]
    MonomialNotDominant { slot: String, exponent: i64 },

    #[error("projectivization: path length cap {cap} exceeded between {from} and {to}")]
    CapExceeded { cap: usize, from: String, to: String },

    #[error("oracle: projective cover not surjective after {attempts} attempts")]
    CoverNotSurjective { attempts: usize },

    #[error("oracle: injective envelope not injective after {attempts} attempts")]
    EnvelopeNotInjective { attempts: usize },

    #[error("oracle: {0}")]
    Oracle(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
