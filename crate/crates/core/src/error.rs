use thiserror::Error;

use crate::series::Exponent;

/// Errors raised by the series engine, the builders and the catalog.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid order {order}: must be at least {min}")]
    InvalidOrder { order: Exponent, min: Exponent },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: String,
        value: i64,
        reason: String,
    },

    #[error("series vanishes up to q^{order}; it has no inverse")]
    NonInvertible { order: Exponent },

    #[error("coefficient of q^{exponent} is untrusted (series is known up to q^{order})")]
    UntrustedCoefficient { exponent: Exponent, order: Exponent },

    #[error("cannot compare up to q^{requested}: the series are only trusted up to q^{trusted}")]
    InvalidComparison {
        requested: Exponent,
        trusted: Exponent,
    },

    #[error("infinite product starting at q^{first} does not converge formally")]
    DivergentProduct { first: Exponent },

    #[error(
        "term ({m}, {n}) has a nonzero coefficient at q^{actual}, below its declared minimum exponent {declared}"
    )]
    ContractViolation {
        m: i64,
        n: i64,
        declared: Exponent,
        actual: Exponent,
    },

    #[error("unknown series '{name}'; valid names: {valid}")]
    UnknownSeries { name: String, valid: String },

    #[error("unknown catalog id '{id}'; valid ids: {valid}")]
    UnknownId { id: String, valid: String },

    #[error("order {order} exceeds the engine limit {limit} for '{id}'")]
    EngineLimit {
        id: String,
        order: Exponent,
        limit: Exponent,
    },

    #[error("malformed parameters: {0}")]
    MalformedParams(String),

    #[error("invalid Frobenius symbol: {0}")]
    InvalidSymbol(String),

    #[error("'{id}' produced a nonzero coefficient at negative exponent q^{exponent}")]
    NegativeExponent { id: String, exponent: Exponent },

    #[error("'{id}' is a {kind} entry and cannot be used with {operation}")]
    WrongKind {
        id: String,
        kind: String,
        operation: String,
    },

    #[error("malformed series: {0}")]
    MalformedSeries(String),
}

pub type Result<T> = std::result::Result<T, Error>;
