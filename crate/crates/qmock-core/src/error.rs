//! Error type shared by every module of the engine.
//!
//! All arithmetic here is exact, so "errors" are structural: an attempt to
//! invert a series with no leading term, a comparison past the certified
//! precision window, a non-generic specialization that would place a pole
//! in an Appell-Lerch term, and so on. None of these are recoverable by
//! retrying; they indicate the caller asked for something undefined.

use crate::series::Order;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QError {
    /// Inversion of a series that is zero to its certified order.
    #[error("zero leading term: series is zero to its order, cannot invert")]
    ZeroLeadingTerm,

    /// An operand's certified order is too low for the requested window.
    #[error("insufficient precision: need order {needed}, operand certified to {have}")]
    InsufficientPrecision { needed: i64, have: Order },

    /// An infinite Pochhammer product contains the factor 1 - q^0 = 0.
    #[error("zero factor: infinite product contains 1 - q^0 (argument q^{exp} with step {step})")]
    ZeroFactor { exp: i64, step: i64 },

    /// Guard against an infinite product whose factor exponents never grow.
    #[error("non-terminating product (step {step})")]
    NonTerminating { step: i64 },

    /// An Appell-Lerch term 1/(1 - q^{(r-1)m} x z) degenerates to 1/(1 - q^0)
    /// with positive sign: the specialization is not generic.
    #[error("pole in Appell-Lerch sum at bilateral index r = {r}")]
    PoleAtTerm { r: i64 },

    /// A power of a +/- q^k argument failed to reduce to +/- q^k again.
    #[error("argument power does not reduce to a signed power of q")]
    NonThetaPower,

    /// A theta function appearing in a denominator is identically zero.
    #[error("division by vanishing theta function {symbol}")]
    DivisionByZeroTheta { symbol: String },

    /// A Bailey-lemma rho specialization makes (aq/rho)_n or a related
    /// product vanish.
    #[error("non-generic rho: vanishing factor {factor}")]
    NonGenericRho { factor: String },

    /// A constructor's hypothesis on the input pair does not hold.
    #[error("precondition failed: {what}")]
    PreconditionFailed { what: String },

    #[error("unknown Bailey pair id `{id}`")]
    UnknownPairId { id: String },

    #[error("unknown id `{id}`")]
    UnknownId { id: String },

    /// A limiting-form sum whose term exponents never pass the window;
    /// usually means a starred (averaged) sum reached the plain entry point.
    #[error("non-convergent sum: {what}")]
    NonConvergent { what: String },

    /// Even/odd partial sums of a starred series failed to stabilize.
    #[error("starred sum failed to stabilize for `{id}` within {cap} rows")]
    StabilizationFailure { id: String, cap: usize },

    /// Row cap exceeded while accumulating a double sum.
    #[error("row cap {cap} exceeded while summing `{id}`")]
    RowCapExceeded { id: String, cap: usize },

    #[error("parse error: {what}")]
    Parse { what: String },
}

pub type Result<T> = std::result::Result<T, QError>;
