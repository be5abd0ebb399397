use thiserror::Error;

/// Domain errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TorificError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("monoid is not pointed: {0}")]
    NotPointed(String),

    #[error("monoid is not sharp: {0}")]
    NotSharp(String),

    #[error("not a face of the monoid: {0}")]
    NotAFace(String),

    #[error("not a facet of the monoid: {0}")]
    NotAFacet(String),

    #[error("element is not a member of the monoid: {0}")]
    NotMember(String),

    #[error("membership search exhausted its budget: {0}")]
    UndecidedMembership(String),

    #[error("search exhausted its budget: {0}")]
    SearchExhausted(String),

    #[error("ideal is the zero ideal: {0}")]
    ZeroIdeal(String),

    #[error("ideal is not prime: {0}")]
    NotPrime(String),

    #[error("parent monoid is not saturated: {0}")]
    NotSaturatedParent(String),

    #[error("no saturation threshold found under the cap: {0}")]
    ThresholdSearchExhausted(String),

    #[error("equivalent criteria disagree (internal invariant violated): {0}")]
    CriterionMismatch(String),

    #[error("blowup produced a component with no matching facet: {0}")]
    UnknownComponent(String),

    #[error("map does not define an automorphism of the fan: {0}")]
    NotAnAutomorphism(String),

    #[error("group map is not surjective, check skipped: {0}")]
    NotSurjective(String),

    #[error("character multiset contains zero: {0}")]
    ZeroCharacterInSigma(String),

    #[error("character multiset is not balanced: {0}")]
    NotBalanced(String),

    #[error("ray lies outside the support of the fan: {0}")]
    RayOutsideSupport(String),
}

pub type Result<T> = std::result::Result<T, TorificError>;
