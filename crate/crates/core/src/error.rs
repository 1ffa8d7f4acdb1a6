use thiserror::Error;

/// Errors raised by lattice, mass and rule operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("frame must contain at least one hypothesis")]
    EmptyFrame,
    #[error("frame has {0} hypotheses, at most {max} are supported", max = crate::lattice::MAX_FRAME)]
    FrameTooLarge(usize),
    #[error("duplicate hypothesis label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid hypothesis label `{0}`")]
    InvalidLabel(String),
    #[error("frame mismatch: expected {expected} hypotheses, found {found}")]
    FrameMismatch { expected: usize, found: usize },
    #[error("hypothesis index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{0} is undefined for the empty element")]
    UndefinedForEmpty(&'static str),

    #[error("masses sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("negative mass {mass} on `{element}`")]
    NegativeMass { element: String, mass: f64 },
    #[error("mass {mass} on the empty set requires an open-world assignment")]
    EmptySetMass { mass: f64 },
    #[error("at least {needed} sources are required, got {got}")]
    TooFewSources { needed: usize, got: usize },

    #[error("sources are in total conflict (k = {k}); the rule is undefined")]
    TotalConflict { k: f64 },
    #[error("rule `{rule}` is only defined for {arity} sources, got {got}")]
    UnsupportedArity {
        rule: &'static str,
        arity: usize,
        got: usize,
    },
    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },
    #[error("rule `{0}` requires closed-world sources (no mass on the empty set)")]
    ClosedWorldRequired(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
