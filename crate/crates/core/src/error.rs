use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero polynomial")]
    ZeroDenominator,
    #[error("resultant of the zero polynomial")]
    ZeroResultant,
    #[error("composition lands on a pole: the result is the constant infinity")]
    ConstantInfinity,
    #[error("iterate degree cap: degree {degree} exceeds {cap}")]
    IterateDegreeCap { degree: u64, cap: u64 },
    #[error("conjugator must be degree 1")]
    NotMobius,
    #[error("non-composable jets: target {target} differs from source {source_point}")]
    NonComposableJets { target: String, source_point: String },
    #[error("jet orders differ ({0} vs {1})")]
    JetOrderMismatch(usize, usize),
    #[error("jet undefined at this point (not invertible)")]
    JetUndefined,
    #[error("invalid jet: {0}")]
    InvalidJet(String),
    #[error("field: {0}")]
    Field(String),
    #[error("root isolation did not converge at {precision} bits; retry with at least {required} bits")]
    Precision { precision: u32, required: u32 },
    #[error("no exact-field repelling point found; retry numerically or raise cap")]
    NoRepellingPoint,
    #[error("resonant multiplier: lambda^{0} = lambda")]
    ResonantMultiplier(usize),
    #[error("not repelling: |lambda| <= 1")]
    NotRepelling,
    #[error("base point is critical")]
    CriticalPoint,
    #[error("coefficient has a pole at the base point; choose another point (see repelling_point_avoiding)")]
    PoleAtBasePoint,
    #[error("series precondition: {0}")]
    Series(String),
    #[error("singular cubic: g2^3 - 27 g3^2 = 0")]
    SingularCubic,
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("unknown family case {0}")]
    UnknownCase(u8),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid caps: {0}")]
    Caps(String),
}

pub type Result<T> = std::result::Result<T, Error>;
