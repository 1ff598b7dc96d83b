use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} outside {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("coefficient fields do not match")]
    FieldMismatch,
}

/// Polynomial text that does not follow the grammar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{var}` at position {pos}")]
    UnknownVariable { pos: usize, var: char },
    #[error("exponent overflow at position {pos}")]
    ExponentOverflow { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial has degree {degree}, above target {target}")]
    DegreeTooHigh { degree: u32, target: u32 },
    #[error("point has {got} coordinates, polynomial has {expected} variables")]
    PointLength { got: usize, expected: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("division is not exact")]
    InexactDivision,
    #[error("expected {expected} variables, got {got}")]
    VariableCount { expected: usize, got: usize },
}

/// Failures of the curve-level algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("all partial derivatives vanish")]
    ZeroJacobian,
    #[error("degree {d} outside the supported range {lo}..={hi}")]
    DegreeOutOfRange { d: u32, lo: u32, hi: u32 },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("division by a factor is not exact: {0}")]
    InexactDivision(String),
    #[error("linear system has no solution: {0}")]
    InconsistentSystem(String),
    #[error("singular locus not finite in the affine chart after {attempts} coordinate changes")]
    ShapeFailure { attempts: usize },
    #[error("singular points at infinity in every chart tried ({attempts} attempts)")]
    PointsAtInfinity { attempts: usize },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
