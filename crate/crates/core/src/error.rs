use thiserror::Error;

/// Failures of exact field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero in Q(zeta_{order})")]
    DivisionByZero { order: u32 },
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },
    #[error("cannot coerce from Q(zeta_{from}) to Q(zeta_{to}): {from} does not divide {to}")]
    IncompatibleCoercion { from: u32, to: u32 },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
}

/// Structural problems with a slice diagram.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("slice {slice}: {message}")]
    Invalid { slice: usize, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("unknown builtin diagram `{0}`")]
    UnknownBuiltin(String),
    #[error("expected {expected} entries (one per component), got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("diagram is not closed (bottom {bottom}, top {top} strands)")]
    NotClosed { bottom: usize, top: usize },
}

/// Errors raised while evaluating invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("color {color} out of range 1..={max}")]
    ColorOutOfRange { color: u32, max: u32 },
    #[error("level must be at least 2, got {0}")]
    BadLevel(u32),
    #[error("exact computation is only available at level 4 (requested level {0}); use approximate mode")]
    ApproximateOnly(u32),
    #[error("operator signature mismatch: {0}")]
    Signature(String),
    #[error("invalid linking matrix: {0}")]
    LinkingMatrix(String),
    #[error("skein recursion budget of {budget} steps exceeded")]
    RecursionBudget { budget: usize },
    #[error("expected a two-component link, got {0} components")]
    NotTwoComponents(usize),
    #[error("skein value {value} has modulus matching neither 0 nor sqrt(2^(n-1)) for n = {components}")]
    ConventionAnomaly { value: String, components: usize },
}
