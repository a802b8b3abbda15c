use thiserror::Error;

/// Errors raised by the exact kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("radicand of `{0}` is already a square in the subtower")]
    DegenerateExtension(String),
    #[error("malformed tower spec: {0}")]
    MalformedSpec(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to incompatible towers")]
    TowerMismatch,
    #[error("element is not a square in the tower")]
    NotASquare,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("order of vanishing of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("roots lie outside the tower: {0}")]
    FieldTooSmall(String),
    #[error("inputs are identical")]
    IdenticalInputs,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("points are not distinct")]
    NotDistinct,
    #[error("point is singular on the curve")]
    SingularPoint,
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("point does not lie on both curves")]
    PointNotOnBoth,
    #[error("line is a component of the curve")]
    ComponentLine,
    #[error("curve degree too small: {0}")]
    DegenerateCurve(String),
    #[error("curves share a common component")]
    CommonComponent,
    #[error("intersection patterns disagree across coordinate changes")]
    ProjectionCollision,
    #[error("unexplained common point of three conics: {0}")]
    UnexplainedCoincidence(String),
    #[error("certificate failed at clause {0}")]
    CertificateFailure(String),
    #[error("Hilbert numerator inconsistent: {0}")]
    SpecInconsistent(String),
    #[error("zero locus mismatch: {0}")]
    MismatchedLocus(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
