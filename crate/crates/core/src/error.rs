use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("({x},{y}) is not a primitive direction")]
    NotPrimitive { x: i64, y: i64 },
    #[error("no points given")]
    EmptyInput,
    #[error("polygon is not full-dimensional")]
    Degenerate,
    #[error("matrix determinant {det} is not ±1")]
    NotUnimodular { det: i64 },
    #[error("integer overflow while transforming polygon")]
    Overflow,
    #[error("edge index {index} out of range for {len} edges")]
    EdgeIndexOutOfRange { index: usize, len: usize },
    #[error("shape parameters undefined: {0}")]
    ShapePrecondition(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("ray {index} is not primitive")]
    NonPrimitiveRay { index: usize },
    #[error("ray {index} repeats an earlier ray")]
    DuplicateRay { index: usize },
    #[error("a fan needs at least three rays")]
    TooFewRays,
    #[error("rays are not in cyclic angular order (at ray {index})")]
    NotCounterClockwise { index: usize },
    #[error("rays {index} and {next} span an angle of at least π")]
    NotComplete { index: usize, next: usize },
    #[error("rays {index} and {next} have determinant {det}, not 1")]
    NotSmooth { index: usize, next: usize, det: i64 },
    #[error("{coeffs} coefficients given for {rays} rays")]
    CoefficientCount { rays: usize, coeffs: usize },
    #[error("the divisor has an empty polytope")]
    EmptyPolytope,
    #[error("divisor is not nef (coefficient {index} exceeds the support value)")]
    NotNef { index: usize },
    #[error("the fan has no opposite ray pairs, so no toric fibrations")]
    NoFibrations,
    #[error("polygon is not full-dimensional")]
    DegeneratePolygon,
    #[error("ray index {index} out of range")]
    RayIndexOutOfRange { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("polygon is not full-dimensional")]
    DegeneratePolygon,
    #[error("pencil directions are only defined on the generic and hyperelliptic branches, not {0}")]
    BranchMismatch(String),
    #[error("census violation: {0}")]
    CensusViolation(String),
    #[error("the curve is not relatively minimal on the resolved normal fan")]
    NotRelativelyMinimal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid trigonal model: {0}")]
    Invalid(String),
    #[error("missing parameter `{0}` for this case")]
    MissingParameter(&'static str),
    #[error("beta = {0} is even")]
    BetaEven(i64),
    #[error("swept gaps {swept:?} differ from the closed form {closed:?}")]
    ClosedFormMismatch { swept: Vec<i64>, closed: Vec<i64> },
    #[error("no gap sequence for m = {m}, g = {g}")]
    EmptyRange { m: i64, g: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("normal form violated: {0}")]
    NormalFormViolation(&'static str),
    #[error("beta = {0} is even")]
    BetaEven(usize),
    #[error("order of 4A³+27B² is {order}, not beta = {beta}")]
    DiscriminantOrderMismatch { order: usize, beta: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("max coordinate {requested} exceeds the cap {cap}")]
    CapExceeded { requested: i64, cap: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Text { line: usize, msg: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("coordinate {0} exceeds the supported range")]
    OutOfRange(i64),
    #[error("no points given")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlotError {
    #[error("extent {extent} exceeds the plotting limit {limit}")]
    TooLarge { extent: i64, limit: i64 },
}
