//! Error types shared across the crate.

use thiserror::Error;

/// Top-level error for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge at vertex {v}")]
    LoopEdge { v: usize },
    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("order {n} must be odd")]
    EvenOrder { n: usize },
    #[error("order {n} too small, need at least {min}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("not a candidate blocker: expected {expected} edges, got {actual}")]
    WrongCardinality { expected: usize, actual: usize },
    #[error("malformed edge token {token:?}, expected \"a-b\"")]
    EdgeSyntax { token: String },
    #[error("edge [{a},{b}] is not a boundary edge of the {n}-gon")]
    NotBoundaryEdge { a: usize, b: usize, n: usize },
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(#[from] DescriptorViolation),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("descriptor collision: two descriptors generate the same edge set {0}")]
    DescriptorCollision(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}

/// First violated descriptor constraint, named individually so callers and
/// tests can distinguish which rule failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescriptorViolation {
    #[error("order 2m-1 requires m >= 2, got m = {m}")]
    OrderTooSmallForFamily { m: usize },
    #[error("rotation k = {k} out of range 0..{n}")]
    RotationRange { k: usize, n: usize },
    #[error("eps must have length alpha = {alpha}, got {actual}")]
    EpsLength { alpha: usize, actual: usize },
    #[error("xi must have length delta = {delta}, got {actual}")]
    XiLength { delta: usize, actual: usize },
    #[error("alpha + delta = {sum} exceeds m - 2 = {limit}")]
    AlphaDeltaSum { sum: usize, limit: usize },
    #[error("alpha + delta = {sum} exceeds m - 5 = {limit}")]
    AlphaDeltaSumClassB { sum: usize, limit: usize },
    #[error("eps is not strictly decreasing at position {i}")]
    EpsNotStrictlyDecreasing { i: usize },
    #[error("eps_{i} = {value} below lower bound {bound}")]
    EpsLowerBound { i: usize, value: i64, bound: i64 },
    #[error("eps_{i} = {value} above upper bound {bound}")]
    EpsUpperBound { i: usize, value: i64, bound: i64 },
    #[error("xi is not strictly decreasing at position {j}")]
    XiNotStrictlyDecreasing { j: usize },
    #[error("xi_{j} = {value} below lower bound {bound}")]
    XiLowerBound { j: usize, value: i64, bound: i64 },
    #[error("xi_{j} = {value} above upper bound {bound}")]
    XiUpperBound { j: usize, value: i64, bound: i64 },
    #[error("eps_1 + xi_1 = {sum} exceeds m - 2 = {limit}")]
    JointEpsXi { sum: i64, limit: i64 },
    #[error("beta = {beta} must be at least 2")]
    BetaTooSmall { beta: usize },
    #[error("gamma = {gamma} must be at least 2")]
    GammaTooSmall { gamma: usize },
    #[error("beta + gamma = {sum} must equal m - alpha - delta - 1 = {expected}")]
    BetaGammaSum { sum: usize, expected: usize },
    #[error("eta = {eta} outside 1..=min(beta-1, gamma-1) = {limit}")]
    EtaRange { eta: usize, limit: i64 },
    #[error("broken descriptor needs m - alpha - delta >= 5, got {value}")]
    BrokenBackboneTooShort { value: i64 },
    #[error("break position beta = {beta} leaves a run shorter than 2")]
    BreakPositionRange { beta: usize },
    #[error("bridge width eta = {eta} outside 1..min(beta, gamma) = {limit}")]
    BridgeWidthRange { eta: usize, limit: i64 },
    #[error("diagonal {nu} anchors at {i} outside the upper backbone run 1..={limit}")]
    AnchorNotInUpperRun { nu: usize, i: usize, limit: i64 },
    #[error("diagonal {nu} anchors at {i} outside the lower backbone run {low}..={high}")]
    AnchorNotInLowerRun { nu: usize, i: usize, low: i64, high: i64 },
    #[error("alt diagonal chain not weakly increasing at position {nu}")]
    AltChainNotIncreasing { nu: usize },
    #[error("alt diagonal i_{nu} = {i} outside 1..={limit}")]
    AltChainRange { nu: usize, i: i64, limit: i64 },
    #[error("alt diagonal j_{nu} = {j} does not match i_{nu} = {i}")]
    AltSpanMismatch { nu: usize, i: i64, j: i64 },
    #[error("alt description lengths inconsistent: {detail}")]
    AltLengths { detail: String },
}
