use std::fmt;

use thiserror::Error;

use crate::arith::{BinForm, CirclePoint};
use crate::weierstrass::KodairaType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("zero form")]
    ZeroForm,
    #[error("interval does not isolate exactly one root")]
    BadInterval,
}

/// Where a triple fails the minimality condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonMinimalWitness {
    /// A real point (rational, algebraic or ∞).
    Point(CirclePoint),
    /// A common factor without real roots.
    Factor(BinForm),
}

impl fmt::Display for NonMinimalWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonMinimalWitness::Point(c) => write!(f, "u={c}"),
            NonMinimalWitness::Factor(g) => write!(f, "factor {g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeierstrassError {
    #[error("k must be positive")]
    InvalidK,
    #[error("{which} has degree {got}, expected {expected}")]
    DegreeMismatch { which: &'static str, expected: usize, got: usize },
    #[error("discriminant 4p^3 + 27q^2 is identically zero")]
    DeltaIdenticallyZero,
    #[error("non-minimal Weierstrass data at {0} (v(p) >= 4 and v(q) >= 6)")]
    NonMinimal(NonMinimalWitness),
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("not real-generic: non-nodal real fibers at {}", format_offenders(.0))]
    NotRealGeneric(Vec<(CirclePoint, KodairaType)>),
    #[error("discriminant has no real roots")]
    NoRealSingularFibers,
    #[error("fiber at {0} is not nodal")]
    NotNodal(CirclePoint),
    #[error("fiber at {0} is singular")]
    SingularFiber(CirclePoint),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
}

fn format_offenders(v: &[(CirclePoint, KodairaType)]) -> String {
    v.iter()
        .map(|(c, t)| format!("{c} ({t})"))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("invalid I0* parameters: {0}")]
    InvalidParams(String),
    #[error("target of {target} components exceeds the bound 5k = {bound}")]
    TargetExceedsBound { target: u32, bound: u32 },
    #[error("no surface found after {tried} candidates")]
    NotFound { tried: u64 },
    #[error(transparent)]
    Weierstrass(#[from] WeierstrassError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}
