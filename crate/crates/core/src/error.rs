use core::fmt;

use crate::geometry::{LatticePoint, Slope};
use crate::monomial_module::Side;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate edge ({dx}, {dy}): both displacements must be positive")]
    DegenerateEdge { dx: i64, dy: i64 },
    #[error("empty generator set")]
    EmptyGeneratorSet,
    #[error("point {0} lies outside the positive quadrant")]
    NotInPositiveQuadrant(LatticePoint),
    #[error("ideal is not integrally closed")]
    NotIntegrallyClosed,
    #[error("integer overflow")]
    OverflowDetected,
    #[error("no shifted generator lies in the positive quadrant for shift {shift}")]
    EmptyTruncation { shift: i64 },
    #[error("module is not admissible: {0}")]
    NonAdmissibleModule(Violation),
    #[error("invalid slope {numerator}/{denominator}: both parts must be positive")]
    InvalidSlope { numerator: i64, denominator: i64 },
    #[error("edge slopes must strictly increase along a boundary path (edge {index})")]
    NonConvexPath { index: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

/// The condition a module description failed to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The limit boundary has an unbounded face that is not parallel to an axis.
    UnboundedSkewFace { slope: Slope },
    /// Slopes on one side are not in strict enumeration order.
    SlopeOrder { side: Side, index: usize },
    /// A factor was given with multiplicity zero.
    ZeroMultiplicity { side: Side, index: usize },
    /// Some left slope is not strictly below every right slope.
    SidesOverlap { left: Slope, right: Slope },
    /// A family parameter is out of range.
    FamilyParameter(&'static str),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnboundedSkewFace { slope } => write!(
                f,
                "the boundary has an unbounded face of slope {slope} that is not parallel to an axis"
            ),
            Violation::SlopeOrder { side, index } => write!(
                f,
                "{side} factor {index} breaks the strict slope order of its side"
            ),
            Violation::ZeroMultiplicity { side, index } => {
                write!(f, "{side} factor {index} has multiplicity zero")
            }
            Violation::SidesOverlap { left, right } => write!(
                f,
                "left slope {left} is not below right slope {right}"
            ),
            Violation::FamilyParameter(what) => write!(f, "bad family parameter: {what}"),
        }
    }
}

pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::OverflowDetected)
}

pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::OverflowDetected)
}

pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::OverflowDetected)
}

pub(crate) fn to_i64(v: u64) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::OverflowDetected)
}
