use thiserror::Error;

use crate::basis::FailureReason;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures of the order, basis and ideal operations.
///
/// Elements are named by their tokens; indices past the end of a carrier are
/// rendered as `#<index>`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid element name {0:?}: expected a nonempty token of letters, digits and '_'")]
    InvalidElement(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("order relation mentions {0}, which is not in the carrier")]
    DanglingElement(String),
    #[error("relation is not reflexive: ({0}, {0}) is missing")]
    NotReflexive(String),
    #[error("relation is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(String, String),
    #[error("relation is not transitive: {0} <= {1} and {1} <= {2} but not {0} <= {2}")]
    NotTransitive(String, String, String),
    #[error("carrier has {size} elements, above the cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("{0} is in the subset but not in the universe")]
    SubsetEscapesUniverse(String),
    #[error("{0} is not in the universe")]
    ElementNotInUniverse(String),
    #[error("{0} is in the subset but not in the carrier")]
    SubsetEscapesCarrier(String),
    #[error("{0} is in the subset but not in the basis")]
    SubsetEscapesBasis(String),
    #[error("{0} is not in the basis")]
    ElementNotInBasis(String),
    #[error("not a finitary basis: {reason} for {{{}}}", subset.join(","))]
    NotAFinitaryBasis {
        reason: FailureReason,
        subset: Vec<String>,
    },
    #[error("ideal enumeration disagrees with the principal ideals: {0}")]
    PrincipalityMismatch(String),
}
