use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::rational::Rational;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Why a divisor was rejected as not pseudo-effective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotPseudoEffective {
    /// The accumulated support stopped being negative definite.
    IndefiniteSupport { support: Vec<String> },
    /// A support coefficient came out non-positive at the stable state.
    NonPositiveCoefficient { label: String, coefficient: Rational },
    /// The nef part is not in the closed positive half-cone.
    NefPartOutsidePositiveCone { square: Rational, degree: Rational },
}

impl core::fmt::Display for NotPseudoEffective {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::IndefiniteSupport { support } => {
                write!(f, "Gram matrix of the support {{{}}} is not negative definite", support.join(", "))
            }
            Self::NonPositiveCoefficient { label, coefficient } => {
                write!(f, "coefficient of `{label}` in the negative part is {coefficient}, not positive")
            }
            Self::NefPartOutsidePositiveCone { square, degree } => {
                write!(f, "nef part has P² = {square} and P·h = {degree}, outside the closed positive cone")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square or has the wrong size")]
    BadShape,
    #[error("rank must be positive")]
    ZeroRank,
    #[error("vectors live in different lattices or have mismatched ranks")]
    MismatchedLattice,
    #[error("reflection mirror has zero square")]
    IsotropicMirror,
    #[error("family member `{0}` does not have negative square")]
    NonNegativeSquareMember(String),
    #[error("family members `{0}` and `{1}` are positive multiples of each other")]
    ProportionalMembers(String, String),
    #[error("family has {0} members; at most 64 are supported")]
    FamilyTooLarge(usize),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("endpoint `{0}` belongs to Q")]
    EndpointInQ(String),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset is not connected in the Gram graph")]
    DisconnectedSubset,
    #[error("maximum subset size {max} exceeds the family size {len}")]
    MaxSizeTooLarge { max: usize, len: usize },
    #[error("zero vector has no projective point")]
    ZeroVector,
    #[error("vector is not a finite point (square must be positive)")]
    NotFinitePoint,
    #[error("vector is neither a finite nor an infinite point")]
    NotPoint,
    #[error("points lie in opposite half-cones")]
    OppositeCones,
    #[error("vector does not have negative square")]
    NotNegativeSquare,
    #[error("horosphere center must be a nonzero isotropic vector")]
    NotIsotropicCenter,
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("normals do not have a negative definite Gram matrix")]
    NormalsNotNegativeDefinite,
    #[error("family is not acute-angled: `{0}`·`{1}` < 0")]
    NotAcuteAngled(String, String),
    #[error("ambient lattice is not hyperbolic")]
    AmbientNotHyperbolic,
    #[error("malformed face lattice: {0}")]
    MalformedLattice(String),
    #[error("no faces of dimension {0}")]
    NoKFaces(usize),
    #[error("bad dimensions: need 0 <= i < k <= n-1")]
    BadDimensions,
    #[error("domain violation: need n >= 2k-1 and 0 <= i < k")]
    DomainViolation,
    #[error("face lattice is not simple in dimension 1")]
    NotSimpleInDim1,
    #[error("face is not three-dimensional")]
    NotThreeDimensional,
    #[error("Q is not an elliptic subset")]
    QNotElliptic,
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("missing parameter `{0}`")]
    MissingParam(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParam(&'static str),
    #[error("mode data invalid: {0}")]
    ModeDataInvalid(&'static str),
    #[error("divisor is not pseudo-effective: {0}")]
    NotPseudoEffective(Box<NotPseudoEffective>),
    #[error("canonical class is numerically trivial")]
    CanonicalTrivial,
    #[error("anticanonical class is not pseudo-effective")]
    NotPseudoEffectiveAnticanonical,
    #[error("exceptional curve `{0}` fits none of the three parts")]
    UnclassifiableCurve(String),
    #[error("Gram matrix of the configuration is not negative definite")]
    GramNotNegativeDefinite,
    #[error("variant {variant} requires numerical anti-Kodaira dimension {expected}, found {found}")]
    VariantMismatch { variant: &'static str, expected: &'static str, found: &'static str },
    #[error("invalid surface model: {0}")]
    InvalidModel(String),
    #[error("linear system is singular")]
    Singular,
}
