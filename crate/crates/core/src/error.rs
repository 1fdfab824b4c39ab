use alloc::string::String;
use core::fmt;

/// Everything that can go wrong across the crate.
///
/// Budget overruns and infeasible inputs are ordinary errors; a
/// [`Error::TheoremViolation`] means a proven statement failed on a concrete
/// instance and should be treated as either an implementation bug or a
/// remarkable discovery, never silently ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A coordinate index lies outside `0..=dim`.
    IndexOutOfRange { index: usize, dim: usize },
    /// A point had the wrong number of coordinates.
    DimensionMismatch { expected: usize, got: usize },
    /// The constraint system has no solution (negative cycle).
    Infeasible,
    /// Coordinate `coord` is unbounded above or below.
    Unbounded { coord: usize },
    /// The feasible set is nonempty but not full-dimensional.
    NotFullDimensional,
    /// A constructor parameter is outside its documented range.
    InvalidParameter { what: &'static str },
    /// Order-polytope relations contain a directed cycle between distinct
    /// elements.
    CyclicRelations,
    /// Lattice point enumeration passed its configured cap.
    EnumerationBudgetExceeded { budget: u64 },
    /// Triangulation candidate enumeration passed its configured cap.
    CandidateBudgetExceeded { candidates: u64, budget: u64 },
    /// A polynomial is not the Ehrhart polynomial of a lattice polytope
    /// (non-integer or negative h* coefficient, wrong constant term, ...).
    NotLatticeEhrhart { reason: &'static str },
    /// An operation requiring interior lattice points found none.
    NoInteriorPoints,
    /// The given constraint is not facet-defining (redundant or absent).
    NotAFacet,
    /// A facet lies at lattice distance >= 2 from the interior points, so no
    /// boundary-compatible unimodular triangulation exists.
    HypothesisViolated { facet: (usize, usize, i64), distance: i64 },
    /// A proven statement failed on a concrete instance.
    TheoremViolation { what: String },
    /// The vertices do not span a full-dimensional simplex.
    DegenerateSimplex,
    /// An operation on sequences received an empty list.
    EmptyList,
    /// Exact integer arithmetic left the fixed-width range.
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { index, dim } => {
                write!(f, "coordinate index {index} out of range for dimension {dim}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            Error::Infeasible => write!(f, "constraint system is infeasible"),
            Error::Unbounded { coord } => write!(f, "coordinate x_{coord} is unbounded"),
            Error::NotFullDimensional => write!(f, "polytope is not full-dimensional"),
            Error::InvalidParameter { what } => write!(f, "invalid parameter: {what}"),
            Error::CyclicRelations => write!(f, "relations contain a directed cycle"),
            Error::EnumerationBudgetExceeded { budget } => {
                write!(f, "lattice point enumeration exceeded budget {budget}")
            }
            Error::CandidateBudgetExceeded { candidates, budget } => {
                write!(f, "{candidates} candidate simplices exceed budget {budget}")
            }
            Error::NotLatticeEhrhart { reason } => {
                write!(f, "not the Ehrhart polynomial of a lattice polytope: {reason}")
            }
            Error::NoInteriorPoints => write!(f, "polytope has no interior lattice points"),
            Error::NotAFacet => write!(f, "constraint is not facet-defining"),
            Error::HypothesisViolated { facet: (i, j, k), distance } => write!(
                f,
                "facet x_{i} - x_{j} <= {k} has lattice distance {distance} >= 2 \
                 from the interior points"
            ),
            Error::TheoremViolation { what } => write!(f, "theorem violation: {what}"),
            Error::DegenerateSimplex => write!(f, "vertices do not span a simplex"),
            Error::EmptyList => write!(f, "empty list"),
            Error::Overflow => write!(f, "integer overflow in exact arithmetic"),
        }
    }
}

impl core::error::Error for Error {}
