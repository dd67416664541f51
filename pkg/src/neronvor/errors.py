"""Exception hierarchy. Each class names one violated precondition or invariant."""


class NeronvorError(Exception):
    """Base class for all library errors."""


class BadInput(NeronvorError):
    """Malformed datum description (parse-level)."""


class NonSymmetric(BadInput):
    """Pairing matrix is not symmetric."""


class NotPositiveDefinite(BadInput):
    """Pairing matrix is not positive definite."""


class NonIntegralOnYxX(BadInput):
    """Pairing takes a non-integer value on a sublattice/lattice pair."""


class SingularYBasis(BadInput):
    """Sublattice basis matrix has zero determinant."""


class NotInY(NeronvorError):
    """Lattice point does not lie in the sublattice."""


class NotInSigma(NeronvorError):
    """Point does not lie in the central-cell point star."""


class NotIntegral(NeronvorError):
    """Central cell fails the integrality conditions at this level."""


class NotFoundBelowCap(NeronvorError):
    """No admissible level below the search cap."""


class DimensionCap(NeronvorError):
    """Computation refused above the configured rank cap."""


class EmptyInput(NeronvorError):
    """Geometric operation received no points/inequalities."""


class NotAFace(NeronvorError):
    """Polytope is not a face of the decomposition at hand."""


class ZeroCone(NeronvorError):
    """Operation undefined on the trivial cone."""


class NotPointed(NeronvorError):
    """Cone has a nontrivial lineality space."""


class NotPrincipal(NeronvorError):
    """Operation requires the sublattice to equal the full lattice."""


class WrongRank(NeronvorError):
    """Operation restricted to a specific rank."""


class NonIntegralValuation(NeronvorError):
    """Internal consistency failure: a valuation came out non-integral."""
