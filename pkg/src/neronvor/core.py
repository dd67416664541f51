"""Degeneration data: lattice pair (X, Y), pairing B, and the derived maps.

X is identified with Z^g in standard coordinates and X^dual with Z^g via the
dot-product pairing.  Y is given by the columns of an integer matrix.  All
derived quantities (beta, N, phi, the level quadratics) are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import (
    BadInput,
    NonIntegralOnYxX,
    NonIntegralValuation,
    NonSymmetric,
    NotInY,
    NotPositiveDefinite,
    SingularYBasis,
)


@dataclass(frozen=True)
class SmithDecomposition:
    left: tuple
    diag: tuple
    right: tuple

    @property
    def factors(self) -> tuple:
        n = min(len(self.diag), len(self.diag[0]) if self.diag else 0)
        return tuple(self.diag[i][i] for i in range(n))


def smith(matrix) -> SmithDecomposition:
    m = linalg.mat(matrix)
    left, diag, right = linalg.smith_normal_form(m)
    return SmithDecomposition(left, diag, right)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise BadInput(f"not an exact rational: {x!r}")


def _norm_num(x: Fraction):
    return int(x) if x.denominator == 1 else x


@dataclass(frozen=True)
class FCDatum:
    """Validated degeneration datum (rank, Y-basis, pairing, optional A values).

    Cached derived data: the beta matrix (columns beta(y_i) over a Y-basis),
    the index N = |X^dual : beta(Y)|, and the integer matrix Phi of
    phi = beta^{-1} . (N id).
    """

    rank: int
    y_basis: tuple          # g x g integer matrix, columns generate Y
    b_matrix: tuple         # g x g rational symmetric matrix
    a_override: dict | None = None
    beta_matrix: tuple = field(init=False)
    n_index_value: int = field(init=False)
    phi_matrix: tuple = field(init=False)

    def __post_init__(self):
        g = self.rank
        if g < 1:
            raise BadInput("rank must be >= 1")
        bm = self.b_matrix
        if len(bm) != g or any(len(r) != g for r in bm):
            raise BadInput("pairing matrix has wrong shape")
        if bm != linalg.transpose(bm):
            raise NonSymmetric("pairing matrix is not symmetric")
        # leading principal minors > 0
        for k in range(1, g + 1):
            minor = linalg.det(tuple(r[:k] for r in bm[:k]))
            if minor <= 0:
                raise NotPositiveDefinite(f"leading principal minor {k} is {minor}")
        ym = self.y_basis
        if len(ym) != g or any(len(r) != g for r in ym):
            raise BadInput("Y-basis matrix has wrong shape")
        if any(not isinstance(x, int) for r in ym for x in r):
            raise BadInput("Y-basis must be an integer matrix")
        if linalg.det(ym) == 0:
            raise SingularYBasis("Y-basis has zero determinant")
        # beta(y_i) = B . y_i must be integer covectors
        bb = linalg.matmul(bm, ym)
        for row in bb:
            for x in row:
                if _as_fraction(x).denominator != 1:
                    raise NonIntegralOnYxX(f"B(y, x) = {x} is not an integer")
        bb = tuple(tuple(int(x) for x in row) for row in bb)
        object.__setattr__(self, "beta_matrix", bb)
        n = abs(linalg.det(bb))
        object.__setattr__(self, "n_index_value", int(n))
        # phi = N * B^{-1} on X^dual; integrality is guaranteed by N X^dual <= beta(Y)
        binv = linalg.inverse(bm)
        phi = tuple(tuple(_norm_num(n * x) for x in row) for row in binv)
        if any(not isinstance(x, int) for row in phi for x in row):
            raise NonIntegralValuation("phi matrix is not integral; datum validation bug")
        object.__setattr__(self, "phi_matrix", phi)
        if self.a_override is not None:
            object.__setattr__(self, "a_override", dict(self.a_override))

    # -- basic maps ---------------------------------------------------------

    def bilinear(self, x, y):
        """B(x, y) on X x X (rational in general)."""
        return _norm_num(Fraction(linalg.quad_form(self.b_matrix, tuple(x), tuple(y))))

    def in_y(self, y) -> bool:
        coeffs = linalg.solve(self.y_basis, tuple(y))
        return all(c.denominator == 1 for c in coeffs)

    def a_value(self, y):
        """A(y) for y in Y; defaults to B(y,y)/2."""
        if not self.in_y(y):
            raise NotInY(f"{y} is not in Y")
        if self.a_override is not None and tuple(y) in self.a_override:
            return self.a_override[tuple(y)]
        return _norm_num(Fraction(self.bilinear(y, y), 2))


def validate_datum(raw) -> FCDatum:
    """Build a validated datum from a mapping {rank, y_basis, b, a?}."""
    if not isinstance(raw, dict):
        raise BadInput("datum description must be a mapping")
    try:
        rank = int(raw["rank"])
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"bad or missing rank: {exc}") from exc
    if "b" not in raw:
        raise BadInput("missing pairing matrix 'b'")
    b_matrix = linalg.mat(
        tuple(_norm_num(_as_fraction(x)) for x in row) for row in raw["b"]
    )
    if "y_basis" in raw and raw["y_basis"] is not None:
        y_basis = linalg.mat(raw["y_basis"])
    else:
        y_basis = linalg.identity(rank)
    a_override = None
    if raw.get("a") is not None:
        a_override = {
            tuple(int(c) for c in key.split(",")) if isinstance(key, str) else tuple(key):
                _norm_num(_as_fraction(val))
            for key, val in raw["a"].items()
        }
    return FCDatum(rank=rank, y_basis=y_basis, b_matrix=b_matrix, a_override=a_override)


def beta(datum: FCDatum, y) -> tuple:
    """The dual vector x -> B(y, x), for y in Y."""
    if not datum.in_y(y):
        raise NotInY(f"{y} is not in Y")
    out = linalg.matvec(datum.b_matrix, tuple(y))
    return tuple(int(x) for x in out)


def n_index(datum: FCDatum) -> int:
    """|X^dual / beta(Y)| = |det(B(y_i, x_j))|."""
    return datum.n_index_value


def phi(datum: FCDatum, u) -> tuple:
    """The unique y in Y with beta(y) = N u."""
    out = linalg.matvec(datum.phi_matrix, tuple(u))
    return tuple(int(x) for x in out)


def e_level(datum: FCDatum, level, u):
    """E_level(u) = level * u(phi(u)); nonnegative, zero iff u = 0."""
    val = Fraction(level) * linalg.dot(tuple(u), phi(datum, u))
    if val.denominator != 1:
        raise NonIntegralValuation(f"E value {val} is not an integer at level {level}")
    return int(val)


def pairing_on_phi(datum: FCDatum, u, v) -> int:
    """u(phi(v)) = v(phi(u)); the positive definite form behind E."""
    return int(linalg.dot(tuple(u), phi(datum, v)))


def c_value(datum: FCDatum, level, x):
    """C_level(x) = B(x,x) / (4 * level * N)."""
    return _norm_num(Fraction(datum.bilinear(x, x)) / (4 * Fraction(level) * datum.n_index_value))


def c_pair(datum: FCDatum, level, x, y):
    """C_level(x, y) = B(x,y) / (4 * level * N)."""
    return _norm_num(Fraction(datum.bilinear(x, y)) / (4 * Fraction(level) * datum.n_index_value))


def translation_vector(datum: FCDatum, level, v) -> tuple:
    """The lattice translation 2*level*phi(v) attached to a dual vector v."""
    two_l = 2 * Fraction(level)
    out = tuple(two_l * x for x in phi(datum, v))
    if any(Fraction(x).denominator != 1 for x in out):
        raise NonIntegralValuation("translation 2*level*phi(v) is not integral")
    return tuple(int(x) for x in out)


def translation_lattice_basis(datum: FCDatum, level) -> tuple:
    """Columns 2*level*phi(f_i): a basis of the cell-translation lattice."""
    g = datum.rank
    cols = [translation_vector(datum, level, tuple(1 if i == j else 0 for i in range(g)))
            for j in range(g)]
    return linalg.transpose(linalg.mat(cols))


def is_even_form(datum: FCDatum) -> bool:
    """Whether u(phi(u)) is even for all u (diagonal of the Phi matrix even)."""
    return all(datum.phi_matrix[i][i] % 2 == 0 for i in range(datum.rank))


def effective_level(level: int, half: bool) -> Fraction:
    """The level actually used in every formula; `half` divides it by two."""
    lv = Fraction(level)
    if half:
        lv = lv / 2
    if lv <= 0:
        raise BadInput("level must be positive")
    return lv
