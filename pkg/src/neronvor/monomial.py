"""Valuation-level monomial calculus: the graded monomials acted on by the
dual-vector and sublattice translations, and the Fourier-module rank and
power-law bookkeeping.  Only valuations are tracked; unit parts never enter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import core, linalg, voronoi
from .core import FCDatum, effective_level
from .errors import NotInSigma, NotInY


@dataclass(frozen=True)
class ValuedMonomial:
    """s^val * w^exp * theta^theta_deg at a fixed level."""
    val: int
    exp: tuple
    theta_deg: int

    def __mul__(self, other: "ValuedMonomial") -> "ValuedMonomial":
        return ValuedMonomial(
            self.val + other.val,
            linalg.add(self.exp, other.exp),
            self.theta_deg + other.theta_deg,
        )


def unit_monomial(g: int) -> ValuedMonomial:
    return ValuedMonomial(0, (0,) * g, 0)


def xi_monomial(datum: FCDatum, level, alpha, v, half: bool = False) -> ValuedMonomial:
    """The distinguished degree-one monomial at a cell point alpha and dual
    shift v: valuation E(v) + v(alpha), exponent alpha + 2*lv*phi(v)."""
    lv = effective_level(level, half)
    alpha = tuple(alpha)
    cell = voronoi.voronoi_polytope(datum, level, half)
    if not (cell.contains(alpha) and linalg.is_integer_vec(alpha)):
        raise NotInSigma(f"{alpha} is not a lattice point of the central cell")
    val = core.e_level(datum, lv, v) + linalg.dot(tuple(v), alpha)
    exp = linalg.add(alpha, core.translation_vector(datum, lv, v))
    return ValuedMonomial(int(val), exp, 1)


def delta_action(datum: FCDatum, level, u, m: ValuedMonomial,
                 half: bool = False) -> ValuedMonomial:
    """Translation by a dual vector: valuation grows by
    theta_deg * E(u) + u(exp), exponent by theta_deg * 2*lv*phi(u)."""
    lv = effective_level(level, half)
    u = tuple(u)
    val = m.val + m.theta_deg * core.e_level(datum, lv, u) + linalg.dot(u, m.exp)
    shift = core.translation_vector(datum, lv, u)
    exp = linalg.add(m.exp, linalg.smul(m.theta_deg, shift))
    return ValuedMonomial(int(val), exp, m.theta_deg)


def s_action(datum: FCDatum, level, y, m: ValuedMonomial,
             half: bool = False) -> ValuedMonomial:
    """Translation by a sublattice element: the dual translation at beta(y)."""
    if not datum.in_y(y):
        raise NotInY(f"{y} is not in Y")
    return delta_action(datum, level, core.beta(datum, y), m, half)


def valuation_identities(datum: FCDatum, rng, sample_size: int = 20) -> dict:
    """Randomized check of the quadratic valuation identities."""
    g = datum.rank
    n = datum.n_index_value
    failures = []

    def rand_vec(bound=4):
        return tuple(rng.randint(-bound, bound) for _ in range(g))

    for _ in range(sample_size):
        u, v, x = rand_vec(), rand_vec(), rand_vec()
        y = tuple(int(c) for c in linalg.matvec(datum.y_basis, rand_vec(2)))
        e_u = core.e_level(datum, 1, u)
        if e_u != core.pairing_on_phi(datum, u, u):
            failures.append(("E(u)=u(phi(u))", u))
        if core.pairing_on_phi(datum, u, v) != core.pairing_on_phi(datum, v, u):
            failures.append(("u(phi(v))=v(phi(u))", (u, v)))
        if any(u) and e_u <= 0:
            failures.append(("E positive", u))
        lhs = core.e_level(datum, 1, linalg.add(u, v))
        rhs = e_u + core.e_level(datum, 1, v) + 2 * core.pairing_on_phi(datum, u, v)
        if lhs != rhs:
            failures.append(("E(u+v)", (u, v)))
        if n * linalg.dot(u, x) != datum.bilinear(core.phi(datum, u), x):
            failures.append(("N u(x)=B(phi(u),x)", (u, x)))
        a_y = datum.a_value(y)
        if Fraction(a_y) == Fraction(datum.bilinear(y, y), 2):
            if core.e_level(datum, 1, core.beta(datum, y)) != 2 * n * a_y:
                failures.append(("E(beta(y))=2NA(y)", y))
    report = {"samples": sample_size, "failures": failures, "ok": not failures}
    if core.is_even_form(datum):
        half_vals = []
        for _ in range(sample_size):
            u = rand_vec()
            e_full = core.e_level(datum, 1, u)
            e_half = core.e_level(datum, Fraction(1, 2), u)
            if e_full != 2 * e_half:
                failures.append(("E = 2 E_half", u))
            half_vals.append(e_half)
        report["half_level_checked"] = True
        report["ok"] = not failures
    return report


def fourier_rank(datum: FCDatum, m: int) -> int:
    """Rank of the weight-m module: the index |X : mY| = m^g |X : Y|."""
    scaled = tuple(tuple(m * x for x in row) for row in datum.y_basis)
    factors = core.smith(scaled).factors
    out = 1
    for f in factors:
        out *= abs(f)
    return out


def power_law_check(datum: FCDatum, rng, samples: int = 20) -> dict:
    """Valuation-level power law: the weight-m coefficients have valuations
    A_m(my) = m A(y) and B_m(my, x) = B(y, x); checks the induced relation
    exponents m A(y) + B(y, x) for additive consistency."""
    g = datum.rank
    failures = []
    rows = []
    for _ in range(samples):
        m = rng.randint(1, 5)
        yc = tuple(rng.randint(-3, 3) for _ in range(g))
        zc = tuple(rng.randint(-3, 3) for _ in range(g))
        x = tuple(rng.randint(-4, 4) for _ in range(g))
        y = tuple(int(c) for c in linalg.matvec(datum.y_basis, yc))
        z = tuple(int(c) for c in linalg.matvec(datum.y_basis, zc))
        a_m = m * Fraction(datum.a_value(y))
        b_m = Fraction(datum.bilinear(y, x))
        expo = a_m + b_m
        rows.append({"m": m, "y": y, "x": x, "exponent": expo})
        # bilinearity of the induced pairing: B_m(my, m z) = m B(y, z)
        lhs = m * Fraction(datum.a_value(linalg.add(y, z)))
        rhs = (
            m * Fraction(datum.a_value(y))
            + m * Fraction(datum.a_value(z))
            + m * Fraction(datum.bilinear(y, z))
        )
        if lhs != rhs:
            failures.append(("A_m additivity", (m, y, z)))
        if m * Fraction(datum.bilinear(y, x)) != Fraction(datum.bilinear(linalg.smul(m, y), x)):
            failures.append(("B_m(my,x)=B(y,x) scaling", (m, y, x)))
    return {"samples": samples, "rows": rows[:5], "failures": failures, "ok": not failures}
