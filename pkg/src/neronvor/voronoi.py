"""Central cells of the level quadratics, their lattice-point stars,
integrality, closest-vector decomposition, and the periodic face complexes
(cell decomposition and its dual) with quotient views.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import core, lattice, linalg, polyhedra
from .core import FCDatum, effective_level
from .errors import NonIntegralValuation, NotFoundBelowCap, NotIntegral


def translation_gram(datum: FCDatum, lv: Fraction):
    """Gram matrix of the cell-translation lattice basis 2*lv*phi(f_i)."""
    t = core.translation_lattice_basis(datum, lv)
    bt = linalg.matmul(linalg.transpose(t), linalg.matmul(datum.b_matrix, t))
    out = []
    for row in bt:
        out.append(tuple(int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in row))
    return linalg.mat(out)


def relevant_vectors(datum: FCDatum, level, half: bool = False):
    """Dual vectors u whose halfspace E(u) + u(x) >= 0 is a facet of the
    central cell: the coset-minimum criterion on the translation lattice."""
    lv = effective_level(level, half)
    gram = translation_gram(datum, lv)
    return lattice.relevant_vectors_of_form(gram)


def _cell_inequalities(datum: FCDatum, lv: Fraction, rels):
    rows = []
    for u in rels:
        e = core.e_level(datum, lv, u)
        rows.append((e,) + tuple(u))
    return rows


def voronoi_polytope(datum: FCDatum, level, half: bool = False,
                     allow_big: bool = False) -> polyhedra.RationalPolytope:
    """The central cell at this level, as an exact polytope."""
    lv = effective_level(level, half)
    rels = relevant_vectors(datum, level, half)
    rows = _cell_inequalities(datum, lv, rels)
    return polyhedra.from_inequalities(rows, datum.rank, allow_big=allow_big)


def sigma_points(datum: FCDatum, level, half: bool = False, allow_big: bool = False):
    """Lattice points of the central cell."""
    cell = voronoi_polytope(datum, level, half, allow_big=allow_big)
    return lattice.integer_points_in_polytope(cell)


def _contains_basis(points, g):
    """Whether the point set contains g points forming a Z-basis of Z^g."""
    pts = sorted(points, key=lambda p: (sum(x * x for x in p), p))
    pts = [p for p in pts if any(p)]
    if len(pts) < g:
        return False
    generated = core.smith(linalg.mat(pts)).factors
    nonzero = [f for f in generated if f != 0]
    if len(nonzero) < g or any(f != 1 for f in nonzero):
        return False

    def extend(chosen, start):
        k = len(chosen)
        if k == g:
            return abs(linalg.det(linalg.mat(chosen))) == 1
        for i in range(start, len(pts)):
            cand = chosen + [pts[i]]
            sd = core.smith(linalg.mat(cand))
            factors = [f for f in sd.factors if f != 0]
            if len(factors) == len(cand) and all(f == 1 for f in factors):
                if extend(cand, i + 1):
                    return True
        return False

    return extend([], 0)


@dataclass(frozen=True)
class IntegralityReport:
    integral: bool
    reason: str
    witness: tuple | None = None


def _is_e8_like(datum: FCDatum) -> bool:
    if datum.rank != 8 or datum.n_index_value != 1:
        return False
    bm = datum.b_matrix
    if any(not linalg.is_integer_vec(row) for row in bm):
        return False
    return all(int(bm[i][i]) % 2 == 0 for i in range(8))


def _root_weight_data(datum: FCDatum):
    """Simple roots, highest-root coefficients and weight vectors of a rank-8
    even unimodular form (the unique such lattice).  Exact, basis-free."""
    bm = datum.b_matrix
    roots = [v for v, _ in lattice.enumerate_quadratic(bm, 2)
             if any(v) and linalg.quad_form(bm, v) == 2]
    bound = max(abs(x) for r in roots for x in r)
    base = 2 * bound + 1
    heights = {r: sum(x * base ** i for i, x in enumerate(r)) for r in roots}
    pos = [r for r in roots if heights[r] > 0]
    pos_set = set(pos)
    simple = [r for r in pos if not any(tuple(linalg.sub(r, p)) in pos_set for p in pos)]
    simple.sort()
    if len(simple) != 8:
        raise NonIntegralValuation("root-system analysis failed; expected 8 simple roots")
    highest = max(pos, key=lambda r: heights[r])
    s_cols = linalg.transpose(linalg.mat(simple))
    marks = linalg.solve(s_cols, highest)
    marks = [int(m) for m in marks]
    # weights: solve B(w_i, s_j) = delta_ij
    sb = linalg.matmul(linalg.mat(simple), bm)   # rows s_j^T B
    weights = [linalg.solve(sb, tuple(1 if i == j else 0 for j in range(8)))
               for i in range(8)]
    weights = [tuple(int(x) for x in w) for w in weights]
    return simple, marks, weights


def _e8_integrality(datum: FCDatum, lv: Fraction) -> IntegralityReport:
    _simple, marks, weights = _root_weight_data(datum)
    two_l = 2 * lv
    for mark, w in zip(marks, weights):
        if (two_l * Fraction(1, mark)).denominator != 1:
            vert = tuple(two_l * Fraction(x, mark) for x in w)
            return IntegralityReport(
                False,
                f"vertex with denominator {mark} at level multiplier {two_l}",
                witness=vert,
            )
    # basis clause: the standard basis vectors lie in the central cell
    rels = relevant_vectors(datum, lv)
    g = datum.rank
    for i in range(g):
        e_i = tuple(1 if j == i else 0 for j in range(g))
        for u in rels:
            if core.e_level(datum, lv, u) + linalg.dot(u, e_i) < 0:
                return IntegralityReport(False, "no lattice basis inside the cell")
    return IntegralityReport(True, "all weight-orbit vertices integral; basis present")


def is_integral(datum: FCDatum, level, half: bool = False,
                allow_big: bool = False) -> IntegralityReport:
    """Integrality of the central cell: integer vertices, central symmetry
    with interior 0, and a lattice basis among its lattice points."""
    lv = effective_level(level, half)
    if _is_e8_like(datum) and not allow_big:
        return _e8_integrality(datum, lv)
    cell = voronoi_polytope(datum, level, half, allow_big=allow_big)
    for v in cell.vertices:
        if not linalg.is_integer_vec(v):
            return IntegralityReport(False, "non-integral vertex", witness=v)
    vset = set(cell.vertices)
    if any(linalg.neg(v) not in vset for v in cell.vertices):
        return IntegralityReport(False, "cell is not centrally symmetric")
    if not cell.interior_contains((0,) * datum.rank):
        return IntegralityReport(False, "origin is not interior")
    pts = lattice.integer_points_in_polytope(cell)
    if not _contains_basis(pts, datum.rank):
        return IntegralityReport(False, "no basis", witness=None)
    return IntegralityReport(True, "integral")


def minimal_level(datum: FCDatum, cap: int, allow_big: bool = False) -> int:
    """Least integer level at which the central cell is integral."""
    if cap < 1:
        raise NotFoundBelowCap("cap must be >= 1")
    if _is_e8_like(datum) and not allow_big:
        _simple, marks, _weights = _root_weight_data(datum)
        denom = lcm(*marks)
        base = denom // 2 if denom % 2 == 0 else denom
        for mult in range(1, cap // base + 1):
            level = base * mult
            if _e8_integrality(datum, Fraction(level)).integral:
                return level
        raise NotFoundBelowCap(f"no integral level <= {cap}")
    cell1 = voronoi_polytope(datum, 1, allow_big=allow_big)
    denom = 1
    for v in cell1.vertices:
        for x in v:
            denom = lcm(denom, Fraction(x).denominator)
    level = denom
    while level <= cap:
        if is_integral(datum, level, allow_big=allow_big).integral:
            return level
        level += denom
    raise NotFoundBelowCap(f"no integral level <= {cap}")


def cvp_decompose(datum: FCDatum, level, x, half: bool = False):
    """Write x = gamma + 2*lv*phi(z) with gamma in the central cell; among
    minimizing z, the one with least (|z|^2, lex) is returned."""
    lv = effective_level(level, half)
    tbasis = core.translation_lattice_basis(datum, lv)
    gram = translation_gram(datum, lv)
    target = linalg.solve(tbasis, tuple(x))
    _best, vecs = lattice.closest_vectors(gram, target)
    z = min(vecs, key=lambda v: (sum(c * c for c in v), v))
    gamma = linalg.sub(tuple(x), core.translation_vector(datum, lv, z))
    return tuple(int(c) for c in gamma), tuple(z)


def d_value(datum: FCDatum, level, x, half: bool = False) -> int:
    """Chart valuation: C(x) - C(gamma) for the closest-vector remainder."""
    lv = effective_level(level, half)
    gamma, _z = cvp_decompose(datum, level, x, half)
    val = Fraction(core.c_value(datum, lv, x)) - Fraction(core.c_value(datum, lv, gamma))
    if val.denominator != 1 or val < 0:
        raise NonIntegralValuation(f"D value {val} invalid; datum validation bug")
    return int(val)


# ---------------------------------------------------------------------------
# periodic complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FaceClass:
    """A translation class of faces: canonical vertex tuple + dimension."""
    dim: int
    vertices: tuple


@dataclass(frozen=True)
class FaceComplex:
    """A periodic polyhedral decomposition, stored as representative cells
    modulo a quotient lattice plus the face classes of the quotient."""
    dim: int
    translation_basis: tuple        # columns: full translation lattice
    quotient_basis: tuple           # columns: lattice used for class counting
    cell_labels: tuple              # dual-vector label per representative cell
    cells: tuple                    # RationalPolytope per representative cell
    face_classes: tuple             # sorted tuple of FaceClass (all dims, cells included)
    incidence: tuple                # (cell_index, face_class_index) pairs

    def counts(self) -> dict:
        out = {}
        for fc in self.face_classes:
            out[fc.dim] = out.get(fc.dim, 0) + 1
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** fc.dim for fc in self.face_classes)

    def maximal_cells(self):
        return [fc for fc in self.face_classes if fc.dim == self.dim]


def _canonical_shift(vertices, quotient_basis):
    """Shift a face by the quotient lattice so its barycenter lies in the
    half-open fundamental box; returns the shifted, sorted vertex tuple."""
    n = len(vertices[0])
    bary = tuple(
        Fraction(sum(Fraction(v[i]) for v in vertices), len(vertices)) for i in range(n)
    )
    coeffs = linalg.solve(quotient_basis, bary)
    shift_coeffs = tuple(-(c.numerator // c.denominator) for c in coeffs)
    shift = linalg.matvec(quotient_basis, shift_coeffs)
    shifted = sorted(
        tuple(x + s for x, s in zip(v, shift)) for v in vertices
    )
    return tuple(
        tuple(int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in v)
        for v in shifted
    )


def _assemble_complex(dim, translation_basis, quotient_basis, labeled_cells):
    """Build a FaceComplex from (label, polytope) cells; faces are identified
    modulo the quotient lattice by the canonical-shift key."""
    classes = {}
    incidence = set()
    cells = []
    labels = []
    for label, poly in labeled_cells:
        cells.append(poly)
        labels.append(label)
    for ci, poly in enumerate(cells):
        lattice_faces = polyhedra.faces(poly)
        for d, faces_d in lattice_faces.items():
            for idx_tuple in faces_d:
                verts = [poly.vertices[i] for i in idx_tuple]
                key = _canonical_shift(verts, quotient_basis)
                classes.setdefault(key, d)
                incidence.add((ci, key))
    ordered = sorted(classes.items(), key=lambda kv: (kv[1], kv[0]))
    index_of = {key: i for i, (key, _d) in enumerate(ordered)}
    face_classes = tuple(FaceClass(d, key) for key, d in ordered)
    inc = tuple(sorted((ci, index_of[key]) for ci, key in incidence))
    return FaceComplex(
        dim=dim,
        translation_basis=translation_basis,
        quotient_basis=quotient_basis,
        cell_labels=tuple(labels),
        cells=tuple(cells),
        face_classes=face_classes,
        incidence=inc,
    )


def component_representatives(datum: FCDatum):
    """Representatives of X^dual / beta(Y), enumerated via the Smith form."""
    sd = core.smith(datum.beta_matrix)
    factors = [abs(f) for f in sd.factors]
    linv = linalg.inverse(sd.left)
    reps = []

    def rec(i, partial):
        if i == len(factors):
            vec = linalg.matvec(linv, tuple(partial))
            reps.append(tuple(int(x) for x in vec))
            return
        for r in range(factors[i]):
            rec(i + 1, partial + [r])

    rec(0, [])
    return sorted(reps)


def vor_complex(datum: FCDatum, level, half: bool = False,
                allow_big: bool = False) -> FaceComplex:
    """The cell decomposition at this level, modulo the sublattice
    2*lv*N*Y; one representative cell per component class."""
    lv = effective_level(level, half)
    report = is_integral(datum, level, half, allow_big=allow_big)
    if not report.integral:
        raise NotIntegral(report.reason)
    cell0 = voronoi_polytope(datum, level, half, allow_big=allow_big)
    tbasis = core.translation_lattice_basis(datum, lv)
    two_ln = 2 * lv * datum.n_index_value
    qbasis = tuple(
        tuple(int(two_ln * x) for x in row) for row in datum.y_basis
    )
    labeled = []
    for c in component_representatives(datum):
        t = core.translation_vector(datum, lv, c)
        labeled.append((c, cell0.translate(t)))
    return _assemble_complex(datum.rank, tbasis, qbasis, labeled)


def delaunay_complex(datum: FCDatum, allow_big: bool = False) -> FaceComplex:
    """The dual decomposition: lattice-point hulls of sets of closest lattice
    points around the holes of X under the pairing; quotient lattice X."""
    g = datum.rank
    bm = datum.b_matrix
    rels = lattice.relevant_vectors_of_form(bm)
    rows = []
    for v in rels:
        n = linalg.smul(-2, linalg.matvec(bm, v))
        rows.append(linalg.primitive((linalg.quad_form(bm, v),) + tuple(n)))
    cell = polyhedra.from_inequalities(rows, g, allow_big=allow_big)
    ident = linalg.identity(g)
    seen = {}
    for hole in cell.vertices:
        _d, pts = lattice.closest_vectors(bm, hole)
        dcell = polyhedra.hull(pts, dim=g)
        key = _canonical_shift(dcell.vertices, ident)
        if key not in seen:
            seen[key] = polyhedra.hull(list(key), dim=g)
    labeled = [(None, poly) for _key, poly in sorted(seen.items())]
    return _assemble_complex(g, ident, ident, labeled)
