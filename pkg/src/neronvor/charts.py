"""Local charts as weight semigroups: finite generating sets, saturation via
Hilbert bases, monomial presentations of the closed fiber, the adic growth
bound, and invariance of chart cones under level scaling.

Weights live in Z m0 + X as tuples (x0, x_1, .., x_g); m0 is the weight of
the uniformizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import core, fan, lattice, linalg, polyhedra, voronoi
from .core import FCDatum, effective_level
from .errors import NotInSigma, NotPointed

M0 = None  # set below once rank is known; m0 = (1, 0, .., 0)


def _m0(g):
    return (1,) + (0,) * g


def chart_generators(datum: FCDatum, level, alpha, u=(), half: bool = False):
    """Finite generating set of the chart semigroup at a cell point: weights
    of the monomials indexed by the bounded set from the finite-generation
    argument together with the double-level star."""
    g = datum.rank
    lv = effective_level(level, half)
    u = tuple(u) if u else (0,) * g
    sigma1 = voronoi.sigma_points(datum, level, half)
    if tuple(alpha) not in set(sigma1):
        raise NotInSigma(f"{alpha} is not a lattice point of the central cell")
    sigma2 = voronoi.sigma_points(datum, 2 * level, half)
    sigma3 = voronoi.sigma_points(datum, 3 * level, half)
    big_m = max(Fraction(core.c_value(datum, lv, p)) for p in sigma3)
    # bounding polytope: |2 C(x, lam)| <= 3M for lam in the level-1 star
    rows = []
    four_ln = 4 * lv * datum.n_index_value
    for lam in sigma1:
        if not any(lam):
            continue
        n = linalg.matvec(datum.b_matrix, lam)
        bound = 3 * big_m * four_ln / 2
        rows.append((bound,) + tuple(n))
        rows.append((bound,) + tuple(-x for x in n))
    box = polyhedra.from_inequalities(rows, g)
    shifted_star = [linalg.sub(lam, alpha) for lam in sigma2]
    delta = []
    for x in lattice.integer_points_in_polytope(box):
        cx = Fraction(core.c_value(datum, lv, x))
        if all(
            cx <= Fraction(core.c_value(datum, lv, linalg.sub(x, lam))) + 2 * big_m
            for lam in shifted_star
        ):
            delta.append(x)
    support = sorted(set(delta) | set(sigma2))
    weights = []
    for v in support:
        x = linalg.sub(v, alpha)
        w0 = voronoi.d_value(datum, level, v, half) + linalg.dot(u, x)
        weights.append((w0,) + tuple(x))
    return sorted(set(weights)), {"delta_size": len(delta), "big_m": big_m}


def hilbert_basis(cone: polyhedra.RationalCone):
    """Unique minimal generating set of the saturated semigroup cone ∩ Z^n."""
    if cone.lineality:
        raise NotPointed("cone has a lineality space; use split_basis")
    return lattice.hilbert_basis_pointed(cone)


def split_basis(cone: polyhedra.RationalCone):
    """(lineality lattice basis, Hilbert basis of the pointed quotient lifted
    into the cone); the first component is empty for pointed cones."""
    if not cone.lineality:
        return (), hilbert_basis(cone)
    lin = lattice.lineality_lattice_basis(cone)
    pointed = fan._pointed_quotient_basis(cone)
    return tuple(lin), tuple(pointed)


@dataclass(frozen=True)
class LocalCone:
    """A cell point over the base point with its shift and local cone."""
    beta: tuple
    shift: tuple       # v_beta + u (+ cvp adjustment), the s-grading covector
    cone: polyhedra.RationalCone


@dataclass(frozen=True)
class MonomialChart:
    base_vertices: tuple
    shift: tuple
    level: int
    half: bool
    torus_factor: bool
    cone: polyhedra.RationalCone       # weight cone in (m0, X)
    hilbert_basis: tuple               # pointed-part minimal generators
    lineality_basis: tuple             # empty iff the weight cone is pointed
    local_cones: tuple                 # LocalCone data (vertex charts only)

    def fiber_generators(self):
        """Hilbert basis elements surviving in the closed fiber: weights on
        the lower boundary of the cone."""
        out = []
        for h in self.hilbert_basis:
            lc = self._containing_local(h[1:])
            if lc is not None and h[0] == linalg.dot(lc.shift, h[1:]):
                out.append(h)
        return tuple(out)

    def _containing_local(self, x):
        for lc in self.local_cones:
            if lc.cone.contains(x):
                return lc
        return None


def _local_cone_data(datum: FCDatum, level, a, u, half):
    """Cell points over base point a, their shifts, and local cones."""
    g = datum.rank
    lv = effective_level(level, half)
    u = tuple(u) if u else (0,) * g
    alpha, z = voronoi.cvp_decompose(datum, level, a, half)
    ushift = linalg.add(u, z)
    sigma = voronoi.sigma_points(datum, level, half)
    tbasis = core.translation_lattice_basis(datum, lv)
    out = []
    for beta in sigma:
        coeffs = linalg.solve(tbasis, linalg.sub(alpha, beta))
        if any(c.denominator != 1 for c in coeffs):
            continue
        v_beta = tuple(int(c) for c in coeffs)
        rays = [linalg.sub(gammap, beta) for gammap in sigma if gammap != beta]
        cone = polyhedra.cone_from_rays(rays, g)
        out.append(LocalCone(tuple(beta), linalg.add(v_beta, ushift), cone))
    return tuple(out)


def chart_ring(datum: FCDatum, level, face, u=(), half: bool = False) -> MonomialChart:
    """Full chart data at a face of the cell decomposition with a dual shift."""
    g = datum.rank
    u = tuple(u) if u else (0,) * g
    verts = fan._face_vertices(face)
    cones = [fan.chart_cone(datum, level, v, u, half) for v in verts]
    gens = [r for c in cones for r in c.rays] + [_m0(g)]
    cone = polyhedra.cone_from_rays(gens, g + 1)
    lin, basis = split_basis(cone)
    face_dim = polyhedra.hull(list(verts), dim=g).space_dim()
    torus = face_dim == g
    local = ()
    if face_dim == 0:
        local = _local_cone_data(datum, level, verts[0], u, half)
    return MonomialChart(
        base_vertices=tuple(verts),
        shift=u,
        level=level,
        half=half,
        torus_factor=torus,
        cone=cone,
        hilbert_basis=basis,
        lineality_basis=lin,
        local_cones=local,
    )


def fiber_presentation(chart: MonomialChart) -> dict:
    """Monomial presentation of the chart's closed fiber: which products of
    surviving generators stay monomials and which vanish."""
    gens = chart.fiber_generators()
    relations = []
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            x, y = gens[i][1:], gens[j][1:]
            common = None
            for lc in chart.local_cones:
                if lc.cone.contains(x) and lc.cone.contains(y):
                    common = lc
                    break
            if chart.torus_factor:
                common = True
            relations.append(
                {
                    "pair": (gens[i], gens[j]),
                    "zero_in_fiber": common is None,
                    "witness": None if common in (None, True) else common.beta,
                }
            )
    return {"generators": gens, "relations": relations}


def iadic_bound(datum: FCDatum, level, alpha, u, x, half: bool = False):
    """Adic growth exponent: the largest t >= 0 with C(x) >= 2^t M* (0 if
    none), where M* is the smallest power-of-two multiple of 16M whose
    sublevel set contains the generating support."""
    lv = effective_level(level, half)
    weights, info = chart_generators(datum, level, alpha, u, half)
    big_m = info["big_m"]
    sigma3 = voronoi.sigma_points(datum, 3 * level, half)
    support = [linalg.add(w[1:], tuple(alpha)) for w in weights]
    pool = set(support) | set(sigma3)
    m_star = 16 * big_m
    while any(Fraction(core.c_value(datum, lv, p)) > m_star for p in pool):
        m_star *= 2
    cx = Fraction(core.c_value(datum, lv, x))
    t = 0
    if cx >= m_star:
        while cx >= 2 ** (t + 1) * m_star:
            t += 1
    return {"t": t, "m": big_m, "m_star": m_star}


def scaling_check(datum: FCDatum, level, factor, samples=None, half: bool = False) -> dict:
    """Chart-cone and complex invariance under level scaling."""
    g = datum.rank
    report = {"cones_equal": True, "complex_scales": True, "samples": []}
    cell = voronoi.voronoi_polytope(datum, level, half)
    if samples is None:
        verts = [tuple(int(x) for x in v) for v in cell.vertices]
        samples = [(v, (0,) * g) for v in verts[: 2 * g]]
        samples.append(((0,) * g, (0,) * g))
        if verts:
            samples.append((verts[0], tuple(1 if i == 0 else 0 for i in range(g))))
    for a, u in samples:
        c1 = fan.chart_cone(datum, level, a, u, half)
        scaled_a = tuple(factor * x for x in a)
        c2 = fan.chart_cone(datum, level * factor, scaled_a, u, half)
        same = c1 == c2
        report["samples"].append({"a": a, "u": u, "equal": same})
        if not same:
            report["cones_equal"] = False
    comp1 = voronoi.vor_complex(datum, level, half)
    comp2 = voronoi.vor_complex(datum, level * factor, half)
    scaled_keys = set()
    for fc in comp1.face_classes:
        scaled = [linalg.smul(factor, v) for v in fc.vertices]
        scaled_keys.add(voronoi._canonical_shift(scaled, comp2.quotient_basis))
    actual_keys = {fc.vertices for fc in comp2.face_classes}
    report["complex_scales"] = scaled_keys == actual_keys
    return report
