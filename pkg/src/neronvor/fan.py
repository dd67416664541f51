"""The fan over the base attached to the cell decomposition: cones indexed by
cells/faces, the height-one Cut slices, the star polytope of touching cells,
and the classical fan of a principal datum with its quadratic inequalities.

Ambient coordinates: (x0, x) in Z m0 + X for weight space, (z0, z) in
Z f0 + X^dual for the fan; the pairing is z0*x0 + z.x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import core, lattice, linalg, polyhedra, voronoi
from .core import FCDatum, effective_level
from .errors import DimensionCap, NotAFace, NotIntegral, NotPrincipal


def sigma_star(datum: FCDatum, level, half: bool = False) -> polyhedra.RationalPolytope:
    """Convex hull of the dual vectors whose cells touch the central cell."""
    cell = voronoi.voronoi_polytope(datum, level, half)
    lv = effective_level(level, half)
    tbasis = core.translation_lattice_basis(datum, lv)
    doubled = polyhedra.scale(cell, 2)
    touching = [coeff for coeff, _pt in lattice.lattice_points_in_polytope(doubled, tbasis)]
    return polyhedra.hull(touching, dim=datum.rank)


def separation_membership(datum: FCDatum, level, point, n: int,
                          half: bool = False) -> bool:
    """Membership of a point in n times the star polytope."""
    star = sigma_star(datum, level, half)
    return polyhedra.scale(star, n).contains(point)


def chart_cone(datum: FCDatum, level, a, u=(), half: bool = False) -> polyhedra.RationalCone:
    """Weight cone of the local ring at base point a with shift u, assembled
    from the local cones at the cell points over a."""
    g = datum.rank
    lv = effective_level(level, half)
    u = tuple(u) if u else (0,) * g
    alpha, z = voronoi.cvp_decompose(datum, level, a, half)
    ushift = linalg.add(u, z)
    sigma = voronoi.sigma_points(datum, level, half)
    sigma_set = set(sigma)
    tbasis = core.translation_lattice_basis(datum, lv)
    gens = [(1,) + (0,) * g]
    for beta in sigma:
        # beta = alpha - 2 lv phi(v_beta) for integral v_beta, else skip
        diff = linalg.sub(alpha, beta)
        coeffs = linalg.solve(tbasis, diff)
        if any(c.denominator != 1 for c in coeffs):
            continue
        v_beta = tuple(int(c) for c in coeffs)
        shift = linalg.add(v_beta, ushift)
        for gamma in sigma_set:
            x = linalg.sub(gamma, beta)
            if not any(x):
                continue
            gens.append((linalg.dot(shift, x),) + x)
    return polyhedra.cone_from_rays(gens, g + 1)


def tau_cone_from_charts(datum: FCDatum, level, a, u=(), half: bool = False) -> polyhedra.RationalCone:
    """Fan cone at base point a (shift u): the dual of the chart cone."""
    return chart_cone(datum, level, a, u, half).dual()


def _face_vertices(face) -> tuple:
    if isinstance(face, voronoi.FaceClass):
        return face.vertices
    if isinstance(face, polyhedra.RationalPolytope):
        return face.vertices
    return tuple(tuple(v) for v in face)


def tau_cone(datum: FCDatum, level, face, half: bool = False) -> polyhedra.RationalCone:
    """Fan cone of a cell face: cone over f0 + {v : face lies in the cell of
    -v}; checked against the face-recovery identity."""
    g = datum.rank
    lv = effective_level(level, half)
    verts = _face_vertices(face)
    if not verts:
        raise NotAFace("empty face")
    cell = voronoi.voronoi_polytope(datum, level, half)
    tbasis = core.translation_lattice_basis(datum, lv)
    window = polyhedra.hull(
        [linalg.sub(c, v) for c in cell.vertices for v in verts], dim=g
    )
    centers = []
    for coeff, _pt in lattice.lattice_points_in_polytope(window, tbasis):
        t = core.translation_vector(datum, lv, coeff)
        if all(cell.contains(linalg.add(v, t)) for v in verts):
            centers.append(coeff)
    if not centers:
        raise NotAFace("no cell contains the face")
    # face recovery: the intersection of those cells must be the face itself
    rows = []
    for v in centers:
        t = core.translation_vector(datum, lv, v)
        shifted = cell.translate(linalg.neg(t))
        rows.extend(shifted.facets)
    recovered = polyhedra.from_inequalities(rows, g)
    if recovered != polyhedra.hull(list(verts), dim=g):
        raise NotAFace("vertex set is not a face of the decomposition")
    rays = [(1,) + tuple(v) for v in centers]
    return polyhedra.cone_from_rays(rays, g + 1)


@dataclass(frozen=True)
class SFan:
    """Fan over the base: maximal cones modulo cell translations, with labels.

    For the level fan the labels are the vertex representatives of the cell
    complex; translation by 2*lv*phi(v) shifts a cone's Cut slice by -v.
    """
    ambient_dim: int
    kind: str
    labels: tuple
    cones: tuple

    def __iter__(self):
        return iter(zip(self.labels, self.cones))


def build_fan(datum: FCDatum, level, half: bool = False) -> SFan:
    """Maximal fan cones, one per vertex class of the quotient complex."""
    complex_ = voronoi.vor_complex(datum, level, half)
    labels = []
    cones = []
    for fc in complex_.face_classes:
        if fc.dim != 0:
            continue
        a = fc.vertices[0]
        labels.append(tuple(int(x) for x in a))
        cones.append(tau_cone_from_charts(datum, level, a, half=half))
    return SFan(datum.rank + 1, "level", tuple(labels), tuple(cones))


def cut(cone: polyhedra.RationalCone) -> polyhedra.RationalPolytope:
    """Height-one slice of a fan cone, shifted into the dual space."""
    return polyhedra.cut(cone)


def check_fan_over_S(fan: SFan) -> dict:
    """Clauses of the fan-over-base condition per cone, plus the independent
    equivalence check of the lattice-saturation clause."""
    report = {"cones": [], "all_pass": True}
    for label, cone in fan:
        m0_in_dual = all(r[0] >= 0 for r in cone.rays) and all(
            l[0] == 0 for l in cone.lineality
        )
        meets_dual_trivially = not cone.lineality and all(r[0] > 0 for r in cone.rays)
        # saturation clause via the Smith form of [m0 | Hilbert basis of dual]
        dual = cone.dual()
        if dual.lineality:
            gens = list(lattice.lineality_lattice_basis(dual))
            gens += [linalg.neg(v) for v in gens]
            pointed = _pointed_quotient_basis(dual)
            gens += list(pointed)
        else:
            gens = list(lattice.hilbert_basis_pointed(dual))
        gens.append((1,) + (0,) * (fan.ambient_dim - 1))
        factors = [f for f in core.smith(linalg.mat(gens)).factors if f != 0]
        saturates = len(factors) == fan.ambient_dim and all(f == 1 for f in factors)
        entry = {
            "label": label,
            "m0_in_dual": m0_in_dual,
            "meets_dual_lattice_trivially": meets_dual_trivially,
            "saturation": saturates,
            "equivalence_holds": meets_dual_trivially == saturates,
        }
        report["cones"].append(entry)
        if not (m0_in_dual and meets_dual_trivially and saturates and entry["equivalence_holds"]):
            report["all_pass"] = False
    return report


def _pointed_quotient_basis(cone: polyhedra.RationalCone):
    """Hilbert basis of the pointed quotient of a cone with lineality, lifted
    back to the ambient lattice (lifts land in the cone automatically)."""
    lin_rows = lattice.lineality_lattice_basis(cone)
    n = cone.dim
    k = len(lin_rows)
    if k == 0:
        return lattice.hilbert_basis_pointed(cone)
    left, diag, right = linalg.smith_normal_form(linalg.mat(lin_rows))
    rinv = linalg.inverse(right)

    def project(x):
        y = linalg.matvec(rinv, x)
        return tuple(int(c) for c in y[k:])

    def lift(h):
        y = (0,) * k + tuple(h)
        x = linalg.matvec(right, y)
        return tuple(int(c) for c in x)

    proj_rays = [project(r) for r in cone.rays]
    proj_cone = polyhedra.cone_from_rays(proj_rays, n - k, allow_big=True)
    basis = lattice.hilbert_basis_pointed(proj_cone)
    return tuple(sorted(lift(h) for h in basis))


def cut_bijection_report(datum: FCDatum, level, half: bool = False, window: int = 1) -> dict:
    """Representative-level verification of the cell/Cut correspondence."""
    g = datum.rank
    lv = effective_level(level, half)
    complex_ = voronoi.vor_complex(datum, level, half)
    cell = voronoi.voronoi_polytope(datum, level, half)
    report = {"faces": [], "all_pass": True, "vertex_window": None}
    cuts_seen = {}
    for idx, fc in enumerate(complex_.face_classes):
        tau = tau_cone(datum, level, fc, half=half)
        sliced = cut(tau)
        face_poly = polyhedra.hull(list(fc.vertices), dim=g)
        dim_sum = sliced.space_dim() + face_poly.space_dim()
        # recover the face from the Cut vertices
        rows = []
        for v in sliced.vertices:
            t = core.translation_vector(datum, lv, linalg.neg(tuple(int(x) for x in v)))
            rows.extend(cell.translate(t).facets)
        recovered = polyhedra.from_inequalities(rows, g)
        cone_recovered = polyhedra.cone_over_shifted(sliced)
        entry = {
            "face_index": idx,
            "dim_face": face_poly.space_dim(),
            "dim_cut": sliced.space_dim(),
            "dim_complementary": dim_sum == g,
            "face_recovered": recovered == face_poly,
            "cone_is_cone_over_cut": cone_recovered == tau,
            "cut_vertices_integral": all(
                linalg.is_integer_vec(v) for v in sliced.vertices
            ),
        }
        cuts_seen[idx] = (sliced, face_poly, tau)
        report["faces"].append(entry)
        if not (entry["dim_complementary"] and entry["face_recovered"]
                and entry["cone_is_cone_over_cut"] and entry["cut_vertices_integral"]):
            report["all_pass"] = False
    # injectivity on representatives
    polys = [cuts_seen[i][0] for i in sorted(cuts_seen)]
    report["injective_on_reps"] = len({p.vertices for p in polys}) == len(polys)
    # inclusion reversal inside one cell: faces of the central cell
    cell_faces = polyhedra.faces(cell)
    flat = [
        tuple(cell.vertices[i] for i in idx_tuple)
        for d in sorted(cell_faces)
        for idx_tuple in cell_faces[d]
    ]
    reversal = True
    for va in flat:
        for vb in flat:
            if set(va) <= set(vb) and va != vb:
                ta = tau_cone(datum, level, va, half=half)
                tb = tau_cone(datum, level, vb, half=half)
                if not tb.is_face_of(ta):
                    reversal = False
    report["inclusion_reversing"] = reversal
    # Cut vertex classes cover the dual lattice in a window
    seen_vertices = set()
    box = range(-window, window + 1)
    for fc in complex_.face_classes:
        if fc.dim != 0:
            continue
        tau = tau_cone(datum, level, fc, half=half)
        base_cut = cut(tau)
        for coeffs in _box_vectors(g, box):
            shifted = [linalg.sub(v, coeffs) for v in base_cut.vertices]
            for v in shifted:
                if all(Fraction(x).denominator == 1 for x in v):
                    seen_vertices.add(tuple(int(x) for x in v))
    window_pts = set(_box_vectors(g, range(-window, window + 1)))
    report["vertex_window"] = window_pts <= seen_vertices
    if not (report["injective_on_reps"] and report["inclusion_reversing"]
            and report["vertex_window"]):
        report["all_pass"] = False
    return report


def _box_vectors(g, rng):
    out = [()]
    for _ in range(g):
        out = [v + (x,) for v in out for x in rng]
    return out


def mumford_fan(datum: FCDatum, level_unused=1) -> SFan:
    """Fan of a principal datum from its quadratic inequalities; maximal cones
    are translates of the one at the origin by construction."""
    g = datum.rank
    if datum.y_basis != linalg.identity(g):
        raise NotPrincipal("fan of quadratic inequalities needs Y = X")
    if g > 3:
        raise DimensionCap("quadratic fan capped at rank 3")
    rels = lattice.relevant_vectors_of_form(datum.b_matrix)
    labels = []
    cones = []
    for alpha in [(0,) * g]:
        rows = [(1,) + (0,) * g]
        for b in rels:
            c = Fraction(datum.a_value(b)) + datum.bilinear(alpha, b)
            rows.append((c,) + tuple(b))
        cone = polyhedra.cone_from_inequalities(rows, g + 1)
        labels.append(alpha)
        cones.append(cone)
    return SFan(g + 1, "mumford", tuple(labels), tuple(cones))


def mumford_component_count(datum: FCDatum) -> int:
    """Number of closed-fiber components of the classical family: vertex
    classes of the Cut tiling modulo the image lattice beta(Y)."""
    fan = mumford_fan(datum)
    base_cut = cut(fan.cones[0])
    bbasis = datum.beta_matrix
    classes = {
        voronoi._canonical_shift([v], bbasis) for v in base_cut.vertices
    }
    return len(classes)
