"""Exact rational convex geometry: cones and bounded polytopes.

Both carry canonical V- and H-representations, computed by a double
description sweep with the combinatorial adjacency test.  Determinism: rays
and facet normals are primitive integer vectors in sorted order, so
structural equality is set equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DimensionCap, EmptyInput, ZeroCone

DEFAULT_DIM_CAP = 8
VERTEX_ENUM_SOFT_CAP = 6


def _check_dim(dim: int, allow_big: bool):
    if dim > DEFAULT_DIM_CAP:
        raise DimensionCap(f"ambient dimension {dim} exceeds cap {DEFAULT_DIM_CAP}")
    if dim > VERTEX_ENUM_SOFT_CAP and not allow_big:
        raise DimensionCap(
            f"dual-description in dimension {dim} requires allow_big=True"
        )


def _dd(inequalities, dim, equalities=()):
    """Rays and lineality of {x : a.x >= 0 for a in inequalities, e.x = 0 ...}.

    Returns (rays, lineality_basis), both lists of primitive integer tuples.
    Double description sweep; adjacency by the combinatorial subset test, with
    tight sets recomputed against the processed rows.
    """
    lineality = [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
    rays = []
    processed = []
    todo = []
    for e in equalities:
        todo.append(linalg.primitive(e))
        todo.append(linalg.primitive(linalg.neg(e)))
    todo += [linalg.primitive(a) for a in inequalities]

    def tight(r):
        return frozenset(i for i, row in enumerate(processed) if linalg.dot(row, r) == 0)

    for a in todo:
        if not any(a) or a in processed:
            continue
        hit = next((l for l in lineality if linalg.dot(a, l) != 0), None)
        if hit is not None:
            l0 = hit if linalg.dot(a, hit) > 0 else linalg.neg(hit)
            al0 = linalg.dot(a, l0)
            lineality = [
                linalg.primitive(
                    linalg.sub(linalg.smul(al0, l), linalg.smul(linalg.dot(a, l), l0))
                )
                for l in lineality
                if l is not hit
            ]
            new_rays = []
            for r in rays:
                ar = linalg.dot(a, r)
                if ar != 0:
                    r = linalg.primitive(
                        linalg.sub(linalg.smul(al0, r), linalg.smul(ar, l0))
                    )
                if any(r):
                    new_rays.append(r)
            new_rays.append(l0)
            rays = sorted(set(new_rays))
        else:
            vals = {r: linalg.dot(a, r) for r in rays}
            pos = [r for r in rays if vals[r] > 0]
            zero = [r for r in rays if vals[r] == 0]
            negt = [r for r in rays if vals[r] < 0]
            zsets = {r: tight(r) for r in rays}
            combined = set()
            for rp in pos:
                for rn in negt:
                    common = zsets[rp] & zsets[rn]
                    if any(
                        common <= zsets[rt] for rt in rays if rt is not rp and rt is not rn
                    ):
                        continue
                    new = linalg.primitive(
                        linalg.sub(linalg.smul(vals[rp], rn), linalg.smul(vals[rn], rp))
                    )
                    if any(new):
                        combined.add(new)
            rays = sorted(set(pos) | set(zero) | combined)
        processed.append(a)
    ray_list = sorted(r for r in set(rays) if any(r))
    lin_list = _canonical_lineality(lineality, dim)
    return ray_list, lin_list


def _canonical_lineality(gens, dim):
    """Echelonized primitive basis of the span of gens."""
    a = [[Fraction(x) for x in g] for g in gens if any(g)]
    basis = []
    r = 0
    for col in range(dim):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    for i in range(r):
        basis.append(linalg.primitive(tuple(a[i])))
    return sorted(basis)


@dataclass(frozen=True)
class RationalCone:
    """Polyhedral cone with canonical dual description.

    rays/lineality generate the cone; facet inequalities are n.x >= 0 and
    equations cut out its linear span.
    """

    dim: int
    rays: tuple
    lineality: tuple
    facets: tuple
    equations: tuple

    @property
    def pointed(self) -> bool:
        return not self.lineality

    def space_dim(self) -> int:
        return linalg.rank(self.rays + self.lineality) if (self.rays or self.lineality) else 0

    def contains(self, v) -> bool:
        v = tuple(v)
        return all(linalg.dot(e, v) == 0 for e in self.equations) and all(
            linalg.dot(f, v) >= 0 for f in self.facets
        )

    def interior_contains(self, v) -> bool:
        """Relative interior membership."""
        v = tuple(v)
        return all(linalg.dot(e, v) == 0 for e in self.equations) and all(
            linalg.dot(f, v) > 0 for f in self.facets
        )

    def dual(self) -> "RationalCone":
        return RationalCone(
            dim=self.dim,
            rays=self.facets,
            lineality=self.equations,
            facets=self.rays,
            equations=self.lineality,
        )

    def intersection(self, other: "RationalCone") -> "RationalCone":
        return cone_from_inequalities(
            self.facets + other.facets,
            self.dim,
            equalities=self.equations + other.equations,
        )

    def is_face_of(self, other: "RationalCone") -> bool:
        if not all(other.contains(r) for r in self.rays + self.lineality):
            return False
        # a face is cut by a supporting hyperplane; equivalent test: every
        # generator of `other` tight on all facets of `other` tight on self
        tight = [
            f
            for f in other.facets
            if all(linalg.dot(f, r) == 0 for r in self.rays + self.lineality)
        ]
        cut = cone_from_inequalities(
            other.facets, self.dim, equalities=other.equations + tuple(tight)
        )
        return cut == self


def cone_from_rays(rays, dim, lineality=(), allow_big=False) -> RationalCone:
    _check_dim(dim, allow_big)
    gens = [linalg.primitive(r) for r in rays if any(r)]
    lin = [linalg.primitive(l) for l in lineality if any(l)]
    # dual cone of the generators = H-representation
    facets, equations = _dd(gens, dim, equalities=lin)
    # extreme rays = rays of the double dual (prunes non-extreme input)
    ext_rays, ext_lin = _dd(facets, dim, equalities=equations)
    return RationalCone(
        dim=dim,
        rays=tuple(ext_rays),
        lineality=tuple(ext_lin),
        facets=tuple(facets),
        equations=tuple(equations),
    )


def cone_from_inequalities(ineqs, dim, equalities=(), allow_big=False) -> RationalCone:
    _check_dim(dim, allow_big)
    rays, lin = _dd([linalg.primitive(a) for a in ineqs if any(a)], dim,
                    equalities=[linalg.primitive(e) for e in equalities if any(e)])
    facets, equations = _dd(rays, dim, equalities=lin)
    return RationalCone(
        dim=dim,
        rays=tuple(rays),
        lineality=tuple(lin),
        facets=tuple(facets),
        equations=tuple(equations),
    )


def cone_dual(c: RationalCone) -> RationalCone:
    return c.dual()


def _norm_point(p):
    out = []
    for x in p:
        f = Fraction(x)
        out.append(int(f) if f.denominator == 1 else f)
    return tuple(out)


@dataclass(frozen=True)
class RationalPolytope:
    """Bounded polytope with canonical vertex list and facet inequalities.

    Facets are stored homogeneously as primitive integer tuples
    (c, n_1, .., n_d) meaning n.x + c >= 0; equations likewise cut the
    affine hull.
    """

    dim: int
    vertices: tuple
    facets: tuple
    equations: tuple

    def is_empty(self) -> bool:
        return not self.vertices

    def space_dim(self) -> int:
        if not self.vertices:
            return -1
        v0 = self.vertices[0]
        return linalg.rank([linalg.sub(v, v0) for v in self.vertices[1:]])

    def contains(self, x) -> bool:
        x = (1,) + tuple(x)
        return all(linalg.dot(e, x) == 0 for e in self.equations) and all(
            linalg.dot(f, x) >= 0 for f in self.facets
        )

    def interior_contains(self, x) -> bool:
        """Relative interior membership."""
        x = (1,) + tuple(x)
        return all(linalg.dot(e, x) == 0 for e in self.equations) and all(
            linalg.dot(f, x) > 0 for f in self.facets
        )

    def facet_pairs(self):
        """Facets as (normal, offset) with inequality normal.x + offset >= 0."""
        return [(f[1:], f[0]) for f in self.facets]

    def translate(self, t) -> "RationalPolytope":
        t = tuple(t)
        verts = tuple(_norm_point(linalg.add(v, t)) for v in self.vertices)
        facets = tuple(
            linalg.primitive((f[0] - linalg.dot(f[1:], t),) + f[1:]) for f in self.facets
        )
        eqs = tuple(
            linalg.primitive((e[0] - linalg.dot(e[1:], t),) + e[1:]) for e in self.equations
        )
        return RationalPolytope(self.dim, tuple(sorted(verts)), tuple(sorted(facets)),
                                tuple(sorted(eqs)))


def hull(points, dim=None, allow_big=False) -> RationalPolytope:
    pts = [_norm_point(p) for p in points]
    if not pts:
        raise EmptyInput("hull of no points")
    if dim is None:
        dim = len(pts[0])
    _check_dim(dim, allow_big)
    homog = [(1,) + p for p in pts]
    facets, equations = _dd(homog, dim + 1)
    ext, lin = _dd(facets, dim + 1, equalities=equations)
    if lin or any(r[0] == 0 for r in ext):
        raise EmptyInput("point set is not bounded/valid")
    verts = sorted(_norm_point(tuple(Fraction(x, r[0]) for x in r[1:])) for r in ext)
    return RationalPolytope(dim, tuple(verts), tuple(facets), tuple(equations))


def from_inequalities(ineqs, dim, equalities=(), allow_big=False) -> RationalPolytope:
    """Polytope {x : n.x + c >= 0} from homogeneous rows (c, n)."""
    _check_dim(dim, allow_big)
    rows = [linalg.primitive(a) for a in ineqs] + [(1,) + (0,) * dim]
    eqs = [linalg.primitive(e) for e in equalities]
    ext, lin = _dd(rows, dim + 1, equalities=eqs)
    if lin:
        raise EmptyInput("inequality system is not bounded")
    for r in ext:
        if r[0] == 0:
            raise EmptyInput("inequality system has recession directions")
    verts = sorted(_norm_point(tuple(Fraction(x, r[0]) for x in r[1:])) for r in ext)
    if not verts:
        return RationalPolytope(dim, (), (), ())
    homog = [(1,) + v for v in verts]
    facets, equations = _dd(homog, dim + 1)
    return RationalPolytope(dim, tuple(verts), tuple(facets), tuple(equations))


def faces(poly: RationalPolytope):
    """Face lattice as {dim: [sorted vertex-index tuples]}; includes the
    polytope itself and all proper nonempty faces."""
    verts = poly.vertices
    if not verts:
        return {}
    incidence = []
    for f in poly.facets:
        tight = frozenset(
            i for i, v in enumerate(verts) if linalg.dot(f, (1,) + v) == 0
        )
        incidence.append(tight)
    top = frozenset(range(len(verts)))
    seen = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for face in frontier:
            for tight in incidence:
                sub = face & tight
                if sub and sub != face and sub not in seen:
                    seen.add(sub)
                    nxt.append(sub)
        frontier = nxt
    out = {}
    for face in seen:
        idx = sorted(face)
        pts = [verts[i] for i in idx]
        d = linalg.rank([linalg.sub(p, pts[0]) for p in pts[1:]]) if len(pts) > 1 else 0
        out.setdefault(d, []).append(tuple(idx))
    for d in out:
        out[d] = sorted(out[d])
    return out


def minkowski(p: RationalPolytope, q: RationalPolytope) -> RationalPolytope:
    if p.is_empty() or q.is_empty():
        raise EmptyInput("minkowski sum with empty polytope")
    return hull([linalg.add(a, b) for a in p.vertices for b in q.vertices], dim=p.dim)


def scale(p: RationalPolytope, t) -> RationalPolytope:
    t = Fraction(t)
    if t <= 0:
        raise EmptyInput("scale factor must be positive")
    if p.is_empty():
        return p
    return hull([linalg.smul(t, v) for v in p.vertices], dim=p.dim)


def cut(cone: RationalCone):
    """Slice a cone at height one in its first coordinate, shifted back to the
    remaining coordinates.  The zero cone yields the empty polytope."""
    if not cone.rays and not cone.lineality:
        return RationalPolytope(cone.dim - 1, (), (), ())
    if cone.lineality or any(r[0] <= 0 for r in cone.rays):
        raise ZeroCone("cone is not strictly over the height coordinate")
    verts = [tuple(Fraction(x, r[0]) for x in r[1:]) for r in cone.rays]
    return hull(verts, dim=cone.dim - 1)


def cone_over_shifted(poly: RationalPolytope) -> RationalCone:
    """Cone over {1} x P: inverse of `cut` for fans over a base."""
    if poly.is_empty():
        raise ZeroCone("cone over the empty polytope")
    rays = [(1,) + v for v in poly.vertices]
    return cone_from_rays(rays, poly.dim + 1)
