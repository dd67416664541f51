"""Exact lattice enumeration: short/close vectors of positive definite
rational forms, coset minima, and integer points of polytopes.

All bounds are computed with rational arithmetic; integer ranges come from
exact floor/ceil of rational square roots, so no tolerance enters anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from . import linalg


def _floor_sqrt(x: Fraction) -> int:
    """floor(sqrt(x)) for x >= 0 rational."""
    if x < 0:
        raise ValueError("negative radicand")
    num, den = x.numerator, x.denominator
    return isqrt(num * den) // den


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def ldl(gram) -> tuple:
    """G = L^T D L with L unit upper triangular: returns (d, mu) where
    Q(x) = sum_i d[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2."""
    n = len(gram)
    g = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = g[i][i]
        if d[i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = g[i][j] / d[i]
        for r in range(i + 1, n):
            for c in range(r, n):
                g[r][c] -= d[i] * mu[i][r] * mu[i][c]
                g[c][r] = g[r][c]
    return d, mu


def enumerate_quadratic(gram, bound, center=None, step=None, residue=None):
    """Yield all integer vectors x with Q(x - center) <= bound, where Q is the
    positive definite form given by `gram`.

    `step`/`residue` restrict coordinate i to residue[i] + step[i] * Z.
    Yields (x, value) pairs; x is a tuple of ints.
    """
    n = len(gram)
    bound = Fraction(bound)
    if bound < 0:
        return
    center = [Fraction(c) for c in (center or [0] * n)]
    step = list(step or [1] * n)
    residue = list(residue or [0] * n)
    d, mu = ldl(gram)

    x = [0] * n

    def rec(i, remaining, shifts):
        # Q restricted: d[i]*(x_i - center_i + sum_{j>i} mu[i][j](x_j - center_j))^2
        if i < 0:
            yield tuple(x), bound - remaining
            return
        t = shifts[i]  # sum_{j>i} mu[i][j] * (x_j - center_j)
        # need d[i] * (x_i - center_i + t)^2 <= remaining
        half = remaining / d[i]
        r = _floor_sqrt(half)
        # |x_i - center_i + t| <= sqrt(half); sharpen the integer range exactly
        lo_f = center[i] - t - r - 1
        hi_f = center[i] - t + r + 1
        lo = _ceil_frac(Fraction(lo_f))
        hi = _floor_frac(Fraction(hi_f))
        s, res = step[i], residue[i]
        # first admissible value >= lo with value = res (mod s)
        start = lo + ((res - lo) % s)
        for xi in range(start, hi + 1, s):
            dev = xi - center[i] + t
            used = d[i] * dev * dev
            if used > remaining:
                continue
            x[i] = xi
            new_shifts = list(shifts)
            for k in range(i):
                new_shifts[k] = shifts[k] + mu[k][i] * (xi - center[i])
            yield from rec(i - 1, remaining - used, new_shifts)

    yield from rec(n - 1, bound, [Fraction(0)] * n)


def minima_of_coset(gram, residue, step=2):
    """All x = residue (mod step) minimizing Q(x), excluding x = 0 if it is in
    the coset; returns (min_value, [vectors])."""
    n = len(gram)
    if all(r % step == 0 for r in residue):
        raise ValueError("coset is the trivial class")
    # initial bound: the representative itself
    rep = tuple(r % step for r in residue)
    best = Fraction(linalg.quad_form(gram, rep))
    vecs = []
    # two passes: first pass establishes the true minimum, second collects
    for _ in range(2):
        found = []
        for x, _val in enumerate_quadratic(
            gram, best, step=[step] * n, residue=list(residue)
        ):
            q = Fraction(linalg.quad_form(gram, x))
            if q < best:
                best = q
            found.append(x)
        vecs = [x for x in found if Fraction(linalg.quad_form(gram, x)) == best]
    return best, sorted(vecs)


def closest_vectors(gram, target):
    """All integer v minimizing Q(v - target); returns (min_value, [vectors])."""
    n = len(gram)
    target = [Fraction(t) for t in target]
    # initial bound from rounding the target coordinatewise
    rounded = tuple(_floor_frac(t + Fraction(1, 2)) for t in target)
    diff = tuple(Fraction(r) - t for r, t in zip(rounded, target))
    best = Fraction(linalg.quad_form(gram, diff))
    vecs = []
    for _ in range(2):
        found = []
        for x, _val in enumerate_quadratic(gram, best, center=target):
            d = tuple(Fraction(c) - t for c, t in zip(x, target))
            q = Fraction(linalg.quad_form(gram, d))
            if q < best:
                best = q
            found.append(x)
        vecs = [
            x
            for x in found
            if Fraction(
                linalg.quad_form(gram, tuple(Fraction(c) - t for c, t in zip(x, target)))
            )
            == best
        ]
    return best, sorted(vecs)


def relevant_vectors_of_form(gram):
    """Voronoi-relevant vectors of Z^n under the positive definite form `gram`:
    v such that +-v are the unique minima of their class mod 2Z^n."""
    n = len(gram)
    out = []
    for bits in range(1, 2 ** n):
        residue = tuple((bits >> i) & 1 for i in range(n))
        _best, vecs = minima_of_coset(gram, residue, step=2)
        if len(vecs) == 2:
            out.extend(vecs)
    return sorted(out)


def hilbert_basis_pointed(cone):
    """Unique minimal generating set of cone ∩ Z^n for a pointed rational cone.

    Candidates are the lattice points of the zonotope spanned by the primitive
    rays; irreducibility is tested against the candidate set (sound because
    every irreducible lies in the zonotope and any summand can be taken
    irreducible).
    """
    from . import polyhedra  # local import to avoid a cycle

    rays = cone.rays
    if cone.lineality:
        raise ValueError("cone is not pointed")
    if not rays:
        return ()
    subset_sums = [tuple(0 for _ in rays[0])]
    for r in rays:
        subset_sums += [linalg.add(s, r) for s in subset_sums]
    zono = polyhedra.hull(subset_sums, dim=cone.dim, allow_big=True)
    cands = [
        p
        for p in integer_points_in_polytope(zono)
        if any(p) and cone.contains(p)
    ]
    basis = []
    for p in cands:
        reducible = False
        for q in cands:
            if q == p:
                continue
            rem = linalg.sub(p, q)
            if any(rem) and cone.contains(rem):
                reducible = True
                break
        if not reducible:
            basis.append(p)
    return tuple(sorted(basis))


def lineality_lattice_basis(cone):
    """Basis rows of (lineality space of cone) ∩ Z^n (saturated)."""
    rows = list(cone.facets) + list(cone.equations)
    n = cone.dim
    if not rows:
        return tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))
    left, diag, right = linalg.smith_normal_form(linalg.mat(rows))
    k = sum(1 for i in range(min(len(diag), n)) if diag[i][i] != 0)
    cols = linalg.transpose(right)
    return tuple(cols[i] for i in range(k, n))


def integer_points_in_polytope(poly):
    """All integer points of a RationalPolytope, by box scan over the vertex
    bounding box with facet filtering."""
    if poly.is_empty():
        return []
    dim = poly.dim
    los = [min(v[i] for v in poly.vertices) for i in range(dim)]
    his = [max(v[i] for v in poly.vertices) for i in range(dim)]
    los = [_ceil_frac(Fraction(x)) for x in los]
    his = [_floor_frac(Fraction(x)) for x in his]
    out = []

    def rec(i, prefix):
        if i == dim:
            if poly.contains(prefix):
                out.append(tuple(prefix))
            return
        for xi in range(los[i], his[i] + 1):
            rec(i + 1, prefix + [xi])

    rec(0, [])
    return sorted(out)


def lattice_points_in_polytope(poly, basis_cols):
    """Points of the sublattice spanned by the columns of `basis_cols` lying in
    `poly`; returns pairs (coefficient_vector, lattice_point)."""
    if poly.is_empty():
        return []
    dim = poly.dim
    binv = linalg.inverse(basis_cols)
    # transform polytope vertices into coefficient space to get the scan box
    coeff_verts = [linalg.matvec(binv, v) for v in poly.vertices]
    los = [_ceil_frac(Fraction(min(cv[i] for cv in coeff_verts))) for i in range(dim)]
    his = [_floor_frac(Fraction(max(cv[i] for cv in coeff_verts))) for i in range(dim)]
    out = []

    def rec(i, prefix):
        if i == dim:
            pt = linalg.matvec(basis_cols, prefix)
            pt = tuple(int(x) for x in pt)
            if poly.contains(pt):
                out.append((tuple(prefix), pt))
            return
        for xi in range(los[i], his[i] + 1):
            rec(i + 1, prefix + [xi])

    rec(0, [])
    return sorted(out)
