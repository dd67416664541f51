"""Small exact linear algebra over Z and Q.

Vectors are tuples, matrices are tuples of row tuples.  Entries are ints or
Fractions; everything stays exact.  Sizes here are tiny (rank <= 8 plus a
homogenizing coordinate), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple
Mat = tuple


def vec(it) -> Vec:
    return tuple(it)


def mat(rows) -> Mat:
    return tuple(tuple(r) for r in rows)


def zeros(n: int) -> Vec:
    return (0,) * n


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def smul(c, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def dot(u: Vec, v: Vec):
    return sum(a * b for a, b in zip(u, v))


def matvec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def vecmat(v: Vec, m: Mat) -> Vec:
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(len(m[0])))


def matmul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def quad_form(m: Mat, u: Vec, v: Vec | None = None):
    """u^T m v (v defaults to u)."""
    if v is None:
        v = u
    return dot(u, matvec(m, v))


def det(m: Mat):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    prod = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        prod *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    d = sign * prod
    return int(d) if d.denominator == 1 else d


def solve(m: Mat, rhs: Vec) -> Vec:
    """Solve m x = rhs exactly; m must be square invertible."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] for i in range(n))


def inverse(m: Mat) -> Mat:
    n = len(m)
    cols = [solve(m, tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]
    return transpose(mat(cols))


def rank(rows) -> int:
    """Rank of a list of rational vectors."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for col in range(ncols):
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
        if r == len(a):
            break
    return r


def gcd_vec(v: Vec) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    return g


def primitive(v: Vec) -> Vec:
    """Scale a rational vector to a primitive integer vector, keeping direction."""
    denom = 1
    for x in v:
        if isinstance(x, Fraction):
            denom = denom * x.denominator // gcd(denom, x.denominator)
    w = tuple(int(x * denom) for x in v)
    g = gcd_vec(w)
    if g == 0:
        return tuple(0 for _ in v)
    return tuple(x // g for x in w)


def is_integer_vec(v: Vec) -> bool:
    return all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) for x in v)


def to_int_vec(v: Vec) -> Vec:
    return tuple(int(x) for x in v)


def smith_normal_form(m: Mat):
    """Smith decomposition: returns (left, diag, right) with left*m*right = diag.

    left and right are unimodular; diag's nonzero entries d_1 | d_2 | ... are
    the nonnegative invariant factors.
    """
    a = [list(row) for row in m]
    nr, nc = len(a), len(a[0]) if a else 0
    left = [list(r) for r in identity(nr)]
    right = [list(r) for r in identity(nc)]

    def row_op(i, j, c):  # row_i += c*row_j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        left[i] = [x + c * y for x, y in zip(left[i], left[j])]

    def col_op(i, j, c):  # col_i += c*col_j
        for r in range(nr):
            a[r][i] += c * a[r][j]
        for r in range(nc):
            right[r][i] += c * right[r][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in range(nr):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(nc):
            right[r][i], right[r][j] = right[r][j], right[r][i]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    t = 0
    while t < min(nr, nc):
        # find a nonzero pivot of minimal absolute value in the remaining block
        piv = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if a[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, nr):
            if a[i][t] != 0:
                q = a[i][t] // a[t][t]
                row_op(i, t, -q)
                if a[i][t] != 0:
                    dirty = True
        for j in range(t + 1, nc):
            if a[t][j] != 0:
                q = a[t][j] // a[t][t]
                col_op(j, t, -q)
                if a[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility d_t | a[i][j] for the rest
        bad = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(t, bad, 1)
            continue
        t += 1
    return mat(left), mat(a), mat(right)


def invariant_factors(m: Mat) -> tuple:
    _, d, _ = smith_normal_form(m)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]))))


def hnf_lattice_basis(vectors, n: int):
    """Echelon basis (as rows) of the sublattice of Z^n generated by integer vectors."""
    basis = []
    work = [list(v) for v in vectors if any(v)]
    for col in range(n):
        piv = None
        for r in range(len(work)):
            if work[r][col] != 0 and all(x == 0 for x in work[r][:col]):
                if piv is None or abs(work[r][col]) < abs(work[piv][col]):
                    piv = r
        if piv is None:
            continue
        changed = True
        while changed:
            changed = False
            for r in range(len(work)):
                if r != piv and work[r][col] != 0 and all(x == 0 for x in work[r][:col]):
                    q = work[r][col] // work[piv][col]
                    work[r] = [x - q * y for x, y in zip(work[r], work[piv])]
                    if work[r][col] != 0:
                        piv = r
                        changed = True
        basis.append(tuple(work[piv]))
        work.pop(piv)
    return basis
