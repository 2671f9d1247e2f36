"""Dense exact linear algebra over CycNumber.

Matrices are tuples of row tuples.  Subspaces are carried as reduced row
echelon bases, which double as canonical cache keys.
"""

from __future__ import annotations

from typing import Sequence

from .cyclo import ONE, ZERO, CycNumber, rational

Matrix = tuple  # tuple[tuple[CycNumber, ...], ...]
Vector = tuple


def identity(n: int = 5) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(x if isinstance(x, CycNumber) else rational(x) for x in row) for row in rows)


def diag(entries: Sequence) -> Matrix:
    n = len(entries)
    return as_matrix([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def matmul(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    ncols = len(b[0])
    for row in a:
        acc = [ZERO] * ncols
        for k, aik in enumerate(row):
            if aik:
                for j, bkj in enumerate(b[k]):
                    if bkj:
                        acc[j] = acc[j] + aik * bkj
        rows.append(tuple(acc))
    return tuple(rows)


def matvec(a: Matrix, v: Vector) -> Vector:
    out = []
    for row in a:
        acc = ZERO
        for aik, vk in zip(row, v):
            if aik and vk:
                acc = acc + aik * vk
        out.append(acc)
    return tuple(out)


def scale(c: CycNumber, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matpow(a: Matrix, k: int) -> Matrix:
    result, base = identity(len(a)), a
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def trace(a: Matrix) -> CycNumber:
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def is_scalar(a: Matrix):
    """Return the scalar c if a == c*I, else None."""
    c = a[0][0]
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if i == j:
                if x != c:
                    return None
            elif x:
                return None
    return c


def rref(rows: Sequence[Vector]) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        if inv != ONE:
            m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows: Sequence[Vector]) -> int:
    return len(rref(rows)[0])


def nullspace(a: Matrix) -> tuple[Vector, ...]:
    """Basis (in reduced row echelon form) of {v : a v = 0}."""
    ncols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(tuple(v))
    return rref(basis)[0]


def det(a: Matrix) -> CycNumber:
    m = [list(r) for r in a]
    n = len(m)
    result = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        pv = m[c][c]
        result = result * pv
        inv = pv.inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[c])]
    return result


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [tuple(row) + identity(n)[i] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def subspace_key(basis: Sequence[Vector]) -> tuple:
    return tuple(tuple(x.key() for x in row) for row in basis)


def intersect(u: Sequence[Vector], w: Sequence[Vector]) -> tuple[Vector, ...]:
    """Intersection of two row-spanned subspaces, in reduced row echelon form."""
    if not u or not w:
        return ()
    # solve sum a_i u_i = sum b_j w_j
    cols = [tuple(x) for x in u] + [tuple(-x for x in y) for y in w]
    system = transpose(tuple(cols))
    sols = nullspace(system)
    vecs = []
    for s in sols:
        v = [ZERO] * len(u[0])
        for coef, row in zip(s[: len(u)], u):
            if coef:
                v = [x + coef * y for x, y in zip(v, row)]
        vecs.append(tuple(v))
    return rref(vecs)[0]
