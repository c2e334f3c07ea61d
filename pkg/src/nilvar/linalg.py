"""Exact dense linear algebra over Q or Q(t); rows are lists of scalars."""
from fractions import Fraction

from .field import simplify

ZERO = Fraction(0)
ONE = Fraction(1)


class SingularMatrix(ArithmeticError):
    pass


class DimensionMismatch(ValueError):
    pass


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (rows, pivots). Zero rows dropped."""
    m = [[simplify(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(m)):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = 1 / piv
            m[r] = [simplify(x * inv) if x else ZERO for x in m[r]]
        row = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [simplify(a - f * b) if b else a for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None) -> int:
    return len(rref(rows, ncols)[0])


def nullspace(rows, ncols: int):
    """Basis of {x : rows . x = 0}, one vector per free column, in RREF-compatible order."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = simplify(-row[f])
        basis.append(v)
    return basis


def identity(n: int):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    if a and len(a[0]) != m:
        raise DimensionMismatch("inner dimensions differ")
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(p):
            s = ZERO
            for k in range(m):
                if ai[k] and b[k][j]:
                    s = s + ai[k] * b[k][j]
            row.append(simplify(s))
        out.append(row)
    return out


def matvec(a, v):
    if a and len(a[0]) != len(v):
        raise DimensionMismatch("matrix/vector sizes differ")
    out = []
    for row in a:
        s = ZERO
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(simplify(s))
    return out


def transpose(a):
    return [list(r) for r in zip(*a)]


def inverse(a):
    """Gauss-Jordan inverse; raises SingularMatrix."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("matrix is not square")
    aug = [list(a[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [r[n:] for r in red]


def determinant(a):
    n = len(a)
    m = [[simplify(x) for x in r] for r in a]
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        piv = m[c][c]
        det = det * piv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / piv
                m[i] = [simplify(x - f * y) if y else x for x, y in zip(m[i], m[c])]
    return simplify(det)
