"""2-cocycles, coboundaries and H^2 for the trivial 1-dimensional module."""
from .algebra import Algebra, Subspace, class_flags
from .field import simplify
from .linalg import DimensionMismatch, ZERO, ONE, matmul, transpose, nullspace, identity

KINDS = ("full", "symmetric", "antisymmetric")


class KindMismatch(ValueError):
    pass


def zero_matrix(n):
    return [[ZERO] * n for _ in range(n)]


def delta(n, i, j, kind="full"):
    """Delta_ij, Delta^c_ij or Delta^a_ij as a matrix (1-based i, j)."""
    m = zero_matrix(n)
    m[i - 1][j - 1] = m[i - 1][j - 1] + ONE
    if kind == "symmetric":
        m[j - 1][i - 1] = m[j - 1][i - 1] + ONE
    elif kind == "antisymmetric":
        m[j - 1][i - 1] = m[j - 1][i - 1] - ONE
    return m


def flatten(m):
    return [x for row in m for x in row]


def unflatten(v, n):
    return [list(v[r * n:(r + 1) * n]) for r in range(n)]


def cocycle_space(n, kind="full"):
    """Canonical basis of Z^2 of the given kind, row-major."""
    if kind == "full":
        return [delta(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    if kind == "symmetric":
        return [delta(n, i, j, kind) for i in range(1, n + 1) for j in range(i, n + 1)]
    if kind == "antisymmetric":
        return [delta(n, i, j, kind) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    raise KindMismatch("unknown kind " + str(kind))


def coboundary(A: Algebra, f):
    """delta f as a matrix, f a functional given by its coordinates."""
    n = A.dim
    m = zero_matrix(n)
    for (i, j, k), c in A.constants.items():
        if f[k - 1]:
            m[i - 1][j - 1] = simplify(m[i - 1][j - 1] + c * f[k - 1])
    return m


def coboundary_space(A: Algebra) -> Subspace:
    """B^2 as a subspace of the flattened n*n coordinates."""
    n = A.dim
    vecs = []
    for k in range(n):
        f = [ZERO] * n
        f[k] = ONE
        vecs.append(flatten(coboundary(A, f)))
    return Subspace(n * n, vecs)


def _check_kind(A, kind):
    if kind not in KINDS:
        raise KindMismatch("unknown kind " + str(kind))
    flags = class_flags(A)
    if kind == "symmetric" and not flags["commutative"]:
        raise KindMismatch("symmetric cocycles need a commutative algebra")
    if kind == "antisymmetric" and not flags["anticommutative"]:
        raise KindMismatch("antisymmetric cocycles need an anticommutative algebra")


def h2_basis(A: Algebra, kind="full"):
    """Representatives of a complement of B^2 in Z^2 of the given kind."""
    _check_kind(A, kind)
    n = A.dim
    B = coboundary_space(A)
    kind_space = Subspace(n * n, [flatten(m) for m in cocycle_space(n, kind)])
    # every coboundary of a (anti)commutative algebra is (anti)symmetric
    assert kind_space.contains_space(B)
    acc = B
    out = []
    for m in cocycle_space(n, kind):
        v = flatten(m)
        if not acc.contains(v):
            out.append(m)
            acc = Subspace(n * n, acc.basis + [v])
    return out


def act_on_cocycle(theta, phi):
    if len(theta) != len(phi) or any(len(r) != len(phi) for r in theta + phi):
        raise DimensionMismatch("cocycle and base change sizes differ")
    return matmul(matmul(transpose(phi), theta), phi)


def central_extension(A: Algebra, theta) -> Algebra:
    n = A.dim
    if len(theta) != n:
        raise DimensionMismatch("cocycle size differs from algebra dimension")
    cs = dict(A.constants)
    for i in range(n):
        for j in range(n):
            if theta[i][j]:
                cs[(i + 1, j + 1, n + 1)] = theta[i][j]
    return Algebra(n + 1, cs)


def annihilator_of_cocycle(theta) -> Subspace:
    n = len(theta)
    rows = [list(r) for r in theta] + transpose(theta)
    rows = [r for r in rows if any(r)]
    return Subspace(n, nullspace(rows, n) if rows else identity(n))


def shift_isomorphism(f):
    """I + sum f_k E_{n+1,k}: takes A_theta to A_{theta - delta f}."""
    n = len(f)
    g = identity(n + 1)
    for k in range(n):
        g[n][k] = simplify(f[k])
    return g


def in_coboundaries(A: Algebra, theta) -> bool:
    return coboundary_space(A).contains(flatten(theta))
