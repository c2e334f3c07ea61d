"""Algebras given by structure constants c_ij^k (1-based), products and base change."""
from fractions import Fraction
import random

from .field import RatFunc, simplify
from .linalg import (
    DimensionMismatch, SingularMatrix, ZERO, ONE,
    rref, nullspace, identity, inverse, matvec, matmul,
)


class NotNilpotentInput(ValueError):
    pass


class _NotNilpotent:
    def __repr__(self):
        return "NotNilpotent"

    def __bool__(self):
        return False


NotNilpotent = _NotNilpotent()


class Algebra:
    __slots__ = ("dim", "constants", "_table")

    def __init__(self, dim: int, constants=None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        cs = {}
        for (i, j, k), v in (constants or {}).items():
            if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
                raise IndexError("index out of range: %r" % ((i, j, k),))
            v = simplify(v)
            if v:
                cs[(i, j, k)] = v
        self.constants = cs
        self._table = None

    @property
    def field_tag(self) -> str:
        return "Qt" if any(isinstance(v, RatFunc) for v in self.constants.values()) else "Q"

    def c(self, i, j, k):
        return self.constants.get((i, j, k), ZERO)

    def table(self):
        """(i, j) -> [(k, c)] with 0-based indices."""
        if self._table is None:
            t = {}
            for (i, j, k), v in sorted(self.constants.items()):
                t.setdefault((i - 1, j - 1), []).append((k - 1, v))
            self._table = t
        return self._table

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.dim == other.dim and self.constants == other.constants

    def __hash__(self):
        return hash((self.dim, frozenset(self.constants.items())))

    def __repr__(self):
        items = ", ".join("e%de%d=%s*e%d" % (i, j, v, k)
                          for (i, j, k), v in sorted(self.constants.items()))
        return "Algebra(%d; %s)" % (self.dim, items)

    def map_values(self, f):
        return Algebra(self.dim, {key: f(v) for key, v in self.constants.items()})


def basis_vector(n: int, i: int):
    """e_i, 1-based."""
    v = [ZERO] * n
    v[i - 1] = ONE
    return v


def multiply(A: Algebra, x, y):
    n = A.dim
    if len(x) != n or len(y) != n:
        raise DimensionMismatch("vector length differs from algebra dimension")
    out = [ZERO] * n
    for (i, j), terms in A.table().items():
        xi = x[i]
        if not xi:
            continue
        yj = y[j]
        if not yj:
            continue
        s = xi * yj
        for k, c in terms:
            out[k] = out[k] + s * c
    return [simplify(v) for v in out]


class Subspace:
    """Row space kept in reduced row echelon form."""

    __slots__ = ("n", "basis", "pivots")

    def __init__(self, n: int, vectors=()):
        self.n = n
        vs = [list(v) for v in vectors]
        for v in vs:
            if len(v) != n:
                raise DimensionMismatch("vector length differs from ambient dimension")
        self.basis, self.pivots = rref(vs, n) if vs else ([], [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, tuple(map(tuple, self.basis))))

    def __repr__(self):
        return "Subspace(%d, %r)" % (self.n, self.basis)

    def __add__(self, other):
        return Subspace(self.n, self.basis + other.basis)

    def contains(self, v) -> bool:
        return Subspace(self.n, self.basis + [list(v)]).dim == self.dim

    def contains_space(self, other) -> bool:
        return (self + other).dim == self.dim

    def transform(self, m):
        """Image under the coordinate map v -> m v."""
        return Subspace(self.n, [matvec(m, v) for v in self.basis])

    def intersection(self, other):
        # x = sum a_i u_i = sum b_j w_j
        rows = [list(col) for col in zip(*(self.basis + [[-x for x in w] for w in other.basis]))]
        if not self.basis or not other.basis:
            return Subspace(self.n)
        ns = nullspace(rows, self.dim + other.dim)
        vecs = []
        for coeffs in ns:
            v = [ZERO] * self.n
            for a, u in zip(coeffs[:self.dim], self.basis):
                if a:
                    v = [simplify(p + a * q) for p, q in zip(v, u)]
            vecs.append(v)
        return Subspace(self.n, vecs)


def full_space(n):
    return Subspace(n, identity(n))


def span_products(A: Algebra, U: Subspace, W: Subspace):
    return [multiply(A, u, w) for u in U.basis for w in W.basis]


def _is_nilpotent(A: Algebra) -> bool:
    # upper central series reaches the whole space iff A is nilpotent
    n = A.dim
    Z = Subspace(n)
    while True:
        # x with x e_j, e_j x in Z for all j: kernel of composite map mod Z
        rows = _mult_rows(A, Z)
        nxt = Subspace(n, nullspace(rows, n)) if rows else full_space(n)
        if nxt.dim == n:
            return True
        if nxt.dim == Z.dim:
            return False
        Z = nxt


def _mult_rows(A: Algebra, Z: Subspace):
    """Linear conditions on x expressing x e_j, e_j x lie in Z."""
    n = A.dim
    # functionals vanishing on Z
    ann_z = nullspace(Z.basis, n) if Z.basis else identity(n)
    rows = []
    for j in range(n):
        left = [[ZERO] * n for _ in ann_z]
        right = [[ZERO] * n for _ in ann_z]
        for (p, q), terms in A.table().items():
            for idx, f in enumerate(ann_z):
                s = ZERO
                for k, c in terms:
                    if f[k]:
                        s = s + f[k] * c
                if not s:
                    continue
                if q == j:
                    left[idx][p] = left[idx][p] + s
                if p == j:
                    right[idx][q] = right[idx][q] + s
        rows.extend(left)
        rows.extend(right)
    return rows


def power_chain(A: Algebra):
    """[N^1, N^2, ...] ending at zero, or at the first repeat if A is not nilpotent."""
    n = A.dim
    chain = [full_space(n)]
    nilp = _is_nilpotent(A)
    while chain[-1].dim:
        k = len(chain)
        vecs = []
        for i in range(1, k + 1):
            vecs.extend(span_products(A, chain[i - 1], chain[k - i]))
        nxt = Subspace(n, vecs)
        if not nilp and nxt == chain[-1]:
            break
        chain.append(nxt)
    return chain


def nilpotency_index(A: Algebra):
    if not _is_nilpotent(A):
        return NotNilpotent
    return len(power_chain(A))


def annihilator(A: Algebra) -> Subspace:
    n = A.dim
    rows = []
    tab = A.table()
    for j in range(n):
        for k in range(n):
            left = [ZERO] * n
            right = [ZERO] * n
            for i in range(n):
                for kk, c in tab.get((i, j), ()):
                    if kk == k:
                        left[i] = c
                for kk, c in tab.get((j, i), ()):
                    if kk == k:
                        right[i] = c
            if any(left):
                rows.append(left)
            if any(right):
                rows.append(right)
    return Subspace(n, nullspace(rows, n) if rows else identity(n))


def class_flags(A: Algebra) -> dict:
    cs = A.constants
    comm = all(cs.get((j, i, k), ZERO) == v for (i, j, k), v in cs.items())
    anti = all(cs.get((j, i, k), ZERO) == -v for (i, j, k), v in cs.items())
    gamma = all(k > max(i, j) for (i, j, k) in cs)
    return {"commutative": comm, "anticommutative": anti, "gamma_form": gamma}


def apply_base_change(A: Algebra, g) -> Algebra:
    """Constants of A in the basis E_i = sum_j g[j][i] e_j (columns of g)."""
    n = A.dim
    if len(g) != n or any(len(r) != n for r in g):
        raise DimensionMismatch("base change size differs from algebra dimension")
    ginv = inverse(g)
    cols = [[g[r][i] for r in range(n)] for i in range(n)]
    out = {}
    for i in range(n):
        for j in range(n):
            prod = multiply(A, cols[i], cols[j])
            if not any(prod):
                continue
            new = matvec(ginv, prod)
            for k, v in enumerate(new):
                if v:
                    out[(i + 1, j + 1, k + 1)] = v
    return Algebra(n, out)


def coordinates_after(g, v):
    """Coordinates of the old-basis vector v in the new basis given by g."""
    return matvec(inverse(g), v)


def gamma_normalize(A: Algebra):
    n = A.dim
    if class_flags(A)["gamma_form"]:
        return identity(n), A
    if not _is_nilpotent(A):
        raise NotNilpotentInput("algebra is not nilpotent")
    chain = power_chain(A)
    chosen = []
    for a in range(len(chain) - 1):
        deeper = chain[a + 1]
        acc = Subspace(n, deeper.basis)
        for v in chain[a].basis:
            if not acc.contains(v):
                chosen.append(v)
                acc = Subspace(n, acc.basis + [v])
    g = [[chosen[i][r] for i in range(n)] for r in range(n)]
    return g, apply_base_change(A, g)


def free_positions(n: int, cls: str = "general", gamma_form: bool = True):
    """Independent coordinates (i, j, k) of the requested class."""
    out = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if cls == "commutative" and i > j:
                continue
            if cls == "anticommutative" and i >= j:
                continue
            for k in range(1, n + 1):
                if gamma_form and k <= max(i, j):
                    continue
                out.append((i, j, k))
    return out


def random_rational(rng: random.Random, nonzero: bool = True) -> Fraction:
    while True:
        p = rng.randint(-9, 9)
        q = rng.choice([d for d in range(-9, 10) if d])
        if p or not nonzero:
            return Fraction(p, q)


def sample_random(profile: dict) -> Algebra:
    n = profile["dim"]
    cls = profile.get("class", "general")
    gamma = profile.get("gamma_form", True)
    rng = random.Random(profile.get("seed", 0))
    cs = {}
    for (i, j, k) in free_positions(n, cls, gamma):
        v = random_rational(rng)
        cs[(i, j, k)] = v
        if cls == "commutative":
            cs[(j, i, k)] = v
        elif cls == "anticommutative":
            cs[(j, i, k)] = -v
    return Algebra(n, cs)


def quotient_by_last(A: Algebra) -> Algebra:
    """A / <e_n>, meaningful when e_n spans an ideal."""
    n = A.dim
    return Algebra(n - 1, {(i, j, k): v for (i, j, k), v in A.constants.items()
                           if i < n and j < n and k < n})


def zero_algebra(n: int) -> Algebra:
    return Algebra(n, {})


__all__ = [
    "Algebra", "Subspace", "DimensionMismatch", "SingularMatrix", "NotNilpotentInput",
    "NotNilpotent", "multiply", "power_chain", "nilpotency_index", "annihilator",
    "class_flags", "apply_base_change", "gamma_normalize", "sample_random",
    "free_positions", "basis_vector", "identity", "matmul", "quotient_by_last",
    "zero_algebra", "coordinates_after", "full_space",
]
