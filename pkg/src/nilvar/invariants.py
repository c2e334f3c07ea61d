"""Length of a generating set, the graded nilpotent reduction and the Fibonacci bounds."""
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import (
    Algebra, Subspace, NotNilpotent, basis_vector, class_flags, full_space,
    multiply, nilpotency_index, span_products,
)
from .field import simplify
from .linalg import ZERO, DimensionMismatch, inverse, matvec


class NotGenerating(ValueError):
    pass


class NotAnticommutative(ValueError):
    pass


@lru_cache(maxsize=None)
def fibonacci(n: int) -> int:
    """F_1 = F_2 = 1."""
    if n < 1:
        raise ValueError("fibonacci is defined for n >= 1")
    a, b = 1, 1
    for _ in range(n - 2):
        a, b = b, a + b
    return 1 if n <= 2 else b


def _as_vectors(A: Algebra, S):
    vecs = []
    for s in S:
        if isinstance(s, int):
            if not 1 <= s <= A.dim:
                raise DimensionMismatch("basis label e%d out of range" % s)
            vecs.append(basis_vector(A.dim, s))
        else:
            v = [simplify(x) for x in s]
            if len(v) != A.dim:
                raise DimensionMismatch("vector length differs from algebra dimension")
            vecs.append(v)
    if not vecs:
        raise NotGenerating("empty set")
    return vecs


def generated_subalgebra(A: Algebra, S) -> Subspace:
    V = Subspace(A.dim, _as_vectors(A, S))
    while True:
        nxt = V + Subspace(A.dim, span_products(A, V, V))
        if nxt.dim == V.dim:
            return V
        V = nxt


def length_chain(A: Algebra, S):
    """[L_1, L_2, ...] up to the first term equal to the whole algebra.

    W_i spans the words of length exactly i; it is the sum of W_p W_q over p + q = i,
    so no bracketing is ever enumerated.
    """
    vecs = _as_vectors(A, S)
    n = A.dim
    if generated_subalgebra(A, vecs).dim != n:
        raise NotGenerating("S does not generate the algebra")
    W = [None, Subspace(n, vecs)]
    L = [W[1]]
    while L[-1].dim < n:
        i = len(W)
        prods = []
        for p in range(1, i):
            if W[p].dim and W[i - p].dim:
                prods.extend(span_products(A, W[p], W[i - p]))
        W.append(Subspace(n, prods))
        L.append(L[-1] + W[i])
    return L


def length_of_set(A: Algebra, S) -> int:
    return len(length_chain(A, S))


@dataclass
class ReductionResult:
    algebra: Algebra
    complements: list
    basis: list = field(default_factory=list)
    degrees: list = field(default_factory=list)

    @property
    def length(self):
        return len(self.complements)


def _complement(big: Subspace, small: Subspace):
    # rows of big's echelon basis that extend small, in order
    chosen = []
    cur = small
    for row in big.basis:
        nxt = cur + Subspace(big.n, [row])
        if nxt.dim > cur.dim:
            chosen.append(row)
            cur = nxt
    return chosen


def nilpotent_reduction(A: Algebra, S) -> ReductionResult:
    """Graded algebra on K_1 + ... + K_k with a*b the K_{p+q} part of ab."""
    if not class_flags(A)["anticommutative"]:
        raise NotAnticommutative("reduction needs an anticommutative algebra")
    L = length_chain(A, S)
    k = len(L)
    n = A.dim
    comps = []
    prev = Subspace(n)
    for Li in L:
        comps.append(_complement(Li, prev))
        prev = Li
    basis, degrees = [], []
    for r, K in enumerate(comps, start=1):
        basis.extend(K)
        degrees.extend([r] * len(K))
    # columns of g are the graded basis
    g = [[basis[c][r] for c in range(n)] for r in range(n)]
    ginv = inverse(g)
    cs = {}
    for a in range(n):
        for b in range(n):
            R = degrees[a] + degrees[b]
            if R > k:
                continue
            coords = matvec(ginv, multiply(A, basis[a], basis[b]))
            for m in range(n):
                if degrees[m] == R and coords[m] != ZERO:
                    cs[(a + 1, b + 1, m + 1)] = coords[m]
    return ReductionResult(Algebra(n, cs), comps, basis, degrees)


def bound_report(A: Algebra, S=None) -> dict:
    n = A.dim
    idx = nilpotency_index(A)
    nilp = idx is not NotNilpotent
    anti = class_flags(A)["anticommutative"]
    checks = []
    general = 2 ** (n - 1) + 1
    if nilp:
        checks.append({"name": "index <= 2^(n-1)+1", "value": idx, "bound": general,
                       "holds": idx <= general, "attained": idx == general})
        if anti:
            fb = fibonacci(n) + 1
            checks.append({"name": "index <= F_n+1", "value": idx, "bound": fb,
                           "holds": idx <= fb, "attained": idx == fb})
    report = {"dim": n, "nilpotent": nilp, "index": idx if nilp else None,
              "anticommutative": anti, "checks": checks}
    if S is not None:
        ell = length_of_set(A, S)
        report["length"] = ell
        if anti:
            checks.append({"name": "length <= F_n", "value": ell, "bound": fibonacci(n),
                           "holds": ell <= fibonacci(n), "attained": ell == fibonacci(n)})
    report["ok"] = all(c["holds"] for c in checks)
    return report


def whole_space(A: Algebra) -> Subspace:
    return full_space(A.dim)
