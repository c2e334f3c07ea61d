"""Degeneration witnesses: parametric lower-triangular bases over Q(t).

A witness pairs a family member c(t) with a basis A(t) (column i is E_i(t))
such that the constants of c(t) in the basis E(t) tend to the target as t -> 0.
"""
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, class_flags, quotient_by_last
from .families import family_spec, instantiate, validate_membership, FamilySpec, extract_params
from .field import (
    RatFunc, T, NoLimit, PoleAtPoint, DivisionByZero,
    evaluate, limit_at_zero, simplify, valuation_at_zero,
)
from .linalg import ZERO, ONE, identity

BASE_DIM = {"general": 3, "commutative": 4, "anticommutative": 6}
FAMILY_OF = {"general": "R", "commutative": "S", "anticommutative": "T"}
MODE_OF = {v: k for k, v in FAMILY_OF.items()}
SYMMETRY = {"general": "none", "commutative": "commutative", "anticommutative": "anticommutative"}


class SingularDiagonal(ArithmeticError):
    pass


class GammaFormRequired(ValueError):
    pass


class SymmetryMismatch(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


class BaseCaseUnresolved(RuntimeError):
    pass


class LiftFailure(ArithmeticError):
    pass


def invert_lower_triangular(A):
    """Inverse by a'_ii = 1/a_ii and
    a'_ij = -a_ii^-1 a_jj^-1 a_ij - a_jj^-1 sum_{k=j+1}^{i-1} a'_ik a_kj."""
    n = len(A)
    A = [[simplify(x) for x in row] for row in A]
    for i in range(n):
        for j in range(i + 1, n):
            if A[i][j]:
                raise ValueError("matrix is not lower triangular")
    inv_diag = []
    for i in range(n):
        if not A[i][i]:
            raise SingularDiagonal("zero diagonal entry at %d" % (i + 1))
        inv_diag.append(simplify(1 / A[i][i]))
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = inv_diag[i]
        for j in range(i - 1, -1, -1):
            s = ZERO
            if A[i][j]:
                s = -inv_diag[i] * A[i][j]
            for k in range(j + 1, i):
                if out[i][k] and A[k][j]:
                    s = s - out[i][k] * A[k][j]
            out[i][j] = simplify(s * inv_diag[j]) if s else ZERO
    return out


def _products(constants, A, i, j, kmax):
    """Coordinates (in e) of E_i E_j up to index kmax, 0-based i, j."""
    acc = {}
    for (p, q, r), c in constants.items():
        p0, q0, r0 = p - 1, q - 1, r - 1
        if p0 < i or q0 < j or r0 > kmax:
            continue
        x = A[p0][i]
        if not x:
            continue
        y = A[q0][j]
        if not y:
            continue
        acc[r0] = acc.get(r0, ZERO) + c * x * y
    return acc


def transformed_constants(source: Algebra, A) -> Algebra:
    """Constants of source in the basis given by the columns of A."""
    n = source.dim
    if len(A) != n:
        raise ValueError("basis size differs from algebra dimension")
    if not class_flags(source)["gamma_form"]:
        raise GammaFormRequired("source must be in gamma-form")
    A = [[simplify(x) for x in row] for row in A]
    inv = invert_lower_triangular(A)
    out = {}
    for i in range(n):
        for j in range(n):
            prod = _products(source.constants, A, i, j, n - 1)
            if not prod:
                continue
            for k in range(max(i, j) + 1, n):
                s = ZERO
                for r, v in prod.items():
                    if r <= k and inv[k][r]:
                        s = s + inv[k][r] * v
                s = simplify(s)
                if s:
                    out[(i + 1, j + 1, k + 1)] = s
    return Algebra(n, out)


def witness_spec(mode: str, n: int) -> FamilySpec:
    """Family used as witness source; for T with n >= 7 the pin c_46^7 = 1 is relaxed to != 0."""
    spec = family_spec(FAMILY_OF[mode], n)
    if mode == "anticommutative" and n >= 7:
        del spec.pinned[(4, 6, 7)]
        spec.free.append((4, 6, 7))
        spec.free.sort(key=lambda p: (p[2], p[0], p[1]))
        spec.nonzero.add((4, 6, 7))
    return spec


@dataclass
class Witness:
    mode: str
    spec: FamilySpec
    params: dict
    basis: list
    target: Algebra

    @property
    def dim(self):
        return self.target.dim

    def source(self) -> Algebra:
        return instantiate(self.spec, self.params)

    def transformed(self) -> Algebra:
        return transformed_constants(self.source(), self.basis)

    def quotient(self):
        n = self.dim
        spec = witness_spec(self.mode, n - 1)
        params = {p: self.params[p] for p in spec.free}
        basis = [row[:n - 1] for row in self.basis[:n - 1]]
        return Witness(self.mode, spec, params, basis, quotient_by_last(self.target))


def _check_target(target: Algebra, mode: str):
    flags = class_flags(target)
    if not flags["gamma_form"]:
        raise GammaFormRequired("target must be in gamma-form; run gamma_normalize first")
    if mode == "commutative" and not flags["commutative"]:
        raise SymmetryMismatch("commutative mode needs a commutative target")
    if mode == "anticommutative" and not flags["anticommutative"]:
        raise SymmetryMismatch("anticommutative mode needs an anticommutative target")
    if mode not in BASE_DIM:
        raise ValueError("unknown mode " + str(mode))
    if target.field_tag != "Q":
        raise ValueError("target constants must be rational")


# lifting one dimension


class _Lift:
    """State for extending a witness of N/<e_{n+1}> to one of N."""

    def __init__(self, w: Witness, target: Algebra):
        self.mode = w.mode
        self.n = n = w.dim
        self.target = target
        self.spec = witness_spec(self.mode, n + 1)
        self.sym = self.spec.symmetry
        src = w.source()
        self.C = dict(src.constants)
        for p, v in self.spec.pinned.items():
            if p[2] == n + 1 and v:
                self._put(p, v)
        A = [list(row) + [ZERO] for row in w.basis]
        A.append([ZERO] * (n + 1))
        self.A = A
        self.top_inv = invert_lower_triangular([row[:n] for row in A[:n]])

    def _put(self, pos, v):
        i, j, k = pos
        v = simplify(v)
        todo = [(pos, v)]
        if self.sym != "none" and i != j:
            todo.append(((j, i, k), v if self.sym == "commutative" else -v))
        for key, val in todo:
            if val:
                self.C[key] = val
            else:
                self.C.pop(key, None)

    def gamma(self, i, j):
        return self.target.c(i, j, self.n + 1)

    def last_inv_row(self):
        n, A = self.n, self.A
        row = [ZERO] * (n + 1)
        row[n] = simplify(1 / A[n][n])
        for j in range(n - 1, -1, -1):
            s = ZERO
            for k in range(j + 1, n + 1):
                if row[k] and A[k][j]:
                    s = s + row[k] * A[k][j]
            row[j] = simplify(-s * self.top_inv[j][j]) if s else ZERO
        return row

    def F(self, i, j):
        """Transformed constant c~_ij^{n+1}, 1-based i, j."""
        n = self.n
        prod = _products(self.C, self.A, i - 1, j - 1, n)
        inv = self.last_inv_row()
        s = ZERO
        for r, v in prod.items():
            if inv[r]:
                s = s + inv[r] * v
        return simplify(s)

    def _solve(self, i, j, getter, setter, branch=False):
        old = getter()
        setter(ZERO)
        f0 = self.F(i, j)
        setter(ONE)
        d = simplify(self.F(i, j) - f0)
        if not d:
            setter(old)
            raise LiftFailure("condition (%d,%d,%d) does not depend on the unknown" % (i, j, self.n + 1))
        u = simplify((self.gamma(i, j) - f0) / d)
        if branch and not u:
            u = simplify(T / d)
        setter(u)
        return u

    def solve_c(self, i, j, branch=False):
        pos = (i, j, self.n + 1)
        return self._solve(i, j, lambda: self.C.get(pos, ZERO), lambda v: self._put(pos, v), branch)

    def solve_a(self, i, j, row, col):
        """Solve the condition (i, j) for the basis entry a_{row,col}."""
        r, c = row - 1, col - 1

        def setter(v):
            self.A[r][c] = simplify(v)
            if r < self.n:
                self.top_inv = invert_lower_triangular([x[:self.n] for x in self.A[:self.n]])

        return self._solve(i, j, lambda: self.A[r][c], setter)

    def set_last_diagonal(self, i, j):
        """a_{n+1,n+1} from the condition (i, j) whose value is K / a_{n+1,n+1}."""
        n = self.n
        prod = _products(self.C, self.A, i - 1, j - 1, n)
        K = simplify(prod.get(n, ZERO))
        if not K:
            raise LiftFailure("leading product vanishes")
        g = self.gamma(i, j)
        self.A[n][n] = simplify(K / g) if g else simplify(K / T)

    def witness(self) -> Witness:
        params = {p: self.C.get(p, ZERO) for p in self.spec.free}
        return Witness(self.mode, self.spec, params, [list(r) for r in self.A], self.target)


def _lift_general(L: _Lift):
    n = L.n
    commutative = L.mode == "commutative"
    L.set_last_diagonal(n, n)
    for k in range(1, n - 1):
        j = n - k
        if not commutative:
            for i in range(n, j, -1):
                L.solve_c(i, j)
        for q in range(n, j, -1):
            L.solve_c(j, q)
        L.solve_a(j, j, n + 1, j + 1)
    # final step: a_n1 absorbs the pinned c_1n^{n+1} = 0
    L.solve_a(1, n, n, 1)
    if not commutative:
        for p in range(n, 1, -1):
            L.solve_c(p, 1)
    for q in range(n - 1, 1, -1):
        L.solve_c(1, q)
    L.solve_a(1, 1, n + 1, 2)


def _lift_anticommutative(L: _Lift):
    n = L.n
    L.set_last_diagonal(n - 1, n)
    for k in range(2, n - 2):
        i = n - k
        for j in range(n, i + 1, -1):
            L.solve_c(i, j, branch=True)
        L.solve_a(i, i + 1, n + 1, i + 2)
    for i in (2, 1):
        L.solve_c(i, n)
        # the pinned c_{i,n-1}^{n+1} = 0 is compensated by redefining a_{n,i}
        L.solve_a(i, n - 1, n, i)
        for q in range(n - 2, i + 1, -1):
            L.solve_c(i, q, branch=True)
        L.solve_a(i, i + 1, n + 1, i + 2)


def lift_witness(w: Witness, target: Algebra) -> Witness:
    if quotient_by_last(target) != w.target:
        raise ValueError("witness target is not the quotient of the new target")
    L = _Lift(w, target)
    if w.mode == "anticommutative":
        _lift_anticommutative(L)
    else:
        _lift_general(L)
    return L.witness()


def identity_witness(member: Algebra, mode: str):
    """A family member degenerates to itself through the identity basis."""
    spec = witness_spec(mode, member.dim)
    if validate_membership(spec, member):
        return None
    return Witness(mode, spec, extract_params(spec, member), identity(member.dim), member)


def construct_witness(target: Algebra, mode: str = "general", window=(-6, 6), base_cache=None,
                      max_nodes=200000) -> Witness:
    _check_target(target, mode)
    base = BASE_DIM[mode]
    if target.dim < base:
        raise ValueError("%s mode needs dimension >= %d" % (mode, base))
    tower = [target]
    while tower[-1].dim > base:
        tower.append(quotient_by_last(tower[-1]))
    bottom = tower[-1]
    w = None
    if base_cache is not None:
        w = base_cache.get(bottom)
    if w is None:
        w = identity_witness(bottom, mode)
    if w is None:
        try:
            w = base_case_search(bottom, mode, window, max_nodes=max_nodes)
        except SearchExhausted as exc:
            raise BaseCaseUnresolved(str(exc)) from exc
        if base_cache is not None:
            base_cache[bottom] = w
    for alg in reversed(tower[:-1]):
        w = lift_witness(w, alg)
    return w


# base case search


def _support(n, i, j, k, spec):
    """Unknowns that can enter the transformed constant (i, j, k), 1-based."""
    sup = set()
    for p in range(i, k):
        sup.add(("a", p, i))
    for q in range(j, k):
        sup.add(("a", q, j))
    lo = max(i, j) + 1
    for y in range(lo, k + 1):
        for x in range(y, k + 1):
            sup.add(("a", x, y))
    free = set(spec.free)
    for (p, q, r) in free:
        if r > k:
            continue
        for (pp, qq) in ((p, q), (q, p)):
            if pp >= i and qq >= j:
                sup.add(("c", p, q, r))
    return sup


def _constraints(n, sym):
    out = []
    for k in range(2, n + 1):
        for i in range(1, k):
            for j in range(1, k):
                if sym == "commutative" and i > j:
                    continue
                if sym == "anticommutative" and i >= j:
                    continue
                out.append((i, j, k))
    return out


def _candidates(lo, hi, coeffs, allow_zero):
    out = [ZERO] if allow_zero else []
    for m in sorted(range(lo, hi + 1), key=lambda m: (abs(m), -m)):
        for q in coeffs:
            out.append(RatFunc.monomial(q, m))
    return out


class _Search:
    """Depth-first search over lower-triangular bases and family parameters.

    Unknowns are ordered so that each one completes some limit condition;
    when that condition is affine in the unknown, or of the form K/x, the
    unknown is solved exactly, otherwise it ranges over q*t^m.
    """

    def __init__(self, target, mode, lo, hi, coeffs, max_nodes):
        self.target = target
        self.mode = mode
        self.n = n = target.dim
        self.spec = witness_spec(mode, n)
        self.lo, self.hi = lo, hi
        self.coeffs = coeffs
        self.max_nodes = max_nodes
        self.nodes = 0
        cons = _constraints(n, self.spec.symmetry)
        self.support = {c: _support(n, *c, self.spec) for c in cons}
        relevant = set().union(*self.support.values()) if cons else set()
        diag = [("a", i, i) for i in range(1, n + 1)]
        rest = [("a", x, y) for x in range(2, n + 1) for y in range(1, x)]
        rest += [("c",) + p for p in self.spec.free]
        rest = [v for v in rest if v in relevant]
        order = list(diag)
        done = set(order)
        while rest:
            pick = None
            for v in rest:
                if any(sup - done == {v} for sup in self.support.values()):
                    pick = v
                    break
            if pick is None:
                # the unknown shared by most open conditions
                pick = max(rest, key=lambda v: sum(v in sup and not sup <= done
                                                    for sup in self.support.values()))
            order.append(pick)
            done.add(pick)
            rest.remove(pick)
        self.order = order
        pos = {v: idx for idx, v in enumerate(order)}
        self.closing = {v: [] for v in order}
        for c, sup in self.support.items():
            last = max(pos[v] for v in sup if v in pos)
            self.closing[order[last]].append(c)
        self.values = {}
        self._inv_cache = {}

    def build(self):
        n = self.n
        A = [[ZERO] * n for _ in range(n)]
        params = {p: ZERO for p in self.spec.free}
        for v, x in self.values.items():
            if v[0] == "a":
                A[v[1] - 1][v[2] - 1] = x
            else:
                params[v[1:]] = x
        for i in range(n):
            if not A[i][i]:
                A[i][i] = ONE
        return A, params

    def value_at(self, c):
        A, params = self.build()
        cs = {p: v for p, v in self.spec.pinned.items() if v}
        cs.update({p: v for p, v in params.items() if v})
        full = dict(cs)
        sym = self.spec.symmetry
        for (i, j, k), v in cs.items():
            if sym == "commutative":
                full[(j, i, k)] = v
            elif sym == "anticommutative":
                full[(j, i, k)] = -v
        i, j, k = c
        prod = _products(full, A, i - 1, j - 1, k - 1)
        inv = invert_lower_triangular([row[:k] for row in A[:k]])
        s = ZERO
        for r, v in prod.items():
            if inv[k - 1][r]:
                s = s + inv[k - 1][r] * v
        return simplify(s)

    def ok(self, c):
        v = self.value_at(c)
        if valuation_at_zero(v) < 0:
            return False
        return limit_at_zero(v) == self.target.c(*c)

    def _probe(self, v, c, x):
        self.values[v] = x
        try:
            return self.value_at(c)
        except (DivisionByZero, SingularDiagonal):
            return None
        finally:
            del self.values[v]

    def domain(self, v):
        is_diag = v[0] == "a" and v[1] == v[2]
        nonzero = is_diag or (v[0] == "c" and v[1:] in self.spec.nonzero)
        for c in self.closing[v]:
            g = self.target.c(*c)
            if not is_diag:
                f0, f1, f2 = (self._probe(v, c, Fraction(x)) for x in (0, 1, 2))
                if None in (f0, f1, f2):
                    continue
                d = simplify(f1 - f0)
                if d and not simplify(f2 - 2 * f1 + f0):
                    u = simplify((g - f0) / d)
                    if u or not nonzero:
                        return [u]
                    return [simplify(T / d)]
            else:
                f1, f2, f3 = (self._probe(v, c, Fraction(x)) for x in (1, 2, 3))
                if None in (f1, f2, f3) or not f1:
                    continue
                if simplify(f1 - 2 * f2) or simplify(f1 - 3 * f3):
                    continue
                # condition reads K / x
                if g:
                    return [simplify(f1 / g)]
                return [simplify(f1 / RatFunc.monomial(q, m))
                        for m in range(1, self.hi + 1) for q in self.coeffs]
        return _candidates(self.lo, self.hi, self.coeffs, not nonzero)

    def run(self, idx=0):
        if idx == len(self.order):
            return True
        v = self.order[idx]
        for x in self.domain(v):
            self.nodes += 1
            if self.nodes > self.max_nodes:
                return False
            self.values[v] = x
            try:
                good = all(self.ok(c) for c in self.closing[v])
            except (DivisionByZero, SingularDiagonal, NoLimit):
                good = False
            if good and self.run(idx + 1):
                return True
            del self.values[v]
        return False


def base_case_search(target: Algebra, mode: str = "general", window=(-6, 6),
                     coeffs=(Fraction(1), Fraction(-1)), max_nodes=200000) -> Witness:
    _check_target(target, mode)
    if target.dim != BASE_DIM[mode]:
        raise ValueError("base case dimension for %s is %d" % (mode, BASE_DIM[mode]))
    w = identity_witness(target, mode)
    if w is not None:
        return w
    lo, hi = window
    tried = 0
    seen = set()
    # widen the exponent window gradually so simple witnesses are found first
    for bound in range(0, max(abs(lo), abs(hi)) + 1):
        win = (max(lo, -bound), min(hi, bound))
        if win in seen or win[0] > win[1]:
            continue
        seen.add(win)
        s = _Search(target, mode, win[0], win[1], coeffs, max_nodes)
        found = s.run()
        tried += s.nodes
        if found:
            A, params = s.build()
            w = Witness(mode, s.spec, params, A, target)
            if verify_witness(w)["ok"]:
                return w
    raise SearchExhausted("no witness with exponents in [%d, %d] (%d nodes)" % (lo, hi, tried))


# verification


def sample_points(w: Witness, how_many=3):
    """Unit fractions 1/2, 1/3, 1/5, then 1/6, 1/7, ... avoiding poles and singular bases."""
    chosen = []
    for d in [2, 3, 5] + list(range(6, 200)):
        t0 = Fraction(1, d)
        try:
            for v in w.params.values():
                evaluate(v, t0)
            for row in w.basis:
                for x in row:
                    evaluate(x, t0)
            if any(not evaluate(w.basis[i][i], t0) for i in range(len(w.basis))):
                continue
        except PoleAtPoint:
            continue
        chosen.append(t0)
        if len(chosen) == how_many:
            break
    return chosen


def verify_witness(w: Witness) -> dict:
    report = {"limits": [], "pins": [], "membership": [], "points": []}
    n = w.dim
    try:
        src = w.source()
        tc = transformed_constants(src, w.basis)
    except Exception as exc:  # malformed witness
        report["limits"].append("cannot transform: %s" % exc)
        report["ok"] = False
        return report
    positions = set(tc.constants) | set(w.target.constants)
    for pos in sorted(positions):
        v = tc.c(*pos)
        try:
            lim = limit_at_zero(v)
        except NoLimit:
            report["limits"].append("NoLimit at %r" % (pos,))
            continue
        if lim != w.target.c(*pos):
            report["limits"].append("limit %s != %s at %r" % (lim, w.target.c(*pos), pos))
    if sorted(w.params) != sorted(w.spec.free):
        report["pins"].append("parameters do not cover exactly the free positions")
    report["pins"].extend(validate_membership(w.spec, src))
    pts = sample_points(w)
    report["points"] = [str(p) for p in pts]
    if len(pts) < 3:
        report["membership"].append("fewer than three non-pole sample points")
    for t0 in pts:
        vals = {p: evaluate(v, t0) for p, v in w.params.items()}
        try:
            member = instantiate(w.spec, vals)
        except Exception as exc:
            report["membership"].append("t=%s: %s" % (t0, exc))
            continue
        bad = validate_membership(w.spec, member)
        if bad:
            report["membership"].append("t=%s: %s" % (t0, "; ".join(bad)))
    report["ok"] = not (report["limits"] or report["pins"] or report["membership"])
    return report
