"""The families R_n, S_n, T'_n, hatT_n and T_n as pin/free/nonzero tables."""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
import random

from .algebra import Algebra, apply_base_change, class_flags, multiply, random_rational
from .field import simplify
from .linalg import ZERO, ONE, identity, matvec

KINDS = ("R", "S", "Tprime", "hatT", "T")
MIN_DIM = {"R": 3, "S": 4, "Tprime": 3, "hatT": 6, "T": 6}
SYMMETRY = {"R": "none", "S": "commutative", "Tprime": "anticommutative",
            "hatT": "anticommutative", "T": "anticommutative"}


class DimensionTooSmall(ValueError):
    pass


class MissingParameter(KeyError):
    pass


class NonzeroViolation(ValueError):
    pass


class NotAMember(ValueError):
    pass


@dataclass
class FamilySpec:
    kind: str
    dim: int
    pinned: dict
    free: list
    nonzero: set
    symmetry: str

    def positions(self):
        return set(self.pinned) | set(self.free)


def _canonical(i, j, symmetry):
    if symmetry == "commutative" and i > j:
        return j, i
    if symmetry == "anticommutative" and i > j:
        return j, i
    return i, j


def _universe(n, symmetry):
    """All gamma-form positions, canonical under the symmetry."""
    out = []
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if k <= max(i, j):
                    continue
                if symmetry == "commutative" and i > j:
                    continue
                if symmetry == "anticommutative" and i >= j:
                    continue
                out.append((i, j, k))
    return out


def _tprime_pins(n):
    pins = {}
    for i in range(1, n - 1):
        for k in range(i + 2, n + 1):
            pins[(i, i + 1, k)] = ONE if k == i + 2 else ZERO
    return pins


HAT_ZEROS = [(1, 3, 4), (1, 4, 5), (1, 5, 6), (2, 4, 5), (2, 5, 6), (1, 4, 6), (2, 4, 6), (1, 3, 6)]


def family_spec(kind: str, n: int, extra_pins=None) -> FamilySpec:
    if kind not in KINDS:
        raise ValueError("unknown family " + str(kind))
    if n < MIN_DIM[kind]:
        raise DimensionTooSmall("%s needs n >= %d" % (kind, MIN_DIM[kind]))
    sym = SYMMETRY[kind]
    pins = {}
    nonzero = set()
    if kind in ("R", "S"):
        for i in range(1, n + 1):
            for k in range(i + 1, n + 1):
                pins[(i, i, k)] = ONE if k == i + 1 else ZERO
        for i in range(2, n):
            pins[(1, i, i + 1)] = ZERO
        if kind == "R":
            pins[(2, 1, 3)] = ONE
        else:
            pins[(2, 3, 4)] = ONE
            nonzero.add((1, 2, 4))
    else:
        pins.update(_tprime_pins(n))
        if kind in ("hatT", "T"):
            for p in HAT_ZEROS:
                pins[p] = ZERO
            pins[(3, 5, 6)] = ONE
            nonzero.add((1, 3, 5))
            if kind == "hatT" and n >= 7:
                nonzero.add((4, 6, 7))
        if kind == "T":
            if n >= 7:
                pins[(4, 6, 7)] = ONE
            for i in range(4, n - 1):
                pins[(1, i, i + 2)] = ZERO
                pins[(2, i, i + 2)] = ZERO
    for p, v in (extra_pins or {}).items():
        pins[p] = simplify(v)
    free = [p for p in _universe(n, sym) if p not in pins]
    return FamilySpec(kind, n, pins, free, nonzero, sym)


def _symmetrize(cs, symmetry):
    out = dict(cs)
    for (i, j, k), v in cs.items():
        if i == j:
            continue
        if symmetry == "commutative":
            out[(j, i, k)] = v
        elif symmetry == "anticommutative":
            out[(j, i, k)] = -v
    return out


def instantiate(spec: FamilySpec, params: dict) -> Algebra:
    missing = [p for p in spec.free if p not in params]
    if missing:
        raise MissingParameter("no value for %r" % (missing[0],))
    extra = [p for p in params if p not in spec.free]
    if extra:
        raise MissingParameter("not a free position: %r" % (extra[0],))
    for p in spec.nonzero:
        if not params[p]:
            raise NonzeroViolation("c_%d%d^%d must be nonzero" % p)
    cs = {p: v for p, v in spec.pinned.items() if v}
    cs.update({p: v for p, v in params.items() if v})
    return Algebra(spec.dim, _symmetrize(cs, spec.symmetry))


def random_params(spec: FamilySpec, seed=0) -> dict:
    rng = random.Random(seed)
    return {p: random_rational(rng) for p in spec.free}


def random_member(kind, n, seed=0) -> Algebra:
    spec = family_spec(kind, n)
    return instantiate(spec, random_params(spec, seed))


def extract_params(spec: FamilySpec, A: Algebra) -> dict:
    return {p: A.c(*p) for p in spec.free}


def validate_membership(spec: FamilySpec, A: Algebra) -> list:
    """Violated conditions; empty means A is a member."""
    report = []
    if A.dim != spec.dim:
        return ["dimension %d != %d" % (A.dim, spec.dim)]
    flags = class_flags(A)
    if not flags["gamma_form"]:
        report.append("gamma-form violated")
    if spec.symmetry == "commutative" and not flags["commutative"]:
        report.append("symmetry: not commutative")
    if spec.symmetry == "anticommutative" and not flags["anticommutative"]:
        report.append("symmetry: not anticommutative")
    for p, v in sorted(spec.pinned.items()):
        if A.c(*p) != v:
            report.append("pin c_%d%d^%d = %s violated" % (p + (v,)))
    for p in sorted(spec.nonzero):
        if not A.c(*p):
            report.append("nonzero c_%d%d^%d violated" % p)
    return report


def is_automorphism(A: Algebra, phi) -> bool:
    n = A.dim
    cols = [[phi[r][i] for r in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = matvec(phi, [A.c(i + 1, j + 1, k + 1) for k in range(n)])
            rhs = multiply(A, cols[i], cols[j])
            if lhs != rhs:
                return False
    return True


def unipotent(n, entries):
    """I + sum x E_{rc} for entries {(r, c): x}, 1-based."""
    m = identity(n)
    for (r, c), x in entries.items():
        m[r - 1][c - 1] = m[r - 1][c - 1] + Fraction(x)
    return m


SAMPLE_XY = [(Fraction(5), Fraction(-2, 3)), (Fraction(1, 7), Fraction(3)), (Fraction(-4), Fraction(0))]


def claimed_generators(kind, n):
    out = []
    for x, y in SAMPLE_XY:
        if kind in ("R", "S"):
            out.append(("I+%sE_%d1" % (x, n), unipotent(n, {(n, 1): x})))
        else:
            out.append(("I+%sE_%d1+%sE_%d2" % (x, n, y, n), unipotent(n, {(n, 1): x, (n, 2): y})))
    return out


def negative_witnesses(kind, n):
    d = identity(n)
    d[0][0] = Fraction(2)
    out = [("diag(2,1,...,1)", d)]
    if kind in ("R", "S"):
        out.append(("I+E_%d2" % n, unipotent(n, {(n, 2): 1})))
    else:
        out.append(("I+E_%d3" % n, unipotent(n, {(n, 3): 1})))
    return out


def verify_claimed_automorphisms(spec: FamilySpec, A: Algebra, extra=()) -> dict:
    confirmed, failed, rejected, wrongly_accepted = [], [], [], []
    for name, phi in list(claimed_generators(spec.kind, spec.dim)) + list(extra):
        (confirmed if is_automorphism(A, phi) else failed).append(name)
    for name, phi in negative_witnesses(spec.kind, spec.dim):
        (wrongly_accepted if is_automorphism(A, phi) else rejected).append(name)
    return {
        "ok": not failed and not wrongly_accepted,
        "confirmed": confirmed,
        "failed": failed,
        "negatives_rejected": rejected,
        "negatives_accepted": wrongly_accepted,
    }


def parameter_count(kind, n) -> int:
    if kind not in ("R", "S", "T"):
        raise ValueError("closed form known only for R, S, T")
    if n < MIN_DIM[kind]:
        raise DimensionTooSmall("%s needs n >= %d" % (kind, MIN_DIM[kind]))
    if kind == "R":
        return (n * n - 1) * (n - 3) // 3
    if kind == "S":
        return n * (n + 1) * (n - 4) // 6 + 1
    return (n - 1) * (n + 1) * (n - 6) // 6


AUT_DIM = {"R": 1, "S": 1, "T": 2}
CLASS_OF = {"R": "general", "S": "commutative", "T": "anticommutative"}


def variety_dimension(cls, n) -> int:
    if cls == "general":
        return n * (n - 1) * (n + 1) // 3
    if cls == "commutative":
        return n * (n - 1) * (n + 4) // 6
    if cls == "anticommutative":
        return (n - 2) * (n * n + 2 * n + 3) // 6
    if cls == "gammaOnly":
        return n * (n - 1) * (2 * n - 1) // 6
    raise ValueError("unknown class " + str(cls))


def diagonal(values):
    n = len(values)
    m = [[ZERO] * n for _ in range(n)]
    for i, v in enumerate(values):
        m[i][i] = simplify(v)
    return m


def _require(spec, A):
    bad = validate_membership(spec, A)
    if bad:
        raise NotAMember("; ".join(bad))


def normalize_representative(A: Algebra, kind: str):
    """(g, gA) putting A in canonical form; kind is "T6", "T7" or "S4"."""
    if kind == "T6":
        # A(alpha, beta): T'_6 with the eight vanishing constants
        spec = family_spec("Tprime", 6, {p: ZERO for p in HAT_ZEROS})
        _require(spec, A)
        alpha, beta = A.c(1, 3, 5), A.c(3, 5, 6)
        if not alpha or not beta:
            raise NotAMember("need c_13^5 c_35^6 != 0")
        g = diagonal([ONE, beta, beta, beta ** 2, beta ** 3, beta ** 5])
    elif kind == "T7":
        spec = family_spec("hatT", 7, {(1, 5, 7): ZERO, (2, 5, 7): ZERO})
        _require(spec, A)
        x = A.c(4, 6, 7)
        g = diagonal([x, ONE, x, x, x ** 2, x ** 3, x ** 5])
    elif kind == "S4":
        _require(family_spec("S", 4), A)
        alpha = A.c(1, 2, 4)
        g = identity(4)
        g[2][0] = -alpha
        g[3][1] = alpha ** 2
    else:
        raise ValueError("unknown normal form " + str(kind))
    return g, apply_base_change(A, g)


def t6_algebra(alpha, beta=ONE) -> Algebra:
    """A(alpha, beta): T'_6 with the eight vanishing constants."""
    spec = family_spec("Tprime", 6, {p: ZERO for p in HAT_ZEROS})
    params = {p: ZERO for p in spec.free}
    params[(1, 3, 5)] = simplify(alpha)
    params[(3, 5, 6)] = simplify(beta)
    # (3,5,6) is free in T'_6 with these pins
    return instantiate(spec, params)


def t6_a82_basis(alpha, beta):
    """The basis E1=b e2, E2=-e1-a e4, E3=b e3, E4=b^2 e4, E5=b^3 e5, E6=b^5 e6."""
    m = [[ZERO] * 6 for _ in range(6)]
    m[1][0] = simplify(beta)
    m[0][1] = -ONE
    m[3][1] = simplify(-alpha)
    m[2][2] = simplify(beta)
    m[3][3] = simplify(beta ** 2)
    m[4][4] = simplify(beta ** 3)
    m[5][5] = simplify(beta ** 5)
    return m
