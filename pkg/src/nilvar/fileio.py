"""JSON encodings of algebras, family parameters and degeneration witnesses.

Every scalar is written as an exact string ("3", "-1/2") or, over Q(t), as
{"num": [...], "den": [...]} coefficient lists in increasing degree.
Serialization is deterministic, so parse followed by dump reproduces a
canonical file byte for byte.
"""
import json
from dataclasses import dataclass, field

from .algebra import Algebra
from .families import KINDS, family_spec, FamilySpec
from .field import from_text, to_text, is_canonical_text, simplify
from .degeneration import Witness, witness_spec, FAMILY_OF
from .linalg import ZERO

FIELDS = ("Q", "Q(t)")


class SchemaViolation(ValueError):
    def __init__(self, message, where=None, line=None):
        self.message = message
        self.where = where
        self.line = line
        bits = []
        if line is not None:
            bits.append("line %d" % line)
        if where:
            bits.append(where)
        prefix = ", ".join(bits)
        super().__init__(prefix + ": " + message if prefix else message)


@dataclass
class Parsed:
    value: object
    noncanonical: list = field(default_factory=list)

    @property
    def canonical(self):
        return not self.noncanonical


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaViolation(e.msg, line=e.lineno) from None


def _line_of(text, needle):
    if text is None:
        return None
    pos = text.find(needle)
    return text.count("\n", 0, pos) + 1 if pos >= 0 else None


class _Reader:
    def __init__(self, text=None):
        self.text = text
        self.noncanonical = []

    def fail(self, msg, where):
        raise SchemaViolation(msg, where)

    def obj(self, x, where, keys):
        if not isinstance(x, dict):
            self.fail("expected an object", where)
        missing = [k for k in keys if k not in x]
        if missing:
            self.fail("missing field %r" % missing[0], where)
        extra = sorted(set(x) - set(keys))
        if extra:
            self.fail("unknown field %r" % extra[0], where)
        return x

    def int_(self, x, where, lo=1, hi=None):
        if isinstance(x, bool) or not isinstance(x, int):
            self.fail("expected an integer", where)
        if x < lo or (hi is not None and x > hi):
            self.fail("%d out of range [%d, %s]" % (x, lo, hi if hi is not None else "inf"), where)
        return x

    def scalar(self, x, where, field_tag="Q(t)"):
        if isinstance(x, bool) or isinstance(x, float):
            self.fail("scalars must be exact strings", where)
        if isinstance(x, int):
            x = str(x)
            self.noncanonical.append(where)
        if isinstance(x, dict):
            if field_tag == "Q":
                self.fail("rational function in a Q file", where)
            if sorted(x) != ["den", "num"]:
                self.fail("rational function needs exactly num and den", where)
            for part in ("num", "den"):
                if not isinstance(x[part], list) or not x[part]:
                    self.fail("expected a nonempty coefficient list", where + "." + part)
                for c in x[part]:
                    if not isinstance(c, str):
                        self.fail("coefficients must be strings", where + "." + part)
        elif not isinstance(x, str):
            self.fail("expected a scalar", where)
        try:
            v = from_text(x)
        except (ValueError, ZeroDivisionError) as e:
            self.fail("bad scalar %r (%s)" % (x, e), where)
        if where not in self.noncanonical and not is_canonical_text(x):
            self.noncanonical.append(where)
        return simplify(v)

    def triples(self, items, where, n, field_tag):
        if not isinstance(items, list):
            self.fail("expected a list", where)
        out = {}
        for idx, e in enumerate(items):
            w = "%s[%d]" % (where, idx)
            self.obj(e, w, ("i", "j", "k", "value"))
            key = tuple(self.int_(e[a], w + "." + a, 1, n) for a in ("i", "j", "k"))
            if key in out:
                self.fail("duplicate entry for %r" % (key,), w)
            v = self.scalar(e["value"], w + ".value", field_tag)
            if v == 0:
                self.noncanonical.append(w)
                continue
            out[key] = v
        if list(out) != sorted(out):
            self.noncanonical.append(where)
        return out


def _with_line(fn):
    def wrapped(text):
        try:
            return fn(text)
        except SchemaViolation as e:
            if e.line is not None or not e.where:
                raise
            # best effort: first occurrence of the offending key
            leaf = e.where.rsplit(".", 1)[-1]
            line = None if "[" in leaf else _line_of(text, '"%s"' % leaf)
            raise SchemaViolation(e.message, e.where, line) from None
    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped


def _join(where, key):
    return where + "." + key if where else key


# algebras

def algebra_to_obj(A: Algebra, field_tag=None) -> dict:
    tag = field_tag or A.field_tag
    return {
        "dim": A.dim,
        "field": "Q(t)" if tag == "Qt" or tag == "Q(t)" else "Q",
        "constants": [
            {"i": i, "j": j, "k": k, "value": to_text(simplify(v))}
            for (i, j, k), v in sorted(A.constants.items())
        ],
    }


def _algebra_from(r: _Reader, x, where="") -> Algebra:
    r.obj(x, where or "algebra", ("dim", "field", "constants"))
    n = r.int_(x["dim"], _join(where, "dim"))
    tag = x["field"]
    if tag not in FIELDS:
        r.fail("field must be Q or Q(t)", _join(where, "field"))
    A = Algebra(n, r.triples(x["constants"], _join(where, "constants"), n, tag))
    if tag == "Q(t)" and A.field_tag == "Q":
        r.noncanonical.append(_join(where, "field"))
    return A


@_with_line
def parse_algebra(text: str) -> Parsed:
    r = _Reader(text)
    A = _algebra_from(r, _load(text))
    return Parsed(A, r.noncanonical)


def dump_algebra(A: Algebra) -> str:
    return dumps(algebra_to_obj(A))


# family parameters

def params_to_obj(spec: FamilySpec, params: dict) -> dict:
    return {
        "kind": spec.kind,
        "dim": spec.dim,
        "params": [
            {"i": i, "j": j, "k": k, "value": to_text(simplify(params[(i, j, k)]))}
            for (i, j, k) in sorted(params)
        ],
    }


@_with_line
def parse_params(text: str) -> Parsed:
    """Returns Parsed((spec, params))."""
    r = _Reader(text)
    x = r.obj(_load(text), "params file", ("kind", "dim", "params"))
    if x["kind"] not in KINDS:
        r.fail("unknown family kind", "kind")
    n = r.int_(x["dim"], "dim")
    try:
        spec = family_spec(x["kind"], n)
    except ValueError as e:
        r.fail(str(e), "dim")
    params = r.triples(x["params"], "params", n, "Q(t)")
    for p in spec.free:
        params.setdefault(p, ZERO)
    unknown = [p for p in params if p not in spec.free]
    if unknown:
        r.fail("%r is not a free position" % (unknown[0],), "params")
    return Parsed((spec, params), r.noncanonical)


def dump_params(spec: FamilySpec, params: dict) -> str:
    nz = {p: v for p, v in params.items() if v != 0}
    return dumps(params_to_obj(spec, nz))


# witnesses

def witness_to_obj(w: Witness) -> dict:
    return {
        "family": {"kind": w.spec.kind, "dim": w.spec.dim, "mode": w.mode},
        "params": [
            {"i": i, "j": j, "k": k, "value": to_text(simplify(v))}
            for (i, j, k), v in sorted(w.params.items()) if v != 0
        ],
        "basis": [[to_text(simplify(v)) for v in row] for row in w.basis],
        "target": algebra_to_obj(w.target, "Q"),
    }


@_with_line
def parse_witness(text: str) -> Parsed:
    r = _Reader(text)
    x = r.obj(_load(text), "witness", ("family", "params", "basis", "target"))
    fam = r.obj(x["family"], "family", ("kind", "dim", "mode"))
    mode = fam["mode"]
    if mode not in FAMILY_OF:
        r.fail("unknown mode", "family.mode")
    if fam["kind"] != FAMILY_OF[mode]:
        r.fail("family kind does not match mode", "family.kind")
    n = r.int_(fam["dim"], "family.dim")
    try:
        spec = witness_spec(mode, n)
    except ValueError as e:
        r.fail(str(e), "family.dim")
    params = r.triples(x["params"], "params", n, "Q(t)")
    unknown = [p for p in params if p not in spec.free]
    if unknown:
        r.fail("%r is not a free position" % (unknown[0],), "params")
    for p in spec.free:
        params.setdefault(p, ZERO)
    rows = x["basis"]
    if not isinstance(rows, list) or len(rows) != n:
        r.fail("basis must be an %d x %d matrix" % (n, n), "basis")
    basis = []
    for a, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            r.fail("row of wrong length", "basis[%d]" % a)
        basis.append([r.scalar(v, "basis[%d][%d]" % (a, b)) for b, v in enumerate(row)])
    target = _algebra_from(r, x["target"], "target")
    if target.dim != n:
        r.fail("target dimension differs from family dimension", "target.dim")
    return Parsed(Witness(mode, spec, params, basis, target), r.noncanonical)


def dump_witness(w: Witness) -> str:
    return dumps(witness_to_obj(w))


def roundtrip(text: str, kind: str) -> str:
    """Parse then dump; equals text exactly when the input was canonical."""
    if kind == "algebra":
        return dump_algebra(parse_algebra(text).value)
    if kind == "params":
        spec, params = parse_params(text).value
        return dump_params(spec, params)
    if kind == "witness":
        return dump_witness(parse_witness(text).value)
    raise ValueError("unknown file kind " + kind)


def detect_kind(text: str) -> str:
    x = _load(text)
    if isinstance(x, dict):
        if "basis" in x:
            return "witness"
        if "params" in x:
            return "params"
        if "constants" in x:
            return "algebra"
    raise SchemaViolation("not an algebra, params or witness file")


PARSERS = {"algebra": parse_algebra, "params": parse_params, "witness": parse_witness}


def io_roundtrip(path):
    """Parse a file of any of the three kinds; returns (Parsed, canonical text)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    kind = detect_kind(text)
    return PARSERS[kind](text), roundtrip(text, kind)
