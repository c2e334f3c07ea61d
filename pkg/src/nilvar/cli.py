"""Command line entry point: `nilvar <command> ...`.

Exit codes: 0 success, 1 verification or bound failure, 2 input error,
3 base-case search exhausted.
"""
import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import algebra as alg
from . import degeneration as deg
from . import families as fam
from . import invariants as inv
from .fileio import (
    SchemaViolation, dump_algebra, dump_params, dump_witness,
    parse_algebra, parse_witness, dumps,
)
from .field import to_text, rational
from .linalg import DimensionMismatch

OK, FAILED, BAD_INPUT, EXHAUSTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (path, e.strerror))


def _write(path, text, out):
    if path in (None, "-"):
        out.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("NILVAR_SEED")
    if env is None:
        raise UsageError("a seed is required: pass --seed or set NILVAR_SEED")
    try:
        return int(env)
    except ValueError:
        raise UsageError("NILVAR_SEED must be an integer")


def _load_algebra(path, err):
    parsed = parse_algebra(_read(path))
    if parsed.noncanonical:
        err.write("note: non-canonical input normalized at %s\n" % ", ".join(parsed.noncanonical))
    return parsed.value


def _window(text):
    try:
        lo, hi = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like -6,6")
    if lo > hi:
        raise argparse.ArgumentTypeError("empty window")
    return lo, hi


def _generating_set(text, n):
    """'e1,e2' or '1,0,0;0,1/2,1' (one vector per ';')."""
    text = text.strip()
    if not text:
        raise UsageError("empty generating set")
    if ";" in text or (text[0] not in "eE" and "," in text and len(text.split(",")) == n):
        out = []
        for chunk in text.split(";"):
            try:
                out.append([rational(x) for x in chunk.split(",")])
            except (ValueError, ZeroDivisionError):
                raise UsageError("bad vector %r" % chunk)
        return out
    out = []
    for label in text.split(","):
        label = label.strip().lstrip("eE")
        if not label.isdigit():
            raise UsageError("bad basis label %r" % label)
        out.append(int(label))
    return out


def _emit(report, fmt, out, text_lines):
    if fmt == "json":
        out.write(dumps(report))
    else:
        for line in text_lines:
            out.write(line + "\n")


def _span(sub):
    if sub.dim == 0:
        return "0"
    names = []
    for v in sub.basis:
        terms = []
        for idx, x in enumerate(v, start=1):
            if x == 1:
                terms.append("e%d" % idx)
            elif x:
                terms.append("%s*e%d" % (to_text(x), idx))
        names.append(" + ".join(terms))
    return "<" + ", ".join(names) + ">"


# commands

def cmd_alg_info(args, out, err):
    A = _load_algebra(args.file, err)
    flags = alg.class_flags(A)
    chain = alg.power_chain(A)
    idx = alg.nilpotency_index(A)
    ann = alg.annihilator(A)
    report = {
        "dim": A.dim,
        "field": "Q(t)" if A.field_tag == "Qt" else "Q",
        "flags": flags,
        "nilpotent": idx is not alg.NotNilpotent,
        "index": None if idx is alg.NotNilpotent else idx,
        "power_chain": [s.dim for s in chain],
        "annihilator": [[to_text(x) for x in v] for v in ann.basis],
    }
    kinds = [k for k in ("commutative", "anticommutative", "gamma_form") if flags[k]]
    lines = [
        "dim: %d" % A.dim,
        "class: %s" % (", ".join(kinds) if kinds else "general"),
        "power chain dims: %s" % " ".join(map(str, report["power_chain"])),
        "nilpotency index: %s" % (report["index"] if report["nilpotent"] else "not nilpotent"),
        "ann: %s" % _span(ann),
    ]
    _emit(report, args.format, out, lines)
    return OK


def cmd_family_gen(args, out, err):
    seed = _seed(args)
    spec = fam.family_spec(args.kind, args.dim)
    params = fam.random_params(spec, seed)
    A = fam.instantiate(spec, params)
    _write(args.out, dump_algebra(A), out)
    if args.params_out:
        _write(args.params_out, dump_params(spec, params), out)
    return OK


def _targets_from_sample(args):
    seed = _seed(args)
    if args.dim is None:
        raise UsageError("--sample-count needs --dim")
    return [alg.sample_random({"dim": args.dim, "class": args.mode, "seed": seed * 100003 + i})
            for i in range(args.sample_count)]


def _synthesize(job):
    target, mode, window, max_nodes = job
    try:
        w = deg.construct_witness(target, mode, window=window, max_nodes=max_nodes)
    except deg.BaseCaseUnresolved as e:
        return "exhausted", str(e)
    return "ok", w


def cmd_degenerate(args, out, err):
    if bool(args.target) == bool(args.sample_count):
        raise UsageError("give exactly one of --target and --sample-count")
    if args.target:
        targets = [_load_algebra(args.target, err)]
    else:
        if args.out:
            raise UsageError("--out writes a single witness; drop it with --sample-count")
        targets = _targets_from_sample(args)
    if args.normalize:
        targets = [alg.gamma_normalize(A)[1] for A in targets]
    jobs = [(A, args.mode, args.window, args.max_nodes) for A in targets]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_synthesize, jobs))
    else:
        results = [_synthesize(j) for j in jobs]
    rows = []
    for n, (status, val) in enumerate(results):
        if status == "exhausted":
            rows.append({"target": n, "status": "exhausted", "detail": val})
            continue
        ok = deg.verify_witness(val)["ok"]
        rows.append({"target": n, "status": "verified" if ok else "rejected"})
        if ok and args.out:
            _write(args.out, dump_witness(val), out)
    lines = ["target %d: %s" % (r["target"], r["status"]) + (" (%s)" % r["detail"] if "detail" in r else "")
             for r in rows]
    _emit({"mode": args.mode, "results": rows}, args.format, err if args.out == "-" else out, lines)
    statuses = {r["status"] for r in rows}
    if "rejected" in statuses:
        return FAILED
    if "exhausted" in statuses:
        return EXHAUSTED
    return OK


def cmd_verify(args, out, err):
    parsed = parse_witness(_read(args.witness))
    report = deg.verify_witness(parsed.value)
    summary = {
        "ok": report["ok"],
        "limits": report["limits"],
        "pins": report["pins"],
        "membership": report["membership"],
        "points": report["points"],
    }
    lines = ["limits: %s" % ("ok" if not report["limits"] else "; ".join(report["limits"])),
             "pins: %s" % ("ok" if not report["pins"] else "; ".join(report["pins"])),
             "membership: %s" % ("ok" if not report["membership"] else "; ".join(report["membership"])),
             "verdict: %s" % ("VERIFIED" if report["ok"] else "REJECTED")]
    _emit(summary, args.format, out, lines)
    return OK if report["ok"] else FAILED


def cmd_length(args, out, err):
    A = _load_algebra(args.file, err)
    S = _generating_set(args.set, A.dim)
    chain = inv.length_chain(A, S)
    report = {"length": len(chain), "chain": [L.dim for L in chain]}
    _emit(report, args.format, out, ["length: %d" % len(chain),
                                     "L_i dims: %s" % " ".join(str(L.dim) for L in chain)])
    return OK


def cmd_reduce(args, out, err):
    A = _load_algebra(args.file, err)
    S = _generating_set(args.set, A.dim)
    res = inv.nilpotent_reduction(A, S)
    idx = alg.nilpotency_index(res.algebra)
    good = idx == res.length + 1 and alg.class_flags(res.algebra)["anticommutative"]
    if args.out:
        _write(args.out, dump_algebra(res.algebra), out)
    report = {"length": res.length, "index": None if idx is alg.NotNilpotent else idx,
              "complement_dims": [len(K) for K in res.complements], "ok": good}
    _emit(report, args.format, out if args.out not in (None, "-") else err,
          ["length k: %d" % res.length, "index of reduction: %s" % report["index"],
           "complement dims: %s" % " ".join(map(str, report["complement_dims"])),
           "index = k+1: %s" % ("yes" if good else "NO")])
    return OK if good else FAILED


def cmd_dims(args, out, err):
    rows = []
    for n in range(args.min_n, args.max_n + 1):
        rows.append({"n": n, **{c: fam.variety_dimension(c, n)
                                for c in ("general", "commutative", "anticommutative", "gammaOnly")}})
    lines = ["%4s %10s %12s %16s %10s" % ("n", "general", "commutative", "anticommutative", "gamma")]
    for r in rows:
        lines.append("%4d %10d %12d %16d %10d" % (r["n"], r["general"], r["commutative"],
                                                  r["anticommutative"], r["gammaOnly"]))
    _emit({"rows": rows}, args.format, out, lines)
    return OK


def cmd_bounds(args, out, err):
    A = _load_algebra(args.file, err)
    S = _generating_set(args.set, A.dim) if args.set else None
    rep = inv.bound_report(A, S)
    lines = ["dim: %d" % rep["dim"],
             "nilpotency index: %s" % (rep["index"] if rep["nilpotent"] else "not nilpotent")]
    if "length" in rep:
        lines.append("length: %d" % rep["length"])
    for c in rep["checks"]:
        state = "attained" if c["attained"] else ("slack" if c["holds"] else "VIOLATED")
        lines.append("%s: %d vs %d, %s" % (c["name"], c["value"], c["bound"], state))
    _emit(rep, args.format, out, lines)
    return OK if rep["ok"] else FAILED


def build_parser():
    p = _Parser(prog="nilvar", description="Exact toolkit for nilpotent algebras and their degenerations.")
    sub = p.add_subparsers(dest="command")

    def fmt(q):
        q.add_argument("--format", choices=("text", "json"), default="text")

    a = sub.add_parser("alg", help="algebra utilities")
    asub = a.add_subparsers(dest="alg_command")
    info = asub.add_parser("info", help="class flags, power chain, index and annihilator")
    info.add_argument("file")
    fmt(info)
    info.set_defaults(func=cmd_alg_info)

    f = sub.add_parser("family", help="generic families")
    fsub = f.add_subparsers(dest="family_command")
    gen = fsub.add_parser("gen", help="random member of a family")
    gen.add_argument("--kind", choices=fam.KINDS, required=True)
    gen.add_argument("--dim", type=int, required=True)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--out")
    gen.add_argument("--params-out")
    gen.set_defaults(func=cmd_family_gen)

    d = sub.add_parser("degenerate", help="synthesize and verify degeneration witnesses")
    d.add_argument("--target")
    d.add_argument("--mode", choices=tuple(deg.BASE_DIM), default="general")
    d.add_argument("--out")
    d.add_argument("--window", type=_window, default=(-6, 6))
    d.add_argument("--max-nodes", type=int, default=200000)
    d.add_argument("--sample-count", type=int)
    d.add_argument("--dim", type=int)
    d.add_argument("--seed", type=int)
    d.add_argument("--jobs", type=int, default=1)
    d.add_argument("--normalize", action="store_true", help="bring targets to gamma-form first")
    fmt(d)
    d.set_defaults(func=cmd_degenerate)

    v = sub.add_parser("verify", help="check a witness file")
    v.add_argument("--witness", required=True)
    fmt(v)
    v.set_defaults(func=cmd_verify)

    for name, func, helptext in (("length", cmd_length, "length of a generating set"),
                                 ("reduce", cmd_reduce, "graded nilpotent reduction")):
        q = sub.add_parser(name, help=helptext)
        q.add_argument("file")
        q.add_argument("--set", required=True, help="e1,e2 or 1,0,0;0,1,0")
        fmt(q)
        if name == "reduce":
            q.add_argument("--out")
        q.set_defaults(func=func)

    dm = sub.add_parser("dims", help="variety dimension formulas")
    dm.add_argument("--min-n", type=int, default=2)
    dm.add_argument("--max-n", type=int, required=True)
    fmt(dm)
    dm.set_defaults(func=cmd_dims)

    b = sub.add_parser("bounds", help="nilpotency and length bounds")
    b.add_argument("file")
    b.add_argument("--set")
    fmt(b)
    b.set_defaults(func=cmd_bounds)
    return p


INPUT_ERRORS = (
    UsageError, SchemaViolation, DimensionMismatch,
    fam.DimensionTooSmall, fam.MissingParameter, fam.NonzeroViolation,
    deg.GammaFormRequired, deg.SymmetryMismatch,
    inv.NotGenerating, inv.NotAnticommutative,
    ValueError,  # remaining contract violations on user input
)


def dispatch(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not hasattr(args, "func"):
            raise UsageError("missing command; try --help")
        return args.func(args, out, err)
    except INPUT_ERRORS as e:
        err.write("error: %s\n" % e)
        return BAD_INPUT
    except deg.SearchExhausted as e:
        err.write("search exhausted: %s\n" % e)
        return EXHAUSTED


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
