"""Command-line front end.

Every command prints one JSON manifest on stdout:
{"command", "inputs" (sha256 per input file), "params", "result", "version"}.
Exit codes: 0 success, 2 validation error, 3 cap exceeded.  Error manifests
carry {"error": {"code", "message"[, "cap"]}} instead of "result".
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import __version__, cgop, checks, trees
from . import complexity as cx
from . import hochschild as hs
from . import homotopy as ho
from . import serialize as ser
from . import slice as sl
from .errors import CapExceeded, OperadError
from .serialize import MalformedInput


class UsageError(OperadError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Inputs:
    """Reads JSON inputs and remembers their digests."""

    def __init__(self):
        self.digests: dict[str, str] = {}

    def load(self, name: str, path: str):
        try:
            raw = sys.stdin.buffer.read() if path == "-" else open(path, "rb").read()
        except OSError as exc:
            raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc
        self.digests[name] = ser.sha256(raw)
        try:
            return json.loads(raw)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise MalformedInput(f"{name}: malformed JSON ({exc})") from exc


# -- commands ------------------------------------------------------------------

def cmd_compose(args, inputs: _Inputs):
    doc = inputs.load("input", args.input)
    a, b, i = ser._need(doc, "a"), ser._need(doc, "b"), ser._need(doc, "i")
    if not isinstance(i, int):
        raise MalformedInput("i must be an integer")
    if isinstance(a, dict) and "nodes" in a:
        return ser.tree_to_json(trees.sc_compose(ser.tree_from_json(a), i, ser.tree_from_json(b)))
    if isinstance(a, dict) and "inputs" in a:
        return ser.relative_to_json(cgop.relative_compose(ser.relative_from_json(a), i, ser.relative_from_json(b)))
    return ser.op_to_json(cgop.compose(ser.op_from_json(a), i, ser.op_from_json(b)))


def cmd_enumerate(args, inputs):
    elems = cgop.enumerate_ops(args.n, args.arity, cap=args.cap)
    return {"count": len(elems), "elements": [ser.op_to_json(op) for op in elems]}


def _poset_from_relations(doc):
    size = ser._need(doc, "size")
    rel = {(i, i) for i in range(size)}
    for pair in ser._need(doc, "relations"):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, int) and 0 <= x < size for x in pair)):
            raise MalformedInput(f"bad relation {pair!r}")
        rel.add(tuple(pair))
    changed = True
    while changed:
        extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
        rel |= extra
        changed = bool(extra)
    if any(a != b and (b, a) in rel for a, b in rel):
        raise MalformedInput("relations contain a cycle")
    return list(range(size)), lambda a, b: (a, b) in rel


def _category_from_json(doc) -> ho.FiniteCategory:
    objects = ser._need(doc, "objects")
    objects = list(range(objects)) if isinstance(objects, int) else list(objects)
    arrows = []
    for k, a in enumerate(ser._need(doc, "arrows")):
        if not isinstance(a, list) or len(a) not in (2, 3):
            raise MalformedInput(f"arrow {k} must be [source, target] or [source, target, label]")
        arrows.append((a[0], a[1], a[2] if len(a) == 3 else k))
    comp = {}
    for entry in ser._need(doc, "compose"):
        g, f, h = entry
        comp[(g, f)] = h
    cat = ho.FiniteCategory(objects, arrows, comp)
    cat.check()
    return cat


def cmd_nerve_homology(args, inputs):
    doc = inputs.load("input", args.input)
    D = args.max_degree
    if not isinstance(doc, dict):
        raise MalformedInput("expected a JSON object")
    if "category" in doc:
        data = ho.nerve(_category_from_json(doc["category"]), D)
    elif "poset" in doc:
        elems, leq = _poset_from_relations(doc["poset"])
        data = ho.order_complex(elems, leq, D)
    elif "elements" in doc:
        elems = [ser.op_from_json(e) for e in doc["elements"]]
        if len({(e.color_bound, e.arity) for e in elems}) > 1:
            raise MalformedInput("elements must share colour bound and arity")
        data = ho.order_complex(elems, cgop.leq, D)
    else:
        elems = cgop.enumerate_ops(ser._need(doc, "colorBound"), ser._need(doc, "arity"), cap=args.cap)
        data = ho.order_complex(elems, cgop.leq, D)
    res = ho.homology(data)
    return {"betti": res.betti, "torsion": res.torsion, "counts": data.counts(), "complete": data.complete,
            "eulerCharacteristic": data.euler_characteristic()}


def _slice_target(args, inputs):
    if args.target == "nullary":
        return cgop.nullary(args.n)
    if args.target == "leaf":
        return None
    return ser.op_from_json(inputs.load("target", args.target))


def cmd_slice(args, inputs):
    caps = sl.SliceCaps(args.max_black, args.max_vertices, args.max_arity, args.max_objects, args.max_arrows)
    cat = sl.slice_category(args.n, args.word, _slice_target(args, inputs), caps)
    out = {
        "objects": [ser.tree_to_json(x) for x in cat.objects],
        "arrows": [[s, t] for k, (s, t, _) in enumerate(cat.arrows) if not cat.is_identity(k)],
        "caps": {"maxBlack": caps.max_black, "maxVertices": caps.max_vertices, "maxArity": caps.max_arity},
    }
    if args.homology:
        data = ho.nerve(cat, args.max_degree)
        res = ho.homology(data)
        out["homology"] = {"betti": res.betti, "torsion": res.torsion, "complete": data.complete}
    return out


def cmd_complexity(args, inputs):
    x = ser.tree_from_json(inputs.load("input", args.input))
    return ser.relative_to_json(cx.complexity(x))


def cmd_hp(args, inputs):
    A = ser.algebra_from_json(inputs.load("algebra", args.algebra))
    cplx = hs.hp_complex(A, None, args.order, args.max_degree, cap=args.cap)
    cplx.check()
    return {"betti": hs.cohomology(cplx), "dims": cplx.dims[: args.max_degree + 1]}


def cmd_square_check(args, inputs):
    A = ser.algebra_from_json(inputs.load("algebra", args.algebra))
    if args.exhaustive:
        L, M = args.exhaustive
        maps = [f for l in range(L + 1) for m in range(M + 1) for f in hs.simplex_maps(l, m)]
    elif args.map is not None:
        values = tuple(int(v) for v in args.map.split(","))
        maps = [hs.SimplexMap(len(values) - 1, args.target if args.target is not None else max(values), values)]
    else:
        raise UsageError("give --map or --exhaustive L M")
    failures = [ser.simplex_map_to_json(f) for f in maps if not hs.square_check(A, args.n, f)]
    return {"checked": len(maps), "failures": failures, "ok": not failures}


def cmd_check(args, inputs):
    reports = []
    if args.exhaustive:
        reports += checks.exhaustive_axioms((1, 2), 3)
        reports.append(checks.poset_axioms(cgop.enumerate_ops(2, 3)))
        reports.append(checks.monotonicity(2, 3))
        reports.append(checks.relative_closure(2, 3))
        for n in (1, 2):
            reports += checks.plus_axioms(checks.plus_operations(n))
    else:
        reports += checks.exhaustive_axioms((1, 2), 2)
        reports.append(checks.poset_axioms(cgop.enumerate_ops(2, 2)))
    reports += checks.randomized_axioms(3, 4, args.samples, seed=args.seed)
    out = [r.as_dict() for r in reports]
    return {"ok": all(r["ok"] for r in out), "suites": out}


COMMANDS: dict[str, Callable] = {
    "compose": cmd_compose,
    "enumerate": cmd_enumerate,
    "nerve-homology": cmd_nerve_homology,
    "slice": cmd_slice,
    "complexity": cmd_complexity,
    "hp": cmd_hp,
    "square-check": cmd_square_check,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="swisscheese", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("compose", help="partial composition of two operations")
    s.add_argument("--input", required=True, help='JSON {"a": ..., "i": ..., "b": ...} ("-" for stdin)')

    s = sub.add_parser("enumerate", help="all elements of K_n(k)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--arity", type=int, required=True)
    s.add_argument("--cap", type=int, default=cgop.DEFAULT_CAP)

    s = sub.add_parser("nerve-homology", help="integral homology of an order complex or nerve")
    s.add_argument("--input", required=True)
    s.add_argument("--max-degree", type=int, default=ho.DEFAULT_DEGREE_CAP)
    s.add_argument("--cap", type=int, default=cgop.DEFAULT_CAP)

    s = sub.add_parser("slice", help="finite slice category of the plus construction")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--word", default="", help="colour word over f/h, e.g. ff")
    s.add_argument("--target", default="nullary", help='"nullary", "leaf" or a JSON operation file')
    d = sl.SliceCaps()
    s.add_argument("--max-black", type=int, default=d.max_black)
    s.add_argument("--max-vertices", type=int, default=d.max_vertices)
    s.add_argument("--max-arity", type=int, default=d.max_arity)
    s.add_argument("--max-objects", type=int, default=d.max_objects)
    s.add_argument("--max-arrows", type=int, default=d.max_arrows)
    s.add_argument("--homology", action="store_true")
    s.add_argument("--max-degree", type=int, default=ho.DEFAULT_DEGREE_CAP)

    s = sub.add_parser("complexity", help="image of a tree operation under the complexity map")
    s.add_argument("--input", required=True)

    s = sub.add_parser("hp", help="Hochschild-Pirashvili cohomology of a commutative algebra")
    s.add_argument("--algebra", required=True)
    s.add_argument("--order", type=int, default=1)
    s.add_argument("--max-degree", type=int, default=4)
    s.add_argument("--cap", type=int, default=hs.DEFAULT_SPACE_CAP)

    s = sub.add_parser("square-check", help="compare End_A(alpha_n(f)) with L(A, A)(S^n(f))")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--algebra", required=True)
    s.add_argument("--map", help="comma-separated values of f : [l] -> [m]")
    s.add_argument("--target", type=int, help="m (defaults to the largest value)")
    s.add_argument("--exhaustive", type=int, nargs=2, metavar=("L", "M"))

    s = sub.add_parser("check", help="operad axiom suites")
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=1000)
    return p


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "command"}


def run(argv: list[str]) -> tuple[int, str]:
    """Execute one command; return (exit code, JSON text)."""
    manifest = {"version": __version__, "command": None}
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError(f"choose a subcommand: {', '.join(COMMANDS)}")
        manifest["command"] = args.command
        manifest["params"] = _params(args)
        inputs = _Inputs()
        result = COMMANDS[args.command](args, inputs)
        manifest["inputs"] = inputs.digests
        manifest["result"] = result
        return 0, ser.dumps(manifest)
    except CapExceeded as exc:
        manifest["error"] = {"code": exc.code, "message": str(exc), "cap": exc.cap}
        return 3, ser.dumps(manifest)
    except OperadError as exc:
        manifest["error"] = {"code": exc.code, "message": str(exc)}
        return 2, ser.dumps(manifest)
    except (KeyError, TypeError, ValueError) as exc:
        # structurally wrong JSON that slipped past the field checks
        manifest["error"] = {"code": "malformed-input", "message": f"{type(exc).__name__}: {exc}"}
        return 2, ser.dumps(manifest)


def main(argv: list[str] | None = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
