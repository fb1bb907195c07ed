"""Command-line front end.

Every verb reads wire-format JSON (inline, or a path to a file holding it)
and prints canonical JSON. Exit status: 0 on success, 1 on a domain error,
2 on malformed input; error bodies are ``{"error": {...}}`` on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import bars, cantor, nbhd, trees
from .canonical import dumps
from .errors import BrouwerError, WireFormatError
from .sequences import seq_from_wire, stream_from_wire

DEFAULT_FUEL = 32
DEFAULT_DEPTH = 6
DEFAULT_BRANCHING = 4


class MalformedInput(Exception):
    def __init__(self, message: str, **where: int):
        super().__init__(message)
        self.where = where

    def to_wire(self) -> dict:
        return {"kind": "MalformedInput", "message": str(self), **self.where}


def _decode(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{source}: {exc.msg}", line=exc.lineno, column=exc.colno, pos=exc.pos) from exc
    except RecursionError as exc:
        raise MalformedInput(f"{source}: nesting too deep") from exc


def load(arg: str) -> Any:
    """Inline JSON if ``arg`` looks like JSON, else the contents of the file it names."""
    if arg.lstrip()[:1] in ("{", "["):
        return _decode(arg, "inline argument")
    try:
        text = Path(arg).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"cannot read {arg}: {exc.strerror}") from exc
    return _decode(text, arg)


def _parse(parser: Callable[[Any], Any], arg: str) -> Any:
    obj = load(arg)
    try:
        return parser(obj)
    except MalformedInput:
        raise
    except (WireFormatError, ValueError, TypeError, ArithmeticError, BrouwerError, RecursionError) as exc:
        raise MalformedInput(str(exc)) from exc


def _gamma_from_wire(obj) -> nbhd.NeighborhoodFn:
    if isinstance(obj, dict) and ("leaf" in obj or "node" in obj):
        return nbhd.TreeBacked(trees.tree_from_wire(obj))
    if isinstance(obj, dict) and "fn" in obj:
        return nbhd.k0_from_modulus(nbhd.pointwise_from_wire(obj))
    return nbhd.table_from_wire(obj)


def cmd_eval(args) -> dict:
    t = _parse(trees.tree_from_wire, args.tree)
    s = _parse(stream_from_wire, args.stream)
    r = trees.evaluate(t, s)
    return {"consumed": r.consumed, "value": r.value}


def cmd_eval_k1(args) -> dict:
    delta = _parse(nbhd.cbar_from_wire, args.delta)
    s = _parse(stream_from_wire, args.stream)
    v = nbhd.eval_k1(delta, s, args.fuel, alphabet=args.alphabet, lookahead=args.depth)
    return {"alphabet": args.alphabet, "fuel": args.fuel, "lookahead": args.depth, "value": v}


def cmd_convert(args) -> dict:
    tt = _parse(cantor.truth_table_from_wire, args.table)
    return trees.tree_to_wire(cantor.tree_from_uniform(tt))


def cmd_check_k0(args) -> dict:
    gamma = _parse(_gamma_from_wire, args.gamma)
    return nbhd.check_k0(gamma, args.depth, args.alphabet).to_wire()


def cmd_is_bar(args) -> dict:
    P = _parse(cantor.predicate_from_wire, args.pred)
    return bars.is_bar(P, args.branching, args.depth).to_wire()


def cmd_fan(args) -> dict:
    P = _parse(cantor.predicate_from_wire, args.pred)
    return {"bound": cantor.fan_bound(P, args.depth)}


def cmd_trim(args) -> dict:
    t = _parse(trees.tree_from_wire, args.tree)
    return trees.tree_to_wire(trees.trim(t))


def cmd_saturate(args) -> dict:
    t = _parse(trees.tree_from_wire, args.tree)
    return trees.tree_to_wire(nbhd.tree_of_saturation(t))


def cmd_synthesize(args) -> dict:
    delta = _parse(nbhd.cbar_from_wire, args.delta)
    return trees.tree_to_wire(bars.tree_from_cbar(delta, args.branching, args.fuel, lookahead=args.depth))


def cmd_demo_llpo(args) -> dict:
    alpha, beta = load(args.alpha), load(args.beta)
    try:
        inst = bars.llpo_from_wire(alpha, beta)
    except WireFormatError as exc:
        raise MalformedInput(str(exc)) from exc
    return bars.llpo_gadget(inst).to_wire()


def _report_from_wire(obj) -> dict:
    fields = {"bar": bool, "subset": bool, "inductive": bool, "disjunct": str, "horizon": int}
    if set(obj) != set(fields) or any(type(obj[k]) is not t for k, t in fields.items()):
        raise WireFormatError("malformed gadget report")
    if obj["disjunct"] not in ("Left", "Right"):
        raise WireFormatError("disjunct must be Left or Right")
    return bars.GadgetReport(**obj).to_wire()


def _keep(parser):
    def run(obj):
        parser(obj)
        return obj

    return run


#: (recognizer, normalizer) for every object-shaped wire value ``roundtrip`` accepts.
WIRE_FORMS: list[tuple[Callable[[dict], bool], Callable[[dict], Any]]] = [
    (lambda o: "leaf" in o or "node" in o, lambda o: trees.tree_to_wire(trees.tree_from_wire(o))),
    (lambda o: "prefix" in o, lambda o: stream_from_wire(o).to_wire()),
    (lambda o: "arity" in o, lambda o: cantor.truth_table_from_wire(o).to_wire()),
    (lambda o: "fn" in o, _keep(nbhd.pointwise_from_wire)),
    (lambda o: "rule" in o, _keep(cantor.predicate_from_wire)),
    (lambda o: "table" in o and isinstance(o.get("default"), bool), _keep(cantor.predicate_from_wire)),
    (lambda o: "table" in o, lambda o: nbhd.table_from_wire(o).to_wire()),
    (lambda o: "disjunct" in o, _report_from_wire),
]


def normalize(obj) -> Any:
    """Parse any wire-format value and return its canonical structure."""
    if isinstance(obj, list):
        return list(seq_from_wire(obj))
    if isinstance(obj, dict):
        for recognize, normal in WIRE_FORMS:
            if recognize(obj):
                return normal(obj)
    raise WireFormatError("not a recognized wire-format value")


def cmd_roundtrip(args) -> Any:
    return _parse(normalize, args.path)


#: verb -> (handler, module operation it exposes)
VERBS: dict[str, tuple[Callable, Callable]] = {
    "eval": (cmd_eval, trees.evaluate),
    "eval-k1": (cmd_eval_k1, nbhd.eval_k1),
    "convert": (cmd_convert, cantor.tree_from_uniform),
    "check-k0": (cmd_check_k0, nbhd.check_k0),
    "is-bar": (cmd_is_bar, bars.is_bar),
    "fan": (cmd_fan, cantor.fan_bound),
    "trim": (cmd_trim, trees.trim),
    "saturate": (cmd_saturate, nbhd.saturate),
    "synthesize": (cmd_synthesize, bars.tree_from_cbar),
    "demo-llpo": (cmd_demo_llpo, bars.llpo_gadget),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="brouwer", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(handler=VERBS[name][0] if name in VERBS else cmd_roundtrip)
        return sp

    def opt(sp, *names, default, help):
        sp.add_argument(*names, type=int, default=default, help=f"{help} (default {default})")

    sp = verb("eval", "walk a tree along a stream")
    sp.add_argument("--tree", required=True)
    sp.add_argument("--stream", required=True)

    sp = verb("eval-k1", "evaluate the function induced by a c-bar function")
    sp.add_argument("--delta", required=True, help='catalog function {"fn": ...} or prefix table')
    sp.add_argument("--stream", required=True)
    opt(sp, "--fuel", default=DEFAULT_FUEL, help="scan horizon")
    opt(sp, "--alphabet", default=DEFAULT_BRANCHING, help="alphabet for stability certification")
    opt(sp, "--depth", default=DEFAULT_DEPTH, help="certification lookahead")

    sp = verb("convert", "truth table of a uniformly continuous function -> binary tree")
    sp.add_argument("--table", required=True)

    sp = verb("check-k0", "check the neighbourhood-function laws exhaustively at a bound")
    sp.add_argument("--gamma", required=True, help="tree, table, or catalog function")
    opt(sp, "--depth", default=DEFAULT_DEPTH, help="sequence length bound")
    opt(sp, "--alphabet", default=DEFAULT_BRANCHING, help="alphabet size")

    sp = verb("is-bar", "bounded bar check")
    sp.add_argument("--pred", required=True)
    opt(sp, "--branching", default=DEFAULT_BRANCHING, help="alphabet size")
    opt(sp, "--depth", default=DEFAULT_DEPTH, help="path length")

    sp = verb("fan", "least uniform bound of a binary bar")
    sp.add_argument("--pred", required=True)
    opt(sp, "--depth", default=DEFAULT_DEPTH, help="search limit")

    sp = verb("trim", "delay leaves so that secured values stay below prefix length")
    sp.add_argument("--tree", required=True)

    sp = verb("saturate", "tree of the shortest-secured-prefix modulus")
    sp.add_argument("--tree", required=True)

    sp = verb("synthesize", "Brouwer tree realising a c-bar function")
    sp.add_argument("--delta", required=True, help='catalog function {"fn": ...} or prefix table')
    opt(sp, "--branching", default=DEFAULT_BRANCHING, help="alphabet size")
    opt(sp, "--fuel", default=DEFAULT_FUEL, help="maximum tree depth")
    opt(sp, "--depth", default=DEFAULT_DEPTH, help="certification lookahead")

    sp = verb("demo-llpo", "run the LLPO bar-induction gadget on finite truncations")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)

    sp = verb("roundtrip", "parse a wire-format file and print its canonical form")
    sp.add_argument("path")
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        result = args.handler(args)
    except MalformedInput as exc:
        out.write(dumps({"error": exc.to_wire()}))
        return 2
    except BrouwerError as exc:
        out.write(dumps({"error": exc.to_wire()}))
        return 1
    except (ValueError, TypeError) as exc:
        out.write(dumps({"error": {"kind": "MalformedInput", "message": str(exc)}}))
        return 2
    out.write(dumps(result))
    return 0


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
