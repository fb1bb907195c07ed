"""Cantor-space specialisations: binary trees, truth tables, fan bounds, c-sets.

A binary tree is an ordinary :class:`~brouwer.trees.Node`/``Leaf`` tree in
which every node lists exactly the children 0 and 1. Its default child is a
copy of child 1, so a Baire-space stream is read through ``sg`` pointwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Mapping

from .errors import NotBarWithinDepth, WireFormatError
from .sequences import EventuallyPeriodic, FiniteSeq, Oracle, Stream, natural, parse_path_key, sequences, sg
from .trees import Leaf, Node, Tree


@dataclass(frozen=True)
class TruthTable:
    """``F`` on Cantor space depending only on its first ``arity`` bits."""

    arity: int
    outputs: tuple[int, ...]  # indexed by the bits read as a big-endian binary number

    def __post_init__(self):
        natural(self.arity)
        if isinstance(self.outputs, Mapping):
            outputs = _outputs_from_mapping(self.arity, self.outputs)
        else:
            outputs = tuple(self.outputs)
        if len(outputs) != 2**self.arity:
            raise ValueError(f"arity {self.arity} needs {2 ** self.arity} outputs, got {len(outputs)}")
        object.__setattr__(self, "outputs", tuple(natural(v) for v in outputs))

    def __call__(self, bits) -> int:
        i = 0
        for b in tuple(bits)[: self.arity]:
            if b not in (0, 1):
                raise ValueError(f"truth tables read binary sequences, got {b}")
            i = 2 * i + b
        return self.outputs[i]

    def restrict(self, bit: int) -> TruthTable:
        """The table of ``F(<bit> * .)``."""
        half = 2 ** (self.arity - 1)
        return TruthTable(self.arity - 1, self.outputs[bit * half : (bit + 1) * half])

    def to_wire(self) -> dict:
        keys = ["".join(map(str, bits)) for bits in sequences(2, self.arity)]
        return {"arity": self.arity, "outputs": dict(zip(keys, self.outputs))}


def _outputs_from_mapping(arity: int, m: Mapping) -> tuple[int, ...]:
    out = []
    for bits in sequences(2, arity):
        key = "".join(map(str, bits))
        if key in m:
            out.append(m[key])
        elif bits in m:
            out.append(m[bits])
        else:
            raise ValueError(f"truth table is missing input {key or '<>'}")
    if len(m) != len(out):
        raise ValueError("truth table has inputs outside {0,1}^arity")
    return tuple(out)


def truth_table_from_wire(obj) -> TruthTable:
    if not isinstance(obj, dict) or set(obj) != {"arity", "outputs"}:
        raise WireFormatError(f'a truth table is {{"arity": n, "outputs": {{...}}}}, got {obj!r}')
    arity, outputs = obj["arity"], obj["outputs"]
    if isinstance(arity, bool) or not isinstance(arity, int) or not 0 <= arity <= 20:
        raise WireFormatError(f"arity must be a natural <= 20, got {arity!r}")
    if not isinstance(outputs, dict) or not all(re.fullmatch("[01]*", k) and len(k) == arity for k in outputs):
        raise WireFormatError(f"outputs must be keyed by binary strings of length {arity}")
    if any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in outputs.values()):
        raise WireFormatError("truth table outputs must be naturals")
    try:
        return TruthTable(arity, outputs)
    except (ValueError, ArithmeticError) as exc:
        raise WireFormatError(str(exc)) from exc


def binary_node(zero: Tree, one: Tree) -> Node:
    return Node({0: zero, 1: one}, one)


def is_binary(t: Tree) -> bool:
    if isinstance(t, Leaf):
        return True
    return [k for k, _ in t.children] == [0, 1] and all(is_binary(c) for _, c in t.children)


def tree_from_uniform(tt: TruthTable) -> Tree:
    """Binary tree realising ``tt``: split on the first bit until no bits remain."""
    if tt.arity == 0:
        return Leaf(tt.outputs[0])
    return binary_node(tree_from_uniform(tt.restrict(0)), tree_from_uniform(tt.restrict(1)))


def uniform_modulus(t: Tree) -> int:
    """A uniform modulus of the function a binary tree realises: its depth."""
    if not is_binary(t):
        raise ValueError("uniform_modulus expects a binary tree")
    return t.depth


@dataclass(frozen=True)
class DetachablePredicate:
    """A decidable predicate on finite sequences."""

    decide: Callable[[FiniteSeq], bool]
    name: str = ""

    def __call__(self, a: FiniteSeq) -> bool:
        return bool(self.decide(tuple(a)))


_ATOMS = {
    "true": (None, lambda _: lambda a: True),
    "false": (None, lambda _: lambda a: False),
    "len": (int, lambda n: lambda a: len(a) >= n),
    "contains": (int, lambda k: lambda a: k in a),
    "starts": (int, lambda k: lambda a: len(a) > 0 and a[0] == k),
}


def _atom(text: str) -> Callable[[FiniteSeq], bool]:
    m = re.fullmatch(r"([a-z]+)(\d*)", text)
    if not m or m.group(1) not in _ATOMS:
        raise WireFormatError(f"unknown predicate atom {text!r}")
    word, num = m.groups()
    takes, build = _ATOMS[word]
    if (takes is None) != (num == ""):
        raise WireFormatError(f"predicate atom {text!r} has a wrong argument")
    return build(int(num) if num else None)


def predicate_from_rule(rule: str) -> DetachablePredicate:
    """Parse a rule such as ``"contains1-or-len4"``.

    Atoms: ``true``, ``false``, ``lenN`` (length at least N), ``containsK``
    (K occurs), ``startsK`` (first entry is K). ``-and-`` binds tighter
    than ``-or-``.
    """
    disjuncts = []
    for part in rule.split("-or-"):
        conj = [_atom(x) for x in part.split("-and-")]
        disjuncts.append(conj)

    def decide(a: FiniteSeq) -> bool:
        return any(all(p(a) for p in conj) for conj in disjuncts)

    return DetachablePredicate(decide, rule)


def predicate_from_wire(obj) -> DetachablePredicate:
    """``{"rule": "..."}`` or ``{"table": {"0,1": true, ...}, "default": false}`` (exact matches)."""
    if isinstance(obj, dict) and set(obj) == {"rule"} and isinstance(obj["rule"], str):
        return predicate_from_rule(obj["rule"])
    if isinstance(obj, dict) and set(obj) == {"table", "default"} and isinstance(obj["table"], dict):
        if not isinstance(obj["default"], bool) or not all(isinstance(v, bool) for v in obj["table"].values()):
            raise WireFormatError("predicate table values must be booleans")
        table = {parse_path_key(k): v for k, v in obj["table"].items()}
        default = obj["default"]
        return DetachablePredicate(lambda a: table.get(a, default), "table")
    raise WireFormatError(f'a predicate is {{"rule": str}} or {{"table": {{...}}, "default": bool}}, got {obj!r}')


def uniform_bound(P: Callable[[FiniteSeq], bool], branching: int, max_depth: int) -> int:
    """Least ``N <= max_depth`` such that every sequence of length ``N`` over
    ``{0..branching-1}`` has a prefix in ``P``, by breadth-first search."""
    frontier = [()] if not P(()) else []
    for n in range(max_depth + 1):
        if not frontier:
            return n
        if n == max_depth:
            break
        frontier = [a + (i,) for a in frontier for i in range(branching) if not P(a + (i,))]
    raise NotBarWithinDepth(frontier[0])


def fan_bound(P: Callable[[FiniteSeq], bool], max_depth: int) -> int:
    """The uniform bound of a bar of the binary tree."""
    return uniform_bound(P, 2, max_depth)


def cset_to_delta(D: Callable[[FiniteSeq], bool]) -> Callable[[FiniteSeq], int]:
    """Indicator function of a detachable predicate."""
    return lambda a: 1 if D(tuple(a)) else 0


def delta_to_cset(delta: Callable[[FiniteSeq], int]) -> DetachablePredicate:
    """``D(a)`` iff ``delta`` agrees at ``a``, ``a*<0>`` and ``a*<1>``."""

    def decide(a: FiniteSeq) -> bool:
        v = delta(a)
        return v == delta(a + (0,)) == delta(a + (1,))

    return DetachablePredicate(decide, "delta-to-cset")


def gamma_embed_seq(a: FiniteSeq) -> FiniteSeq:
    return tuple(sg(x) for x in a)


def gamma_embed(s: Stream) -> Stream:
    """Pointwise ``sg``: Baire space onto Cantor space."""
    if isinstance(s, EventuallyPeriodic):
        return EventuallyPeriodic(gamma_embed_seq(s.prefix), gamma_embed_seq(s.period))
    return Oracle(lambda i: sg(s[i]))


def pullback(C: Callable[[FiniteSeq], bool]) -> DetachablePredicate:
    """The Baire predicate ``P(a) = C(gamma_embed_seq(a))``."""
    return DetachablePredicate(lambda a: C(gamma_embed_seq(a)), "pullback")


def transported_bound(C: Callable[[FiniteSeq], bool], max_depth: int, branching: int = 3) -> int:
    """Uniform bound of the pulled-back bar over ``{0..branching-1}``.

    The bound found on Baire space also bars ``C`` on binary sequences,
    which is how a bound on ``C`` is read off the pulled-back bar.
    """
    return uniform_bound(pullback(C), branching, max_depth)
