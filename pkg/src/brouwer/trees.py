"""Brouwer-operation trees.

A tree is either ``Leaf(n)``, the constant operation answering ``n`` (its
neighbourhood function is ``lambda a: n + 1``), or ``Node(children,
default)``, the supremum of its immediate subtrees. Infinite branching is
represented as a finite support map plus a default subtree that stands for
every index missing from the map.

Only this finite-support-plus-default subclass of Brouwer-operations is
representable; every construction in the package stays inside it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Generic, Iterator, Mapping, TypeVar, Union

from .errors import DepthBudgetExceeded, LeafHasNoChildren, WireFormatError
from .sequences import FiniteSeq, Stream, monus, natural, sg, succ

R = TypeVar("R")

#: Construction-time cap on tree depth; ``BROUWER_MAX_DEPTH`` overrides it.
MAX_DEPTH = int(os.environ.get("BROUWER_MAX_DEPTH", "64"))


@dataclass(frozen=True)
class Leaf:
    value: int

    def __post_init__(self):
        natural(self.value)

    @property
    def depth(self) -> int:
        return 0


@dataclass(frozen=True)
class Node:
    """Branching node. ``children`` may be passed as any int-keyed mapping;
    it is stored as a tuple of ``(index, subtree)`` pairs sorted by index."""

    children: tuple[tuple[int, Tree], ...]
    default: Tree
    depth: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        items = self.children.items() if isinstance(self.children, Mapping) else self.children
        children = tuple(sorted((natural(k), t) for k, t in items))
        if len({k for k, _ in children}) != len(children):
            raise ValueError("duplicate child index")
        object.__setattr__(self, "children", children)
        depth = 1 + max([self.default.depth, *(t.depth for _, t in children)])
        if depth > MAX_DEPTH:
            raise DepthBudgetExceeded(depth, MAX_DEPTH)
        object.__setattr__(self, "depth", depth)

    @property
    def support(self) -> dict[int, Tree]:
        return dict(self.children)

    def child(self, n: int) -> Tree:
        for k, t in self.children:
            if k == n:
                return t
        return self.default


Tree = Union[Leaf, Node]


@dataclass(frozen=True)
class EvalResult:
    value: int
    consumed: int


@dataclass(frozen=True)
class InductiveAlgebra(Generic[R]):
    """Fold algebra for :func:`bar_recursor`.

    ``on_node(path, support, default)`` receives the results of the listed
    children keyed by index and the default child's result. It must be
    uniform in unlisted branches: ``default`` may only be used as the value
    shared by every index missing from ``support``.
    """

    on_leaf: Callable[[FiniteSeq, int], R]
    on_node: Callable[[FiniteSeq, dict[int, R], R], R]


def fresh_index(support) -> int:
    """Least index not in ``support``; the default child is visited under it."""
    n = 0
    while n in support:
        n += 1
    return n


def child(t: Tree, n: int) -> Tree:
    if isinstance(t, Leaf):
        raise LeafHasNoChildren(f"Leaf({t.value}) has no children")
    return t.child(n)


def depth(t: Tree) -> int:
    return t.depth


def evaluate(t: Tree, s: Stream) -> EvalResult:
    """Walk ``t`` along ``s`` until a leaf; the shallowest leaf on the path wins."""
    consumed = 0
    while isinstance(t, Node):
        if consumed >= MAX_DEPTH:
            raise DepthBudgetExceeded(consumed + 1, MAX_DEPTH)
        t = t.child(s[consumed])
        consumed += 1
    return EvalResult(t.value, consumed)


def secured_at(t: Tree, a: FiniteSeq) -> int | None:
    """Length of the prefix of ``a`` at which ``t`` reaches a leaf, if any."""
    for i, x in enumerate(a):
        if isinstance(t, Leaf):
            return i
        t = t.child(x)
    return len(a) if isinstance(t, Leaf) else None


def neighborhood_value(t: Tree, a: FiniteSeq) -> int:
    """The neighbourhood function of ``t`` at ``a``: leaf value + 1 once secured, else 0."""
    for x in a:
        if isinstance(t, Leaf):
            break
        t = t.child(x)
    return succ(t.value) if isinstance(t, Leaf) else 0


def is_secured(t: Tree, a: FiniteSeq) -> bool:
    return secured_at(t, a) is not None


def to_neighborhood(t: Tree):
    """The tree-backed neighbourhood function of ``t``."""
    from .nbhd import TreeBacked

    return TreeBacked(t)


def trim(t: Tree) -> Tree:
    """Delay every leaf so that a secured ``a`` always satisfies ``|a| > gamma(a)``.

    A ``Leaf(n)`` at depth ``d`` becomes a chain of all-default nodes of
    length ``max(0, n + 2 - d)`` ending in ``Leaf(n)``. The resulting
    neighbourhood function is ``gamma(a) * sg(|a| - gamma(a))``.
    """

    def go(t: Tree, d: int) -> Tree:
        if isinstance(t, Leaf):
            out: Tree = t
            for _ in range(monus(t.value + 2, d)):
                out = Node({}, out)
            return out
        return Node({k: go(c, d + 1) for k, c in t.children}, go(t.default, d + 1))

    return go(t, 0)


def trimmed_value(gamma_a: int, length: int) -> int:
    return gamma_a * sg(monus(length, gamma_a))


def bar_recursor(t: Tree, alg: InductiveAlgebra[R]) -> R:
    """Structural fold of ``t`` through ``alg``, returning the value at the root.

    The default child is folded once, under the path extended by the least
    index missing from the support.
    """

    def go(t: Tree, path: FiniteSeq) -> R:
        if isinstance(t, Leaf):
            return alg.on_leaf(path, t.value)
        support = {k: go(c, path + (k,)) for k, c in t.children}
        default = go(t.default, path + (fresh_index(support),))
        return alg.on_node(path, support, default)

    return go(t, ())


def leaves(t: Tree, path: FiniteSeq = ()) -> Iterator[tuple[FiniteSeq, int]]:
    """Every leaf with its path; default children are reached via :func:`fresh_index`."""
    if isinstance(t, Leaf):
        yield path, t.value
        return
    for k, c in t.children:
        yield from leaves(c, path + (k,))
    yield from leaves(t.default, path + (fresh_index(dict(t.children)),))


def tree_to_wire(t: Tree) -> dict:
    if isinstance(t, Leaf):
        return {"leaf": t.value}
    return {
        "node": {
            "children": {str(k): tree_to_wire(c) for k, c in t.children},
            "default": tree_to_wire(t.default),
        }
    }


def tree_from_wire(obj) -> Tree:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise WireFormatError(f'a tree is {{"leaf": n}} or {{"node": {{...}}}}, got {obj!r}')
    if "leaf" in obj:
        v = obj["leaf"]
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise WireFormatError(f"leaf value must be a natural, got {v!r}")
        try:
            return Leaf(v)
        except ArithmeticError as exc:
            raise WireFormatError(str(exc)) from exc
    if "node" in obj:
        body = obj["node"]
        if not isinstance(body, dict) or set(body) != {"children", "default"}:
            raise WireFormatError('a node is {"children": {...}, "default": tree}')
        kids = body["children"]
        if not isinstance(kids, dict):
            raise WireFormatError("node children must be an object")
        children = {}
        for key, sub in kids.items():
            if not key.isdigit() or str(int(key)) != key:
                raise WireFormatError(f"child key must be a canonical decimal, got {key!r}")
            children[int(key)] = tree_from_wire(sub)
        return Node(children, tree_from_wire(body["default"]))
    raise WireFormatError(f"unknown tree form {sorted(obj)}")
