"""Bars at bounded depth, realiser synthesis, locally continuous relations,
and the LLPO gadget built from a Pi^0_1 bar.

Every check here quantifies over a finite fan ``{0..branching-1}`` up to a
stated depth, so a passing verdict is evidence at that bound and a failing
one is a genuine counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import FuelExhausted, PremiseViolated, WireFormatError
from .nbhd import CBarFn, stable_on_extensions
from .sequences import FiniteSeq, natural, sequences, sequences_upto
from .trees import Leaf, Node, Tree

DETACHABLE = "detachable"
MONOTONE = "monotone"
PI01 = "pi01"


@dataclass(frozen=True)
class BarPredicate:
    decide: Callable[[FiniteSeq], bool]
    flavor: str = DETACHABLE
    horizon: Optional[int] = None  # pi01 only: how many witnesses are inspected

    def __call__(self, a: FiniteSeq) -> bool:
        return bool(self.decide(tuple(a)))


def pi01(witness: Callable[[FiniteSeq, int], bool], horizon: int) -> BarPredicate:
    """``P(a)`` iff ``witness(a, n)`` for every ``n < horizon``."""
    return BarPredicate(lambda a: all(witness(a, n) for n in range(horizon)), PI01, horizon)


@dataclass(frozen=True)
class BarVerdict:
    branching: int
    depth: int
    witness: Optional[FiniteSeq] = None

    @property
    def passed(self) -> bool:
        return self.witness is None

    def to_wire(self) -> dict:
        return {
            "branching": self.branching,
            "depth": self.depth,
            "passed": self.passed,
            "witness": None if self.witness is None else list(self.witness),
        }


def is_bar(P: Callable[[FiniteSeq], bool], branching: int, depth: int) -> BarVerdict:
    """Does every path of length ``depth`` over the fan pass through ``P``?

    The witness of a failure is the lexicographically first such path.
    """

    def escape(a: FiniteSeq) -> Optional[FiniteSeq]:
        if P(a):
            return None
        if len(a) == depth:
            return a
        for i in range(branching):
            w = escape(a + (i,))
            if w is not None:
                return w
        return None

    return BarVerdict(branching, depth, escape(()))


def monotone_closure(P: Callable[[FiniteSeq], bool]) -> BarPredicate:
    def decide(a: FiniteSeq) -> bool:
        return any(P(a[:k]) for k in range(len(a) + 1))

    return BarPredicate(decide, MONOTONE)


def monotone_violation(P: Callable[[FiniteSeq], bool], branching: int, depth: int):
    """First ``(a, <i>)`` with ``P(a)`` but not ``P(a*<i>)``, or ``None``.

    One-step extensions suffice: monotonicity along single steps chains.
    """
    for a in sequences_upto(branching, depth - 1):
        if P(a):
            for i in range(branching):
                if not P(a + (i,)):
                    return a, (i,)
    return None


def _merge_into_default(children: dict[int, Tree], default: Tree) -> Tree:
    kept = {k: c for k, c in children.items() if c != default}
    return Node(kept, default)


def _search_tree(
    stop: Callable[[FiniteSeq], Optional[int]],
    branching: int,
    fuel: int,
) -> Tree:
    """Grow a tree by exploring ``{0..branching-1}`` until ``stop`` yields a value.

    The highest explored index doubles as the default child, and children
    equal to it are folded back into the default.
    """

    def go(a: FiniteSeq) -> Tree:
        v = stop(a)
        if v is not None:
            return Leaf(v)
        if len(a) >= fuel:
            raise FuelExhausted(a)
        subtrees = {i: go(a + (i,)) for i in range(branching)}
        default = subtrees.pop(branching - 1)
        return _merge_into_default(subtrees, default)

    return go(())


def tree_from_cbar(delta: CBarFn, branching: int, fuel: int, lookahead: int = 6) -> Tree:
    """Synthesise a Brouwer tree realising ``F_delta`` on the fan ``{0..branching-1}``.

    A path ``a`` becomes ``Leaf(delta(a))`` as soon as ``delta`` is stable on
    every extension of ``a`` of length up to ``min(fuel - |a|, lookahead)``.
    """
    if branching < 1:
        raise ValueError("branching must be positive")

    def stop(a: FiniteSeq) -> Optional[int]:
        window = min(fuel - len(a), lookahead)
        if window >= 1 and stable_on_extensions(delta, a, branching, window):
            return delta(a)
        return None

    return _search_tree(stop, branching, fuel)


@dataclass(frozen=True)
class LocalRelation:
    """A relation ``R(stream, x)`` presented by the values it secures on
    cylinders: ``secured_value(a) = x`` means ``R(b, x)`` for every stream
    ``b`` extending ``a``; ``None`` means nothing is known yet."""

    secured_value: Callable[[FiniteSeq], Optional[int]]

    def __call__(self, a: FiniteSeq) -> Optional[int]:
        return self.secured_value(tuple(a))


def bar_from_relation(R: LocalRelation) -> BarPredicate:
    return BarPredicate(lambda a: R(a) is not None)


def refine_relation(R: LocalRelation, branching: int, fuel: int) -> Tree:
    """A tree whose induced function is a choice function of ``R`` on the fan."""
    if branching < 1:
        raise ValueError("branching must be positive")
    return _search_tree(R, branching, fuel)


@dataclass(frozen=True)
class LlpoInstance:
    """Truncations of two 0/1 streams, at most one of which may contain a 1."""

    alpha: FiniteSeq
    beta: FiniteSeq

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(natural(x) for x in self.alpha))
        object.__setattr__(self, "beta", tuple(natural(x) for x in self.beta))
        if len(self.alpha) != len(self.beta):
            raise ValueError("alpha and beta truncations must have the same length")
        if not self.alpha:
            raise ValueError("truncations must be nonempty")

    @property
    def horizon(self) -> int:
        return len(self.alpha)


@dataclass(frozen=True)
class GadgetReport:
    bar: bool
    subset: bool
    inductive: bool
    disjunct: str  # "Left": alpha vanishes; "Right": beta vanishes
    horizon: int

    def to_wire(self) -> dict:
        return {
            "bar": self.bar,
            "disjunct": self.disjunct,
            "horizon": self.horizon,
            "inductive": self.inductive,
            "subset": self.subset,
        }


def llpo_gadget(inst: LlpoInstance) -> GadgetReport:
    """Run the bar-induction argument for LLPO on a finite truncation.

    ``P = {<n> | alpha(n) = 0} | {<> | beta vanishes}`` is a Pi^0_1 bar over
    the indices ``n < horizon``; ``Q = P | {<> | alpha vanishes}`` contains
    ``P`` and is inductive at the root, so ``<>`` lies in ``Q``, and which
    clause put it there decides the disjunct.
    """
    alpha, beta, h = inst.alpha, inst.beta, inst.horizon
    if any(alpha) and any(beta):
        raise PremiseViolated("both alpha and beta have a nonzero entry")

    def vanishes(xs: Sequence[int]) -> BarPredicate:
        return pi01(lambda a, n: xs[n] == 0, h)

    beta_zero = vanishes(beta)
    alpha_zero = vanishes(alpha)

    def P(a: FiniteSeq) -> bool:
        if len(a) == 0:
            return beta_zero(a)
        return len(a) == 1 and a[0] < h and alpha[a[0]] == 0

    def Q(a: FiniteSeq) -> bool:
        return P(a) or (len(a) == 0 and alpha_zero(a))

    bar = is_bar(P, h, 1).passed
    subset = all(Q(a) for a in sequences_upto(h, 1) if P(a))
    inductive = not all(Q(a) for a in sequences(h, 1)) or Q(())
    if not Q(()):
        # Unreachable under the premise: a nonzero alpha forces beta to vanish.
        raise PremiseViolated("root is not in Q")
    disjunct = "Left" if alpha_zero(()) else "Right"
    return GadgetReport(bar, subset, inductive, disjunct, h)


def llpo_from_wire(alpha, beta) -> LlpoInstance:
    for xs in (alpha, beta):
        if not isinstance(xs, list) or any(isinstance(x, bool) or not isinstance(x, int) or x < 0 for x in xs):
            raise WireFormatError("alpha and beta must be lists of naturals")
    try:
        return LlpoInstance(tuple(alpha), tuple(beta))
    except (ValueError, ArithmeticError) as exc:
        raise WireFormatError(str(exc)) from exc
