"""Neighbourhood functions, c-bar functions and moduli of continuity.

A neighbourhood function ``gamma`` maps finite sequences to naturals with
``gamma(a) == 0`` meaning "not yet secured"; once ``gamma(a) = v + 1 > 0``
the answer ``v`` is fixed for every extension of ``a``. A c-bar function
``delta`` carries no such marker: it is only required to become constant
along every stream eventually.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .errors import DominationViolated, FuelExhausted, NonUniformDefault, WireFormatError
from .sequences import ZEROS, FiniteSeq, Stream, extend, natural, parse_path_key, path_key, sequences_upto, succ
from .trees import EvalResult, Leaf, Node, Tree, fresh_index, neighborhood_value


class NeighborhoodFn:
    """A function from finite sequences to naturals, read with K0 semantics."""

    def __call__(self, a: FiniteSeq) -> int:
        raise NotImplementedError

    def mentioned_indices(self, path: FiniteSeq) -> set[int]:
        """Indices ``n`` for which the restriction to ``path + (n,)`` may
        differ from that of a fresh index. Needed by :func:`upgrade_dominated`."""
        raise TypeError(f"{type(self).__name__} cannot be restricted to unlisted branches")


def apply(gamma: NeighborhoodFn, a: FiniteSeq) -> int:
    return gamma(tuple(a))


@dataclass(frozen=True)
class TreeBacked(NeighborhoodFn):
    tree: Tree

    def __call__(self, a):
        return neighborhood_value(self.tree, a)

    def mentioned_indices(self, path):
        t = self.tree
        for x in path:
            if isinstance(t, Leaf):
                return set()
            t = t.child(x)
        return set() if isinstance(t, Leaf) else {k for k, _ in t.children}


@dataclass(frozen=True)
class DefaultRule:
    """Value for sequences a table does not cover, as a function of ``|a|``.

    ``kind`` is ``"const"`` (``value``) or ``"affine"`` (``slope*|a| + intercept``).
    """

    kind: str = "const"
    value: int = 0
    slope: int = 0
    intercept: int = 0

    def __post_init__(self):
        if self.kind not in ("const", "affine"):
            raise ValueError(f"unknown default rule {self.kind!r}")
        for x in (self.value, self.slope, self.intercept):
            natural(x)

    def __call__(self, length: int) -> int:
        if self.kind == "const":
            return self.value
        return natural(self.slope * length + self.intercept)

    def to_wire(self) -> dict:
        if self.kind == "const":
            return {"kind": "const", "value": self.value}
        return {"kind": "affine", "slope": self.slope, "intercept": self.intercept}


@dataclass(frozen=True)
class TableBacked(NeighborhoodFn):
    """A finite table of neighbourhood values.

    A listed sequence answers its own entry. A positive entry also covers
    every extension (a secured value is fixed from then on); a zero entry
    covers only itself. Sequences covered by nothing fall back to
    ``default(|a|)``.
    """

    entries: tuple[tuple[FiniteSeq, int], ...]
    default: DefaultRule = DefaultRule()
    _lookup: dict = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        items = self.entries.items() if isinstance(self.entries, Mapping) else self.entries
        lookup = {tuple(natural(x) for x in k): natural(v) for k, v in items}
        object.__setattr__(self, "entries", tuple(sorted(lookup.items())))
        object.__setattr__(self, "_lookup", lookup)

    def __call__(self, a):
        a = tuple(a)
        if a in self._lookup:
            return self._lookup[a]
        for k in range(len(a) - 1, -1, -1):
            v = self._lookup.get(a[:k], 0)
            if v > 0:
                return v
        return self.default(len(a))

    def mentioned_indices(self, path):
        n = len(path)
        return {k[n] for k, _ in self.entries if len(k) > n and k[:n] == tuple(path)}

    def to_wire(self) -> dict:
        return table_to_wire(self.entries, self.default)


@dataclass(frozen=True)
class PointwiseFn:
    """A function on streams packaged with a modulus witness ``modulus``:
    every stream agreeing with ``s`` on ``modulus(s)`` places has the same value."""

    name: str
    rule: Callable[[Stream], int]
    modulus: Callable[[Stream], int]

    def __call__(self, s: Stream) -> int:
        return self.rule(s)


def head() -> PointwiseFn:
    return PointwiseFn("head", lambda s: s[0], lambda s: 1)


def sum2() -> PointwiseFn:
    return PointwiseFn("sum2", lambda s: natural(s[0] + s[1]), lambda s: 2)


def const(k: int) -> PointwiseFn:
    natural(k)
    return PointwiseFn(f"const {k}", lambda s: k, lambda s: 0)


def index(i: int) -> PointwiseFn:
    natural(i)
    return PointwiseFn(f"index {i}", lambda s: s[i], lambda s: i + 1)


CATALOG = ("head", "sum2", "const", "index")


def pointwise_from_wire(obj) -> PointwiseFn:
    """``{"fn": "head"}``, ``{"fn": "sum2"}``, ``{"fn": "const", "k": 7}`` or ``{"fn": "index", "i": 3}``."""
    if not isinstance(obj, dict) or "fn" not in obj:
        raise WireFormatError(f'a catalog function is {{"fn": name, ...}}, got {obj!r}')
    name = obj["fn"]
    params = {"head": set(), "sum2": set(), "const": {"k"}, "index": {"i"}}
    if name not in params:
        raise WireFormatError(f"unknown catalog function {name!r}; known: {', '.join(CATALOG)}")
    if set(obj) - {"fn"} != params[name]:
        raise WireFormatError(f"{name} takes parameters {sorted(params[name])}")
    args = [obj[p] for p in sorted(params[name])]
    for x in args:
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise WireFormatError(f"{name} parameter must be a natural, got {x!r}")
    return {"head": head, "sum2": sum2, "const": const, "index": index}[name](*args)


@dataclass(frozen=True)
class ModulusBacked(NeighborhoodFn):
    """Neighbourhood function built from a function and its modulus:
    ``f(a*0^w) + 1`` once some prefix ``a'`` of ``a`` has ``|a'| >= g(a'*0^w)``."""

    f: PointwiseFn

    def __call__(self, a):
        a = tuple(a)
        for k in range(len(a) + 1):
            if k >= self.f.modulus(extend(a[:k], ZEROS)):
                return succ(self.f(extend(a, ZEROS)))
        return 0


@dataclass(frozen=True)
class Saturated(NeighborhoodFn):
    """``1 + (length of the shortest secured prefix)``, or 0 when none is secured."""

    inner: NeighborhoodFn

    def __call__(self, a):
        a = tuple(a)
        for k in range(len(a) + 1):
            if self.inner(a[:k]) > 0:
                return k + 1
        return 0

    def mentioned_indices(self, path):
        return self.inner.mentioned_indices(path)


@dataclass(frozen=True)
class CBarFn:
    """A function ``delta`` on finite sequences meant to stabilise along every stream."""

    delta: Callable[[FiniteSeq], int]
    name: str = ""

    def __call__(self, a: FiniteSeq) -> int:
        return self.delta(tuple(a))


def prefix_table(entries: Mapping[FiniteSeq, int], default: DefaultRule = DefaultRule()) -> CBarFn:
    """c-bar function answering the entry of the longest listed prefix, else ``default(|a|)``."""
    table = {tuple(k): natural(v) for k, v in entries.items()}

    def delta(a: FiniteSeq) -> int:
        for k in range(len(a), -1, -1):
            if a[:k] in table:
                return table[a[:k]]
        return default(len(a))

    return CBarFn(delta, "table")


@dataclass(frozen=True)
class CheckReport:
    """Outcome of :func:`check_k0` at a stated bound.

    ``barring`` is the lexicographically first path of full length with no
    secured prefix; ``constancy`` the first pair ``(a, b)`` with
    ``gamma(a) > 0`` and ``gamma(a*b) != gamma(a)``.
    """

    depth: int
    alphabet: int
    barring: Optional[FiniteSeq] = None
    constancy: Optional[tuple[FiniteSeq, FiniteSeq]] = None

    @property
    def passed(self) -> bool:
        return self.barring is None and self.constancy is None

    def to_wire(self) -> dict:
        return {
            "alphabet": self.alphabet,
            "barring": None if self.barring is None else list(self.barring),
            "constancy": None
            if self.constancy is None
            else {"a": list(self.constancy[0]), "b": list(self.constancy[1])},
            "depth": self.depth,
            "passed": self.passed,
        }


def check_k0(gamma: NeighborhoodFn, depth: int, alphabet: int) -> CheckReport:
    """Exhaustively test both K0 clauses on sequences of length <= ``depth``."""
    barring = None
    constancy = None

    def first_change(a: FiniteSeq, v: int):
        for c in sequences_upto(alphabet, depth - len(a)):
            if c and gamma(a + c) != v:
                return c
        return None

    # Preorder visits sequences in lexicographic order; below the first
    # secured prefix, constancy relative to it covers every deeper pair.
    def visit(a: FiniteSeq) -> bool:
        nonlocal barring, constancy
        v = gamma(a)
        if v > 0:
            if constancy is None:
                b = first_change(a, v)
                if b is not None:
                    constancy = (a, b)
        elif len(a) == depth:
            if barring is None:
                barring = a
        else:
            for i in range(alphabet):
                if visit(a + (i,)):
                    return True
        return barring is not None and constancy is not None

    visit(())
    return CheckReport(depth, alphabet, barring, constancy)


def induced(gamma: NeighborhoodFn, s: Stream, fuel: int) -> EvalResult:
    """``F_gamma(s)``: the value secured at the shortest secured prefix of ``s``."""
    for n in range(fuel + 1):
        v = gamma(s.take(n))
        if v > 0:
            return EvalResult(v - 1, n)
    raise FuelExhausted(s.take(fuel))


def modulus_from_k0(gamma: NeighborhoodFn, s: Stream, fuel: int) -> int:
    """Least ``n <= fuel`` such that ``gamma`` secures the first ``n`` values of ``s``."""
    return induced(gamma, s, fuel).consumed


def k0_from_modulus(f: PointwiseFn) -> ModulusBacked:
    return ModulusBacked(f)


def saturate(gamma: NeighborhoodFn) -> Saturated:
    return Saturated(gamma)


def delta_from_function(f: PointwiseFn) -> CBarFn:
    return CBarFn(lambda a: f(extend(a, ZEROS)), f"delta[{f.name}]")


def stable_on_extensions(delta: Callable[[FiniteSeq], int], a: FiniteSeq, alphabet: int, window: int) -> bool:
    """Whether ``delta(a + b) == delta(a)`` for all ``1 <= |b| <= window`` over the alphabet."""
    v = delta(a)
    return all(delta(a + b) == v for b in sequences_upto(alphabet, window) if b)


def eval_k1(
    delta: CBarFn,
    s: Stream,
    fuel: int,
    alphabet: int = 4,
    lookahead: int = 6,
) -> int:
    """``F_delta(s) = delta(s[:max D + 1])`` with ``D = {m | delta changes at m} | {1}``.

    The scan for ``D`` stops at ``fuel``. It is only trusted once some
    prefix ``s[:n]`` is certified stable: ``delta`` agrees with it on every
    extension over ``alphabet`` of length up to ``min(fuel - n, lookahead)``
    and on ``s`` itself up to ``fuel``. The answer holds at that bound.
    """
    prefix = s.take(fuel + 1)
    values = [delta(prefix[:m]) for m in range(fuel + 1)]
    for n in range(fuel):
        window = min(fuel - n, lookahead)
        if all(v == values[n] for v in values[n:]) and stable_on_extensions(delta, prefix[:n], alphabet, window):
            break
    else:
        raise FuelExhausted(prefix[:fuel])
    changes = {m for m in range(fuel) if values[m] != values[m + 1]} | {1}
    return delta(prefix[: max(changes) + 1])


def upgrade_dominated(t: Tree, gamma: NeighborhoodFn) -> Tree:
    """Tree for ``gamma``, given that ``gamma`` is positive wherever ``t`` is secured.

    Follows the shape of ``t``: wherever ``gamma`` is already positive the
    result is a leaf; at a node of ``t`` the listed children recurse and
    the default child recurses on a fresh index, after checking that every
    other index ``gamma`` singles out there yields the same subtree.
    """

    def go(s: Tree, path: FiniteSeq) -> Tree:
        v = gamma(path)
        if v > 0:
            return Leaf(v - 1)
        if isinstance(s, Leaf):
            raise DominationViolated(path)
        listed = {k for k, _ in s.children}
        kids = {k: go(c, path + (k,)) for k, c in s.children}
        others = gamma.mentioned_indices(path) - listed
        default = go(s.default, path + (fresh_index(listed | others),))
        for n in sorted(others):
            if go(s.default, path + (n,)) != default:
                raise NonUniformDefault(path)
        return Node(kids, default)

    return go(t, ())


def tree_of_saturation(t: Tree) -> Tree:
    """The saturation of ``t``'s neighbourhood function, as a tree."""
    return upgrade_dominated(t, saturate(TreeBacked(t)))


def table_to_wire(entries, default: DefaultRule) -> dict:
    return {"table": {path_key(k): v for k, v in entries}, "default": default.to_wire()}


def default_rule_from_wire(obj) -> DefaultRule:
    if not isinstance(obj, dict):
        raise WireFormatError(f"default rule must be an object, got {obj!r}")
    kind = obj.get("kind")
    fields = {"const": {"kind", "value"}, "affine": {"kind", "slope", "intercept"}}
    if kind not in fields or set(obj) != fields[kind]:
        raise WireFormatError(
            'default rule is {"kind": "const", "value": n} or {"kind": "affine", "slope": m, "intercept": c}'
        )
    for k in fields[kind] - {"kind"}:
        if isinstance(obj[k], bool) or not isinstance(obj[k], int) or obj[k] < 0:
            raise WireFormatError(f"default rule field {k} must be a natural")
    return DefaultRule(**obj)


def table_entries_from_wire(obj) -> tuple[dict[FiniteSeq, int], DefaultRule]:
    if not isinstance(obj, dict) or set(obj) != {"table", "default"} or not isinstance(obj["table"], dict):
        raise WireFormatError(f'a table is {{"table": {{...}}, "default": rule}}, got {obj!r}')
    entries = {}
    for key, v in obj["table"].items():
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise WireFormatError(f"table value must be a natural, got {v!r}")
        path = parse_path_key(key)
        if path in entries:
            raise WireFormatError(f"duplicate table key {key!r}")
        entries[path] = natural(v)
    return entries, default_rule_from_wire(obj["default"])


def table_from_wire(obj) -> TableBacked:
    entries, default = table_entries_from_wire(obj)
    return TableBacked(entries, default)


def cbar_from_wire(obj) -> CBarFn:
    """A c-bar function: a catalog function (through ``delta_from_function``) or a prefix table."""
    if isinstance(obj, dict) and "fn" in obj:
        return delta_from_function(pointwise_from_wire(obj))
    entries, default = table_entries_from_wire(obj)
    return prefix_table(entries, default)
