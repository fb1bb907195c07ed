"""Finite sequences, streams, and the small arithmetic every module shares.

A finite sequence is a plain ``tuple`` of naturals. Streams come in two
forms: an ``EventuallyPeriodic`` value, which is serializable, and an
in-memory ``Oracle`` wrapping a pure rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import NaturalOverflow, WireFormatError

FiniteSeq = tuple[int, ...]

#: Naturals are machine-width; anything at or above this is an overflow.
NAT_LIMIT = 2**63


def natural(n: int) -> int:
    """Validate ``n`` as a machine-width natural number."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected a natural number, got {n!r}")
    if n < 0:
        raise ValueError(f"expected a natural number, got {n}")
    if n >= NAT_LIMIT:
        raise NaturalOverflow(f"{n} does not fit a machine-width natural")
    return n


def succ(n: int) -> int:
    return natural(n + 1)


def sg(n: int) -> int:
    """Sign of a natural: 0 for 0, else 1."""
    return min(1, n)


def monus(x: int, y: int) -> int:
    """Truncated subtraction."""
    return max(x - y, 0)


def is_prefix(a: Sequence[int], b: Sequence[int]) -> bool:
    return len(a) <= len(b) and tuple(b[: len(a)]) == tuple(a)


def sequences(alphabet: int, length: int) -> Iterator[FiniteSeq]:
    """All sequences of exactly ``length`` over ``{0..alphabet-1}``, lexicographically."""
    return itertools.product(range(alphabet), repeat=length)


def sequences_upto(alphabet: int, depth: int) -> Iterator[FiniteSeq]:
    """All sequences of length at most ``depth``, in lexicographic (preorder) order."""

    def walk(a: FiniteSeq) -> Iterator[FiniteSeq]:
        yield a
        if len(a) < depth:
            for i in range(alphabet):
                yield from walk(a + (i,))

    return walk(())


class Stream:
    """An infinite sequence of naturals, read by index."""

    def __getitem__(self, i: int) -> int:
        raise NotImplementedError

    def take(self, n: int) -> FiniteSeq:
        return tuple(self[i] for i in range(n))


@dataclass(frozen=True)
class Oracle(Stream):
    """A stream given by a pure rule ``index -> natural``. In-memory only."""

    rule: Callable[[int], int]

    def __getitem__(self, i: int) -> int:
        return self.rule(i)


@dataclass(frozen=True)
class EventuallyPeriodic(Stream):
    """``prefix`` followed by ``period`` repeated forever."""

    prefix: FiniteSeq
    period: FiniteSeq

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(natural(x) for x in self.prefix))
        object.__setattr__(self, "period", tuple(natural(x) for x in self.period))
        if not self.period:
            raise ValueError("period must be nonempty")

    def __getitem__(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def to_wire(self) -> dict:
        return {"prefix": list(self.prefix), "period": list(self.period)}


ZEROS = EventuallyPeriodic((), (0,))


def take(s: Stream, n: int) -> FiniteSeq:
    """The initial segment of ``s`` of length ``n``."""
    return s.take(n)


def extend(a: Sequence[int], s: Stream) -> Stream:
    """The stream reading ``a`` first and continuing as ``s``."""
    a = tuple(a)
    if not a:
        return s
    if isinstance(s, EventuallyPeriodic):
        return EventuallyPeriodic(a + s.prefix, s.period)
    n = len(a)
    return Oracle(lambda i: a[i] if i < n else s[i - n])


def seq_from_wire(obj) -> FiniteSeq:
    if not isinstance(obj, list):
        raise WireFormatError(f"expected a list of naturals, got {obj!r}")
    try:
        return tuple(natural(x) for x in obj)
    except (TypeError, ValueError, NaturalOverflow) as exc:
        raise WireFormatError(str(exc)) from exc


def path_key(a: Iterable[int]) -> str:
    """Wire key of a finite sequence: comma-joined decimals, ``""`` for the empty one."""
    return ",".join(str(x) for x in a)


def parse_path_key(key: str) -> FiniteSeq:
    if key == "":
        return ()
    parts = key.split(",")
    if not all(p.isdigit() and str(int(p)) == p for p in parts):
        raise WireFormatError(f"table key must be comma-joined decimals, got {key!r}")
    return tuple(natural(int(p)) for p in parts)


def stream_from_wire(obj) -> EventuallyPeriodic:
    if not isinstance(obj, dict) or set(obj) != {"prefix", "period"}:
        raise WireFormatError(f'a stream is {{"prefix": [...], "period": [...]}}, got {obj!r}')
    prefix = seq_from_wire(obj["prefix"])
    period = seq_from_wire(obj["period"])
    if not period:
        raise WireFormatError("stream period must be nonempty")
    return EventuallyPeriodic(prefix, period)
