from __future__ import annotations

import random

import pytest
from hypothesis import settings, strategies as st

from brouwer.cantor import DetachablePredicate
from brouwer.sequences import EventuallyPeriodic, sequences
from brouwer.trees import Leaf, Node

settings.register_profile("default", deadline=None)
settings.load_profile("default")

T1 = Node({0: Leaf(7)}, Leaf(9))


@pytest.fixture
def t1():
    return T1


def random_tree(
    rng: random.Random, depth: int = 5, support: int = 4, keys: int = 5, leaf_max: int = 20, leaf_p: float = 0.05
):
    """Finite-support tree with depth <= ``depth``, at most ``support`` listed
    children per node, child indices below ``keys``, leaf values <= ``leaf_max``.

    ``leaf_p`` is the chance that the root itself is a leaf; below it the chance is 0.3.
    """
    if depth == 0 or rng.random() < leaf_p:
        return Leaf(rng.randint(0, leaf_max))
    idx = rng.sample(range(keys), rng.randint(0, min(support, keys)))
    kids = {k: random_tree(rng, depth - 1, support, keys, leaf_max, 0.3) for k in idx}
    return Node(kids, random_tree(rng, depth - 1, support, keys, leaf_max, 0.3))


def random_stream(rng: random.Random, alphabet: int = 5, max_prefix: int = 8, max_period: int = 3):
    prefix = tuple(rng.randrange(alphabet) for _ in range(rng.randint(0, max_prefix)))
    period = tuple(rng.randrange(alphabet) for _ in range(rng.randint(1, max_period)))
    return EventuallyPeriodic(prefix, period)


def random_predicate(rng: random.Random):
    """Random binary marks plus, four times in five, a length cutoff <= 10.

    Without the cutoff the predicate is usually not a bar."""
    marked = {a for n in range(1, 9) for a in sequences(2, n) if rng.random() < 0.12}
    horizon = rng.randint(0, 10) if rng.random() < 0.8 else None
    table = frozenset(marked)
    return DetachablePredicate(lambda a: a in table or (horizon is not None and len(a) >= horizon))


naturals = st.integers(min_value=0, max_value=6)
finite_seqs = st.lists(naturals, max_size=8).map(tuple)
streams = st.builds(
    EventuallyPeriodic,
    st.lists(naturals, max_size=6).map(tuple),
    st.lists(naturals, min_size=1, max_size=3).map(tuple),
)


@st.composite
def trees(draw, depth=4, keys=5, leaf_max=20):
    if depth == 0 or draw(st.booleans()):
        return Leaf(draw(st.integers(0, leaf_max)))
    idx = draw(st.sets(st.integers(0, keys - 1), max_size=4))
    kids = {k: draw(trees(depth - 1, keys, leaf_max)) for k in sorted(idx)}
    return Node(kids, draw(trees(depth - 1, keys, leaf_max)))
