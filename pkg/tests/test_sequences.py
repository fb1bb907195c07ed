import pytest
from hypothesis import given, strategies as st

from brouwer.errors import NaturalOverflow, WireFormatError
from brouwer.sequences import (
    ZEROS,
    EventuallyPeriodic,
    Oracle,
    extend,
    is_prefix,
    monus,
    natural,
    seq_from_wire,
    sequences_upto,
    sg,
    stream_from_wire,
    take,
)

from conftest import finite_seqs, streams


def test_take_examples():
    assert take(EventuallyPeriodic((3, 1), (0,)), 4) == (3, 1, 0, 0)
    assert take(ZEROS, 0) == ()
    assert take(EventuallyPeriodic((), (2, 5)), 5) == (2, 5, 2, 5, 2)


def test_extend_examples():
    assert extend((7,), ZEROS) == EventuallyPeriodic((7,), (0,))
    s = EventuallyPeriodic((4,), (1, 2))
    assert extend((), s) is s
    assert take(extend((1, 2), EventuallyPeriodic((9,), (0,))), 4) == (1, 2, 9, 0)


def test_extend_oracle_stays_oracle():
    s = extend((5,), Oracle(lambda i: i))
    assert isinstance(s, Oracle)
    assert take(s, 4) == (5, 0, 1, 2)


@pytest.mark.parametrize("n, expected", [(0, 0), (1, 1), (17, 1)])
def test_sg(n, expected):
    assert sg(n) == expected


@pytest.mark.parametrize("x, y, expected", [(5, 2, 3), (2, 5, 0), (4, 4, 0)])
def test_monus(x, y, expected):
    assert monus(x, y) == expected


def test_natural_bounds():
    assert natural(2**63 - 1) == 2**63 - 1
    with pytest.raises(NaturalOverflow):
        natural(2**63)
    with pytest.raises(ValueError):
        natural(-1)
    with pytest.raises(TypeError):
        natural(True)


def test_period_must_be_nonempty():
    with pytest.raises(ValueError):
        EventuallyPeriodic((1,), ())


@given(st.lists(st.integers(0, 9), max_size=8).map(tuple), streams)
def test_take_of_extend_recovers_prefix(a, s):
    r = extend(a, s)
    assert take(r, len(a)) == a
    assert all(r[len(a) + i] == s[i] for i in range(10))


@given(streams, st.integers(0, 32))
def test_take_is_prefix_monotone(s, n):
    assert is_prefix(take(s, n), take(s, n + 1))


@given(finite_seqs, finite_seqs, finite_seqs)
def test_concatenation_is_a_monoid(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + () == a == () + a


@given(streams)
def test_periodic_agrees_with_equivalent_oracle(s):
    p, q = s.prefix, s.period
    o = Oracle(lambda i: p[i] if i < len(p) else q[(i - len(p)) % len(q)])
    assert take(o, 65) == take(s, 65)


def test_sequences_upto_is_lexicographic():
    got = list(sequences_upto(2, 2))
    assert got == [(), (0,), (0, 0), (0, 1), (1,), (1, 0), (1, 1)]
    assert got == sorted(got)


def test_wire_forms():
    s = stream_from_wire({"prefix": [3, 1], "period": [0]})
    assert s == EventuallyPeriodic((3, 1), (0,))
    assert s.to_wire() == {"prefix": [3, 1], "period": [0]}
    assert seq_from_wire([3, 1, 0]) == (3, 1, 0)
    for bad in ({"prefix": [1]}, {"prefix": [], "period": []}, {"prefix": [-1], "period": [0]}, [1.5]):
        with pytest.raises(WireFormatError):
            (stream_from_wire if isinstance(bad, dict) else seq_from_wire)(bad)
    with pytest.raises(WireFormatError):
        seq_from_wire([2**64])
