import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polybilliard.codes import (
    AdjacentRepeat,
    BadSymbol,
    LengthMismatch,
    OddLength,
    canonical,
    canonical_rotation,
    codes_equivalent,
    combinatorial_order_equal,
    is_spectrum_word,
    itinerary_to_code,
    primitive_root,
    rotations,
    validate_code,
)

words = st.lists(st.integers(1, 5), min_size=1, max_size=12)


def test_validate_examples():
    assert validate_code((1, 3), 4).word == (1, 3)
    with pytest.raises(OddLength):
        validate_code((1, 2, 1), 4)
    with pytest.raises(AdjacentRepeat):
        validate_code((1, 2, 2, 3), 4)
    with pytest.raises(AdjacentRepeat):
        validate_code((1, 2, 3, 1), 4)
    with pytest.raises(BadSymbol):
        validate_code((1, 5), 4)


def test_canonical_rotation_examples():
    assert canonical_rotation((3, 1)) == (1, (1, 3))
    assert canonical_rotation((2, 1, 2, 1)) == (1, (1, 2, 1, 2))
    assert canonical((1, 3, 1, 2)) == (1, 2, 1, 3)


def test_equivalence_examples():
    assert codes_equivalent((1, 3), (3, 1))
    assert not codes_equivalent((1, 3), (1, 3, 1, 3))
    assert not codes_equivalent((1, 2, 3, 4), (1, 4, 3, 2))


def test_itinerary_to_code_examples():
    assert itinerary_to_code((1, 3)).word == (1, 3)
    assert itinerary_to_code((1, 2, 3)).word == (1, 2, 3, 1, 2, 3)
    assert itinerary_to_code((3, 4, 1, 2)).word == (1, 2, 3, 4)
    with pytest.raises(AdjacentRepeat):
        itinerary_to_code((1, 2, 1))


@given(words)
def test_canonical_is_least_rotation(w):
    r, c = canonical_rotation(w)
    assert c == min(rotations(w))
    assert tuple(w[r:] + w[:r]) == c
    # least index among ties
    assert all(tuple(w[j:] + w[:j]) != c for j in range(r))


def test_primitive_roots_and_spectrum_words():
    assert primitive_root((1, 2, 1, 2)) == (1, 2)
    assert primitive_root((1, 2, 3)) == (1, 2, 3)
    assert is_spectrum_word((1, 2, 3, 1, 2, 3))
    assert not is_spectrum_word((1, 3, 1, 3))
    assert is_spectrum_word((1, 2, 3, 4))


def test_combinatorial_order_examples():
    xs = [(1, 0.2), (2, 0.5), (3, 0.1), (4, 0.9), (1, 0.7)]
    assert combinatorial_order_equal(xs, xs, 10)
    # a scaled copy carries the same boundary parameters
    assert combinatorial_order_equal(xs, list(xs), 5, 4, 4)
    abc = [(1, 0.1), (2, 0.1), (3, 0.1)]
    acb = [(1, 0.1), (3, 0.1), (2, 0.1)]
    assert not combinatorial_order_equal(abc, acb, 3, 4, 4)
    with pytest.raises(LengthMismatch):
        combinatorial_order_equal(abc, abc[:2], 3)


def test_combinatorial_order_under_monotone_reparametrisation():
    rng = random.Random(2)
    xs = [(rng.randint(1, 4), rng.uniform(0.01, 0.99)) for _ in range(40)]
    # an increasing map of each side onto itself keeps the cyclic order
    ys = [(side, s ** 2) for side, s in xs]
    assert combinatorial_order_equal(xs, ys, 40, 4, 4)
    zs = [(side, 1 - s) for side, s in xs]
    assert not combinatorial_order_equal(xs, zs, 40, 4, 4)
