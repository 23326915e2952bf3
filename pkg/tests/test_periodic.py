import math

import pytest

from polybilliard.billiard import is_periodic, iterate, rho_distance
from polybilliard.codes import validate_code
from polybilliard.compare import relabel_word
from polybilliard.periodic import (
    BudgetExceeded,
    NoFamily,
    direction_scan_oracle,
    enumerate_spectrum,
    oracle_spectrum,
    parse_spectrum,
    realize_code,
    verify_t1_doubling,
)
from polybilliard.polygon import (
    equilateral_triangle,
    l_table,
    rectangle,
    right_isosceles_triangle,
    unit_square,
)

SQ = unit_square()
TABLES = [unit_square, l_table, equilateral_triangle, right_isosceles_triangle]


def test_square_vertical_family():
    fam = realize_code(SQ, (1, 3))
    assert fam
    assert fam.interval == (0.0, 1.0)
    assert math.isclose(fam.length, 2) and abs(fam.direction.x) < 1e-12
    assert fam.theta == 0.0


def test_square_perpendicular_sides_do_not_close():
    res = realize_code(SQ, (1, 2))
    assert not res and res.reason == "NotTranslation"


def test_l_table_example_family():
    P = l_table()
    fam = realize_code(P, P.parse_word("l,r,t,l,r,b"))
    assert fam and fam.width > 0
    assert fam.base_side == P.index("l")


def test_small_square_spectra():
    assert enumerate_spectrum(SQ, 2).codes == {(1, 3), (2, 4)}
    s4 = enumerate_spectrum(SQ, 4)
    assert (1, 2, 3, 4) in s4 and (1, 4, 3, 2) in s4
    for w in s4.codes:
        validate_code(w, 4)


def test_doubled_fagnano_in_triangle_spectrum():
    assert (1, 2, 3, 1, 2, 3) in enumerate_spectrum(equilateral_triangle(), 6)


def test_oracle_examples():
    words = dict(direction_scan_oracle(SQ, math.pi / 2, grid=50))
    assert (1, 3) in words
    assert words[(1, 3)].side == 1
    assert (1, 2, 3, 4) in dict(direction_scan_oracle(SQ, math.pi / 4, grid=50))
    assert direction_scan_oracle(SQ, math.atan(math.sqrt(2)), grid=50, tol=1e-6) == []


@pytest.mark.parametrize("make", [equilateral_triangle, lambda: rectangle(2, 1)])
def test_enumeration_agrees_with_oracle(make):
    P = make()
    assert enumerate_spectrum(P, 6).codes == oracle_spectrum(P, 6, directions=720, grid=100)


@pytest.mark.parametrize("make", TABLES)
def test_families_close_up(make):
    P = make()
    spec = enumerate_spectrum(P, 8)
    assert len(spec) > 0
    for w, fam in spec.families.items():
        validate_code(w, P.k)
        n = len(w)
        lo, hi = fam.interval
        # off-centre: the middle of a doubled odd family has half the period
        for s in (lo + f * (hi - lo) for f in (0.1, 0.3, 0.45, 0.6, 0.85)):
            u = fam.phase_point(s)
            orbit = iterate(P, u, n)
            assert orbit.itinerary.symbols[:n] == fam.word
            assert rho_distance(P, orbit.points[-1], u) < 1e-7
            assert is_periodic(P, u, n).period == n


@pytest.mark.parametrize("make", TABLES)
def test_spectrum_is_similarity_invariant(make):
    P = make()
    base = enumerate_spectrum(P, 8).codes
    c, s = math.cos(1.1), math.sin(1.1)
    Q = P.mapped(lambda p: (0.4 * (c * p[0] - s * p[1]) - 7, 0.4 * (s * p[0] + c * p[1]) + 2))
    assert enumerate_spectrum(Q, 8).codes == base
    for off in range(1, P.k):
        shifted = enumerate_spectrum(P.relabeled(off), 8).codes
        assert {relabel_word(w, -off, P.k) for w in shifted} == base


def test_serialisation_round_trip():
    P = l_table()
    spec = enumerate_spectrum(P, 8)
    text = spec.serialize()
    assert text.splitlines() == sorted(text.splitlines())
    assert parse_spectrum(text, P) == spec.codes
    line = next(l for l in text.splitlines() if l.endswith("b,l,r,t,l,r"))
    assert line.startswith("length=6 dir=")


def test_budget_exhaustion_keeps_partial_result():
    with pytest.raises(BudgetExceeded) as info:
        enumerate_spectrum(l_table(), 8, budget=50)
    partial = info.value.partial
    assert partial.partial
    assert partial.serialize().startswith("# PARTIAL")


def test_odd_length_bounds():
    with pytest.raises(ValueError):
        enumerate_spectrum(SQ, 5)


def test_fagnano_doubling():
    rep = verify_t1_doubling(equilateral_triangle(), (1, 2, 3))
    assert rep.confirmed
    assert abs(rep.center_s - 0.5) < 1e-6


def test_square_has_no_period_three_family():
    with pytest.raises(NoFamily):
        verify_t1_doubling(SQ, (1, 2, 3))


def test_right_isosceles_period_three_word():
    # a right triangle has no periodic orbit of period three
    with pytest.raises(NoFamily):
        verify_t1_doubling(right_isosceles_triangle(), (1, 2, 3))
    codes = oracle_spectrum(right_isosceles_triangle(), 6, directions=360, grid=60)
    assert (1, 2, 3, 1, 2, 3) not in codes
