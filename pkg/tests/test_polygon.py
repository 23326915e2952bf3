import math
import random
from fractions import Fraction

import pytest

from polybilliard.polygon import (
    DegenerateVertex,
    NonClosing,
    NotRational,
    SelfIntersecting,
    StraightAngle,
    dihedral_orbit,
    equilateral_triangle,
    from_exact_angles,
    l_table,
    rationality,
    right_isosceles_triangle,
    unit_square,
    validate_polygon,
)

L_VERTICES = [(0, 0), (5, 0), (5, 1), (3, 1), (3, 3), (0, 3)]


def test_unit_square_is_valid():
    P = validate_polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert P.k == 4
    assert all(math.isclose(a, math.pi / 2) for a in P.interior_angles())


def test_collinear_triple_is_a_straight_angle():
    with pytest.raises(StraightAngle, match=r"\(1\.0, 0\.0\)"):
        validate_polygon([(0, 0), (1, 0), (2, 0), (1, 1)])


def test_l_shape_has_one_reflex_corner():
    P = validate_polygon(L_VERTICES)
    angles = P.interior_angles()
    reflex = [i for i, a in enumerate(angles) if a > math.pi]
    assert reflex == [3]
    assert tuple(P.vertices[3]) == (3, 1)
    assert math.isclose(angles[3], 1.5 * math.pi)


def test_rejects_crossing_sides_and_repeats():
    with pytest.raises(SelfIntersecting):
        validate_polygon([(0, 0), (4, 0), (4, 2), (1, -1), (0, 2)])
    with pytest.raises(DegenerateVertex):
        validate_polygon([(0, 0), (0, 0), (1, 0), (0, 1)])
    with pytest.raises(DegenerateVertex):
        validate_polygon([(0, 0), (1, 0)])


def test_clockwise_input_is_reversed_with_labels():
    cw = validate_polygon([(0, 0), (0, 1), (1, 1), (1, 0)], labels=["l", "t", "r", "b"])
    assert cw.was_clockwise
    assert cw.area() > 0
    # each label still names the same segment
    for lab, seg in [("l", {(0, 0), (0, 1)}), ("t", {(0, 1), (1, 1)}),
                     ("r", {(1, 1), (1, 0)}), ("b", {(1, 0), (0, 0)})]:
        a, b = cw.side(cw.index(lab))
        assert {tuple(a), tuple(b)} == seg


def test_exact_angle_construction():
    sq = from_exact_angles([Fraction(1, 2)] * 4, [1, 1, 1, 1])
    assert [tuple(p) for p in sq.vertices] == [(0, 0), (1, 0), (1, 1), (0, 1)]
    tri = equilateral_triangle()
    assert rationality(tri).N == 3
    assert all(math.isclose(tri.side_length(i), 1) for i in (1, 2, 3))


def test_exact_l_shape_reproduces_vertex_list():
    P = from_exact_angles([Fraction(1, 2)] * 3 + [Fraction(3, 2)] + [Fraction(1, 2)] * 2,
                          [5, 1, 2, 2, 3, 3])
    assert [tuple(p) for p in P.vertices] == L_VERTICES


def test_exact_angles_must_close():
    with pytest.raises(NonClosing):
        from_exact_angles([Fraction(1, 2)] * 4, [1, 2, 1, 1])
    with pytest.raises(NonClosing):
        from_exact_angles([Fraction(1, 3)] * 4, [1, 1, 1, 1])


def test_rationality_examples():
    info = rationality(unit_square())
    assert info.is_rational and info.N == 2 and set(info.fractions) == {Fraction(1, 2)}
    assert rationality(right_isosceles_triangle()).N == 4
    raw = validate_polygon(unit_square().vertices)
    assert rationality(raw).N == 2 and rationality(raw).recognized
    one_radian = validate_polygon([(0, 0), (2, 0), (math.cos(1), math.sin(1))])
    assert rationality(one_radian).kind == "undetermined"
    assert rationality(l_table()).N == 2


def test_dihedral_orbit_examples():
    info = rationality(unit_square())
    orbit = dihedral_orbit(math.pi / 4, info)
    assert len(orbit) == 4
    assert all(any(math.isclose(a, b) for b in orbit)
               for a in (math.pi / 4, 3 * math.pi / 4, 5 * math.pi / 4, 7 * math.pi / 4))
    assert len(dihedral_orbit(0.0, info)) == 2
    assert len(dihedral_orbit(0.123, rationality(right_isosceles_triangle()))) == 8


def test_dihedral_orbit_needs_rational():
    P = validate_polygon([(0, 0), (2, 0), (math.cos(1), math.sin(1))])
    with pytest.raises(NotRational):
        dihedral_orbit(0.3, rationality(P))


@pytest.mark.parametrize("make", [unit_square, equilateral_triangle, right_isosceles_triangle,
                                  l_table])
def test_dihedral_orbit_size_divides_2n_and_is_closed(make):
    info = rationality(make())
    rng = random.Random(11)
    two_pi = 2 * math.pi
    for _ in range(100):
        theta = rng.uniform(0, two_pi)
        orbit = dihedral_orbit(theta, info)
        assert (2 * info.N) % len(orbit) == 0
        # generators: rotation by 2 pi / N and reflection in the side-1 axis
        for img in ((a + two_pi / info.N) for a in orbit):
            assert min(abs((img - b + math.pi) % two_pi - math.pi) for b in orbit) < 1e-9
        for img in ((2 * info.axis - a) for a in orbit):
            assert min(abs((img - b + math.pi) % two_pi - math.pi) for b in orbit) < 1e-9


def test_polygon_helpers():
    P = l_table()
    assert P.index("l") == 6 and P.index(2) == 2 and P.index("3") == 3
    assert P.parse_word("l,r,t") == (6, 2, 3)
    assert P.format_word((6, 2, 3)) == "l,r,t"
    assert math.isclose(P.area(), 5 + 6)
    assert P.contains((1, 1)) and not P.contains((4, 2)) and not P.contains((0, 1))
    shifted = P.relabeled(2)
    assert shifted.side(1) == P.side(3) and shifted.label(1) == "t"
