import math

import numpy as np
import pytest

from polybilliard.billiard import PhasePoint, iterate
from polybilliard.codes import combinatorial_order_equal
from polybilliard.compare import (
    InsufficientMatches,
    SideCountMismatch,
    best_labeling,
    code_equivalence_probe,
    compare_spectra,
    similarity_recover,
)
from polybilliard.periodic import enumerate_spectrum, realize_word
from polybilliard.polygon import (
    l_table,
    rectangle,
    right_isosceles_triangle,
    unit_square,
    validate_polygon,
)

SQ = unit_square()


def similar_copy(P, scale, angle, shift):
    c, s = math.cos(angle), math.sin(angle)
    return P.mapped(lambda p: (scale * (c * p[0] - s * p[1]) + shift[0],
                               scale * (s * p[0] + c * p[1]) + shift[1]))


def regular_pentagon():
    return validate_polygon([(math.cos(2 * math.pi * j / 5), math.sin(2 * math.pi * j / 5))
                             for j in range(5)])


def test_scaled_rotated_square():
    Q = similar_copy(SQ, 3, math.radians(30), (1, -2))
    rep = compare_spectra(SQ, Q, 6)
    assert rep.verdict == "equal_to_depth"
    assert rep.similarity.kind == "similar"
    assert abs(rep.similarity.scale - 3) < 1e-6
    assert abs(rep.similarity.rotation - math.radians(30)) < 1e-9
    for p, q in zip(SQ.vertices, Q.vertices):
        assert math.dist(rep.similarity(p), q) < 1e-9


def test_square_and_rectangle_are_affinely_similar():
    rep = compare_spectra(SQ, rectangle(2, 1), 6)
    assert rep.verdict == "equal_to_depth"
    assert rep.similarity.kind == "affinely_similar"
    assert rep.N_P == rep.N_Q == 2


def test_side_count_mismatch():
    with pytest.raises(SideCountMismatch):
        compare_spectra(SQ, right_isosceles_triangle(), 4)
    with pytest.raises(SideCountMismatch):
        best_labeling(SQ, right_isosceles_triangle(), 4)


def test_best_labeling_finds_the_shift():
    P = l_table()
    offset, rep = best_labeling(P, P.relabeled(-2), 8)
    assert offset == 2 and rep.equal and rep.equal_offsets == [2]
    offset, rep = best_labeling(P, P, 8)
    assert offset == 0 and rep.equal
    # the square's symmetries make every identification work
    assert best_labeling(SQ, SQ, 6)[1].equal_offsets == [0, 1, 2, 3]


def test_generic_pentagon_differs_from_regular():
    generic = validate_polygon([(0, 0), (2.1, 0.2), (2.6, 1.5), (1.1, 2.4), (-0.4, 1.3)])
    offset, rep = best_labeling(regular_pentagon(), generic, 6)
    assert rep.verdict == "differ" and rep.witnesses
    assert 0 <= offset < 5


def test_similarity_recover_scale():
    P = l_table()
    Q = similar_copy(P, 3, 0.7, (4, 4))
    sp, sq = enumerate_spectrum(P, 6), enumerate_spectrum(Q, 6)
    matched = [(sp.families[w], sq.families[w]) for w in sp.codes]
    sim = similarity_recover(P, Q, matched)
    assert abs(sim.scale - 3) < 1e-6 and sim.residual < 1e-6
    with pytest.raises(InsufficientMatches):
        similarity_recover(P, Q, matched[:1])


def test_mirror_image_needs_a_reflected_labeling():
    P = l_table()
    Q = validate_polygon([(-p.x, p.y) for p in P.vertices])
    # cyclic identifications keep the orientation, so they cannot match a mirror image
    assert not best_labeling(P, Q, 6)[1].equal
    # matching each side with its mirror image recovers the reflection
    mirror = {}
    for i in range(1, P.k + 1):
        a, b = P.side(i)
        seg = {(-a.x, a.y), (-b.x, b.y)}
        mirror[i] = next(j for j in range(1, Q.k + 1) if {tuple(q) for q in Q.side(j)} == seg)
    pairs = []
    for w, fam in enumerate_spectrum(P, 6).families.items():
        other = realize_word(Q, tuple(mirror[c] for c in w))
        assert other
        pairs.append((fam, other))
    sim = similarity_recover(P, Q, pairs)
    assert sim.reflected and sim.kind == "similar"
    assert np.allclose(sim.matrix, np.diag([-1.0, 1.0]))


def test_equivalence_axioms_on_similar_copies():
    P = l_table()
    Q = similar_copy(P, 2.5, 0.3, (1, 1))
    R = similar_copy(Q, 0.2, -1.2, (-3, 5))
    pp = compare_spectra(P, P, 6)
    assert pp.equal and np.allclose(pp.similarity.matrix, np.eye(2))
    pq, qp = compare_spectra(P, Q, 6), compare_spectra(Q, P, 6)
    assert pq.equal and qp.equal
    assert np.allclose(pq.similarity.inverse().matrix, qp.similarity.matrix)
    assert np.allclose(pq.similarity.inverse().offset, qp.similarity.offset)
    qr, pr = compare_spectra(Q, R, 6), compare_spectra(P, R, 6)
    assert qr.equal and pr.equal
    assert np.allclose(qr.similarity.matrix @ pq.similarity.matrix, pr.similarity.matrix)


def test_rigidity_on_a_small_family():
    quad = validate_polygon([(0, 0), (3, 0), (3.3, 0.7), (3 * math.cos(0.3), 3 * math.sin(0.3))])
    tables = {"square": SQ, "rect": rectangle(2, 1), "rect3": rectangle(1, 3), "quad": quad}
    related = {frozenset(p) for p in [("square", "rect"), ("square", "rect3"), ("rect", "rect3")]}
    names = sorted(tables)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            rep = compare_spectra(tables[a], tables[b], 8)
            assert rep.equal == (frozenset((a, b)) in related), (a, b)


def test_code_probe_examples():
    u = PhasePoint(1, 0.37, 0.0)
    assert code_equivalence_probe(SQ, SQ, u, u, 50)
    assert code_equivalence_probe(SQ, rectangle(2, 1), u, PhasePoint(1, 0.37, 0.0), 300)
    diag = PhasePoint(1, 0.5, math.pi / 4)
    assert not code_equivalence_probe(SQ, SQ, PhasePoint(1, 0.5, 0.0), diag, 2)


def test_affine_image_orbit_has_same_order_and_code():
    # direction (a, 1) in the square becomes (2a, 1) in the 2 x 1 rectangle
    a = 0.3718
    u = PhasePoint(1, 0.41, math.atan(a))
    v = PhasePoint(1, 0.41, math.atan(2 * a))
    R = rectangle(2, 1)
    assert code_equivalence_probe(SQ, R, u, v, 200)
    xs = [(p.side, p.s) for p in iterate(SQ, u, 200).points]
    ys = [(p.side, p.s) for p in iterate(R, v, 200).points]
    assert combinatorial_order_equal(xs, ys, 200, 4, 4, eps=1e-7)


def test_report_text():
    text = compare_spectra(SQ, rectangle(2, 1), 4).serialize()
    lines = text.splitlines()
    assert lines[0] == "verdict: equal_to_depth (depth 4, offset 0)"
    assert "similarity: affinely_similar" in lines
    linear = next(l for l in lines if l.startswith("linear:")).split()[1:]
    assert math.isclose(float(linear[0]), 2, rel_tol=1e-11)
    quad = validate_polygon([(0, 0), (3, 0), (3.3, 0.7), (3 * math.cos(0.3), 3 * math.sin(0.3))])
    text = compare_spectra(SQ, quad, 4).serialize()
    assert "verdict: differ" in text and "witness P only: 1,3" in text
