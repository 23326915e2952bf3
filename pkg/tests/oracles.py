"""Independent reference computations used by the tests."""

from __future__ import annotations

import itertools
import math

from polybilliard.billiard import cast_ray
from polybilliard.geometry import Isometry2, compose
from polybilliard.unfolding import side_reflections


def words(k: int, max_len: int):
    """All words over 1..k of length <= max_len with no equal neighbours."""
    yield ()
    for n in range(1, max_len + 1):
        for w in itertools.product(range(1, k + 1), repeat=n):
            if all(a != b for a, b in zip(w, w[1:])):
                yield w


def _strictly_inside_wedge(P, v, d) -> bool:
    V = P.vertex(v)
    out = P.tangent(v)
    back = P.vertex(v - 1) - V
    a0 = math.atan2(out.y, out.x)
    span = (math.atan2(back.y, back.x) - a0) % (2 * math.pi)
    phi = (math.atan2(d[1], d[0]) - a0) % (2 * math.pi)
    return 1e-9 < phi < span - 1e-9


def trace_corner_shot(P, v, d, code, tol=1e-7):
    """Fly from corner v along d, bouncing by the reflection law.

    Returns the corner reached right after the bounces in ``code``, or None.
    """
    x = P.vertex(v)
    d = (d[0], d[1])
    for c in code + (None,):
        hit = cast_ray(P, x, d)
        if hit is None:
            return None
        L = P.side_length(hit.side)
        at_start, at_end = hit.mu * L < tol, (1 - hit.mu) * L < tol
        if c is None:
            if at_start:
                return hit.side
            if at_end:
                return hit.side % P.k + 1
            return None
        if at_start or at_end or hit.side != c:
            return None
        n = P.inward_normal(c)
        dn = d[0] * n.x + d[1] * n.y
        d = (d[0] - 2 * dn * n.x, d[1] - 2 * dn * n.y)
        x = hit.point
    return None


def brute_saddle_connections(P, max_depth: int) -> dict:
    """{(start, end, code): length} over every word, checked by direct flight."""
    R = side_reflections(P)
    found = {}
    for w in words(P.k, max_depth - 1):
        F = Isometry2.identity()
        for c in w:
            F = compose(F, R[c])
        for v in range(1, P.k + 1):
            V = P.vertex(v)
            for e in range(1, P.k + 1):
                E = F(P.vertex(e))
                d = (E.x - V.x, E.y - V.y)
                if math.hypot(*d) < 1e-9 or not _strictly_inside_wedge(P, v, d):
                    continue
                if trace_corner_shot(P, v, d, w) != e:
                    continue
                key = (v, e, w)
                rw = tuple(reversed(w))
                if e < v or (e == v and rw < w):
                    key = (e, v, rw)
                found[key] = math.hypot(*d)
    return found
