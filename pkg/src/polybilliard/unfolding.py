"""Unfolding itineraries into corridors of reflected tables.

For symbols ``s_0 .. s_{n-1}`` the frames are ``F_0 = id`` and
``F_{i+1} = F_i o R_{s_i}`` with ``R_j`` the reflection in side ``j`` of the
table.  Gate ``i`` is ``F_i(side s_i)``, the wall shared by copies
``F_i(P)`` and ``F_{i+1}(P)``.  A billiard trajectory hitting ``s_0, s_1, ...``
becomes a straight line crossing the gates in order; the impact on ``s_i``
sits at ``F_i(x_i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .billiard import EPS_CORNER, PhasePoint, cast_ray, position
from .geometry import EPS_GEOM, Isometry2, Point2, angle_of, compose, dist
from .polygon import Polygon

EPS_GATE = 1e-9


class RepeatedSymbol(ValueError):
    pass


def side_reflections(P: Polygon) -> list[Isometry2]:
    """``R_1 .. R_k``; index 0 is unused."""
    return [Isometry2.identity()] + [Isometry2.reflection(*P.side(i)) for i in range(1, P.k + 1)]


@dataclass(frozen=True)
class Corridor:
    symbols: tuple[int, ...]
    frames: tuple[Isometry2, ...]  # n + 1 frames, the last is the terminal
    gates: tuple[tuple[Point2, Point2], ...]

    @property
    def terminal(self) -> Isometry2:
        return self.frames[-1]

    def copy(self, P: Polygon, i: int) -> list[Point2]:
        """Vertices of the i-th copy ``F_i(P)``."""
        F = self.frames[i]
        return [F(p) for p in P.vertices]


def unfold_code(P: Polygon, symbols: Sequence[int]) -> Corridor:
    sym = tuple(int(c) for c in symbols)
    if not sym:
        raise ValueError("cannot unfold an empty word")
    for a, b in zip(sym, sym[1:]):
        if a == b:
            raise RepeatedSymbol(f"consecutive symbols {a}, {b}")
    R = side_reflections(P)
    frames = [Isometry2.identity()]
    gates = []
    for c in sym:
        if not 1 <= c <= P.k:
            raise ValueError(f"no side {c}")
        F = frames[-1]
        a, b = P.side(c)
        gates.append((F(a), F(b)))
        frames.append(compose(F, R[c]))
    return Corridor(sym, tuple(frames), tuple(gates))


def unfolded_points(P: Polygon, orbit: Sequence[PhasePoint]) -> np.ndarray:
    """Impact points of an orbit carried into the unfolding."""
    R = side_reflections(P)
    F = Isometry2.identity()
    out = []
    for u in orbit:
        out.append(F(position(P, u)))
        F = compose(F, R[u.side])
    return np.array(out, dtype=float)


def straightness_check(P: Polygon, orbit: Sequence[PhasePoint]) -> float:
    """Largest distance of an unfolded impact point from the least-squares line."""
    pts = unfolded_points(P, orbit)
    if len(pts) < 3:
        return 0.0
    c = pts - pts.mean(axis=0)
    _, _, vt = np.linalg.svd(c, full_matrices=False)
    normal = vt[-1]
    return float(np.max(np.abs(c @ normal)))


# ---------------------------------------------------------------------------
# saddle connections


@dataclass(frozen=True, order=True)
class SaddleConnection:
    start: int
    end: int
    code: tuple[int, ...]
    direction: float  # launch angle at the start corner, radians
    length: float


def _ray_in_copy(P: Polygon, F: Isometry2, origin, d, enter: float):
    """First wall of copy ``F(P)`` hit by ``origin + lam d`` with ``lam > enter``."""
    Finv = F.inverse()
    o = Finv(origin)
    dl = Finv.linear(d)
    dn = math.hypot(d[0], d[1])
    return cast_ray(P, o, dl, skip=enter * dn + EPS_GEOM)


def _corner_of(P: Polygon, hit) -> Optional[int]:
    L = P.side_length(hit.side)
    if hit.mu * L < EPS_CORNER:
        return hit.side
    if (1.0 - hit.mu) * L < EPS_CORNER:
        return hit.side % P.k + 1
    return None


def _canonical_connection(start, end, code, d, frame) -> SaddleConnection:
    length = math.hypot(d[0], d[1])
    rcode = tuple(reversed(code))
    if end < start or (end == start and rcode < code):
        # the reversed trajectory leaves the far corner along -d, seen in the table's frame
        back_dir = frame.inverse().linear((-d[0], -d[1]))
        return SaddleConnection(end, start, rcode, angle_of(back_dir), length)
    return SaddleConnection(start, end, code, angle_of(d), length)


def find_saddle_connections(P: Polygon, max_depth: int) -> list[SaddleConnection]:
    """Corner-to-corner trajectories made of at most ``max_depth`` flights.

    From every corner, the wedge of launch directions is split at the
    directions of the vertices of the current copy; each piece either hits
    one wall (recurse into the reflected copy) or is bounded by a ray that
    ends in a corner (a saddle connection).
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    R = side_reflections(P)
    found: dict[tuple, SaddleConnection] = {}
    two_pi = 2 * math.pi

    for v in range(1, P.k + 1):
        V = P.vertex(v)
        out_dir = P.tangent(v)
        back = P.vertex(v - 1) - V
        lo = angle_of(out_dir)
        hi = lo + (angle_of(back) - lo) % two_pi
        # stack items: (frame, wedge lo, wedge hi, code, entering gate side)
        stack = [(Isometry2.identity(), lo, hi, (), None)]
        while stack:
            F, a0, a1, code, gate_side = stack.pop()

            def enter_time(d):
                if gate_side is None:
                    return 0.0
                ga, gb = F(P.vertex(gate_side)), F(P.vertex(gate_side + 1))
                e = (gb.x - ga.x, gb.y - ga.y)
                den = d[0] * e[1] - d[1] * e[0]
                w = (ga.x - V.x, ga.y - V.y)
                return (w[0] * e[1] - w[1] * e[0]) / den

            def probe(phi):
                d = (math.cos(phi), math.sin(phi))
                return d, _ray_in_copy(P, F, V, d, enter_time(d))

            verts = [F(p) for p in P.vertices]
            cuts = set()
            for W in verts:
                if dist(W, V) <= EPS_GEOM:
                    continue
                phi = a0 + (angle_of(W - V) - a0) % two_pi
                if a0 + 1e-12 < phi < a1 - 1e-12:
                    cuts.add(phi)
            cuts = sorted(cuts)
            marks = [a0] + cuts + [a1]

            # classify the cut rays: corner (maybe a connection) or wall interior
            cut_side = {}
            for phi in cuts:
                d, hit = probe(phi)
                if hit is None:
                    continue
                w = _corner_of(P, hit)
                if w is None:
                    cut_side[phi] = hit.side
                    continue
                end_pt = F(P.vertex(w))
                dd = (end_pt.x - V.x, end_pt.y - V.y)
                sc = _canonical_connection(v, w, code, dd, F)
                found.setdefault((sc.start, sc.end, sc.code), sc)

            if len(code) + 1 >= max_depth:
                continue
            # open pieces between cuts; merge across cuts that hit the same wall
            pieces = []
            for lo_, hi_ in zip(marks, marks[1:]):
                if hi_ - lo_ <= 1e-12:
                    continue
                _, hit = probe(0.5 * (lo_ + hi_))
                if hit is None or _corner_of(P, hit) is not None:
                    continue
                if pieces and pieces[-1][1] == lo_ and cut_side.get(lo_) == hit.side == pieces[-1][2]:
                    pieces[-1][1] = hi_
                else:
                    pieces.append([lo_, hi_, hit.side])
            for lo_, hi_, side in pieces:
                stack.append((compose(F, R[side]), lo_, hi_, code + (side,), side))

    return sorted(found.values())
