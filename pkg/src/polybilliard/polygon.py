"""Billiard tables: validated simple polygons with labelled sides.

Vertices are stored counterclockwise, ``p_1 .. p_k``; side ``i`` is
``[p_i, p_{i+1}]`` (indices mod k) and sides are numbered from 1.  Interior
angles may carry exact tags ``m/n`` meaning ``pi * m / n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .geometry import EPS_GEOM, Point2, cross, dist, segments_cross

# continued-fraction recognition of angle/pi
RECOGNITION_MAX_DENOMINATOR = 64
RECOGNITION_RESIDUAL = 1e-9


class InvalidPolygon(ValueError):
    """Base class of all polygon validation errors."""


class SelfIntersecting(InvalidPolygon):
    pass


class StraightAngle(InvalidPolygon):
    pass


class DegenerateVertex(InvalidPolygon):
    pass


class NonClosing(InvalidPolygon):
    pass


class NotRational(ValueError):
    pass


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[Point2, ...]
    labels: tuple[str, ...]
    angle_fractions: Optional[tuple[Fraction, ...]] = None
    was_clockwise: bool = False
    name: str = ""

    @property
    def k(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Point2:
        """Vertex ``p_i`` (1-based, cyclic)."""
        return self.vertices[(i - 1) % self.k]

    def side(self, i: int) -> tuple[Point2, Point2]:
        return self.vertex(i), self.vertex(i + 1)

    def side_vector(self, i: int) -> Point2:
        a, b = self.side(i)
        return Point2(b.x - a.x, b.y - a.y)

    def side_length(self, i: int) -> float:
        return self.side_vector(i).norm()

    def tangent(self, i: int) -> Point2:
        """Unit vector along side ``i`` in boundary (counterclockwise) order."""
        v = self.side_vector(i)
        n = v.norm()
        return Point2(v.x / n, v.y / n)

    def inward_normal(self, i: int) -> Point2:
        t = self.tangent(i)
        return Point2(-t.y, t.x)

    def point_on_side(self, i: int, s: float) -> Point2:
        a, b = self.side(i)
        return Point2(a.x + s * (b.x - a.x), a.y + s * (b.y - a.y))

    @property
    def sides(self) -> list[tuple[Point2, Point2]]:
        return [self.side(i) for i in range(1, self.k + 1)]

    def interior_angles(self) -> list[float]:
        """Interior angle (radians) at each vertex ``p_1 .. p_k``."""
        return [_interior_angle(self.vertex(i - 1), self.vertex(i), self.vertex(i + 1))
                for i in range(1, self.k + 1)]

    def label(self, i: int) -> str:
        return self.labels[(i - 1) % self.k]

    def index(self, label) -> int:
        """Side index for a label (or an index given as int / numeric string)."""
        if isinstance(label, int):
            if not 1 <= label <= self.k:
                raise KeyError(f"side index out of range: {label}")
            return label
        label = str(label).strip()
        if label in self.labels:
            return self.labels.index(label) + 1
        if label.isdigit() and 1 <= int(label) <= self.k:
            return int(label)
        raise KeyError(f"unknown side label {label!r}")

    def parse_word(self, text: str) -> tuple[int, ...]:
        """``"l,r,t"`` -> side indices."""
        parts = [p for p in text.replace(" ", "").split(",") if p]
        return tuple(self.index(p) for p in parts)

    def format_word(self, word: Sequence[int]) -> str:
        return ",".join(self.label(i) for i in word)

    def area(self) -> float:
        return _signed_area(self.vertices)

    def perimeter(self) -> float:
        return sum(self.side_length(i) for i in range(1, self.k + 1))

    def diameter(self) -> float:
        return max(dist(p, q) for p in self.vertices for q in self.vertices)

    def contains(self, p: Sequence[float]) -> bool:
        """Strict interior test (points on the boundary are outside)."""
        for a, b in self.sides:
            if _point_segment_distance(p, a, b) <= EPS_GEOM:
                return False
        inside = False
        x, y = p[0], p[1]
        for a, b in self.sides:
            if (a.y > y) != (b.y > y):
                xc = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y)
                if xc > x:
                    inside = not inside
        return inside

    def mapped(self, fn) -> "Polygon":
        """Image under an orientation-preserving similarity ``fn`` (point -> point)."""
        return validate_polygon(
            [fn(p) for p in self.vertices],
            labels=self.labels,
            angle_fractions=self.angle_fractions,
            name=self.name,
        )

    def relabeled(self, offset: int) -> "Polygon":
        """Same table with side numbering shifted: new side ``i`` is old side ``i + offset``."""
        k = self.k
        offset %= k
        verts = self.vertices[offset:] + self.vertices[:offset]
        labels = self.labels[offset:] + self.labels[:offset]
        fr = None
        if self.angle_fractions is not None:
            fr = self.angle_fractions[offset:] + self.angle_fractions[:offset]
        return Polygon(verts, labels, fr, False, self.name)


def _signed_area(vs: Sequence[Sequence[float]]) -> float:
    s = 0.0
    for i in range(len(vs)):
        a, b = vs[i], vs[(i + 1) % len(vs)]
        s += a[0] * b[1] - a[1] * b[0]
    return 0.5 * s


def _interior_angle(prev, cur, nxt) -> float:
    d1 = (cur[0] - prev[0], cur[1] - prev[1])
    d2 = (nxt[0] - cur[0], nxt[1] - cur[1])
    turn = math.atan2(cross(d1, d2), d1[0] * d2[0] + d1[1] * d2[1])
    return math.pi - turn


def _point_segment_distance(p, a, b) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    n2 = dx * dx + dy * dy
    t = 0.0 if n2 == 0 else max(0.0, min(1.0, ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / n2))
    return math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)


def _segments_touch(p, q, a, b) -> bool:
    if segments_cross(p, q, a, b, eps=0.0):
        return True
    return min(
        _point_segment_distance(p, a, b),
        _point_segment_distance(q, a, b),
        _point_segment_distance(a, p, q),
        _point_segment_distance(b, p, q),
    ) <= EPS_GEOM


def validate_polygon(
    vertices: Sequence[Sequence[float]],
    labels: Optional[Sequence[str]] = None,
    angle_fractions: Optional[Sequence] = None,
    name: str = "",
) -> Polygon:
    """Check and normalise a vertex list into a :class:`Polygon`.

    A clockwise list is reversed (``was_clockwise`` is set).  Labels and
    exact angle tags given for the input order follow their sides/vertices.
    """
    k = len(vertices)
    if k < 3:
        raise DegenerateVertex(f"need at least 3 vertices, got {k}")
    vs = [Point2(float(x), float(y)) for x, y in vertices]
    for x, y in vs:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DegenerateVertex("non-finite coordinate")
    labels = [str(i) for i in range(1, k + 1)] if labels is None else [str(s) for s in labels]
    if len(labels) != k or len(set(labels)) != k:
        raise ValueError("need one distinct label per side")
    fracs = None if angle_fractions is None else [Fraction(f) for f in angle_fractions]
    if fracs is not None and len(fracs) != k:
        raise ValueError("need one angle tag per vertex")

    for i in range(k):
        if dist(vs[i], vs[(i + 1) % k]) <= EPS_GEOM:
            raise DegenerateVertex(f"vertices {i + 1} and {(i + 1) % k + 1} coincide")

    was_clockwise = False
    area = _signed_area(vs)
    if abs(area) <= EPS_GEOM:
        raise DegenerateVertex("polygon has zero area")
    if area < 0:
        was_clockwise = True
        vs = vs[::-1]
        # new side j joins old vertices k-1-j and k-2-j
        labels = [labels[(k - 2 - j) % k] for j in range(k)]
        if fracs is not None:
            fracs = fracs[::-1]

    for i in range(k):
        for j in range(i + 2, k):
            if i == 0 and j == k - 1:
                continue
            if _segments_touch(vs[i], vs[(i + 1) % k], vs[j], vs[(j + 1) % k]):
                raise SelfIntersecting(f"sides {i + 1} and {j + 1} intersect")

    for i in range(k):
        ang = _interior_angle(vs[i - 1], vs[i], vs[(i + 1) % k])
        if abs(ang - math.pi) <= EPS_GEOM:
            raise StraightAngle(f"angle at vertex {i + 1} {tuple(vs[i])} is pi")
        if ang <= EPS_GEOM or ang >= 2 * math.pi - EPS_GEOM:
            raise DegenerateVertex(f"angle at vertex {i + 1} is degenerate")
        if fracs is not None and abs(float(fracs[i]) * math.pi - ang) > 1e-6:
            raise ValueError(f"angle tag {fracs[i]} at vertex {i + 1} disagrees with geometry")

    return Polygon(
        tuple(vs), tuple(labels), None if fracs is None else tuple(fracs), was_clockwise, name
    )


def _cos_sin_pi(f: Fraction) -> tuple[float, float]:
    """cos and sin of ``pi * f``, exact for multiples of 1/2."""
    f = f % 2
    exact = {
        Fraction(0): (1.0, 0.0),
        Fraction(1, 2): (0.0, 1.0),
        Fraction(1): (-1.0, 0.0),
        Fraction(3, 2): (0.0, -1.0),
    }
    if f in exact:
        return exact[f]
    a = math.pi * float(f)
    return math.cos(a), math.sin(a)


def from_exact_angles(
    fractions: Sequence,
    side_lengths: Sequence[float],
    labels: Optional[Sequence[str]] = None,
    name: str = "",
) -> Polygon:
    """Build a polygon by a turtle walk from interior angles ``pi*m/n`` and side lengths.

    ``fractions[i]`` is the angle at vertex ``p_{i+1}``; ``side_lengths[i]``
    is the length of side ``i+1``.  ``p_1`` is put at the origin and side 1
    along the positive x axis.
    """
    fr = [Fraction(f) for f in fractions]
    k = len(fr)
    if len(side_lengths) != k:
        raise ValueError("need one length per side")
    if any(L <= 0 for L in side_lengths):
        raise ValueError("side lengths must be positive")
    if sum(fr) != k - 2:
        raise NonClosing(f"angles sum to {sum(fr)}*pi, a simple {k}-gon needs {k - 2}*pi")
    heading = Fraction(0)
    x, y = 0.0, 0.0
    pts = [Point2(x, y)]
    for i in range(k):
        c, s = _cos_sin_pi(heading)
        x, y = x + side_lengths[i] * c, y + side_lengths[i] * s
        pts.append(Point2(x, y))
        # exterior turn at the next vertex
        heading += 1 - fr[(i + 1) % k]
    scale = max(1.0, sum(side_lengths))
    if dist(pts[-1], pts[0]) > EPS_GEOM * scale:
        raise NonClosing(f"turtle walk misses the start by {dist(pts[-1], pts[0]):.3g}")
    return validate_polygon(pts[:-1], labels=labels, angle_fractions=fr, name=name)


@dataclass(frozen=True)
class RationalityInfo:
    kind: str  # "rational" | "irrational" | "undetermined"
    fractions: Optional[tuple[Fraction, ...]] = None
    N: Optional[int] = None
    recognized: bool = False
    # direction (radians) of side 1; the reflection lines of D_N are axis + j*pi/N
    axis: float = 0.0

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"


def rationality(P: Polygon) -> RationalityInfo:
    axis = math.atan2(P.side_vector(1).y, P.side_vector(1).x)
    if P.angle_fractions is not None:
        fr = tuple(P.angle_fractions)
        return RationalityInfo("rational", fr, math.lcm(*(f.denominator for f in fr)), False, axis)
    fr = []
    for ang in P.interior_angles():
        x = ang / math.pi
        f = Fraction(x).limit_denominator(RECOGNITION_MAX_DENOMINATOR)
        if abs(float(f) * math.pi - ang) > RECOGNITION_RESIDUAL:
            return RationalityInfo("undetermined", axis=axis)
        fr.append(f)
    return RationalityInfo(
        "rational", tuple(fr), math.lcm(*(f.denominator for f in fr)), True, axis
    )


def dihedral_orbit(theta: float, info: RationalityInfo, tol: float = 1e-9) -> list[float]:
    """Orbit of a direction under D_N, as sorted angles in [0, 2*pi)."""
    if not info.is_rational:
        raise NotRational("direction orbits need a rational polygon")
    N = info.N
    two_pi = 2 * math.pi
    raw = []
    for j in range(N):
        rot = two_pi * j / N
        raw.append((theta + rot) % two_pi)
        raw.append((2 * info.axis - theta + rot) % two_pi)
    return cluster_angles(raw, tol)


def cluster_angles(angles: Sequence[float], tol: float = 1e-9) -> list[float]:
    """Distinct angles mod 2*pi, merging those closer than ``tol``."""
    two_pi = 2 * math.pi
    vals = sorted(a % two_pi for a in angles)
    out: list[float] = []
    for a in vals:
        if not out or a - out[-1] > tol:
            out.append(a)
    if len(out) > 1 and out[0] + two_pi - out[-1] <= tol:
        out.pop()
    return out


# a few tables used by tests, docs and the CLI
def unit_square() -> Polygon:
    return from_exact_angles([Fraction(1, 2)] * 4, [1, 1, 1, 1], name="square")


def rectangle(w: float, h: float) -> Polygon:
    return from_exact_angles([Fraction(1, 2)] * 4, [w, h, w, h], name=f"rectangle {w}x{h}")


def equilateral_triangle() -> Polygon:
    return from_exact_angles([Fraction(1, 3)] * 3, [1, 1, 1], name="equilateral")


def right_isosceles_triangle() -> Polygon:
    return from_exact_angles(
        [Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)], [math.sqrt(2), 1, 1],
        name="right isosceles",
    )


L_TABLE_LABELS = ("b", "r", "t", "i", "u", "l")


def l_table() -> Polygon:
    """The L-shaped table (0,0),(5,0),(5,1),(3,1),(3,3),(0,3).

    Sides: b bottom, r right end, t top of the arm, i inner wall,
    u upper edge, l left wall.
    """
    return from_exact_angles(
        [Fraction(1, 2)] * 3 + [Fraction(3, 2)] + [Fraction(1, 2)] * 2,
        [5, 1, 2, 2, 3, 3],
        labels=L_TABLE_LABELS,
        name="L-table",
    )
