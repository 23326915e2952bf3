"""Planar primitives: points, isometries and their classification.

Everything here is plain double precision.  Two tolerances are used
throughout the package:

* ``EPS_GEOM`` for point/line incidence,
* ``EPS_ISO`` for deciding what kind of isometry a composed map is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

EPS_GEOM = 1e-9
EPS_ISO = 1e-7

# compositions between two re-orthonormalisations of the linear part
_RENORM_EVERY = 16


class DegenerateLine(ValueError):
    """Raised when a line is specified by two (nearly) coincident points."""


class Point2(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point2(self.x - other[0], self.y - other[1])

    def scale(self, f: float) -> "Point2":
        return Point2(self.x * f, self.y * f)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


class Interval(NamedTuple):
    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, s) -> bool:  # type: ignore[override]
        return self.lo < s < self.hi


def cross(a: Sequence[float], b: Sequence[float]) -> float:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Sequence[float], b: Sequence[float]) -> float:
    return a[0] * b[0] + a[1] * b[1]


def dist(a: Sequence[float], b: Sequence[float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def reflect_across_line(p: Sequence[float], a: Sequence[float], b: Sequence[float]) -> Point2:
    """Mirror image of ``p`` in the line through ``a`` and ``b``."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    n2 = dx * dx + dy * dy
    if n2 <= EPS_GEOM * EPS_GEOM:
        raise DegenerateLine(f"line endpoints coincide: {tuple(a)} {tuple(b)}")
    t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / n2
    fx, fy = a[0] + t * dx, a[1] + t * dy
    return Point2(2.0 * fx - p[0], 2.0 * fy - p[1])


@dataclass(frozen=True)
class Isometry2:
    """The affine map ``p -> M p + t`` with ``M`` orthogonal.

    ``m`` is stored row-major as ``(a, b, c, d)`` for ``[[a, b], [c, d]]``.
    """

    m: tuple[float, float, float, float] = (1.0, 0.0, 0.0, 1.0)
    t: tuple[float, float] = (0.0, 0.0)
    reversing: bool = False
    _depth: int = 0

    def __post_init__(self):
        a, b, c, d = self.m
        if (
            abs(math.hypot(a, b) - 1.0) > EPS_ISO
            or abs(math.hypot(c, d) - 1.0) > EPS_ISO
            or abs(a * c + b * d) > EPS_ISO
        ):
            raise ValueError(f"linear part is not orthogonal: {self.m}")
        if (a * d - b * c < 0) != self.reversing:
            raise ValueError("orientation flag disagrees with determinant sign")

    @classmethod
    def identity(cls) -> "Isometry2":
        return cls()

    @classmethod
    def translation(cls, vx: float, vy: float) -> "Isometry2":
        return cls(t=(vx, vy))

    @classmethod
    def rotation(cls, angle: float, center: Sequence[float] = (0.0, 0.0)) -> "Isometry2":
        c, s = math.cos(angle), math.sin(angle)
        cx, cy = center
        return cls((c, -s, s, c), (cx - (c * cx - s * cy), cy - (s * cx + c * cy)))

    @classmethod
    def reflection(cls, a: Sequence[float], b: Sequence[float]) -> "Isometry2":
        """Reflection in the line through ``a`` and ``b``."""
        dx, dy = b[0] - a[0], b[1] - a[1]
        n = math.hypot(dx, dy)
        if n <= EPS_GEOM:
            raise DegenerateLine(f"line endpoints coincide: {tuple(a)} {tuple(b)}")
        ux, uy = dx / n, dy / n
        c2, s2 = ux * ux - uy * uy, 2.0 * ux * uy
        m = (c2, s2, s2, -c2)
        tx = a[0] - (c2 * a[0] + s2 * a[1])
        ty = a[1] - (s2 * a[0] - c2 * a[1])
        return cls(m, (tx, ty), reversing=True)

    def __call__(self, p: Sequence[float]) -> Point2:
        a, b, c, d = self.m
        return Point2(a * p[0] + b * p[1] + self.t[0], c * p[0] + d * p[1] + self.t[1])

    def linear(self, v: Sequence[float]) -> Point2:
        a, b, c, d = self.m
        return Point2(a * v[0] + b * v[1], c * v[0] + d * v[1])

    def inverse(self) -> "Isometry2":
        a, b, c, d = self.m
        # orthogonal: inverse is the transpose
        mi = (a, c, b, d)
        tx, ty = self.t
        return Isometry2(mi, (-(a * tx + c * ty), -(b * tx + d * ty)), self.reversing)


def _orthonormalize(m: tuple[float, float, float, float], reversing: bool):
    a, b, c, d = m
    n = math.hypot(a, c)
    a, c = a / n, c / n
    # second column is the first one turned by +-90 degrees
    if reversing:
        b, d = c, -a
    else:
        b, d = -c, a
    return (a, b, c, d)


def compose(f: Isometry2, g: Isometry2) -> Isometry2:
    """``f o g``: apply ``g`` first, then ``f``."""
    a1, b1, c1, d1 = f.m
    a2, b2, c2, d2 = g.m
    m = (
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
    )
    t = f(g.t)
    reversing = f.reversing != g.reversing
    depth = max(f._depth, g._depth) + 1
    if depth >= _RENORM_EVERY:
        m = _orthonormalize(m, reversing)
        depth = 0
    return Isometry2(m, (t.x, t.y), reversing, depth)


@dataclass(frozen=True)
class IsometryClass:
    """Geometric description of an isometry.

    Only the fields relevant for ``kind`` are set:

    * translation: ``vector``
    * rotation: ``center``, ``angle``
    * reflection: ``axis_point``, ``axis_angle``
    * glide: ``axis_point``, ``axis_angle``, ``vector`` (the glide)
    """

    kind: str
    vector: Optional[Point2] = None
    center: Optional[Point2] = None
    angle: Optional[float] = None
    axis_point: Optional[Point2] = None
    axis_angle: Optional[float] = None

    def describe(self) -> str:
        if self.kind == "identity":
            return "identity"
        if self.kind == "translation":
            return f"translation ({self.vector.x:.12g}, {self.vector.y:.12g})"
        if self.kind == "rotation":
            return (
                f"rotation {self.angle:.12g} about ({self.center.x:.12g}, {self.center.y:.12g})"
            )
        axis = f"axis through ({self.axis_point.x:.12g}, {self.axis_point.y:.12g}) at {self.axis_angle:.12g}"
        if self.kind == "reflection":
            return f"reflection, {axis}"
        return f"glide ({self.vector.x:.12g}, {self.vector.y:.12g}), {axis}"


def classify(g: Isometry2, tol: float = EPS_ISO) -> IsometryClass:
    """Classify ``g``; near-ties go to the more degenerate class."""
    a, b, c, d = g.m
    tx, ty = g.t
    if not g.reversing:
        angle = math.atan2(c, a)
        if angle <= -math.pi + tol:
            angle = math.pi  # half turns always read as +pi
        if abs(angle) <= tol:
            if math.hypot(tx, ty) <= tol:
                return IsometryClass("identity")
            return IsometryClass("translation", vector=Point2(tx, ty))
        # fixed point solves (I - M) p = t
        det = (1 - a) * (1 - d) - b * c
        px = ((1 - d) * tx + b * ty) / det
        py = (c * tx + (1 - a) * ty) / det
        return IsometryClass("rotation", center=Point2(px, py), angle=angle)
    # M = [[cos 2al, sin 2al], [sin 2al, -cos 2al]]
    axis_angle = 0.5 * math.atan2(b, a)
    ux, uy = math.cos(axis_angle), math.sin(axis_angle)
    along = tx * ux + ty * uy
    wx, wy = tx - along * ux, ty - along * uy
    point = Point2(0.5 * wx, 0.5 * wy)
    if abs(along) <= tol:
        return IsometryClass("reflection", axis_point=point, axis_angle=axis_angle)
    return IsometryClass(
        "glide", vector=Point2(along * ux, along * uy), axis_point=point, axis_angle=axis_angle
    )


def chord_param_interval(
    base: tuple[Sequence[float], Sequence[float]],
    v: Sequence[float],
    target: tuple[Sequence[float], Sequence[float]],
) -> Optional[Interval]:
    """Parameters ``s`` in (0, 1) whose ray ``base(s) + lam * v`` (lam > 0) crosses
    the open ``target`` segment.  ``None`` when empty.

    Occlusion by other segments is the caller's business.
    """
    if math.hypot(v[0], v[1]) <= EPS_GEOM:
        raise ValueError("direction vector is (nearly) zero")
    a, b = base
    e = (b[0] - a[0], b[1] - a[1])
    den = cross(e, v)
    if abs(den) <= EPS_GEOM * math.hypot(*e) * math.hypot(v[0], v[1]):
        return None
    c, d = target

    def project(x):
        w = (x[0] - a[0], x[1] - a[1])
        return cross(w, v) / den, cross(e, w) / den

    sc, lc = project(c)
    sd, ld = project(d)
    if sc == sd:
        return None
    # only the part of the target lying ahead of the base (lam > 0) counts
    if lc <= 0 and ld <= 0:
        return None
    if lc <= 0 or ld <= 0:
        t0 = lc / (lc - ld)
        s0 = sc + t0 * (sd - sc)
        if lc <= 0:
            sc = s0
        else:
            sd = s0
    lo, hi = min(sc, sd), max(sc, sd)
    lo, hi = max(lo, 0.0), min(hi, 1.0)
    if hi - lo <= 0:
        return None
    return Interval(lo, hi)


def segments_cross(p, q, a, b, eps: Optional[float] = None) -> bool:
    """True when open segments ``pq`` and ``ab`` cross properly."""
    if eps is None:
        eps = EPS_GEOM
    d1 = cross((q[0] - p[0], q[1] - p[1]), (a[0] - p[0], a[1] - p[1]))
    d2 = cross((q[0] - p[0], q[1] - p[1]), (b[0] - p[0], b[1] - p[1]))
    d3 = cross((b[0] - a[0], b[1] - a[1]), (p[0] - a[0], p[1] - a[1]))
    d4 = cross((b[0] - a[0], b[1] - a[1]), (q[0] - a[0], q[1] - a[1]))
    return ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    )


def set_incidence_tolerance(eps: float) -> None:
    """Override ``EPS_GEOM`` in every module that reads it."""
    import importlib

    if not eps > 0:
        raise ValueError("tolerance must be positive")
    for name in ("geometry", "polygon", "billiard", "unfolding", "periodic"):
        mod = importlib.import_module(f"{__package__}.{name}")
        mod.EPS_GEOM = eps


def angle_of(v: Sequence[float]) -> float:
    return math.atan2(v[1], v[0])


def wrap_angle(a: float) -> float:
    """Map an angle to [-pi, pi)."""
    return (a + math.pi) % (2.0 * math.pi) - math.pi
