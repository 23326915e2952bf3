"""Periodic orbits: realising codes as cylinders and enumerating the spectrum.

A code ``s_0 .. s_{n-1}`` of even length is realised when the corridor's
terminal isometry is a translation ``t`` and some segment ``x, x + t``
(``x`` on side ``s_0``) runs through the corridor.  For fixed ``t`` the
admissible ``x`` form one open interval of the base side: the family of
parallel periodic orbits filling a cylinder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .billiard import (
    PhasePoint,
    cast_ray,
    is_periodic,
    iterate,
    iterate_batch,
    phase_from_vector,
)
from .codes import (
    PillowcaseCode,
    canonical,
    has_cyclic_repeat,
    is_spectrum_word,
    itinerary_to_code,
    validate_code,
)
from .geometry import (
    EPS_GEOM,
    EPS_ISO,
    Interval,
    Isometry2,
    Point2,
    chord_param_interval,
    classify,
    compose,
    cross,
)
from .polygon import Polygon
from .unfolding import EPS_GATE, Corridor, side_reflections, unfold_code

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """DFS node cap hit; ``partial`` holds what was found so far."""

    def __init__(self, partial: "Spectrum"):
        super().__init__(f"node budget exhausted after {partial.nodes} nodes")
        self.partial = partial


class NoFamily(ValueError):
    pass


@dataclass(frozen=True)
class CylinderFamily:
    code: PillowcaseCode
    word: tuple[int, ...]  # the rotation actually unfolded; word[0] is the base side
    direction: Point2  # unit vector in the unfolded picture
    translation: Point2
    base_side: int
    interval: Interval
    length: float
    width: float
    theta: float  # launch angle on the base side, from its inward normal
    marginal: bool = False

    def phase_point(self, s: float) -> PhasePoint:
        return PhasePoint(self.base_side, s, self.theta)

    def sample(self, count: int, margin: float = 0.1) -> list[float]:
        """Evenly spread foot parameters strictly inside the base interval."""
        lo, hi = self.interval
        pad = margin * (hi - lo)
        return list(np.linspace(lo + pad, hi - pad, count))


@dataclass(frozen=True)
class Unrealized:
    reason: str  # "NotTranslation" | "EmptyCorridor"
    detail: str = ""

    def __bool__(self):
        return False


def _base_frame(P: Polygon, side: int):
    """Local coordinates on ``side``: x in units of the side, y along the
    normal pointing out of the table (into the first reflected copy)."""
    a, b = P.side(side)
    e = (b.x - a.x, b.y - a.y)
    L2 = e[0] ** 2 + e[1] ** 2
    n = P.inward_normal(side)
    n_out = (-n.x, -n.y)

    def to_local(X):
        w = (X[0] - a.x, X[1] - a.y)
        return ((w[0] * e[0] + w[1] * e[1]) / L2, w[0] * n_out[0] + w[1] * n_out[1])

    def vec_local(v):
        return ((v[0] * e[0] + v[1] * e[1]) / L2, v[0] * n_out[0] + v[1] * n_out[1])

    return a, e, to_local, vec_local


def _walk_ok(P: Polygon, corridor: Corridor, x0: Point2, t: Sequence[float]) -> bool:
    """Does the segment ``x0 -> x0 + t`` pass through the corridor, wall by wall?"""
    sym = corridor.symbols
    n = len(sym)
    tn = math.hypot(t[0], t[1])
    enter = 0.0
    for j in range(1, n + 1):
        F = corridor.frames[j]
        Finv = F.inverse()
        hit = cast_ray(P, Finv(x0), Finv.linear(t), skip=enter * tn + EPS_GEOM)
        want = sym[j % n]
        if hit is None or hit.side != want:
            return False
        L = P.side_length(want)
        if hit.mu * L <= EPS_GATE or (1 - hit.mu) * L <= EPS_GATE:
            return False
        enter = hit.time
    return abs(enter - 1.0) < 1e-6


def realize_word(P: Polygon, word: Sequence[int], corridor: Optional[Corridor] = None):
    """Realise one specific rotation of a code; base side is ``word[0]``."""
    w = tuple(word)
    corridor = corridor or unfold_code(P, w)
    if len(w) % 2:
        return Unrealized("NotTranslation", "odd word: orientation reversing")
    kind = classify(corridor.terminal, EPS_ISO)
    if kind.kind != "translation":
        return Unrealized("NotTranslation", kind.describe())
    t = kind.vector
    base = P.side(w[0])
    a, e, to_local, vec_local = _base_frame(P, w[0])
    if vec_local(t)[1] <= EPS_GEOM:
        return Unrealized("EmptyCorridor", "translation points back into the table")

    # gate shadows along t
    lo, hi = 0.0, 1.0
    for g in corridor.gates[1:] + ((corridor.terminal(base[0]), corridor.terminal(base[1])),):
        iv = chord_param_interval(base, t, g)
        if iv is None:
            return Unrealized("EmptyCorridor", "gate shadows do not overlap")
        lo, hi = max(lo, iv.lo), min(hi, iv.hi)
        if hi <= lo:
            return Unrealized("EmptyCorridor", "gate shadows do not overlap")

    # occlusion: the admissible set only changes where the line meets a vertex
    den = cross(e, t)
    cuts = {lo, hi}
    for F in corridor.frames[1:]:
        for p in P.vertices:
            W = F(p)
            s = cross((W.x - a.x, W.y - a.y), t) / den
            if lo < s < hi:
                cuts.add(s)
    cuts = sorted(cuts)
    runs: list[list[float]] = []
    for s0, s1 in zip(cuts, cuts[1:]):
        if s1 - s0 <= 0:
            continue
        sm = 0.5 * (s0 + s1)
        x0 = Point2(a.x + sm * e[0], a.y + sm * e[1])
        if _walk_ok(P, corridor, x0, t):
            if runs and runs[-1][1] == s0:
                runs[-1][1] = s1
            else:
                runs.append([s0, s1])
    if not runs:
        return Unrealized("EmptyCorridor", "every line through the gates is blocked by a wall")
    r0, r1 = max(runs, key=lambda r: r[1] - r[0])
    interval = Interval(r0, r1)
    tn = math.hypot(t.x, t.y)
    u = Point2(t.x / tn, t.y / tn)
    side_len = math.hypot(*e)
    width = interval.width * side_len * abs(cross((e[0] / side_len, e[1] / side_len), u))
    # physical launch direction: undo the first reflection
    d_phys = corridor.frames[1].linear(u)
    theta = phase_from_vector(P, w[0], interval.mid(), d_phys).theta
    return CylinderFamily(
        code=PillowcaseCode(canonical(w)),
        word=w,
        direction=u,
        translation=Point2(t.x, t.y),
        base_side=w[0],
        interval=interval,
        length=tn,
        width=width,
        theta=theta,
        marginal=interval.width <= EPS_GATE,
    )


def realize_code(P: Polygon, code) -> "CylinderFamily | Unrealized":
    """Cylinder of periodic orbits with the given code, or the reason there is none."""
    word = code.word if isinstance(code, PillowcaseCode) else tuple(code)
    validate_code(word, P.k)
    return realize_word(P, word)


# ---------------------------------------------------------------------------
# spectrum


@dataclass
class Spectrum:
    polygon: Polygon
    depth: int
    families: dict[tuple[int, ...], CylinderFamily] = field(default_factory=dict)
    partial: bool = False
    nodes: int = 0

    @property
    def codes(self) -> set[tuple[int, ...]]:
        return set(self.families)

    def __contains__(self, word) -> bool:
        return canonical(tuple(word)) in self.families

    def __len__(self):
        return len(self.families)

    def sorted_codes(self) -> list[tuple[int, ...]]:
        return sorted(self.families)

    def serialize(self) -> str:
        return serialize_spectrum(self)


def _clip(poly: list[tuple[float, float]], a: float, b: float, c: float, tol: float):
    """Keep the part of a convex polygon where ``a*s + b*m + c >= -tol``."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = a * p[0] + b * p[1] + c
        fq = a * q[0] + b * q[1] + c
        if fp >= -tol:
            out.append(p)
        if (fp >= -tol) != (fq >= -tol):
            r = fp / (fp - fq)
            out.append((p[0] + r * (q[0] - p[0]), p[1] + r * (q[1] - p[1])))
    return out


_SLOPE_BOX = 1e6


def enumerate_spectrum(P: Polygon, L: int, budget: int = DEFAULT_BUDGET) -> Spectrum:
    """All realised codes of length <= L (canonical words, sorted).

    Depth-first over words that can still be the least rotation of a code,
    pruned when no line through the base side crosses all gates so far.
    A line through the base side is ``x = s + m y`` in the base side's local
    frame, so each gate crossing is two half-planes in ``(s, m)``.
    """
    if L < 2 or L % 2:
        raise ValueError("L must be an even number >= 2")
    R = side_reflections(P)
    spec = Spectrum(P, L)
    nodes = 0

    def gate_halfplanes(F: Isometry2, side: int, to_local):
        F_next = compose(F, R[side])
        A, B = F(P.vertex(side)), F(P.vertex(side + 1))
        n = F_next.linear(P.inward_normal(side))
        # orient so that rot_cw(B - A) points into the next copy
        if (B.y - A.y) * n.x - (B.x - A.x) * n.y < 0:
            A, B = B, A
        Al, Bl = to_local(A), to_local(B)
        # crossing means f(A) < 0 < f(B), f(X) = X_x - s - m X_y
        return F_next, [(1.0, Al[1], -Al[0]), (-1.0, -Bl[1], Bl[0])]

    for first in range(1, P.k + 1):
        _, _, to_local, _ = _base_frame(P, first)
        poly0 = [(0.0, -_SLOPE_BOX), (1.0, -_SLOPE_BOX), (1.0, _SLOPE_BOX), (0.0, _SLOPE_BOX)]
        # stack: (word, lyndon period, frames F_0 .. F_n, (s, m) polygon)
        stack = [((first,), 1, (Isometry2.identity(), R[first]), poly0)]
        while stack:
            word, p, frames, poly = stack.pop()
            nodes += 1
            if nodes > budget:
                spec.partial = True
                spec.nodes = nodes
                raise BudgetExceeded(spec)
            n = len(word)
            F = frames[-1]
            for c in range(P.k, first - 1, -1):
                if c == word[-1]:
                    continue
                # prenecklace test (Fredricksen-Kessler-Maiorana)
                ref = word[n - p]
                if c < ref:
                    continue
                p2 = p if c == ref else n + 1
                F_next, hp = gate_halfplanes(F, c, to_local)
                new_poly = poly
                for coeffs in hp:
                    new_poly = _clip(new_poly, *coeffs, 1e-12)
                    if len(new_poly) < 3:
                        break
                if len(new_poly) < 3:
                    continue
                w2 = word + (c,)
                frames2 = frames + (F_next,)
                if (n + 1) % 2 == 0 and c != first and (n + 1) % p2 == 0 and is_spectrum_word(w2):
                    gates = tuple(_gate(frames2[i], P, w2[i]) for i in range(n + 1))
                    fam = realize_word(P, w2, Corridor(w2, frames2, gates))
                    if fam:
                        spec.families[w2] = fam
                if n + 1 < L:
                    stack.append((w2, p2, frames2, new_poly))
    spec.nodes = nodes
    spec.families = dict(sorted(spec.families.items()))
    return spec


def _gate(F: Isometry2, P: Polygon, side: int):
    a, b = P.side(side)
    return (F(a), F(b))


# ---------------------------------------------------------------------------
# serialisation


def _family_line(P: Polygon, word, fam: CylinderFamily) -> str:
    # direction relative to the base side and width relative to sqrt(area):
    # both survive rotating, scaling and moving the table
    a, b = P.side(fam.base_side)
    side_angle = math.atan2(b.y - a.y, b.x - a.x)
    rel = math.degrees(math.atan2(fam.direction.y, fam.direction.x) - side_angle) % 360.0
    width = fam.width / math.sqrt(P.area())
    flag = " marginal" if fam.marginal else ""
    return f"length={len(word)} dir={rel:.6f} width={width:.6f}{flag} {P.format_word(word)}"


def serialize_spectrum(spec: Spectrum) -> str:
    P = spec.polygon
    lines = sorted(_family_line(P, w, f) for w, f in spec.families.items())
    head = []
    if spec.partial:
        head.append(f"# PARTIAL: node budget exhausted after {spec.nodes} nodes")
    return "\n".join(head + lines) + "\n"


def parse_spectrum(text: str, P: Polygon) -> set[tuple[int, ...]]:
    """Canonical code words from a serialised spectrum."""
    out = set()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word = line.split()[-1]
        out.add(canonical(P.parse_word(word)))
    return out


# ---------------------------------------------------------------------------
# brute-force oracle


def _launches(P: Polygon, theta: float, grid: int):
    """Starting states on every side whose inward cone contains direction ``theta``."""
    d = (math.cos(theta), math.sin(theta))
    sides, ss = [], []
    s_grid = (np.arange(grid) + 0.5) / grid
    for i in range(1, P.k + 1):
        n = P.inward_normal(i)
        if d[0] * n.x + d[1] * n.y > 1e-9:
            sides.append(np.full(grid, i))
            ss.append(s_grid)
    if not sides:
        return np.zeros(0, dtype=int), np.zeros(0), np.zeros((0, 2))
    sides = np.concatenate(sides)
    ss = np.concatenate(ss)
    dirs = np.tile(np.array(d), (len(sides), 1))
    return sides, ss, dirs


def _closed_words(batch, max_steps: int, tol: float) -> list[Optional[tuple[int, ...]]]:
    """Per orbit: its period word, or None."""
    sides, feet, dirs = batch.sides, batch.feet, batch.dirs
    m = len(sides)
    period = np.zeros(m, dtype=np.int64)
    full = batch.alive >= max_steps
    for p in range(1, max_steps // 2 + 1):
        ok = full & (period == 0)
        if not ok.any():
            break
        ok &= np.all(sides[:, p:] == sides[:, :-p], axis=1)
        ok &= np.hypot(*(dirs[:, p] - dirs[:, 0]).T) <= 1e-9
        ok &= np.hypot(*(feet[:, p] - feet[:, 0]).T) <= tol
        period[ok] = p
    return [tuple(int(c) for c in sides[j, :p]) if p else None for j, p in enumerate(period)]


def direction_scan_oracle(P: Polygon, theta: float, max_steps: int = 40, grid: int = 200,
                          tol: float = 0.02) -> list[tuple[tuple[int, ...], PhasePoint]]:
    """Closed itineraries seen from a grid of launches in one world direction.

    Independent of the unfolding machinery: orbits are simply iterated.  An
    orbit counts as closed with period ``p`` when its itinerary is
    ``p``-periodic over all ``max_steps`` steps (at least two periods), its
    velocity returns exactly after ``p`` steps, and its foot point drifts by
    less than ``tol`` per period.  Grid directions rarely hit periodic
    directions exactly; the drift allowance lets a nearby cylinder show up.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    sides, ss, dirs = _launches(P, theta, grid)
    if len(sides) == 0:
        return []
    batch = iterate_batch(P, sides, ss, dirs, max_steps)
    words = _closed_words(batch, max_steps, tol)
    seen = {}
    for j, w in enumerate(words):
        if w is None or w in seen:
            continue
        seen[w] = phase_from_vector(P, int(sides[j]), float(ss[j]), dirs[j])
    return sorted(seen.items())


def oracle_spectrum(P: Polygon, L: int, directions: int = 720, grid: int = 200,
                    max_steps: int = 40, tol: float = 0.02) -> set[tuple[int, ...]]:
    """Canonical codes of length <= L aggregated over evenly spaced directions."""
    codes = set()
    for j in range(directions):
        theta = 2 * math.pi * j / directions
        for word, _ in direction_scan_oracle(P, theta, max_steps, grid, tol):
            if has_cyclic_repeat(word):
                continue
            code = itinerary_to_code(word)
            if len(code) <= L:
                codes.add(code.word)
    return codes


# ---------------------------------------------------------------------------
# odd periods


@dataclass(frozen=True)
class DoublingReport:
    word: tuple[int, ...]
    family: CylinderFamily
    center_s: float
    center: PhasePoint
    center_period: Optional[int]
    neighbors: tuple[tuple[float, Optional[int]], ...]

    @property
    def confirmed(self) -> bool:
        n = len(self.word)
        return self.center_period == n and all(p == 2 * n for _, p in self.neighbors)


def verify_t1_doubling(P: Polygon, word: Sequence[int], offset: float = 0.2,
                       tol: float = 1e-7) -> DoublingReport:
    """Locate the single period-n orbit inside the family of an odd word.

    Along the base interval the n-th return is an orientation-reversing map
    ``s -> f(s)``; its fixed point (found by bisection on ``f(s) - s``) is
    the period-n orbit.  Two neighbours at ``offset`` of the half-width on
    either side are checked for period 2n.
    """
    w = tuple(word)
    n = len(w)
    if n % 2 == 0:
        raise ValueError("word must have odd length")
    if has_cyclic_repeat(w):
        raise ValueError("word repeats a symbol cyclically")
    fam = realize_word(P, w + w)
    if not fam:
        raise NoFamily(f"{w}: {fam.reason} ({fam.detail})")

    def shift(s):
        orb = iterate(P, fam.phase_point(s), n)
        if orb.completed < n or orb.points[-1].side != w[0]:
            raise NoFamily(f"orbit from s={s} leaves the family")
        return orb.points[-1].s - s

    lo, hi = fam.interval
    pad = 1e-6 * (hi - lo)
    a, b = lo + pad, hi - pad
    fa, fb = shift(a), shift(b)
    if fa * fb > 0:
        raise NoFamily("return map has no fixed point on the base interval")
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = shift(m)
        if fm == 0 or b - a < 1e-15:
            break
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    c = 0.5 * (a + b)
    center = fam.phase_point(c)
    center_period = is_periodic(P, center, 2 * n, tol).period
    half = 0.5 * (hi - lo)
    nb = []
    for sgn in (-1, 1):
        s = c + sgn * offset * half
        nb.append((s, is_periodic(P, fam.phase_point(s), 2 * n, tol).period))
    return DoublingReport(w, fam, c, center, center_period, tuple(nb))
