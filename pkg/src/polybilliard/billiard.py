"""The billiard map: first return to the boundary, orbits and itineraries.

A phase point is ``(side, s, theta)``: foot point at parameter ``s`` along
side ``side`` and direction ``theta`` measured from the inward normal.
Positive ``theta`` tilts the direction towards the side's own
(counterclockwise) orientation, so with ``n`` the inward normal and ``t``
the unit tangent the velocity is ``cos(theta) n + sin(theta) t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .geometry import EPS_GEOM, Point2, cross, dist
from .polygon import Polygon

EPS_CORNER = 1e-9


class NumericalStall(RuntimeError):
    """A flight shorter than the incidence tolerance: tolerances conflict."""


@dataclass(frozen=True)
class PhasePoint:
    side: int
    s: float
    theta: float

    def __post_init__(self):
        if not 0.0 < self.s < 1.0:
            raise ValueError(f"foot parameter must lie in (0, 1), got {self.s}")
        if not abs(self.theta) < math.pi / 2:
            raise ValueError(f"theta must lie in (-pi/2, pi/2), got {self.theta}")

    def reversed(self) -> "PhasePoint":
        """Same foot point, velocity mirrored so that stepping retraces the past."""
        return PhasePoint(self.side, self.s, -self.theta)


@dataclass(frozen=True)
class Next:
    point: PhasePoint
    time: float


@dataclass(frozen=True)
class CornerHit:
    vertex: int
    time: float


@dataclass(frozen=True)
class Tangency:
    side: int
    time: float


StepOutcome = Union[Next, CornerHit, Tangency]


@dataclass(frozen=True)
class Itinerary:
    symbols: tuple[int, ...]
    origin: PhasePoint

    def __len__(self):
        return len(self.symbols)


def position(P: Polygon, u: PhasePoint) -> Point2:
    return P.point_on_side(u.side, u.s)


def velocity(P: Polygon, u: PhasePoint) -> Point2:
    n, t = P.inward_normal(u.side), P.tangent(u.side)
    c, s = math.cos(u.theta), math.sin(u.theta)
    return Point2(c * n.x + s * t.x, c * n.y + s * t.y)


def phase_from_vector(P: Polygon, side: int, s: float, v: Sequence[float]) -> PhasePoint:
    """Phase point at ``(side, s)`` moving along ``v`` (must point inward)."""
    n, t = P.inward_normal(side), P.tangent(side)
    return PhasePoint(side, s, math.atan2(v[0] * t.x + v[1] * t.y, v[0] * n.x + v[1] * n.y))


@dataclass(frozen=True)
class RayHit:
    time: float
    side: int
    mu: float  # parameter along the side hit
    point: Point2


def cast_ray(P: Polygon, origin: Sequence[float], d: Sequence[float],
             skip: Optional[float] = None) -> Optional[RayHit]:
    """First boundary crossing of ``origin + lam d`` with ``lam * |d| > skip``."""
    if skip is None:
        skip = EPS_GEOM
    dn = math.hypot(d[0], d[1])
    best = None
    for i in range(1, P.k + 1):
        a, b = P.side(i)
        e = (b.x - a.x, b.y - a.y)
        den = cross(d, e)
        if den == 0.0:
            continue
        w = (a.x - origin[0], a.y - origin[1])
        lam = cross(w, e) / den
        if lam * dn <= skip:
            continue
        mu = cross(w, d) / den
        slack = EPS_CORNER / math.hypot(*e)
        if -slack <= mu <= 1.0 + slack and (best is None or lam < best.time):
            best = RayHit(lam, i, mu, Point2(origin[0] + lam * d[0], origin[1] + lam * d[1]))
    return best


def _resolve_hit(P: Polygon, hit: RayHit, d: Sequence[float], dn: float) -> StepOutcome:
    time = hit.time * dn
    L = P.side_length(hit.side)
    if hit.mu * L < EPS_CORNER:
        return CornerHit((hit.side - 1) % P.k + 1, time)
    if (1.0 - hit.mu) * L < EPS_CORNER:
        return CornerHit(hit.side % P.k + 1, time)
    n = P.inward_normal(hit.side)
    t = P.tangent(hit.side)
    # reflected velocity: the normal component flips
    vn = -(d[0] * n.x + d[1] * n.y) / dn
    vt = (d[0] * t.x + d[1] * t.y) / dn
    theta = math.atan2(vt, vn)
    if vn <= 0 or abs(theta) >= math.pi / 2 - EPS_GEOM:
        return Tangency(hit.side, time)
    return Next(PhasePoint(hit.side, hit.mu, theta), time)


def billiard_step(P: Polygon, u: PhasePoint) -> StepOutcome:
    """One application of the billiard map."""
    x = position(P, u)
    d = velocity(P, u)
    hit = cast_ray(P, x, d)
    if hit is None:
        raise NumericalStall(f"ray from {u} leaves the table without a hit")
    if hit.time < EPS_GEOM:
        raise NumericalStall(f"flight of length {hit.time:.3g} from {u}")
    return _resolve_hit(P, hit, d, 1.0)


def shoot(P: Polygon, origin: Sequence[float], d: Sequence[float]) -> StepOutcome:
    """First impact of a ball launched from an interior point."""
    dn = math.hypot(d[0], d[1])
    hit = cast_ray(P, origin, d, skip=0.0)
    if hit is None:
        raise NumericalStall(f"ray from {tuple(origin)} leaves the table without a hit")
    return _resolve_hit(P, hit, d, dn)


@dataclass(frozen=True)
class Orbit:
    points: tuple[PhasePoint, ...]
    itinerary: Itinerary
    outcome: StepOutcome

    @property
    def completed(self) -> int:
        return len(self.points) - 1


def iterate(P: Polygon, u: PhasePoint, n: int) -> Orbit:
    """Apply the billiard map up to ``n`` times, stopping at a corner or tangency.

    ``outcome`` is the last step result; it is ``Next`` when all ``n``
    steps were completed (and for ``n == 0`` it wraps ``u`` itself).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    pts = [u]
    outcome: StepOutcome = Next(u, 0.0)
    for _ in range(n):
        outcome = billiard_step(P, pts[-1])
        if not isinstance(outcome, Next):
            break
        pts.append(outcome.point)
    return Orbit(tuple(pts), Itinerary(tuple(p.side for p in pts), u), outcome)


def rho_distance(P: Polygon, u: PhasePoint, v: PhasePoint) -> float:
    """max(|foot(u) - foot(v)|, |theta(u) - theta(v)|)."""
    return max(dist(position(P, u), position(P, v)), abs(u.theta - v.theta))


@dataclass(frozen=True)
class PeriodCheck:
    period: Optional[int]
    combinatorial_only: bool = False
    reason: Optional[str] = None

    def __bool__(self):
        return self.period is not None


def smallest_period(symbols: Sequence[int], max_p: int) -> Optional[int]:
    """Least ``p <= max_p`` with ``symbols[i] == symbols[i + p]`` throughout."""
    n = len(symbols)
    for p in range(1, min(max_p, n - 1) + 1):
        if all(symbols[i] == symbols[i + p] for i in range(n - p)):
            return p
    return None


def is_periodic(P: Polygon, u: PhasePoint, max_n: int, tol: float = 1e-7) -> PeriodCheck:
    """Least ``n <= max_n`` with ``rho(T^n u, u) < tol``.

    Without a phase return, an itinerary that is ``n``-periodic over
    ``2 * max_n`` steps is reported with ``combinatorial_only`` set.
    """
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    orbit = iterate(P, u, 2 * max_n)
    for n, v in enumerate(orbit.points[1 : max_n + 1], start=1):
        if v.side == u.side and rho_distance(P, u, v) < tol:
            return PeriodCheck(n)
    if not isinstance(orbit.outcome, Next):
        kind = type(orbit.outcome).__name__
        return PeriodCheck(None, reason=f"{kind} after {orbit.completed} steps")
    p = smallest_period(orbit.itinerary.symbols, max_n)
    if p is not None:
        return PeriodCheck(p, combinatorial_only=True, reason="itinerary periodic, phase open")
    return PeriodCheck(None, reason=f"no return within {max_n} steps")


def symbolic_separation_index(P: Polygon, u: PhasePoint, v: PhasePoint,
                              horizon: int) -> Optional[int]:
    """Least ``i <= horizon`` where the itineraries of ``u`` and ``v`` differ."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    a = iterate(P, u, horizon).itinerary.symbols
    b = iterate(P, v, horizon).itinerary.symbols
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return None


# ---------------------------------------------------------------------------
# vectorised orbits, used by the brute-force scans


@dataclass
class OrbitBatch:
    """Many orbits advanced in lockstep.

    ``sides[j, i]`` is the side of the i-th impact of orbit j (0 once dead),
    ``feet`` the impact points and ``dirs`` the outgoing unit velocities.
    """

    sides: np.ndarray
    feet: np.ndarray
    dirs: np.ndarray
    alive: np.ndarray  # number of completed steps per orbit


def iterate_batch(P: Polygon, sides: np.ndarray, s: np.ndarray, dirs: np.ndarray,
                  n_steps: int) -> OrbitBatch:
    """Advance many orbits ``n_steps`` times.

    ``sides`` (1-based), ``s`` and world-frame unit velocities ``dirs``
    describe the starting phase points.
    """
    k = P.k
    A = np.array([P.vertex(i) for i in range(1, k + 1)])
    B = np.roll(A, -1, axis=0)
    E = B - A
    L = np.hypot(E[:, 0], E[:, 1])
    Tn = E / L[:, None]
    Nn = np.stack([-Tn[:, 1], Tn[:, 0]], axis=1)

    m = len(sides)
    out_sides = np.zeros((m, n_steps + 1), dtype=np.int64)
    feet = np.zeros((m, n_steps + 1, 2))
    out_dirs = np.zeros((m, n_steps + 1, 2))
    cur = sides.astype(np.int64).copy()
    X = A[cur - 1] + s[:, None] * E[cur - 1]
    D = dirs.astype(float).copy()
    out_sides[:, 0] = cur
    feet[:, 0] = X
    out_dirs[:, 0] = D
    live = np.ones(m, dtype=bool)
    done = np.zeros(m, dtype=np.int64)
    for step in range(1, n_steps + 1):
        # lam[j, i]: time to the line of side i; mu[j, i]: parameter on it
        wx = A[None, :, 0] - X[:, None, 0]
        wy = A[None, :, 1] - X[:, None, 1]
        den = D[:, None, 0] * E[None, :, 1] - D[:, None, 1] * E[None, :, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            lam = (wx * E[None, :, 1] - wy * E[None, :, 0]) / den
            mu = (wx * D[:, None, 1] - wy * D[:, None, 0]) / den
        slack = EPS_CORNER / L[None, :]
        ok = (lam > EPS_GEOM) & (mu >= -slack) & (mu <= 1 + slack) & np.isfinite(lam)
        lam = np.where(ok, lam, np.inf)
        j = np.argmin(lam, axis=1)
        rows = np.arange(m)
        t = lam[rows, j]
        mj = mu[rows, j]
        Lj = L[j]
        corner = (mj * Lj < EPS_CORNER) | ((1 - mj) * Lj < EPS_CORNER) | ~np.isfinite(t)
        X = X + np.where(np.isfinite(t), t, 0.0)[:, None] * D
        nj = Nn[j]
        vn = np.sum(D * nj, axis=1)
        D = D - 2 * vn[:, None] * nj
        tangent = -vn <= math.sin(EPS_GEOM)
        live = live & ~corner & ~tangent
        out_sides[:, step] = np.where(live, j + 1, 0)
        feet[:, step] = X
        out_dirs[:, step] = D
        done += live
    return OrbitBatch(out_sides, feet, out_dirs, done)
