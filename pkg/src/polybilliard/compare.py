"""Comparing two tables through their periodic-orbit codes, to a fixed depth.

All verdicts are relative to a word length ``L``: equality of the two code
sets up to ``L`` is evidence, a code present on one side only is a witness
that the tables differ.  Side ``i`` of ``P`` is identified with side
``i + offset`` of ``Q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .billiard import PhasePoint, iterate
from .codes import canonical
from .periodic import DEFAULT_BUDGET, BudgetExceeded, CylinderFamily, Spectrum, enumerate_spectrum
from .polygon import Polygon, rationality

EPS_SIM = 1e-6


class SideCountMismatch(ValueError):
    pass


class InsufficientMatches(ValueError):
    pass


@dataclass(frozen=True)
class Similarity:
    """``x -> linear @ x + offset`` carrying P onto Q."""

    kind: str  # "similar" | "affinely_similar"
    linear: tuple[tuple[float, float], tuple[float, float]]
    offset: tuple[float, float]
    residual: float  # worst vertex mismatch over Q's diameter
    reflected: bool = False

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.linear)

    @property
    def scale(self) -> float:
        return math.sqrt(abs(np.linalg.det(self.matrix)))

    @property
    def rotation(self) -> float:
        """Rotation angle (radians) of the conformal part."""
        m = self.matrix
        if self.reflected:
            return math.atan2(m[1, 0], m[0, 0])
        return math.atan2(m[1, 0] - m[0, 1], m[0, 0] + m[1, 1])

    def __call__(self, p: Sequence[float]) -> tuple[float, float]:
        x = self.matrix @ np.asarray(p, dtype=float) + np.asarray(self.offset)
        return float(x[0]), float(x[1])

    def inverse(self) -> "Similarity":
        inv = np.linalg.inv(self.matrix)
        off = -inv @ np.asarray(self.offset)
        return Similarity(self.kind, _as_pairs(inv), (float(off[0]), float(off[1])),
                          self.residual, self.reflected)


def _as_pairs(m: np.ndarray):
    return ((float(m[0, 0]), float(m[0, 1])), (float(m[1, 0]), float(m[1, 1])))


@dataclass
class ComparisonReport:
    depth: int
    verdict: str  # "equal_to_depth" | "differ" | "inconclusive_partial"
    offset: int = 0
    only_p: list[tuple[int, ...]] = field(default_factory=list)
    only_q: list[tuple[int, ...]] = field(default_factory=list)
    similarity: Optional[Similarity] = None
    N_P: Optional[int] = None
    N_Q: Optional[int] = None
    equal_offsets: list[int] = field(default_factory=list)
    note: str = ""

    @property
    def witnesses(self) -> list[tuple[int, ...]]:
        return sorted(self.only_p + self.only_q)

    @property
    def equal(self) -> bool:
        return self.verdict == "equal_to_depth"

    def serialize(self) -> str:
        lines = [f"verdict: {self.verdict} (depth {self.depth}, offset {self.offset})"]
        if self.N_P is not None:
            lines.append(f"N_P: {self.N_P}")
        if self.N_Q is not None:
            lines.append(f"N_Q: {self.N_Q}")
        if self.equal_offsets:
            lines.append("equal offsets: " + " ".join(str(o) for o in self.equal_offsets))
        for w in self.only_p:
            lines.append("witness P only: " + ",".join(map(str, w)))
        for w in self.only_q:
            lines.append("witness Q only: " + ",".join(map(str, w)))
        sim = self.similarity
        if sim is not None:
            (a, b), (c, d) = sim.linear
            lines.append(f"similarity: {sim.kind}{' reflected' if sim.reflected else ''}")
            lines.append(f"linear: {a:.12g} {b:.12g} {c:.12g} {d:.12g}")
            lines.append(f"translation: {sim.offset[0]:.12g} {sim.offset[1]:.12g}")
            lines.append(f"scale: {sim.scale:.12g}")
            lines.append(f"rotation: {sim.rotation:.12g}")
            lines.append(f"residual: {sim.residual:.12g}")
        elif self.verdict == "equal_to_depth":
            lines.append("similarity: none")
        if self.note:
            lines.append(f"note: {self.note}")
        return "\n".join(lines) + "\n"


def relabel_word(word: Sequence[int], offset: int, k: int) -> tuple[int, ...]:
    """Canonical word after renumbering side ``i`` as ``i - offset``."""
    return canonical(tuple((c - 1 - offset) % k + 1 for c in word))


def _check_sides(P: Polygon, Q: Polygon):
    if P.k != Q.k:
        raise SideCountMismatch(f"{P.k} sides vs {Q.k} sides")


def _n_of(P: Polygon) -> Optional[int]:
    info = rationality(P)
    return info.N if info.is_rational else None


def compare_spectra(P: Polygon, Q: Polygon, L: int, offset: int = 0,
                    budget: int = DEFAULT_BUDGET) -> ComparisonReport:
    _check_sides(P, Q)
    if L < 2 or L % 2:
        raise ValueError("L must be an even number >= 2")
    offset %= P.k
    Qr = Q.relabeled(offset)
    report = ComparisonReport(L, "inconclusive_partial", offset, N_P=_n_of(P), N_Q=_n_of(Q))
    try:
        sp = enumerate_spectrum(P, L, budget)
        sq = enumerate_spectrum(Qr, L, budget)
    except BudgetExceeded as exc:
        report.note = str(exc)
        return report
    return _finish(report, P, Qr, sp, sq)


def _finish(report: ComparisonReport, P: Polygon, Qr: Polygon, sp: Spectrum,
            sq: Spectrum) -> ComparisonReport:
    a, b = sp.codes, sq.codes
    report.only_p = sorted(a - b)
    report.only_q = sorted(b - a)
    if report.only_p or report.only_q:
        report.verdict = "differ"
        return report
    report.verdict = "equal_to_depth"
    matched = [(sp.families[w], sq.families[w]) for w in sorted(a)]
    try:
        report.similarity = similarity_recover(P, Qr, matched)
    except InsufficientMatches as exc:
        report.note = str(exc)
    return report


def best_labeling(P: Polygon, Q: Polygon, L: int,
                  budget: int = DEFAULT_BUDGET) -> tuple[int, ComparisonReport]:
    """Try every cyclic identification of the sides.

    Q's spectrum is computed once and renumbered per offset.  Among equal
    offsets the least is returned and all are listed in the report;
    otherwise the offset with the fewest witnesses wins.
    """
    _check_sides(P, Q)
    k = P.k
    try:
        sp = enumerate_spectrum(P, L, budget)
        sq = enumerate_spectrum(Q, L, budget)
    except BudgetExceeded as exc:
        rep = ComparisonReport(L, "inconclusive_partial", 0, N_P=_n_of(P), N_Q=_n_of(Q),
                               note=str(exc))
        return 0, rep
    a = sp.codes
    scores = []
    for off in range(k):
        b = {relabel_word(w, off, k) for w in sq.codes}
        scores.append((len(a ^ b), off))
    equal = [off for n, off in scores if n == 0]
    best = equal[0] if equal else min(scores)[1]
    Qr = Q.relabeled(best)
    sq_r = Spectrum(Qr, L)
    for w, fam in sq.families.items():
        sq_r.families[relabel_word(w, best, k)] = fam
    rep = ComparisonReport(L, "differ", best, N_P=_n_of(P), N_Q=_n_of(Q), equal_offsets=equal)
    if equal:
        # families must carry Qr's numbering for the geometric fit
        sq_r = enumerate_spectrum(Qr, L, budget)
    return best, _finish(rep, P, Qr, sp, sq_r)


def _fit_conformal(X: np.ndarray, Y: np.ndarray) -> tuple[np.ndarray, bool, float]:
    """Best ``Y ~ A X`` with A a rotation-scaling, possibly composed with a flip."""
    zx = X[:, 0] + 1j * X[:, 1]
    zy = Y[:, 0] + 1j * Y[:, 1]
    best = None
    for reflected in (False, True):
        z = np.conj(zx) if reflected else zx
        c = np.vdot(z, zy) / np.vdot(z, z)
        res = float(np.max(np.abs(c * z - zy)))
        A = np.array([[c.real, -c.imag], [c.imag, c.real]])
        if reflected:
            A = A @ np.diag([1.0, -1.0])
        if best is None or res < best[2]:
            best = (A, reflected, res)
    return best


def similarity_recover(P: Polygon, Q: Polygon,
                       matched: Sequence[tuple[CylinderFamily, CylinderFamily]]) -> Similarity:
    """Map carrying P onto Q, fitted on the translation vectors of matched cylinders.

    When P's angles are multiples of pi/2 the fit is a general linear map,
    otherwise a rotation-scaling (with optional flip).  The result is
    accepted only if it sends P's vertices onto Q's vertices.
    """
    if len(matched) < 2:
        raise InsufficientMatches(f"{len(matched)} matched cylinders, need 2")
    X = np.array([[f.translation.x, f.translation.y] for f, _ in matched])
    Y = np.array([[g.translation.x, g.translation.y] for _, g in matched])
    if np.linalg.matrix_rank(X, tol=1e-9 * np.abs(X).max()) < 2:
        raise InsufficientMatches("all matched cylinders are parallel")
    if _n_of(P) == 2:
        At, *_ = np.linalg.lstsq(X, Y, rcond=None)
        A = At.T
        reflected = bool(np.linalg.det(A) < 0)
    else:
        A, reflected, _ = _fit_conformal(X, Y)

    pv = np.array(P.vertices)
    qv = np.array(Q.vertices)
    b = qv.mean(axis=0) - A @ pv.mean(axis=0)
    img = pv @ A.T + b
    # every image vertex must land on a distinct vertex of Q
    d = np.linalg.norm(img[:, None, :] - qv[None, :, :], axis=2)
    nearest = d.argmin(axis=1)
    residual = float(d.min(axis=1).max()) / Q.diameter()
    if len(set(nearest.tolist())) != len(qv) or residual >= EPS_SIM:
        raise InsufficientMatches(f"fitted map misses Q's vertices (residual {residual:.3g})")

    AtA = A.T @ A
    conformal = abs(AtA[0, 1]) <= EPS_SIM * AtA.trace() and \
        abs(AtA[0, 0] - AtA[1, 1]) <= EPS_SIM * AtA.trace()
    kind = "similar" if conformal else "affinely_similar"
    return Similarity(kind, _as_pairs(A), (float(b[0]), float(b[1])), residual, reflected)


def code_equivalence_probe(P: Polygon, Q: Polygon, u: PhasePoint, v: PhasePoint,
                           horizon: int) -> bool:
    """Do ``u`` on P and ``v`` on Q have the same itinerary for ``horizon`` steps?

    A finite check only: ``False`` is definite, ``True`` says nothing about
    later steps.  Orbits that both stop (corner or tangency) after the same
    symbols count as agreeing.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    a = iterate(P, u, horizon)
    b = iterate(Q, v, horizon)
    if a.itinerary.symbols != b.itinerary.symbols:
        return False
    return a.completed == b.completed
