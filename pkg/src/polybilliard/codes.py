"""Pillowcase codes: even cyclic words over side labels.

A code is stored in its canonical rotation (lexicographically least, least
index among ties).  Reversal is *not* an equivalence: ``(1,2,3,4)`` and
``(1,4,3,2)`` are different codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


class InvalidCode(ValueError):
    pass


class OddLength(InvalidCode):
    pass


class AdjacentRepeat(InvalidCode):
    pass


class BadSymbol(InvalidCode):
    pass


class LengthMismatch(ValueError):
    pass


def canonical_rotation(word: Sequence) -> tuple[int, tuple]:
    """Least rotation of ``word`` and the least index where it starts.

    Two-pointer scan over the doubled word, O(n).
    """
    w = tuple(word)
    n = len(w)
    if n == 0:
        raise ValueError("empty word has no rotation")
    i, j, k = 0, 1, 0
    while i < n and j < n and k < n:
        a, b = w[(i + k) % n], w[(j + k) % n]
        if a == b:
            k += 1
            continue
        if a > b:
            i += k + 1
        else:
            j += k + 1
        if i == j:
            j += 1
        k = 0
    r = min(i, j)
    return r, w[r:] + w[:r]


def canonical(word: Sequence) -> tuple:
    return canonical_rotation(word)[1]


def rotations(word: Sequence) -> list[tuple]:
    w = tuple(word)
    return [w[j:] + w[:j] for j in range(len(w))]


def has_cyclic_repeat(word: Sequence) -> bool:
    n = len(word)
    return any(word[i] == word[(i + 1) % n] for i in range(n)) if n > 1 else n == 1


@dataclass(frozen=True, order=True)
class PillowcaseCode:
    word: tuple[int, ...]

    def __len__(self):
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def __str__(self):
        return ",".join(str(c) for c in self.word)


def validate_code(word: Sequence[int], k: int) -> PillowcaseCode:
    w = tuple(int(c) for c in word)
    bad = [c for c in w if not 1 <= c <= k]
    if bad:
        raise BadSymbol(f"symbols {bad} not in 1..{k}")
    if len(w) == 0:
        raise InvalidCode("a code has length at least 2")
    if len(w) % 2:
        raise OddLength(f"code of odd length {len(w)}")
    for i in range(len(w)):
        if w[i] == w[(i + 1) % len(w)]:
            raise AdjacentRepeat(f"symbol {w[i]} repeated at positions {i}, {(i + 1) % len(w)}")
    return PillowcaseCode(canonical(w))


def codes_equivalent(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    return canonical(a) == canonical(b)


def itinerary_to_code(symbols: Sequence[int]) -> PillowcaseCode:
    """Code of the closed orbit whose exact period word is ``symbols``.

    An odd period word is doubled: the closed curve crosses the equator
    twice per period of the underlying orbit.
    """
    w = tuple(symbols)
    if not w:
        raise InvalidCode("empty period word")
    if has_cyclic_repeat(w):
        raise AdjacentRepeat(f"period word {w} repeats a symbol cyclically")
    if len(w) % 2:
        w = w + w
    return PillowcaseCode(canonical(w))


def primitive_root(word: Sequence) -> tuple:
    """Shortest ``u`` with ``word == u * (len(word) // len(u))``."""
    w = tuple(word)
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p]
    return w


def is_spectrum_word(word: Sequence) -> bool:
    """Words that stand for a primitive closed orbit: not a proper power,
    except the square of an odd word (an odd orbit's code)."""
    root = primitive_root(word)
    j = len(word) // len(root)
    return j == 1 or (j == 2 and len(root) % 2 == 1)


def _boundary_coords(points: Sequence[tuple[int, float]]) -> np.ndarray:
    return np.array([(side - 1) + s for side, s in points], dtype=float)


def combinatorial_order_equal(xs: Sequence[tuple[int, float]], ys: Sequence[tuple[int, float]],
                              horizon: int, k_x: int | None = None, k_y: int | None = None,
                              eps: float = 1e-9) -> bool:
    """Same combinatorial order of two boundary sequences up to ``horizon``.

    Points are ``(side, s)``.  For all ``a, b, c < horizon`` this checks
    ``x_a in [x_b, x_c]  <=>  y_a in [y_b, y_c]`` with ``[.,.]`` the closed
    counterclockwise arc.  ``k_x``/``k_y`` are the side counts (default:
    the largest side index present).
    """
    if len(xs) != len(ys):
        raise LengthMismatch(f"{len(xs)} vs {len(ys)} points")
    if len(xs) < 3:
        raise ValueError("need at least 3 points")
    h = min(horizon, len(xs))
    kx = k_x or max(p[0] for p in xs)
    ky = k_y or max(p[0] for p in ys)

    def arc_table(pts, k):
        x = _boundary_coords(pts[:h])
        # d[b, a]: counterclockwise distance from x_b to x_a
        d = (x[None, :] - x[:, None]) % k
        d[(d < eps) | (d > k - eps)] = 0.0
        # member[a, b, c] = x_a in [x_b, x_c]
        return d.T[:, :, None] <= d[None, :, :] + eps

    return bool(np.array_equal(arc_table(xs, kx), arc_table(ys, ky)))
