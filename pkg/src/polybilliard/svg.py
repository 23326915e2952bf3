"""Plain SVG pictures of tables, orbits and unfoldings.

Output depends only on the inputs: coordinates are printed with a fixed
number of digits and elements are emitted in a fixed order.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence
from xml.sax.saxutils import escape

from . import __version__
from .polygon import Polygon
from .unfolding import Corridor

_PAD = 0.08


def _fmt(v: float) -> str:
    s = f"{v:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Canvas:
    def __init__(self, points: Iterable[Sequence[float]], size: float = 600.0):
        pts = list(points)
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        span = max(self.x1 - self.x0, self.y1 - self.y0) or 1.0
        self.scale = size / span
        self.pad = _PAD * size
        self.w = (self.x1 - self.x0) * self.scale + 2 * self.pad
        self.h = (self.y1 - self.y0) * self.scale + 2 * self.pad
        self.items: list[str] = []

    def xy(self, p) -> str:
        # flip y so the picture has the usual orientation
        x = (p[0] - self.x0) * self.scale + self.pad
        y = (self.y1 - p[1]) * self.scale + self.pad
        return f"{_fmt(x)},{_fmt(y)}"

    def polygon(self, pts, **attrs):
        self.items.append(f'<polygon points="{" ".join(self.xy(p) for p in pts)}"{_attrs(attrs)}/>')

    def polyline(self, pts, **attrs):
        self.items.append(f'<polyline points="{" ".join(self.xy(p) for p in pts)}"{_attrs(attrs)}/>')

    def line(self, a, b, **attrs):
        (x1, y1), (x2, y2) = self.xy(a).split(","), self.xy(b).split(",")
        self.items.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"{_attrs(attrs)}/>')

    def text(self, p, s: str, **attrs):
        x, y = self.xy(p).split(",")
        self.items.append(f'<text x="{x}" y="{y}"{_attrs(attrs)}>{escape(s)}</text>')

    def render(self, title: str) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_fmt(self.w)}" height="{_fmt(self.h)}" '
            f'viewBox="0 0 {_fmt(self.w)} {_fmt(self.h)}">\n'
            f"<title>{escape(title)}</title>\n"
            f"<desc>polybilliard {escape(__version__)}</desc>\n"
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


def _attrs(attrs: dict) -> str:
    return "".join(f' {k.replace("_", "-")}="{escape(str(v))}"' for k, v in attrs.items())


def _side_labels(c: _Canvas, P: Polygon, vertices: Sequence[Sequence[float]], size: int):
    cx = sum(p[0] for p in vertices) / len(vertices)
    cy = sum(p[1] for p in vertices) / len(vertices)
    for i in range(P.k):
        a, b = vertices[i], vertices[(i + 1) % P.k]
        mx, my = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
        # nudge the label a little towards the centroid
        p = (mx + 0.06 * (cx - mx), my + 0.06 * (cy - my))
        c.text(p, P.labels[i], font_size=size, text_anchor="middle", fill="#333")


def table_svg(P: Polygon, orbit: Optional[Sequence[Sequence[float]]] = None,
              title: str = "") -> str:
    """The table with labelled sides and, optionally, an orbit polyline."""
    pts = list(P.vertices) + list(orbit or [])
    c = _Canvas(pts)
    c.polygon(P.vertices, fill="#f4f1e8", stroke="black", stroke_width=2)
    _side_labels(c, P, P.vertices, 16)
    if orbit:
        c.polyline(orbit, fill="none", stroke="#c0392b", stroke_width=1.5)
        c.text(orbit[0], "start", font_size=11, fill="#c0392b")
    return c.render(title or P.name or "billiard table")


def unfolding_svg(P: Polygon, corridor: Corridor,
                  chords: Sequence[tuple[Sequence[float], Sequence[float]]] = (),
                  title: str = "") -> str:
    """Chain of reflected copies with the gates drawn thick and up to two chords.

    The first chord is solid, a second one dashed.
    """
    copies = [corridor.copy(P, i) for i in range(len(corridor.frames))]
    pts = [p for cp in copies for p in cp]
    for a, b in chords:
        pts += [a, b]
    c = _Canvas(pts)
    for i, cp in enumerate(copies):
        fill = "#f4f1e8" if i % 2 == 0 else "#e8eef4"
        c.polygon(cp, fill=fill, stroke="#555", stroke_width=1)
    for a, b in corridor.gates:
        c.line(a, b, stroke="#2c7a3f", stroke_width=3)
    styles = [{}, {"stroke_dasharray": "6,4"}]
    for (a, b), extra in zip(chords, styles):
        c.line(a, b, stroke="#c0392b", stroke_width=1.5, **extra)
    return c.render(title or "unfolding")
