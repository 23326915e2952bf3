"""Line-oriented polygon documents.

::

    # comments start with '#'
    name: L-table
    vertices:
      0 0
      5 0
      ...
    labels: b r t i u l

or, instead of ``vertices:``, ``angles:`` (fractions ``m/n`` of pi, one per
vertex) together with ``lengths:``.  List values may follow the key on the
same line or come on the following lines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polygon import Polygon, from_exact_angles, validate_polygon

KEYS = ("name", "vertices", "angles", "lengths", "labels")


class ParseError(ValueError):
    pass


@dataclass
class PolygonDocument:
    name: str = ""
    vertices: Optional[list[tuple[float, float]]] = None
    angles: Optional[list[Fraction]] = None
    lengths: Optional[list[float]] = None
    labels: Optional[list[str]] = None

    def to_polygon(self) -> Polygon:
        if self.vertices is not None:
            return validate_polygon(self.vertices, labels=self.labels, name=self.name)
        return from_exact_angles(self.angles, self.lengths, labels=self.labels, name=self.name)


def _number(tok: str, lineno: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"line {lineno}: not a number: {tok!r}") from None


def _fraction(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"line {lineno}: not a fraction m/n: {tok!r}") from None


def parse_document(text: str) -> PolygonDocument:
    raw: dict[str, list[tuple[int, str]]] = {}
    name = ""
    current = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        if sep and key in KEYS:
            if key in raw or (key == "name" and name):
                raise ParseError(f"line {lineno}: duplicate key {key!r}")
            if key == "name":
                name = rest.strip()
                current = None
                continue
            raw[key] = []
            current = key
            line = rest.strip()
            if not line:
                continue
        elif current is None:
            raise ParseError(f"line {lineno}: expected 'key:' but got {line!r}")
        raw[current].append((lineno, line))

    doc = PolygonDocument(name=name)
    if ("vertices" in raw) == ("angles" in raw):
        raise ParseError("give exactly one of 'vertices:' or 'angles:'")
    if "vertices" in raw:
        if "lengths" in raw:
            raise ParseError("'lengths:' only goes with 'angles:'")
        tokens = [(n, t) for n, line in raw["vertices"] for t in line.replace(",", " ").split()]
        if len(tokens) % 2:
            raise ParseError("vertices need an even number of coordinates")
        nums = [_number(t, n) for n, t in tokens]
        doc.vertices = list(zip(nums[::2], nums[1::2]))
    else:
        if "lengths" not in raw:
            raise ParseError("'angles:' needs 'lengths:'")
        doc.angles = [_fraction(t, n) for n, line in raw["angles"] for t in line.split()]
        doc.lengths = [_number(t, n) for n, line in raw["lengths"] for t in line.split()]
    if "labels" in raw:
        doc.labels = [t for _, line in raw["labels"] for t in line.replace(",", " ").split()]
    return doc


def format_document(doc: PolygonDocument) -> str:
    out = []
    if doc.name:
        out.append(f"name: {doc.name}")
    if doc.vertices is not None:
        out.append("vertices:")
        out.extend(f"  {x!r} {y!r}" for x, y in doc.vertices)
    else:
        out.append("angles: " + " ".join(str(f) for f in doc.angles))
        out.append("lengths: " + " ".join(repr(float(x)) for x in doc.lengths))
    if doc.labels:
        out.append("labels: " + " ".join(doc.labels))
    return "\n".join(out) + "\n"


def polygon_document(P: Polygon) -> PolygonDocument:
    """Vertex-form document for a polygon (counterclockwise, as stored)."""
    return PolygonDocument(
        name=P.name,
        vertices=[(p.x, p.y) for p in P.vertices],
        labels=list(P.labels),
    )


def load_polygon(path: str) -> Polygon:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read()).to_polygon()
