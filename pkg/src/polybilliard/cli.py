"""Command-line driver.

Exit codes: 0 ok (``compare``: equal), 1 ``compare`` found a difference,
2 unreadable document or arguments, 3 invalid polygon, 4 the shot hits a
corner at once, 5 node budget exhausted, 6 side counts differ, 7 a code
repeats a symbol.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from typing import Optional, Sequence

from .billiard import CornerHit, Next, PhasePoint, Tangency, iterate, position, velocity
from .compare import SideCountMismatch, best_labeling, compare_spectra
from . import geometry
from .geometry import classify, set_incidence_tolerance
from .periodic import DEFAULT_BUDGET, BudgetExceeded, enumerate_spectrum, realize_word
from .polygon import InvalidPolygon, Polygon, rationality
from .svg import table_svg, unfolding_svg
from .textio import ParseError, load_polygon
from .unfolding import RepeatedSymbol, find_saddle_connections, unfold_code

EXIT_DIFFER = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_CORNER = 4
EXIT_BUDGET = 5
EXIT_SIDES = 6
EXIT_REPEAT = 7


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str) -> Polygon:
    try:
        return load_polygon(path)
    except OSError as exc:
        raise _Fail(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise _Fail(EXIT_PARSE, f"{path}: {exc}") from None
    except InvalidPolygon as exc:
        raise _Fail(EXIT_INVALID, f"{path}: {type(exc).__name__}: {exc}") from None
    except ValueError as exc:
        raise _Fail(EXIT_INVALID, f"{path}: {exc}") from None


def _word(P: Polygon, text: str) -> tuple[int, ...]:
    try:
        return P.parse_word(text)
    except KeyError as exc:
        raise _Fail(EXIT_PARSE, str(exc.args[0])) from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _angle(args, value: float) -> float:
    return value if args.radians else math.radians(value)


def _fmt_angle(args, value: float) -> str:
    return f"{value if args.radians else math.degrees(value):.9g}"


def cmd_validate(args) -> int:
    P = _load(args.file)
    info = rationality(P)
    angles = " ".join(_fmt_angle(args, a) for a in P.interior_angles())
    verdict = f"rational N={info.N}" if info.is_rational else info.kind
    print(f"k={P.k} {verdict}")
    print(f"angles: {angles}")
    if info.fractions:
        print("angles/pi: " + " ".join(str(f) for f in info.fractions))
    print("labels: " + " ".join(P.labels))
    if P.was_clockwise:
        print("note: vertices were clockwise and have been reversed")
    return 0


def cmd_simulate(args) -> int:
    P = _load(args.file)
    if args.random:
        rng = random.Random(args.seed)
        side = rng.randint(1, P.k)
        s = rng.uniform(0.05, 0.95)
        theta = rng.uniform(-1.4, 1.4)
    else:
        if args.side is None or args.s is None or args.theta is None:
            raise _Fail(EXIT_PARSE, "simulate needs SIDE S THETA (or --random)")
        side = _word(P, args.side)[0]
        s, theta = args.s, _angle(args, args.theta)
    try:
        u = PhasePoint(side, s, theta)
    except ValueError as exc:
        raise _Fail(EXIT_PARSE, str(exc)) from None
    orbit = iterate(P, u, args.n)
    print(P.format_word(orbit.itinerary.symbols))
    out = orbit.outcome
    if isinstance(out, CornerHit):
        print(f"stopped: corner at vertex {out.vertex} after {orbit.completed} steps")
    elif isinstance(out, Tangency):
        print(f"stopped: grazing side {P.label(out.side)} after {orbit.completed} steps")
    else:
        print(f"completed {orbit.completed} steps")
    if args.svg:
        pts = [position(P, v) for v in orbit.points]
        if not isinstance(out, Next):
            # draw the last flight up to the corner or the tangency
            last = orbit.points[-1]
            x, d = position(P, last), velocity(P, last)
            pts.append((x[0] + out.time * d[0], x[1] + out.time * d[1]))
        _write(args.svg, table_svg(P, pts))
    if isinstance(out, CornerHit) and orbit.completed == 0:
        return EXIT_CORNER
    return 0


def cmd_spectrum(args) -> int:
    P = _load(args.file)
    if args.L < 2 or args.L % 2:
        raise _Fail(EXIT_PARSE, "L must be an even number >= 2")
    try:
        spec = enumerate_spectrum(P, args.L, args.budget)
        code = 0
    except BudgetExceeded as exc:
        spec = exc.partial
        code = EXIT_BUDGET
    _write(args.out, spec.serialize())
    tag = " (partial)" if spec.partial else ""
    # keep stdout clean when it carries the spectrum itself
    stream = sys.stdout if args.out else sys.stderr
    print(f"{len(spec)} codes up to length {args.L}{tag}", file=stream)
    return code


def cmd_compare(args) -> int:
    P, Q = _load(args.p), _load(args.q)
    if args.L < 2 or args.L % 2:
        raise _Fail(EXIT_PARSE, "L must be an even number >= 2")
    try:
        if args.labeling == "auto":
            _, report = best_labeling(P, Q, args.L, args.budget)
        else:
            try:
                offset = int(args.labeling)
            except ValueError:
                raise _Fail(EXIT_PARSE, "--labeling takes 'auto' or an integer offset") from None
            report = compare_spectra(P, Q, args.L, offset, args.budget)
    except SideCountMismatch as exc:
        raise _Fail(EXIT_SIDES, f"SideCountMismatch: {exc}") from None
    sys.stdout.write(report.serialize())
    if report.verdict == "inconclusive_partial":
        return EXIT_BUDGET
    return 0 if report.equal else EXIT_DIFFER


def cmd_unfold(args) -> int:
    P = _load(args.file)
    w = _word(P, args.code)
    if not w:
        raise _Fail(EXIT_PARSE, "empty code")
    try:
        corridor = unfold_code(P, w)
    except RepeatedSymbol as exc:
        raise _Fail(EXIT_REPEAT, f"RepeatedSymbol: {exc}") from None
    except ValueError as exc:
        raise _Fail(EXIT_PARSE, str(exc)) from None
    print(f"copies: {len(corridor.frames)}")
    print(f"terminal: {classify(corridor.terminal).describe()}")
    if w[-1] == w[0] and len(w) > 1:
        print("note: last symbol equals the first, the word does not close up cyclically")
    fam = realize_word(P, w, corridor)
    chords = []
    if fam:
        lo, hi = fam.interval
        print(f"interval: {lo:.12g} {hi:.12g}")
        print(f"direction: {_fmt_angle(args, math.atan2(fam.direction.y, fam.direction.x))}")
        print(f"length: {fam.length:.12g} width: {fam.width:.12g}")
        x0 = P.point_on_side(w[0], fam.interval.mid())
        chords.append((x0, (x0.x + fam.translation.x, x0.y + fam.translation.y)))
    else:
        print(f"{fam.reason}: {fam.detail}")
    if args.svg:
        _write(args.svg, unfolding_svg(P, corridor, chords, title=P.format_word(w)))
    return 0


def cmd_saddle(args) -> int:
    P = _load(args.file)
    if args.depth < 1:
        raise _Fail(EXIT_PARSE, "depth must be at least 1")
    for sc in find_saddle_connections(P, args.depth):
        code = P.format_word(sc.code) if sc.code else "-"
        print(f"{sc.start} {sc.end} {code} {_fmt_angle(args, sc.direction)} {sc.length:.12g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="incidence tolerance (default 1e-9)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="DFS node cap")
    common.add_argument("--seed", type=int, default=0, help="seed for --random shots")
    common.add_argument("--radians", action="store_true", help="angles in radians, not degrees")

    ap = argparse.ArgumentParser(prog="polybilliard", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a polygon document")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("simulate", parents=[common], help="iterate the billiard map")
    p.add_argument("file")
    p.add_argument("side", nargs="?", help="side index or label")
    p.add_argument("s", nargs="?", type=float, help="foot parameter in (0, 1)")
    p.add_argument("theta", nargs="?", type=float, help="angle from the inward normal")
    p.add_argument("n", nargs="?", type=int, default=10, help="number of bounces")
    p.add_argument("--random", action="store_true", help="random start from --seed")
    p.add_argument("--svg", help="write a picture of the orbit")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spectrum", parents=[common], help="codes of periodic cylinders")
    p.add_argument("file")
    p.add_argument("L", type=int, help="maximal code length (even)")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("compare", parents=[common], help="compare two tables' codes")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("L", type=int)
    p.add_argument("--labeling", default="0", help="'auto' or a cyclic side offset")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("unfold", parents=[common], help="unfold a code into a corridor")
    p.add_argument("file")
    p.add_argument("code", help="comma-separated side labels")
    p.add_argument("--svg", help="write a picture of the corridor")
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("saddle", parents=[common], help="list saddle connections")
    p.add_argument("file")
    p.add_argument("depth", type=int, help="maximal number of flights")
    p.set_defaults(func=cmd_saddle)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else 0
    saved = geometry.EPS_GEOM
    try:
        if args.tol is not None:
            set_incidence_tolerance(args.tol)
        return args.func(args)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    finally:
        set_incidence_tolerance(saved)


if __name__ == "__main__":
    sys.exit(main())
