"""Command line surface: direction reports, orbit printing, batch
verification and SVG rendering.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import analysis, orbits, periods, tracer
from .directions import (
    BOTTOM,
    DirectionIndex,
    coordinate_of_index,
    index_strings_to_depth,
)
from .golden import GoldenNum
from .orbits import orbit_of_index, roman_of_arabic, vector_of
from .periods import child_periods, period_of_index
from .tracer import periodic_orbits_for_coordinate

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _parse_index(digits: list[str]) -> DirectionIndex:
    try:
        if digits == ["bottom"]:
            return BOTTOM
        return DirectionIndex.from_digits(int(d) for d in digits)
    except ValueError as e:
        raise SystemExit(EXIT_USAGE) from e


def _coord_json(x) -> dict:
    if x.is_infinity:
        return {"infinity": True}
    return {"coeffs": x.value.to_json(), "decimal": str(x.value.to_decimal(20))}


def cmd_direction(args) -> int:
    idx = _parse_index(args.index)
    coord = coordinate_of_index(idx)
    pp = period_of_index(idx)
    sv = vector_of(orbit_of_index(idx, "short"))
    lv = vector_of(orbit_of_index(idx, "long"))
    mult = analysis.billiard_multiplier(sv)
    if args.json:
        out = {
            "index": str(idx),
            "coordinate": _coord_json(coord),
            "periods": {"short": pp.short, "long": pp.long,
                        "arabic": list(pp.arabic)},
            "vectors": {"short": sv.as_tuple(), "long": lv.as_tuple()},
            "billiard_multiplier": mult,
        }
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(f"index:       {idx}")
        print(f"coordinate:  {coord}" + (
            "" if coord.is_infinity else f"  ({coord.value.to_decimal(15)})"))
        print(f"periods:     short {pp.short}, long {pp.long} "
              f"(arabic {pp.arabic[0]}, {pp.arabic[1]})")
        print(f"vectors:     short {sv}, long {lv}")
        print(f"multiplier:  {mult}")
    return EXIT_OK


def cmd_orbit(args) -> int:
    idx = _parse_index(args.index)
    kind = "long" if args.long else "short"
    w = orbit_of_index(idx, kind)
    if args.roman:
        w = roman_of_arabic(w)
    if args.json:
        print(json.dumps({"index": str(idx), "kind": kind,
                          "alphabet": "roman" if args.roman else "arabic",
                          "word": list(w.symbols)}))
    else:
        print(w)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites


def _all_indices(depth: int) -> list[DirectionIndex]:
    seen = {}
    for s in index_strings_to_depth(depth):
        idx = DirectionIndex.from_digits(s)
        seen.setdefault(str(idx), idx)
    return [seen[k] for k in sorted(seen)]


def _period_via_tree(digits: tuple[int, ...]):
    """Period pair by descending the arc recursion, independent of the
    digit-matrix product."""
    left = right = periods.PeriodPair(1, 1)
    if not digits:
        return left
    for d in digits[:-1]:
        kids = child_periods(left, right)
        bounds = [left, *kids, right]
        left, right = bounds[d], bounds[d + 1]
    return child_periods(left, right)[digits[-1] - 1]


def _suite_periods(depth: int) -> list[dict]:
    """Digit-matrix periods against the arc recursion, every index string."""
    rows = []
    for s in index_strings_to_depth(depth):
        idx = DirectionIndex.from_digits(s)
        got = period_of_index(idx)
        want = _period_via_tree(idx.digits)
        rows.append({"case": "".join(map(str, s)), "ok": got == want,
                     "got": got.as_tuple(), "want": want.as_tuple()})
    return rows


def _suite_table(depth: int) -> list[dict]:
    table = {
        (): (1, 1), (0, 1): (3, 5), (0, 2): (4, 7), (0, 3): (4, 6),
        (1,): (2, 3), (1, 1): (5, 9), (1, 2): (7, 11), (1, 3): (6, 9),
        (2,): (2, 4),
    }
    rows = []
    for digits, want in table.items():
        got = period_of_index(DirectionIndex(digits)).as_tuple()
        rows.append({"case": "".join(map(str, digits)) or "()",
                     "ok": got == want, "got": got, "want": want})
    return rows


def _suite_m_relation(depth: int) -> list[dict]:
    rows = []
    for idx in _all_indices(depth):
        sv, lv = orbits.vectors_of_index(idx)
        pp = period_of_index(idx)
        ok = (orbits.check_M(sv, lv)
              and sv.period == pp.short and lv.period == pp.long)
        rows.append({"case": str(idx), "ok": ok,
                     "short": sv.as_tuple(), "long": lv.as_tuple()})
    return rows


def _suite_reduction(depth: int) -> list[dict]:
    rows = []
    for idx in _all_indices(depth):
        if idx.generation < 2:
            continue
        parent = orbits.reduction_parent(idx)
        shift = (4 - idx.digits[0]) % 5
        for kind in ("short", "long"):
            w = orbit_of_index(idx, kind)
            red = orbits.rotate_alphabet(orbits.reduce_word(w), shift)
            ok = red == orbit_of_index(parent, kind)
            rows.append({"case": f"{idx}:{kind}", "ok": ok})
    return rows


def _suite_oracle(depth: int) -> list[dict]:
    rows = []
    for idx in _all_indices(depth):
        x = coordinate_of_index(idx).value
        pp = period_of_index(idx)
        try:
            s_tr, l_tr = periodic_orbits_for_coordinate(x, expected_long=pp.long)
        except tracer.TraceBudgetExceeded as e:
            rows.append({"case": str(idx), "ok": False, "error": str(e)})
            continue
        ws = orbit_of_index(idx, "short")
        wl = orbit_of_index(idx, "long")
        ok = (
            s_tr.word == ws and l_tr.word == wl
            and len(roman_of_arabic(ws)) == pp.short
            and len(roman_of_arabic(wl)) == pp.long
            and len(ws) == 2 * pp.short and len(wl) == 2 * pp.long
        )
        rows.append({"case": str(idx), "ok": ok})
    return rows


def _suite_displacement(depth: int) -> list[dict]:
    rows = []
    phi = tracer._pn(GoldenNum.of(0, 1))
    for idx in _all_indices(depth):
        x = coordinate_of_index(idx).value
        sv, lv = orbits.vectors_of_index(idx)
        ds = analysis.displacement(sv)
        dl = analysis.displacement(lv)
        prop = (dl - ds.scale(phi)).is_zero()
        ok = (analysis.length_identity_holds(sv, x)
              and analysis.length_identity_holds(lv, x) and prop)
        rows.append({"case": str(idx), "ok": ok})
    return rows


def _suite_billiard(depth: int) -> list[dict]:
    rows = []
    for idx in _all_indices(depth):
        rep = analysis.billiard_report(idx)
        rows.append({"case": str(idx), "ok": rep.passed,
                     "multiplier": rep.multiplier})
    return rows


def _suite_conjectures(depth: int) -> list[dict]:
    rows = []
    prefixes = [()]
    all_prefixes = [()]
    for _ in range(depth):
        prefixes = [p + (j,) for p in prefixes for j in range(4)]
        all_prefixes.extend(prefixes)
    from .directions import arc_left_vertex, arc_right_vertex
    for p in all_prefixes:
        rep = analysis.check_conjecture_concat(arc_left_vertex(p), arc_right_vertex(p))
        rows.append({"case": f"concat:{rep.subject}", "ok": rep.passed})
    for idx in _all_indices(depth) + [DirectionIndex(), BOTTOM]:
        rep = analysis.check_conjecture_splitting(idx, radius=1)
        rows.append({"case": f"split:{rep.subject}", "ok": rep.passed})
    return rows


SUITES = {
    "periods": _suite_periods,
    "table": _suite_table,
    "m-relation": _suite_m_relation,
    "reduction": _suite_reduction,
    "orbits-vs-oracle": _suite_oracle,
    "displacement": _suite_displacement,
    "billiard": _suite_billiard,
    "conjectures": _suite_conjectures,
}


def cmd_verify(args) -> int:
    if args.depth < 1:
        print("verify: depth must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if args.depth > args.max_depth:
        print(f"verify: depth {args.depth} exceeds the hard limit "
              f"{args.max_depth} (raise with --max-depth)", file=sys.stderr)
        return EXIT_USAGE
    names = args.suite or [s for s in SUITES if s != "table"]
    for n in names:
        if n not in SUITES:
            print(f"verify: unknown suite {n}", file=sys.stderr)
            return EXIT_USAGE
    names = sorted(set(names))
    ledger = {}
    failures = 0
    conjecture_failures = 0
    try:
        if args.workers > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=args.workers) as pool:
                results = dict(zip(names, pool.map(
                    lambda n: SUITES[n](args.depth), names)))
        else:
            results = {n: SUITES[n](args.depth) for n in names}
    except tracer.TraceBudgetExceeded as e:
        print(f"verify: budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    for n in names:
        rows = results[n]
        rows.sort(key=lambda r: str(r.get("case", "")))
        bad = [r for r in rows if not r["ok"]]
        ledger[n] = {"checked": len(rows), "failures": len(bad), "rows": rows}
        if n == "conjectures":
            conjecture_failures += len(bad)
        else:
            failures += len(bad)
        print(f"suite {n}: {len(rows)} checked, {len(bad)} failures")
    if args.json_out:
        with open(args.json_out, "w") as f:
            json.dump(ledger, f, indent=2, sort_keys=True)
    if failures:
        return EXIT_VERIFY
    if conjecture_failures and not args.conjectures_advisory:
        return EXIT_VERIFY
    return EXIT_OK


# ---------------------------------------------------------------------------
# rendering


def _fmt(v) -> str:
    return f"{float(v):.15g}"


def _svg_header(xmin, ymin, xmax, ymax) -> list[str]:
    pad = 0.15 * max(xmax - xmin, ymax - ymin)
    x0, y0 = xmin - pad, ymin - pad
    w, h = (xmax - xmin) + 2 * pad, (ymax - ymin) + 2 * pad
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="640" height="{640 * h / w:.0f}" '
        f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}">',
        f'<g transform="translate(0,{_fmt(2 * y0 + h)}) scale(1,-1)">',
    ]


def _svg_polygon(points, color, width=0.01) -> str:
    pts = " ".join(f"{_fmt(float(p.x))},{_fmt(float(p.y))}" for p in points)
    return (f'<polygon points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"/>')


def _svg_polyline(points, color, width=0.012) -> str:
    pts = " ".join(f"{x:.15g},{y:.15g}" for x, y in points)
    return (f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="{width}"/>')


def _surface_segments(result, direction):
    """Fold the trace back into segments inside the two pentagons."""
    segs = []
    pos = result.start
    pent = tracer.locate_pentagon(pos)
    d = direction
    n = result.crossings
    for _ in range(n):
        side, hit, _t = tracer._exit_side(pos, d, pent)
        segs.append(((float(pos.x), float(pos.y)), (float(hit.x), float(hit.y))))
        pos = hit + side.translation
        pent = 1 - pent
    if result.closed:
        segs.append(((float(pos.x), float(pos.y)),
                     (float(result.start.x), float(result.start.y))))
    return segs


def cmd_render(args) -> int:
    lines = []
    bounds = None

    def draw_trace(res, direction, color):
        for (x0, y0), (x1, y1) in _surface_segments(res, direction):
            lines.append(_svg_polyline([(x0, y0), (x1, y1)], color))

    if args.u is not None:
        from .directions import in_closed_sector
        from .golden import ProjectivePoint

        x = GoldenNum.of(Fraction(args.u))
        if not in_closed_sector(ProjectivePoint(x)):
            print("render: --u must lie in the closed principal sector",
                  file=sys.stderr)
            return EXIT_USAGE
    elif args.index is not None:
        idx = _parse_index(args.index)
        x = coordinate_of_index(idx).value
    else:
        print("render: need an index or --u", file=sys.stderr)
        return EXIT_USAGE

    try:
        from .directions import index_of_coordinate
        pp = period_of_index(index_of_coordinate(x))
    except Exception:
        pp = None
    expected = pp.long if pp else None

    if args.billiard:
        direction = tracer.direction_of_coordinate(x)
        try:
            s_tr, l_tr = periodic_orbits_for_coordinate(x, expected_long=expected)
        except tracer.TraceBudgetExceeded as e:
            print(f"render: {e}", file=sys.stderr)
            return EXIT_BUDGET
        sv = vector_of(s_tr.word)
        mult = analysis.billiard_multiplier(sv)
        cap = 10 * mult * 2 * (expected or 40) * 2 + 40
        res = tracer.trace_billiard(s_tr.start, direction, max_reflections=cap)
        pts = [(float(res.start.x), float(res.start.y))]
        pos, d = res.start, direction
        labels = res.word.symbols if res.closed else res.word
        for _ in range(len(labels)):
            side, hit, _t = tracer._exit_side(pos, d, 0)
            pts.append((float(hit.x), float(hit.y)))
            refl = tracer._reflect_matrix(side.v1 - side.v0)
            d = tracer._mat_apply(refl, d)
            pos = hit
        if res.closed:
            pts.append((float(res.start.x), float(res.start.y)))
        else:
            lines.append('<!-- warning: orbit did not close within budget -->')
        lines.append(_svg_polygon(tracer.PENTAGON_UPPER, "#333333"))
        lines.append(_svg_polyline(pts, "#c02020"))
        verts = list(tracer.PENTAGON_UPPER)
    else:
        try:
            s_tr, l_tr = periodic_orbits_for_coordinate(x, expected_long=expected)
        except tracer.TraceBudgetExceeded as e:
            print(f"render: {e}", file=sys.stderr)
            return EXIT_BUDGET
        direction = tracer.direction_of_coordinate(x)
        lines.append(_svg_polygon(tracer.PENTAGON_UPPER, "#333333"))
        lines.append(_svg_polygon(tracer.PENTAGON_LOWER, "#333333"))
        draw_trace(s_tr, direction, "#c02020")
        draw_trace(l_tr, direction, "#2040c0")
        verts = list(tracer.PENTAGON_UPPER) + list(tracer.PENTAGON_LOWER)

    xs = [float(v.x) for v in verts]
    ys = [float(v.y) for v in verts]
    out = _svg_header(min(xs), min(ys), max(xs), max(ys))
    out.extend(lines)
    out.append("</g></svg>")
    with open(args.out, "w") as f:
        f.write("\n".join(out) + "\n")
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pentaflow",
                                description="periodic directions, orbits and "
                                            "exact traces on the double pentagon")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("direction", help="report on one periodic direction")
    d.add_argument("index", nargs="*", help="digit string, empty for the top corner")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_direction)

    o = sub.add_parser("orbit", help="print a symbolic orbit")
    o.add_argument("index", nargs="*")
    g = o.add_mutually_exclusive_group()
    g.add_argument("--short", action="store_true", default=True)
    g.add_argument("--long", action="store_true")
    a = o.add_mutually_exclusive_group()
    a.add_argument("--arabic", action="store_true", default=True)
    a.add_argument("--roman", action="store_true")
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_orbit)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--depth", type=int, required=True)
    v.add_argument("--max-depth", type=int, default=8,
                   help="hard limit on --depth (default 8)")
    v.add_argument("--suite", action="append",
                   help=f"one of {', '.join(sorted(SUITES))}; repeatable")
    v.add_argument("--json-out", help="write the ledger as JSON")
    v.add_argument("--workers", type=int, default=1,
                   help="suites to run concurrently (results are sorted, "
                        "so the ledger is identical at any level)")
    v.add_argument("--conjectures-advisory", action="store_true",
                   help="conjecture failures do not affect the exit code")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="render an orbit as SVG")
    r.add_argument("index", nargs="*")
    r.add_argument("--u", help="section parameter instead of an index (rational)")
    m = r.add_mutually_exclusive_group()
    m.add_argument("--surface", action="store_true", default=True)
    m.add_argument("--billiard", action="store_true")
    r.add_argument("--out", default="orbit.svg")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as e:
        raise
    except tracer.TraceBudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
