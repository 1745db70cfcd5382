"""Ground-truth tracing: exact linear flow on the double pentagon, exact
billiards in the regular pentagon, and the section interval exchange.

The surface is two centrally symmetric unit pentagons sharing a horizontal
side, with the remaining sides identified pairwise by translation.  All
geometry runs over PentaNum, so side hits, closure and displacement are
decided exactly.  Side labels and the interval conventions are fixed once
by calibration (see CONVENTIONS.md) and frozen here as constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .golden import (
    GoldenNum,
    P_ZERO,
    PentaNum,
    ZERO,
)
from .orbits import CyclicWord, roman_of_arabic

PHI = GoldenNum.of(0, 1)
HALF = GoldenNum.of(Fraction(1, 2))
ONE = GoldenNum.of(1)


class SaddleConnectionError(RuntimeError):
    """The trajectory ran into a cone point."""


class TraceBudgetExceeded(RuntimeError):
    pass


class SingularOrbit(RuntimeError):
    """A section orbit hit a division point."""


def _g(a, b=0) -> GoldenNum:
    return GoldenNum.of(Fraction(a), Fraction(b))


def _pn(g: GoldenNum) -> PentaNum:
    return PentaNum(g, ZERO)


def _ps(g: GoldenNum) -> PentaNum:
    # a pure multiple of sin 36
    return PentaNum(ZERO, g)


@dataclass(frozen=True)
class PlanePoint:
    x: PentaNum
    y: PentaNum

    def __add__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "PlanePoint") -> "PlanePoint":
        return PlanePoint(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "PlanePoint":
        return PlanePoint(-self.x, -self.y)

    def scale(self, k: PentaNum) -> "PlanePoint":
        return PlanePoint(self.x * k, self.y * k)

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def cross(a: PlanePoint, b: PlanePoint) -> PentaNum:
    return a.x * b.y - a.y * b.x


def dot(a: PlanePoint, b: PlanePoint) -> PentaNum:
    return a.x * b.x + a.y * b.y


# ---------------------------------------------------------------------------
# the chart: unit pentagon with a horizontal diagonal plus its central mirror

_A = PlanePoint(_pn(_g(0, Fraction(1, 2))), _ps(ONE))            # apex
_B = PlanePoint(_pn(ZERO), _pn(ZERO))
_D = PlanePoint(_pn(_g(Fraction(-1, 2), Fraction(1, 2))), _ps(_g(0, -1)))
_E = PlanePoint(_pn(_g(Fraction(1, 2), Fraction(1, 2))), _ps(_g(0, -1)))
_C = PlanePoint(_pn(PHI), _pn(ZERO))

#: vertices of the upper pentagon, counterclockwise
PENTAGON_UPPER = (_A, _B, _D, _E, _C)

#: offset taking -V onto the lower copy
_T0 = PlanePoint(_pn(PHI), _ps(_g(0, -2)))

PENTAGON_LOWER = tuple(-v + _T0 for v in PENTAGON_UPPER)

#: side labels around the pentagon, frozen by calibration: the two strip
#: words of each boundary direction parse to the expected interval symbols
SIDE_LABELS = {"AB": 2, "BD": 5, "DE": 3, "EC": 1, "CA": 4}

_SIDE_ORDER = (("AB", 0, 1), ("BD", 1, 2), ("DE", 2, 3), ("EC", 3, 4), ("CA", 4, 0))


@dataclass(frozen=True)
class Side:
    name: str
    label: int
    v0: PlanePoint
    v1: PlanePoint
    translation: PlanePoint  # jump applied when crossing, either copy


def _build_sides() -> tuple[tuple[Side, ...], tuple[Side, ...]]:
    upper = []
    lower = []
    for name, i, j in _SIDE_ORDER:
        label = SIDE_LABELS[name]
        for verts, bucket in ((PENTAGON_UPPER, upper), (PENTAGON_LOWER, lower)):
            v0, v1 = verts[i], verts[j]
            t = _T0 - v0 - v1
            bucket.append(Side(name, label, v0, v1, t))
    return tuple(upper), tuple(lower)


SIDES_UPPER, SIDES_LOWER = _build_sides()
_SIDES = (SIDES_UPPER, SIDES_LOWER)

#: the diagonals bounding the principal sector, length phi each
U_VEC = PlanePoint(_pn(HALF), _ps(_g(1, 1)))
V_VEC = PlanePoint(_pn(-HALF), _ps(_g(1, 1)))


SIN36_Y = _ps(ONE)


def direction_of_coordinate(x: GoldenNum) -> PlanePoint:
    """Exact plane direction for a boundary coordinate in the closed sector."""
    return PlanePoint(_pn(x), SIN36_Y)


def direction_of_vector(p: GoldenNum, q: GoldenNum) -> PlanePoint:
    """p times the upper sector diagonal plus q times the lower one."""
    if p.is_zero() and q.is_zero():
        raise ValueError("zero vector has no direction")
    return U_VEC.scale(_pn(p)) + V_VEC.scale(_pn(q))


def _point_in_pentagon(p: PlanePoint, verts: tuple[PlanePoint, ...]) -> bool:
    n = len(verts)
    for i in range(n):
        v0, v1 = verts[i], verts[(i + 1) % n]
        if cross(v1 - v0, p - v0).sign() <= 0:
            return False
    return True


def locate_pentagon(p: PlanePoint) -> int:
    if _point_in_pentagon(p, PENTAGON_UPPER):
        return 0
    if _point_in_pentagon(p, PENTAGON_LOWER):
        return 1
    raise ValueError("point is not strictly inside either pentagon")


def _exit_side(pos: PlanePoint, direction: PlanePoint, pent: int):
    """First side hit by the ray; returns (side, hit point, t)."""
    best = None
    for side in _SIDES[pent]:
        w = side.v1 - side.v0
        den = cross(direction, w)
        if den.is_zero():
            continue
        rel = side.v0 - pos
        t = cross(rel, w) / den
        if t.sign() <= 0:
            continue
        theta = cross(rel, direction) / den
        # theta must lie in [0, 1]; hits at the ends are cone points
        ts = theta.sign()
        if ts < 0 or (theta - PENT_ONE).sign() > 0:
            continue
        if best is None or (t - best[2]).sign() < 0:
            if ts == 0 or (theta - PENT_ONE).is_zero():
                best = (side, None, t)  # vertex hit candidate
            else:
                hit = pos + direction.scale(t)
                best = (side, hit, t)
    if best is None:
        raise SaddleConnectionError("ray leaves through no side (degenerate)")
    if best[1] is None:
        raise SaddleConnectionError("trajectory hits a cone point")
    return best


PENT_ONE = PentaNum(ONE, ZERO)


def _passes_through(pos: PlanePoint, target: PlanePoint,
                    direction: PlanePoint) -> bool:
    """Does the forward ray from pos pass through target (strictly before
    leaving)?  Caller guarantees target is interior, so t < t_exit."""
    rel = target - pos
    if not cross(rel, direction).is_zero():
        return False
    if not direction.x.is_zero():
        t = rel.x / direction.x
    else:
        t = rel.y / direction.y
    return t.sign() >= 0


@dataclass(frozen=True)
class TraceResult:
    """Outcome of an exact trace.

    word is cyclic when the orbit closed, otherwise the crossing prefix.
    displacement is the unfolded end minus start; for a closed orbit its
    squared norm is the exact squared length.
    """

    word: CyclicWord | tuple[int, ...]
    closed: bool
    displacement: tuple[PentaNum, PentaNum]
    crossings: int
    start: PlanePoint
    direction: PlanePoint

    @property
    def length_squared(self) -> GoldenNum:
        dx, dy = self.displacement
        val = dx * dx + dy * dy
        if not val.q.is_zero():
            raise ArithmeticError("squared length fell outside Q[phi]")
        return val.p

    @property
    def roman(self) -> CyclicWord:
        if not self.closed:
            raise ValueError("only closed traces have a cyclic Roman form")
        return roman_of_arabic(self.word)

    def to_json(self) -> dict:
        dx, dy = self.displacement
        word = self.word.symbols if self.closed else self.word
        out = {
            "word": list(word),
            "closed": self.closed,
            "crossings": self.crossings,
            "displacement": {
                "x": dx.to_json(),
                "y": dy.to_json(),
                "decimal": [str(dx.to_decimal(20)), str(dy.to_decimal(20))],
            },
        }
        if self.closed:
            out["length_squared"] = self.length_squared.to_json()
        return out


def trace_surface(start: PlanePoint, direction: PlanePoint,
                  max_crossings: int = 10 ** 6) -> TraceResult:
    """Follow the straight-line flow, jumping by the side pairings.

    Declares closure on exact return to the start point in the starting
    copy (the direction never changes); cone-point hits raise.
    """
    if direction.is_zero():
        raise ValueError("direction must be nonzero")
    start_pent = locate_pentagon(start)
    pos, pent = start, start_pent
    labels: list[int] = []
    tx, ty = P_ZERO, P_ZERO  # accumulated pairing translations

    while len(labels) < max_crossings:
        if labels and pent == start_pent and _passes_through(pos, start, direction):
            return TraceResult(CyclicWord.arabic(labels), True, (-tx, -ty),
                               len(labels), start, direction)
        side, hit, _t = _exit_side(pos, direction, pent)
        labels.append(side.label)
        pos = hit + side.translation
        tx = tx + side.translation.x
        ty = ty + side.translation.y
        pent = 1 - pent

    rel = pos - start
    return TraceResult(tuple(labels), False,
                       (rel.x - tx, rel.y - ty), len(labels), start, direction)


# ---------------------------------------------------------------------------
# the diagonal section and its interval exchange

_P3_COEFF = GoldenNum.of(1, 1)  # phi + 1; fixed at calibration

_MIRROR_ROMAN = {1: 4, 2: 3, 3: 2, 4: 1}


def section_division_points(x: GoldenNum) -> tuple[GoldenNum, GoldenNum, GoldenNum]:
    """Division points of the first-return map to the horizontal diagonal,
    for the direction with boundary coordinate x (signed)."""
    p1 = HALF - x * _P3_COEFF
    p2 = GoldenNum.of(0, Fraction(1, 2)) - x
    p3 = PHI - HALF - x * _P3_COEFF
    return p1, p2, p3


_T_COEFF = GoldenNum.of(1, 2)  # 2 phi + 1


def section_map(p: GoldenNum, x: GoldenNum) -> tuple[GoldenNum, int]:
    """One return to the diagonal: new abscissa and the Roman symbol read."""
    if x.sign() < 0:
        q, sym = section_map(PHI - p, -x)
        return PHI - q, _MIRROR_ROMAN[sym]
    p1, p2, p3 = section_division_points(x)
    for d in (p1, p2, p3):
        if p == d:
            raise SingularOrbit(f"section orbit hit division point {d}")
    if p < p1:
        return p + GoldenNum.of(0, Fraction(1, 2)) + x * _T_COEFF, 4
    if p < p2:
        return p - HALF + x * _P3_COEFF, 3
    if p < p3:
        return p + HALF + x * _P3_COEFF, 2
    return p - GoldenNum.of(0, Fraction(1, 2)) + x * _T_COEFF, 1


def _one_sided_branch(p: GoldenNum, x: GoldenNum, side: str) -> tuple[GoldenNum, int]:
    """Image of p viewed as p + eps (side 'R') or p - eps (side 'L')."""
    if x.sign() < 0:
        img, sym = _one_sided_branch(PHI - p, -x, "L" if side == "R" else "R")
        return PHI - img, _MIRROR_ROMAN[sym]
    p1, p2, p3 = section_division_points(x)
    bounds = [ZERO, p1, p2, p3, PHI]
    shifts = [
        GoldenNum.of(0, Fraction(1, 2)) + x * _T_COEFF,
        -HALF + x * _P3_COEFF,
        HALF + x * _P3_COEFF,
        -GoldenNum.of(0, Fraction(1, 2)) + x * _T_COEFF,
    ]
    syms = [4, 3, 2, 1]
    for i in range(4):
        lo, hi = bounds[i], bounds[i + 1]
        if side == "R":
            inside = lo <= p < hi
        else:
            inside = lo < p <= hi
        if inside and not (hi - lo).is_zero():
            return p + shifts[i], syms[i]
    raise SingularOrbit(f"no one-sided branch at {p}")


def section_cell_points(x: GoldenNum, steps: int) -> list[GoldenNum]:
    """Partition points separating the return words of length <= steps."""
    p1, p2, p3 = section_division_points(x)
    pts = {ZERO, PHI, p1, p2, p3}
    frontier = [(d, s) for d in (p1, p2, p3) for s in ("L", "R")]
    for _ in range(steps):
        nxt = []
        for v, side in frontier:
            if v == ZERO or v == PHI:
                continue  # singular leaf reached the diagonal endpoint
            img, _sym = _one_sided_branch(v, x, side)
            if img == ZERO or img == PHI:
                continue
            pts.add(img)
            nxt.append((img, side))
        frontier = nxt
    return sorted(pts)


def strip_cells_for_coordinate(x: GoldenNum,
                               expected_long: int | None = None,
                               budget_factor: int = 10
                               ) -> list[tuple[GoldenNum, GoldenNum, TraceResult]]:
    """One section cell per parallel strip of a periodic direction.

    Returns two entries (lo, hi, trace-from-midpoint), ordered short then
    long by combinatorial length, breaking ties by geometric length."""
    direction = direction_of_coordinate(x)
    guess = expected_long if expected_long else 40
    cap = budget_factor * 2 * guess + 20
    pts = section_cell_points(x, guess + 2)
    found: dict[tuple, tuple[GoldenNum, GoldenNum, TraceResult]] = {}
    for lo, hi in zip(pts, pts[1:]):
        if (hi - lo).is_zero():
            continue
        mid = (lo + hi) / GoldenNum.of(2)
        start = PlanePoint(_pn(mid), P_ZERO)
        try:
            res = trace_surface(start, direction, max_crossings=cap)
        except SaddleConnectionError:
            continue
        if not res.closed:
            raise TraceBudgetExceeded(
                f"orbit at coordinate {x} did not close within {cap} crossings")
        key = res.word.canonical()
        if key not in found:
            found[key] = (lo, hi, res)
            if len(found) == 2:
                break
    if len(found) < 2:
        raise TraceBudgetExceeded(f"could not find both strips at {x}")
    cells = list(found.values())

    def order_key(cell):
        res = cell[2]
        return (len(res.word), res.length_squared)

    a, b = cells
    ka, kb = order_key(a), order_key(b)
    if ka[0] < kb[0] or (ka[0] == kb[0] and ka[1] < kb[1]):
        return [a, b]
    return [b, a]


def periodic_orbits_for_coordinate(x: GoldenNum,
                                   expected_long: int | None = None,
                                   budget_factor: int = 10
                                   ) -> tuple[TraceResult, TraceResult]:
    """Trace one orbit from each of the two parallel strips of a periodic
    direction; returns (short, long).  x is the boundary coordinate."""
    cells = strip_cells_for_coordinate(x, expected_long, budget_factor)
    return cells[0][2], cells[1][2]


# ---------------------------------------------------------------------------
# the published interval-exchange form

Interval = Literal["I", "II", "III", "IV"]


@dataclass(frozen=True)
class IETSpec:
    """Exchange of four intervals on [0, phi].

    Intervals are labelled consecutively from the right end: I = [p3, phi),
    II = [p2, p3), III = [p1, p2), IV = [0, p1).  Reading the exchanged line
    the same way gives the image order III, I, IV, II.
    """

    u: GoldenNum
    p1: GoldenNum
    p2: GoldenNum
    p3: GoldenNum
    translations: dict[int, GoldenNum]  # Roman value -> shift

    @property
    def division_points(self) -> tuple[GoldenNum, GoldenNum, GoldenNum]:
        return (self.p1, self.p2, self.p3)

    def lengths(self) -> dict[int, GoldenNum]:
        return {
            1: PHI - self.p3,
            2: self.p3 - self.p2,
            3: self.p2 - self.p1,
            4: self.p1,
        }

    def interval_of(self, p: GoldenNum) -> int:
        if p < self.p1:
            return 4
        if p < self.p2:
            return 3
        if p < self.p3:
            return 2
        return 1

    def step(self, p: GoldenNum) -> tuple[GoldenNum, int]:
        for d in self.division_points:
            if p == d:
                raise SingularOrbit(f"orbit hit division point {d}")
        k = self.interval_of(p)
        return p + self.translations[k], k


IMAGE_ORDER = ("III", "I", "IV", "II")


def iet_build(u: GoldenNum) -> IETSpec:
    """The section exchange at parameter u = |boundary coordinate|."""
    limit = GoldenNum.of(1, Fraction(-1, 2))  # 1 - phi/2
    if u.sign() < 0 or (u - limit).sign() > 0:
        raise ValueError("u must lie in [0, 1 - phi/2]")
    p1, p2, p3 = section_division_points(u)
    translations = {
        4: GoldenNum.of(0, Fraction(1, 2)) + u * _T_COEFF,
        3: -HALF + u * _P3_COEFF,
        2: HALF + u * _P3_COEFF,
        1: -GoldenNum.of(0, Fraction(1, 2)) + u * _T_COEFF,
    }
    return IETSpec(u, p1, p2, p3, translations)


def iet_orbit(spec: IETSpec, x0: GoldenNum,
              max_steps: int = 10 ** 6) -> tuple[CyclicWord | tuple[int, ...], bool]:
    """Iterate the exchange from x0, recording interval symbols."""
    if x0.sign() < 0 or (x0 - PHI).sign() >= 0:
        raise ValueError("starting point outside [0, phi)")
    word: list[int] = []
    p = x0
    while len(word) < max_steps:
        p, k = spec.step(p)
        word.append(k)
        if p == x0:
            return CyclicWord.roman_word(word), True
    return tuple(word), False


# ---------------------------------------------------------------------------
# billiards in the single pentagon


def _reflect_matrix(w: PlanePoint):
    """Reflection matrix across the line with direction w, over PentaNum."""
    n2 = dot(w, w)
    inv = n2.inverse()
    two = PentaNum(GoldenNum.of(2), ZERO)
    m00 = two * w.x * w.x * inv - PENT_ONE
    m01 = two * w.x * w.y * inv
    m11 = two * w.y * w.y * inv - PENT_ONE
    return (m00, m01, m01, m11)


def _mat_apply(m, v: PlanePoint) -> PlanePoint:
    a, b, c, d = m
    return PlanePoint(a * v.x + b * v.y, c * v.x + d * v.y)


def _mat_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


_MAT_ID = (PENT_ONE, P_ZERO, P_ZERO, PENT_ONE)


def trace_billiard(start: PlanePoint, direction: PlanePoint,
                   max_reflections: int = 10 ** 6) -> TraceResult:
    """Exact billiard in the unit pentagon with the surface side labels.

    Unfolds the reflections into an exact isometry; closure is exact return
    of both position and direction, and the displacement is the unfolded
    straight-line vector of the closed path.
    """
    if direction.is_zero():
        raise ValueError("direction must be nonzero")
    if not _point_in_pentagon(start, PENTAGON_UPPER):
        raise ValueError("start must lie strictly inside the pentagon")
    pos, d = start, direction
    mat = _MAT_ID
    off = PlanePoint(P_ZERO, P_ZERO)  # unfolded(x) = mat x + off
    labels: list[int] = []

    while len(labels) < max_reflections:
        if labels and d == direction and _passes_through(pos, start, d):
            # the unfolded path is a straight run along the direction, even
            # when the composed holonomy is a reflection (odd period)
            end = _mat_apply(mat, start) + off
            disp = end - start
            if not cross(disp, direction).is_zero():
                raise ArithmeticError("unfolded displacement not parallel")
            return TraceResult(CyclicWord.arabic(labels), True,
                               (disp.x, disp.y), len(labels), start, direction)
        side, hit, _t = _exit_side(pos, d, 0)
        labels.append(side.label)
        w = side.v1 - side.v0
        refl = _reflect_matrix(w)
        # compose the unfolding with this reflection (acting first)
        refl_off = side.v0 - _mat_apply(refl, side.v0)
        off = _mat_apply(mat, refl_off) + off
        mat = _mat_mul(mat, refl)
        d = _mat_apply(refl, d)
        pos = hit

    rel = pos - start
    return TraceResult(tuple(labels), False, (rel.x, rel.y),
                       len(labels), start, direction)
