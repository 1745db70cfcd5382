"""The tree of periodic directions in the principal sector.

Directions are addressed by digit strings over {0,1,2,3} whose last digit
is nonzero; the empty string is the top endpoint of the sector and the
reserved pseudo-index BOTTOM is the other endpoint.  Appending a trailing
zero does not change the direction, so raw digit strings normalize by
stripping trailing zeros.

Coordinates live on the boundary circle: the sector runs from
phi/2 - 1 up to 1 - phi/2 and contains 0.  The top endpoint is 1 - phi/2
and coordinates decrease toward the bottom.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .golden import (
    GoldenNum,
    INFINITY,
    ProjectivePoint,
    R_MAP,
    T_MAP,
)


class SectorError(ValueError):
    """Raised when a coordinate lies outside the closed principal sector."""


class DepthExceeded(RuntimeError):
    """index_of_coordinate ran out of depth; carries the digit prefix found."""

    def __init__(self, prefix: tuple[int, ...]):
        super().__init__(f"no index found within depth budget; prefix {prefix}")
        self.prefix = prefix


class InsufficientDepth(ValueError):
    """A neighbor family request needs a deeper tessellation."""

    def __init__(self, needed: int):
        super().__init__(f"depth {needed} required for this neighbor family")
        self.needed = needed


#: coordinate of the top sector endpoint, 1 - phi/2
ALPHA_COORD = GoldenNum.of(1, "-1/2")
#: coordinate of the bottom sector endpoint, phi/2 - 1
BOTTOM_COORD = -ALPHA_COORD

#: the five base directions, in circular order
GENERATION0_COORDS = (
    ProjectivePoint(ALPHA_COORD),
    ProjectivePoint(GoldenNum.of(0, "1/2")),
    INFINITY,
    ProjectivePoint(GoldenNum.of(0, "-1/2")),
    ProjectivePoint(BOTTOM_COORD),
)


@dataclass(frozen=True)
class DirectionIndex:
    """Digit string n1..nk with 0 <= ni <= 3 and nk != 0, or the BOTTOM endpoint."""

    digits: tuple[int, ...] = ()
    bottom: bool = False

    def __post_init__(self):
        if self.bottom and self.digits:
            raise ValueError("BOTTOM carries no digits")
        for d in self.digits:
            if not 0 <= d <= 3:
                raise ValueError(f"digit out of range: {d}")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("last digit must be nonzero (strip trailing zeros)")

    @staticmethod
    def from_digits(digits: Iterable[int]) -> "DirectionIndex":
        """Build an index, normalizing by the trailing-zero alias rule."""
        ds = list(digits)
        while ds and ds[-1] == 0:
            ds.pop()
        return DirectionIndex(tuple(ds))

    @staticmethod
    def parse(text: str) -> "DirectionIndex":
        text = text.strip().lower()
        if text in ("", "alpha", "()"):
            return DirectionIndex()
        if text == "bottom":
            return BOTTOM
        parts = text.split() if " " in text else list(text)
        return DirectionIndex.from_digits(int(p) for p in parts)

    @property
    def generation(self) -> int:
        return len(self.digits)

    def mirrored(self) -> "DirectionIndex":
        """The index of the reflected direction (coordinate x -> -x)."""
        if self.bottom:
            return DirectionIndex()
        if not self.digits:
            return BOTTOM
        ds = tuple(3 - d for d in self.digits[:-1]) + (4 - self.digits[-1],)
        return DirectionIndex(ds)

    def __str__(self) -> str:
        if self.bottom:
            return "bottom"
        if not self.digits:
            return "()"
        return "".join(str(d) for d in self.digits)


BOTTOM = DirectionIndex(bottom=True)


def _exponents(digits: Sequence[int]) -> list[int]:
    # exponent of the i-th rotation in the generator word, 1-based position
    k = len(digits)
    out = []
    for i, n in enumerate(digits, start=1):
        if i % 2 == 0:
            out.append(4 - n)
        elif i == k:
            out.append(n)
        else:
            out.append(n + 1)
    return out


@lru_cache(maxsize=None)
def _coordinate_cached(digits: tuple[int, ...], bottom: bool) -> ProjectivePoint:
    if bottom:
        return ProjectivePoint(BOTTOM_COORD)
    x = ProjectivePoint(ALPHA_COORD)
    exps = _exponents(digits)
    # innermost factor acts first
    for m in reversed(exps):
        x = R_MAP.apply(T_MAP.power(m).apply(x))
    return x


def coordinate_of_index(idx: DirectionIndex) -> ProjectivePoint:
    """Exact boundary coordinate of a direction index."""
    return _coordinate_cached(idx.digits, idx.bottom)


_T_INV_POWERS = [T_MAP.inverse().power(m) for m in range(5)]


def in_closed_sector(x: ProjectivePoint) -> bool:
    if x.is_infinity:
        return False
    return BOTTOM_COORD <= x.value <= ALPHA_COORD


def index_of_coordinate(x: ProjectivePoint | GoldenNum,
                        max_depth: int = 2000) -> DirectionIndex:
    """Invert coordinate_of_index by renormalization.

    Repeatedly reflect into the outer sectors and rotate back, peeling one
    digit per step.  Points of the golden field always terminate, though
    points very close to a shallow vertex take long same-digit runs; the
    depth budget guards against non-field input.
    """
    if isinstance(x, GoldenNum):
        x = ProjectivePoint(x)
    if not in_closed_sector(x):
        raise SectorError(f"coordinate {x} outside the closed principal sector")
    if x.value == BOTTOM_COORD:
        return BOTTOM

    # peel rotation exponents until the top endpoint is reached exactly
    ms: list[int] = []
    terminal = False
    pt = x
    while len(ms) < max_depth:
        if pt.value == ALPHA_COORD:
            break
        y = R_MAP.apply(pt)
        step = None
        for m in (1, 2, 3, 4):
            z = _T_INV_POWERS[m].apply(y)
            if not z.is_infinity and z.value == ALPHA_COORD:
                step = (m, z, True)
                break
        if step is None:
            for m in (1, 2, 3, 4):
                z = _T_INV_POWERS[m].apply(y)
                if in_closed_sector(z) and z.value != BOTTOM_COORD:
                    step = (m, z, False)
                    break
        if step is None:
            raise SectorError(f"renormalization failed at {pt}")
        m, pt, terminal = step
        ms.append(m)
        if terminal:
            break

    if not terminal and (pt.is_infinity or pt.value != ALPHA_COORD):
        raise DepthExceeded(_fold_digits(ms))
    return DirectionIndex(_fold_digits(ms))


def _fold_digits(ms: list[int]) -> tuple[int, ...]:
    """Rebuild the digit string from the peeled rotation exponents: the
    innermost exponent is a digit verbatim, outer ones shift by one and
    reflect the tail."""
    digits: tuple[int, ...] = ()
    for m in reversed(ms):
        digits = (m,) if not digits else (m - 1,) + _conj(digits)
    return digits


def _conj(digits: tuple[int, ...]) -> tuple[int, ...]:
    """Digit reflection: all digits complement to 3, the last to 4."""
    if not digits:
        return ()
    return tuple(3 - d for d in digits[:-1]) + (4 - digits[-1],)


# ---------------------------------------------------------------------------
# tessellation arcs
#
# Arcs of the sector form a quaternary tree indexed by prefixes over
# {0,1,2,3}.  Arc P splits into P+(0)..P+(3); the three new vertices between
# them are the valid indices P+(1), P+(2), P+(3).  Endpoints:


def arc_left_vertex(prefix: tuple[int, ...]) -> DirectionIndex:
    """Upper endpoint (larger coordinate) of the arc with the given prefix."""
    return DirectionIndex.from_digits(prefix)


def arc_right_vertex(prefix: tuple[int, ...]) -> DirectionIndex:
    """Lower endpoint of the arc: increment the last non-3 digit."""
    ds = list(prefix)
    while ds and ds[-1] == 3:
        ds.pop()
    if not ds:
        return BOTTOM
    ds[-1] += 1
    return DirectionIndex(tuple(ds))


@dataclass(frozen=True)
class IdealPentagon:
    """Five boundary vertices in decreasing coordinate order along the arc."""

    vertices: tuple[ProjectivePoint, ...]
    generation: int
    arc: tuple[int, ...] | None = None  # None for the base pentagon

    def __post_init__(self):
        if len(self.vertices) != 5:
            raise ValueError("an ideal pentagon has five vertices")


def pentagon_for_arc(prefix: tuple[int, ...]) -> IdealPentagon:
    left = arc_left_vertex(prefix)
    right = arc_right_vertex(prefix)
    mids = [DirectionIndex(prefix + (j,)) for j in (1, 2, 3)]
    coords = tuple(
        coordinate_of_index(v) for v in [left, *mids, right]
    )
    return IdealPentagon(coords, generation=len(prefix) + 1, arc=prefix)


def pentagons_to_depth(d: int) -> list[IdealPentagon]:
    """The base ideal pentagon plus all sector pentagons on arcs of length < d."""
    if d < 0:
        raise ValueError("depth must be nonnegative")
    out = [IdealPentagon(GENERATION0_COORDS, generation=0)]
    prefixes: list[tuple[int, ...]] = [()]
    for level in range(d):
        nxt = []
        for p in prefixes:
            out.append(pentagon_for_arc(p))
            nxt.extend(p + (j,) for j in range(4))
        prefixes = nxt
    return out


def indices_at_generation(g: int) -> list[DirectionIndex]:
    """All valid indices with exactly g digits."""
    if g == 0:
        return [DirectionIndex()]
    out = []

    def rec(prefix: tuple[int, ...]):
        if len(prefix) == g - 1:
            out.extend(DirectionIndex(prefix + (j,)) for j in (1, 2, 3))
            return
        for j in range(4):
            rec(prefix + (j,))

    rec(())
    return out


def index_strings_to_depth(d: int) -> list[tuple[int, ...]]:
    """All digit strings of length 1..d (4 + 16 + ... + 4^d of them).

    Strings with trailing zeros alias shallower vertices; normalize with
    DirectionIndex.from_digits.
    """
    out: list[tuple[int, ...]] = []
    level: list[tuple[int, ...]] = [()]
    for _ in range(d):
        level = [p + (j,) for p in level for j in range(4)]
        out.extend(level)
    return out


@dataclass(frozen=True)
class NeighborFamily:
    """Tessellation vertices joined to a center by a pentagon side.

    members maps the family position i to (index, coordinate); positions
    increase toward the center on the upper side (i >= 0) and away from it
    on the lower side (i < 0).  Corner centers have one-sided families.
    """

    center: DirectionIndex
    center_coord: ProjectivePoint
    members: tuple[tuple[int, DirectionIndex, ProjectivePoint], ...]


def neighbor_family(beta: DirectionIndex, radius: int,
                    depth: int | None = None) -> NeighborFamily:
    """The 2*radius + 1 neighbors of beta, combinatorially enumerated."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    total = 2 * radius + 1
    needed = beta.generation + radius + 1
    if depth is not None and depth < needed:
        raise InsufficientDepth(needed)

    upper: list[DirectionIndex] = []
    lower: list[DirectionIndex] = []

    if beta.bottom:
        # bottom corner: all neighbors lie above, chain through digit 3
        arc: tuple[int, ...] = ()
        upper.append(arc_left_vertex(arc))
        while len(upper) < total:
            arc = arc + (3,)
            upper.append(DirectionIndex(arc))
    elif not beta.digits:
        # top corner: all neighbors lie below, chain through digit 0
        arc = ()
        lower.append(arc_right_vertex(arc))
        while len(lower) < total:
            lower.append(DirectionIndex(arc + (1,)))
            arc = arc + (0,)
    else:
        prefix, j = beta.digits[:-1], beta.digits[-1]
        arc_up = prefix + (j - 1,)
        upper.append(arc_left_vertex(arc_up))
        while len(upper) < radius + 1:
            arc_up = arc_up + (3,)
            upper.append(DirectionIndex(arc_up))
        if radius >= 1:
            arc_dn = prefix + (j,)
            lower.append(arc_right_vertex(arc_dn))
            while len(lower) < radius:
                lower.append(DirectionIndex(arc_dn + (1,)))
                arc_dn = arc_dn + (0,)

    members: list[tuple[int, DirectionIndex, ProjectivePoint]] = []
    for t, v in enumerate(upper):
        members.append((t, v, coordinate_of_index(v)))
    for t, v in enumerate(lower):
        members.append((-1 - t, v, coordinate_of_index(v)))
    members.sort(key=lambda m: m[0])
    return NeighborFamily(beta, coordinate_of_index(beta), tuple(members))
