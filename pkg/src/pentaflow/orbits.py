"""Symbolic orbits as cyclic words.

Arabic words run over side labels {1..5}, Roman words over interval
symbols {I..IV}.  A generation step rotates the Arabic alphabet and then
inserts the vertices passed along the chain graph 1 - 4 - 3 - 2 - 5;
the converse deletes every symbol that is not sandwiched between equal
neighbors.  The conventions that tie words to direction indices are fixed
by calibration against the geometric tracer and recorded in CONVENTIONS.md.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal

from .directions import DirectionIndex

ROMAN_NAMES = {1: "I", 2: "II", 3: "III", 4: "IV"}
ROMAN_VALUES = {v: k for k, v in ROMAN_NAMES.items()}

#: the chain graph as a line; adjacent entries are its edges
CHAIN_ORDER = (1, 4, 3, 2, 5)
_CHAIN_POS = {s: i for i, s in enumerate(CHAIN_ORDER)}

#: Arabic pair <-> Roman symbol (the downward edges of the chain)
ROMAN_OF_PAIR = {(4, 3): 1, (4, 1): 2, (2, 5): 3, (2, 3): 4}
PAIR_OF_ROMAN = {v: k for k, v in ROMAN_OF_PAIR.items()}

Kind = Literal["short", "long"]


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class CyclicWord:
    """A nonempty word considered up to rotation; equality is cyclic."""

    symbols: tuple[int, ...]
    roman: bool = False

    def __post_init__(self):
        if not self.symbols:
            raise WordError("empty word")
        hi = 4 if self.roman else 5
        for s in self.symbols:
            if not 1 <= s <= hi:
                raise WordError(f"symbol {s} out of range for this alphabet")

    @staticmethod
    def arabic(symbols: Iterable[int]) -> "CyclicWord":
        return CyclicWord(tuple(symbols), roman=False)

    @staticmethod
    def roman_word(symbols: Iterable[int]) -> "CyclicWord":
        return CyclicWord(tuple(symbols), roman=True)

    @staticmethod
    def parse(text: str) -> "CyclicWord":
        parts = text.split()
        if not parts:
            raise WordError("empty word")
        if parts[0].upper() in ROMAN_VALUES:
            return CyclicWord(tuple(ROMAN_VALUES[p.upper()] for p in parts), roman=True)
        return CyclicWord(tuple(int(p) for p in parts), roman=False)

    def __len__(self) -> int:
        return len(self.symbols)

    def rotations(self):
        s = self.symbols
        for k in range(len(s)):
            yield s[k:] + s[:k]

    def canonical(self) -> tuple[int, ...]:
        return min(self.rotations())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.roman == other.roman and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.roman, self.canonical()))

    def rotate(self, k: int) -> "CyclicWord":
        s = self.symbols
        k %= len(s)
        return CyclicWord(s[k:] + s[:k], self.roman)

    def __str__(self) -> str:
        if self.roman:
            return " ".join(ROMAN_NAMES[s] for s in self.symbols)
        return " ".join(str(s) for s in self.symbols)


def rotate_alphabet(w: CyclicWord, j: int) -> CyclicWord:
    """Shift every Arabic symbol by j, cyclically in {1..5}."""
    if w.roman:
        raise WordError("alphabet rotation applies to Arabic words")
    if not 0 <= j <= 4:
        raise WordError("shift must lie in 0..4")
    return CyclicWord(tuple((s - 1 + j) % 5 + 1 for s in w.symbols))


def _chain_path_interior(a: int, b: int) -> tuple[int, ...]:
    ia, ib = _CHAIN_POS[a], _CHAIN_POS[b]
    step = 1 if ib > ia else -1
    return tuple(CHAIN_ORDER[i] for i in range(ia + step, ib, step)) if ia != ib else ()


def enhance(w: CyclicWord) -> CyclicWord:
    """Insert the chain-graph vertices passed between consecutive symbols."""
    if w.roman:
        raise WordError("enhancement applies to Arabic words")
    out: list[int] = []
    n = len(w.symbols)
    for i, s in enumerate(w.symbols):
        out.append(s)
        out.extend(_chain_path_interior(s, w.symbols[(i + 1) % n]))
    return CyclicWord(tuple(out))


def reduce_word(w: CyclicWord) -> CyclicWord:
    """Keep exactly the sandwiched symbols (equal cyclic neighbors)."""
    if w.roman:
        raise WordError("reduction applies to Arabic words")
    s = w.symbols
    n = len(s)
    kept = tuple(s[i] for i in range(n) if s[(i - 1) % n] == s[(i + 1) % n])
    if not kept:
        raise WordError("no sandwiched symbols; not an enhanced orbit")
    return CyclicWord(kept)


def roman_of_arabic(w: CyclicWord) -> CyclicWord:
    """Parse an Arabic word into its unique Roman pair form."""
    if w.roman:
        return w
    if len(w) % 2:
        raise WordError("odd length cannot parse into pairs")
    s = w.symbols
    n = len(s)
    last_bad = 0
    for offset in (0, 1):
        rot = s[offset:] + s[:offset]
        roman = []
        for i in range(0, n, 2):
            pair = (rot[i], rot[i + 1])
            if pair not in ROMAN_OF_PAIR:
                last_bad = (offset + i) % n
                break
            roman.append(ROMAN_OF_PAIR[pair])
        else:
            return CyclicWord(tuple(roman), roman=True)
    raise WordError(f"no rotation parses into the four pairs (near position {last_bad})")


def arabic_of_roman(w: CyclicWord) -> CyclicWord:
    if not w.roman:
        return w
    out: list[int] = []
    for s in w.symbols:
        out.extend(PAIR_OF_ROMAN[s])
    return CyclicWord(tuple(out))


# ---------------------------------------------------------------------------
# the orbit engine

#: generation-zero orbits, fixed by the tracer calibration (CONVENTIONS.md)
BASE_ORBITS = {
    (False, "short"): CyclicWord.arabic((2, 5)),   # top endpoint, one short pass
    (False, "long"): CyclicWord.arabic((4, 3)),
    (True, "short"): CyclicWord.arabic((4, 1)),    # bottom endpoint
    (True, "long"): CyclicWord.arabic((2, 3)),
}


def _conj(digits: tuple[int, ...]) -> tuple[int, ...]:
    if not digits:
        return ()
    return tuple(3 - d for d in digits[:-1]) + (4 - digits[-1],)


@lru_cache(maxsize=None)
def _orbit_cached(digits: tuple[int, ...], bottom: bool, kind: Kind) -> CyclicWord:
    if bottom or not digits:
        return BASE_ORBITS[(bottom, kind)]
    if len(digits) == 1:
        parent = _orbit_cached((), False, kind)
        return enhance(rotate_alphabet(parent, digits[0]))
    parent_digits = _conj(digits[1:])
    parent = _orbit_cached(parent_digits, False, kind)
    return enhance(rotate_alphabet(parent, digits[0] + 1))


def orbit_of_index(idx: DirectionIndex, kind: Kind) -> CyclicWord:
    """The Arabic symbolic orbit at a direction index, short or long kind."""
    if kind not in ("short", "long"):
        raise ValueError("kind must be 'short' or 'long'")
    return _orbit_cached(idx.digits, idx.bottom, kind)


def reduction_parent(idx: DirectionIndex) -> DirectionIndex:
    """The index whose orbit the reduction of idx's orbit lands on."""
    if idx.bottom or len(idx.digits) < 2:
        raise ValueError("reduction parent needs at least two digits")
    return DirectionIndex(_conj(idx.digits[1:]))


# ---------------------------------------------------------------------------
# orbit vectors


@dataclass(frozen=True)
class OrbitVector:
    """Counts (c, d, e, f) of the Roman symbols I, II, III, IV per period."""

    c: int
    d: int
    e: int
    f: int

    def __add__(self, other: "OrbitVector") -> "OrbitVector":
        return OrbitVector(self.c + other.c, self.d + other.d,
                           self.e + other.e, self.f + other.f)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.c, self.d, self.e, self.f)

    @property
    def period(self) -> int:
        return self.c + self.d + self.e + self.f

    def __str__(self) -> str:
        return f"({self.c},{self.d},{self.e},{self.f})"


ZERO_VECTOR = OrbitVector(0, 0, 0, 0)


def vector_of(w: CyclicWord) -> OrbitVector:
    r = roman_of_arabic(w)
    return OrbitVector(*(r.symbols.count(k) for k in (1, 2, 3, 4)))


def apply_L(i: int, v: OrbitVector) -> OrbitVector:
    """Vector action of one generation step with alphabet shift i."""
    c, d, e, f = v.as_tuple()
    if i == 1:
        return OrbitVector(c + e + f, e, c + d, c)
    if i == 2:
        return OrbitVector(c + d + e + f, c + d, c + f, c + e + f)
    if i == 3:
        return OrbitVector(c + d + f, c + f, e + f, c + d + e + f)
    if i == 4:
        return OrbitVector(f, e + f, d, c + d + f)
    raise ValueError("shift must lie in 1..4")


#: long = M . short, and M^2 = M + I
M_MATRIX = (
    (1, 0, 1, 0),
    (0, 0, 0, 1),
    (1, 0, 0, 0),
    (0, 1, 0, 1),
)


def apply_M(v: OrbitVector) -> OrbitVector:
    c, d, e, f = v.as_tuple()
    return OrbitVector(c + e, f, c, d + f)


def check_M(short: OrbitVector, long: OrbitVector) -> bool:
    return apply_M(short) == long


def quintuple_relation(a: OrbitVector, A: OrbitVector,
                       b: OrbitVector, B: OrbitVector
                       ) -> tuple[tuple[OrbitVector, OrbitVector], ...]:
    """Vector pairs of the three arc children given the endpoint pairs."""
    return (
        (b + A, a + A + B),
        (A + B, a + b + A + B),
        (a + B, b + A + B),
    )


def vectors_of_index(idx: DirectionIndex) -> tuple[OrbitVector, OrbitVector]:
    return (vector_of(orbit_of_index(idx, "short")),
            vector_of(orbit_of_index(idx, "long")))


def mirror_vector(v: OrbitVector) -> OrbitVector:
    """Vector of the reflected orbit: component order reverses."""
    return OrbitVector(v.f, v.e, v.d, v.c)
