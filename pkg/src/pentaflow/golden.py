"""Exact arithmetic in the golden field and its quadratic extension.

GoldenNum is a + b*phi with rational a, b and phi = (1+sqrt5)/2, so
phi**2 = phi + 1.  PentaNum extends by s = sin(36 degrees), with
s**2 = (3 - phi)/4.  Every predicate in this package (sign, equality,
ordering) is decided by exact integer arithmetic; floats only appear at
the output boundary via to_decimal / __float__.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class GoldenNum:
    """Element a + b*phi of Q[phi], stored in lowest terms (Fraction does that)."""

    a: Fraction
    b: Fraction

    @staticmethod
    def of(a: Rational, b: Rational = 0) -> "GoldenNum":
        return GoldenNum(Fraction(a), Fraction(b))

    def __add__(self, other: "GoldenNum") -> "GoldenNum":
        return GoldenNum(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "GoldenNum") -> "GoldenNum":
        return GoldenNum(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "GoldenNum":
        return GoldenNum(-self.a, -self.b)

    def __mul__(self, other: "GoldenNum") -> "GoldenNum":
        # (a + b phi)(c + d phi) with phi^2 = phi + 1
        a, b, c, d = self.a, self.b, other.a, other.b
        return GoldenNum(a * c + b * d, a * d + b * c + b * d)

    def conj(self) -> "GoldenNum":
        # Galois conjugate phi -> 1 - phi
        return GoldenNum(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        # x * conj(x), a rational number
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self) -> "GoldenNum":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q[phi]")
        return GoldenNum((self.a + self.b) / n, -self.b / n)

    def __truediv__(self, other: "GoldenNum") -> "GoldenNum":
        return self * other.inverse()

    def __pow__(self, k: int) -> "GoldenNum":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign of a + b(1+sqrt5)/2, never via floating point.

        With p = 2a + b and q = b the value is (p + q sqrt5)/2; when p and
        q disagree in sign the comparison reduces to p^2 versus 5 q^2.
        """
        p = 2 * self.a + self.b
        q = self.b
        sp, sq = _sgn(p), _sgn(q)
        if sq == 0:
            return sp
        if sp == 0:
            return sq
        if sp == sq:
            return sp
        return sp * _sgn(p * p - 5 * q * q)

    def __lt__(self, other: "GoldenNum") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "GoldenNum") -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: "GoldenNum") -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: "GoldenNum") -> bool:
        return (self - other).sign() >= 0

    def to_decimal(self, digits: int = 30) -> decimal.Decimal:
        """Decimal approximation, computed with guard digits and rounded."""
        with decimal.localcontext() as ctx:
            ctx.prec = digits + 15
            root5 = decimal.Decimal(5).sqrt()
            val = (
                decimal.Decimal(self.a.numerator) / self.a.denominator
                + (decimal.Decimal(self.b.numerator) / self.b.denominator)
                * (1 + root5)
                / 2
            )
            return +decimal.Decimal(val.quantize(
                decimal.Decimal(1).scaleb(val.adjusted() - digits + 1)
                if val != 0 else decimal.Decimal(1).scaleb(-digits)
            ))

    def __float__(self) -> float:
        return float(self.to_decimal(25))

    def to_json(self) -> list:
        return [[self.a.numerator, self.a.denominator],
                [self.b.numerator, self.b.denominator]]

    @staticmethod
    def from_json(data: list) -> "GoldenNum":
        (an, ad), (bn, bd) = data
        return GoldenNum(Fraction(an, ad), Fraction(bn, bd))

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        bpart = "phi" if self.b == 1 else ("-phi" if self.b == -1 else f"{self.b}*phi")
        if self.a == 0:
            return bpart
        sign = "+" if self.b > 0 else "-"
        mag = abs(self.b)
        bpart = "phi" if mag == 1 else f"{mag}*phi"
        return f"{self.a} {sign} {bpart}"


ZERO = GoldenNum.of(0)
ONE = GoldenNum.of(1)
PHI = GoldenNum.of(0, 1)
HALF = GoldenNum.of(Fraction(1, 2))

#: s^2 = (3 - phi)/4, the square of sin 36 degrees.
S_SQUARED = GoldenNum.of(Fraction(3, 4), Fraction(-1, 4))


@dataclass(frozen=True)
class PentaNum:
    """Element p + q*s of Q[phi][s] with s = sin 36 degrees."""

    p: GoldenNum
    q: GoldenNum

    @staticmethod
    def of(p: GoldenNum, q: GoldenNum = ZERO) -> "PentaNum":
        return PentaNum(p, q)

    @staticmethod
    def rational(x: Rational) -> "PentaNum":
        return PentaNum(GoldenNum.of(x), ZERO)

    def __add__(self, other: "PentaNum") -> "PentaNum":
        return PentaNum(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "PentaNum") -> "PentaNum":
        return PentaNum(self.p - other.p, self.q - other.q)

    def __neg__(self) -> "PentaNum":
        return PentaNum(-self.p, -self.q)

    def __mul__(self, other: "PentaNum") -> "PentaNum":
        # reduce s^2 = (3 - phi)/4 so (p, q) stays canonical
        return PentaNum(
            self.p * other.p + self.q * other.q * S_SQUARED,
            self.p * other.q + self.q * other.p,
        )

    def inverse(self) -> "PentaNum":
        d = self.p * self.p - self.q * self.q * S_SQUARED
        if d.is_zero():
            if self.is_zero():
                raise ZeroDivisionError("division by zero in Q[phi][s]")
            raise ArithmeticError("inverse: s would be rational over Q[phi]")
        dinv = d.inverse()
        return PentaNum(self.p * dinv, -self.q * dinv)

    def __truediv__(self, other: "PentaNum") -> "PentaNum":
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero()

    def sign(self) -> int:
        """Exact sign of p + q*s using s > 0."""
        sp, sq = self.p.sign(), self.q.sign()
        if sq == 0:
            return sp
        if sp == 0:
            return sq
        if sp == sq:
            return sp
        # opposite signs: compare p^2 against q^2 s^2 inside Q[phi]
        d = self.p * self.p - self.q * self.q * S_SQUARED
        return sp * d.sign()

    def __lt__(self, other: "PentaNum") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "PentaNum") -> bool:
        return (self - other).sign() <= 0

    def to_decimal(self, digits: int = 30) -> decimal.Decimal:
        with decimal.localcontext() as ctx:
            ctx.prec = digits + 15
            root5 = decimal.Decimal(5).sqrt()
            phi = (1 + root5) / 2
            s = ((3 - phi) / 4).sqrt()

            def gval(g: GoldenNum) -> decimal.Decimal:
                return (decimal.Decimal(g.a.numerator) / g.a.denominator
                        + (decimal.Decimal(g.b.numerator) / g.b.denominator) * phi)

            val = gval(self.p) + gval(self.q) * s
            quantum = (decimal.Decimal(1).scaleb(val.adjusted() - digits + 1)
                       if val != 0 else decimal.Decimal(1).scaleb(-digits))
            return +val.quantize(quantum)

    def __float__(self) -> float:
        return float(self.to_decimal(25))

    def to_json(self) -> list:
        return [self.p.to_json(), self.q.to_json()]

    @staticmethod
    def from_json(data: list) -> "PentaNum":
        return PentaNum(GoldenNum.from_json(data[0]), GoldenNum.from_json(data[1]))

    def __str__(self) -> str:
        if self.q.is_zero():
            return str(self.p)
        if self.p.is_zero():
            return f"({self.q})*s"
        return f"({self.p}) + ({self.q})*s"


P_ZERO = PentaNum(ZERO, ZERO)
P_ONE = PentaNum(ONE, ZERO)
#: sin 36 degrees
SIN36 = PentaNum(ZERO, ONE)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point of the boundary circle: a golden number or the point at infinity."""

    value: GoldenNum | None  # None encodes infinity

    @staticmethod
    def finite(x: GoldenNum) -> "ProjectivePoint":
        return ProjectivePoint(x)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)


INFINITY = ProjectivePoint(None)


@dataclass(frozen=True)
class MoebiusMap:
    """2x2 matrix over Q[phi] acting on the boundary circle by x -> (ax+b)/(cx+d)."""

    a: GoldenNum
    b: GoldenNum
    c: GoldenNum
    d: GoldenNum

    def det(self) -> GoldenNum:
        return self.a * self.d - self.b * self.c

    def apply(self, x: ProjectivePoint | GoldenNum) -> ProjectivePoint:
        if isinstance(x, GoldenNum):
            x = ProjectivePoint(x)
        if x.is_infinity:
            # image of infinity is the ratio of the first column
            if self.c.is_zero():
                return INFINITY
            return ProjectivePoint(self.a / self.c)
        v = x.value
        den = self.c * v + self.d
        if den.is_zero():
            return INFINITY
        return ProjectivePoint((self.a * v + self.b) / den)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusMap":
        # projective inverse: the adjugate
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def power(self, k: int) -> "MoebiusMap":
        if k < 0:
            return self.inverse().power(-k)
        out = IDENTITY_MAP
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def projectively_equal(self, other: "MoebiusMap") -> bool:
        """Equality up to a nonzero scalar, by cross multiplication."""
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        pivot = next((i for i, e in enumerate(mine) if not e.is_zero()), None)
        if pivot is None:
            return all(e.is_zero() for e in theirs)
        if theirs[pivot].is_zero():
            return False
        lam_num, lam_den = theirs[pivot], mine[pivot]
        return all(
            (mine[i] * lam_num - theirs[i] * lam_den).is_zero() for i in range(4)
        )

    def is_identity_projective(self) -> bool:
        return self.projectively_equal(IDENTITY_MAP)


IDENTITY_MAP = MoebiusMap(ONE, ZERO, ZERO, ONE)

#: clockwise rotation by 72 degrees on the boundary circle:
#: T(x) = (2 phi x + 3 - phi) / (2 phi - 4 x)
T_MAP = MoebiusMap(
    GoldenNum.of(0, 2),
    GoldenNum.of(3, -1),
    GoldenNum.of(-4),
    GoldenNum.of(0, 2),
)

#: reflection fixing the principal sector boundary: R(x) = 1 / (4 phi^4 x)
R_MAP = MoebiusMap(
    ZERO,
    ONE,
    GoldenNum.of(8, 12),  # 4 phi^4 = 8 + 12 phi
    ZERO,
)
