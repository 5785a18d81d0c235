"""
Exact planar geometry over the golden field.

Scalars live in Q(sqrt5) and points in the 5th cyclotomic field Q(zeta),
zeta = exp(2*pi*i/5), written in the basis 1, zeta, zeta^2, zeta^3 and reduced
with 1 + zeta + zeta^2 + zeta^3 + zeta^4 = 0. Every equality and ordering
decision is exact; floats only appear in to_complex() / float().
"""

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Optional

from .exceptions import IsometryError
from .utils import parse_rational, format_rational

SIN36 = math.sin(math.pi / 5)
_SCALAR_PATTERN = re.compile(r"^\s*(\S+)\s*\+\s*(\S+)\s*\*\s*sqrt5\s*$")


def _fraction(value):
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def _sign(value):
    return (value > 0) - (value < 0)


@total_ordering
@dataclass(frozen=True)
class GoldenScalar:
    """The real number a + b*sqrt5 with rational a, b"""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _fraction(self.a))
        object.__setattr__(self, "b", _fraction(self.b))

    @staticmethod
    def coerce(value):
        if isinstance(value, GoldenScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return GoldenScalar(value, 0)
        return NotImplemented

    def __add__(self, other):
        other = GoldenScalar.coerce(other)
        if other is NotImplemented:
            return other
        return GoldenScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenScalar(-self.a, -self.b)

    def __sub__(self, other):
        other = GoldenScalar.coerce(other)
        if other is NotImplemented:
            return other
        return GoldenScalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = GoldenScalar.coerce(other)
        if other is NotImplemented:
            return other
        return GoldenScalar(self.a * other.a + 5 * self.b * other.b,
                            self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def conjugate(self):
        """Galois conjugate a - b*sqrt5"""
        return GoldenScalar(self.a, -self.b)

    def norm(self):
        return self.a ** 2 - 5 * self.b ** 2

    def __truediv__(self, other):
        other = GoldenScalar.coerce(other)
        if other is NotImplemented:
            return other
        norm = other.norm()
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt5)")
        numerator = self * other.conjugate()
        return GoldenScalar(numerator.a / norm, numerator.b / norm)

    def __rtruediv__(self, other):
        return GoldenScalar.coerce(other) / self

    def __lt__(self, other):
        other = GoldenScalar.coerce(other)
        if other is NotImplemented:
            return other
        return gs_sign(self - other) < 0

    def __eq__(self, other):
        other = GoldenScalar.coerce(other)
        if other is NotImplemented:
            return other
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(5)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __str__(self):
        return self.to_string()

    def to_string(self):
        """Serialise as "a/b + c/d*sqrt5" """
        return f"{format_rational(self.a)} + {format_rational(self.b)}*sqrt5"

    @classmethod
    def from_string(cls, text):
        match = _SCALAR_PATTERN.match(text)
        if not match:
            raise ValueError(f"not a golden scalar: {text!r}")
        return cls(parse_rational(match.group(1)), parse_rational(match.group(2)))


PHI = GoldenScalar(Fraction(1, 2), Fraction(1, 2))
PHI_SQUARED = GoldenScalar(Fraction(3, 2), Fraction(1, 2))
SQRT5 = GoldenScalar(0, 1)


def gs_sign(x):
    """
    Exact sign of a + b*sqrt5.

    Args:
        x: GoldenScalar

    Returns:
        int: -1, 0 or +1
    """
    sa, sb = _sign(x.a), _sign(x.b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # mixed signs: the larger of a^2 and 5 b^2 wins (never equal, sqrt5 is irrational)
    if x.a ** 2 > 5 * x.b ** 2:
        return sa
    return sb


@dataclass(frozen=True)
class CycPoint:
    """The point c0 + c1*zeta + c2*zeta^2 + c3*zeta^3 of the plane"""

    c0: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    c3: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("c0", "c1", "c2", "c3"):
            object.__setattr__(self, name, _fraction(getattr(self, name)))

    @property
    def coeffs(self):
        return (self.c0, self.c1, self.c2, self.c3)

    @staticmethod
    def coerce(value):
        if isinstance(value, CycPoint):
            return value
        if isinstance(value, GoldenScalar):
            # sqrt5 = 1 + 2(zeta + zeta^4) = -1 - 2 zeta^2 - 2 zeta^3
            return CycPoint(value.a - value.b, 0, -2 * value.b, -2 * value.b)
        if isinstance(value, (int, Fraction)):
            return CycPoint(value)
        return NotImplemented

    def __add__(self, other):
        other = CycPoint.coerce(other)
        if other is NotImplemented:
            return other
        return CycPoint(*(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycPoint(*(-x for x in self.coeffs))

    def __sub__(self, other):
        other = CycPoint.coerce(other)
        if other is NotImplemented:
            return other
        return CycPoint(*(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = CycPoint.coerce(other)
        if other is NotImplemented:
            return other
        product = [Fraction(0)] * 5
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                product[(i + j) % 5] += x * y
        top = product[4]
        return CycPoint(product[0] - top, product[1] - top, product[2] - top, product[3] - top)

    __rmul__ = __mul__

    def conj(self):
        """Complex conjugate: zeta -> zeta^4, zeta^2 <-> zeta^3"""
        c0, c1, c2, c3 = self.coeffs
        return CycPoint(c0 - c1, -c1, c3 - c1, c2 - c1)

    def real_part(self):
        """x-coordinate as an element of Q(sqrt5)"""
        c0, c1, c2, c3 = self.coeffs
        quarter = Fraction(1, 4)
        return GoldenScalar(c0 - quarter * c1 - quarter * (c2 + c3),
                            quarter * c1 - quarter * (c2 + c3))

    def imag_scaled(self):
        """y-coordinate divided by sin 36 degrees, as an element of Q(sqrt5)"""
        _, c1, c2, c3 = self.coeffs
        half = Fraction(1, 2)
        return GoldenScalar(half * c1 + c2 - c3, half * c1)

    def is_real(self):
        return not self.imag_scaled()

    def to_complex(self):
        return complex(float(self.real_part()), float(self.imag_scaled()) * SIN36)

    def to_list(self):
        return [format_rational(x) for x in self.coeffs]

    @classmethod
    def from_list(cls, values):
        if len(values) != 4:
            raise ValueError(f"a point needs 4 rationals, got {len(values)}")
        return cls(*(parse_rational(v) for v in values))

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.coeffs) + ")"


ZERO = CycPoint()
ONE = CycPoint(1)
ZETA = CycPoint(0, 1)


def sq_distance(p, q):
    """
    Squared Euclidean distance between two points, exactly.

    Args:
        p: CycPoint
        q: CycPoint

    Returns:
        GoldenScalar: |p - q|^2
    """
    d = p - q
    return (d * d.conj()).real_part()


def orientation(p, q, r):
    """Sign of the signed area of the triangle p, q, r (+1 counter-clockwise)"""
    w = (q - p).conj() * (r - p)
    return gs_sign(w.imag_scaled())


class ShapeClass(str, Enum):
    GOLDEN_TRIANGLE = "GoldenTriangle"
    GOLDEN_GNOMON = "GoldenGnomon"
    DEGENERATE = "Degenerate"
    OTHER = "Other"

    @property
    def is_golden(self):
        return self in (ShapeClass.GOLDEN_TRIANGLE, ShapeClass.GOLDEN_GNOMON)


def classify_triangle(p, q, r):
    """
    Classify a triangle as golden triangle, golden gnomon, degenerate or other.

    A golden triangle has two equal long sides, a golden gnomon two equal short
    sides; in both cases longest^2 : shortest^2 = phi^2.
    """
    if orientation(p, q, r) == 0:
        return ShapeClass.DEGENERATE
    short, middle, long = sorted([sq_distance(p, q), sq_distance(q, r), sq_distance(r, p)])
    if long != PHI_SQUARED * short:
        return ShapeClass.OTHER
    if middle == long:
        return ShapeClass.GOLDEN_TRIANGLE
    if short == middle:
        return ShapeClass.GOLDEN_GNOMON
    return ShapeClass.OTHER


class IsometryKind(str, Enum):
    TRANSLATION = "Translation"
    REFLECT_THEN_TRANSLATE = "ReflectThenTranslate"


@dataclass(frozen=True)
class Isometry:
    """
    A translation, or a reflection in a horizontal line followed by a translation.

    The mirror line is stored as an anchor point on it: horizontal lines
    through pentagon points have heights outside Q(sqrt5).
    """

    kind: IsometryKind
    offset: CycPoint = ZERO
    mirror: Optional[CycPoint] = None

    @classmethod
    def translation(cls, offset):
        return cls(IsometryKind.TRANSLATION, CycPoint.coerce(offset))

    @classmethod
    def reflection(cls, mirror=ZERO, offset=ZERO):
        return cls(IsometryKind.REFLECT_THEN_TRANSLATE, CycPoint.coerce(offset), CycPoint.coerce(mirror))

    def apply(self, p):
        if self.kind == IsometryKind.TRANSLATION:
            return p + self.offset
        anchor = self.mirror or ZERO
        return (p - anchor).conj() + anchor + self.offset

    def mirror_contains(self, p):
        """True when p lies on the mirror line (reflections only)"""
        if self.kind != IsometryKind.REFLECT_THEN_TRANSLATE:
            return False
        return (p - (self.mirror or ZERO)).is_real()

    def shifted(self, extra):
        """Same isometry followed by a further translation"""
        return Isometry(self.kind, self.offset + extra, self.mirror)

    def check_on(self, points):
        """
        Verify every pairwise squared distance among points is preserved.

        Raises:
            IsometryError: with the first offending pair
        """
        points = list(points)
        images = [self.apply(p) for p in points]
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                before = sq_distance(points[i], points[j])
                after = sq_distance(images[i], images[j])
                if before != after:
                    raise IsometryError(
                        f"{self.kind.value} changes |{points[i]} - {points[j]}|^2 from {before} to {after}"
                    )

    def to_dict(self):
        data = {"kind": self.kind.value, "offset": self.offset.to_list()}
        if self.mirror is not None:
            data["mirror"] = self.mirror.to_list()
        return data

    @classmethod
    def from_dict(cls, data):
        kind = IsometryKind(data["kind"])
        offset = CycPoint.from_list(data.get("offset", ["0/1"] * 4))
        mirror = CycPoint.from_list(data["mirror"]) if data.get("mirror") else None
        if kind == IsometryKind.REFLECT_THEN_TRANSLATE and mirror is None:
            mirror = ZERO
        return cls(kind, offset, mirror)


def apply_isometry(m, p):
    """Image of p under the isometry m"""
    return m.apply(p)
