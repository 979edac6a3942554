"""Outward-rounded interval arithmetic on scalars and axis-aligned boxes.

Every operation returns an interval that encloses the exact real result set
of the operation over its operands.  Endpoint arithmetic runs in ordinary
binary64; whenever a computed endpoint may be inexact the bound is widened
by one unit in the last place in the safe direction.  Exactness of float
sums and products is detected with error-free transformations (TwoSum,
Dekker splitting), so integer-valued and power-of-two arithmetic stays
tight: ``[1,2] + [3,4]`` is exactly ``[4,6]``, and a zero endpoint stays an
exact zero through sums and products.

Transcendental endpoints (sin, cos, exp, tanh) rely on the platform libm
being faithful to within one ulp and are padded by one ulp outward, with
sin/cos additionally clamped to [-1, 1] and analysed for interior extrema
against an interval enclosure of pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class DomainError(ValueError):
    """An operand lies (at least partly) outside an operation's domain."""


class IntervalDivisionError(DomainError):
    """Division by an interval containing zero."""


class DegenerateAxisError(ValueError):
    """Bisection requested along a zero-width coordinate."""


class DimensionMismatchError(ValueError):
    """Operands disagree on dimension."""


_INF = math.inf
_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def next_up(x: float) -> float:
    return math.nextafter(x, _INF)


def next_down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _two_sum(a: float, b: float):
    """Return (s, e) with s = fl(a+b) and a + b = s + e exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def _two_product(a: float, b: float):
    """Return (p, e) with p = fl(a*b) and a*b = p + e exactly.

    e is None when exactness cannot be established (splitting would
    overflow, or the product sits in the subnormal underflow range).
    """
    p = a * b
    if p == 0.0:
        if a == 0.0 or b == 0.0:
            return p, 0.0
        return p, None
    if not math.isfinite(p) or abs(p) < 1e-280 or abs(a) > 1e290 or abs(b) > 1e290:
        return p, None
    t = _SPLITTER * a
    a_hi = t - (t - a)
    a_lo = a - a_hi
    t = _SPLITTER * b
    b_hi = t - (t - b)
    b_lo = b - b_hi
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, e


def add_down(a: float, b: float) -> float:
    s, e = _two_sum(a, b)
    return s if e >= 0.0 else next_down(s)


def add_up(a: float, b: float) -> float:
    s, e = _two_sum(a, b)
    return s if e <= 0.0 else next_up(s)


def sub_down(a: float, b: float) -> float:
    return add_down(a, -b)


def sub_up(a: float, b: float) -> float:
    return add_up(a, -b)


def mul_down(a: float, b: float) -> float:
    p, e = _two_product(a, b)
    if e is None:
        return next_down(p)
    return p if e >= 0.0 else next_down(p)


def mul_up(a: float, b: float) -> float:
    p, e = _two_product(a, b)
    if e is None:
        return next_up(p)
    return p if e <= 0.0 else next_up(p)


def div_down(a: float, b: float) -> float:
    q = a / b
    p, e = _two_product(q, b)
    if e == 0.0 and p == a:
        return q
    return next_down(q)


def div_up(a: float, b: float) -> float:
    q = a / b
    p, e = _two_product(q, b)
    if e == 0.0 and p == a:
        return q
    return next_up(q)


def sqrt_down(x: float) -> float:
    s = math.sqrt(x)
    p, e = _two_product(s, s)
    if e == 0.0 and p == x:
        return s
    return max(0.0, next_down(s))


def sqrt_up(x: float) -> float:
    s = math.sqrt(x)
    p, e = _two_product(s, s)
    if e == 0.0 and p == x:
        return s
    return next_up(s)


def _pow_mag_down(x: float, n: int) -> float:
    """Lower bound for x**n, x >= 0, n >= 1."""
    r = 1.0
    base = x
    while n:
        if n & 1:
            r = mul_down(r, base)
        n >>= 1
        if n:
            base = mul_down(base, base)
    return r


def _pow_mag_up(x: float, n: int) -> float:
    r = 1.0
    base = x
    while n:
        if n & 1:
            r = mul_up(r, base)
        n >>= 1
        if n:
            base = mul_up(base, base)
    return r


class Interval:
    """Closed real interval [lo, hi] with finite binary64 endpoints.

    Instances are immutable by convention; nothing mutates lo/hi after
    construction and all arithmetic returns fresh intervals.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        lo = float(lo)
        hi = float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"non-finite interval bound [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"interval lower bound {lo!r} exceeds upper bound {hi!r}")
        self.lo = lo
        self.hi = hi

    # -- structure ---------------------------------------------------------

    def __repr__(self):
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other):
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        m = self.lo + 0.5 * (self.hi - self.lo)
        return min(max(m, self.lo), self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def is_subset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __add__(self, other):
        return Interval(add_down(self.lo, other.lo), add_up(self.hi, other.hi))

    def __sub__(self, other):
        return Interval(sub_down(self.lo, other.hi), sub_up(self.hi, other.lo))

    def __mul__(self, other):
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(mul_down(a, c), mul_down(a, d), mul_down(b, c), mul_down(b, d))
        hi = max(mul_up(a, c), mul_up(a, d), mul_up(b, c), mul_up(b, d))
        return Interval(lo, hi)

    def __truediv__(self, other):
        if other.lo <= 0.0 <= other.hi:
            raise IntervalDivisionError(
                f"division by interval [{other.lo}, {other.hi}] containing zero"
            )
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lo = min(div_down(a, c), div_down(a, d), div_down(b, c), div_down(b, d))
        hi = max(div_up(a, c), div_up(a, d), div_up(b, c), div_up(b, d))
        return Interval(lo, hi)

    def abs(self) -> "Interval":
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return Interval(-self.hi, -self.lo)
        return Interval(0.0, max(-self.lo, self.hi))

    def min_with(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), min(self.hi, other.hi))

    def max_with(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def pow_int(self, n: int) -> "Interval":
        if n != int(n):
            raise DomainError("pow_int requires an integer exponent")
        n = int(n)
        if n == 0:
            return Interval(1.0, 1.0)
        if n < 0:
            return Interval(1.0, 1.0) / self.pow_int(-n)
        lo, hi = self.lo, self.hi
        if n % 2 == 1:
            new_lo = _pow_mag_down(lo, n) if lo >= 0.0 else -_pow_mag_up(-lo, n)
            new_hi = _pow_mag_up(hi, n) if hi >= 0.0 else -_pow_mag_down(-hi, n)
            return Interval(new_lo, new_hi)
        if lo >= 0.0:
            return Interval(_pow_mag_down(lo, n), _pow_mag_up(hi, n))
        if hi <= 0.0:
            return Interval(_pow_mag_down(-hi, n), _pow_mag_up(-lo, n))
        return Interval(0.0, _pow_mag_up(max(-lo, hi), n))

    def sqrt(self) -> "Interval":
        if self.lo < 0.0:
            raise DomainError(
                f"sqrt of interval [{self.lo}, {self.hi}] reaching below zero"
            )
        return Interval(sqrt_down(self.lo), sqrt_up(self.hi))

    def exp(self) -> "Interval":
        try:
            lo = math.exp(self.lo)
            hi = math.exp(self.hi)
        except OverflowError as exc:
            raise DomainError("exp overflow") from exc
        return Interval(max(0.0, next_down(lo)), next_up(hi))

    def tanh(self) -> "Interval":
        lo = max(-1.0, next_down(math.tanh(self.lo)))
        hi = min(1.0, next_up(math.tanh(self.hi)))
        return Interval(lo, hi)

    def sin(self) -> "Interval":
        return _sin_cos(self, _HALF_PI, _NEG_HALF_PI)

    def cos(self) -> "Interval":
        return _sin_cos(self, _ZERO, _PI, use_cos=True)


_PI_ENCLOSURE = Interval(math.pi, next_up(math.pi))  # math.pi rounds below pi
_PI = _PI_ENCLOSURE
_TWO_PI = Interval(2.0 * math.pi, 2.0 * next_up(math.pi))
_HALF_PI = Interval(math.pi / 2.0, next_up(math.pi) / 2.0)
_NEG_HALF_PI = -_HALF_PI
_ZERO = Interval(0.0, 0.0)


def _hits_lattice(i: Interval, center: Interval, period: Interval) -> bool:
    """Conservatively decide whether {center + k*period : k in Z} meets i."""
    mid = 0.5 * (i.lo + i.hi)
    k0 = round((mid - center.lo) / period.lo)
    for k in (k0 - 2, k0 - 1, k0, k0 + 1, k0 + 2):
        crit = Interval(float(k)) * period + center
        if crit.lo <= i.hi and crit.hi >= i.lo:
            return True
    return False


def _sin_cos(i: Interval, max_center: Interval, min_center: Interval, use_cos=False):
    if i.hi - i.lo > 7.0 or abs(i.lo) > 1e15 or abs(i.hi) > 1e15:
        return Interval(-1.0, 1.0)
    fn = math.cos if use_cos else math.sin
    v_lo = fn(i.lo)
    v_hi = fn(i.hi)
    if _hits_lattice(i, max_center, _TWO_PI):
        hi = 1.0
    else:
        hi = min(1.0, max(next_up(v_lo), next_up(v_hi)))
    if _hits_lattice(i, min_center, _TWO_PI):
        lo = -1.0
    else:
        lo = max(-1.0, min(next_down(v_lo), next_down(v_hi)))
    return Interval(lo, hi)


_UNARY_OPS = {
    "neg": Interval.__neg__,
    "abs": Interval.abs,
    "sqrt": Interval.sqrt,
    "sin": Interval.sin,
    "cos": Interval.cos,
    "exp": Interval.exp,
    "tanh": Interval.tanh,
}

_BINARY_OPS = {
    "add": Interval.__add__,
    "sub": Interval.__sub__,
    "mul": Interval.__mul__,
    "div": Interval.__truediv__,
    "min": Interval.min_with,
    "max": Interval.max_with,
}


def apply(op: str, a: Interval, b=None) -> Interval:
    """Dispatch an interval operation by name (fuzzing surface).

    Binary ops take b as an Interval; pow_int takes b as an integer.
    """
    if op in _UNARY_OPS:
        return _UNARY_OPS[op](a)
    if op == "pow_int":
        return a.pow_int(b)
    if op in _BINARY_OPS:
        return _BINARY_OPS[op](a, b)
    raise ValueError(f"unknown interval operation {op!r}")


@dataclass(frozen=True)
class Box:
    """Axis-aligned product of intervals, one per dimension."""

    coords: tuple

    def __post_init__(self):
        if not self.coords:
            raise ValueError("a box needs at least one coordinate")

    @classmethod
    def from_bounds(cls, bounds) -> "Box":
        return cls(tuple(Interval(lo, hi) for lo, hi in bounds))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def width(self) -> float:
        return max(c.hi - c.lo for c in self.coords)

    def widths(self):
        return tuple(c.hi - c.lo for c in self.coords)

    def midpoint(self):
        return tuple(c.mid for c in self.coords)

    def volume(self) -> float:
        v = 1.0
        for c in self.coords:
            v *= c.hi - c.lo
        return v

    def contains_point(self, p) -> bool:
        if len(p) != self.dim:
            raise DimensionMismatchError(
                f"point of dimension {len(p)} against box of dimension {self.dim}"
            )
        return all(c.lo <= x <= c.hi for c, x in zip(self.coords, p))

    def intersects(self, other: "Box") -> bool:
        if other.dim != self.dim:
            raise DimensionMismatchError("boxes of different dimension")
        return all(a.intersects(b) for a, b in zip(self.coords, other.coords))

    def is_subset(self, other: "Box") -> bool:
        if other.dim != self.dim:
            raise DimensionMismatchError("boxes of different dimension")
        return all(a.is_subset(b) for a, b in zip(self.coords, other.coords))

    def replace_coord(self, axis: int, ival: Interval) -> "Box":
        coords = list(self.coords)
        coords[axis] = ival
        return Box(tuple(coords))

    def widest_axis(self) -> int:
        widths = self.widths()
        return max(range(self.dim), key=lambda i: widths[i])

    def bisect(self, axis: int):
        """Split at the midpoint of the chosen coordinate.

        The two halves share only the splitting hyperplane and their union
        is the original box.
        """
        if not 0 <= axis < self.dim:
            raise IndexError(f"axis {axis} out of range for dimension {self.dim}")
        c = self.coords[axis]
        if c.hi == c.lo:
            raise DegenerateAxisError(f"axis {axis} has zero width")
        m = c.lo + 0.5 * (c.hi - c.lo)
        if not (c.lo < m < c.hi):
            m = min(next_up(c.lo), c.hi)
        return (
            self.replace_coord(axis, Interval(c.lo, m)),
            self.replace_coord(axis, Interval(m, c.hi)),
        )

    def key(self):
        """Deterministic sort key: lexicographic lower corner, then upper."""
        return tuple(c.lo for c in self.coords) + tuple(c.hi for c in self.coords)

    def bounds(self):
        return [[c.lo, c.hi] for c in self.coords]
