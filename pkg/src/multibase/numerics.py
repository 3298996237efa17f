"""Exact and certified scalar arithmetic.

Three kinds of scalar are used throughout the package:

* ``fractions.Fraction`` (and ``int``) for exact rationals,
* :class:`Quadratic` for exact elements ``a + b*sqrt(n)`` of a real quadratic
  field, which lets bases such as the golden ratio be handled without any
  rounding,
* :class:`Interval` for certified enclosures of other reals.

:func:`compare` is the only ordering primitive the rest of the package relies
on.  It never guesses: when two enclosures overlap it answers
``Ordering.UNKNOWN``.
"""

from __future__ import annotations

import ast
import math
import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

DEFAULT_PRECISION = int(os.environ.get("MULTIBASE_PRECISION", "128"))
_precision = DEFAULT_PRECISION


def default_precision() -> int:
    """Bits used when no precision is passed explicitly."""
    return _precision


def set_default_precision(bits: int) -> None:
    global _precision
    if bits < 1:
        raise ValueError("precision must be a positive number of bits")
    _precision = int(bits)

# extra bits carried by interval arithmetic before outward rounding
_GUARD_BITS = 8


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1
    UNKNOWN = None

    def flip(self) -> "Ordering":
        if self is Ordering.LESS:
            return Ordering.GREATER
        if self is Ordering.GREATER:
            return Ordering.LESS
        return self

    @property
    def decided(self) -> bool:
        return self is not Ordering.UNKNOWN


class UndeterminedError(ArithmeticError):
    """A decision needed a comparison that is undecidable at the working precision."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def _squarefree_split(m: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``m == s*s*r``; ``r`` is squarefree when m has no large repeated factor."""
    s, r = 1, m
    f = 2
    while f * f <= r and f < 100_000:
        while r % (f * f) == 0:
            r //= f * f
            s *= f
        f += 1 if f == 2 else 2
    t = math.isqrt(r)
    if t * t == r:
        s, r = s * t, 1
    return s, r


@dataclass(frozen=True)
class Quadratic:
    """Exact number ``a + b*sqrt(n)`` with rational ``a, b`` and integer radicand ``n > 1``.

    Instances with ``b == 0`` are never created by the arithmetic; they collapse
    to ``Fraction``.
    """

    a: Fraction
    b: Fraction
    n: int

    @staticmethod
    def make(a, b, n: int) -> Union[Fraction, "Quadratic"]:
        a, b = _as_fraction(a), _as_fraction(b)
        if b == 0:
            return a
        return Quadratic(a, b, n)

    def _coerce(self, other) -> "Quadratic | None":
        if _is_rational(other):
            return Quadratic(_as_fraction(other), Fraction(0), self.n)
        if isinstance(other, Quadratic) and other.n == self.n:
            return other
        return None

    def conjugate(self) -> "Quadratic":
        return Quadratic(self.a, -self.b, self.n)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.n

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0 or sa == sb:
            return sb if sb else sa
        if sb == 0:
            return sa
        # opposite signs: compare a^2 with b^2 n
        diff = self.a * self.a - self.b * self.b * self.n
        return sa if diff > 0 else sb

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return _mixed(self, other, "+")
        return Quadratic.make(self.a + o.a, self.b + o.b, self.n)

    __radd__ = __add__

    def __neg__(self):
        return Quadratic(-self.a, -self.b, self.n)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return _mixed(self, other, "-")
        return Quadratic.make(self.a - o.a, self.b - o.b, self.n)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return _mixed(self, other, "*")
        return Quadratic.make(self.a * o.a + self.b * o.b * self.n, self.a * o.b + self.b * o.a, self.n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return _mixed(self, other, "/")
        if o.b == 0:
            if o.a == 0:
                raise ZeroDivisionError("division by zero")
            return Quadratic.make(self.a / o.a, self.b / o.a, self.n)
        return Quadratic.make(*_div_parts(self, o, o.norm()), self.n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return _mixed(other, self, "/")
        return o.__truediv__(self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return Fraction(1) / (self ** (-k))
        result: Fraction | Quadratic = Fraction(1)
        base: Fraction | Quadratic = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        return _strict(compare(self, other)) is Ordering.LESS

    def __le__(self, other):
        return _strict(compare(self, other)) in (Ordering.LESS, Ordering.EQUAL)

    def __gt__(self, other):
        return _strict(compare(self, other)) is Ordering.GREATER

    def __ge__(self, other):
        return _strict(compare(self, other)) in (Ordering.GREATER, Ordering.EQUAL)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.n)

    def to_interval(self, precision_bits: int | None = None) -> "Interval":
        if precision_bits is None:
            precision_bits = _precision
        mag = max(abs(self.b), Fraction(1))
        extra = (mag.numerator // mag.denominator).bit_length()
        root = sqrt_interval(self.n, precision_bits + extra + _GUARD_BITS)
        return (root * self.b + self.a).rounded(precision_bits)

    def __str__(self) -> str:
        return format_scalar(self)


def _div_parts(x: Quadratic, y: Quadratic, nrm: Fraction) -> tuple[Fraction, Fraction]:
    # x / y = x * conj(y) / norm(y)
    a = (x.a * y.a - x.b * y.b * x.n) / nrm
    b = (x.b * y.a - x.a * y.b) / nrm
    return a, b


def _strict(order: Ordering) -> Ordering:
    if order is Ordering.UNKNOWN:
        raise UndeterminedError("comparison undecidable at current precision")
    return order


def _floor_div_pow2(x: Fraction, shift: int) -> int:
    """floor(x * 2**shift)"""
    if shift >= 0:
        return (x.numerator << shift) // x.denominator
    return x.numerator // (x.denominator << -shift)


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with rational endpoints.

    ``precision_bits`` records the precision the enclosure was produced at;
    arithmetic rounds endpoints outward to dyadic rationals at that precision.
    Arithmetic results may be wider than ``2**(1-precision_bits)`` relative to
    their magnitude; :meth:`meets_width` checks that bound.
    """

    lo: Fraction
    hi: Fraction
    precision_bits: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x, precision_bits: int | None = None) -> "Interval":
        x = _as_fraction(x)
        if precision_bits is None:
            precision_bits = _precision
        return cls(x, x, precision_bits)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= _as_fraction(x) <= self.hi

    def meets_width(self) -> bool:
        scale = max(Fraction(1), abs(self.lo))
        return self.width <= Fraction(2) ** (1 - self.precision_bits) * scale

    def rounded(self, precision_bits: int | None = None) -> "Interval":
        bits = precision_bits if precision_bits is not None else self.precision_bits
        m = max(abs(self.lo), abs(self.hi), Fraction(1))
        e = (m.numerator // m.denominator).bit_length()
        shift = bits + _GUARD_BITS - e
        lo = Fraction(_floor_div_pow2(self.lo, shift)) / Fraction(2) ** shift
        hi = -Fraction(_floor_div_pow2(-self.hi, shift)) / Fraction(2) ** shift
        return Interval(lo, hi, bits)

    def _coerce(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        return to_interval(other, self.precision_bits)

    def _bits(self, other: "Interval") -> int:
        return min(self.precision_bits, other.precision_bits)

    def __add__(self, other):
        o = self._coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi, self._bits(o)).rounded()

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo, self.precision_bits)

    def __sub__(self, other):
        o = self._coerce(other)
        return Interval(self.lo - o.hi, self.hi - o.lo, self._bits(o)).rounded()

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(p), max(p), self._bits(o)).rounded()

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        inv = Interval(1 / o.hi, 1 / o.lo, o.precision_bits)
        return self * inv

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Interval.point(1, self.precision_bits)
        for _ in range(k):
            result = result * self
        return result

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __str__(self) -> str:
        return format_scalar(self)


Scalar = Union[int, Fraction, Quadratic, Interval]


def _mixed(x, y, op: str):
    """Arithmetic between quadratics of different radicands goes through intervals."""
    bits = _precision
    for v in (x, y):
        if isinstance(v, Interval):
            bits = v.precision_bits
    xi, yi = to_interval(x, bits), to_interval(y, bits)
    if op == "+":
        return xi + yi
    if op == "-":
        return xi - yi
    if op == "*":
        return xi * yi
    return xi / yi


def to_interval(x: Scalar, precision_bits: int | None = None) -> Interval:
    if isinstance(x, Interval):
        return x
    if isinstance(x, Quadratic):
        return x.to_interval(precision_bits)
    return Interval.point(x, precision_bits)


def coerce_scalar(x) -> Scalar:
    """Normalize user input: ints become Fractions, strings are parsed, floats are refused."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, Quadratic, Interval)):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"unsupported scalar {x!r}; use an int, Fraction or literal string")


def is_exact(x: Scalar) -> bool:
    return not isinstance(x, Interval)


def _exact_sign(x) -> int:
    if isinstance(x, Quadratic):
        return x.sign()
    x = _as_fraction(x)
    return (x > 0) - (x < 0)


def compare(a: Scalar, b: Scalar) -> Ordering:
    """Three-valued comparison of two scalars."""
    if not isinstance(a, Interval) and not isinstance(b, Interval):
        if isinstance(a, Quadratic) and isinstance(b, Quadratic) and a.n != b.n:
            return _compare_radicands(a, b)
        return Ordering(_exact_sign(a - b))
    bits = min(v.precision_bits for v in (a, b) if isinstance(v, Interval))
    ai, bi = to_interval(a, bits), to_interval(b, bits)
    if ai.hi < bi.lo:
        return Ordering.LESS
    if ai.lo > bi.hi:
        return Ordering.GREATER
    if ai.is_point and bi.is_point:
        return Ordering.EQUAL
    return Ordering.UNKNOWN


def _compare_radicands(a: Quadratic, b: Quadratic) -> Ordering:
    # 1, sqrt(m), sqrt(n) are linearly independent for distinct squarefree m, n,
    # so the values differ and refinement terminates (radicands are squarefree
    # except for astronomically large inputs, hence the cap).
    bits = 64
    while bits <= 1 << 16:
        order = compare(a.to_interval(bits), b.to_interval(bits))
        if order.decided:
            return order
        bits *= 2
    return Ordering.UNKNOWN


def sqrt_interval(n, precision_bits: int | None = None) -> Interval:
    """Dyadic enclosure of ``sqrt(n)`` of width at most ``2**(1-precision_bits)``.

    Perfect squares (of rationals with dyadic roots) come back as point intervals.
    """
    n = _as_fraction(n)
    if n < 0:
        raise ValueError("square root of a negative number")
    if precision_bits is None:
        precision_bits = _precision
    if precision_bits < 1:
        raise ValueError("precision_bits must be positive")
    k = precision_bits
    scaled = n * 4**k
    floor_scaled = scaled.numerator // scaled.denominator
    a = math.isqrt(floor_scaled)
    step = Fraction(1, 2**k)
    lo = a * step
    exact = a * a == floor_scaled and scaled.denominator == 1
    hi = lo if exact else lo + step
    return Interval(lo, hi, precision_bits)


def sqrt_exact(n) -> Fraction | Quadratic:
    """Exact square root of a nonnegative rational, as a Fraction or a Quadratic."""
    n = _as_fraction(n)
    if n < 0:
        raise ValueError("square root of a negative number")
    m = n.numerator * n.denominator
    s, r = _squarefree_split(m)
    coeff = Fraction(s, n.denominator)
    if r == 1:
        return coeff
    return Quadratic(Fraction(0), coeff, r)


class ScalarSyntaxError(ValueError):
    pass


def parse_scalar(text: str) -> Scalar:
    """Parse a scalar literal.

    Accepts integers, ``p/q``, terminating decimals (``1.9`` is exactly 19/10),
    and arithmetic with ``sqrt`` over those, e.g. ``(1+sqrt(5))/2``.
    """
    src = text.strip()
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ScalarSyntaxError(f"cannot parse scalar {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
                and not isinstance(node.value, bool):
            segment = ast.get_source_segment(src, node)
            return Fraction(segment)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                return left / right
            if isinstance(node.op, ast.Pow) and isinstance(right, Fraction) and right.denominator == 1:
                return left ** int(right)
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id == "sqrt" and len(node.args) == 1 and not node.keywords):
            arg = ev(node.args[0])
            if not _is_rational(arg):
                raise ScalarSyntaxError("sqrt takes a rational argument")
            return sqrt_exact(arg)
        raise ScalarSyntaxError(f"unsupported syntax in scalar {text!r}")

    try:
        return ev(tree)
    except ZeroDivisionError as exc:
        raise ScalarSyntaxError(f"division by zero in {text!r}") from exc


def _decimal(x: Fraction, digits: int, rounding: str) -> str:
    scale = 10**digits
    v = x * scale
    if rounding == "floor":
        i = v.numerator // v.denominator
    else:
        i = -((-v.numerator) // v.denominator)
    sign = "-" if i < 0 else ""
    i = abs(i)
    whole, frac = divmod(i, scale)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def format_scalar(x: Scalar, digits: int = 12) -> str:
    """Deterministic text form: ``p/q``, ``a+b*sqrt(n)``, or ``[lo, hi]`` in decimals."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Quadratic):
        b = x.b
        bs = "" if b == 1 else ("-" if b == -1 else f"{b}*")
        root = f"{bs}sqrt({x.n})"
        if x.a == 0:
            return root
        return f"{x.a}{root}" if b < 0 else f"{x.a}+{root}"
    return f"[{_decimal(x.lo, digits, 'floor')}, {_decimal(x.hi, digits, 'ceil')}]"
