"""Directed-rounding rational enclosures for the irrational quantities used
by the region computations (radicals, pi, sin, tan, cot, arctan).

Every value is carried as an exact rational enclosure [lower, upper].  All
operations round outward, so an inequality verified against the appropriate
endpoint of an enclosure holds for the enclosed real number.  Producers
tighten until the width is at most 10^-digits relative to max(1, |upper|),
doubling the working precision as needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rat = Union[int, Fraction]

DEFAULT_DIGITS = 12


@dataclass(frozen=True)
class BoundedReal:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"inverted bounds [{self.lower}, {self.upper}]")

    @classmethod
    def exact(cls, x: Rat) -> "BoundedReal":
        x = Fraction(x)
        return cls(x, x)

    @classmethod
    def of(cls, lo: Rat, hi: Rat) -> "BoundedReal":
        return cls(Fraction(lo), Fraction(hi))

    # -- queries -------------------------------------------------------------

    def width(self) -> Fraction:
        return self.upper - self.lower

    def is_exact(self) -> bool:
        return self.lower == self.upper

    def contains(self, x: Rat) -> bool:
        return self.lower <= x <= self.upper

    def meets_target(self, digits: int) -> bool:
        """Width at most 10^-digits relative to max(1, |upper|)."""
        scale = max(Fraction(1), abs(self.upper))
        return self.width() * 10**digits <= scale

    def midpoint_float(self) -> float:
        return float((self.lower + self.upper) / 2)

    # -- arithmetic (exact endpoints, outward by monotonicity) ---------------

    def _coerce(self, other) -> "BoundedReal":
        if isinstance(other, BoundedReal):
            return other
        return BoundedReal.exact(other)

    def __add__(self, other) -> "BoundedReal":
        o = self._coerce(other)
        return BoundedReal(self.lower + o.lower, self.upper + o.upper)

    __radd__ = __add__

    def __neg__(self) -> "BoundedReal":
        return BoundedReal(-self.upper, -self.lower)

    def __sub__(self, other) -> "BoundedReal":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BoundedReal":
        return (-self) + other

    def __mul__(self, other) -> "BoundedReal":
        o = self._coerce(other)
        products = (self.lower * o.lower, self.lower * o.upper,
                    self.upper * o.lower, self.upper * o.upper)
        return BoundedReal(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "BoundedReal":
        if self.lower <= 0 <= self.upper:
            raise ZeroDivisionError("enclosure straddles zero")
        return BoundedReal(1 / self.upper, 1 / self.lower)

    def __truediv__(self, other) -> "BoundedReal":
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "BoundedReal":
        return self.reciprocal() * other

    def rounded(self, bits: int) -> "BoundedReal":
        """Outward rounding to dyadic endpoints; keeps denominators bounded."""
        scale = 1 << bits
        lo = Fraction(math.floor(self.lower * scale), scale)
        hi = Fraction(math.ceil(self.upper * scale), scale)
        return BoundedReal(lo, hi)

    def __repr__(self) -> str:
        return f"BoundedReal({float(self.lower)}, {float(self.upper)})"


def enclose_max(*values: BoundedReal) -> BoundedReal:
    """Enclosure of the maximum of the enclosed reals."""
    if not values:
        raise ValueError("enclose_max of nothing")
    return BoundedReal(max(v.lower for v in values), max(v.upper for v in values))


def enclose_min(*values: BoundedReal) -> BoundedReal:
    if not values:
        raise ValueError("enclose_min of nothing")
    return BoundedReal(min(v.lower for v in values), min(v.upper for v in values))


# -- integer roots -----------------------------------------------------------


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0, exactly."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if k < 1:
        raise ValueError("iroot exponent must be >= 1")
    if n in (0, 1) or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)  # >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _iroot_ceil(n: int, k: int) -> int:
    r = iroot(n, k)
    return r if r**k == n else r + 1


def nth_root_bounds(x: Rat, k: int, digits: int = DEFAULT_DIGITS) -> BoundedReal:
    """Enclosure of x^(1/k) for x >= 0; exact for perfect rational powers."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("nth_root_bounds expects x >= 0")
    if k < 1:
        raise ValueError("root order must be >= 1")
    if x == 0:
        return BoundedReal.exact(0)
    if k == 1:
        return BoundedReal.exact(x)
    num, den = x.numerator, x.denominator
    rn, rd = iroot(num, k), iroot(den, k)
    if rn**k == num and rd**k == den:
        return BoundedReal.exact(Fraction(rn, rd))
    s = max(16, 4 * digits)
    while True:
        shifted = num << (k * s)
        lo_i = iroot(shifted // den, k)
        hi_i = _iroot_ceil(-(-shifted // den), k)
        out = BoundedReal(Fraction(lo_i, 1 << s), Fraction(hi_i, 1 << s))
        if lo_i > 0 and out.meets_target(digits):
            return out
        s *= 2


def root_of_enclosure(v: BoundedReal, k: int, digits: int = DEFAULT_DIGITS) -> BoundedReal:
    """Enclosure of v^(1/k); the lower endpoint is clamped at 0 so a slightly
    negative rounding artifact on a true non-negative value stays usable."""
    lo = max(Fraction(0), v.lower)
    if v.upper < 0:
        raise ValueError("root of a negative enclosure")
    return BoundedReal(nth_root_bounds(lo, k, digits).lower,
                       nth_root_bounds(v.upper, k, digits).upper)


def pow_upper(base: int, exponent: Fraction, digits: int = DEFAULT_DIGITS) -> Fraction:
    """Rational upper bound on base^exponent for integer base >= 1, exponent >= 0."""
    if base < 1 or exponent < 0:
        raise ValueError("pow_upper expects base >= 1 and exponent >= 0")
    a, b = exponent.numerator, exponent.denominator
    if b == 1:
        return Fraction(base**a)
    return nth_root_bounds(Fraction(base**a), b, digits).upper


# -- pi and trig enclosures ---------------------------------------------------


def _alternating_bracket(terms) -> tuple[Fraction, Fraction]:
    """Bracket the limit of an alternating series with decreasing term
    magnitudes; `terms` yields signed terms and a final sentinel None after
    the cutoff.  Consecutive partial sums bracket the limit."""
    total = Fraction(0)
    prev = None
    for t in terms:
        if t is None:
            break
        prev = total
        total += t
    assert prev is not None
    return (total, prev) if total <= prev else (prev, total)


def _atan_inv_terms(m: int, bits: int):
    # arctan(1/m) = 1/m - 1/(3 m^3) + 1/(5 m^5) - ...
    j = 0
    while True:
        term = Fraction(1, (2 * j + 1) * m ** (2 * j + 1))
        yield -term if j % 2 else term
        if term * (1 << bits) < 1:
            yield None
        j += 1


@lru_cache(maxsize=None)
def _pi_bits(bits: int) -> BoundedReal:
    # Machin: pi = 16*arctan(1/5) - 4*arctan(1/239)
    a_lo, a_hi = _alternating_bracket(_atan_inv_terms(5, bits + 8))
    b_lo, b_hi = _alternating_bracket(_atan_inv_terms(239, bits + 8))
    return BoundedReal(16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo).rounded(bits)


def pi_bounds(digits: int = DEFAULT_DIGITS) -> BoundedReal:
    bits = 4 * digits + 16
    while True:
        out = _pi_bits(bits)
        if out.meets_target(digits):
            return out
        bits *= 2


def _sin_bracket(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Bracket sin(x) for 0 <= x <= 2 (terms decrease from the start)."""
    total = Fraction(0)
    term = x
    j = 0
    while True:
        total += term if j % 2 == 0 else -term
        j += 1
        term = term * x * x / ((2 * j) * (2 * j + 1))
        if term * (1 << bits) < 1:
            nxt = total + (term if j % 2 == 0 else -term)
            return (total, nxt) if total <= nxt else (nxt, total)


def _cos_bracket(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Bracket cos(x) for 0 <= x < sqrt(2) (terms decrease from the start)."""
    total = Fraction(0)
    term = Fraction(1)
    j = 0
    while True:
        total += term if j % 2 == 0 else -term
        j += 1
        term = term * x * x / ((2 * j - 1) * (2 * j))
        if term * (1 << bits) < 1:
            nxt = total + (term if j % 2 == 0 else -term)
            return (total, nxt) if total <= nxt else (nxt, total)


@lru_cache(maxsize=None)
def _sin_pi_frac_bits(num: int, den: int, bits: int) -> BoundedReal:
    # sin(pi*num/den) on (0, 1/2]: increasing, so evaluate at the endpoints of
    # an enclosure of the argument.
    c = Fraction(num, den)
    pi = _pi_bits(bits + 8)
    x = (pi * c).rounded(bits + 8)
    lo = _sin_bracket(x.lower, bits)[0]
    hi = _sin_bracket(x.upper, bits)[1]
    return BoundedReal(lo, min(hi, Fraction(1))).rounded(bits)


def sin_pi_frac(c: Fraction, digits: int = DEFAULT_DIGITS) -> BoundedReal:
    """Enclosure of sin(pi*c) for rational c in (0, 1/2]."""
    c = Fraction(c)
    if not 0 < c <= Fraction(1, 2):
        raise ValueError("sin_pi_frac expects c in (0, 1/2]")
    if c == Fraction(1, 2):
        return BoundedReal.exact(1)
    if c == Fraction(1, 6):
        return BoundedReal.exact(Fraction(1, 2))
    bits = 4 * digits + 16
    while True:
        out = _sin_pi_frac_bits(c.numerator, c.denominator, bits)
        if out.meets_target(digits):
            return out
        bits *= 2


@lru_cache(maxsize=None)
def _cos_pi_frac_bits(num: int, den: int, bits: int) -> BoundedReal:
    c = Fraction(num, den)
    pi = _pi_bits(bits + 8)
    x = (pi * c).rounded(bits + 8)
    lo = _cos_bracket(x.upper, bits)[0]  # decreasing
    hi = _cos_bracket(x.lower, bits)[1]
    return BoundedReal(lo, min(hi, Fraction(1))).rounded(bits)


def _cos_pi_frac(c: Fraction, digits: int) -> BoundedReal:
    bits = 4 * digits + 16
    while True:
        out = _cos_pi_frac_bits(c.numerator, c.denominator, bits)
        if out.meets_target(digits):
            return out
        bits *= 2


def tan_pi_frac(c: Fraction, digits: int = DEFAULT_DIGITS) -> BoundedReal:
    """Enclosure of tan(pi*c) for rational c in (0, 1/4]."""
    c = Fraction(c)
    if not 0 < c <= Fraction(1, 4):
        raise ValueError("tan_pi_frac expects c in (0, 1/4]")
    if c == Fraction(1, 4):
        return BoundedReal.exact(1)
    digits_work = digits + 2
    while True:
        out = sin_pi_frac(c, digits_work) / _cos_pi_frac(c, digits_work)
        if out.meets_target(digits):
            return out
        digits_work *= 2


def cot_pi_frac(c: Fraction, digits: int = DEFAULT_DIGITS) -> BoundedReal:
    """Enclosure of cot(pi*c) for rational c in (0, 1/2]."""
    c = Fraction(c)
    if not 0 < c <= Fraction(1, 2):
        raise ValueError("cot_pi_frac expects c in (0, 1/2]")
    if c == Fraction(1, 2):
        return BoundedReal.exact(0)
    if c == Fraction(1, 4):
        return BoundedReal.exact(1)
    digits_work = digits + 2
    while True:
        out = _cos_pi_frac(c, digits_work) / sin_pi_frac(c, digits_work)
        if out.meets_target(digits):
            return out
        digits_work *= 2


def trig_bounds(kind: str, n: int, digits: int = DEFAULT_DIGITS) -> BoundedReal:
    """Enclosures for the degree-driven trig constants.

    kind "sin"  -> sin(pi/n), n >= 2
    kind "tan"  -> tan(pi/(2n)), n >= 2
    kind "cot"  -> cot(pi/(2n)), n >= 1
    """
    if kind == "sin":
        if n < 2:
            raise ValueError("sin(pi/n) bounds need n >= 2")
        return sin_pi_frac(Fraction(1, n), digits)
    if kind == "tan":
        if n < 2:
            raise ValueError("tan(pi/(2n)) bounds need n >= 2")
        return tan_pi_frac(Fraction(1, 2 * n), digits)
    if kind == "cot":
        if n < 1:
            raise ValueError("cot(pi/(2n)) bounds need n >= 1")
        return cot_pi_frac(Fraction(1, 2 * n), digits)
    raise ValueError(f"unknown trig kind {kind!r}")


def _atan_bracket(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Bracket arctan(x) for 0 <= x <= 1/2 by the alternating series."""
    if x == 0:
        return Fraction(0), Fraction(0)
    total = Fraction(0)
    term = x
    j = 0
    while True:
        total += term if j % 2 == 0 else -term
        j += 1
        term = term * x * x * (2 * j - 1) / (2 * j + 1)
        if term * (1 << bits) < 1:
            nxt = total + (term if j % 2 == 0 else -term)
            return (total, nxt) if total <= nxt else (nxt, total)


def arctan_bounds(x: BoundedReal, digits: int = DEFAULT_DIGITS) -> BoundedReal:
    """Enclosure of arctan(x) for x >= 0 (argument-halving plus series)."""
    if x.lower < 0:
        raise ValueError("arctan_bounds expects x >= 0")
    bits = 4 * digits + 24
    while True:
        t = x
        halvings = 0
        while t.upper > Fraction(1, 2):
            # arctan(t) = 2*arctan(t / (1 + sqrt(1 + t^2)))
            s = root_of_enclosure(1 + t * t, 2, digits + 8)
            t = (t / (1 + s)).rounded(bits)
            halvings += 1
        lo = _atan_bracket(t.lower, bits)[0]
        hi = _atan_bracket(t.upper, bits)[1]
        out = BoundedReal((1 << halvings) * lo, (1 << halvings) * hi).rounded(bits)
        if out.meets_target(digits):
            return out
        bits *= 2


# -- decimal rendering --------------------------------------------------------


def format_decimal(x: Rat, places: int = 18, direction: str = "floor") -> str:
    """Deterministic fixed-point decimal string, rounded in the stated
    direction so a printed upper bound stays an upper bound."""
    x = Fraction(x)
    scaled = x * 10**places
    if direction == "floor":
        units = scaled.numerator // scaled.denominator
    elif direction == "ceil":
        units = -((-scaled.numerator) // scaled.denominator)
    else:
        raise ValueError(f"unknown rounding direction {direction!r}")
    sign = "-" if units < 0 else ""
    units = abs(units)
    whole, frac = divmod(units, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"
