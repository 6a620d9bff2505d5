"""Zero-free lens regions and the admissible integer intervals they admit.

The lens attached to a polynomial is the inversion (z -> 1/z) of a zero-free
sector of its reciprocal: the intersection of two open disks of radius
1/(2*vt*sin(pi/n)) centered at (1/(2*vt), +-cot(pi/n)/(2*vt)), where vt is
the reciprocal's sector vertex.  All admissible intervals are rounded inward
(shrunk) so integer membership implies the underlying strict inequalities.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .poly import Polynomial
from .rounding import (DEFAULT_DIGITS, BoundedReal, arctan_bounds, cot_pi_frac,
                       format_decimal, pi_bounds, root_of_enclosure,
                       sin_pi_frac, tan_pi_frac)
from .sectors import Sector, best_sector


class DegenerateLensError(ValueError):
    """The reciprocal's sector vertex is 0, so inversion gives back the same
    wedge at the origin instead of a bounded lens."""


@dataclass(frozen=True)
class Lens:
    v_tilde: BoundedReal
    n: int
    method: str = ""

    def __post_init__(self):
        if self.v_tilde.lower <= 0:
            raise ValueError("lens needs a strictly positive reciprocal vertex")
        if self.n < 3:
            raise ValueError("lens needs degree >= 3")

    def radius(self, digits: int = DEFAULT_DIGITS) -> BoundedReal:
        return 1 / (2 * self.v_tilde * sin_pi_frac(Fraction(1, self.n), digits))

    def center_x(self) -> BoundedReal:
        return 1 / (2 * self.v_tilde)

    def center_y_abs(self, digits: int = DEFAULT_DIGITS) -> BoundedReal:
        return cot_pi_frac(Fraction(1, self.n), digits) / (2 * self.v_tilde)

    def to_json(self, places: int = 18) -> dict:
        return {
            "v_tilde_lower": format_decimal(self.v_tilde.lower, places, "floor"),
            "v_tilde_upper": format_decimal(self.v_tilde.upper, places, "ceil"),
            "n": self.n,
            "method": self.method,
        }


def lens_of(f: Polynomial, alphas: Optional[Sequence] = None,
            digits: int = DEFAULT_DIGITS) -> Lens:
    """Lens built from the best zero-free sector of the reciprocal of f."""
    n = f.degree()
    if n < 3:
        raise ValueError("lens_of needs degree >= 3")
    if f.coefficient(0) == 0:
        raise ValueError("lens_of needs a nonzero constant term")
    g = f.reciprocal()
    if g.leading_coefficient() < 0:
        g = -g  # same roots; sector producers want a positive leading coefficient
    sector = best_sector(g, alphas, digits)
    if sector.vertex.upper == 0:
        raise DegenerateLensError(
            "reciprocal sector vertex is 0; the region is the origin wedge "
            "of half-angle pi/n itself, not a bounded lens")
    return Lens(sector.vertex, n, sector.method)


class Containment(Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    UNDECIDED = "undecided"


def lens_contains(lens: Lens, x, y, digits: int = DEFAULT_DIGITS) -> Containment:
    """Three-valued membership of an exact rational point in the open lens."""
    x, y = Fraction(x), Fraction(y)
    r2 = lens.radius(digits)
    r2 = r2 * r2
    cx = lens.center_x()
    cy = lens.center_y_abs(digits)
    dx = BoundedReal.exact(x) - cx
    verdicts = []
    for sign in (1, -1):
        dy = BoundedReal.exact(y) - sign * cy
        d2 = dx * dx + dy * dy
        if d2.upper < r2.lower:
            verdicts.append(Containment.INSIDE)
        elif d2.lower > r2.upper:
            verdicts.append(Containment.OUTSIDE)
        else:
            verdicts.append(Containment.UNDECIDED)
    if all(v is Containment.INSIDE for v in verdicts):
        return Containment.INSIDE
    if any(v is Containment.OUTSIDE for v in verdicts):
        return Containment.OUTSIDE
    return Containment.UNDECIDED


@dataclass(frozen=True)
class AdmissibleInterval:
    """Open interval of admissible integer arguments, rounded inward: a point
    is inside only when lo.upper < m < hi.lower."""

    lo: BoundedReal
    hi: BoundedReal
    source: str

    @property
    def empty(self) -> bool:
        return not self.lo.upper < self.hi.lower

    def contains_int(self, m: int) -> bool:
        return not self.empty and self.lo.upper < m < self.hi.lower

    def to_json(self, places: int = 18) -> dict:
        return {
            "lo": format_decimal(self.lo.upper, places, "ceil"),
            "hi": format_decimal(self.hi.lower, places, "floor"),
            "source": self.source,
            "empty": self.empty,
        }


def _check_narrow_vertex(lens: Lens, digits: int) -> None:
    tan = tan_pi_frac(Fraction(1, 2 * lens.n), digits)
    if not lens.v_tilde.upper < tan.lower / 2:
        raise ValueError(
            f"reciprocal vertex {float(lens.v_tilde.upper):.6g} is not provably "
            f"below tan(pi/(2*{lens.n}))/2")


def interval_disk_in_lens(lens: Lens, digits: int = DEFAULT_DIGITS) -> AdmissibleInterval:
    """The interval (1/(2vt) - delta, 1/(2vt) + delta) with
    delta = sqrt(1 + 1/(4vt^2) - 1/(vt sin(pi/n))); unit disks centered on
    integer points of this interval fit inside the lens."""
    _check_narrow_vertex(lens, digits)
    vt = lens.v_tilde
    s = sin_pi_frac(Fraction(1, lens.n), digits)
    half = 1 / (2 * vt)
    radicand = 1 + half * half - 1 / (vt * s)
    delta = root_of_enclosure(radicand, 2, digits)
    return AdmissibleInterval(half - delta, half + delta, "thm_disk_in_lens")


def interval_cot(lens: Lens, digits: int = DEFAULT_DIGITS) -> AdmissibleInterval:
    """The interval (cot(pi/(2n)), 1/vt - cot(pi/(2n))), contained in the
    disk-in-lens interval."""
    _check_narrow_vertex(lens, digits)
    cot = cot_pi_frac(Fraction(1, 2 * lens.n), digits)
    return AdmissibleInterval(cot, 1 / lens.v_tilde - cot, "cor_cot")


def interval_effective(lens: Lens, digits: int = DEFAULT_DIGITS) -> AdmissibleInterval:
    """The trig-free interval (2n/pi, 1/vt - 2n/pi); needs vt < pi/(4n)."""
    pi = pi_bounds(digits)
    if not lens.v_tilde.upper < pi.lower / (4 * lens.n):
        raise ValueError(
            f"reciprocal vertex {float(lens.v_tilde.upper):.6g} is not provably "
            f"below pi/(4*{lens.n})")
    bound = (2 * lens.n) / pi
    return AdmissibleInterval(bound, 1 / lens.v_tilde - bound, "cor_effective")


def union_angle(v: BoundedReal, v_tilde: BoundedReal, n: int,
                digits: int = DEFAULT_DIGITS) -> BoundedReal:
    """Half-angle of an origin sector contained in the union of the vertex-v
    sector and the lens: pi/n - arctan(sin(pi/n) / sqrt(1/(v*vt) - sin^2(pi/n))).

    Requires v*vt < 1 (verified on the conservative side); in that regime the
    polynomial also has no positive real roots.
    """
    if n < 2:
        raise ValueError("union_angle needs n >= 2")
    if v.lower < 0 or v_tilde.lower < 0:
        raise ValueError("union_angle expects non-negative vertices")
    if not v.upper * v_tilde.upper < 1:
        raise ValueError("union angle formula needs v * v_tilde < 1")
    work = digits + 4
    while True:
        pi_n = pi_bounds(work) * Fraction(1, n)
        s = sin_pi_frac(Fraction(1, n), work)
        product = v * v_tilde
        if product.upper == 0:
            out = pi_n
        else:
            rad_lo = 1 / product.upper - s.upper * s.upper
            arg_hi = s.upper / root_of_enclosure(BoundedReal.exact(rad_lo), 2, work).lower
            term_hi = arctan_bounds(BoundedReal.exact(arg_hi), work).upper
            if product.lower == 0:
                term_lo = Fraction(0)
            else:
                rad_hi = 1 / product.lower - s.lower * s.lower
                arg_lo = s.lower / root_of_enclosure(BoundedReal.exact(rad_hi), 2, work).upper
                term_lo = arctan_bounds(BoundedReal.exact(arg_lo), work).lower
            out = BoundedReal(pi_n.lower - term_hi, pi_n.upper - term_lo)
        if out.meets_target(digits) or work > 16 * digits:
            return out
        work *= 2


@dataclass(frozen=True)
class CombinedRegion:
    """Union of the cot-based lens interval (when available) and the ray to
    the right of vertex + 1/sin(pi/n)."""

    interval: Optional[AdmissibleInterval]
    ray_lo: BoundedReal
    simplification: Optional[str]
    notes: tuple[str, ...]

    def admits_int(self, m: int) -> bool:
        if m > self.ray_lo.upper:
            return True
        return self.interval is not None and self.interval.contains_int(m)

    def to_json(self, places: int = 18) -> dict:
        return {
            "intervals": [] if self.interval is None else [self.interval.to_json(places)],
            "ray_lo": format_decimal(self.ray_lo.upper, places, "ceil"),
            "simplification": self.simplification,
            "notes": list(self.notes),
        }


def combined_region(sector: Sector, lens: Optional[Lens],
                    digits: int = DEFAULT_DIGITS) -> CombinedRegion:
    """Assemble the two-part admissible region, dropping degenerate parts with
    a note and tagging the simplified shapes when the vertex comparisons hold
    with conservative bound directions."""
    n = sector.angle_denominator
    if n < 2:
        raise ValueError("combined region needs degree >= 2")
    s = sin_pi_frac(Fraction(1, n), digits)
    ray_lo = sector.vertex + 1 / s
    notes: list[str] = []
    interval = None
    if lens is None:
        notes.append("lens degenerate or unavailable; ray part only")
    else:
        try:
            interval = interval_cot(lens, digits)
        except ValueError as exc:
            notes.append(f"lens interval dropped: {exc}")
    simplification = None
    cot_n = cot_pi_frac(Fraction(1, n), digits)
    if sector.vertex.upper <= cot_n.lower:
        simplification = "ray-covers-interval"
    elif interval is not None and not interval.empty:
        threshold = interval.hi - 1 / s
        if cot_n.upper < sector.vertex.lower and sector.vertex.upper < threshold.lower:
            simplification = "connected-above-cot-half"
    return CombinedRegion(interval, ray_lo, simplification, tuple(notes))
