import cmath
import math
from fractions import Fraction

import mpmath
import pytest

from polycert.lens import (Containment, DegenerateLensError,
                           Lens, combined_region, interval_cot,
                           interval_disk_in_lens, interval_effective,
                           lens_contains, lens_of, union_angle)
from polycert.poly import parse_polynomial
from polycert.rounding import BoundedReal
from polycert.sectors import best_sector

mpmath.mp.dps = 50

FLAGSHIP = parse_polynomial("X^4-10*X^3+2162")


def mp_frac(x) -> Fraction:
    """Exact rational within 1e-30 of an mpmath value."""
    return Fraction(mpmath.nstr(x, 30, strip_zeros=False))


SLACK = Fraction(1, 10**25)


def mp_disk_interval(vt, n):
    """Oracle: the admissible interval endpoints in high precision."""
    vt = mpmath.mpf(vt)
    delta = mpmath.sqrt(1 + 1 / (4 * vt**2) - 1 / (vt * mpmath.sin(mpmath.pi / n)))
    return 1 / (2 * vt) - delta, 1 / (2 * vt) + delta


def test_lens_of_flagship():
    lens = lens_of(FLAGSHIP)
    assert lens.n == 4
    vt_oracle = mpmath.cbrt(mpmath.mpf(10) / 2162)
    assert float(lens.v_tilde.lower) <= vt_oracle <= float(lens.v_tilde.upper) + 1e-15
    assert lens.method == "neg-sum"


def test_lens_of_rejects_nonneg():
    with pytest.raises(DegenerateLensError):
        lens_of(parse_polynomial("X^3+2*X^2+2*X+4"))


def test_lens_of_preconditions():
    with pytest.raises(ValueError):
        lens_of(parse_polynomial("X^2+X+3"))
    with pytest.raises(ValueError):
        lens_of(parse_polynomial("X^4-10*X^3+X"))


def test_lens_of_matches_reciprocal_best_sector():
    f = parse_polynomial("X^4-10*X^3+2162")
    lens = lens_of(f)
    recip_sector = best_sector(f.reciprocal())
    assert lens.v_tilde == recip_sector.vertex


def test_lens_contains_center_and_far_point():
    lens = lens_of(FLAGSHIP)
    cx = (lens.v_tilde.lower + lens.v_tilde.upper) / 2
    center = 1 / (2 * Fraction(cx))
    assert lens_contains(lens, center, 0) is Containment.INSIDE
    assert lens_contains(lens, 1 / lens.v_tilde.lower + 1, 0) is Containment.OUTSIDE


def test_lens_contains_boundary_sample():
    lens = Lens(BoundedReal.exact(Fraction(3, 20)), 4)
    # top of the lens, representable only to double precision; at coarse
    # working precision the point sits within rounding width of the boundary
    vt, n = 0.15, 4
    x = 1 / (2 * vt)
    y = -1 / (2 * vt * math.tan(math.pi / n)) + math.sqrt(
        1 / (4 * vt**2 * math.sin(math.pi / n) ** 2))
    verdict = lens_contains(lens, Fraction(x), Fraction(y), digits=3)
    assert verdict is Containment.UNDECIDED


def test_lens_contains_tracks_boundary_equation():
    # points slightly inside/outside the analytic boundary curve
    vt, n = Fraction(3, 20), 4
    lens = Lens(BoundedReal.exact(vt), n)
    x = Fraction(2)
    inside_y = Fraction(0)
    y_curve = -1 / (2 * float(vt) * math.tan(math.pi / n)) + math.sqrt(
        1 / (4 * float(vt) ** 2 * math.sin(math.pi / n) ** 2)
        - (float(x) - 1 / (2 * float(vt))) ** 2)
    assert lens_contains(lens, x, inside_y) is Containment.INSIDE
    assert lens_contains(lens, x, Fraction(y_curve) * Fraction(99, 100)) is Containment.INSIDE
    assert lens_contains(lens, x, Fraction(y_curve) * Fraction(101, 100)) is Containment.OUTSIDE


def test_union_angle_limit():
    eps = Fraction(1, 10**6)
    alpha = union_angle(BoundedReal.exact(eps), BoundedReal.exact(eps), 4)
    assert abs(float(alpha.lower) - math.pi / 4) < 1e-3
    assert float(alpha.upper) <= math.pi / 4 + 1e-12


def test_union_angle_rejects_unit_product():
    one = BoundedReal.exact(1)
    with pytest.raises(ValueError):
        union_angle(one, one, 4)


def test_union_angle_flagship_inapplicable():
    lens = lens_of(FLAGSHIP)
    v = best_sector(FLAGSHIP).vertex
    with pytest.raises(ValueError):
        union_angle(v, lens.v_tilde, 4)


def test_union_angle_against_oracle():
    v, vt, n = Fraction(1, 2), Fraction(1, 10), 5
    alpha = union_angle(BoundedReal.exact(v), BoundedReal.exact(vt), n)
    s = mpmath.sin(mpmath.pi / n)
    oracle = mp_frac(mpmath.pi / n - mpmath.atan(s / mpmath.sqrt(20 - s**2)))
    assert alpha.lower - SLACK <= oracle <= alpha.upper + SLACK


def test_union_angle_containment_claim():
    # every point of the origin sector with half-angle alpha.lower lies in
    # the vertex sector or in the lens (numeric spot check)
    v, vt, n = Fraction(1, 2), Fraction(1, 10), 5
    alpha = union_angle(BoundedReal.exact(v), BoundedReal.exact(vt), n)
    a = float(alpha.lower)
    theta = math.pi / n
    r_lens = 1 / (2 * float(vt) * math.sin(theta))
    cx = 1 / (2 * float(vt))
    cy = cx / math.tan(theta)
    for phi_frac in (0.0, 0.3, -0.3, 0.7, -0.7, 0.97, -0.97):
        for r in [0.05 * 1.5**k for k in range(16)]:
            z = r * cmath.exp(1j * a * phi_frac)
            in_vertex_sector = z.real > float(v) and \
                abs(cmath.phase(z - float(v))) < theta - 1e-12
            in_lens = abs(z - complex(cx, cy)) < r_lens - 1e-12 and \
                abs(z - complex(cx, -cy)) < r_lens - 1e-12
            assert in_vertex_sector or in_lens, (z, r, phi_frac)


def test_disk_interval_flagship():
    lens = lens_of(FLAGSHIP)
    disk = interval_disk_in_lens(lens)
    vt_oracle = mpmath.cbrt(mpmath.mpf(10) / 2162)
    lo_oracle, hi_oracle = mp_disk_interval(vt_oracle, 4)
    assert disk.contains_int(3)
    # inward rounding: reported interval sits inside the oracle interval
    assert lo_oracle <= float(disk.lo.upper) <= lo_oracle + 1e-6
    assert hi_oracle - 1e-6 <= float(disk.hi.lower) <= hi_oracle
    assert abs(float(disk.lo.upper) - 1.769) < 1e-2
    assert abs(float(disk.hi.lower) - 4.233) < 1e-2


def test_disk_interval_boundary_vertex_rejected():
    # the precondition is an open interval: a vertex at or above half the
    # tangent bound (about 0.2071068 for n = 4) must be rejected
    vt = Fraction(2072, 10**4)
    with pytest.raises(ValueError):
        interval_disk_in_lens(Lens(BoundedReal.exact(vt), 4))


def test_disk_interval_widens_as_vertex_shrinks():
    # grid per degree: ascending vertices must give nested intervals
    for n in range(3, 13):
        bound = Fraction(math.pi) / (4 * n)
        vts = [bound * Fraction(1, 2) * Fraction(4, 5) ** k for k in range(20)]
        prev = None
        for vt in sorted(vts):
            disk = interval_disk_in_lens(Lens(BoundedReal.exact(vt), n))
            if prev is not None:
                assert prev.lo.upper <= disk.lo.upper + Fraction(1, 10**9)
                assert disk.hi.lower <= prev.hi.lower + Fraction(1, 10**9)
            prev = disk


def test_cot_interval_flagship():
    lens = lens_of(FLAGSHIP)
    cot = interval_cot(lens)
    assert cot.contains_int(3)
    assert abs(float(cot.lo.upper) - 2.414) < 1e-2
    assert abs(float(cot.hi.lower) - 3.588) < 1e-2


def test_cot_interval_cubic_oracle():
    lens = Lens(BoundedReal.exact(Fraction(1, 10)), 3)
    cot = interval_cot(lens)
    oracle_lo = mp_frac(1 / mpmath.tan(mpmath.pi / 6))  # sqrt(3)
    assert oracle_lo - SLACK <= cot.lo.upper <= oracle_lo + Fraction(1, 10**9)
    assert abs(cot.hi.lower - (10 - oracle_lo)) < Fraction(1, 10**9)


def test_quartic_family_vertex_condition():
    # b > 216a puts the reciprocal vertex strictly below 1/6 < tan(pi/8)/2
    a, b = 10, 2162
    lens = lens_of(parse_polynomial(f"X^4-{a}*X^3+{b}"))
    assert lens.v_tilde.upper < Fraction(1, 6)
    interval_cot(lens)  # precondition holds


def test_effective_interval():
    lens = Lens(BoundedReal.exact(Fraction(1, 10)), 4)
    eff = interval_effective(lens)
    lo_oracle = mp_frac(8 / mpmath.pi)
    assert lo_oracle - SLACK <= eff.lo.upper <= lo_oracle + Fraction(1, 10**9)
    assert abs(eff.hi.lower - (10 - lo_oracle)) < Fraction(1, 10**9)
    cot = interval_cot(lens)
    assert cot.lo.upper <= eff.lo.upper and eff.hi.lower <= cot.hi.lower


def test_effective_interval_precondition():
    # pi/16 is about 0.19635; anything at or above must be rejected
    vt = Fraction(1964, 10**4)
    with pytest.raises(ValueError):
        interval_effective(Lens(BoundedReal.exact(vt), 4))


def test_interval_inclusions_on_grid():
    for n in range(3, 13):
        bound = Fraction(math.pi) / (4 * n)
        for step in range(6):
            vt = bound * Fraction(1, 2) * Fraction(1, 4) ** step
            lens = Lens(BoundedReal.exact(vt), n)
            disk = interval_disk_in_lens(lens)
            cot = interval_cot(lens)
            eff = interval_effective(lens)
            assert disk.lo.upper <= cot.lo.upper < cot.hi.lower <= disk.hi.lower
            assert cot.lo.upper <= eff.lo.upper and eff.hi.lower <= cot.hi.lower


def test_combined_region_flagship():
    f = FLAGSHIP
    region = combined_region(best_sector(f), lens_of(f))
    assert region.interval is not None
    assert region.admits_int(3)
    assert not region.admits_int(5)
    assert region.admits_int(13)
    assert abs(float(region.ray_lo.upper) - (10 + math.sqrt(2))) < 1e-9


def test_combined_region_simplifications():
    # tiny vertex: the ray alone covers the union
    lens = Lens(BoundedReal.exact(Fraction(1, 100)), 4)
    sector = best_sector(parse_polynomial("X^4+X+1"))
    region = combined_region(sector, lens)
    assert region.simplification == "ray-covers-interval"

    # middle case: vertex between cot(pi/n) and the connected-union threshold
    from polycert.sectors import Sector, SectorKind
    mid = Sector(BoundedReal.exact(3), 4, SectorKind.PI_OVER_N, "neg-sum")
    region2 = combined_region(mid, Lens(BoundedReal.exact(Fraction(1, 100)), 4))
    assert region2.simplification == "connected-above-cot-half"


def test_combined_region_degenerate_lens():
    sector = best_sector(parse_polynomial("X^4+X+1"))
    region = combined_region(sector, None)
    assert region.interval is None and region.notes


def test_inversion_geometry_sample():
    vt, n = 0.15, 4
    lens = Lens(BoundedReal.exact(Fraction(3, 20)), n)
    r = float((lens.radius().lower + lens.radius().upper) / 2)
    cx = float((lens.center_x().lower + lens.center_x().upper) / 2)
    cy = float((lens.center_y_abs().lower + lens.center_y_abs().upper) / 2)
    for sign in (1, -1):
        for t in [0.08 * 1.45**k for k in range(12)]:
            z = vt + t * cmath.exp(sign * 1j * math.pi / n)
            w = 1 / z
            d_plus = abs(w - complex(cx, cy))
            d_minus = abs(w - complex(cx, -cy))
            assert min(abs(d_plus - r), abs(d_minus - r)) < 1e-9
