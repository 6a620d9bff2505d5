"""Irreducibility certificates from prime or prime-power values taken inside
a zero-free region.

Every certificate records the region used, the factorization witness, and
each real-number inequality together with its conservatively rounded bounds
and a strictly positive margin.  certificate_verify re-derives everything
from scratch at the recorded precision (field-exact replay) and again at
doubled precision (margin discipline).
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arith import (FactorizationWitness, PrimalityStatus,
                    extract_witness_report, has_rational_root)
from .lens import (DegenerateLensError, Lens, interval_cot,
                   interval_disk_in_lens, lens_of)
from .poly import Polynomial, sign_blocks, sign_index_sets
from .rounding import (DEFAULT_DIGITS, format_decimal, nth_root_bounds,
                       pow_upper, sin_pi_frac, tan_pi_frac)
from .sectors import Sector, best_sector

SCHEMA_VERSION = 1

CRIT_THM_PQ = "thm31_pq"
CRIT_THM_PQ_SQRT = "thm31_sqrt_q"
CRIT_THM_POWER = "thm35_prime_power"
CRIT_THM_POWER_SQRT = "thm35_sqrt"
CRIT_LENS = "thm39_lens"
CRIT_LENS_COT = "cor310_cot"
CRIT_COMBINED = "cor312_combined"
CRIT_NONNEG = "cor32_nonneg"
CRIT_PARTIAL_SUMS = "cor34_partial_sums"
CRIT_LEADING_DOMINANT = "cor35_fujiwara"
CRIT_SINGLE_VARIATION = "cor38_single_variation"

SECTOR_PQ_TAGS = frozenset({CRIT_THM_PQ, CRIT_THM_PQ_SQRT, CRIT_NONNEG,
                            CRIT_PARTIAL_SUMS, CRIT_LEADING_DOMINANT,
                            CRIT_SINGLE_VARIATION})
POWER_TAGS = frozenset({CRIT_THM_POWER, CRIT_THM_POWER_SQRT})
LENS_TAGS = frozenset({CRIT_LENS, CRIT_LENS_COT})

_PLACES = 18


class MalformedCertificateError(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    """A verified strict inequality left < right, both sides conservatively
    rounded before the comparison was made."""

    description: str
    left: Fraction
    right: Fraction

    @property
    def margin(self) -> Fraction:
        return self.right - self.left

    def to_json(self) -> dict:
        return {
            "description": self.description,
            "left": format_decimal(self.left, _PLACES, "ceil"),
            "right": format_decimal(self.right, _PLACES, "floor"),
            "margin": format_decimal(self.margin, _PLACES, "floor"),
        }


def _witness_json(w: FactorizationWitness) -> dict:
    return {
        "p": w.p,
        "k": w.k,
        "q": w.q,
        "ell": w.ell,
        "r": w.r,
        "s": None if w.s is None else str(w.s),
        "alternatives": [list(t) for t in w.alternatives],
    }


@dataclass(frozen=True)
class Certificate:
    polynomial: Polynomial
    m: int
    criterion: str
    region: dict
    witness: FactorizationWitness
    checks: tuple[Check, ...]
    primality_status: str
    conditional: bool
    q_max: int
    digits: int
    negated_argument: bool = False

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "polynomial": list(self.polynomial.coeffs),
            "m": self.m,
            "criterion": self.criterion,
            "region": self.region,
            "witness": _witness_json(self.witness),
            "checks": [c.to_json() for c in self.checks],
            "primality": self.primality_status,
            "conditional": self.conditional,
            "q_max": self.q_max,
            "digits": self.digits,
            "negated_argument": self.negated_argument,
        }


def _finish(f: Polynomial, m: int, criterion: str, region: dict,
            witness: FactorizationWitness, checks: Sequence[Check],
            q_max: int, digits: int) -> Certificate:
    if any(c.margin <= 0 for c in checks):
        raise AssertionError("internal error: non-positive margin recorded")
    return Certificate(
        polynomial=f, m=m, criterion=criterion, region=region, witness=witness,
        checks=tuple(checks), primality_status=witness.primality.status.value,
        conditional=witness.primality.status is PrimalityStatus.PROBABLE_PRIME,
        q_max=q_max, digits=digits)


def _sector_tag(f: Polynomial, sector: Sector, witness: FactorizationWitness,
                used_sqrt: bool) -> str:
    if used_sqrt:
        return CRIT_THM_PQ_SQRT
    if witness.q == 1 and witness.k == 1:
        if sector.method == "nonneg":
            return CRIT_NONNEG
        if sector.method == "shifted:1":
            return CRIT_PARTIAL_SUMS
        if sector.method == "neg-sum":
            sets = sign_index_sets(f)
            if f.leading_coefficient() > sets.neg_sum_abs:
                return CRIT_LEADING_DOMINANT
        if sector.method in ("summed-denominator", "sign-blocks"):
            if sign_blocks(f).sign_changes == 1 and f.evaluate(1) > 0:
                return CRIT_SINGLE_VARIATION
    return CRIT_THM_PQ


def _validate_sector_input(f: Polynomial, m: int) -> None:
    if f.degree() < 2:
        raise ValueError("certification needs degree >= 2")
    if f.leading_coefficient() <= 0:
        raise ValueError("certification needs a positive leading coefficient")
    if m < 1:
        raise ValueError("certification needs m >= 1")


def certify_sector_pq(f: Polynomial, m: int, q_max: int = 1,
                      digits: int = DEFAULT_DIGITS,
                      alphas: Optional[Sequence] = None,
                      _sector: Optional[Sector] = None,
                      ) -> Optional[Certificate]:
    cert, _ = certify_sector_pq_report(f, m, q_max, digits, alphas, _sector)
    return cert


def certify_sector_pq_report(f: Polynomial, m: int, q_max: int = 1,
                             digits: int = DEFAULT_DIGITS,
                             alphas: Optional[Sequence] = None,
                             _sector: Optional[Sector] = None,
                             ) -> tuple[Optional[Certificate], str]:
    """f(m) = p*q with p prime and a disk of radius q (or sqrt(q) when f has
    no rational roots) around m inside the zero-free sector."""
    _validate_sector_input(f, m)
    value = f.evaluate(m)
    witness, reason = extract_witness_report(value, 0, q_max, "pq")
    if witness is None:
        return None, reason
    sector = _sector if _sector is not None else best_sector(f, alphas, digits)
    sin_lo = sin_pi_frac(Fraction(1, sector.angle_denominator), digits).lower
    threshold = sector.vertex.upper + Fraction(witness.q) / sin_lo
    used_sqrt = False
    if not m > threshold:
        if witness.q == 1:
            return None, "outside-region"
        has_root, _ = has_rational_root(f)
        if has_root:
            return None, "outside-region"
        threshold = sector.vertex.upper + nth_root_bounds(witness.q, 2, digits).upper / sin_lo
        if not m > threshold:
            return None, "outside-region"
        used_sqrt = True
    desc = ("m exceeds vertex + sqrt(q)/sin(pi/n)" if used_sqrt
            else "m exceeds vertex + q/sin(pi/n)")
    checks = [Check(desc, threshold, Fraction(m))]
    tag = _sector_tag(f, sector, witness, used_sqrt)
    region = {"kind": "sector", "sector": sector.to_json(_PLACES)}
    return _finish(f, m, tag, region, witness, checks, q_max, digits), "ok"


def certify_sector_prime_power(f: Polynomial, m: int, q_max: int = 1,
                               digits: int = DEFAULT_DIGITS,
                               alphas: Optional[Sequence] = None,
                               _sector: Optional[Sector] = None,
                               ) -> Optional[Certificate]:
    cert, _ = certify_sector_prime_power_report(f, m, q_max, digits, alphas, _sector)
    return cert


def certify_sector_prime_power_report(f: Polynomial, m: int, q_max: int = 1,
                                      digits: int = DEFAULT_DIGITS,
                                      alphas: Optional[Sequence] = None,
                                      _sector: Optional[Sector] = None,
                                      ) -> tuple[Optional[Certificate], str]:
    """f(m) = p^k*q with the derivative's p-valuation bounding the disk radius
    p^s*q, s = min(ell, k/2)."""
    _validate_sector_input(f, m)
    value = f.evaluate(m)
    deriv = f.derivative().evaluate(m)
    witness, reason = extract_witness_report(value, deriv, q_max, "prime_power")
    if witness is None:
        return None, reason
    sector = _sector if _sector is not None else best_sector(f, alphas, digits)
    sin_lo = sin_pi_frac(Fraction(1, sector.angle_denominator), digits).lower
    radius_up = pow_upper(witness.p, witness.s, digits) * witness.q
    threshold = sector.vertex.upper + radius_up / sin_lo
    used_sqrt = False
    if not m > threshold:
        if radius_up <= 1:
            return None, "outside-region"
        has_root, _ = has_rational_root(f)
        if has_root:
            return None, "outside-region"
        a, b = witness.s.numerator, witness.s.denominator
        sqrt_radius_up = nth_root_bounds(
            Fraction(witness.p**a * witness.q**b), 2 * b, digits).upper
        threshold = sector.vertex.upper + sqrt_radius_up / sin_lo
        if not m > threshold:
            return None, "outside-region"
        used_sqrt = True
    desc = ("m exceeds vertex + sqrt(p^s*q)/sin(pi/n)" if used_sqrt
            else "m exceeds vertex + p^s*q/sin(pi/n)")
    checks = [Check(desc, threshold, Fraction(m))]
    tag = CRIT_THM_POWER_SQRT if used_sqrt else CRIT_THM_POWER
    region = {"kind": "sector", "sector": sector.to_json(_PLACES)}
    return _finish(f, m, tag, region, witness, checks, q_max, digits), "ok"


def certify_lens(f: Polynomial, m: int, digits: int = DEFAULT_DIGITS,
                 alphas: Optional[Sequence] = None,
                 _lens: Optional[Lens] = None,
                 ) -> Optional[Certificate]:
    cert, _ = certify_lens_report(f, m, digits, alphas, _lens)
    return cert


def certify_lens_report(f: Polynomial, m: int, digits: int = DEFAULT_DIGITS,
                        alphas: Optional[Sequence] = None,
                        _lens: Optional[Lens] = None,
                        ) -> tuple[Optional[Certificate], str]:
    """f(m) prime with a unit disk around m inside the zero-free lens; m must
    lie in the inward-rounded admissible interval.  The cot-based interval is
    recorded as a cross-check and names the criterion when it also contains m."""
    if f.degree() < 3 or f.coefficient(0) == 0:
        return None, "lens-inapplicable"
    if m < 1:
        raise ValueError("certification needs m >= 1")
    try:
        lens = _lens if _lens is not None else lens_of(f, alphas, digits)
    except DegenerateLensError:
        return None, "lens-degenerate"
    try:
        disk = interval_disk_in_lens(lens, digits)
        cot = interval_cot(lens, digits)
    except ValueError:
        return None, "vertex-too-large"
    value = f.evaluate(m)
    witness, reason = extract_witness_report(value, 0, 1, "pq")
    if witness is None:
        return None, reason
    if not disk.contains_int(m):
        return None, "outside-region"
    tan_lo = tan_pi_frac(Fraction(1, 2 * lens.n), digits).lower
    checks = [
        Check("reciprocal vertex below tan(pi/(2n))/2",
              lens.v_tilde.upper, tan_lo / 2),
        Check("m above disk-in-lens interval lower end", disk.lo.upper, Fraction(m)),
        Check("m below disk-in-lens interval upper end", Fraction(m), disk.hi.lower),
    ]
    tag = CRIT_LENS
    if cot.contains_int(m):
        tag = CRIT_LENS_COT
        checks.append(Check("m above cot interval lower end", cot.lo.upper, Fraction(m)))
        checks.append(Check("m below cot interval upper end", Fraction(m), cot.hi.lower))
    region = {
        "kind": "lens-interval",
        "lens": lens.to_json(_PLACES),
        "intervals": [disk.to_json(_PLACES), cot.to_json(_PLACES)],
    }
    return _finish(f, m, tag, region, witness, checks, 1, digits), "ok"


def certify_combined(f: Polynomial, m: int, q_max: int = 1,
                     digits: int = DEFAULT_DIGITS,
                     alphas: Optional[Sequence] = None,
                     ) -> Optional[Certificate]:
    cert, _ = certify_combined_report(f, m, q_max, digits, alphas)
    return cert


def certify_combined_report(f: Polynomial, m: int, q_max: int = 1,
                            digits: int = DEFAULT_DIGITS,
                            alphas: Optional[Sequence] = None,
                            ) -> tuple[Optional[Certificate], str]:
    """Union region: the lens interval or the ray beyond vertex + 1/sin(pi/n);
    dispatches to the lens criterion first, then the prime-value sector
    criterion with q = 1, and records the branch that succeeded."""
    lens_cert, lens_reason = certify_lens_report(f, m, digits, alphas)
    if lens_cert is not None:
        region = dict(lens_cert.region)
        region["kind"] = "combined"
        region["branch"] = "lens"
        return dataclasses.replace(lens_cert, criterion=CRIT_COMBINED,
                                   region=region, q_max=q_max), "ok"
    ray_cert, ray_reason = certify_sector_pq_report(f, m, 1, digits, alphas)
    if ray_cert is not None:
        region = dict(ray_cert.region)
        region["kind"] = "combined"
        region["branch"] = "ray"
        return dataclasses.replace(ray_cert, criterion=CRIT_COMBINED,
                                   region=region, q_max=q_max), "ok"
    for preferred in ("value-composite", "outside-region"):
        if preferred in (lens_reason, ray_reason):
            return None, preferred
    return None, ray_reason


# -- search -------------------------------------------------------------------

DEFAULT_MODES = ("lens", "pq", "prime_power")


@dataclass(frozen=True)
class SearchOutcome:
    m: int
    outcome: str  # certified | value-composite | outside-region | witness-absent
    detail: str


@dataclass(frozen=True)
class SearchReport:
    lo: int
    hi: int
    scanned_hi: int
    q_max: int
    outcomes: tuple[SearchOutcome, ...]
    certificate: Optional[Certificate]


_WITNESS_ABSENT = {"value-nonpositive", "no-split", "q-exceeds", "derivative-zero",
                   "lens-degenerate", "lens-inapplicable", "vertex-too-large"}


def _classify(reasons: list[str]) -> tuple[str, str]:
    if "outside-region" in reasons:
        return "outside-region", "outside-region"
    if "value-composite" in reasons:
        return "value-composite", "value-composite"
    return "witness-absent", ";".join(sorted(set(reasons)))


def search_m(f: Polynomial, lo: int, hi: int, q_max: int = 1,
             modes: Optional[Sequence[str]] = None,
             digits: int = DEFAULT_DIGITS,
             alphas: Optional[Sequence] = None,
             exhaustive: bool = False) -> SearchReport:
    """Scan m ascending, trying the enabled criteria in a fixed order (lens
    first, then prime-value sector, then prime-power sector); stops at the
    first certificate unless exhaustive."""
    if not 1 <= lo <= hi:
        raise ValueError("search range must satisfy 1 <= lo <= hi")
    modes = tuple(DEFAULT_MODES if modes is None else modes)
    unknown = set(modes) - set(DEFAULT_MODES)
    if unknown:
        raise ValueError(f"unknown search modes {sorted(unknown)}")
    _validate_sector_input(f, lo)

    sector = best_sector(f, alphas, digits)
    lens = None
    if "lens" in modes and f.degree() >= 3 and f.coefficient(0) != 0:
        try:
            lens = lens_of(f, alphas, digits)
        except (DegenerateLensError, ValueError):
            lens = None

    outcomes: list[SearchOutcome] = []
    certificate = None
    scanned_hi = lo - 1
    for m in range(lo, hi + 1):
        scanned_hi = m
        reasons = []
        cert = None
        if "lens" in modes:
            cert, reason = certify_lens_report(f, m, digits, alphas, _lens=lens) \
                if lens is not None else (None, "lens-degenerate")
            if cert is None:
                reasons.append(reason)
        if cert is None and "pq" in modes:
            cert, reason = certify_sector_pq_report(f, m, q_max, digits, alphas,
                                                    _sector=sector)
            if cert is None:
                reasons.append(reason)
        if cert is None and "prime_power" in modes:
            cert, reason = certify_sector_prime_power_report(f, m, q_max, digits,
                                                             alphas, _sector=sector)
            if cert is None:
                reasons.append(reason)
        if cert is not None:
            outcomes.append(SearchOutcome(m, "certified", cert.criterion))
            if certificate is None:
                certificate = cert
            if not exhaustive:
                break
        else:
            outcome, detail = _classify(reasons)
            outcomes.append(SearchOutcome(m, outcome, detail))
    return SearchReport(lo, hi, scanned_hi, q_max, tuple(outcomes), certificate)


# -- negative-argument wrapper -------------------------------------------------


def _negated_form(f: Polynomial) -> Polynomial:
    """+-f(-X), sign chosen so the leading coefficient is positive; shares
    irreducibility with f."""
    g = f.negate_argument()
    return -g if g.leading_coefficient() < 0 else g


def certify_negative_m(f: Polynomial, m: int, q_max: int = 1,
                       digits: int = DEFAULT_DIGITS,
                       modes: Optional[Sequence[str]] = None,
                       ) -> Optional[Certificate]:
    """Certify f at a negative integer m through +-f(-X) at -m; the returned
    certificate references the original polynomial and argument."""
    if m >= 0:
        raise ValueError("certify_negative_m expects m < 0")
    inner = certify_any(_negated_form(f), -m, q_max, digits, modes)
    if inner is None:
        return None
    return dataclasses.replace(inner, polynomial=f, m=m, negated_argument=True)


def certify_any(f: Polynomial, m: int, q_max: int = 1,
                digits: int = DEFAULT_DIGITS,
                modes: Optional[Sequence[str]] = None,
                ) -> Optional[Certificate]:
    """First certificate from the enabled criteria in the standard order."""
    modes = tuple(DEFAULT_MODES if modes is None else modes)
    if "lens" in modes:
        cert = certify_lens(f, m, digits)
        if cert is not None:
            return cert
    if "pq" in modes:
        cert = certify_sector_pq(f, m, q_max, digits)
        if cert is not None:
            return cert
    if "prime_power" in modes:
        cert = certify_sector_prime_power(f, m, q_max, digits)
        if cert is not None:
            return cert
    return None


# -- replay -------------------------------------------------------------------

_REQUIRED_FIELDS = ("schema", "polynomial", "m", "criterion", "region", "witness",
                    "checks", "primality", "conditional", "q_max", "digits",
                    "negated_argument")


def _rebuild(f: Polynomial, m: int, criterion: str, q_max: int, digits: int,
             negated: bool) -> Optional[Certificate]:
    if negated:
        inner = _rebuild(_negated_form(f), -m, criterion, q_max, digits, False)
        if inner is None:
            return None
        return dataclasses.replace(inner, polynomial=f, m=m, negated_argument=True)
    if criterion in SECTOR_PQ_TAGS:
        return certify_sector_pq(f, m, q_max, digits)
    if criterion in POWER_TAGS:
        return certify_sector_prime_power(f, m, q_max, digits)
    if criterion in LENS_TAGS:
        return certify_lens(f, m, digits)
    if criterion == CRIT_COMBINED:
        return certify_combined(f, m, q_max, digits)
    raise MalformedCertificateError(f"unknown criterion {criterion!r}")


def certificate_verify(cert) -> bool:
    """Re-derive every recorded quantity from scratch.

    The certificate is recomputed at its recorded precision and must match
    field for field; it is then recomputed at doubled precision to confirm
    every margin stays strictly positive.  Structural problems raise
    MalformedCertificateError; any mismatch returns False.
    """
    data = cert.to_json() if isinstance(cert, Certificate) else cert
    if not isinstance(data, dict):
        raise MalformedCertificateError("certificate must be a JSON object")
    missing = [k for k in _REQUIRED_FIELDS if k not in data]
    if missing:
        raise MalformedCertificateError(f"missing fields: {missing}")
    if data["schema"] != SCHEMA_VERSION:
        raise MalformedCertificateError(f"unsupported schema {data['schema']!r}")
    try:
        f = Polynomial(data["polynomial"])
        m = int(data["m"])
        criterion = str(data["criterion"])
        q_max = int(data["q_max"])
        digits = int(data["digits"])
        negated = bool(data["negated_argument"])
    except (TypeError, ValueError) as exc:
        raise MalformedCertificateError(f"bad field: {exc}") from None
    if digits < 1 or digits > 200 or q_max < 1:
        raise MalformedCertificateError("digits or q_max out of range")
    try:
        replay = _rebuild(f, m, criterion, q_max, digits, negated)
    except ValueError as exc:
        if isinstance(exc, MalformedCertificateError):
            raise
        return False
    if replay is None or replay.to_json() != data:
        return False
    try:
        doubled = _rebuild(f, m, criterion, q_max, 2 * digits, negated)
    except ValueError:
        return False
    return doubled is not None and doubled.criterion == criterion
