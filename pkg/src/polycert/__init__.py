"""Certified zero-free sectors and lens regions for integer polynomials, and
irreducibility certificates from prime or prime-power values taken inside
those regions."""

from .arith import (FactorizationWitness, PrimalityResult, PrimalityStatus,
                    extract_witness, extract_witness_report, has_rational_root,
                    is_prime, p_adic_valuation)
from .certify import (Certificate, Check, MalformedCertificateError,
                      SearchReport, certificate_verify, certify_any,
                      certify_combined, certify_lens, certify_negative_m,
                      certify_sector_pq, certify_sector_prime_power, search_m)
from .lens import (AdmissibleInterval, CombinedRegion, Containment,
                   DegenerateLensError, Lens, combined_region,
                   interval_cot, interval_disk_in_lens, interval_effective,
                   lens_contains, lens_of, union_angle)
from .oracles import (FactorSearchResult, RootSet, in_sector,
                      irreducible_bruteforce, roots_numeric)
from .poly import (ParseError, PartialSums, Polynomial, SignBlock,
                   SignBlockPartition, SignIndexSets, parse_polynomial,
                   partial_sums, shift_coeffs, sign_blocks, sign_index_sets)
from .rounding import (BoundedReal, arctan_bounds, nth_root_bounds, pi_bounds,
                       trig_bounds)
from .sectors import (Sector, SectorKind, best_sector, sector_candidates,
                      sector_min_over_positives, sector_neg_sum, sector_nonneg,
                      sector_parametrized, sector_shifted, sector_sign_blocks,
                      sector_summed_denominator)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
