"""Matrix-product codes with polynomial units over cyclic codes."""

from .codeops import extend, puncture, same_code, shorten
from .cyclic import CyclicCode, enumerate_divisors, generator_matrix, is_nested, make_cyclic, min_weight_words
from .mindist import LinearCode, min_distance_exhaustive, min_distance_oracle, rank_and_reduce
from .mpu import (Certificate, UnitMatrix, build_mp, candidate_low_weight_words, dstar, encode,
                  full_rank_certificate, normalize_plotkin, paper_spec, plotkin_matrix,
                  row_module_min_blockweight)
from .ringcore import (Poly, RingElement, factor_xm_minus_1, format_poly, is_unit, parse_poly,
                       poly_gcd, poly_weight, ring_inverse, ring_mul)

__all__ = [
    "Certificate", "CyclicCode", "LinearCode", "Poly", "RingElement", "UnitMatrix",
    "build_mp", "candidate_low_weight_words", "dstar", "encode", "enumerate_divisors", "extend",
    "factor_xm_minus_1", "format_poly", "full_rank_certificate", "generator_matrix", "is_nested",
    "is_unit", "make_cyclic", "min_distance_exhaustive", "min_distance_oracle", "min_weight_words",
    "normalize_plotkin", "paper_spec", "parse_poly", "plotkin_matrix", "poly_gcd", "poly_weight",
    "puncture", "rank_and_reduce", "ring_inverse", "ring_mul", "row_module_min_blockweight",
    "same_code", "shorten",
]
