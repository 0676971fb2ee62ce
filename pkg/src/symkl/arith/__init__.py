from .cyclotomic import CyclotomicInt, cyc_reduce_to_integer
from .fields import ExtField, build_extension, is_irreducible, least_irreducible
from .poly import IntPolynomial, power_sums_from_polynomial, series_exp_from_power_sums

__all__ = [
    "CyclotomicInt", "cyc_reduce_to_integer", "ExtField", "build_extension",
    "is_irreducible", "least_irreducible", "IntPolynomial",
    "power_sums_from_polynomial", "series_exp_from_power_sums",
]
