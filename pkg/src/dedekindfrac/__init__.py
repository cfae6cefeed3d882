"""Exact Dedekind sums, least denominators, Kloosterman-fraction sums and
discrepancy statistics for fractional parts of Dedekind sums."""

from .core_arith import frac, gcd, mod_inverse, sawtooth
from .dedekind import (
    DedekindValue,
    dedekind_fast,
    dedekind_naive,
    dedekind_value,
    frac_rho_s,
    hickerson_frac,
)

__version__ = "0.1.0"

__all__ = [
    "DedekindValue",
    "dedekind_fast",
    "dedekind_naive",
    "dedekind_value",
    "frac",
    "frac_rho_s",
    "gcd",
    "hickerson_frac",
    "mod_inverse",
    "sawtooth",
    "__version__",
]
