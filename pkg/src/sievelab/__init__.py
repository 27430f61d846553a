"""Least-prime-factor sieve census, exact identity checks, and error-term
measurement with exact rational arithmetic."""

from .densities import (
    DensityEntry,
    DensityTable,
    HarmonicChain,
    Rational,
    build_density_table,
    density_identity_check,
    harmonic_lower_bound_check,
    iter_density_identity,
    iter_harmonic_chain,
    lpf_density,
    lpf_main_term,
    mertens_product,
    sift_main_term,
)
from .errorlab import (
    ChebyshevRecord,
    ErrorRecord,
    ProbeRow,
    SweepConfig,
    chebyshev_check,
    evaluate_point,
    legendre_blowup_probe,
    run_sweep,
)
from .errors import (
    CapExceededError,
    DivisorOverflowError,
    ResourceLimitError,
    SieveLabError,
)
from .moebius import (
    MoebiusSumBreakdown,
    SquarefreeDivisor,
    enumerate_divisors,
    frac_bound_b3,
    frac_remainder_sum,
    legendre_sum,
    legendre_sum_breakdown,
    lpf_count_via_moebius,
    moebius,
)
from .sieve import (
    LpfCensus,
    PrimeTable,
    Segment,
    build_prime_table,
    classify_segment,
    count_lpf,
    lpf_census,
    prime_count,
    sifting_primes,
    survivor_count,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceededError",
    "ChebyshevRecord",
    "DensityEntry",
    "DensityTable",
    "DivisorOverflowError",
    "ErrorRecord",
    "HarmonicChain",
    "LpfCensus",
    "MoebiusSumBreakdown",
    "PrimeTable",
    "ProbeRow",
    "Rational",
    "ResourceLimitError",
    "Segment",
    "SieveLabError",
    "SquarefreeDivisor",
    "SweepConfig",
    "build_density_table",
    "build_prime_table",
    "chebyshev_check",
    "classify_segment",
    "count_lpf",
    "density_identity_check",
    "enumerate_divisors",
    "evaluate_point",
    "frac_bound_b3",
    "frac_remainder_sum",
    "harmonic_lower_bound_check",
    "iter_density_identity",
    "iter_harmonic_chain",
    "legendre_blowup_probe",
    "legendre_sum",
    "legendre_sum_breakdown",
    "lpf_census",
    "lpf_count_via_moebius",
    "lpf_density",
    "lpf_main_term",
    "mertens_product",
    "moebius",
    "prime_count",
    "run_sweep",
    "sift_main_term",
    "sifting_primes",
    "survivor_count",
]
