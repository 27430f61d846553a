"""Exact rational densities: Mertens products, least-prime-factor densities,
and the telescoping identity linking them.

Every quantity is a Fraction, so the identity checks are bit-exact rather
than approximate.  The density of the least-prime-factor class of p uses the
strict product over primes q < p; with that convention the telescoping sum

    sum_{p <= r} (1/p) * prod_{q < p} (1 - 1/q)  =  1 - prod_{p <= r} (1 - 1/p)

is an identity of rationals at every prime r, which the incremental builders
verify term by term.
"""

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterator, NamedTuple

from .highprec import ln_decimal, fraction_to_decimal
from .sieve import PrimeTable, sifting_primes, _require_prime

Rational = Fraction


def mertens_product(z: int, table: PrimeTable) -> Fraction:
    """prod_{p < z} (1 - 1/p), exactly; 1 when no prime lies below z."""
    if z < 2:
        raise ValueError(f"z must be >= 2, got {z}")
    prod = Fraction(1)
    for p in sifting_primes(table, z):
        prod *= Fraction(p - 1, p)
    return prod


def lpf_density(p: int, table: PrimeTable) -> Fraction:
    """Density of the integers whose least prime factor is p: (1/p) prod_{q<p}(1-1/q)."""
    _require_prime(p, table)
    return mertens_product(p, table) / p


def density_identity_check(
    r: int, table: PrimeTable
) -> tuple[Fraction, Fraction, bool]:
    """Both sides of the telescoping identity at threshold r, plus exact equality.

    The left side accumulates per-prime densities; the right side is one
    minus the full product.  The two routes share no arithmetic.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    lhs = Fraction(0)
    running = Fraction(1)
    for p in sifting_primes(table, r + 1):
        lhs += running / p
        running *= Fraction(p - 1, p)
    rhs = 1 - mertens_product(r + 1, table)
    return lhs, rhs, lhs == rhs


def iter_density_identity(
    r_max: int, table: PrimeTable
) -> Iterator[tuple[int, Fraction, Fraction, bool]]:
    """density_identity_check at every prime r <= r_max, sharing prefix work.

    The sum route and the product route are maintained as independent
    accumulators; each yielded tuple compares them exactly.
    """
    lhs = Fraction(0)
    running = Fraction(1)  # feeds the sum route only
    product = Fraction(1)  # the product route
    for p in sifting_primes(table, r_max + 1):
        lhs += running / p
        running *= Fraction(p - 1, p)
        product *= Fraction(p - 1, p)
        rhs = 1 - product
        yield p, lhs, rhs, lhs == rhs


def lpf_main_term(x: int, p: int, table: PrimeTable) -> Fraction:
    """Main-term estimate x * g(p) for the least-prime-factor class of p."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    return x * lpf_density(p, table)


def sift_main_term(x: int, z: int, table: PrimeTable) -> Fraction:
    """Sum of the per-prime main terms over all sifting primes below z.

    Telescopes to x * (1 - mertens_product(z)); computed as the sum so tests
    can compare both routes.
    """
    if z < 2:
        raise ValueError(f"z must be >= 2, got {z}")
    total = Fraction(0)
    running = Fraction(1)
    for p in sifting_primes(table, z):
        total += Fraction(x) * running / p
        running *= Fraction(p - 1, p)
    return total


class HarmonicChain(NamedTuple):
    product_inverse: Fraction
    harmonic: Fraction
    log_z: Decimal
    ordered: bool


def _chain_ordered(z: int, inv: Fraction, harm: Fraction, log_z: Decimal) -> bool:
    # at z = 2 the first link degenerates to 1 >= 1; strictness starts at z = 3
    first = inv >= harm if z == 2 else inv > harm
    return first and fraction_to_decimal(harm) > log_z


def harmonic_lower_bound_check(z: int, table: PrimeTable) -> HarmonicChain:
    """The chain prod(1-1/p)^-1 > sum_{k<z} 1/k > log z, evaluated exactly.

    Rational legs are compared exactly; the logarithm is taken at 60
    significant digits, far beyond the gap between the quantities.
    """
    if z < 2:
        raise ValueError(f"z must be >= 2, got {z}")
    inv = 1 / mertens_product(z, table)
    harm = sum((Fraction(1, k) for k in range(1, z)), Fraction(0))
    log_z = ln_decimal(z)
    return HarmonicChain(inv, harm, log_z, _chain_ordered(z, inv, harm, log_z))


def iter_harmonic_chain(z_max: int, table: PrimeTable) -> Iterator[tuple[int, HarmonicChain]]:
    """harmonic_lower_bound_check for every z in [2, z_max], incrementally."""
    if z_max < 2:
        return
    prime_set = set(sifting_primes(table, z_max))
    inv = Fraction(1)
    harm = Fraction(0)
    for z in range(2, z_max + 1):
        harm += Fraction(1, z - 1)
        if z - 1 in prime_set:
            inv *= Fraction(z - 1, z - 2)
        log_z = ln_decimal(z)
        yield z, HarmonicChain(inv, harm, log_z, _chain_ordered(z, inv, harm, log_z))


@dataclass(frozen=True)
class DensityEntry:
    p: int
    g_p: Fraction
    partial_sum: Fraction
    mertens_below_p: Fraction


@dataclass(frozen=True)
class DensityTable:
    z: int
    entries: list[DensityEntry]


def build_density_table(z: int, table: PrimeTable) -> DensityTable:
    """Per-prime densities and partial sums for all primes p <= z.

    Construction re-verifies the telescoping identity at every row and raises
    ArithmeticError on any mismatch (which would indicate a defect here, not
    bad input).
    """
    if z < 2:
        raise ValueError(f"z must be >= 2, got {z}")
    entries: list[DensityEntry] = []
    below = Fraction(1)
    partial = Fraction(0)
    for p in sifting_primes(table, z + 1):
        g = below / p
        partial += g
        through = below * Fraction(p - 1, p)
        if partial != 1 - through:
            raise ArithmeticError(f"telescoping identity failed at p = {p}")
        entries.append(DensityEntry(p, g, partial, below))
        below = through
    return DensityTable(z, entries)
