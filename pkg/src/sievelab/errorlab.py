"""Measurement harness for the sieve error term.

An evaluation point (x, z) produces the exact survivor count, the rational
main term x * prod_{p<z}(1 - 1/p), their exact difference, and the candidate
bounds worth comparing against: the number of sifting primes (linear claim),
its power of two (classical inclusion-exclusion term count, reported as the
exponent), and the exact fractional-part quantities.  Everything asserted is
exact; the ratio columns are measurements and carry no pass/fail meaning.
"""

import math
import time
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt

from .densities import mertens_product
from .errors import CapExceededError
from .highprec import WORKING_PREC, fraction_to_decimal, x_over_ln_sqrt
from .moebius import (
    DEFAULT_MAX_PI_Z,
    frac_bound_b3,
    frac_remainder_sum,
    legendre_sum,
)
from .sieve import (
    DEFAULT_SEGMENT_SIZE,
    PrimeTable,
    prime_count,
    survivor_count,
)

# Per-point Möbius cross-checks are enabled by default only this far; the
# divisor enumeration doubles per extra sifting prime.
MOEBIUS_CHECK_MAX_Z = 31


@dataclass(frozen=True)
class ErrorRecord:
    """One (x, z) evaluation: exact counts, main term, error, and bounds."""

    x: int
    z: int
    survivors: int
    main_term: Fraction
    error: Fraction
    pi_z: int
    log2_legendre_bound: int
    b3_bound: Fraction | None
    frac_remainder: Fraction | None
    ratio_error_to_pi_z: Decimal
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class ChebyshevRecord:
    """Exact prime-counting inclusion at z = floor(sqrt(x)) + 1."""

    x: int
    z_used: int
    pi_x: int
    s_plus_pi_z: int
    mertens_upper: Decimal
    holds_54: bool
    holds_53: bool


@dataclass(frozen=True)
class ProbeRow:
    z: int
    term_count: int
    wall_time: float | None
    status: str


def evaluate_point(
    x: int,
    z: int,
    table: PrimeTable,
    *,
    moebius_cross_check: bool = True,
    frac_remainder: bool = False,
    max_pi_z: int = DEFAULT_MAX_PI_Z,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> ErrorRecord:
    """Evaluate one sweep point exactly.

    Cap violations in the optional Möbius quantities downgrade to absent
    fields (flagged), never abort.  A disagreement between two exact routes
    raises ArithmeticError: that would be an implementation defect, not data.
    """
    if not 2 <= z <= x:
        raise ValueError(f"need 2 <= z <= x, got z={z}, x={x}")
    if z > table.limit:
        raise ValueError(f"z={z} exceeds table limit {table.limit}")
    survivors = survivor_count(x, z, table, segment_size=segment_size)
    main_term = x * mertens_product(z, table)
    error = survivors - main_term
    flags: list[str] = []

    frac_value: Fraction | None = None
    if frac_remainder:
        try:
            frac_value = frac_remainder_sum(x, z, table, max_pi_z=max_pi_z)
        except CapExceededError:
            flags.append("frac=cap")
        else:
            if frac_value != error:
                raise ArithmeticError(
                    f"remainder identity failed at (x={x}, z={z}): "
                    f"{frac_value} != {error}"
                )
            flags.append("frac=ok")

    if moebius_cross_check and z <= MOEBIUS_CHECK_MAX_Z:
        try:
            cross = legendre_sum(x, z, table, max_pi_z=max_pi_z)
        except CapExceededError:
            flags.append("moebius=cap")
        else:
            if cross != survivors:
                raise ArithmeticError(
                    f"Legendre sum {cross} != survivor count {survivors} "
                    f"at (x={x}, z={z})"
                )
            flags.append("moebius=ok")

    pi_z = prime_count(z, table)
    return ErrorRecord(
        x=x,
        z=z,
        survivors=survivors,
        main_term=main_term,
        error=error,
        pi_z=pi_z,
        log2_legendre_bound=prime_count(z - 1, table),
        b3_bound=frac_bound_b3(x, z, table),
        frac_remainder=frac_value,
        ratio_error_to_pi_z=fraction_to_decimal(abs(error) / pi_z),
        flags=tuple(flags),
    )


@dataclass(frozen=True)
class SweepConfig:
    """Grid of sweep points plus evaluation options.

    z_rule is one of "sqrt" (z = floor(sqrt(x)), clamped up to 2), "fixed"
    (z = z_fixed everywhere) or "logx" (z = floor(ln x), clamped up to 2).
    """

    x_values: tuple[int, ...]
    z_rule: str = "sqrt"
    z_fixed: int | None = None
    moebius_cross_check: bool = True
    frac_remainder: bool = False
    max_pi_z: int = DEFAULT_MAX_PI_Z
    segment_size: int = DEFAULT_SEGMENT_SIZE
    output_format: str = "csv"

    def z_for(self, x: int) -> int:
        if self.z_rule == "sqrt":
            return max(2, isqrt(x))
        if self.z_rule == "fixed":
            if self.z_fixed is None:
                raise ValueError("z_rule 'fixed' requires z_fixed")
            return self.z_fixed
        if self.z_rule == "logx":
            return max(2, int(math.log(x)))
        raise ValueError(f"unknown z_rule {self.z_rule!r}")

    def points(self) -> list[tuple[int, int]]:
        pts = sorted((x, self.z_for(x)) for x in self.x_values)
        for x, z in pts:
            if not 2 <= z <= x:
                raise ValueError(f"sweep point violates 2 <= z <= x: x={x}, z={z}")
        return pts


def run_sweep(config: SweepConfig, table: PrimeTable) -> list[ErrorRecord]:
    """Evaluate every configured point, ordered by (x, z), deterministically."""
    return [
        evaluate_point(
            x,
            z,
            table,
            moebius_cross_check=config.moebius_cross_check,
            frac_remainder=config.frac_remainder,
            max_pi_z=config.max_pi_z,
            segment_size=config.segment_size,
        )
        for x, z in config.points()
    ]


def chebyshev_check(x: int, table: PrimeTable) -> ChebyshevRecord:
    """Exact inclusion pi(x) <= survivors + pi(floor(sqrt(x))).

    Uses z = floor(sqrt(x)) + 1 so that every composite <= x is sifted; the
    inclusion is then a set fact: each prime <= x either lies below z or
    survives.  holds_53 is a diagnostic against x/log(sqrt(x)) with the
    unspecified constant taken as 1.
    """
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    if x > table.limit:
        raise ValueError(f"x={x} exceeds table limit {table.limit}")
    z_used = isqrt(x) + 1
    survivors = survivor_count(x, z_used, table)
    pi_x = prime_count(x, table)
    s_plus = survivors + prime_count(z_used - 1, table)
    mertens_upper = x_over_ln_sqrt(x)
    with localcontext() as ctx:
        ctx.prec = WORKING_PREC
        holds_53 = Decimal(survivors) < mertens_upper + prime_count(z_used, table)
    return ChebyshevRecord(
        x=x,
        z_used=z_used,
        pi_x=pi_x,
        s_plus_pi_z=s_plus,
        mertens_upper=mertens_upper,
        holds_54=pi_x <= s_plus,
        holds_53=holds_53,
    )


def legendre_blowup_probe(
    z_max: int,
    x: int,
    table: PrimeTable,
    *,
    max_pi_z: int = DEFAULT_MAX_PI_Z,
) -> list[ProbeRow]:
    """Term counts (exact) and wall times for the full Möbius sum as z grows.

    Rows past the enumeration cap are still emitted with the exact term count
    and status "cap"; only the timing is absent there.
    """
    rows: list[ProbeRow] = []
    for z in range(2, z_max + 1):
        k = prime_count(z - 1, table)
        term_count = 1 << k
        try:
            t0 = time.perf_counter()
            legendre_sum(x, z, table, max_pi_z=max_pi_z)
            rows.append(ProbeRow(z, term_count, time.perf_counter() - t0, "ok"))
        except CapExceededError:
            rows.append(ProbeRow(z, term_count, None, "cap"))
    return rows
