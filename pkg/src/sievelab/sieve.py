"""Prime tables and exact least-prime-factor classification of [1, x].

The classifier partitions 1..x into disjoint classes: for each sifting prime
p < z, the integers whose least prime factor is p; everything left over
(1, the primes in [z, x], and composites with no factor below z) survives.
Classification runs over fixed-size segments with bytearray slice marking, so
the hot loops stay in C.  Primes above sqrt(x) never own a composite <= x,
which lets the census switch to prime counting for the large sifting primes
instead of touching the segment array.
"""

import os
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from itertools import repeat
from math import isqrt

from .errors import ResourceLimitError

DEFAULT_SEGMENT_SIZE = 1 << 20
# Keeps every floor(x/d) accumulation exact in a 64-bit build of the math;
# Python ints would not overflow, but the cap keeps runs sane and portable.
MAX_SIEVE_X = 1 << 48
DEFAULT_MEMORY_BUDGET = 1 << 30
MEMORY_BUDGET_ENV = "SIEVELAB_MEMORY_BUDGET"


def memory_budget(override: int | None = None) -> int:
    """Effective memory budget in bytes (argument, else env var, else 1 GiB)."""
    if override is not None:
        return override
    return int(os.environ.get(MEMORY_BUDGET_ENV, DEFAULT_MEMORY_BUDGET))


@dataclass(frozen=True)
class PrimeTable:
    """All primes <= limit, ascending.  Immutable once built."""

    limit: int
    primes: tuple[int, ...]


@dataclass(frozen=True)
class LpfCensus:
    """Exact class sizes for one (x, z) sieve run.

    counts lists (p, #{n <= x : lpf(n) = p}) for every prime p < z in
    ascending order; survivors counts the integers <= x with no prime factor
    below z (always including 1).
    """

    x: int
    z: int
    counts: list[tuple[int, int]]
    survivors: int


@dataclass(frozen=True)
class Segment:
    """Per-integer classification of [lo, hi): least prime factor < z, 0 if none."""

    lo: int
    hi: int
    lpf_marks: list[int]


def build_prime_table(limit: int, *, budget: int | None = None) -> PrimeTable:
    """Sieve of Eratosthenes up to limit, returned as an immutable table.

    Raises ResourceLimitError when the sieve array would exceed the memory
    budget (override with the SIEVELAB_MEMORY_BUDGET environment variable).
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    if limit + 1 > memory_budget(budget):
        raise ResourceLimitError(
            f"prime table to {limit} needs {limit + 1} bytes, "
            f"budget is {memory_budget(budget)}"
        )
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            start = p * p
            flags[start :: p] = b"\x00" * ((limit - start) // p + 1)
    return PrimeTable(limit, tuple(i for i in range(2, limit + 1) if flags[i]))


def prime_count(x: int, table: PrimeTable) -> int:
    """pi(x): number of primes <= x.  x must be covered by the table."""
    if x > table.limit:
        raise ValueError(f"prime_count({x}) out of range for table limit {table.limit}")
    if x < 2:
        return 0
    return bisect_right(table.primes, x)


def sifting_primes(table: PrimeTable, z: int) -> tuple[int, ...]:
    """The sifting set for level z: all primes strictly below z."""
    if z > table.limit + 1:
        raise ValueError(f"sifting level {z} exceeds table limit {table.limit} + 1")
    return table.primes[: bisect_left(table.primes, z)]


def _require_prime(p: int, table: PrimeTable) -> None:
    i = bisect_left(table.primes, p)
    if i == len(table.primes) or table.primes[i] != p:
        raise ValueError(f"{p} is not a prime <= {table.limit}")


def _check_x(x: int) -> None:
    if x > MAX_SIEVE_X:
        raise ResourceLimitError(f"x = {x} exceeds the 2^48 sieve cap")


def _sieve_pass(
    x: int,
    primes: tuple[int, ...],
    segment_size: int,
    want_counts: bool,
) -> tuple[int, list[int]]:
    """Mark multiples of `primes` over [1, x] segment by segment.

    Returns (number of unmarked integers, per-prime counts of integers whose
    least listed prime factor is primes[i]).  Counts are only accumulated when
    want_counts is set; the survivor-only path skips the per-prime slice
    extraction entirely.
    """
    counts = [0] * len(primes)
    if x < 1:
        return 0, counts
    if min(segment_size, x) > memory_budget():
        raise ResourceLimitError(
            f"segment of {min(segment_size, x)} bytes exceeds the memory budget"
        )
    # longest marking lane is the p = 2 one, at most half a segment
    ones = b"\x01" * ((min(segment_size, x) + 1) // 2 + 1)
    unmarked = 0
    for lo in range(1, x + 1, segment_size):
        hi = min(lo + segment_size, x + 1)
        length = hi - lo
        seg = bytearray(length)
        for i, p in enumerate(primes):
            # first multiple of p in [lo, hi), never below p itself
            start = p if p >= lo else ((lo + p - 1) // p) * p
            if start >= hi:
                if p >= hi:
                    break  # primes ascend; no later prime has a multiple here
                continue
            a = start - lo
            if want_counts:
                lane = seg[a::p]
                counts[i] += lane.count(0)
                seg[a::p] = ones[: len(lane)]
            else:
                seg[a::p] = ones[: (length - a + p - 1) // p]
        unmarked += seg.count(0)
    return unmarked, counts


def survivor_count(
    x: int,
    z: int,
    table: PrimeTable,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> int:
    """Number of integers in [1, x] with no prime factor below z.

    Only primes up to sqrt(x) are sieved; any integer removed by a larger
    sifting prime must be that prime itself, so the tail is a prime-count
    difference rather than a segment pass.
    """
    if z < 2:
        raise ValueError(f"sifting level must be >= 2, got {z}")
    if z > table.limit + 1:
        raise ValueError(f"sifting level {z} exceeds table limit {table.limit} + 1")
    _check_x(x)
    if x < 1:
        return 0
    s = min(z - 1, isqrt(x))
    primes = table.primes[: bisect_right(table.primes, s)]
    unmarked, _ = _sieve_pass(x, primes, segment_size, want_counts=False)
    if z - 1 > s:
        hi = min(z - 1, x)
        if hi > s:
            unmarked -= prime_count(hi, table) - prime_count(s, table)
    return unmarked


def lpf_census(
    x: int,
    z: int,
    table: PrimeTable,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
) -> LpfCensus:
    """Classify [1, x] by least prime factor below z.

    The result satisfies survivors + sum(counts) == x exactly: the classes
    are disjoint and exhaustive, and 1 always survives.
    """
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    if z < 2:
        raise ValueError(f"sifting level must be >= 2, got {z}")
    _check_x(x)
    sift = sifting_primes(table, z)
    s = min(z - 1, isqrt(x))
    n_sieved = bisect_right(sift, s)
    unmarked, sieved_counts = _sieve_pass(
        x, sift[:n_sieved], segment_size, want_counts=True
    )
    counts: list[tuple[int, int]] = list(zip(sift[:n_sieved], sieved_counts))
    # Primes in (sqrt(x), z) own exactly one integer apiece (themselves) when
    # they are <= x, and none at all beyond x.
    tail = sift[n_sieved:]
    singles = bisect_right(tail, x)
    counts.extend(zip(tail[:singles], repeat(1)))
    counts.extend(zip(tail[singles:], repeat(0)))
    return LpfCensus(x, z, counts, unmarked - singles)


def count_lpf(x: int, p: int, table: PrimeTable) -> int:
    """#{n <= x : least prime factor of n is p}.

    Evaluated through the defining recursion: multiples p*m <= x whose
    cofactor m has no prime factor below p, m = 1 included.
    """
    _require_prime(p, table)
    _check_x(x)
    return survivor_count(x // p, p, table)


def classify_segment(lo: int, hi: int, z: int, table: PrimeTable) -> Segment:
    """Per-integer least-prime-factor marks for [lo, hi), sifting below z.

    Independent of any other segment; intended for oracle-grade inspection of
    small windows, not for bulk counting.
    """
    if not 1 <= lo <= hi:
        raise ValueError(f"need 1 <= lo <= hi, got [{lo}, {hi})")
    if hi - lo > DEFAULT_SEGMENT_SIZE:
        raise ValueError(f"segment [{lo}, {hi}) exceeds {DEFAULT_SEGMENT_SIZE} integers")
    marks = [0] * (hi - lo)
    for p in sifting_primes(table, z):
        start = p if p >= lo else ((lo + p - 1) // p) * p
        for m in range(start, hi, p):
            if marks[m - lo] == 0:
                marks[m - lo] = p
    return Segment(lo, hi, marks)
