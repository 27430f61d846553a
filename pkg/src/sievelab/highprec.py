"""High-precision real arithmetic on top of the stdlib decimal module.

Exact quantities live as Fractions everywhere else in the package; this module
is the single place where they are lowered to decimals for logarithm
comparisons, ratio columns and report rendering.  The working precision (60
significant digits) comfortably exceeds the 50 digits the comparisons need,
and the 30-digit rendering used in reports is rounded from it.
"""

from decimal import Decimal, localcontext
from fractions import Fraction

WORKING_PREC = 60
RENDER_DIGITS = 30


def fraction_to_decimal(q: Fraction, prec: int = WORKING_PREC) -> Decimal:
    """Round an exact rational to a Decimal with `prec` significant digits."""
    with localcontext() as ctx:
        ctx.prec = prec
        return Decimal(q.numerator) / Decimal(q.denominator)


def ln_decimal(n: int, prec: int = WORKING_PREC) -> Decimal:
    """Natural logarithm of a positive integer at `prec` significant digits."""
    if n <= 0:
        raise ValueError(f"ln requires a positive argument, got {n}")
    with localcontext() as ctx:
        ctx.prec = prec
        return Decimal(n).ln()


def ln_sqrt_decimal(n: int, prec: int = WORKING_PREC) -> Decimal:
    """log(sqrt(n)), i.e. ln(n)/2, at `prec` significant digits."""
    with localcontext() as ctx:
        ctx.prec = prec
        return Decimal(n).ln() / 2


def x_over_ln_sqrt(n: int, prec: int = WORKING_PREC) -> Decimal:
    """n / log(sqrt(n)) at `prec` significant digits; requires n >= 2."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    with localcontext() as ctx:
        ctx.prec = prec
        return Decimal(n) / (Decimal(n).ln() / 2)


def render(value: Decimal | Fraction, digits: int = RENDER_DIGITS) -> str:
    """Deterministic decimal string with at most `digits` significant digits."""
    if isinstance(value, Fraction):
        value = fraction_to_decimal(value)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(+value)
