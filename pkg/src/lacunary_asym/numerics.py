"""Precision management and numerically stable summation primitives.

All approximate arithmetic in this package runs on mpmath reals at a
context-fixed mantissa width.  A PrecisionContext with ``bits`` of working
precision promises results accurate to the relative tolerance

    eps = 2^-(bits - guard_bits)

so the guard bits absorb summation-length round-off and the occasional
ill-conditioned subexpression.  Operations given the same context are
deterministic: same inputs, bit-identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from mpmath import mp, mpf

# Exact rational values (reduced, positive denominator) are carried by the
# stdlib Fraction type; it already guarantees gcd(num, den) = 1 and den > 0.
ExactRational = Fraction

Real = Union[int, float, str, Fraction, mpf]


class LacunaryError(Exception):
    """Base class for coded errors; ``code`` is a stable machine-readable tag."""

    def __init__(self, code: str, message: str) -> None:
        super().__init__(f"{code}: {message}")
        self.code = code


class DomainError(LacunaryError, ValueError):
    """Input outside an operation's documented domain."""


class ComputationError(LacunaryError, RuntimeError):
    """A computation failed to meet its own contract (signals a bug)."""


@dataclass(frozen=True)
class PrecisionContext:
    """Working mantissa precision in bits plus the derived tolerance policy."""

    bits: int = 128
    guard_bits: int = 16

    def __post_init__(self) -> None:
        if self.bits < 53:
            raise ValueError("bits must be at least 53")
        if self.guard_bits < 8:
            raise ValueError("guard_bits must be at least 8")
        if self.guard_bits >= self.bits:
            raise ValueError("guard_bits must be smaller than bits")

    @property
    def eps(self) -> mpf:
        """Target relative tolerance 2^-(bits - guard_bits)."""
        with mp.workprec(self.bits):
            return mpf(2) ** (self.guard_bits - self.bits)

    def prec(self, extra: int = 0):
        """Context manager setting mpmath working precision to bits + extra."""
        return mp.workprec(self.bits + extra)


DEFAULT_CTX = PrecisionContext()


def as_real(value: Real) -> mpf:
    """Convert to mpf at the currently active mpmath precision."""
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    return mpf(value)


@dataclass(frozen=True)
class LogValue:
    """A positive quantity stored as its natural log.

    mpf exponents are unbounded integers, so the representable range covers
    log f_n for any n this package will ever see; the flag exists so an
    exact zero survives round trips through log space.
    """

    log_magnitude: mpf
    is_zero: bool = False

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(mpf("-inf"), True)

    def add(self, other: "LogValue", ctx: PrecisionContext = DEFAULT_CTX) -> "LogValue":
        """Log-sum-exp combination: log(e^self + e^other)."""
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        with ctx.prec():
            hi, lo = self.log_magnitude, other.log_magnitude
            if lo > hi:
                hi, lo = lo, hi
            return LogValue(hi + mp.log1p(mp.exp(lo - hi)))

    def exp(self, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
        if self.is_zero:
            return mpf(0)
        with ctx.prec():
            return mp.exp(self.log_magnitude)


def binomial(n: int, k: int) -> int:
    """Exact C(n, k); zero when k is outside 0..n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def log_sum_exp(terms: Iterable[Real], ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """log(sum_i e^{t_i}) by max-shifting; relative error <= eps * len(terms)."""
    with ctx.prec():
        ts = [as_real(t) for t in terms]
        if not ts:
            raise DomainError("empty-sum", "log_sum_exp needs at least one term")
        m = max(ts)
        if mp.isinf(m):
            return m
        return m + mp.log(mp.fsum(mp.exp(t - m) for t in ts))


def compensated_sum(terms: Sequence[Real], ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """Neumaier-compensated sum; error independent of ordering up to 2 eps sum|t_i|."""
    with ctx.prec():
        total = mpf(0)
        carry = mpf(0)
        for term in terms:
            t = as_real(term)
            partial = total + t
            if abs(total) >= abs(t):
                carry += (total - partial) + t
            else:
                carry += (t - partial) + total
            total = partial
        return total + carry
