"""Rational scalars: square roots, square-factor extraction and the bit-length guard.

``fractions.Fraction`` is the rational type throughout; it is already kept in
lowest terms with a positive denominator.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from contextvars import ContextVar
from fractions import Fraction
from typing import Iterator, Optional, Union

from ..errors import ResourceError

DEFAULT_BIT_CAP = 1_000_000

_bit_cap: ContextVar[int] = ContextVar("bit_cap", default=DEFAULT_BIT_CAP)

RationalLike = Union[int, Fraction, str]


def get_bit_cap() -> int:
    return _bit_cap.get()


@contextmanager
def bit_cap(bits: int) -> Iterator[None]:
    """Temporarily change the coefficient bit-length cap for the current context."""
    if bits < 1:
        raise ValueError("bit cap must be positive")
    token = _bit_cap.set(bits)
    try:
        yield
    finally:
        _bit_cap.reset(token)


def checked(q: Fraction) -> Fraction:
    cap = _bit_cap.get()
    if q.numerator.bit_length() > cap or q.denominator.bit_length() > cap:
        raise ResourceError("coefficient bit length exceeded", cap)
    return q


def to_fraction(value: RationalLike) -> Fraction:
    """Accept ints, Fractions and ``"p/q"`` strings; reject floats (inexact)."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational required, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, _, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if den else 1
        except ValueError:
            raise ValueError(f"not a rational p/q: {value!r}") from None
        if d == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return Fraction(n, d)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """Nonnegative rational square root of ``q``, or None if there is none."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(limit + 1) if sieve[i]]


_PRIMES = _small_primes(2000)


def squarefree_split(q: Fraction) -> tuple[int, Fraction]:
    """Write a positive rational as ``scale**2 * core`` with integer ``core``.

    Square factors built from primes below 2000 are removed, as is a
    perfect-square cofactor; larger repeated primes may remain in ``core``,
    which only affects how a radicand is printed, never correctness.
    """
    if q <= 0:
        raise ValueError("squarefree_split needs a positive rational")
    # sqrt(n/d) = sqrt(n*d)/d
    core = q.numerator * q.denominator
    root = 1
    for p in _PRIMES:
        pp = p * p
        if pp > core:
            break
        while core % pp == 0:
            core //= pp
            root *= p
    r = math.isqrt(core)
    if r * r == core:
        root *= r
        core = 1
    return core, Fraction(root, q.denominator)
