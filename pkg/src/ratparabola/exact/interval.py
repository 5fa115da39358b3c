"""Outward-rounded dyadic interval enclosures of tower values.

Values are evaluated on integers scaled by ``2**bits``: every operation rounds
its lower end down and its upper end up, so the true value is always
enclosed.  Widths shrink as ``bits`` grows, which is what sign determination
and ``numeric_eval`` refine on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import MutableMapping, Sequence

from .raw import Ext, Raw

Scaled = tuple[int, int]


def _isqrt_ceil(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


def _mul(a: Scaled, b: Scaled, bits: int) -> Scaled:
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return min(ps) >> bits, -((-max(ps)) >> bits)


def eval_scaled(
    a: Raw, rads: Sequence[Raw], bits: int, cache: MutableMapping[tuple[int, int], Scaled]
) -> Scaled:
    if type(a) is not Ext:
        v = a.numerator << bits
        d = a.denominator
        return v // d, -((-v) // d)
    lo = eval_scaled(a.lo, rads, bits, cache)
    hi = eval_scaled(a.hi, rads, bits, cache)
    p = _mul(hi, symbol_scaled(a.level, rads, bits, cache), bits)
    return lo[0] + p[0], lo[1] + p[1]


def symbol_scaled(
    k: int, rads: Sequence[Raw], bits: int, cache: MutableMapping[tuple[int, int], Scaled]
) -> Scaled:
    key = (k, bits)
    hit = cache.get(key)
    if hit is not None:
        return hit
    tl, th = eval_scaled(rads[k], rads, bits, cache)
    # sqrt(t / 2^b) * 2^b = sqrt(t * 2^b)
    lo = math.isqrt(tl << bits) if tl > 0 else 0
    hi = _isqrt_ceil(th << bits) if th > 0 else 0
    cache[key] = (lo, hi)
    return lo, hi


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    @classmethod
    def point(cls, q: Fraction) -> "Interval":
        return cls(q, q)

    @classmethod
    def from_scaled(cls, s: Scaled, bits: int) -> "Interval":
        return cls(Fraction(s[0], 1 << bits), Fraction(s[1], 1 << bits))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def sqrt(self, digits: int) -> "Interval":
        """Enclosure of ``sqrt`` over the (nonnegative part of the) interval."""
        scale = 10 ** digits
        lo = max(self.lo, Fraction(0))
        hi = max(self.hi, Fraction(0))
        # floor/ceil of v * 10^(2 digits) before the integer root
        l2 = (lo.numerator * scale * scale) // lo.denominator
        h2 = -((-hi.numerator * scale * scale) // hi.denominator)
        return Interval(Fraction(math.isqrt(l2), scale), Fraction(_isqrt_ceil(h2), scale))

    def decimal(self, digits: int) -> str:
        """Midpoint rounded half-up to ``digits`` decimal places."""
        m = self.midpoint * 10 ** digits
        q = math.floor(m + Fraction(1, 2))
        sign = "-" if q < 0 else ""
        q = abs(q)
        whole, frac = divmod(q, 10 ** digits)
        if digits == 0:
            return f"{sign}{whole}"
        return f"{sign}{whole}.{frac:0{digits}d}"

    def __str__(self) -> str:
        return f"[{float(self.lo)!r}, {float(self.hi)!r}]"
