"""Structural arithmetic on bare tower values.

A raw value is either a ``Fraction`` or ``Ext(level, lo, hi)`` standing for
``lo + hi*sqrt(radicands[level])`` where ``lo`` and ``hi`` only involve
levels below ``level``.  A zero ``hi`` is never stored, so a value is rational
exactly when it is a ``Fraction``.  The functions here take the radicand tuple
explicitly and know nothing about towers as objects.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

from .rational import checked, rational_sqrt


class Ext(NamedTuple):
    level: int
    lo: "Raw"
    hi: "Raw"


Raw = Union[Fraction, Ext]

ZERO = Fraction(0)
ONE = Fraction(1)
_HALF = Fraction(1, 2)


def level_of(x: Raw) -> int:
    return x.level if type(x) is Ext else -1


def make(level: int, lo: Raw, hi: Raw) -> Raw:
    if type(hi) is not Ext and not hi:
        return lo
    return Ext(level, lo, hi)


def symbol(level: int) -> Ext:
    return Ext(level, ZERO, ONE)


def neg(a: Raw) -> Raw:
    if type(a) is not Ext:
        return -a
    return Ext(a.level, neg(a.lo), neg(a.hi))


def add(a: Raw, b: Raw) -> Raw:
    ea, eb = type(a) is Ext, type(b) is Ext
    if not ea and not eb:
        return checked(a + b)
    la = a.level if ea else -1
    lb = b.level if eb else -1
    if la > lb:
        return Ext(la, add(a.lo, b), a.hi)
    if lb > la:
        return Ext(lb, add(a, b.lo), b.hi)
    return make(la, add(a.lo, b.lo), add(a.hi, b.hi))


def sub(a: Raw, b: Raw) -> Raw:
    return add(a, neg(b))


def scale(a: Raw, q: Fraction) -> Raw:
    if type(a) is not Ext:
        return checked(a * q)
    if not q:
        return ZERO
    return Ext(a.level, scale(a.lo, q), scale(a.hi, q))


def mul(a: Raw, b: Raw, rads: Sequence[Raw]) -> Raw:
    if type(a) is not Ext:
        return scale(b, a)
    if type(b) is not Ext:
        return scale(a, b)
    la, lb = a.level, b.level
    if la > lb:
        return make(la, mul(a.lo, b, rads), mul(a.hi, b, rads))
    if lb > la:
        return make(lb, mul(a, b.lo, rads), mul(a, b.hi, rads))
    # Karatsuba on (lo + hi*r)(lo' + hi'*r), r^2 = theta
    ll = mul(a.lo, b.lo, rads)
    hh = mul(a.hi, b.hi, rads)
    cross = mul(add(a.lo, a.hi), add(b.lo, b.hi), rads)
    hi = sub(sub(cross, ll), hh)
    lo = add(ll, mul(rads[la], hh, rads))
    return make(la, lo, hi)


def conjugate(a: Ext) -> Ext:
    return Ext(a.level, a.lo, neg(a.hi))


def norm(a: Ext, rads: Sequence[Raw]) -> Raw:
    """``lo**2 - theta*hi**2``, one level down."""
    return sub(mul(a.lo, a.lo, rads), mul(rads[a.level], mul(a.hi, a.hi, rads), rads))


def div(a: Raw, b: Raw, rads: Sequence[Raw]) -> Raw:
    if type(b) is not Ext:
        if not b:
            raise ZeroDivisionError("division by zero in quadratic tower")
        return scale(a, 1 / b)
    la = level_of(a)
    if la > b.level:
        return Ext(la, div(a.lo, b, rads), div(a.hi, b, rads))
    return div(mul(a, conjugate(b), rads), norm(b, rads), rads)


def sqrt(a: Raw, depth: int, rads: Sequence[Raw]) -> Optional[Raw]:
    """Some square root of ``a`` inside the field generated by levels < depth.

    ``a`` must itself lie in that field.  The sign of the returned root is
    whatever the recursion produces.
    """
    if depth == 0:
        return rational_sqrt(a)  # type: ignore[arg-type]
    k = depth - 1
    theta = rads[k]
    if level_of(a) < k:
        # roots are either in the field below or a multiple of sqrt(theta)
        r = sqrt(a, k, rads)
        if r is not None:
            return r
        r = sqrt(div(a, theta, rads), k, rads)
        if r is not None:
            return Ext(k, ZERO, r)
        return None
    a0, a1 = a.lo, a.hi
    n = sqrt(norm(a, rads), k, rads)
    if n is None:
        return None
    for cand in (add(a0, n), sub(a0, n)):
        x = sqrt(scale(cand, _HALF), k, rads)
        if x is None or (type(x) is not Ext and not x):
            continue
        y = div(a1, scale(x, Fraction(2)), rads)
        return make(k, x, y)
    return None


def embed(a: Raw, images: Sequence[Raw], rads: Sequence[Raw]) -> Raw:
    """Substitute ``images[k]`` for the symbol at level ``k`` throughout ``a``."""
    if type(a) is not Ext:
        return a
    lo = embed(a.lo, images, rads)
    hi = embed(a.hi, images, rads)
    return add(lo, mul(hi, images[a.level], rads))


def max_bits(a: Raw) -> int:
    if type(a) is not Ext:
        return max(a.numerator.bit_length(), a.denominator.bit_length())
    return max(max_bits(a.lo), max_bits(a.hi))
