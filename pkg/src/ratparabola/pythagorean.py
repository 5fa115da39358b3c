"""Pythagorean triples and fractions, and the rational three-point construction.

A positive rational s = p/q (lowest terms) is a *Pythagorean fraction* when
p**2 + q**2 is a perfect square.  For rational x1, x2 > 0 the parabola
distance (x2 - x1) * sqrt(1 + (x1 + x2)**2) is rational exactly when
x1 + x2 is such a fraction.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exact.rational import RationalLike, to_fraction
from .parabola import Infeasible, PPoint, lift_point, pairwise_matrix


@dataclass(frozen=True, order=True)
class PythTriple:
    a: int
    b: int
    c: int
    primitive: bool = True

    def __post_init__(self) -> None:
        if not (0 < self.a < self.b < self.c) or self.a ** 2 + self.b ** 2 != self.c ** 2:
            raise ValueError(f"not a Pythagorean triple with a < b < c: {self.a, self.b, self.c}")


@dataclass(frozen=True)
class PythFraction:
    value: Fraction
    witness: PythTriple

    @property
    def hypotenuse_ratio(self) -> Fraction:
        """sqrt(1 + value**2), always rational for these fractions."""
        return Fraction(self.witness.c, self.value.denominator)


def is_pythagorean_fraction(r: RationalLike) -> PythFraction | None:
    r = to_fraction(r)
    if r <= 0:
        raise ValueError("Pythagorean fractions are positive")
    p, q = r.numerator, r.denominator
    if q == 1:
        return None  # 1 + p**2 lies strictly between p**2 and (p+1)**2
    c2 = p * p + q * q
    c = math.isqrt(c2)
    if c * c != c2:
        return None
    return PythFraction(r, PythTriple(min(p, q), max(p, q), c))


def euclid_triples(limit: int, include_scaled: bool = False) -> list[PythTriple]:
    """All triples with hypotenuse <= limit, sorted by (c, a).

    Primitive triples come from (m**2 - n**2, 2mn, m**2 + n**2) over coprime
    m > n of opposite parity; ``include_scaled`` adds their multiples.
    """
    if limit < 5:
        raise ValueError("limit must be at least 5")
    found = []
    m = 2
    while m * m + 1 <= limit:
        for n in range(1 + m % 2, m, 2):
            c = m * m + n * n
            if c > limit:
                break
            if math.gcd(m, n) != 1:
                continue
            a, b = sorted((m * m - n * n, 2 * m * n))
            found.append(PythTriple(a, b, c))
            if include_scaled:
                for k in range(2, limit // c + 1):
                    found.append(PythTriple(k * a, k * b, k * c, primitive=False))
        m += 1
    found.sort(key=lambda t: (t.c, t.a))
    return found


def three_point_from_fractions(
    f1: Union[PythFraction, RationalLike],
    f2: Union[PythFraction, RationalLike],
    f3: Union[PythFraction, RationalLike],
) -> tuple[PPoint, PPoint, PPoint] | Infeasible:
    """Three points whose pairwise x-sums are the given fractions.

    Solves x1 + x2 = a, x1 + x3 = b, x2 + x3 = c.  Each pairwise sum being a
    Pythagorean fraction makes every pairwise distance rational.
    """
    fracs = []
    for f in (f1, f2, f3):
        if not isinstance(f, PythFraction):
            pf = is_pythagorean_fraction(f)
            if pf is None:
                raise ValueError(f"{f} is not a Pythagorean fraction")
            f = pf
        fracs.append(f.value)
    a, b, c = fracs
    if len({a, b, c}) < 3:
        raise ValueError("the three fractions must be distinct")
    xs = ((a + b - c) / 2, (a - b + c) / 2, (-a + b + c) / 2)
    for i, x in enumerate(xs, 1):
        if x <= 0:
            return Infeasible(f"x{i} = {x} is not positive")
    if len(set(xs)) < 3:
        return Infeasible("solution has coincident points")
    points = tuple(lift_point(x) for x in xs)
    if not pairwise_matrix(points).all_rational:
        raise AssertionError("three-point construction produced an irrational distance")
    return points  # type: ignore[return-value]


def pythagorean_fractions(bound: int) -> list[PythFraction]:
    """Every Pythagorean fraction with numerator and denominator <= bound, ascending."""
    out = []
    for t in euclid_triples(math.isqrt(2 * bound * bound)):
        if t.b <= bound:
            out.append(PythFraction(Fraction(t.a, t.b), t))
            out.append(PythFraction(Fraction(t.b, t.a), t))
    out.sort(key=lambda f: f.value)
    return out


@dataclass(frozen=True)
class Collision:
    value: Fraction
    pairs: tuple[tuple[Fraction, Fraction], ...]


@dataclass(frozen=True)
class ConjectureReport:
    bound: int
    fractions: tuple[Fraction, ...]
    collisions: tuple[Collision, ...]

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "fractions_count": len(self.fractions),
            "collisions": [
                {"value": str(c.value), "pairs": [[str(f), str(g)] for f, g in c.pairs]}
                for c in self.collisions
            ],
        }


def conjecture_difference_search(bound: int) -> ConjectureReport:
    """Find positive differences f - g of Pythagorean fractions hit by two or more pairs.

    An empty collision list is evidence at this bound only; any collision is
    a counterexample to the claim that such differences are unique.
    """
    if bound < 5:
        raise ValueError("bound must be at least 5")
    fracs = [f.value for f in pythagorean_fractions(bound)]
    by_diff: dict[Fraction, list[tuple[Fraction, Fraction]]] = defaultdict(list)
    for i, g in enumerate(fracs):
        for f in fracs[i + 1 :]:
            by_diff[f - g].append((f, g))
    collisions = tuple(
        Collision(v, tuple(sorted(pairs))) for v, pairs in sorted(by_diff.items()) if len(pairs) > 1
    )
    return ConjectureReport(bound, tuple(fracs), collisions)
