"""Points on the half-parabola y = x**2, x > 0, and exact distance verdicts."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exact import Interval, TowerElement, as_element, numeric_eval, rational_sqrt, unify
from .exact.rational import RationalLike

DEFAULT_DIGITS = 50


@dataclass(frozen=True)
class Infeasible:
    """A construction that has no valid output; falsy, with the reason."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class PPoint:
    """A point (x, x**2) with x > 0; only x is stored."""

    x: TowerElement

    @property
    def y(self) -> TowerElement:
        return self.x * self.x

    def __str__(self) -> str:
        return str(self.x)


def lift_point(x: Union[TowerElement, RationalLike]) -> PPoint:
    """Place ``x`` on the half-parabola, rejecting x <= 0 by exact sign."""
    x = as_element(x)
    if x.sign() <= 0:
        raise ValueError(f"x = {x} is not on the half-parabola y = x^2, x > 0")
    return PPoint(x)


def _common(p: PPoint, q: PPoint) -> tuple[TowerElement, TowerElement]:
    a, b = p.x.tower, q.x.tower
    if a.is_prefix_of(b) or b.is_prefix_of(a):
        return p.x, q.x
    _, (x1, x2) = unify(p.x, q.x)
    return x1, x2


def distance_squared(p: PPoint, q: PPoint) -> TowerElement:
    """(x2 - x1)**2 + (x2**2 - x1**2)**2, computed without factoring."""
    x1, x2 = _common(p, q)
    dx = x2 - x1
    dy = x2 * x2 - x1 * x1
    return dx * dx + dy * dy


def factored_parts(p: PPoint, q: PPoint) -> tuple[TowerElement, TowerElement]:
    """Return ``(|x2 - x1|, 1 + (x1 + x2)**2)``.

    Their product ``d_abs**2 * one_plus_s_sq`` equals the squared distance.
    """
    x1, x2 = _common(p, q)
    d = x2 - x1
    if d.is_zero():
        raise ValueError("coincident points have no factored distance")
    s = x1 + x2
    return abs(d), 1 + s * s


@dataclass(frozen=True)
class DistanceVerdict:
    """Exact classification of one pairwise distance.

    ``value`` is the distance when it is rational and None otherwise.
    ``numeric`` encloses the distance itself, computed from ``dist_squared``
    independently of ``value``.
    """

    value: Optional[Fraction]
    dist_squared: TowerElement
    numeric: Interval = field(compare=False)

    @property
    def is_rational(self) -> bool:
        return self.value is not None

    @property
    def status(self) -> str:
        return "rational" if self.value is not None else "irrational"


def classify_distance(p: PPoint, q: PPoint, digits: int = DEFAULT_DIGITS) -> DistanceVerdict:
    # the distance itself may lie outside the tower, its square never does;
    # D > 0 is rational exactly when D**2 is the square of a rational
    d2 = distance_squared(p, q)
    value = None
    q2 = d2.is_rational()
    if q2 is not None:
        value = rational_sqrt(q2)
    numeric = numeric_eval(d2, 2 * digits + 2).sqrt(digits)
    return DistanceVerdict(value, d2, numeric)


@dataclass(frozen=True)
class PairwiseMatrix:
    points: tuple[PPoint, ...]
    verdicts: dict[tuple[int, int], DistanceVerdict]

    @property
    def all_rational(self) -> bool:
        return all(v.is_rational for v in self.verdicts.values())

    def verdict(self, i: int, j: int) -> DistanceVerdict:
        return self.verdicts[(i, j) if i < j else (j, i)]

    def to_json(self, digits: int = DEFAULT_DIGITS) -> dict:
        entries = []
        for (i, j), v in sorted(self.verdicts.items()):
            entry: dict = {"i": i, "j": j, "status": v.status}
            if v.value is not None:
                entry["value"] = str(v.value)
            entry[f"numeric{digits}"] = v.numeric.decimal(digits)
            entries.append(entry)
        return {
            "points": [str(p.x) for p in self.points],
            "entries": entries,
            "all_rational": self.all_rational,
        }


def common_points(points: Sequence[PPoint]) -> list[PPoint]:
    """Re-express points in one tower."""
    _, xs = unify(*(p.x for p in points))
    return [PPoint(x) for x in xs]


def pairwise_matrix(points: Sequence[PPoint], digits: int = DEFAULT_DIGITS) -> PairwiseMatrix:
    """Verdicts for every unordered pair of distinct indices."""
    if len(points) < 2:
        raise ValueError("need at least two points")
    shared = common_points(points)
    n = len(shared)
    for i in range(n):
        for j in range(i + 1, n):
            if (shared[i].x - shared[j].x).is_zero():
                raise ValueError(f"duplicate coordinates at indices {i} and {j}")
    verdicts = {
        (i, j): classify_distance(shared[i], shared[j], digits)
        for i in range(n)
        for j in range(i + 1, n)
    }
    return PairwiseMatrix(tuple(points), verdicts)
