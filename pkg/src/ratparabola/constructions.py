"""Hyperbola families and the conjugate-factor ("diamond") grid construction.

For points x1 < x2 on the half-parabola write d = x2 - x1 and s = x1 + x2.
The distance is d * sqrt(1 + s**2).  Choosing d = |p + q*sqrt(R)| and
sqrt(1 + s**2) = f = r + t*sqrt(R) with p*t + q*r = 0 makes the product
rational; the pair is realised by s = sqrt(f**2 - 1) and x = (s -+ d) / 2,
provided s > d so that x1 > 0.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cliques import max_clique
from .exact import QQ, FieldTower, TowerElement, adjoin_sqrt, rational_sqrt, to_fraction, unify
from .exact.rational import RationalLike
from .parabola import (
    DEFAULT_DIGITS,
    Infeasible,
    PPoint,
    classify_distance,
    lift_point,
    pairwise_matrix,
)

# -- x - y = C*sqrt(1 + (x + y)^2) -------------------------------------------


@dataclass(frozen=True)
class HyperbolaParams:
    C: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "C", to_fraction(self.C))
        if self.C <= 0:
            raise ValueError("C must be positive")


@dataclass(frozen=True)
class ConstructedPair:
    """Two parabola points at the exact rational distance ``dist``."""

    p1: PPoint
    p2: PPoint
    dist: Fraction
    provenance: dict = field(default_factory=dict, compare=False)

    @property
    def tower(self) -> FieldTower:
        return self.p2.x.tower


def hyperbola_membership(params: HyperbolaParams, x: RationalLike, y: RationalLike) -> bool:
    """Exact test of (x - y)**2 - C**2 (x + y)**2 == C**2 for rational x, y."""
    if isinstance(x, TowerElement) or isinstance(y, TowerElement):
        raise TypeError("membership is defined for rational coordinates only")
    x, y = to_fraction(x), to_fraction(y)
    c2 = params.C ** 2
    return (x - y) ** 2 - c2 * (x + y) ** 2 == c2


def first_quadrant_threshold(params: HyperbolaParams) -> Optional[TowerElement]:
    """s* = C / sqrt(1 - C**2): first-quadrant pairs exist exactly for s > s*.

    None when C >= 1, where no first-quadrant pair exists.
    """
    C = params.C
    if C >= 1:
        return None
    _, root = adjoin_sqrt(QQ, 1 - C * C)
    return C / root


def hyperbola_pair_from_s(params: HyperbolaParams, s: RationalLike) -> ConstructedPair | Infeasible:
    """The pair with x1 + x2 = s and x2 - x1 = C*sqrt(1 + s**2), if x1 > 0.

    The distance is then C * (1 + s**2).
    """
    s = to_fraction(s)
    if s <= 0:
        raise ValueError("s must be positive")
    C = params.C
    # x1 > 0  <=>  s > C*sqrt(1 + s^2)  <=>  s^2 (1 - C^2) > C^2
    if not s * s * (1 - C * C) > C * C:
        thr = first_quadrant_threshold(params)
        where = "none (C >= 1)" if thr is None else str(thr)
        return Infeasible(f"s = {s} is not above the first-quadrant threshold s* = {where}")
    _, root = adjoin_sqrt(QQ, 1 + s * s)
    d = C * root
    p1, p2 = lift_point((s - d) / 2), lift_point((s + d) / 2)
    dist = C * (1 + s * s)
    verdict = classify_distance(p1, p2)
    if verdict.value != dist:
        raise AssertionError(f"hyperbola pair distance {verdict.value} != {dist}")
    return ConstructedPair(p1, p2, dist, {"C": C, "s": s, "d": d})


def hyperbola_report(params: HyperbolaParams, s: Optional[RationalLike] = None) -> dict:
    """Feasibility summary for one C, optionally realising the pair at ``s``."""
    thr = first_quadrant_threshold(params)
    notes = []
    if thr is None:
        notes.append("C >= 1: no pair with x1, x2 > 0 exists on this hyperbola")
    else:
        notes.append(
            "C < 1: pairs with x1, x2 > 0 exist for every s > s*; "
            "the statement that this family has no first-quadrant solutions fails for this C"
        )
    out: dict = {
        "C": str(params.C),
        "threshold": None if thr is None else str(thr),
        "first_quadrant_solutions": thr is not None,
    }
    if s is not None:
        res = hyperbola_pair_from_s(params, s)
        if res:
            out["pair"] = {"s": str(to_fraction(s)), "x1": str(res.p1), "x2": str(res.p2), "dist": str(res.dist)}
        else:
            out["pair"] = {"s": str(to_fraction(s)), "status": "infeasible", "reason": res.reason}
    out["notes"] = notes
    return out


# -- conjugate-factor pairs -----------------------------------------------------


def _nonsquare_radicand(R: RationalLike) -> Fraction:
    R = to_fraction(R)
    if R <= 0:
        raise ValueError(f"radicand R = {R} must be positive")
    if rational_sqrt(R) is not None:
        raise ValueError(f"radicand R = {R} is a perfect square")
    return R


def construct_pair(
    p: RationalLike,
    q: RationalLike,
    r: RationalLike,
    t: RationalLike,
    R: RationalLike,
    provenance: Optional[dict] = None,
) -> ConstructedPair | Infeasible:
    """Realise d = |p + q*sqrt(R)| and sqrt(1 + s**2) = r + t*sqrt(R) as a point pair.

    Requires p*t + q*r = 0 so that the distance d * f = |p*r + q*t*R| is
    rational.  Returns :class:`Infeasible` when s <= d (x1 would not be
    positive).
    """
    p, q, r, t = (to_fraction(v) for v in (p, q, r, t))
    R = _nonsquare_radicand(R)
    if p * t + q * r != 0:
        raise ValueError(f"rationality condition p*t + q*r = 0 violated: {p}*{t} + {q}*{r} = {p * t + q * r}")
    tower, root = adjoin_sqrt(QQ, R)
    d = abs(p + q * root)
    if d.is_zero():
        raise ValueError("d = |p + q*sqrt(R)| must be positive")
    f = r + t * root
    if f < 1:
        raise ValueError(f"f = {f} < 1 but sqrt(1 + s^2) >= 1")
    dist = abs(p * r + q * t * R)
    prov = dict(provenance or {})
    prov.update(d=d, f=f)
    if f == 1:
        return Infeasible("f = 1 forces s = 0 <= d")
    _, s = adjoin_sqrt(tower, f * f - 1)
    if s <= d:
        return Infeasible(f"s = sqrt(f^2 - 1) does not exceed d = {d}; x1 <= 0")
    p1, p2 = lift_point((s - d) / 2), lift_point((s + d) / 2)
    verdict = classify_distance(p1, p2)
    if verdict.value != dist:
        raise AssertionError(f"constructed pair distance {verdict.value} != {dist}")
    prov["s"] = s
    return ConstructedPair(p1, p2, dist, prov)


# -- the N x N grid ------------------------------------------------------------


@dataclass(frozen=True)
class DiamondParams:
    """Grid cell (n, m) uses a = a0 + n*step_a, b = b0 + m*step_b,
    for n in 1..N and m in 0..N-1, and pairs d = |a - b*sqrt(R)| with
    f = a + b*sqrt(R)."""

    R: Fraction
    a0: Fraction
    b0: Fraction
    step_a: Fraction
    step_b: Fraction
    N: int

    def __post_init__(self) -> None:
        for name in ("R", "a0", "b0", "step_a", "step_b"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        _nonsquare_radicand(self.R)
        if self.step_a <= 0 or self.step_b <= 0:
            raise ValueError("grid steps must be positive")
        if not isinstance(self.N, int) or self.N < 1:
            raise ValueError("grid size N must be a positive integer")

    def cell_coefficients(self, n: int, m: int) -> tuple[Fraction, Fraction]:
        return self.a0 + n * self.step_a, self.b0 + m * self.step_b

    def to_json(self) -> dict:
        return {
            "R": str(self.R),
            "a0": str(self.a0),
            "b0": str(self.b0),
            "step_a": str(self.step_a),
            "step_b": str(self.step_b),
            "N": self.N,
        }


def sqrt5_example_params(N: int = 3) -> DiamondParams:
    """The sqrt(5) family whose cells are the pairs n*sqrt(5) -+ (8 + m)."""
    return DiamondParams(R=Fraction(5), a0=Fraction(7), b0=Fraction(1), step_a=Fraction(1), step_b=Fraction(1), N=N)


@dataclass(frozen=True)
class GridCell:
    n: int
    m: int
    a: Fraction
    b: Fraction
    result: ConstructedPair | Infeasible

    @property
    def realized(self) -> bool:
        return isinstance(self.result, ConstructedPair)


@dataclass(frozen=True)
class DiamondGrid:
    params: Optional[DiamondParams]
    cells: tuple[GridCell, ...]

    def realized_cells(self) -> list[GridCell]:
        return [c for c in self.cells if c.realized]


def diamond_grid(params: DiamondParams) -> DiamondGrid:
    cells = []
    for n in range(1, params.N + 1):
        for m in range(params.N):
            a, b = params.cell_coefficients(n, m)
            try:
                res = construct_pair(a, -b, a, b, params.R, provenance={"n": n, "m": m})
            except ValueError as exc:
                res = Infeasible(str(exc))
            cells.append(GridCell(n, m, a, b, res))
    return DiamondGrid(params, tuple(cells))


# -- verification --------------------------------------------------------------


@dataclass(frozen=True)
class GridPoint:
    x: TowerElement  # in the combined tower
    text: str  # formatted in the point's own cell tower
    origins: tuple[tuple[int, int, str], ...]  # (n, m, "x1" | "x2")


@dataclass(frozen=True)
class PairVerdict:
    i: int
    j: int
    value: Optional[Fraction]
    same_cell: bool
    numeric_ok: bool

    @property
    def status(self) -> str:
        return "rational" if self.value is not None else "irrational"


@dataclass(frozen=True)
class GridReport:
    grid: DiamondGrid
    points: tuple[GridPoint, ...]
    pairs: tuple[PairVerdict, ...]
    max_rational_clique: tuple[int, ...]
    tower_depth: int
    notes: tuple[str, ...]

    @property
    def rational_pairs(self) -> int:
        return sum(1 for v in self.pairs if v.value is not None)

    @property
    def all_rational(self) -> bool:
        return all(v.value is not None for v in self.pairs)

    @property
    def numeric_agreement(self) -> bool:
        return all(v.numeric_ok for v in self.pairs)

    def to_json(self) -> dict:
        cells = []
        for c in self.grid.cells:
            entry: dict = {"n": c.n, "m": c.m, "a": str(c.a), "b": str(c.b)}
            if isinstance(c.result, ConstructedPair):
                entry.update(status="realized", x1=str(c.result.p1), x2=str(c.result.p2), dist=str(c.result.dist))
            else:
                entry.update(status="absent", reason=c.result.reason)
            cells.append(entry)
        pairs = []
        for v in self.pairs:
            e: dict = {"i": v.i, "j": v.j, "status": v.status}
            if v.value is not None:
                e["value"] = str(v.value)
            pairs.append(e)
        return {
            "params": None if self.grid.params is None else self.grid.params.to_json(),
            "cells": cells,
            "points": [
                {"x": p.text, "numeric": p.x.numeric(30).decimal(30), "origins": [list(o) for o in p.origins]}
                for p in self.points
            ],
            "pairs": pairs,
            "rational_pairs": self.rational_pairs,
            "max_rational_clique": list(self.max_rational_clique),
            "all_rational": self.all_rational,
            "numeric_agreement": self.numeric_agreement,
            "tower_depth": self.tower_depth,
            "notes": list(self.notes),
        }


GRID_NOTES = (
    "distance magnitude convention: d = |a - b*sqrt(R)|; a negative signed difference such as sqrt(5) - 8 is used in absolute value",
    "within-cell distance is the conjugate product |a^2 - b^2*R|; the sum a^2 + b^2*R is not the product of the two factors",
    "grid convention: a = a0 + n*step_a for n = 1..N, b = b0 + m*step_b for m = 0..N-1 (arithmetic progressions on both conjugate coefficients)",
)


def _cmp_elements(u: TowerElement, v: TowerElement) -> int:
    return (u - v).sign()


def verify_grid(
    grid: DiamondGrid,
    order: Optional[Sequence[int]] = None,
    digits: int = 100,
) -> GridReport:
    """Exact verdict for every pair of distinct points produced by the grid.

    All realised cells are merged into one tower (in ``order`` over the
    realised cells, default grid order), points are deduplicated by exact
    equality and sorted by value, and every Rational verdict is checked
    against a ``digits``-digit enclosure of the distance.
    """
    realized = grid.realized_cells()
    if not realized:
        raise ValueError("grid has no realized cells")
    if order is not None:
        if sorted(order) != list(range(len(realized))):
            raise ValueError("order must be a permutation of the realized cells")
        realized = [realized[i] for i in order]

    raw_points: list[tuple[TowerElement, str, tuple[int, int, str]]] = []
    for c in realized:
        pair = c.result
        assert isinstance(pair, ConstructedPair)
        raw_points.append((pair.p1.x, str(pair.p1.x), (c.n, c.m, "x1")))
        raw_points.append((pair.p2.x, str(pair.p2.x), (c.n, c.m, "x2")))
    tower, xs = unify(*(p[0] for p in raw_points))

    merged: list[list] = []  # [x, text, origins]
    for x, (_, text, origin) in zip(xs, raw_points):
        for entry in merged:
            if (entry[0] - x).is_zero():
                entry[2].append(origin)
                break
        else:
            merged.append([x, text, [origin]])
    merged.sort(key=lambda e: functools.cmp_to_key(_cmp_elements)(e[0]))
    points = tuple(GridPoint(x, text, tuple(sorted(origins))) for x, text, origins in merged)

    cell_of = [{(o[0], o[1]) for o in p.origins} for p in points]
    pairs = []
    adj: list[set[int]] = [set() for _ in points]
    if len(points) >= 2:
        matrix = pairwise_matrix([PPoint(p.x) for p in points], digits=DEFAULT_DIGITS)
        for (i, j), verdict in sorted(matrix.verdicts.items()):
            ok = True
            if verdict.value is not None:
                adj[i].add(j)
                adj[j].add(i)
                d2 = verdict.dist_squared.numeric(2 * digits + 2)
                ok = d2.contains(verdict.value ** 2) and d2.sqrt(digits).contains(verdict.value)
            pairs.append(PairVerdict(i, j, verdict.value, bool(cell_of[i] & cell_of[j]), ok))
    clique = tuple(max_clique(adj))

    notes = list(GRID_NOTES)
    cross = [v for v in pairs if not v.same_cell]
    irr = sum(1 for v in cross if v.value is None)
    if all(v.value is not None for v in pairs):
        notes.append(f"all-pairs claim for this grid: HOLDS ({len(points)} points pairwise rational)")
    else:
        notes.append(
            f"all-pairs claim for this grid: FAILS ({irr} of {len(cross)} cross-cell pairs irrational; "
            f"largest pairwise-rational subset has {len(clique)} points)"
        )
    return GridReport(grid, points, tuple(pairs), clique, tower.depth, tuple(notes))


# -- plot data -------------------------------------------------------------------


def _samples(lo: Fraction, hi: Fraction, count: int) -> list[Fraction]:
    if count < 2:
        raise ValueError("need at least two samples")
    if not lo < hi:
        raise ValueError(f"empty sample range [{lo}, {hi}]")
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def emit_plot_samples(
    kind: str,
    params: dict,
    lo: RationalLike = 1,
    hi: RationalLike = 3,
    count: int = 5,
    digits: int = DEFAULT_DIGITS,
) -> tuple[tuple[str, ...], list[tuple[str, ...]]]:
    """Numeric samples of a curve family as (header, rows) of decimal strings.

    kinds:
      ``hyperbola31``  (x - y)^2 - C^2 (x + y)^2 = C^2, params {C}, sampled over x + y in [lo, hi]
      ``hyperbola32``  (x - y + 2*sqrt(r))^2 - C^2 (x + y)^2 = C^2, params {C, r}
      ``diamond_grid`` the (x1, x2) of each realised cell, params as DiamondParams
    """
    if count < 2:
        raise ValueError("need at least two samples")
    rows = []
    if kind in ("hyperbola31", "hyperbola32"):
        C = to_fraction(params["C"])
        shift = None
        if kind == "hyperbola32":
            shift = 2 * adjoin_sqrt(QQ, _positive(params["r"]))[1]
        for s in _samples(to_fraction(lo), to_fraction(hi), count):
            d = C * adjoin_sqrt(QQ, 1 + s * s)[1]
            if shift is not None:
                _, (d, sh) = unify(d, shift)
                d = d - sh
            x, y = (s + d) / 2, (s - d) / 2
            rows.append((x.numeric(digits + 5).decimal(digits), y.numeric(digits + 5).decimal(digits)))
        return ("x", "y"), rows
    if kind == "diamond_grid":
        grid = diamond_grid(DiamondParams(**params))
        for c in grid.realized_cells():
            pair = c.result
            assert isinstance(pair, ConstructedPair)
            rows.append(tuple(p.x.numeric(digits + 5).decimal(digits) for p in (pair.p1, pair.p2)))
        if not rows:
            raise ValueError("no realized cells to plot")
        return ("x1", "x2"), rows
    raise ValueError(f"unknown plot kind {kind!r}")


def _positive(v: RationalLike) -> Fraction:
    v = to_fraction(v)
    if v <= 0:
        raise ValueError("radicand must be positive")
    return v


def samples_to_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = [",".join(header)] + [",".join(r) for r in rows]
    return "\n".join(lines) + "\n"
