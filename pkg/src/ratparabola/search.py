"""Brute-force ground truth over rational x-coordinates.

For rational 0 < u < v the parabola distance is rational exactly when u + v
is a Pythagorean fraction, so the rational-distance graph on a finite set of
rationals can be built from integer arithmetic alone.  Pythagorean sums are
enumerated as s = (t - 1/t)/2 over rationals t = m/k > 1, and each one is
split into vertex pairs by solving a linear congruence per denominator pair,
which avoids testing all O(V^2) pairs.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cliques import k_cliques
from .errors import CrosscheckError, ResourceError
from .exact.rational import RationalLike, to_fraction
from .parabola import classify_distance, lift_point, pairwise_matrix
from .pythagorean import is_pythagorean_fraction

log = logging.getLogger(__name__)

DEFAULT_MAX_VERTICES = 250_000


@dataclass(frozen=True)
class DistanceGraph:
    xmax: Fraction
    qmax: int
    vertices: tuple[Fraction, ...]
    edges: tuple[tuple[int, int], ...]

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in self.vertices]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def to_json(self) -> dict:
        return {
            "xmax": str(self.xmax),
            "qmax": self.qmax,
            "vertices": [str(v) for v in self.vertices],
            "edges": [list(e) for e in self.edges],
        }


def rational_grid(xmax: Fraction, qmax: int) -> list[Fraction]:
    """All reduced p/q in (0, xmax] with q <= qmax, ascending."""
    out = []
    for q in range(1, qmax + 1):
        for p in range(1, math.floor(xmax * q) + 1):
            if math.gcd(p, q) == 1:
                out.append(Fraction(p, q))
    out.sort()
    return out


def _pythagorean_sums(smax: Fraction, max_den: int) -> dict[int, list[int]]:
    """Pythagorean fractions P/Q <= smax with Q <= max_den, keyed by Q."""
    # s = (m^2 - k^2) / (2mk), gcd(m, k) = 1; the reduced denominator is >= m*k
    tmax = smax + Fraction(math.isqrt(int((1 + smax * smax) * 10 ** 12)) + 1, 10 ** 6)
    by_den: dict[int, list[int]] = {}
    k = 1
    while k * (k + 1) <= max_den:
        m = k + 1
        while m * k <= max_den and m <= tmax * k:
            if math.gcd(m, k) == 1:
                s = Fraction(m * m - k * k, 2 * m * k)
                if s <= smax and s.denominator <= max_den:
                    by_den.setdefault(s.denominator, []).append(s.numerator)
            m += 1
        k += 1
    return by_den


def _spf(limit: int) -> list[int]:
    spf = list(range(limit + 1))
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def _factor(n: int, spf: list[int]) -> dict[int, int]:
    f: dict[int, int] = {}
    while n > 1:
        p = spf[n]
        f[p] = f.get(p, 0) + 1
        n //= p
    return f


def _divisors(factors: dict[int, int]) -> list[int]:
    divs = [1]
    for p, e in factors.items():
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return divs


def build_distance_graph(
    xmax: RationalLike, qmax: int, max_vertices: int = DEFAULT_MAX_VERTICES
) -> DistanceGraph:
    xmax = to_fraction(xmax)
    if xmax <= 0:
        raise ValueError("xmax must be positive")
    if qmax < 2:
        raise ValueError("qmax must be at least 2: integer coordinates never give a rational distance")
    vertices = rational_grid(xmax, qmax)
    if len(vertices) > max_vertices:
        raise ResourceError(f"{len(vertices)} vertices requested", max_vertices)
    index = {v: i for i, v in enumerate(vertices)}
    sums = _pythagorean_sums(2 * xmax, qmax * qmax)
    log.info("graph: %d vertices, %d candidate Pythagorean sums", len(vertices), sum(map(len, sums.values())))
    spf = _spf(qmax)
    numer_max = [0] + [math.floor(xmax * q) for q in range(1, qmax + 1)]
    edges = []
    div_cache: dict[int, list[int]] = {}
    for q1 in range(1, qmax + 1):
        f1 = _factor(q1, spf)
        for q2 in range(q1, qmax + 1):
            f2 = _factor(q2, spf)
            lcm_f = dict(f1)
            for p, e in f2.items():
                lcm_f[p] = max(lcm_f.get(p, 0), e)
            L = q1 * q2 // math.gcd(q1, q2)
            divs = div_cache.get(L)
            if divs is None:
                divs = div_cache[L] = [d for d in _divisors(lcm_f) if d in sums]
            if not divs:
                continue
            a, b = L // q1, L // q2  # u + v = (p1*a + p2*b) / L, gcd(a, b) = 1
            inv = pow(a, -1, b) if b > 1 else 0
            n1, n2 = numer_max[q1], numer_max[q2]
            for Q in divs:
                for P in sums[Q]:
                    k = P * (L // Q)
                    # p1 = k * a^-1 (mod b), 1 <= p1 <= n1, 1 <= p2 = (k - a p1)/b <= n2
                    start = (k * inv) % b if b > 1 else 0
                    lo = max(1, -((b * n2 - k) // a))
                    hi = min(n1, (k - b) // a)
                    if lo > hi:
                        continue
                    p1 = lo + ((start - lo) % b if b > 1 else 0)
                    while p1 <= hi:
                        p2 = (k - a * p1) // b
                        if (q1 != q2 or p1 < p2) and math.gcd(p1, q1) == 1 and math.gcd(p2, q2) == 1:
                            i, j = index[Fraction(p1, q1)], index[Fraction(p2, q2)]
                            edges.append((i, j) if i < j else (j, i))
                        p1 += b
    edges.sort()
    return DistanceGraph(xmax, qmax, tuple(vertices), tuple(edges))


def naive_distance_graph(xmax: RationalLike, qmax: int) -> DistanceGraph:
    """Quadratic reference construction: test every vertex pair directly."""
    xmax = to_fraction(xmax)
    vertices = rational_grid(xmax, qmax)
    edges = [
        (i, j)
        for i in range(len(vertices))
        for j in range(i + 1, len(vertices))
        if is_pythagorean_fraction(vertices[i] + vertices[j]) is not None
    ]
    return DistanceGraph(xmax, qmax, tuple(vertices), tuple(edges))


def find_rational_cliques(graph: DistanceGraph, N: int, verify: bool = True) -> list[tuple[Fraction, ...]]:
    """All N-point subsets of the graph with pairwise rational distances.

    With ``verify`` each clique is re-checked through the exact tower path.
    """
    if N < 2:
        raise ValueError("clique size must be at least 2")
    adj = graph.adjacency()
    out = []
    for clique in k_cliques(adj, N):
        pts = tuple(graph.vertices[i] for i in clique)
        if verify and not pairwise_matrix([lift_point(x) for x in pts], digits=10).all_rational:
            raise CrosscheckError(f"clique {pts} failed exact re-verification")
        out.append(pts)
    return out


@dataclass(frozen=True)
class CrosscheckReport:
    qmax: int
    xmax: Fraction
    pairs: int
    rational_pairs: int
    mismatches: int = 0

    def to_json(self) -> dict:
        return {
            "qmax": self.qmax,
            "xmax": str(self.xmax),
            "pairs": self.pairs,
            "rational_pairs": self.rational_pairs,
            "mismatches": self.mismatches,
        }


def oracle_crosscheck(qmax: int, xmax: RationalLike = 1) -> CrosscheckReport:
    """Compare the tower verdict with the integer Pythagorean test on all pairs.

    Raises :class:`CrosscheckError` on the first disagreement.
    """
    if not 1 <= qmax <= 12:
        raise ValueError("crosscheck is limited to 1 <= qmax <= 12")
    xmax = to_fraction(xmax)
    vertices = rational_grid(xmax, qmax)
    pairs = rational = 0
    for i, u in enumerate(vertices):
        pu = lift_point(u)
        for v in vertices[i + 1 :]:
            verdict = classify_distance(pu, lift_point(v), digits=10)
            pf = is_pythagorean_fraction(u + v)
            expected: Optional[Fraction] = None if pf is None else (v - u) * pf.hypotenuse_ratio
            if verdict.value != expected:
                raise CrosscheckError(f"u={u}, v={v}: tower says {verdict.value}, criterion says {expected}")
            pairs += 1
            rational += expected is not None
    return CrosscheckReport(qmax, xmax, pairs, rational)
