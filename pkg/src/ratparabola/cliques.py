"""Exact clique search on small undirected graphs given as adjacency sets."""
from __future__ import annotations

from typing import Iterator, Sequence


def k_cliques(adj: Sequence[set[int]], k: int) -> Iterator[tuple[int, ...]]:
    """Every k-clique exactly once, as increasing index tuples, in lexicographic order.

    Branch and bound: a partial clique is extended only by higher-indexed
    common neighbours, and a branch is cut when too few candidates remain to
    reach size k.
    """
    if k < 1:
        raise ValueError("clique size must be positive")
    n = len(adj)
    later = [sorted(w for w in adj[v] if w > v) for v in range(n)]

    def extend(clique: list[int], cands: list[int]) -> Iterator[tuple[int, ...]]:
        if len(clique) == k:
            yield tuple(clique)
            return
        need = k - len(clique)
        for idx, v in enumerate(cands):
            if len(cands) - idx < need:
                return
            nbrs = adj[v]
            clique.append(v)
            yield from extend(clique, [w for w in cands[idx + 1 :] if w in nbrs])
            clique.pop()

    for v in range(n):
        if k == 1:
            yield (v,)
        elif len(later[v]) >= k - 1:
            yield from extend([v], later[v])


def max_clique(adj: Sequence[set[int]]) -> list[int]:
    """A maximum clique (lexicographically smallest among the largest), sorted.

    Bron-Kerbosch with Tomita pivoting plus a size bound.
    """
    n = len(adj)
    best: list[int] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        nonlocal best
        if not p and not x:
            cand = sorted(r)
            if len(cand) > len(best) or (len(cand) == len(best) and cand < best):
                best = cand
            return
        if len(r) + len(p) < len(best):
            return
        pivot = max(sorted(p | x), key=lambda u: len(p & adj[u]))
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand([], set(range(n)), set())
    return best
