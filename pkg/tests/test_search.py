import json
import math
from fractions import Fraction

import pytest

from ratparabola.errors import ResourceError
from ratparabola.search import (
    build_distance_graph,
    find_rational_cliques,
    naive_distance_graph,
    oracle_crosscheck,
    rational_grid,
)


def test_rational_grid():
    assert rational_grid(Fraction(1), 4) == sorted(
        [Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(1)]
    )


def test_graph_example_qmax4():
    g = build_distance_graph(1, 4)
    assert set(g.vertices) == {Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(1, 3), Fraction(2, 3)}
    edges = {(g.vertices[i], g.vertices[j]) for i, j in g.edges}
    assert (Fraction(1, 4), Fraction(1, 2)) in edges


def test_graph_no_edges_qmax2():
    assert build_distance_graph(1, 2).edges == ()


def test_graph_errors():
    with pytest.raises(ValueError):
        build_distance_graph(1, 1)
    with pytest.raises(ValueError):
        build_distance_graph(0, 5)
    with pytest.raises(ResourceError) as info:
        build_distance_graph(1, 100, max_vertices=100)
    assert info.value.cap == 100


@pytest.mark.parametrize(
    "xmax, qmax",
    [(1, 4), (1, 12), (2, 16), (Fraction(1, 2), 30), (3, 10), (1, 45), (Fraction(7, 3), 25)],
)
def test_fast_graph_matches_naive(xmax, qmax):
    fast, slow = build_distance_graph(xmax, qmax), naive_distance_graph(xmax, qmax)
    assert fast.vertices == slow.vertices
    assert fast.edges == slow.edges


def test_graph_is_simple_and_symmetric():
    g = build_distance_graph(1, 60)
    assert all(i < j for i, j in g.edges)
    assert len(set(g.edges)) == len(g.edges)
    adj = g.adjacency()
    assert all(i in adj[j] for i, nb in enumerate(adj) for j in nb)


def test_graph_serialization_is_reproducible():
    a = json.dumps(build_distance_graph(1, 40).to_json())
    b = json.dumps(build_distance_graph(1, 40).to_json())
    assert a == b


def test_cliques_n2_are_edges():
    g = build_distance_graph(1, 30)
    pairs = find_rational_cliques(g, 2)
    assert pairs == [(g.vertices[i], g.vertices[j]) for i, j in g.edges]


def test_cliques_empty_at_tiny_bound():
    assert find_rational_cliques(build_distance_graph(1, 4), 3) == []


def test_cliques_reject_small_n():
    with pytest.raises(ValueError):
        find_rational_cliques(build_distance_graph(1, 4), 1)


def test_triangles_at_moderate_bound():
    g = build_distance_graph(1, 120)
    tri = find_rational_cliques(g, 3)
    for t in tri:
        for u, v in ((t[0], t[1]), (t[0], t[2]), (t[1], t[2])):
            s = u + v
            n = s.numerator ** 2 + s.denominator ** 2
            assert math.isqrt(n) ** 2 == n


def test_crosscheck():
    rep = oracle_crosscheck(8, xmax=2)
    assert rep.mismatches == 0 and rep.pairs > 900 and rep.rational_pairs > 0
    assert oracle_crosscheck(2).pairs == 1
    with pytest.raises(ValueError):
        oracle_crosscheck(13)
