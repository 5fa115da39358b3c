"""Acceptance criteria, one test each, with their time limits.

The terminal summary prints a PASS/FAIL line per criterion.
"""
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from ratparabola.constructions import (
    ConstructedPair,
    HyperbolaParams,
    construct_pair,
    diamond_grid,
    first_quadrant_threshold,
    hyperbola_pair_from_s,
    hyperbola_report,
    sqrt5_example_params,
    verify_grid,
)
from ratparabola.errors import ParseError
from ratparabola.exact import QQ, adjoin_sqrt, format_element, parse_element
from ratparabola.parabola import classify_distance, distance_squared, factored_parts, lift_point, pairwise_matrix
from ratparabola.pythagorean import conjecture_difference_search, three_point_from_fractions
from ratparabola.search import build_distance_graph, find_rational_cliques, oracle_crosscheck
from towergen import TOWERS, random_element

criterion = pytest.mark.criterion


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


@criterion(1, "field axioms on 1000 random tower elements, depth <= 3")
def test_c01_field_axioms():
    rng = random.Random(20240601)
    with Timer() as t:
        for i in range(1000):
            tower = TOWERS[i % len(TOWERS)]
            assert tower.depth <= 3
            a, b, c = (random_element(rng, tower, bits=64) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            if not a.is_zero():
                assert a * a.inverse() == 1
    assert t.seconds < 10


@criterion(2, "factorization identity on 1000 random rational pairs")
def test_c02_factorization_identity():
    rng = random.Random(2)
    with Timer() as t:
        done = 0
        while done < 1000:
            x1 = Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 4))
            x2 = Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 4))
            if x1 == x2:
                continue
            p, q = lift_point(x1), lift_point(x2)
            d, f2 = factored_parts(p, q)
            assert distance_squared(p, q) == d * d * f2
            assert (x2 - x1) ** 2 + (x2 ** 2 - x1 ** 2) ** 2 == (x2 - x1) ** 2 * (1 + (x1 + x2) ** 2)
            done += 1
    assert t.seconds < 5


@criterion(3, "tower verdict equals the Pythagorean criterion, denominators <= 8")
def test_c03_pythagorean_equivalence():
    for xmax in (1, 2):
        report = oracle_crosscheck(8, xmax=xmax)
        assert report.mismatches == 0
        assert report.rational_pairs > 0


@criterion(4, "three-point set from 3/4, 20/21, 21/20")
def test_c04_three_point():
    with Timer() as t:
        pts = three_point_from_fractions(Fraction(3, 4), Fraction(20, 21), Fraction(21, 20))
        assert [p.x for p in pts] == [Fraction(137, 420), Fraction(89, 210), Fraction(263, 420)]
        m = pairwise_matrix(pts)
        assert m.all_rational
        assert m.verdict(0, 1).value == Fraction(41, 336)
        assert m.verdict(0, 2).value == Fraction(29, 70)
        assert m.verdict(1, 2).value == Fraction(493, 1680)
    assert t.seconds < 1


@criterion(5, "worked sqrt(5) pair has distance 59")
def test_c05_worked_example():
    with Timer() as t:
        pair = construct_pair(8, -1, 8, 1, 5)
        assert isinstance(pair, ConstructedPair)
        assert pair.dist == 59
        assert classify_distance(pair.p1, pair.p2).value == 59
        assert pair.p1.x.sign() > 0 and pair.p2.x.sign() > 0
        _, s5 = adjoin_sqrt(QQ, 5)
        assert (8 - s5) * (8 + s5) == 59
    assert t.seconds < 1


@criterion(6, "grid within-cell distances |5n^2 - (8+m)^2|, N = 3")
def test_c06_grid_cells():
    with Timer() as t:
        grid = diamond_grid(sqrt5_example_params(3))
        by_coeff = {(c.a, c.b): c for c in grid.cells}
        for n in (1, 2, 3):
            for m in (0, 1, 2):
                cell = by_coeff[8 + m, n]
                assert cell.realized
                assert cell.result.dist == abs(5 * n * n - (8 + m) ** 2)
        assert [by_coeff[8 + m, n].result.dist for n, m in ((1, 0), (2, 1), (3, 2))] == [59, 61, 55]
    assert t.seconds < 5


@criterion(7, "grid cross-pair verdicts: complete, numerically confirmed, order invariant")
def test_c07_grid_cross_pairs():
    with Timer() as t:
        grid = diamond_grid(sqrt5_example_params(3))
        report = verify_grid(grid, digits=100)
        n = len(report.points)
        assert len(report.pairs) == n * (n - 1) // 2
        assert all(v.status in ("rational", "irrational") for v in report.pairs)
        assert report.numeric_agreement
        for v in report.pairs:
            if v.value is not None:
                p, q = report.points[v.i].x, report.points[v.j].x
                d2 = distance_squared(lift_point(p), lift_point(q)).numeric(202)
                assert d2.sqrt(100).contains(v.value)
        reversed_order = list(range(len(grid.realized_cells())))[::-1]
        assert verify_grid(grid, order=reversed_order).to_json() == report.to_json()
        claim = [note for note in report.notes if note.startswith("all-pairs claim")]
        assert len(claim) == 1 and (("HOLDS" in claim[0]) == report.all_rational)
    assert t.seconds < 120


@criterion(8, "hyperbola threshold sqrt(3)/3 at C = 1/2, pair at s = 1 has distance 1")
def test_c08_hyperbola():
    half = HyperbolaParams(Fraction(1, 2))
    assert first_quadrant_threshold(half) == parse_element("(0 + 1/3*sqrt(3))")
    for C in (1, Fraction(3, 2), 5):
        assert first_quadrant_threshold(HyperbolaParams(C)) is None
        assert not hyperbola_pair_from_s(HyperbolaParams(C), 1)
    pair = hyperbola_pair_from_s(half, 1)
    assert pair.dist == 1 and classify_distance(pair.p1, pair.p2).value == 1
    notes = hyperbola_report(half, 1)["notes"]
    assert any("no first-quadrant solutions fails" in n for n in notes)


@criterion(9, "conjecture search: bound 5 empty, bound 100 deterministic")
def test_c09_conjecture():
    assert conjecture_difference_search(5).collisions == ()
    with Timer() as t:
        first = json.dumps(conjecture_difference_search(100).to_json())
    assert t.seconds < 60
    assert json.dumps(conjecture_difference_search(100).to_json()) == first


@criterion(10, "clique search at xmax = 1, qmax = 420 finds the three-point set")
def test_c10_clique_search():
    with Timer() as t:
        graph = build_distance_graph(1, 420)
        triangles = find_rational_cliques(graph, 3)
    assert (Fraction(137, 420), Fraction(89, 210), Fraction(263, 420)) in triangles
    assert t.seconds < 300


@criterion(11, "format/parse roundtrip on 1000 random elements; positioned parse errors")
def test_c11_parser_roundtrip():
    rng = random.Random(11)
    for i in range(1000):
        alpha = random_element(rng, TOWERS[i % len(TOWERS)], bits=64)
        text = format_element(alpha)
        back = parse_element(text)
        assert format_element(back) == text
        assert back == alpha
    for text, offset in [("(1 + 2*sqrt(5)", 14), ("(1 + 2*sqrt(5)) x", 16), ("(1 * 2*sqrt(5))", 3), ("1/0", 2)]:
        with pytest.raises(ParseError) as info:
            parse_element(text)
        assert info.value.offset == offset


CLI_RUNS = [
    ["verify", "{points}"],
    ["diamond", "--r", "5", "--a0", "7", "--b0", "1", "--step-a", "1", "--step-b", "1", "--n", "3"],
    ["search", "--xmax", "1", "--qmax", "60", "--n", "2"],
    ["conjecture", "--bound", "100"],
    ["plot", "--kind", "hyperbola31", "--c", "1/2"],
    ["plot", "--kind", "hyperbola32", "--c", "1/2", "--r", "5"],
    ["plot", "--kind", "diamond_grid"],
    ["hyperbola", "--c", "1/2", "--s", "1"],
    ["crosscheck", "--qmax", "8"],
]


@criterion(12, "every CLI subcommand is byte-for-byte deterministic across processes")
def test_c12_cli_determinism(tmp_path):
    points = tmp_path / "points.json"
    points.write_text(json.dumps(["137/420", "89/210", "263/420"]))
    for argv in CLI_RUNS:
        argv = [a.format(points=points) for a in argv]
        outputs = []
        for seed in ("1", "2"):
            env = dict(os.environ, PYTHONHASHSEED=seed)
            proc = subprocess.run(
                [sys.executable, "-m", "ratparabola.cli", *argv], capture_output=True, env=env, check=True
            )
            outputs.append(proc.stdout)
        assert outputs[0] == outputs[1] and outputs[0], argv
