import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratparabola.errors import TowerMismatchError
from ratparabola.exact import (
    QQ,
    FieldTower,
    TowerElement,
    adjoin_sqrt,
    field_arith,
    is_rational,
    merge_towers,
    numeric_eval,
    sqrt_in_field,
    unify,
)
from towergen import TOWERS, elements, mp_value, random_element

T5, S5 = adjoin_sqrt(QQ, 5)
T2, S2 = adjoin_sqrt(QQ, 2)


def test_symbol_is_positive_root():
    assert S5 * S5 == 5
    assert S5 > 2 and S5 < 3
    assert T5.radicands == (Fraction(5),)


# -- field_arith ------------------------------------------------------------


def test_field_arith_norm_example():
    assert field_arith(1 + S5, 1 - S5, "mul") == -4


def test_field_arith_sqrt2_square():
    assert field_arith(S2, S2, "mul") == 2
    assert is_rational(S2 * S2) == 2


def test_field_arith_div_by_conjugate():
    assert field_arith(1, 1 + S2, "div") == -1 + S2


def test_field_arith_add_sub():
    assert field_arith(S5, 3, "add") - 3 == S5
    assert field_arith(S5, S5, "sub").is_zero()


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        field_arith(S5, S5 - S5, "div")
    with pytest.raises(ZeroDivisionError):
        TowerElement.rational(0).inverse()


def test_unknown_op():
    with pytest.raises(ValueError):
        field_arith(1, 2, "pow")


def test_prefix_towers_promote():
    t, s3 = adjoin_sqrt(T5, 3)
    x = s3 + S5
    assert x.tower is t
    assert x - S5 == s3


def test_unrelated_towers_need_unify():
    with pytest.raises(TowerMismatchError):
        S5 + S2
    tower, (a, b) = unify(S5, S2)
    assert tower.depth == 2
    assert (a + b) * (a + b) == 7 + 2 * a * b
    assert a * a == 5 and b * b == 2


def test_unify_detects_hidden_dependencies():
    # sqrt(2 + sqrt(3)) = (sqrt(6) + sqrt(2)) / 2 already lives in Q(sqrt2, sqrt3)
    t3, s3 = adjoin_sqrt(QQ, 3)
    _, r = adjoin_sqrt(t3, 2 + s3)
    t23 = FieldTower.build(2, 3)
    tower, images = merge_towers(t23, r.tower)
    assert tower is t23
    a, b = t23.symbol(0), t23.symbol(1)
    assert TowerElement(t23, images[1]) == (a * b + a) / 2


def test_equality_across_towers():
    tower, (a, b) = unify(S5, S2)
    assert a == S5
    assert hash(TowerElement.rational(Fraction(3, 2))) == hash(Fraction(3, 2))
    assert S5 != S2


def test_build_rejects_square_radicand():
    with pytest.raises(ValueError):
        FieldTower.build(2, 8)


# -- rational_sqrt / sqrt_in_field / adjoin_sqrt ----------------------------


def test_sqrt_in_field_examples():
    assert sqrt_in_field(9 + 4 * S5, T5) == 2 + S5
    assert sqrt_in_field(3 + S5, T5) is None
    assert sqrt_in_field(TowerElement.rational(4)) == 2


def test_sqrt_in_field_negative_and_zero():
    assert sqrt_in_field(2 - S5, T5) is None
    assert sqrt_in_field(S5 - S5, T5) == 0


def test_sqrt_in_field_returns_nonnegative_root():
    root = sqrt_in_field((S5 - 3) ** 2, T5)
    assert root == 3 - S5


def test_adjoin_examples():
    t, s = adjoin_sqrt(QQ, 5)
    assert t.radicands == (Fraction(5),) and s * s == 5
    t, s = adjoin_sqrt(QQ, Fraction(9, 4))
    assert t is QQ and s == Fraction(3, 2)
    t, s = adjoin_sqrt(T5, 9 + 4 * S5)
    assert t is T5 and s == 2 + S5


def test_adjoin_normalizes_rational_radicand():
    t, s = adjoin_sqrt(QQ, 12)
    assert t.radicands == (Fraction(3),)
    assert s * s == 12 and s > 0


def test_adjoin_rejects_nonpositive():
    with pytest.raises(ValueError):
        adjoin_sqrt(QQ, 0)
    with pytest.raises(ValueError):
        adjoin_sqrt(T5, 2 - S5)


def test_adjoin_nested_radicand():
    t, r = adjoin_sqrt(T5, S5)
    assert t.depth == 2
    assert r * r == S5
    assert r ** 4 == 5


# -- is_rational ------------------------------------------------------------


def test_is_rational_examples():
    assert is_rational(TowerElement.rational(Fraction(7, 3))) == Fraction(7, 3)
    assert is_rational(S5) is None
    assert is_rational((2 + S5) * (2 - S5)) == -1


# -- numeric_eval -----------------------------------------------------------


def test_numeric_eval_sqrt5():
    iv = numeric_eval(S5, 10)
    assert iv.width <= Fraction(1, 10 ** 10)
    assert iv.decimal(10) == "2.2360679775"
    assert iv.lo > Fraction(22360679774, 10 ** 10) and iv.hi < Fraction(22360679775, 10 ** 10)


def test_numeric_eval_rational_third():
    iv = numeric_eval(TowerElement.rational(Fraction(1, 3)), 5)
    assert Fraction(33333, 10 ** 5) <= iv.lo <= iv.hi <= Fraction(33334, 10 ** 5)


def test_numeric_eval_exact_minus_one():
    iv = numeric_eval((2 + S5) * (2 - S5), 3)
    assert iv.lo == iv.hi == -1


def test_numeric_eval_rejects_zero_digits():
    with pytest.raises(ValueError):
        numeric_eval(S5, 0)


def test_sign_of_tiny_difference():
    # 1.4142135623730951 is the double nearest sqrt(2); the exact value differs by ~1e-17
    x = S2 - Fraction("1.4142135623730951")
    assert x.sign() == -1


# -- properties -------------------------------------------------------------

props = settings(max_examples=60, deadline=None)


@props
@given(elements(count=3))
def test_field_axioms(abc):
    a, b, c = abc
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@props
@given(st.sampled_from([t for t in TOWERS if t.depth]), st.integers(0, 2 ** 32))
def test_conjugate_norm(tower, seed):
    rng = random.Random(seed)
    k = rng.randrange(tower.depth)
    sub = tower.ancestor(k)
    a, b = random_element(rng, sub), random_element(rng, sub)
    a, b = TowerElement(tower, a.raw), TowerElement(tower, b.raw)
    sym = tower.symbol(k)
    theta = tower.radicand(k)
    assert (a + b * sym) * (a - b * sym) == a * a - theta * b * b


@props
@given(elements())
def test_sqrt_of_square(beta):
    gamma = sqrt_in_field(beta * beta, beta.tower)
    assert gamma is not None
    assert gamma * gamma == beta * beta
    assert gamma == abs(beta)


@props
@given(elements(bits=16))
def test_interval_nesting_and_mpmath_agreement(alpha):
    coarse, fine = numeric_eval(alpha, 10), numeric_eval(alpha, 40)
    assert coarse.width <= Fraction(1, 10 ** 10) and fine.width <= Fraction(1, 10 ** 40)
    # both enclose the true value, so they overlap
    assert coarse.lo <= fine.hi and fine.lo <= coarse.hi
    ref = mp_value(alpha, 80)
    with mpmath.workdps(80):
        for iv in (coarse, fine):
            assert mpmath.mpf(iv.lo.numerator) / iv.lo.denominator <= ref
            assert ref <= mpmath.mpf(iv.hi.numerator) / iv.hi.denominator


@props
@given(elements(bits=16))
def test_sign_matches_mpmath(alpha):
    ref = mp_value(alpha, 100)
    expected = 0 if alpha.is_zero() else (1 if ref > 0 else -1)
    assert alpha.sign() == expected


@props
@given(elements(count=2))
def test_ordering_is_consistent(ab):
    a, b = ab
    assert (a < b) + (a == b) + (a > b) == 1
    assert (a < b) == ((b - a).sign() > 0)
