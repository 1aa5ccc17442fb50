"""Exact matrix helpers: LDU, inversion, determinant, projective utilities."""
import random
from fractions import Fraction

import pytest

from gswilson.laurent import LaurentPoly, RatFunc, VarId
from gswilson.matrix import Mat, MinorVanishes, monomial_clear, proj_equal


def _rand_mat(rng, n, lo=-4, hi=4):
    return Mat([[Fraction(rng.randint(lo, hi)) for _ in range(n)]
                for _ in range(n)])


def test_mul_inv_identity():
    rng = random.Random(1)
    for _ in range(10):
        n = rng.randint(2, 5)
        a = _rand_mat(rng, n)
        while not a.det():
            a = _rand_mat(rng, n)
        assert a * a.inv() == Mat.identity(n)
        assert a.inv() * a == Mat.identity(n)


def test_det_against_ldu_product():
    rng = random.Random(2)
    for _ in range(10):
        n = rng.randint(2, 4)
        a = _rand_mat(rng, n)
        try:
            _, d, _ = a.ldu()
        except MinorVanishes:
            continue
        prod = Fraction(1)
        for i in range(n):
            prod *= d[i, i]
        assert a.det() == prod


def test_ldu_recombines_and_flags_vanishing_minor():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(2, 4)
        a = _rand_mat(rng, n)
        try:
            l, d, u = a.ldu()
        except MinorVanishes as e:
            # the reported leading minor really does vanish
            k = e.k
            sub = Mat([row[:k] for row in a.rows[:k]])
            assert not sub.det()
            continue
        assert l * d * u == a
        assert l.is_lower_triangular() and u.is_upper_triangular()
        assert d.is_diagonal()
    with pytest.raises(MinorVanishes):
        Mat([[0, 1], [1, 0]]).ldu()


def test_unitri_inv_division_free():
    x = LaurentPoly.var(VarId.gs(1, 0))
    one, zero = LaurentPoly.const(1), LaurentPoly.const(0)
    u = Mat([[one, x, x * x], [zero, one, x + 1], [zero, zero, one]])
    v = u.unitri_inv()
    assert u * v == Mat.identity(3, one)
    # entries stayed polynomials, no RatFunc crept in
    assert all(isinstance(e, LaurentPoly) for row in v.rows for e in row)


def test_inv_pivots_past_zero_leading_entry():
    a = Mat([[0, 1, 2], [1, 0, 1], [3, 1, 0]])
    assert a * a.inv() == Mat.identity(3)
    with pytest.raises(ZeroDivisionError):
        Mat([[1, 2], [2, 4]]).inv()


def test_proj_equal():
    x = LaurentPoly.var(VarId.gs(1, 0))
    a = Mat([[x, x * x], [LaurentPoly.const(0), x + x]])
    b = Mat([[LaurentPoly.const(1), x], [LaurentPoly.const(0),
                                         LaurentPoly.const(2)]])
    assert proj_equal(a, b)          # a = x * b
    assert not proj_equal(a, b + b * 0 + Mat.identity(2, LaurentPoly.const(1)))
    assert proj_equal(Mat([[0]]), Mat([[0]]))


def test_monomial_clear():
    x, y = VarId.gs(1, 0), VarId.gs(2, 0)
    m = LaurentPoly.monomial(1, {x: Fraction(3, 2), y: -1})
    base = Mat([[LaurentPoly.var(x) + 1, LaurentPoly.var(y)],
                [LaurentPoly.const(1), LaurentPoly.var(x, 2)]])
    scaled = base.map_entries(lambda e: e * m)
    got_m, cleared = monomial_clear(scaled)
    assert got_m == m
    assert cleared == base
    # ratfunc entries with monomial denominators are handled too
    rf = scaled.map_entries(lambda e: RatFunc(e, LaurentPoly.var(x)))
    _, c2 = monomial_clear(rf)
    assert c2 == base


def test_trace_and_pow():
    a = Mat([[1, 2], [3, 4]])
    assert a.trace() == 5
    assert a ** 3 == a * a * a
    assert a ** 0 == Mat.identity(2)
