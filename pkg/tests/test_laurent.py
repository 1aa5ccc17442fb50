"""Laurent-polynomial layer: exact arithmetic, canonical form, positivity."""
import random
from fractions import Fraction

import pytest

from gswilson.laurent import (LaurentPoly, RatFunc, VarId, as_poly,
                              fraction_root, is_positive_laurent,
                              monomial_denominator_clear, monomial_pow,
                              nth_root_exact)

X0 = VarId.gs(1, 0)
X1 = VarId.gs(1, 1)
Y = VarId.gs(2, 0)
P = VarId.gs_primary(1)


def test_varid_str_parse_roundtrip():
    ids = [VarId.gs(2, 3), VarId.gs(1, 0, T=4), VarId.gs_primary(3),
           VarId.gs_primary(2, T=1), VarId.coweight(1, 2), VarId.lusztig(7),
           VarId.generic("q"), VarId.edge(2, "E1")]
    for v in ids:
        assert VarId.parse(str(v)) == v
        assert VarId.from_json(v.to_json()) == v


def test_varid_order_groups_by_triangle_then_slot():
    vs = [VarId.gs(1, 0, T=2), VarId.gs_primary(1), VarId.gs(1, 0),
          VarId.gs(2, 1), VarId.coweight(1, 0), VarId.lusztig(1),
          VarId.generic("a")]
    s = sorted(vs)
    # untagged gs block first (primary before i=0), then tagged, then cw/lus/gen
    assert s[0] == VarId.gs_primary(1)
    assert s[1] == VarId.gs(1, 0)
    assert s[2] == VarId.gs(2, 1)
    assert s[3] == VarId.gs(1, 0, T=2)
    assert s[4:] == [VarId.coweight(1, 0), VarId.lusztig(1), VarId.generic("a")]


def test_ring_axioms_random():
    rng = random.Random(0)
    vs = [X0, X1, Y]

    def rand_poly():
        p = LaurentPoly.const(0)
        for _ in range(rng.randint(1, 4)):
            exps = {v: Fraction(rng.randint(-2, 2), rng.choice((1, 2)))
                    for v in vs if rng.random() < 0.7}
            p = p + LaurentPoly.monomial(rng.randint(-3, 3), exps)
        return p

    for _ in range(40):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a - a).is_zero()
        assert a * LaurentPoly.const(1) == a


def test_fractional_exponents_and_pow():
    h = LaurentPoly.monomial(1, {X0: Fraction(1, 2)})
    assert h * h == LaurentPoly.var(X0)
    assert h ** -2 == LaurentPoly.var(X0, -1)
    m = LaurentPoly.monomial(4, {X0: 2, Y: Fraction(-1, 3)})
    r = monomial_pow(m, Fraction(1, 2))
    assert r * r == m
    with pytest.raises(ValueError):
        monomial_pow(LaurentPoly.var(X0) + 1, Fraction(1, 2))


def test_roots():
    assert nth_root_exact(3 ** 12, 3) == 3 ** 4
    assert nth_root_exact(10, 3) is None
    assert fraction_root(Fraction(4, 9), 2) == Fraction(2, 3)
    assert fraction_root(Fraction(2, 9), 2) is None


def test_subs_and_eval():
    p = LaurentPoly.var(X0) * 2 + LaurentPoly.monomial(3, {X1: -1, Y: Fraction(1, 2)})
    q = p.subs({X1: LaurentPoly.const(Fraction(1, 3))})
    assert q == LaurentPoly.var(X0) * 2 + LaurentPoly.monomial(9, {Y: Fraction(1, 2)})
    v = p.eval_positive({X0: Fraction(5), X1: Fraction(1, 2), Y: Fraction(4)})
    assert v == 10 + 3 * 2 * 2


def test_eval_requires_exact_roots():
    p = LaurentPoly.monomial(1, {Y: Fraction(1, 2)})
    with pytest.raises(ValueError):
        p.eval_positive({Y: Fraction(3)})


def test_positivity_witness():
    good = LaurentPoly.var(X0) + LaurentPoly.monomial(2, {X1: -1})
    ok, bad = is_positive_laurent(good)
    assert ok and not bad
    mixed = LaurentPoly.var(X0) - LaurentPoly.var(X1)
    ok, bad = is_positive_laurent(mixed)
    assert not ok and bad  # witness names the offending monomial
    assert any("-1" in w for w in bad)


def test_monomial_denominator_clear():
    p = LaurentPoly.var(X0) + LaurentPoly.monomial(1, {X0: -1, Y: 1})
    m, q = monomial_denominator_clear(p)
    assert m * q == p
    assert all(e >= 0 for v in q.variables() for e in q.exponents(v))


def test_json_roundtrip_canonical():
    p = (LaurentPoly.var(X0, 2) - LaurentPoly.monomial(Fraction(5, 3), {P: 1, Y: -2}))
    q = LaurentPoly.from_json(p.to_json())
    assert q == p
    assert q.to_json() == p.to_json()
    assert str(q) == str(p)


def test_ratfunc_field_ops():
    a = RatFunc(LaurentPoly.var(X0) + 1, LaurentPoly.var(X1))
    b = RatFunc(LaurentPoly.var(Y))
    assert (a / a) == RatFunc(LaurentPoly.const(1))
    assert a * a.inv() == 1
    assert (a + b) - b == a
    # equality is cross-multiplied: unreduced representations compare equal
    two = RatFunc(LaurentPoly.var(X0) * 2, LaurentPoly.var(X0))
    assert two == RatFunc(LaurentPoly.const(2))
    assert not two.is_zero()


def test_ratfunc_laurent_detection():
    lp = LaurentPoly.var(X0) + LaurentPoly.var(X1)
    r = RatFunc(lp * LaurentPoly.var(Y), LaurentPoly.var(Y))
    assert r.is_laurent()
    assert r.as_laurent() == lp
    s = RatFunc(LaurentPoly.const(1), lp)
    assert not s.is_laurent()
    assert as_poly(3) == LaurentPoly.const(3)
