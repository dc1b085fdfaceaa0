from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from constnormal import f23
from constnormal.polyalg import (
    MPoly,
    MissingAssignment,
    RatFunc,
    ZeroDenominator,
    det3,
    jacobian,
    poly_subst,
    quadratic_discriminant,
    rank,
)
from constnormal.semigroup import P_hat_poly, P_poly, gmap

from conftest import fractions

VARS = ("x1", "x2", "x3")
x1, x2, x3 = (MPoly.var(v, VARS) for v in VARS)


def to_sympy(p):
    syms = sympy.symbols(p.variables)
    out = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, mono):
            term *= s**e
        out += term
    return sympy.expand(out)


monomials = st.tuples(*(st.integers(0, 3) for _ in VARS))
polys = st.dictionaries(monomials, fractions(), max_size=5).map(lambda d: MPoly(VARS, d))


def test_basic_arithmetic():
    p = P_poly()
    assert (p - p).is_zero()
    assert p + (-p) == MPoly.zero(p.variables)
    x = P_poly().variables
    a = MPoly.var("x2", x)
    b = MPoly.var("x4", x)
    assert a * (a * a * b) == a**3 * b


def test_derivatives_against_sympy():
    p = P_poly()
    s = to_sympy(p)
    for v in p.variables:
        assert to_sympy(p.diff(v)) == sympy.expand(sympy.diff(s, sympy.Symbol(v)))
    assert p.diff("x4") == MPoly.var("x2", p.variables) ** 3
    assert P_hat_poly().diff("y") == 1
    assert MPoly.const(5, ("c",)).diff("c").is_zero()


def test_evaluation():
    p = P_poly()
    assert p.eval((0, 1, 0, 1, 0)) == 1
    assert p.eval((0, 0, 0, 0, 0)) == p.constant_term() == 0
    assert p.eval({"x1": 0, "x2": 2, "x3": -1, "x4": Fraction(1, 2), "x5": 0}) == 4 - 8


def test_missing_assignment():
    with pytest.raises(MissingAssignment):
        poly_subst(P_poly(), {"x2": 1})


def test_det3():
    one, zero = MPoly.const(1), MPoly.const(0)
    assert det3([[one, zero, zero], [zero, one, zero], [zero, zero, one]]) == 1
    assert det3([[x1, x2, x3], [x1, x2, x3], [x3, x1, x2]]).is_zero()


def test_jacobian_of_G_against_sympy():
    names = ("a", "b", "c")
    a, b, c = (MPoly.var(v, names) for v in names)
    det = det3(jacobian(list(gmap(a, b, c)), names))
    sa, sb, sc = sympy.symbols("a b c")
    J = sympy.Matrix(list(gmap(sa, sb, sc))).jacobian([sa, sb, sc])
    assert to_sympy(det) == sympy.expand(J.det())
    assert sympy.factor(J.det()) == sympy.factor(sympy.Rational(1, 72) * (sc - 1) ** 4 * sc**3 * (sa - sb) ** 2)


def test_discriminant():
    t = MPoly.var("t", ("t",))
    assert quadratic_discriminant(t * t - 3 * t + 2, "t") == 1


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert rank([]) == 0


def test_ratfunc_zero_denominator():
    with pytest.raises(ZeroDenominator):
        RatFunc(x1, MPoly.zero(VARS))
    r = RatFunc(x1, x2)
    with pytest.raises(ZeroDenominator):
        r.eval((1, 0, 0))


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + q == q + p
    assert p * q == q * p


@given(polys, polys, fractions())
def test_diff_linear_and_leibniz(p, q, c):
    for v in VARS:
        assert (p * c + q).diff(v) == p.diff(v) * c + q.diff(v)
        assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)


@given(polys)
def test_multiplication_against_sympy(p):
    assert to_sympy(p * p) == sympy.expand(to_sympy(p) ** 2)


def test_coordinate_changes_compose_to_identity():
    xs = tuple(MPoly.var(v, ("x1", "x2", "x3", "x4", "x5")) for v in ("x1", "x2", "x3", "x4", "x5"))
    assert tuple(f23.to_second(f23.to_first(xs))) == xs
    as_ = tuple(MPoly.var(v, ("a1", "a2", "a3", "a4", "a5")) for v in ("a1", "a2", "a3", "a4", "a5"))
    assert tuple(f23.to_first(f23.to_second(as_))) == as_


@given(polys, polys.filter(lambda p: not p.is_zero()), polys.filter(lambda p: not p.is_zero()))
def test_ratfunc_equality_is_equivalence(p, q, r):
    a = RatFunc(p * r, q * r)
    b = RatFunc(p, q)
    c = RatFunc(p * r * r, q * r * r)
    assert a == a
    assert a == b and b == a
    assert b == c and a == c
