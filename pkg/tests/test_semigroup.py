from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from constnormal import f23
from constnormal.f23 import ZERO2, dilate2, exp_horiz, flow_horiz, mul2
from constnormal.semigroup import (
    MalformedZigZag,
    NotInInterior,
    OnCriticalPlane,
    OutsideParaboloid,
    P,
    P_tilde,
    Verdict,
    ZigZag,
    curve_residuals,
    factor_boundary,
    factor_in_W6,
    gmap,
    gmap_invert,
    member_S,
    member_S_curve_only,
    member_wedge,
    verify_point_F23,
    check_F24_point,
    w3_separation,
    w3_zigzag,
    zigzag_endpoint,
)

from conftest import fractions, positive_fractions

steps = st.lists(st.tuples(fractions(-3, 3), fractions(0, 2)), min_size=1, max_size=5)
unit = st.builds(lambda n, d: Fraction(n, d), st.integers(1, 20), st.integers(21, 40))


def test_member_examples():
    m = member_S((0, 1, 0, 1, 0))
    assert m.verdict is Verdict.ParaboloidInterior and m.P_value == 1
    m = member_S((0, 1, 0, 0, 0))
    assert m.verdict is Verdict.BoundaryCurve
    assert all(v == 0 for v in m.residuals.values())
    assert member_S((0, -1, 0, 0, 0)).verdict is Verdict.Outside
    assert member_S(ZERO2).verdict is Verdict.BoundaryCurve


def test_boundary_point_off_the_curve():
    # exp(X1) exp(X2) has P = 0 but does not lie on exp(W) exp(R X1)
    x = mul2(exp_horiz(1, 0), exp_horiz(0, 1))
    assert x == (1, 1, -1, Fraction(1, 2), Fraction(1, 2))
    assert P(x) == 0
    assert member_S(x).verdict is Verdict.ParaboloidBoundary
    assert member_S_curve_only(x) is Verdict.Outside
    zz = factor_boundary((0, 1, 1, 2, 0))
    assert zz.steps == ((-4, 0), (6, 1), (-2, 0))
    assert zigzag_endpoint(zz) == (0, 1, 1, 2, 0)


def test_zigzag_examples():
    assert zigzag_endpoint(ZigZag()) == ZERO2
    assert zigzag_endpoint(ZigZag(((Fraction(3, 2), 1),))) == flow_horiz(Fraction(3, 2), 1)


def test_gmap_examples():
    a, b, c = Fraction(3), Fraction(-2), Fraction(1, 3)
    assert gmap(a, a, c) == (-a / 2, a * a / 6, a / 3)
    assert gmap(0, 0, c) == (0, 0, 0)
    assert gmap(a, b, 0) == (-b / 2, b * b / 6, b / 3)
    assert gmap_invert(*gmap(Fraction(1), Fraction(2), Fraction(1, 2))) == (1, 2, Fraction(1, 2))


def test_gmap_invert_errors():
    with pytest.raises(OutsideParaboloid):
        gmap_invert(Fraction(1), Fraction(0), Fraction(0))
    with pytest.raises(OnCriticalPlane):
        gmap_invert(Fraction(3), Fraction(100), Fraction(-2))


@given(fractions(-3, 3), fractions(-3, 3), unit)
def test_gmap_round_trip(a, b, c):
    assume(a != b)
    assert gmap_invert(*gmap(a, b, c)) == (a, b, c)


@given(steps)
def test_W_endpoints_are_in_S(s):
    assert member_S(zigzag_endpoint(ZigZag(tuple(s)))).in_S


@given(steps, steps)
def test_semigroup_closure(s, t):
    x = zigzag_endpoint(ZigZag(tuple(s)))
    y = zigzag_endpoint(ZigZag(tuple(t)))
    assert member_S(mul2(x, y)).in_S


@given(st.tuples(*(fractions(-3, 3) for _ in range(5))), positive_fractions())
def test_dilation_invariance(x, lam):
    assert member_S(dilate2(lam, x)).verdict is member_S(x).verdict


@given(fractions(-3, 3), positive_fractions(), fractions(-3, 3))
def test_curve_lies_on_paraboloid(a, b, s):
    x = mul2(exp_horiz(a, b), exp_horiz(s, 0))
    m = member_S(x)
    assert m.verdict is Verdict.BoundaryCurve
    assert P(x) == 0


@given(steps)
def test_factor_interior_points(s):
    x = zigzag_endpoint(ZigZag(tuple(s)))
    assume(member_S(x).verdict is Verdict.ParaboloidInterior)
    zz = factor_in_W6(x)
    assert len(zz) <= 6 and zz.is_w1()
    assert zigzag_endpoint(zz) == x


def test_factor_critical_plane_point():
    x = (0, 1, 0, 1, 0)
    zz = factor_in_W6(x)
    assert zigzag_endpoint(zz) == x and len(zz) <= 6


def test_factor_rejects_non_interior():
    with pytest.raises(NotInInterior):
        factor_in_W6((0, 1, 0, 0, 0))


@given(fractions(-3, 3), positive_fractions(), fractions(-3, 3), fractions(-3, 3))
def test_factor_boundary(s, b, a, t):
    x = zigzag_endpoint(ZigZag(((s, 0), (a, b), (t, 0))))
    assert P(x) == 0
    zz = factor_boundary(x)
    assert zigzag_endpoint(zz) == x and len(zz) == 3


def test_wedge_examples():
    assert member_wedge((0, 2, -1, Fraction(1, 2), 0))
    assert not member_wedge((0, 0, 0, 0, 1))


@given(fractions(), fractions(), positive_fractions())
def test_wedge_remark_family(a, b, c):
    v = (b, c, -a * c, a * a * c / 2, 0)
    assert member_wedge(v)
    assert 2 * v[1] * v[3] == v[2] ** 2


def test_P_tilde_value():
    assert P_tilde((0, 2, -1, Fraction(1, 2), 0)) == 2


def test_point_and_submersion():
    results = verify_point_F23()
    assert all(r.ok for r in results), [r.name for r in results if not r.ok]


def test_F24_point():
    rep = check_F24_point()
    assert rep.identity_holds and rep.submersion_rank == 8


def test_w3_single_step():
    q2, q4, bound = w3_separation(w3_zigzag([0], [1]))
    assert (q2, q4) == (1, Fraction(1, 6)) and q4 >= Fraction(1, 24)


def test_w3_malformed():
    with pytest.raises(MalformedZigZag):
        w3_zigzag([0, 1], [1])
    with pytest.raises(MalformedZigZag):
        w3_separation(ZigZag(((0, 0), (1, 2))))


@given(st.lists(st.tuples(fractions(-3, 3), positive_fractions(2)), min_size=1, max_size=10))
def test_w3_bound(pairs):
    shifts, times = zip(*pairs)
    q2, q4, bound = w3_separation(w3_zigzag(shifts, times))
    assert q2 == sum(times) and q4 >= bound
