from fractions import Fraction
from itertools import product
from math import factorial

import pytest
from hypothesis import given, strategies as st

from constnormal.liecore import (
    AlgebraMismatch,
    CarnotAlgebra,
    JacobiViolation,
    algebra_by_name,
    bch,
    bracket,
    dilate_alg,
    exp_ad,
    f23,
    f24,
    free_nilpotent,
)

from conftest import fractions

ALGEBRAS = ["F23", "F24", "free:2:3", "free:2:4", "free:2:5", "free:3:3"]


def X(i, alg=None):
    return (alg or f23()).basis(i)


def test_brackets_f23():
    assert bracket(X(2), X(1)) == X(3)
    assert bracket(X(1), X(2)) == -X(3)
    assert bracket(X(3), X(1)) == X(4)
    assert bracket(X(3), X(2)) == X(5)
    for i in range(1, 6):
        assert bracket(X(i), X(i)).is_zero()


@pytest.mark.parametrize("name", ALGEBRAS)
def test_jacobi_on_basis(name):
    alg = algebra_by_name(name)
    n = alg.dim
    for i, j, k in product(range(1, n + 1), repeat=3):
        a, b, c = alg.basis(i), alg.basis(j), alg.basis(k)
        s = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
        assert s.is_zero()


def test_free_dimensions():
    # Witt's formula: 2, 1, 2, 3, 6
    assert free_nilpotent(2, 5).layer_sizes == (2, 1, 2, 3, 6)
    assert free_nilpotent(3, 3).layer_sizes == (3, 3, 8)
    assert f24().layer_sizes == (2, 1, 2, 3)


def test_invalid_structure_rejected():
    def e(k):
        return tuple(int(i == k) for i in range(1, 9))

    table = {(2, 1): e(3), (3, 1): e(4), (3, 2): e(5), (4, 1): e(6), (4, 2): e(7), (5, 2): e(8)}
    CarnotAlgebra((2, 1, 2, 3), {**table, (5, 1): e(7)})
    # Jacobi on (X1, X2, X3) forces [X5, X1] = [X4, X2]
    with pytest.raises(JacobiViolation):
        CarnotAlgebra((2, 1, 2, 3), {**table, (5, 1): e(6)})


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        bracket(f23().basis(1), f24().basis(1))


def _brute_exp_ad(y, x, t):
    out, term = x * 0, x
    for k in range(0, 10):
        out = out + term * (Fraction(t) ** k / factorial(k))
        term = bracket(y, term)
    return out


def test_exp_ad_examples():
    p = exp_ad(X(1), X(2))
    assert p[0] == X(2)
    assert p[1] == bracket(X(1), X(2)) == -X(3)
    assert p[2] == bracket(X(1), bracket(X(1), X(2))) / 2 == X(4) / 2
    assert p.degree == 2
    assert exp_ad(f23().zero(), X(3)).degree == 0
    assert exp_ad(X(1), X(1)).degree == 0
    for t in (Fraction(-3, 2), Fraction(0), Fraction(5, 7)):
        assert p(t) == _brute_exp_ad(X(1), X(2), t)


def test_bch_examples():
    alg = f23()
    assert bch(X(1), alg.zero()) == X(1)
    assert bch(X(1), X(2)) == X(1) + X(2) - X(3) / 2 + X(4) / 12 - X(5) / 12
    u = X(1) * 3 + X(4)
    assert bch(u, -u).is_zero()


def test_dilation_examples():
    assert dilate_alg(1, X(3)) == X(3)
    assert dilate_alg(2, X(3)) == X(3) * 4


def vectors(alg):
    return st.lists(fractions(-2, 2, 5), min_size=alg.dim, max_size=alg.dim).map(alg.vec)


@given(vectors(f23()), vectors(f23()), vectors(f23()))
def test_bch_associative_f23(u, v, w):
    assert bch(bch(u, v), w) == bch(u, bch(v, w))


@given(vectors(f24()), vectors(f24()), vectors(f24()))
def test_bch_associative_f24(u, v, w):
    assert bch(bch(u, v), w) == bch(u, bch(v, w))


@given(vectors(f24()), vectors(f24()), vectors(f24()), fractions())
def test_exp_ad_is_automorphism(y, u, v, t):
    lhs = exp_ad(y, bracket(u, v))(t)
    rhs = bracket(exp_ad(y, u)(t), exp_ad(y, v)(t))
    assert lhs == rhs


@given(vectors(f24()), vectors(f24()), fractions(0, 4).filter(lambda x: x > 0))
def test_dilation_is_automorphism(u, v, lam):
    assert dilate_alg(lam, bracket(u, v)) == bracket(dilate_alg(lam, u), dilate_alg(lam, v))


def test_table_round_trip(tmp_path):
    alg = f24()
    path = tmp_path / "f24.txt"
    path.write_text(alg.to_table())
    back = algebra_by_name(str(path))
    for i in range(1, alg.dim + 1):
        for j in range(1, alg.dim + 1):
            assert bracket(back.basis(i), back.basis(j)).coeffs == bracket(alg.basis(i), alg.basis(j)).coeffs
