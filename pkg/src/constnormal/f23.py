"""The free Carnot group of rank 2 and step 3 in exponential coordinates.

Second-kind coordinates ``x`` identify ``exp(x5 X5) exp(x4 X4) ... exp(x1 X1)``
with ``(x1, ..., x5)``; first-kind coordinates ``a`` identify
``exp(a1 X1 + ... + a5 X5)`` with ``(a1, ..., a5)``.

All operations are written with ``+``, ``-``, ``*`` and division by small
integers only, so they accept exact Fractions, floats, numpy arrays (one
column per coordinate) and polynomials alike. Python ints are promoted to
Fractions on the way in so integer input never silently becomes float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .polyalg import as_fraction


def _lift(v):
    if isinstance(v, bool):
        raise TypeError("boolean coordinate")
    if isinstance(v, int):
        return Fraction(v)
    return v


class Pt2(NamedTuple):
    x1: object
    x2: object
    x3: object
    x4: object
    x5: object

    @classmethod
    def of(cls, *values) -> "Pt2":
        if len(values) == 1 and not isinstance(values[0], (int, float, Fraction, str)):
            values = tuple(values[0])
        if len(values) != 5:
            raise ValueError(f"a point needs 5 coordinates, got {len(values)}")
        return cls(*(as_fraction(v) if isinstance(v, (int, str)) else _lift(v) for v in values))


class Pt1(NamedTuple):
    a1: object
    a2: object
    a3: object
    a4: object
    a5: object

    @classmethod
    def of(cls, *values) -> "Pt1":
        if len(values) == 1 and not isinstance(values[0], (int, float, Fraction, str)):
            values = tuple(values[0])
        if len(values) != 5:
            raise ValueError(f"a point needs 5 coordinates, got {len(values)}")
        return cls(*(as_fraction(v) if isinstance(v, (int, str)) else _lift(v) for v in values))


ZERO2 = Pt2(*(Fraction(0),) * 5)
ZERO1 = Pt1(*(Fraction(0),) * 5)

# graded weights of the coordinates
WEIGHTS = (1, 1, 2, 3, 3)


def mul2(x, y) -> Pt2:
    x1, x2, x3, x4, x5 = map(_lift, x)
    y1, y2, y3, y4, y5 = map(_lift, y)
    return Pt2(
        x1 + y1,
        x2 + y2,
        x3 + y3 - x1 * y2,
        x4 + y4 - x1 * y3 + x1 * x1 * y2 / 2,
        x5 + y5 + x1 * x2 * y2 + x1 * y2 * y2 / 2 - x2 * y3,
    )


def mul1(a, b) -> Pt1:
    a1, a2, a3, a4, a5 = map(_lift, a)
    b1, b2, b3, b4, b5 = map(_lift, b)
    c = a2 * b1 - a1 * b2
    return Pt1(
        a1 + b1,
        a2 + b2,
        a3 + b3 + c / 2,
        a4 + b4 + (a3 * b1 - a1 * b3) / 2 + a1 * (-c) / 12 + b1 * c / 12,
        a5 + b5 + (a3 * b2 - a2 * b3) / 2 - a2 * c / 12 + b2 * c / 12,
    )


def to_first(x) -> Pt1:
    x1, x2, x3, x4, x5 = map(_lift, x)
    return Pt1(
        x1,
        x2,
        x3 + x1 * x2 / 2,
        x4 + x1 * x3 / 2 + x1 * x1 * x2 / 12,
        x5 + x2 * x3 / 2 - x1 * x2 * x2 / 12,
    )


def to_second(a) -> Pt2:
    a1, a2, a3, a4, a5 = map(_lift, a)
    return Pt2(
        a1,
        a2,
        a3 - a1 * a2 / 2,
        a4 + a1 * a1 * a2 / 6 - a1 * a3 / 2,
        a5 + a1 * a2 * a2 / 3 - a2 * a3 / 2,
    )


def inv(x) -> Pt2:
    a = to_first(x)
    return to_second(Pt1(*(-c for c in a)))


def inv1(a) -> Pt1:
    return Pt1(*(-_lift(c) for c in a))


def lvf(i: int, x):
    """Coordinate vector of the left-invariant field X_i at ``x``."""
    x1, x2 = _lift(x[0]), _lift(x[1])
    one, zero = x1 * 0 + 1, x1 * 0
    if i == 1:
        return (one, zero, zero, zero, zero)
    if i == 2:
        return (zero, one, -x1, x1 * x1 / 2, x1 * x2)
    if i == 3:
        return (zero, zero, one, -x1, -x2)
    if i == 4:
        return (zero, zero, zero, one, zero)
    if i == 5:
        return (zero, zero, zero, zero, one)
    raise ValueError(f"no vector field X{i} in F23")


def exp_horiz(a, b) -> Pt2:
    """``exp(a X1 + b X2)`` in second-kind coordinates."""
    a, b = _lift(a), _lift(b)
    return Pt2(a, b, -a * b / 2, a * a * b / 6, a * b * b / 3)


def flow_horiz(a, t) -> Pt2:
    """``exp(t (a X1 + X2))``."""
    a, t = _lift(a), _lift(t)
    return exp_horiz(a * t, t)


def exp_first(a) -> Pt2:
    """Second-kind coordinates of ``exp(a1 X1 + ... + a5 X5)``."""
    return to_second(a)


def dilate2(lam, x) -> Pt2:
    lam = _lift(lam)
    if not (lam > 0):
        raise ValueError("dilation factor must be positive")
    x1, x2, x3, x4, x5 = map(_lift, x)
    lam2 = lam * lam
    lam3 = lam2 * lam
    return Pt2(lam * x1, lam * x2, lam2 * x3, lam3 * x4, lam3 * x5)


def dilate1(lam, a) -> Pt1:
    lam = _lift(lam)
    if not (lam > 0):
        raise ValueError("dilation factor must be positive")
    a1, a2, a3, a4, a5 = map(_lift, a)
    lam2 = lam * lam
    lam3 = lam2 * lam
    return Pt1(lam * a1, lam * a2, lam2 * a3, lam3 * a4, lam3 * a5)


def gauge(x) -> float:
    """Box gauge ``max(|x1|, |x2|, |x3|^(1/2), |x4|^(1/3), |x5|^(1/3))``; homogeneous of degree 1."""
    x1, x2, x3, x4, x5 = (abs(float(v)) for v in x)
    return max(x1, x2, x3**0.5, x4 ** (1.0 / 3.0), x5 ** (1.0 / 3.0))


def gauge_leq(x, r) -> bool:
    """Exact test ``gauge(x) <= r`` by comparing powers instead of roots."""
    r = _lift(r)
    x1, x2, x3, x4, x5 = (abs(_lift(v)) for v in x)
    return x1 <= r and x2 <= r and x3 <= r * r and x4 <= r**3 and x5 <= r**3
