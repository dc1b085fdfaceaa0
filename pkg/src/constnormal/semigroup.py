"""The semigroup generated by the horizontal half-space {a X1 + b X2 : b >= 0}.

Points are in second-kind coordinates unless stated otherwise. A zig-zag is a
list of control pairs ``(a, b)``, each standing for the factor
``exp(a X1 + b X2)``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import f23
from .f23 import Pt1, Pt2, dilate2, exp_horiz, mul2, to_first, to_second
from .liecore import ad_exp, bch_many, exp_ad
from .liecore import f23 as f23_algebra
from .liecore import f24 as f24_algebra
from .polyalg import MPoly, as_fraction, rank


class SemigroupError(ValueError):
    pass


class OnCriticalPlane(SemigroupError):
    pass


class OutsideParaboloid(SemigroupError):
    pass


class NotInInterior(SemigroupError):
    pass


class MalformedZigZag(SemigroupError):
    pass


# the defining polynomials, as explicit formulas (generic scalars) and as MPolys


def P(x):
    """Degree-6 homogeneous polynomial cutting out the semigroup."""
    _, x2, x3, x4, x5 = x
    return x2**3 * x4 - 2 * x2**2 * x3**2 - 6 * x2 * x3 * x5 - 6 * x5**2


def P_hat(x, y, z):
    return y - 2 * x**2 - 6 * x * z - 6 * z**2


def P_tilde(a):
    """The same polynomial in first-kind coordinates."""
    a1, a2, a3, a4, a5 = a
    return -a2**2 * a3**2 / 2 + a2**3 * a4 - a1 * a2**2 * a5 - 6 * a5**2


X_VARS = ("x1", "x2", "x3", "x4", "x5")
A_VARS = ("a1", "a2", "a3", "a4", "a5")


def xs():
    return tuple(MPoly.var(v, X_VARS) for v in X_VARS)


def as_():
    return tuple(MPoly.var(v, A_VARS) for v in A_VARS)


def P_poly() -> MPoly:
    return P(xs())


def P_tilde_poly() -> MPoly:
    return P_tilde(as_())


def P_hat_poly() -> MPoly:
    x, y, z = (MPoly.var(v, ("x", "y", "z")) for v in ("x", "y", "z"))
    return P_hat(x, y, z)


# zig-zags


@dataclass(frozen=True)
class ZigZag:
    steps: Tuple[Tuple[object, object], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((a, b) for a, b in self.steps))

    def __len__(self):
        return len(self.steps)

    def is_w1(self) -> bool:
        return all(b >= 0 for _, b in self.steps)

    def is_w2(self) -> bool:
        return all(b > 0 for _, b in self.steps)

    def is_w3(self) -> bool:
        return all(b == 0 or (a == 0 and b > 0) for a, b in self.steps)


def zigzag_endpoint(zz) -> Pt2:
    steps = zz.steps if isinstance(zz, ZigZag) else zz
    point = f23.ZERO2
    for a, b in steps:
        point = mul2(point, exp_horiz(a, b))
    return point


# the map G and its inversion


def gmap(a, b, c):
    """Endpoint (x3, x4, x5) of exp(c(aX1+X2)) exp((1-c)(bX1+X2)) after resetting x1."""
    return (
        (a * (c - 2) * c - b * (1 - c) ** 2) / 2,
        (a**2 * (3 - 2 * c) * c**2 + 3 * a * b * c * (c - 1) ** 2 - b**2 * (c - 1) ** 3) / 6,
        (b * (c**3 - 3 * c + 2) - a * c * (c**2 - 3)) / 6,
    )


def gmap_invert(x, y, z):
    """Unique (a, b, c) with c in (0, 1) and gmap(a, b, c) = (x, y, z)."""
    x, y, z = (as_fraction(v) if isinstance(v, int) else v for v in (x, y, z))
    q = 2 * x + 3 * z
    ph = P_hat(x, y, z)
    if q == 0:
        raise OnCriticalPlane("2x + 3z = 0: the inversion formulas are singular")
    if not ph > 0:
        raise OutsideParaboloid(f"P_hat = {ph} is not positive")
    a = -2 * (2 * x**3 - 9 * x * y - 9 * y * z) / (3 * (2 * x**2 + 6 * x * z - y + 6 * z**2))
    b = -3 * (4 * x**4 + 8 * x**3 * z - 12 * x**2 * y - 36 * x * y * z - 3 * y**2 - 18 * y * z**2) / (2 * q**3)
    c = 3 * ph / (3 * ph + 2 * q**2)
    return a, b, c


def gmap_invert_rational():
    """The three inversion formulas as rational functions in x, y, z (closed forms)."""
    from .polyalg import RatFunc

    x, y, z = (MPoly.var(v, ("x", "y", "z")) for v in ("x", "y", "z"))
    a = RatFunc(-(2 * x**3 - 9 * x * y - 9 * y * z) * 2, (2 * x**2 + 6 * x * z - y + 6 * z**2) * 3)
    b = RatFunc(
        -(4 * x**4 + 8 * x**3 * z - 12 * x**2 * y - 36 * x * y * z - 3 * y**2 - 18 * y * z**2) * 3,
        (2 * x + 3 * z) ** 3 * 2,
    )
    c = RatFunc(-(2 * x**2 + 6 * x * z - y + 6 * z**2) * 3, 2 * x**2 + 6 * x * z + 3 * y)
    return a, b, c


# membership


class Verdict(enum.Enum):
    ParaboloidInterior = "ParaboloidInterior"
    BoundaryCurve = "BoundaryCurve"
    # P = 0, x2 > 0 off the curve: reached as exp(s X1) exp(w) exp(t X1)
    ParaboloidBoundary = "ParaboloidBoundary"
    Outside = "Outside"


@dataclass
class SMembership:
    verdict: Verdict
    P_value: object
    residuals: dict = field(default_factory=dict)

    @property
    def in_S(self) -> bool:
        return self.verdict is not Verdict.Outside


def curve_residuals(x) -> dict:
    _, x2, x3, x4, x5 = x
    return {
        "P": P(x),
        "x2^2*x4+x3*x5": x2 * x2 * x4 + x3 * x5,
        "2*x2*x3+3*x5": 2 * x2 * x3 + 3 * x5,
    }


def member_S(x) -> SMembership:
    x = Pt2.of(x)
    pval = P(x)
    res = curve_residuals(x)
    x2 = x.x2
    if pval > 0 and x2 > 0:
        return SMembership(Verdict.ParaboloidInterior, pval, res)
    if x2 > 0 and all(v == 0 for v in res.values()):
        return SMembership(Verdict.BoundaryCurve, pval, res)
    if x2 == 0 and x.x3 == 0 and x.x4 == 0 and x.x5 == 0:
        # exp(R X1): the x2 -> 0 end of the curve
        return SMembership(Verdict.BoundaryCurve, pval, res)
    if x2 > 0 and pval == 0:
        return SMembership(Verdict.ParaboloidBoundary, pval, res)
    return SMembership(Verdict.Outside, pval, res)


def member_S_curve_only(x) -> Verdict:
    """Classification that admits only the curve exp(W) exp(R X1) on {P = 0}.

    Kept for comparison: it misses points such as exp(-4 X1) exp(6 X1 + X2)
    exp(-2 X1) = (0, 1, 1, 2, 0), see ``factor_boundary``.
    """
    v = member_S(x).verdict
    return Verdict.Outside if v is Verdict.ParaboloidBoundary else v


def factor_boundary(x) -> ZigZag:
    """Write a point with P = 0 and x2 > 0 as exp(s X1) exp(a X1 + b X2) exp(t X1)."""
    x = Pt2.of(x)
    if not (x.x2 > 0 and P(x) == 0):
        raise SemigroupError("expected P = 0 and x2 > 0")
    lam = x.x2
    y = dilate2(1 / lam, x)
    a = 12 * y.x5 + 6 * y.x3
    s = -4 * y.x3 - 6 * y.x5
    t = y.x1 - s - a
    zz = ZigZag(((lam * s, Fraction(0)), (lam * a, lam), (lam * t, Fraction(0))))
    if zigzag_endpoint(zz) != x:
        raise AssertionError("boundary factorization does not reproduce the point")
    return zz


def in_interior(x) -> bool:
    return P(x) > 0 and x[1] > 0


# factorization into at most six W-steps


def _three_step(x: Pt2) -> List[Tuple[Fraction, Fraction]]:
    """Controls for x (interior, normalized point off the critical plane)."""
    lam = x.x2
    y = dilate2(1 / lam, x)
    a, b, c = gmap_invert(y.x3, y.x4, y.x5)
    # x1 reached by the two flows before the X1 correction
    s = a * c + b * (1 - c)
    steps = [(a * c, c), (b * (1 - c), 1 - c), (y.x1 - s, Fraction(0))]
    return [(lam * u, lam * v) for u, v in steps if (u, v) != (0, 0)]


def _normalized_critical(x: Pt2) -> bool:
    return 2 * x.x2 * x.x3 + 3 * x.x5 == 0


def _detour_candidates(x2):
    for k in range(1, 40):
        b = x2 / 2**k
        for a in (Fraction(0), b, -b, 2 * b, -2 * b):
            yield a, b


def factor_in_W6(x) -> ZigZag:
    """Write an interior point of S as a product of at most six W-steps."""
    x = Pt2.of(x)
    if not in_interior(x):
        raise NotInInterior(f"P = {P(x)}, x2 = {x.x2}")
    if not _normalized_critical(x):
        steps = _three_step(x)
    else:
        for a, b in _detour_candidates(x.x2):
            s0 = exp_horiz(a, b)
            rest = mul2(f23.inv(s0), x)
            if in_interior(rest) and not _normalized_critical(rest):
                steps = [(a, b)] + _three_step(rest)
                break
        else:
            raise SemigroupError("no detour element found on the search grid")
    zz = ZigZag(tuple(steps))
    if zigzag_endpoint(zz) != x:
        raise AssertionError("factorization does not reproduce the point")
    assert len(zz) <= 6 and zz.is_w1()
    return zz


# wedge


def member_wedge(a) -> bool:
    a1, a2, a3, a4, a5 = a
    if a5 != 0:
        return False
    if a2 == 0:
        return True
    return a2 > 0 and 2 * a2 * a4 >= a3 * a3


# the explicit interior point of F23 and its submersion vectors


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


EXPECTED_TANGENTS_F23 = (
    (0, 1, 0, 0, 1),
    (1, 0, Fraction(-3, 2), 1, Fraction(-9, 8)),
    (0, 1, -1, Fraction(1, 2), Fraction(-1, 2)),
    (1, 0, Fraction(-1, 2), 0, Fraction(-1, 8)),
    (0, 1, 0, 0, 0),
)


def _first_kind_product(factors) -> Pt1:
    acc = f23.ZERO1
    for f in factors:
        acc = f23.mul1(acc, f)
    return acc


def _horizontal(alg, c1, c2):
    return alg.basis(1) * c1 + alg.basis(2) * c2


def point_F23_lie():
    """X2 + Ad_{exp X1} X2 as a Lie algebra vector."""
    alg = f23_algebra()
    x1, x2 = alg.basis(1), alg.basis(2)
    return x2 + ad_exp(x1, x2)


POINT_F23_FACTORS = ((0, Fraction(1, 2)), (1, 0), (0, 1), (-1, 0), (0, Fraction(1, 2)))


def submersion_vectors(factors, product_fn, identity, inverse_fn, horizontal_fn, dim):
    """Left-translated differential at 0 of the map perturbing each factor's time.

    ``factors`` are control pairs (a, b); perturbing factor i means replacing it
    by (1 + eps/|.|)-scaled time, i.e. a -> a + eps*sign(a) on the nonzero
    control. The derivative is taken exactly with eps a polynomial variable.
    """
    eps = MPoly.var("eps")
    base = product_fn([horizontal_fn(a, b) for a, b in factors])
    base_inv = inverse_fn(base)
    out = []
    for i in range(len(factors)):
        perturbed = []
        for j, (a, b) in enumerate(factors):
            if j == i:
                # perturb the single nonzero time of the factor
                if b != 0:
                    perturbed.append(horizontal_fn(a * 0 + a, eps + b))
                else:
                    perturbed.append(horizontal_fn(eps + a, b * 0 + b))
            else:
                perturbed.append(horizontal_fn(a, b))
        moved = product_fn([base_inv] + perturbed)
        out.append(tuple(c.coeff_in("eps", 1).constant_term() if isinstance(c, MPoly) else Fraction(0) for c in moved))
    return out


def _f23_horizontal_first(a, b) -> Pt1:
    zero = a * 0 if isinstance(a, MPoly) else (b * 0 if isinstance(b, MPoly) else Fraction(0))
    return Pt1(a, b, zero, zero, zero)


def verify_point_F23() -> List[CheckResult]:
    results = []
    target = point_F23_lie()
    lhs = Pt1(*target.coeffs)
    rhs = _first_kind_product([_f23_horizontal_first(Fraction(a), Fraction(b)) for a, b in POINT_F23_FACTORS])
    results.append(CheckResult(
        "point_in_F23: exp(X2 + Ad_exp(X1) X2) equals the 5-factor product",
        tuple(lhs) == tuple(rhs) and tuple(lhs) == (0, 2, -1, Fraction(1, 2), 0),
        f"lhs={tuple(map(str, lhs))} rhs={tuple(map(str, rhs))}",
    ))
    # same identity through the Dynkin series
    alg = f23_algebra()
    via_bch = bch_many([_horizontal(alg, Fraction(a), Fraction(b)) for a, b in POINT_F23_FACTORS])
    results.append(CheckResult(
        "point_in_F23 via BCH series",
        via_bch == target,
        f"bch={via_bch}",
    ))
    vectors = submersion_vectors(
        POINT_F23_FACTORS,
        _first_kind_product,
        f23.ZERO1,
        f23.inv1,
        _f23_horizontal_first,
        5,
    )
    expected = [tuple(Fraction(c) for c in v) for v in EXPECTED_TANGENTS_F23]
    for i, (got, want) in enumerate(zip(vectors, expected), start=1):
        results.append(CheckResult(
            f"submersion tangent for eps{i}",
            got == want,
            f"computed={[str(c) for c in got]} reference={[str(c) for c in want]}",
        ))
    r = rank(vectors)
    results.append(CheckResult("submersion tangents have rank 5", r == 5, f"rank={r}"))
    pt = P_tilde(lhs)
    results.append(CheckResult("P_tilde(0,2,-1,1/2,0) = 2", pt == 2, f"value={pt}"))
    results.append(CheckResult("(0,2,-1,1/2,0) lies in the wedge", member_wedge(lhs), ""))
    return results


# the analogous point in F24


F24_FACTORS = (
    (0, 1), (Fraction(-1, 2), 0), (0, 1), (1, 0), (0, 1), (-1, 0), (0, 1), (Fraction(1, 2), 0), (0, 1),
)


@dataclass
class F24Report:
    lhs: object
    rhs: object
    identity_holds: bool
    difference: object
    submersion_rank: int
    dim: int

    @property
    def interior(self) -> bool:
        return self.submersion_rank == self.dim


def check_F24_point() -> F24Report:
    """Compare exp(2X2 + Ad_exp(-X1/2)(2X2) + Ad_exp(X1/2) X2) with the 9-factor product in F24.

    Interior membership is certified by the rank of the left-translated
    differential of the 9-parameter product map (rank 8 = dim means
    submersion). Wedge membership of the left side holds by convexity, being a
    sum of conjugates of W-elements.
    """
    alg = f24_algebra()
    x1, x2 = alg.basis(1), alg.basis(2)
    half = Fraction(1, 2)
    lhs = x2 * 2 + ad_exp(x1 * (-half), x2 * 2) + ad_exp(x1 * half, x2)
    rhs = bch_many([_horizontal(alg, Fraction(a), Fraction(b)) for a, b in F24_FACTORS])

    def product(vs):
        return bch_many(list(vs))

    def horizontal(a, b):
        return _horizontal(alg, a, b)

    def inverse(v):
        return -v

    eps = MPoly.var("eps")
    base = product([horizontal(Fraction(a), Fraction(b)) for a, b in F24_FACTORS])
    rows = []
    for i in range(len(F24_FACTORS)):
        factors = []
        for j, (a, b) in enumerate(F24_FACTORS):
            a, b = Fraction(a), Fraction(b)
            if j == i:
                if b != 0:
                    factors.append(alg.basis(1) * (eps * 0 + a) + alg.basis(2) * (eps + b))
                else:
                    factors.append(alg.basis(1) * (eps + a) + alg.basis(2) * (eps * 0 + b))
            else:
                factors.append(alg.basis(1) * (eps * 0 + a) + alg.basis(2) * (eps * 0 + b))
        moved = product([inverse(base)] + factors)
        rows.append(tuple(
            c.coeff_in("eps", 1).constant_term() if isinstance(c, MPoly) else Fraction(0)
            for c in moved.coeffs
        ))
    r = rank(rows)
    diff = rhs - lhs
    return F24Report(lhs, rhs, diff.is_zero(), diff, r, alg.dim)


# W3 separation


def w3_zigzag(shifts: Sequence, times: Sequence) -> ZigZag:
    """exp(a1 X1) exp(b1 (X1+X2)) ... exp(ak X1) exp(bk (X1+X2))."""
    if len(shifts) != len(times):
        raise MalformedZigZag("need one shift per (X1+X2)-time")
    steps = []
    for a, b in zip(shifts, times):
        steps.append((a, 0))
        steps.append((b, b))
    return ZigZag(tuple(steps))


def w3_separation(zz) -> Tuple[object, object, object]:
    """Return (q2, q4, sum(b^3)/24) for a zig-zag alternating X1 and (X1+X2) steps."""
    steps = zz.steps if isinstance(zz, ZigZag) else tuple(zz)
    if len(steps) % 2:
        raise MalformedZigZag("expected pairs of steps")
    times = []
    for k in range(0, len(steps), 2):
        (a, b0), (c, d) = steps[k], steps[k + 1]
        if b0 != 0:
            raise MalformedZigZag(f"step {k} is not a pure X1 step")
        if c != d or not d > 0:
            raise MalformedZigZag(f"step {k + 1} is not a positive (X1+X2) step")
        times.append(d)
    if not times:
        raise MalformedZigZag("empty zig-zag")
    q = zigzag_endpoint(steps)
    bound = sum(b**3 for b in times) / 24
    if not q.x4 >= bound:
        raise AssertionError(f"q4 = {q.x4} below the bound {bound}")
    return q.x2, q.x4, bound
