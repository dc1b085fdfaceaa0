"""Example sets with constant normal X2 and tools to test them.

Each set is a ``SetOracle``: an exact membership predicate on second-kind
coordinates, optionally paired with a kernel descriptor so the density
sampler can evaluate it in bulk on floats.
"""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from . import f23
from .f23 import Pt2, dilate2, exp_horiz, mul2
from .liecore import f23 as f23_algebra
from .polyalg import MPoly, RatFunc, as_fraction, quadratic_discriminant
from . import semigroup


class CsetError(ValueError):
    pass


# kernel codes shared with the compiled and numpy backends
K_HALFSPACE = 0
K_QUADRANT = 1
K_CONE_AB = 2
K_TRANSLATES = 3
K_S_INTERIOR = 4


@dataclass
class Kernel:
    code: int
    params: Tuple[float, ...] = ()
    # sorted disjoint closed intervals (lo, hi) in x5, for K_TRANSLATES
    intervals: Tuple[Tuple[float, float], ...] = ()


@dataclass
class SetOracle:
    name: str
    contains: Callable[[object], bool]
    claimed_normal: object = None
    is_cone: bool = False
    notes: str = ""
    kernel: Optional[Kernel] = None
    # vectorized float predicate on five coordinate arrays, used without a kernel
    batch: Optional[Callable] = None

    def __call__(self, x) -> bool:
        return self.contains(x)


def _normal_x2():
    return f23_algebra().basis(2)


# simple sets


def halfspace() -> SetOracle:
    return SetOracle(
        "halfspace", lambda x: x[1] >= 0, _normal_x2(), True, "{x2 >= 0}", Kernel(K_HALFSPACE)
    )


def complement_halfspace() -> SetOracle:
    """{x2 < 0} with the claimed normal X2; monotone the wrong way."""
    return SetOracle("complement-halfspace", lambda x: x[1] < 0, _normal_x2(), True, "{x2 < 0}")


def quadrant() -> SetOracle:
    """E2 = {x2 >= 0, x4 >= 0}."""
    return SetOracle(
        "E2", lambda x: x[1] >= 0 and x[3] >= 0, _normal_x2(), True, "{x2 >= 0, x4 >= 0}", Kernel(K_QUADRANT)
    )


def s_interior() -> SetOracle:
    return SetOracle(
        "S", semigroup.in_interior, _normal_x2(), True, "{P > 0, x2 > 0}", Kernel(K_S_INTERIOR)
    )


# the cones C_{alpha, beta}


def cone_ab_poly(alpha, beta, x):
    _, x2, x3, x4, x5 = x
    return 2 * x2 * x4 * (alpha + beta * x2) ** 2 - (alpha * x3 + beta * x5) ** 2


def cone_ab(alpha, beta, literal: bool = False) -> SetOracle:
    """C_{alpha,beta}, intersected with {x4 >= 0} unless ``literal``.

    The extra condition only removes part of the null slice {x2 = 0}, where the
    bare inequality allows x4 < 0 and the X2-flow leaves the set at once.
    """
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    if alpha < 0 or beta < 0:
        raise CsetError("alpha and beta must be nonnegative")
    if alpha == 0 and beta == 0:
        raise CsetError("alpha and beta cannot both vanish")

    def contains(x):
        if not literal and x[3] < 0:
            return False
        return x[1] >= 0 and cone_ab_poly(alpha, beta, x) >= 0

    return SetOracle(
        f"coneAB:{alpha}:{beta}" + (":literal" if literal else ""),
        contains,
        _normal_x2(),
        # homogeneous (a dilation cone) only when one of the two terms is absent
        alpha == 0 or beta == 0,
        "{x2 >= 0, (a x3 + b x5)^2 <= 2 x2 x4 (a + b x2)^2}" + ("" if literal else " with x4 >= 0"),
        None if literal else Kernel(K_CONE_AB, (float(alpha), float(beta))),
    )


def engel_cone_k(k) -> SetOracle:
    """{x2 >= 0, x3^2 <= k x2 x4}, taken literally.

    Not X2-monotone for k < 2; for k >= 2 it still fails on the null slice
    x2 = x3 = 0, x4 < 0 (compare ``cone_ab(1, 0)``).
    """
    k = as_fraction(k)
    return SetOracle(
        f"engel:{k}",
        lambda x: x[1] >= 0 and x[2] * x[2] <= k * x[1] * x[3],
        _normal_x2(),
        True,
    )


def x2_derivative(p: MPoly) -> MPoly:
    """X2 p with X2 = d2 - x1 d3 + x1^2/2 d4 + x1 x2 d5."""
    x1 = MPoly.var("x1", p.variables)
    x2 = MPoly.var("x2", p.variables)
    return p.diff("x2") - x1 * p.diff("x3") + x1 * x1 / 2 * p.diff("x4") + x1 * x2 * p.diff("x5")


@dataclass
class Certificate:
    name: str
    ok: bool
    details: List[Tuple[str, bool, str]] = field(default_factory=list)

    def add(self, label: str, ok: bool, info: str = ""):
        self.details.append((label, ok, info))
        self.ok = self.ok and ok


CONE_VARS = ("al", "be", "x1", "x2", "x3", "x4", "x5")


def _cone_symbols():
    return tuple(MPoly.var(v, CONE_VARS) for v in CONE_VARS)


def cone_ab_certificate(alpha=None, beta=None) -> Certificate:
    """Symbolic check that the X2-derivative of the defining polynomial is >= 0 on the set.

    With ``alpha``/``beta`` left as None they stay symbolic.
    """
    al, be, x1, x2, x3, x4, x5 = _cone_symbols()
    a = al if alpha is None else MPoly.const(as_fraction(alpha), CONE_VARS)
    b = be if beta is None else MPoly.const(as_fraction(beta), CONE_VARS)
    cert = Certificate(f"C[{alpha if alpha is not None else 'alpha'},{beta if beta is not None else 'beta'}]", True)
    p = cone_ab_poly(a, b, (x1, x2, x3, x4, x5))
    d = x2_derivative(p)
    u = a * x3 + b * x5
    d_ref = (
        2 * x4 * (a + b * x2) ** 2
        + 4 * b * x2 * x4 * (a + b * x2)
        + 2 * a * x1 * u
        + x1 * x1 * x2 * (a + b * x2) ** 2
        - 2 * b * x1 * x2 * u
    )
    cert.add("X2-derivative matches the reference d(x)", d == d_ref, d.to_text())
    qa, qb, qc = d.coeff_in("x1", 2), d.coeff_in("x1", 1), d.coeff_in("x1", 0)
    quarter = qb * qb / 4 - qa * qc
    D_ref = u * u * (a - b * x2) ** 2 - 2 * (a + b * x2) ** 3 * x2 * x4 * (a + 3 * b * x2)
    cert.add("quarter discriminant matches the reference D", quarter == D_ref, quarter.to_text())
    # on {p >= 0}: u^2 <= 2 x2 x4 (a + b x2)^2, so D <= 2 x2 x4 (a+b x2)^2 * gap
    gap = (a + b * x2) * (a + 3 * b * x2) - (a - b * x2) ** 2
    identity = D_ref + p * (a - b * x2) ** 2 == -2 * x2 * x4 * (a + b * x2) ** 2 * gap
    cert.add("D + p (a - b x2)^2 = -2 x2 x4 (a + b x2)^2 gap", identity, "")
    nonneg = all(c >= 0 for c in gap.coefficients())
    cert.add("gap has nonnegative coefficients", nonneg, gap.to_text())
    cert.gap = gap
    return cert


def semigroup_A_certificate() -> Certificate:
    """X2-derivative of the semigroup polynomial and its x1-discriminant."""
    x1, x2, x3, x4, x5 = semigroup.xs()
    p = semigroup.P_poly()
    A = x2_derivative(p)
    cert = Certificate("semigroup A", True)
    reference = (
        x2**3 * x1 * x1 / 2
        + (-10 * x2 * x2 * x3 - 18 * x2 * x5) * x1
        + (3 * x2 * x2 * x4 - 4 * x2 * x3 * x3 - 6 * x3 * x5)
    )
    computed_linear = A.coeff_in("x1", 1)
    cert.add(
        "x1^2 and x1^0 coefficients match the reference A",
        A.coeff_in("x1", 2) == reference.coeff_in("x1", 2) and A.coeff_in("x1", 0) == reference.coeff_in("x1", 0),
        "",
    )
    cert.reference_linear_matches = computed_linear == reference.coeff_in("x1", 1)
    cert.computed_linear = computed_linear
    disc = quadratic_discriminant(A, "x1")
    cert.add("discriminant of A in x1 equals -6 x2^2 P", disc == -6 * x2 * x2 * p, disc.to_text())
    cert.A = A
    return cert


# partial differential inequalities for upper-graphs


@dataclass
class PDIReport:
    residual: object
    worst: Optional[float]
    worst_point: object
    n_checked: int

    @property
    def ok(self) -> bool:
        return self.worst is None or self.worst <= 0


def _partials(f, names):
    if isinstance(f, RatFunc):
        return [f.diff(v) for v in names]
    if isinstance(f, MPoly):
        return [f.diff(v) for v in names]
    return None


def _scan(residual_at, points) -> PDIReport:
    worst, worst_pt, n = None, None, 0
    for pt in points:
        try:
            v = residual_at(pt)
        except ZeroDivisionError:
            continue
        n += 1
        if worst is None or v > worst:
            worst, worst_pt = v, pt
    return worst, worst_pt, n


def pdi_check_F(F, points, dF4=None, dF5=None) -> PDIReport:
    """Residual (d5 F)^2 + 6 d4 F at ``points`` = iterable of (x4, x5).

    ``F`` may be an MPoly/RatFunc in x4, x5 (partials taken symbolically) or a
    callable with its partials supplied.
    """
    sym = _partials(F, ("x4", "x5"))
    if sym is not None:
        d4, d5 = sym
        residual = d5 * d5 + d4 * 6

        def at(pt):
            return residual.eval({"x4": pt[0], "x5": pt[1]})
    else:
        residual = None

        def at(pt):
            return dF5(*pt) ** 2 + 6 * dF4(*pt)

    worst, wp, n = _scan(at, points)
    return PDIReport(residual, worst, wp, n)


def pdi_check_graph(G, points, dG3=None, dG4=None, dG5=None) -> PDIReport:
    """Residual (d3 G - G d5 G)^2 + 2 d4 G at ``points`` = iterable of (x3, x4, x5)."""
    sym = _partials(G, ("x3", "x4", "x5"))
    if sym is not None:
        d3, d4, d5 = sym
        residual = (d3 - G * d5) ** 2 + d4 * 2

        def at(pt):
            return residual.eval(dict(zip(("x3", "x4", "x5"), pt)))
    else:
        residual = None

        def at(pt):
            g = G(*pt)
            return (dG3(*pt) - g * dG5(*pt)) ** 2 + 2 * dG4(*pt)

    worst, wp, n = _scan(at, points)
    return PDIReport(residual, worst, wp, n)


# the Cantor set


def default_a(j: int) -> Fraction:
    return Fraction(1, (j + 4) ** 2)


@dataclass
class CantorSpec:
    a: Callable[[int], Fraction] = default_a
    depth: int = 12

    def partial_sum(self, n: int) -> Fraction:
        return sum((self.a(j) for j in range(n + 1)), Fraction(0))

    def check(self) -> None:
        if self.partial_sum(self.depth) >= 1:
            raise CsetError("removed lengths sum to at least 1")
        for j in range(self.depth + 1):
            if not self.a(j) > 0:
                raise CsetError(f"a_{j} is not positive")


def default_tail_bound(n: int) -> Fraction:
    """Upper bound for sum_{j > n} 1/(j+4)^2 (integral test)."""
    return Fraction(1, n + 4)


def growth_sequence(spec: CantorSpec, n: int) -> List[Fraction]:
    return [2**k * spec.a(k) ** 2 for k in range(n + 1)]


def interval_length(spec: CantorSpec, n: int) -> Fraction:
    return (1 - spec.partial_sum(n)) / 2 ** (n + 1)


def cantor_build(spec: CantorSpec) -> List[List[Tuple[Fraction, Fraction]]]:
    """Intervals I_{n,k} for n = 0..depth as exact (lo, hi) pairs."""
    spec.check()
    levels = []
    current = [(Fraction(0), Fraction(1))]
    for n in range(spec.depth + 1):
        gap = spec.a(n) / 2**n
        nxt = []
        for lo, hi in current:
            mid = (lo + hi) / 2
            nxt.append((lo, mid - gap / 2))
            nxt.append((mid + gap / 2, hi))
        length = interval_length(spec, n)
        if any(hi - lo != length for lo, hi in nxt):
            raise CsetError(f"interval length mismatch at level {n}")
        levels.append(nxt)
        current = nxt
    return levels


_CANTOR_CACHE = {}


def cantor_level(spec: CantorSpec, n: int) -> List[Tuple[Fraction, Fraction]]:
    key = (spec.a, n)
    if key not in _CANTOR_CACHE:
        _CANTOR_CACHE[key] = cantor_build(CantorSpec(spec.a, n))[n]
    return _CANTOR_CACHE[key]


@dataclass
class SlopeWitness:
    n: int
    q: Fraction
    p: Fraction
    gap_half: Fraction
    q_prime: float
    slope: float
    bound: float
    residual: Fraction


def slope_witness(spec: CantorSpec, n: int, mu=1) -> SlopeWitness:
    """Witness point (q_n, q_n') on the boundary of W_mu over the gap next to a = 0.

    The nest containing 0 is I_n = [0, L_n]; J_{n+1} is centred in it, q_n is
    its midpoint and p_n = L_{n+1} the nearest surviving endpoint.
    """
    if n < 0 or n + 1 > spec.depth:
        raise CsetError(f"n must lie in [0, {spec.depth - 1}]")
    mu = as_fraction(mu)
    L = interval_length(spec, n)
    J = spec.a(n + 1) / 2 ** (n + 1)
    q = L / 2
    p = interval_length(spec, n + 1)
    gap_half = J / 2
    if q - p != gap_half:
        raise AssertionError("gap bookkeeping failed")
    # q'^3 = (|J|/2)^2 / mu exactly; the root itself is a float
    qp_cubed = gap_half * gap_half / mu
    qp = float(qp_cubed) ** (1.0 / 3.0)
    residual = (q - p) ** 2 - mu * qp_cubed
    slope = qp / float(q)
    k = float(mu) ** (-1.0 / 3.0) * 2.0 ** (-1.0 / 3.0)
    bound = k * 2.0 ** (n / 3.0) * float(spec.a(n + 1)) ** (2.0 / 3.0)
    if not slope >= bound * (1 - 1e-12):
        raise AssertionError(f"slope {slope} below bound {bound}")
    return SlopeWitness(n, q, p, gap_half, qp, slope, bound, residual)


def dist_to_union(t, intervals) -> object:
    """Distance from t to a sorted list of disjoint closed intervals."""
    los = [lo for lo, _ in intervals]
    i = bisect.bisect_right(los, t) - 1
    best = None
    for j in (i, i + 1):
        if 0 <= j < len(intervals):
            lo, hi = intervals[j]
            d = lo - t if t < lo else (t - hi if t > hi else t * 0)
            if best is None or d < best:
                best = d
    return best


def _translates_contains(intervals):
    def contains(x):
        x2, x4 = x[1], x[3]
        if x2 < 0 or x4 < 0:
            return False
        d = dist_to_union(x[4], intervals)
        return d * d <= 2 * x2**3 * x4

    return contains


def cone_c01() -> SetOracle:
    """E1 = C_{0,1} = {x2 >= 0, x4 >= 0, x5^2 <= 2 x2^3 x4}."""
    zero = Fraction(0)
    o = translates_oracle("E1", [(zero, zero)], True)
    o.notes = "{x2 >= 0, x4 >= 0, x5^2 <= 2 x2^3 x4}"
    return o


def translates_oracle(name, intervals, is_cone=False, notes="") -> SetOracle:
    """Union of the left translates exp(t X5) C over t in the given closed intervals."""
    intervals = sorted(intervals)
    return SetOracle(
        name,
        _translates_contains(intervals),
        _normal_x2(),
        is_cone,
        notes,
        Kernel(K_TRANSLATES, (), tuple((_to_float(lo), _to_float(hi)) for lo, hi in intervals)),
    )


def _to_float(v) -> float:
    try:
        return float(v)
    except OverflowError:
        return math.inf if v > 0 else -math.inf


def pathological_E(spec: CantorSpec = None) -> SetOracle:
    spec = spec or CantorSpec()
    spec.check()
    intervals = cantor_level(spec, spec.depth)
    return translates_oracle(
        f"pathE:{spec.depth}",
        intervals,
        False,
        f"union of exp(t X5) C over t in the level-{spec.depth} Cantor intervals",
    )


# blow-ups of a union over a lacunary set Z


@dataclass
class ZSpec:
    n1: int = 2
    depth: int = 7
    variant: str = "cubic"

    def n(self, j: int) -> int:
        if j < 1:
            raise CsetError("n_j is indexed from 1")
        return self.n1 ** (3 ** (j - 1))

    def check(self) -> None:
        if self.n1 <= 1:
            raise CsetError("n_1 must exceed 1")
        for j in range(1, self.depth):
            if self.n(j + 1) != self.n(j) ** 3:
                raise CsetError("cube relation fails")

    def pieces(self):
        """Z as (lo, hi, lo_closed, hi_closed) pieces."""
        zero = Fraction(0)
        if self.variant == "zero":
            return [(zero, zero, True, True)]
        if self.variant == "line":
            return [(Fraction(-1, 1), Fraction(1, 1), True, True)]  # scaled to R below
        out = [(zero, zero, True, True)]
        for j in range(1, self.depth + 1, 2):
            nj = self.n(j)
            lo, hi = Fraction(1, nj**3), Fraction(1, nj)
            out.append((lo, hi, False, True))
            out.append((-hi, -lo, True, False))
        return sorted(out)


def R_cubed(spec: ZSpec, ell: int) -> Fraction:
    """R_l^3 = 1 / n_{2l+1}^2."""
    return Fraction(1, spec.n(2 * ell + 1) ** 2)


def r_cubed(spec: ZSpec, ell: int) -> Fraction:
    """r_l^3 = 1 / n_{2l}^2."""
    return Fraction(1, spec.n(2 * ell) ** 2)


def scaled_Z(spec: ZSpec, rho_cubed: Fraction):
    """Z / rho^3: the x5-profile of the blow-up of E by the factor 1/rho."""
    if spec.variant == "line":
        return [(Fraction(-1), Fraction(1), True, True, True)]  # marker: whole line
    return [(lo / rho_cubed, hi / rho_cubed, lc, hc, False) for lo, hi, lc, hc in spec.pieces()]


def z_contains(spec: ZSpec, rho_cubed: Fraction, t) -> bool:
    for lo, hi, lc, hc, whole in scaled_Z(spec, rho_cubed):
        if whole:
            return True
        if (lo < t or (lc and lo == t)) and (t < hi or (hc and t == hi)):
            return True
    return False


def _blowup_contains(pieces):
    def contains(x):
        x2, x4 = x[1], x[3]
        if x2 < 0 or x4 < 0:
            return False
        rhs = 2 * x2**3 * x4
        t = x[4]
        for lo, hi, lc, hc, whole in pieces:
            if whole or lo <= t <= hi:
                if whole or (lo < t < hi) or (t == lo and lc) or (t == hi and hc):
                    return True
                # t is an open endpoint: points inside get arbitrarily close
                if rhs > 0:
                    return True
                continue
            end, closed = (lo, lc) if t < lo else (hi, hc)
            d2 = (t - end) ** 2
            if d2 < rhs or (closed and d2 == rhs):
                return True
        return False

    return contains


def blowup_family(spec: ZSpec = None):
    """Factory rho^3 -> oracle for the blow-up of E by 1/rho, with the two limit sets."""
    spec = spec or ZSpec()
    spec.check()

    def oracle(rho_cubed) -> SetOracle:
        rho_cubed = as_fraction(rho_cubed)
        if not rho_cubed > 0:
            raise CsetError("dilation factor must be positive")
        pieces = scaled_Z(spec, rho_cubed)
        if pieces[0][4]:
            kern = Kernel(K_QUADRANT)
        else:
            kern = Kernel(K_TRANSLATES, (), tuple((_to_float(lo), _to_float(hi)) for lo, hi, *_ in pieces))
        return SetOracle(
            f"blowup[{spec.variant}]@{rho_cubed}",
            _blowup_contains(pieces),
            _normal_x2(),
            False,
            "union of exp(t X5) C over t in Z / rho^3",
            kern,
        )

    return oracle, cone_c01(), quadrant()


# monotonicity


@dataclass
class MonotoneReport:
    name: str
    n_points: int
    n_checks: int
    violations: int
    first_violation: object = None
    rejected: int = 0

    @property
    def ok(self) -> bool:
        return self.violations == 0


def _rand_frac(rng: random.Random, lo: int, hi: int, den: int = 16) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def sample_point(rng: random.Random) -> Pt2:
    """Random rational point biased toward x2, x4 >= 0, where the example sets live."""
    x1 = _rand_frac(rng, -2, 2)
    x2 = _rand_frac(rng, -1, 3)
    x3 = _rand_frac(rng, -2, 2)
    x4 = _rand_frac(rng, -1, 3)
    x5 = _rand_frac(rng, -1, 2)
    # degenerate slices get their share of samples
    u = rng.random()
    if u < 0.05:
        x2 = Fraction(0)
    elif u < 0.08:
        x2, x3 = Fraction(0), Fraction(0)
    elif u < 0.10:
        x2, x5 = Fraction(0), Fraction(0)
    elif u < 0.12:
        x2, x3, x5 = Fraction(0), Fraction(0), Fraction(0)
    return Pt2(x1, x2, x3, x4, x5)


def sample_members(oracle: SetOracle, n: int, rng: random.Random, max_tries: int = None):
    out, tries = [], 0
    max_tries = max_tries or 1000 * n
    while len(out) < n:
        tries += 1
        if tries > max_tries:
            raise CsetError(f"could not sample {n} members of {oracle.name}")
        x = sample_point(rng)
        if oracle.contains(x):
            out.append(x)
    return out, tries - n


def sample_w(rng: random.Random):
    """A direction a X1 + b X2 with b >= 0 (sometimes exactly 0)."""
    a = _rand_frac(rng, -3, 3, 8)
    b = Fraction(0) if rng.random() < 0.15 else _rand_frac(rng, 0, 3, 8)
    return a, b


def monotonicity_test(oracle: SetOracle, n_points: int = 1000, n_directions: int = 3, n_times: int = 3, seed: int = 0) -> MonotoneReport:
    """Check x exp(t w) stays in the set for sampled members x, w in W and t > 0, exactly."""
    rng = random.Random(seed)
    members, rejected = sample_members(oracle, n_points, rng)
    checks = violations = 0
    first = None
    for x in members:
        for _ in range(n_directions):
            a, b = sample_w(rng)
            for _ in range(n_times):
                t = Fraction(rng.randint(1, 64), rng.randint(1, 16))
                y = mul2(x, exp_horiz(t * a, t * b))
                checks += 1
                if not oracle.contains(y):
                    violations += 1
                    if first is None:
                        first = (x, (a, b), t, y)
    return MonotoneReport(oracle.name, n_points, checks, violations, first, rejected)


def union_oracle(name: str, parts: Sequence[SetOracle]) -> SetOracle:
    return SetOracle(name, lambda x: any(p.contains(x) for p in parts), _normal_x2(), False)


def left_translate(oracle: SetOracle, g) -> SetOracle:
    """g . E, i.e. membership of g^{-1} x in E."""
    g = Pt2.of(g)
    ginv = f23.inv(g)
    return SetOracle(
        f"{tuple(map(str, g))}*{oracle.name}",
        lambda x: oracle.contains(mul2(ginv, x)),
        oracle.claimed_normal,
        False,
    )


def dilation_spot_check(oracle: SetOracle, n: int = 200, seed: int = 0) -> int:
    """Number of (x, lambda) pairs where membership is not dilation invariant."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(n):
        x = sample_point(rng)
        lam = Fraction(rng.randint(1, 40), rng.randint(1, 40))
        if oracle.contains(x) != oracle.contains(dilate2(lam, x)):
            bad += 1
    return bad


def registry(name: str, depth: int = 12) -> SetOracle:
    """Resolve a set name: halfspace, E1, E2, S, coneAB:a:b, pathE:depth."""
    parts = name.split(":")
    head = parts[0]
    if head == "halfspace" and len(parts) == 1:
        return halfspace()
    if head == "E1" and len(parts) == 1:
        return cone_c01()
    if head == "E2" and len(parts) == 1:
        return quadrant()
    if head == "S" and len(parts) == 1:
        return s_interior()
    if head == "coneAB" and len(parts) == 3:
        return cone_ab(as_fraction(parts[1]), as_fraction(parts[2]))
    if head == "pathE" and len(parts) <= 2:
        d = int(parts[1]) if len(parts) == 2 else depth
        return pathological_E(CantorSpec(depth=d))
    raise CsetError(f"unknown set name {name!r}")
