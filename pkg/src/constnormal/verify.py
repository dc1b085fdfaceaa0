"""Exact identity suite for the F23 formulas, run by ``constnormal verify-identities``."""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Callable, List

from . import csets, f23, semigroup
from .liecore import bch, f23 as f23_algebra
from .polyalg import MPoly, RatFunc, det3, jacobian, poly_subst
from .semigroup import CheckResult

AB_VARS = ("a1", "a2", "a3", "a4", "a5", "b1", "b2", "b3", "b4", "b5")
XY_VARS = ("x1", "x2", "x3", "x4", "x5", "y1", "y2", "y3", "y4", "y5")
G_VARS = ("a", "b", "c")


def _vars(names):
    return tuple(MPoly.var(v, names) for v in names)


def check_bch_first_kind() -> List[CheckResult]:
    v = _vars(AB_VARS)
    a, b = v[:5], v[5:]
    alg = f23_algebra()
    via_bch = bch(alg.vec(a), alg.vec(b))
    law = f23.mul1(a, b)
    out = [CheckResult("BCH product equals the first-kind law (10 variables)",
                       tuple(via_bch.coeffs) == tuple(law))]
    w = _vars(XY_VARS)
    x, y = w[:5], w[5:]
    composed = f23.to_second(f23.mul1(f23.to_first(x), f23.to_first(y)))
    out.append(CheckResult("first-kind law through the coordinate change gives the second-kind law",
                           tuple(composed) == tuple(f23.mul2(x, y))))
    a_ = f23.to_first(f23.to_second(a))
    out.append(CheckResult("the two coordinate changes are mutually inverse", tuple(a_) == tuple(a)))
    return out


def check_gmap() -> List[CheckResult]:
    a, b, c = _vars(G_VARS)
    g = semigroup.gmap(a, b, c)
    det = det3(jacobian(list(g), G_VARS))
    want = Fraction(1, 72) * (c - 1) ** 4 * c**3 * (a - b) ** 2
    out = [CheckResult("det DG = (1/72)(c-1)^4 c^3 (a-b)^2", det == want, det.to_text())]

    inv = semigroup.gmap_invert_rational()
    sub = {"x": g[0], "y": g[1], "z": g[2]}
    back = [RatFunc(poly_subst(r.num, sub).num * poly_subst(r.den, sub).den,
                    poly_subst(r.num, sub).den * poly_subst(r.den, sub).num) for r in inv]
    for name, r, target in zip(G_VARS, back, (a, b, c)):
        out.append(CheckResult(f"inverse formula for {name} composed with G is the identity", r == target))
    q = 2 * g[0] + 3 * g[2]
    out.append(CheckResult("(2x + 3z) o G = -1/2 (c-1)^2 c (a-b)",
                           q == -Fraction(1, 2) * (c - 1) ** 2 * c * (a - b)))
    x, y, z = _vars(("x", "y", "z"))
    ph = semigroup.P_hat(x, y, z)
    c_form = RatFunc(3 * ph, 3 * ph + 2 * (2 * x + 3 * z) ** 2)
    out.append(CheckResult("c formula equals 3P^/(3P^ + 2(2x+3z)^2)", inv[2] == c_form))
    return out


def check_P_change() -> List[CheckResult]:
    x = semigroup.xs()
    a = semigroup.as_()
    return [
        CheckResult("P_tilde o (second -> first) = P", semigroup.P_tilde(f23.to_first(x)) == semigroup.P_poly()),
        CheckResult("P o (first -> second) = P_tilde", semigroup.P(f23.to_second(a)) == semigroup.P_tilde_poly()),
    ]


def check_cones() -> List[CheckResult]:
    out = []
    A = csets.semigroup_A_certificate()
    for label, ok, _ in A.details:
        out.append(CheckResult(f"semigroup: {label}", ok))
    for ab in ((None, None), (0, 1), (1, 0), (1, 1)):
        cert = csets.cone_ab_certificate(*ab)
        for label, ok, _ in cert.details:
            out.append(CheckResult(f"{cert.name}: {label}", ok))
    return out


def check_point() -> List[CheckResult]:
    return semigroup.verify_point_F23()


def check_F24() -> List[CheckResult]:
    rep = semigroup.check_F24_point()
    return [CheckResult("F24 product identity and submersion rank 8",
                        rep.identity_holds and rep.submersion_rank == 8)]


SUITE: List[Callable[[], List[CheckResult]]] = [
    check_bch_first_kind,
    check_gmap,
    check_P_change,
    check_cones,
    check_point,
    check_F24,
]


def run_all(include_f24: bool = True):
    """All identity checks in order, with the total wall time."""
    t0 = time.perf_counter()
    results: List[CheckResult] = []
    for fn in SUITE:
        if fn is check_F24 and not include_f24:
            continue
        results.extend(fn())
    return results, time.perf_counter() - t0
