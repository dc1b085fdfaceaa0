"""Monte-Carlo densities of sets in gauge balls.

A sample is h uniform in the unit box {|h_i| <= 1}, which is the unit ball of
the box gauge; the ball of radius r at c is c . dilate(r, h). Samples come in
fixed blocks, block b of stream s drawn from Philox seeded with
(seed, s, b), so estimates do not depend on how blocks are spread over
workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from . import f23, kernels
from .csets import SetOracle, ZSpec, blowup_family, cone_c01, quadrant, R_cubed, r_cubed

BLOCK = 65536
Z99 = 2.5758293035489004

# exact box-ball density of E1 = {x2 >= 0, x4 >= 0, x5^2 <= 2 x2^3 x4} at 0:
# (1/4) * int_0^1 int_0^1 min(sqrt(2 u^3 v), 1) dv du in closed form
_c = 2.0 ** (-1.0 / 3.0)
E1_REFERENCE = 0.25 * (4.0 / 15.0 * _c + 1.0 - _c - (2.0 ** (2.0 / 3.0) - 1.0) / 12.0)
E2_REFERENCE = 0.25


@dataclass
class DensityEstimate:
    mean: float
    half_width_95: float
    n_samples: int
    radius: float
    center: tuple
    gauge: str = "box"
    seed: int = 0
    count: int = 0
    stream: int = 0

    @property
    def sigma(self) -> float:
        return math.sqrt(max(self.mean * (1 - self.mean), 0.0) / self.n_samples)


def _estimate(count, n, r, center, seed, stream) -> DensityEstimate:
    p = count / n
    hw = 1.96 * math.sqrt(p * (1 - p) / n)
    return DensityEstimate(p, hw, n, float(r), tuple(float(c) for c in center), "box", seed, count, stream)


def sample_block(seed: int, stream: int, block: int, size: int) -> np.ndarray:
    gen = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, stream, block])))
    return gen.uniform(-1.0, 1.0, size=(size, 5))


def _blocks(n: int):
    out, b = [], 0
    while b * BLOCK < n:
        out.append((b, min(BLOCK, n - b * BLOCK)))
        b += 1
    return out


def _float_points(center, r, h):
    return kernels._pykernels.ball_points(center, r, h)


def _count_block(oracle: SetOracle, center, r, h, backend) -> int:
    k = oracle.kernel
    if k is not None:
        lo = np.array([iv[0] for iv in k.intervals], dtype=np.float64)
        hi = np.array([iv[1] for iv in k.intervals], dtype=np.float64)
        return kernels.count_in_ball(k.code, k.params, lo, hi, tuple(map(float, center)), float(r), h, backend)
    xs = _float_points(center, r, h)
    if oracle.batch is not None:
        return int(np.count_nonzero(oracle.batch(*xs)))
    pts = np.stack(xs, axis=1)
    return sum(1 for row in pts if oracle.contains(f23.Pt2(*(float(v) for v in row))))


def mc_counts(oracles: Sequence[SetOracle], center, r, n: int, seed: int, stream: int = 0,
              backend: Optional[str] = None, workers: int = 1) -> List[int]:
    """Counts for several sets on one shared sample stream."""
    if not r > 0:
        raise ValueError("radius must be positive")
    if n < 1:
        raise ValueError("need at least one sample")
    center = f23.Pt2.of(center)

    def work(item):
        b, size = item
        h = sample_block(seed, stream, b, size)
        return [_count_block(o, center, r, h, backend) for o in oracles]

    items = _blocks(n)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(work, items))
    else:
        parts = [work(it) for it in items]
    return [sum(p[i] for p in parts) for i in range(len(oracles))]


def mc_density(oracle: SetOracle, center, r, n: int = 10**6, seed: int = 0, stream: int = 0,
               backend: Optional[str] = None, workers: int = 1) -> DensityEstimate:
    (count,) = mc_counts([oracle], center, r, n, seed, stream, backend, workers)
    return _estimate(count, n, r, f23.Pt2.of(center), seed, stream)


def mc_density_many(oracles, center, r, n=10**6, seed=0, stream=0, backend=None, workers=1):
    counts = mc_counts(oracles, center, r, n, seed, stream, backend, workers)
    c = f23.Pt2.of(center)
    return [_estimate(k, n, r, c, seed, stream) for k in counts]


def indicator(oracle: SetOracle, center, r, h: np.ndarray) -> np.ndarray:
    """Membership of each sample of h, for sample-level comparisons."""
    if oracle.kernel is not None:
        k = oracle.kernel
        lo = np.array([iv[0] for iv in k.intervals], dtype=np.float64)
        hi = np.array([iv[1] for iv in k.intervals], dtype=np.float64)
        xs = _float_points(f23.Pt2.of(center), r, h)
        return kernels._pykernels.member_mask(k.code, k.params, lo, hi, *xs)
    xs = _float_points(f23.Pt2.of(center), r, h)
    return np.asarray(oracle.batch(*xs))


def density_profile(oracle: SetOracle, center, radii: Sequence, n: int = 10**6, seed: int = 0,
                    backend: Optional[str] = None, workers: int = 1) -> List[DensityEstimate]:
    """One estimate per radius, each on its own independent stream."""
    if not radii:
        raise ValueError("empty radius schedule")
    return [mc_density(oracle, center, r, n, seed, i, backend, workers) for i, r in enumerate(radii)]


def z_score(a: DensityEstimate, b: DensityEstimate) -> float:
    var = a.mean * (1 - a.mean) / a.n_samples + b.mean * (1 - b.mean) / b.n_samples
    if var == 0:
        return 0.0 if a.mean == b.mean else math.inf
    return abs(a.mean - b.mean) / math.sqrt(var)


def profile_is_flat(estimates: Sequence[DensityEstimate], z_crit: float = Z99) -> bool:
    return all(
        z_score(estimates[i], estimates[j]) <= z_crit
        for i in range(len(estimates))
        for j in range(i + 1, len(estimates))
    )


# blow-ups


@dataclass
class BlowupResult:
    ells: List[int]
    upper: List[DensityEstimate]
    lower: List[DensityEstimate]
    e1: DensityEstimate
    e2: DensityEstimate
    spec: ZSpec = None

    @property
    def gap(self) -> float:
        return self.upper[-1].mean - self.lower[-1].mean


def blowup_experiment(spec: Optional[ZSpec] = None, ell_max: int = 2, n: int = 10**6, seed: int = 0,
                      backend: Optional[str] = None, workers: int = 1, n1: int = 2) -> BlowupResult:
    """Densities at 0 (radius 1) of the blow-ups along R_l and r_l, l = 1..ell_max.

    All sets share one sample stream, so inclusions between them show up as
    exact inequalities between counts.
    """
    if ell_max < 1:
        raise ValueError("ell_max must be at least 1")
    spec = spec or ZSpec(n1=n1, depth=2 * ell_max + 3)
    if spec.variant == "cubic" and spec.depth < 2 * ell_max + 1:
        raise ValueError("truncation depth does not cover ell_max")
    factory, e1, e2 = blowup_family(spec)
    ells = list(range(1, ell_max + 1))
    oracles = [e1, e2]
    for ell in ells:
        oracles.append(factory(R_cubed(spec, ell) if spec.variant == "cubic" else 1))
        oracles.append(factory(r_cubed(spec, ell) if spec.variant == "cubic" else 1))
    est = mc_density_many(oracles, f23.ZERO2, 1.0, n, seed, 0, backend, workers)
    upper = est[2::2]
    lower = est[3::2]
    return BlowupResult(ells, upper, lower, est[0], est[1], spec)


# pinching at boundary points


def _s_interior_batch(x1, x2, x3, x4, x5):
    p = x2 * x2 * x2 * x4 - 2.0 * x2 * x2 * x3 * x3 - 6.0 * x2 * x3 * x5 - 6.0 * x5 * x5
    return (p > 0.0) & (x2 > 0.0)


def s_inverse_oracle() -> SetOracle:
    """Interior of S^{-1}."""
    from . import semigroup

    def batch(x1, x2, x3, x4, x5):
        y = f23.inv((x1, x2, x3, x4, x5))
        return _s_interior_batch(*y)

    return SetOracle("S^-1", lambda x: semigroup.in_interior(f23.inv(x)), None, True, "", None, batch)


@dataclass
class PinchingResult:
    lower_bound: DensityEstimate
    upper_complement: DensityEstimate
    at_points: List[DensityEstimate] = field(default_factory=list)

    @property
    def bounds(self):
        return self.lower_bound.mean, 1.0 - self.upper_complement.mean

    def within(self, z_crit: float = Z99) -> bool:
        lo, hi = self.bounds
        for e in self.at_points:
            s = math.sqrt(e.sigma**2 + self.lower_bound.sigma**2 + self.upper_complement.sigma**2)
            if e.mean < lo - z_crit * s or e.mean > hi + z_crit * s:
                return False
        return True


def pinching_experiment(oracle: SetOracle, boundary_points, r=0.5, n=200000, seed=0,
                        backend=None, workers=1) -> PinchingResult:
    """Gauge-ball densities at boundary points against the S and S^{-1} densities at 0.

    At a boundary point p of a precisely X2-monotone cone-property set, p int(S)
    lies inside and p int(S^{-1}) outside, so by left invariance of the gauge
    ball the density is pinched between dens(S) and 1 - dens(S^{-1}).
    """
    from .csets import s_interior

    lo = mc_density(s_interior(), f23.ZERO2, 1.0, n, seed, 0, backend, workers)
    hi = mc_density(s_inverse_oracle(), f23.ZERO2, 1.0, n, seed, 1, backend, workers)
    pts = [mc_density(oracle, p, r, n, seed, 2 + i, backend, workers) for i, p in enumerate(boundary_points)]
    return PinchingResult(lo, hi, pts)
