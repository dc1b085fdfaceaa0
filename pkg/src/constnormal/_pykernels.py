"""Numpy implementations of the batch kernels.

Expressions are written in the same order as in ``_speedups.pyx`` so that
both backends perform identical IEEE operations and return identical counts.
"""

import numpy as np

K_HALFSPACE = 0
K_QUADRANT = 1
K_CONE_AB = 2
K_TRANSLATES = 3
K_S_INTERIOR = 4


def ball_points(center, r, h):
    """center . dilate(r, h) for the rows of h, as five float arrays."""
    c1, c2, c3, c4, c5 = (float(v) for v in center)
    r = float(r)
    r2 = r * r
    r3 = r2 * r
    y1 = r * h[:, 0]
    y2 = r * h[:, 1]
    y3 = r2 * h[:, 2]
    y4 = r3 * h[:, 3]
    y5 = r3 * h[:, 4]
    x1 = c1 + y1
    x2 = c2 + y2
    x3 = c3 + y3 - c1 * y2
    x4 = c4 + y4 - c1 * y3 + c1 * c1 * y2 / 2.0
    x5 = c5 + y5 + c1 * c2 * y2 + c1 * y2 * y2 / 2.0 - c2 * y3
    return x1, x2, x3, x4, x5


def member_mask(code, params, lo, hi, x1, x2, x3, x4, x5):
    if code == K_HALFSPACE:
        return x2 >= 0.0
    if code == K_QUADRANT:
        return (x2 >= 0.0) & (x4 >= 0.0)
    if code == K_CONE_AB:
        a, b = float(params[0]), float(params[1])
        t = a * x3 + b * x5
        s = a + b * x2
        return (x4 >= 0.0) & (x2 >= 0.0) & (t * t <= 2.0 * x2 * x4 * (s * s))
    if code == K_TRANSLATES:
        m = len(lo)
        i = np.searchsorted(lo, x5, side="right") - 1
        left = i >= 0
        il = np.where(left, i, 0)
        inside = left & (x5 <= hi[il])
        dl = np.where(left, x5 - hi[il], np.inf)
        ir = np.minimum(i + 1, m - 1)
        dr = np.where(i + 1 < m, lo[ir] - x5, np.inf)
        d = np.minimum(dl, dr)
        d = np.where(inside, 0.0, d)
        rhs = 2.0 * x2 * x2 * x2 * x4
        return (x2 >= 0.0) & (x4 >= 0.0) & (d * d <= rhs)
    if code == K_S_INTERIOR:
        p = x2 * x2 * x2 * x4 - 2.0 * x2 * x2 * x3 * x3 - 6.0 * x2 * x3 * x5 - 6.0 * x5 * x5
        return (p > 0.0) & (x2 > 0.0)
    raise ValueError(f"unknown kernel code {code}")


def count_in_ball(code, params, lo, hi, center, r, h):
    x = ball_points(center, r, h)
    return int(np.count_nonzero(member_mask(code, params, lo, hi, *x)))


def w3_endpoints(shifts, times, ks):
    """q2, q4 of exp(a1 X1) exp(b1 (X1+X2)) ... for each row (k steps used)."""
    n, kmax = shifts.shape
    q1 = np.zeros(n)
    q2 = np.zeros(n)
    q3 = np.zeros(n)
    q4 = np.zeros(n)
    for j in range(kmax):
        active = j < ks
        a = np.where(active, shifts[:, j], 0.0)
        b = np.where(active, times[:, j], 0.0)
        # X1 step: only x1 moves
        q1 = q1 + a
        # exp(b X1 + b X2) = (b, b, -b^2/2, b^3/6, b^3/3)
        y2 = b
        y3 = -(b * b) / 2.0
        y4 = b * b * b / 6.0
        q4 = q4 + y4 - q1 * y3 + q1 * q1 * y2 / 2.0
        q3 = q3 + y3 - q1 * y2
        q1 = q1 + b
        q2 = q2 + y2
    return q2, q4
