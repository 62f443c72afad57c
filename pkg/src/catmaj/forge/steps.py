"""Grid checks of the two half-profile conditions.

Step 1 asks that  sum_i alpha(y_i, t, n) > sum_i alpha(x_i, t, n)  for every
t in (0, y_1), i.e. that z_+(s) = exp(-s^(1/n)) works as a catalyst profile
for the large components.  Step 2 is the mirror statement with beta and
z_-(s) = exp(s^(1/n)) for t in (y_d, inf).

Each check splits its t-range in three:

* a bounded band, sampled densely (log-spaced points, the component
  breakpoints and the decider's t = exp(-n/r) points) and refined around
  sampled minima;
* an outer stretch where only one vector contributes and the sign is
  forced;
* an unbounded tail where every component has crossed t.  There the
  difference is t times a polynomial in ln t, and positivity is checked on
  the polynomial directly.

The stitched variants apply the same idea to the truncated profiles
(exp(-s^(1/n)) up to s_plus, then a pure exponential).
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

import numpy as np
from numpy.polynomial import Polynomial

from ..decider import golden_section_min, window_bounds
from ..errors import CatmajError
from ..vectors import ProbVec
from .integrals import (
    alpha_scaled,
    beta_scaled,
    power_exp_integral,
    regularized_lower_gamma,
)

__all__ = [
    "STRICT_MARGIN",
    "check_step1",
    "check_step2",
    "check_step1_stitched",
    "check_step2_stitched",
    "step1_margin",
    "step2_margin",
    "tail_polynomial_step1",
    "tail_polynomial_step2",
]

STRICT_MARGIN = 1e-12
BAND_SAMPLES = 512
R_DENSITY = 64


def _floats(v: ProbVec) -> np.ndarray:
    return np.array([float(c) for c in v.components])


def _preconditions(x: ProbVec, y: ProbVec) -> bool:
    return (x.dim == y.dim and x.is_positive and y.is_positive
            and x[0] < y[0] and x[-1] > y[-1] and x.components != y.components)


def _relative(pos: float, neg: float) -> float:
    scale = pos + neg
    return 1.0 if scale == 0 else (pos - neg) / scale


def _min_over_band(margin: Callable[[float], float], ts: Iterable[float]) -> float:
    """Smallest relative margin over sampled t, refined by golden section in ln t."""
    ts = np.unique(np.asarray([t for t in ts if t > 0 and math.isfinite(t)], dtype=float))
    if ts.size == 0:
        return 1.0
    vals = np.array([margin(float(t)) for t in ts])
    best = float(vals.min())
    logs = np.log(ts)
    left = np.concatenate([[np.inf], vals[:-1]])
    right = np.concatenate([vals[1:], [np.inf]])
    for i in np.flatnonzero((vals <= left) & (vals <= right)):
        lo, hi = logs[max(i - 1, 0)], logs[min(i + 1, ts.size - 1)]
        if hi - lo <= 1e-12:
            continue
        _, m = golden_section_min(lambda u: margin(math.exp(u)), float(lo), float(hi),
                                  width=1e-9 * max(1.0, abs(lo)))
        best = min(best, m)
    return best


def _r_points(x: ProbVec, y: ProbVec, n: int, sign: int) -> np.ndarray:
    """t = exp(-sign n / r) over the positive (sign=1) or negative part of the decider window."""
    try:
        w = window_bounds(x, y)
    except CatmajError:
        return np.empty(0)
    if sign > 0:
        lo, hi = 1e-3, w.scan_hi
    else:
        lo, hi = 1e-3, -w.r_lo
    if hi <= lo:
        return np.empty(0)
    rs = np.linspace(lo, hi, max(2, int(math.ceil(R_DENSITY * (hi - lo)))))
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(-sign * n / rs)


def _poly_positive(coeffs: list[float]) -> bool:
    """Is sum_k coeffs[k] u^k strictly positive on u >= 0?  (relative margin STRICT_MARGIN)"""
    c = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
    if c.size == 0 or c[-1] <= 0:
        return False
    bound = 1.0 + float(np.max(np.abs(c[:-1] / c[-1]))) if c.size > 1 else 1.0
    us = np.concatenate([np.linspace(0.0, min(bound, 64.0), 2049), np.geomspace(1e-9, bound, 2048)])
    roots = Polynomial(c).roots()
    real = roots[np.abs(roots.imag) <= 1e-6 * (1 + np.abs(roots.real))].real
    real = real[(real >= 0) & (real <= bound)]
    if real.size:
        us = np.concatenate([us, real, real * (1 + 1e-6), real * (1 - 1e-6)])
    value, scale = _scaled_eval(c, us)
    return bool(np.all(value > STRICT_MARGIN * scale))


def _scaled_eval(c: np.ndarray, us: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """p(u) and sum |c_k| u^k, both divided by max(1, u)^deg so large u cannot overflow."""
    deg = c.size - 1
    big = us > 1.0
    w = np.where(big, 1.0 / np.where(big, us, 1.0), us)
    # for u > 1 evaluate the reversed polynomial at 1/u
    fwd, rev = Polynomial(c), Polynomial(c[::-1])
    afwd, arev = Polynomial(np.abs(c)), Polynomial(np.abs(c[::-1]))
    value = np.where(big, rev(w), fwd(w))
    scale = np.where(big, arev(w), afwd(w))
    return value, scale


def _scaled_power_diffs(a: np.ndarray, b: np.ndarray, upto: int) -> list[float]:
    """(sum_i b_i^m - sum_i a_i^m) / m! for m = 0..upto, all a_i, b_i >= 0."""
    out = []
    for m in range(upto + 1):
        if m == 0:
            out.append(float(b.size - a.size))
            continue
        lf = math.lgamma(m + 1)
        tb = [math.exp(m * math.log(v) - lf) for v in b if v > 0]
        ta = [math.exp(m * math.log(v) - lf) for v in a if v > 0]
        out.append(math.fsum(tb + [-v for v in ta]))
    return out


def _truncated_series(v: list[float], signs: list[int], M: int) -> float:
    """sum_{m<=M} signs[m] v[m] for a series whose full sum is zero.

    The head cancels badly when M is past the peak of the terms; the negated
    tail carries the same value without the cancellation.
    """
    head_terms = [signs[m] * v[m] for m in range(M + 1)]
    head = math.fsum(head_terms)
    spread = math.fsum(abs(t) for t in head_terms)
    if abs(head) >= _HALF_MANTISSA * spread:
        return head
    return -math.fsum(signs[m] * v[m] for m in range(M + 1, len(v)))


_HALF_MANTISSA = 2.0**-26


def _series_length(a: np.ndarray, b: np.ndarray, n: int) -> int:
    # b^m / m! is below 1e-40 of its peak well before m = e * max(b) + 100
    top = float(max(np.max(a), np.max(b), 1.0))
    return max(n, int(math.e * top) + 100)


def tail_polynomial_step1(x: ProbVec, y: ProbVec, n: int) -> list[float]:
    """Coefficients of D_1(t) / (t n!) in u = -ln(t / y_d) >= 0, valid for t <= y_d.

    The u^k coefficient is -(1/k!) sum_{m<=n-k} (B_m - A_m)/m! with
    A_m = sum ln(x_i/y_d)^m, B_m likewise; the untruncated sum is
    (sum y - sum x)/y_d = 0.
    """
    yd = float(y[-1])
    a, b = np.log(_floats(x) / yd), np.log(_floats(y) / yd)
    v = _scaled_power_diffs(a, b, _series_length(a, b, n))
    ones = [1] * len(v)
    return [-_truncated_series(v, ones, n - k) / math.factorial(k) for k in range(n + 1)]


def tail_polynomial_step2(x: ProbVec, y: ProbVec, n: int) -> list[float]:
    """Coefficients of D_2(t) / (t n!) in u = ln(t / y_1) >= 0, valid for t >= y_1.

    The u^k coefficient is (1/k!) sum_{m<=n-k} (-1)^(n-k-m) (B_m - A_m)/m! with
    A_m = sum ln(y_1/x_i)^m; the untruncated alternating sum is
    +-(sum y - sum x)/y_1 = 0.
    """
    y1 = float(y[0])
    a, b = np.log(y1 / _floats(x)), np.log(y1 / _floats(y))
    v = _scaled_power_diffs(a, b, _series_length(a, b, n))
    coeffs = []
    for k in range(n + 1):
        M = n - k
        signs = [(-1) ** ((M - m) % 2) for m in range(len(v))]
        coeffs.append(_truncated_series(v, signs, M) / math.factorial(k))
    return coeffs


def step1_margin(x: ProbVec, y: ProbVec, n: int, t: float) -> float:
    """Relative margin (sum alpha_y - sum alpha_x) / (sum alpha_y + sum alpha_x) at t."""
    pos = math.fsum(alpha_scaled(float(c), t, n) for c in y.components)
    neg = math.fsum(alpha_scaled(float(c), t, n) for c in x.components)
    return _relative(pos, neg)


def step2_margin(x: ProbVec, y: ProbVec, n: int, t: float) -> float:
    pos = math.fsum(beta_scaled(float(c), t, n) for c in y.components)
    neg = math.fsum(beta_scaled(float(c), t, n) for c in x.components)
    return _relative(pos, neg)


def _band(lo: float, hi: float, breaks: Iterable[float], extra: np.ndarray) -> list[float]:
    pts = list(np.geomspace(lo, hi, BAND_SAMPLES))
    pts += [b for b in breaks if lo <= b <= hi]
    pts += [t for t in extra if lo <= t <= hi]
    return pts


def check_step1(x: ProbVec, y: ProbVec, n: int) -> bool:
    """Does z_+(s) = exp(-s^(1/n)) satisfy the strict Step 1 inequality for all t in (0, y_1)?"""
    if not _preconditions(x, y):
        return False
    yd, x1 = float(y[-1]), float(x[0])
    # on [x_1, y_1) only y contributes; below y_d the polynomial tail takes over
    breaks = [float(c) for c in x.components + y.components]
    band = _band(yd, x1, breaks, _r_points(x, y, n, 1))
    if _min_over_band(lambda t: step1_margin(x, y, n, t), band) <= STRICT_MARGIN:
        return False
    return _poly_positive(tail_polynomial_step1(x, y, n))


def check_step2(x: ProbVec, y: ProbVec, n: int) -> bool:
    """Mirror of :func:`check_step1` with z_-(s) = exp(s^(1/n)) over t in (y_d, inf)."""
    if not _preconditions(x, y):
        return False
    xd, y1 = float(x[-1]), float(y[0])
    breaks = [float(c) for c in x.components + y.components]
    band = _band(xd, y1, breaks, _r_points(x, y, n, -1))
    if _min_over_band(lambda t: step2_margin(x, y, n, t), band) <= STRICT_MARGIN:
        return False
    return _poly_positive(tail_polynomial_step2(x, y, n))


def _trunc_plus_scaled(c: float, t: float, n: int, U: float) -> float:
    """int (c z(s) - t)^+ / n! for z = exp(-s^(1/n)) on [0, U^n], pure exponential after."""
    knee = c * math.exp(-U)
    if t >= knee:
        return alpha_scaled(c, t, n)
    head = c * regularized_lower_gamma(n, U) - t * math.exp(n * math.log(U) - math.lgamma(n + 1))
    return head + alpha_scaled(knee, t, 1) / math.factorial(n)


def _trunc_minus_scaled(c: float, t: float, m: int, V: float) -> float:
    """int (t - c z(u))^+ / m! for z = exp(u^(1/m)) on [0, V^m], pure exponential after."""
    knee = c * math.exp(V)
    if t <= knee:
        return beta_scaled(c, t, m)
    head = t * math.exp(m * math.log(V) - math.lgamma(m + 1)) - c * power_exp_integral(m - 1, V)
    return head + beta_scaled(knee, t, 1) / math.factorial(m)


def _f0_ok(x: ProbVec, y: ProbVec) -> bool:
    # the common tail of both truncated profiles reduces to sum ln x > sum ln y
    return math.fsum(math.log(float(c)) for c in x.components) > \
        math.fsum(math.log(float(c)) for c in y.components)


def check_step1_stitched(x: ProbVec, y: ProbVec, n: int, U: float) -> bool:
    """Step 1 for z_+ truncated at s_plus = U^n (z_+(s_plus) = e^{-U}).

    Above t = y_1 e^{-U} nothing is truncated and the pure check applies; below
    y_d e^{-U} every term is on the exponential piece and the margin is
    t (sum ln x - sum ln y) / n!.  Only the band in between is sampled.
    """
    if n == 1 or U <= 0:
        return check_step1(x, y, n)
    if not (check_step1(x, y, n) and _f0_ok(x, y)):
        return False
    lo, hi = float(y[-1]) * math.exp(-U), float(y[0]) * math.exp(-U)
    breaks = [float(c) * math.exp(-U) for c in x.components + y.components]

    def margin(t: float) -> float:
        pos = math.fsum(_trunc_plus_scaled(float(c), t, n, U) for c in y.components)
        neg = math.fsum(_trunc_plus_scaled(float(c), t, n, U) for c in x.components)
        return _relative(pos, neg)

    return _min_over_band(margin, _band(lo, hi, breaks, np.empty(0))) > STRICT_MARGIN


def check_step2_stitched(x: ProbVec, y: ProbVec, m: int, V: float) -> bool:
    """Step 2 for z_- truncated at s_minus = V^m (z_-(s_minus) = e^{V})."""
    if m == 1 or V <= 0:
        return check_step2(x, y, m)
    if not (check_step2(x, y, m) and _f0_ok(x, y)):
        return False
    lo, hi = float(y[-1]) * math.exp(V), float(y[0]) * math.exp(V)
    breaks = [float(c) * math.exp(V) for c in x.components + y.components]

    def margin(t: float) -> float:
        pos = math.fsum(_trunc_minus_scaled(float(c), t, m, V) for c in y.components)
        neg = math.fsum(_trunc_minus_scaled(float(c), t, m, V) for c in x.components)
        return _relative(pos, neg)

    return _min_over_band(margin, _band(lo, hi, breaks, np.empty(0))) > STRICT_MARGIN
