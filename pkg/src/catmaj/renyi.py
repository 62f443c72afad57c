"""The f_r family, its normalized difference curve and related functionals.

Values are floats; ``math.inf`` is used for the infinite cases (never a
large finite sentinel).  The index r is a plain float.  Power sums are
evaluated as log-sum-exp, which anchors at the largest component for r > 0
and at the smallest for r < 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from .errors import DimensionMismatch, IndeterminateAtZero, InvalidInput
from .vectors import ProbVec

__all__ = [
    "CurveSample",
    "f_r",
    "log_power_sum",
    "normalized_f",
    "g_curve",
    "g_values",
    "F_appendix",
    "extras",
]

OK = "ok"
LIMIT_R0 = "limit_r0"
LIMIT_R1 = "limit_r1"
INFINITE = "infinite"


@dataclass(frozen=True)
class CurveSample:
    r: float
    g: float
    flag: str = OK


def _as_array(x) -> np.ndarray:
    if isinstance(x, ProbVec):
        return x.floats
    return np.asarray(x, dtype=float)


def _check_r(r: float) -> float:
    r = float(r)
    if not math.isfinite(r):
        raise InvalidInput("f_r is only evaluated at finite r")
    return r


def log_power_sum(x, r: float) -> float:
    """ln sum_i x_i^r over the positive components (r > 0), inf for r <= 0 with zeros."""
    v = _as_array(x)
    pos = v[v > 0]
    if r <= 0 and pos.size < v.size:
        return math.inf
    return float(logsumexp(r * np.log(pos)))


def f_r(x, r: float) -> float:
    """The five-case functional; +inf when r <= 0 and x has a zero component."""
    r = _check_r(r)
    v = _as_array(x)
    pos = v[v > 0]
    if r <= 0 and pos.size < v.size:
        return math.inf
    if r == 1:
        return math.fsum(pos * np.log(pos))
    if r == 0:
        return -math.fsum(np.log(pos))
    s = log_power_sum(pos, r)
    return -s if 0 < r < 1 else s


def normalized_f(x, r: float) -> float:
    """ln(sum x_i^r) / (r (r - 1)) for r not in {0, 1}."""
    r = _check_r(r)
    if r in (0.0, 1.0):
        raise InvalidInput("normalized_f has no finite value at r = 0 or r = 1")
    return log_power_sum(x, r) / (r * (r - 1.0))


def _mean_log(v: np.ndarray) -> float:
    return math.fsum(np.log(v)) / v.size


def _entropy_slope(v: np.ndarray) -> float:
    # derivative of ln sum v_i^r at r = 1
    pos = v[v > 0]
    return math.fsum(pos * np.log(pos)) / math.fsum(pos)


def g_curve(x, y, r: float) -> CurveSample:
    """f~_r(y) - f~_r(x), with the limiting values substituted at r = 0 and r = 1.

    At r = 1 the value is f_1(y) - f_1(x); at r = 0 it is (f_0(y) - f_0(x)) / d
    and this raises ``IndeterminateAtZero`` if either vector has a zero.
    """
    r = _check_r(r)
    xv, yv = _as_array(x), _as_array(y)
    if xv.size != yv.size:
        raise DimensionMismatch(f"dimensions differ: {xv.size} vs {yv.size}")
    if np.array_equal(np.sort(xv), np.sort(yv)):
        flag = LIMIT_R1 if r == 1 else LIMIT_R0 if r == 0 else OK
        return CurveSample(r, 0.0, flag)
    x_zero, y_zero = bool(np.any(xv == 0)), bool(np.any(yv == 0))
    if r == 1:
        return CurveSample(r, _entropy_slope(yv) - _entropy_slope(xv), LIMIT_R1)
    if r <= 0 and (x_zero or y_zero):
        if r == 0 or (x_zero and y_zero):
            raise IndeterminateAtZero(f"curve undefined at r = {r} with zero components")
        # 1/(r(r-1)) > 0 for r < 0, so an infinite power sum gives +inf
        return CurveSample(r, math.inf if y_zero else -math.inf, INFINITE)
    if r == 0:
        return CurveSample(r, _mean_log(xv) - _mean_log(yv), LIMIT_R0)
    return CurveSample(r, (log_power_sum(yv, r) - log_power_sum(xv, r)) / (r * (r - 1.0)))


def g_values(x, y, rs: Sequence[float]) -> np.ndarray:
    """Vectorized g over an array of r values.

    Meant for the decider's scans: callers pass strictly positive vectors, or
    vectors where only y has zeros together with r > 0.
    """
    xv, yv = _as_array(x), _as_array(y)
    rs = np.asarray(rs, dtype=float)
    lx, ly = np.log(xv[xv > 0]), np.log(yv[yv > 0])
    out = np.empty_like(rs)
    mid = (rs != 0) & (rs != 1)
    r = rs[mid]
    num = logsumexp(np.outer(r, ly), axis=1) - logsumexp(np.outer(r, lx), axis=1)
    out[mid] = num / (r * (r - 1.0))
    if np.any(rs == 1):
        out[rs == 1] = _entropy_slope(yv) - _entropy_slope(xv)
    if np.any(rs == 0):
        if xv.size != lx.size or yv.size != ly.size:
            raise IndeterminateAtZero("curve undefined at r = 0 with zero components")
        out[rs == 0] = math.fsum(lx) / lx.size - math.fsum(ly) / ly.size
    return out


def F_appendix(x, y, r: float) -> float:
    """Three-case difference function; positive iff f_r(x) < f_r(y) for positive x.

    Evaluated with plain power sums (no log-sum-exp) so that it can serve as
    an independent cross-check of ``g_curve``.
    """
    r = _check_r(r)
    xv, yv = _as_array(x), _as_array(y)
    d = xv.size
    if np.any(xv <= 0):
        raise InvalidInput("F_appendix requires x with all components nonzero")
    y_pos = yv[yv > 0]
    if r == 1:
        return math.fsum(y_pos * np.log(y_pos)) - math.fsum(xv * np.log(xv))
    if r <= 0 and y_pos.size < yv.size:
        return math.inf
    if r == 0:
        return -(math.fsum(np.log(yv)) - math.fsum(np.log(xv))) / d
    return (_log_plain_power_sum(y_pos, r) - _log_plain_power_sum(xv, r)) / (r * (r - 1.0))


def _log_plain_power_sum(v: np.ndarray, r: float) -> float:
    # factor out the dominant component so v**r cannot overflow
    ref = float(v.min() if r < 0 else v.max())
    return r * math.log(ref) + math.log(math.fsum((v / ref) ** r))


def extras(x) -> tuple[float, float, float]:
    """(ln x_1, -ln x_d, -ln |supp x|); the middle entry is inf if x has a zero."""
    if isinstance(x, ProbVec):
        largest, smallest, support = x[0], x[-1], x.support_size
    else:
        v = np.sort(_as_array(x))[::-1]
        largest, smallest, support = v[0], v[-1], int(np.count_nonzero(v))
    tail = math.inf if smallest == 0 else -math.log(smallest)
    return math.log(largest), tail, -math.log(support)
