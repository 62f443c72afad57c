"""Decision procedure for catalytic majorization.

x is trumped by y exactly when f_r(x) < f_r(y) at every real r (given the
usual restrictions on zeros and x != y).  The decider reduces the pair,
settles the endpoint cases analytically, bounds the part of the r axis that
can still fail, and minimizes the normalized curve g over that window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .errors import (
    BothEmptyAfterReduction,
    DimensionMismatch,
    EndpointViolation,
    IndeterminateAtZero,
    InvalidInput,
)
from .renyi import INFINITE, CurveSample, g_curve, g_values
from .vectors import ProbVec, ReducedPair, pad, reduce_pair

__all__ = [
    "VerdictKind",
    "Verdict",
    "RWindow",
    "window_bounds",
    "decide",
    "sample_curve",
    "golden_section_min",
    "DEFAULT_TOL",
    "R_CAP",
]

DEFAULT_TOL = 1e-9
R_CAP = 1e4
GRID_DENSITY = 32  # samples per unit r
MIN_SAMPLES = 512
REFINE_WIDTH = 1e-6
# first scanned r when r <= 0 is already settled by zeros in y
ZERO_SIDE_START = 1e-6


class VerdictKind(str, Enum):
    TRUMPED = "Trumped"
    NOT_TRUMPED = "NotTrumped"
    EQUAL = "Equal"
    BOUNDARY = "Boundary"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RWindow:
    """Outside [r_lo, r_hi] every f_r inequality is settled analytically.

    When y has zeros, ``r_lo`` is 0 and ``zero_side`` is true: all r <= 0
    hold because f_r(y) is infinite there, and the scan starts just above 0.
    """

    r_lo: float
    r_hi: float
    lo_reason: str
    hi_reason: str
    zero_side: bool = False

    @property
    def scan_hi(self) -> float:
        # the tail argument for large r needs r > 1
        return max(self.r_hi, 1.0)


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    min_margin: float
    witness_r: Optional[float] = None
    window: Optional[tuple[float, float]] = None
    reduced: Optional[ReducedPair] = None
    note: str = ""

    @property
    def trumped(self) -> bool:
        return self.kind is VerdictKind.TRUMPED


def _log_ratio(big: Fraction, small: Fraction) -> float:
    # ln(big/small) without losing digits when the ratio is close to 1
    return math.log1p(float((big - small) / small))


def window_bounds(x: ProbVec, y: ProbVec) -> RWindow:
    """Analytic r-window for a reduced pair.

    For r > r_hi = ln d / ln(y_1/x_1) we have y_1^r > d x_1^r >= sum x_i^r,
    and symmetrically below r_lo = -ln d / ln(x_d/y_d) on the smallest
    components.
    """
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimensions differ: {x.dim} vs {y.dim}")
    d = x.dim
    if x[0] >= y[0]:
        raise EndpointViolation("x_1 >= y_1: fails for large r", math.inf)
    if y.is_positive and x[-1] <= y[-1]:
        raise EndpointViolation("x_d <= y_d: fails for very negative r", -math.inf)
    log_d = math.log(d)
    r_hi = log_d / _log_ratio(y[0], x[0])
    hi_reason = f"y_1^r > {d} x_1^r beyond r = {r_hi:.6g}"
    if not y.is_positive:
        return RWindow(0.0, r_hi, "f_r(y) = inf for r <= 0", hi_reason, zero_side=True)
    r_lo = -log_d / _log_ratio(x[-1], y[-1])
    return RWindow(r_lo, r_hi, f"y_d^r > {d} x_d^r below r = {r_lo:.6g}", hi_reason)


def golden_section_min(f: Callable[[float], float], lo: float, hi: float,
                       width: float = REFINE_WIDTH) -> tuple[float, float]:
    """Minimize a unimodal ``f`` on [lo, hi] until the bracket is narrower than ``width``."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    e = a + inv_phi * (b - a)
    fc, fe = f(c), f(e)
    while b - a > width:
        if fc <= fe:
            b, e, fe = e, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, e, fe
            e = a + inv_phi * (b - a)
            fe = f(e)
    best = min((fc, c), (fe, e), (f(a), a), (f(b), b))
    return best[1], best[0]


def _scan(xf: np.ndarray, yf: np.ndarray, lo: float, hi: float, density: int) -> tuple[float, float]:
    """Grid scan of g on [lo, hi] plus r = 0, 1 when inside, refined around each local minimum."""
    n = max(MIN_SAMPLES, int(math.ceil(density * (hi - lo))) + 1)
    rs = np.linspace(lo, hi, n)
    extra = [v for v in (0.0, 1.0) if lo <= v <= hi]
    if extra:
        rs = np.unique(np.concatenate([rs, extra]))
    gs = g_values(xf, yf, rs)
    g_one = lambda r: float(g_values(xf, yf, [r])[0])

    best_r, best_g = float(rs[np.argmin(gs)]), float(np.min(gs))
    # local minima of the sampled curve, endpoints included
    left = np.concatenate([[np.inf], gs[:-1]])
    right = np.concatenate([gs[1:], [np.inf]])
    for i in np.flatnonzero((gs <= left) & (gs <= right)):
        a = rs[max(i - 1, 0)]
        b = rs[min(i + 1, rs.size - 1)]
        r, g = golden_section_min(g_one, float(a), float(b))
        if g < best_g:
            best_r, best_g = r, g
    return best_r, best_g


def _classify(min_margin: float, witness: float, tol: float, window, reduced, note="") -> Verdict:
    if min_margin > tol:
        return Verdict(VerdictKind.TRUMPED, min_margin, None, window, reduced, note)
    if min_margin < -tol:
        return Verdict(VerdictKind.NOT_TRUMPED, min_margin, witness, window, reduced, note)
    return Verdict(VerdictKind.BOUNDARY, min_margin, witness, window, reduced, note)


def decide(x: ProbVec, y: ProbVec, tol: float = DEFAULT_TOL, *,
           density: int = GRID_DENSITY, r_cap: float = R_CAP) -> Verdict:
    """Decide whether x is catalytically majorized by y.

    Returns a :class:`Verdict`; ``Boundary`` means the smallest margin found
    lies within ``tol`` of zero and the floating-point scan cannot settle it.
    """
    if tol <= 0:
        raise InvalidInput("tol must be positive")
    if not (x.normalized and y.normalized):
        raise InvalidInput("decide expects normalized probability vectors")
    try:
        reduced = reduce_pair(x, y)
    except BothEmptyAfterReduction:
        return Verdict(VerdictKind.EQUAL, 0.0, note="x = y")
    xr, yr = reduced.renormalized()

    if xr.has_zero:
        # at most one side keeps zeros after reduction, so y is positive here
        return Verdict(VerdictKind.NOT_TRUMPED, -math.inf, -math.inf, None, reduced,
                       "x has a zero component, y does not: f_r(x) = inf for r <= 0")
    try:
        window = window_bounds(xr, yr)
    except EndpointViolation as exc:
        return Verdict(VerdictKind.NOT_TRUMPED, -math.inf, exc.witness_r, None, reduced, str(exc))

    lo = ZERO_SIDE_START if window.zero_side else max(window.r_lo, -r_cap)
    hi = min(window.scan_hi, r_cap)
    note = ""
    if window.r_hi > r_cap:
        note = f"r_hi = {window.r_hi:.6g} exceeds the cap; tail beyond {r_cap:g} settled by x_1 < y_1"
    xf, yf = xr.floats, yr.floats
    witness, margin = _scan(xf, yf, lo, hi, density)
    if margin > tol or margin < -tol:
        # guard against a dip between grid points
        w4, m4 = _scan(xf, yf, lo, hi, 4 * density)
        if m4 < margin:
            witness, margin = w4, m4
    return _classify(margin, witness, tol, (lo, hi), reduced, note)


def _snap(r: float, span: float) -> float:
    for target in (0.0, 1.0):
        if abs(r - target) <= 1e-12 * max(span, 1.0):
            return target
    return r


def sample_curve(x: ProbVec, y: ProbVec, r_min: float, r_max: float, n: int) -> list[CurveSample]:
    """``n`` equally spaced samples of g on [r_min, r_max].

    Grid points that land on 0 or 1 use the limiting values.  Where the
    curve is infinite or undefined because of zero components the sample is
    flagged ``infinite`` instead of raising.
    """
    if not r_min < r_max:
        raise InvalidInput("need r_min < r_max")
    if n < 2:
        raise InvalidInput("need at least two samples")
    d = max(x.dim, y.dim)
    xv, yv = pad(x, d).floats, pad(y, d).floats
    span = r_max - r_min
    out = []
    for i in range(n):
        r = r_min + span * i / (n - 1) if i < n - 1 else r_max
        r = _snap(r, span)
        try:
            out.append(g_curve(xv, yv, r))
        except IndeterminateAtZero:
            x_zero, y_zero = bool(np.any(xv == 0)), bool(np.any(yv == 0))
            g = math.nan if x_zero and y_zero else (math.inf if y_zero else -math.inf)
            out.append(CurveSample(r, g, INFINITE))
    return out
