"""The continuous catalyst profile z* and its discretization.

z* lives on [0, a] with a = s_plus + s_minus + ln(y_1/y_d):

* [0, s_plus]          z = exp(-s^(1/n_plus))
* [s_plus, a - s_minus] z = z(s_plus) exp(-(s - s_plus))
* (a - s_minus, a]      z = K exp((a - s)^(1/n_minus)),
                        K = (y_d/y_1) z_plus(s_plus) / z_minus(s_minus)

Everything downstream only needs three closed forms: the value, the
inverse, and the cumulative integral Z(S) = int_0^S z*.  With those,
int_0^a (c z*(s) - t)^+ ds = c Z(s_c) - t s_c where z*(s_c) = t / c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ..errors import InvalidParams
from ..vectors import ProbVec
from .integrals import power_exp_integral, regularized_lower_gamma

__all__ = [
    "StitchParams",
    "ZStar",
    "stitch_zstar",
    "discretize",
    "ell_from_variation",
    "ell_from_lipschitz",
    "discrete_margins",
]

OVERLAP_TOL = 1e-12


@dataclass(frozen=True)
class StitchParams:
    """Parameters of one z* construction.

    ``ell`` is the catalyst dimension and ``delta`` the lower bound on the
    sum-integral margin it was sized against.
    """

    n_plus: int
    s_plus: float
    n_minus: int
    s_minus: float
    a: float
    ell: int = 1
    delta: float = 0.0

    @classmethod
    def for_pair(cls, n_plus: int, s_plus: float, n_minus: int, s_minus: float,
                 y1: float, yd: float) -> "StitchParams":
        return cls(n_plus, s_plus, n_minus, s_minus, s_plus + s_minus + math.log(y1 / yd))

    def with_sizing(self, ell: int, delta: float) -> "StitchParams":
        return replace(self, ell=ell, delta=delta)


class ZStar:
    """Callable profile z* with closed-form inverse and cumulative integral."""

    def __init__(self, params: StitchParams, y1: float, yd: float):
        self.params = params
        self.y1, self.yd = y1, yd
        p = params
        self.a = p.a
        self.u_plus = p.s_plus ** (1.0 / p.n_plus)  # -ln z_plus(s_plus)
        self.v_minus = p.s_minus ** (1.0 / p.n_minus)  # ln z_minus(s_minus)
        self.mid_end = p.a - p.s_minus
        # log of K = z*(a)
        self.log_end = math.log(yd / y1) - self.u_plus - self.v_minus
        self.z_end = math.exp(self.log_end)
        self._z_mid = self._cum_plus(p.s_plus)
        self._z_join = self._z_mid + math.exp(-self.u_plus) * -math.expm1(-(self.mid_end - p.s_plus))
        self._g_full = self._growth_integral(p.s_minus)

    # z_plus continued with exponential decay, valid on [0, inf)
    def branch_plus(self, s):
        s = np.asarray(s, dtype=float)
        p = self.params
        head = np.exp(-np.power(np.minimum(s, p.s_plus), 1.0 / p.n_plus))
        return head * np.exp(-np.maximum(s - p.s_plus, 0.0))

    # (y_d/y_1) z_plus(s_plus)/z_minus(s_minus) * z_minus(a - s), valid on [0, a]
    def branch_minus(self, s):
        s = np.asarray(s, dtype=float)
        p = self.params
        u = np.maximum(self.a - s, 0.0)
        log_zm = np.where(u <= p.s_minus,
                          np.power(np.minimum(u, p.s_minus), 1.0 / p.n_minus),
                          self.v_minus + (u - p.s_minus))
        return np.exp(self.log_end + log_zm)

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        return np.where(s <= self.mid_end, self.branch_plus(s), self.branch_minus(s))

    def value(self, s: float) -> float:
        return float(self(s))

    # int_0^S exp(-s^(1/n)) ds = n! P(n, S^(1/n)), kept in float
    def _cum_plus(self, S: float) -> float:
        n = self.params.n_plus
        if S <= 0:
            return 0.0
        if n == 1:
            return -math.expm1(-S)
        return math.exp(math.lgamma(n + 1)) * regularized_lower_gamma(n, S ** (1.0 / n))

    # int_0^V exp(v^(1/m)) dv = m! * int_0^{V^(1/m)} w^(m-1) e^w dw / (m-1)!
    def _growth_integral(self, V: float) -> float:
        m = self.params.n_minus
        if V <= 0:
            return 0.0
        if m == 1:
            return math.expm1(V)
        return math.exp(math.lgamma(m + 1)) * power_exp_integral(m - 1, V ** (1.0 / m))

    def cumulative(self, S: float) -> float:
        """int_0^S z*(s) ds for S in [0, a]."""
        p = self.params
        S = min(max(S, 0.0), self.a)
        if S <= p.s_plus:
            return self._cum_plus(S)
        if S <= self.mid_end:
            return self._z_mid + math.exp(-self.u_plus) * -math.expm1(-(S - p.s_plus))
        K = self.z_end
        return self._z_join + K * (self._g_full - self._growth_integral(self.a - S))

    def inverse(self, v: float) -> float:
        """The s in [0, a] with z*(s) = v, clipped at the ends."""
        p = self.params
        if v >= 1.0:
            return 0.0
        if v <= self.z_end:
            return self.a
        lv = math.log(v)
        if -lv <= self.u_plus:
            return (-lv) ** p.n_plus
        s = p.s_plus + (-lv - self.u_plus)
        if s <= self.mid_end:
            return s
        return self.a - (lv - self.log_end) ** p.n_minus

    def overlap_gap(self, samples: int = 1000) -> float:
        """Largest disagreement of the two branch formulas on [s_plus, a - s_minus]."""
        p = self.params
        s = np.linspace(p.s_plus, self.mid_end, samples)
        return float(np.max(np.abs(self.branch_plus(s) - self.branch_minus(s))))

    def t_star_gap(self) -> float:
        """|y_1 z*(a - s_minus) - y_d z_plus(s_plus)|."""
        p = self.params
        return abs(self.y1 * self.value(self.mid_end) - self.yd * float(self.branch_plus(p.s_plus)))

    def positive_part_integral(self, c: float, t: float) -> float:
        """int_0^a (c z*(s) - t)^+ ds."""
        if t >= c:
            return 0.0
        s_c = self.inverse(t / c)
        return c * self.cumulative(s_c) - t * s_c

    def margin(self, x: Sequence[float], y: Sequence[float], t: float) -> float:
        """sum_i int (y_i z* - t)^+ - sum_i int (x_i z* - t)^+."""
        return (math.fsum(self.positive_part_integral(c, t) for c in y)
                - math.fsum(self.positive_part_integral(c, t) for c in x))


def stitch_zstar(params: StitchParams, y1: float, yd: float) -> ZStar:
    """Build z* and confirm that the two definitional branches agree where they overlap."""
    if not y1 > yd > 0:
        raise InvalidParams("need y_1 > y_d > 0")
    if params.n_plus < 1 or params.n_minus < 1 or params.s_plus < 0 or params.s_minus < 0:
        raise InvalidParams(f"invalid exponents or offsets: {params}")
    expected_a = params.s_plus + params.s_minus + math.log(y1 / yd)
    if abs(params.a - expected_a) > 1e-12 * max(1.0, expected_a):
        raise InvalidParams(f"a = {params.a} but s_+ + s_- + ln(y_1/y_d) = {expected_a}")
    z = ZStar(params, y1, yd)
    gap = z.overlap_gap()
    if gap > OVERLAP_TOL:
        raise InvalidParams(f"branches disagree by {gap:.3g} on the overlap")
    return z


def _rationalize(v: float) -> Fraction:
    return Fraction(v)  # exact binary value of the float


def discretize(zstar: Callable, params: StitchParams) -> ProbVec:
    """Midpoint samples z_j = z*((j - 1/2) a / ell), j = 1..ell, as exact rationals.

    Any value between z*(j a/ell) and z*((j-1) a/ell) would do; the midpoint
    keeps the choice deterministic.
    """
    ell = params.ell
    s = (np.arange(1, ell + 1) - 0.5) * (params.a / ell)
    values = np.asarray(zstar(s), dtype=float)
    if np.any(values <= 0) or not np.all(np.isfinite(values)):
        raise InvalidParams("profile sampled to a non-positive or non-finite value")
    return ProbVec(_rationalize(float(v)) for v in values)


def ell_from_variation(zstar: ZStar, delta: float, x_total: float = 1.0) -> int:
    """Catalyst dimension guaranteeing the discretized margin stays nonnegative.

    (c z* - t)^+ is nonincreasing in s, so a cell sample differs from the
    cell average by at most the cell's drop; the drops telescope to
    c (z*(0) - z*(a)).  Summed over components of x and y that is
    2 a (1 - z*(a)) / ell, which must not exceed delta.
    """
    if delta <= 0:
        return math.inf
    return max(1, math.ceil(2.0 * zstar.a * x_total * (1.0 - zstar.z_end) / delta))


def ell_from_lipschitz(zstar: ZStar, delta: float, d: int) -> float:
    """Dimension from a global Lipschitz constant K: K a / ell <= delta / (2 y_1 a d).

    z* has unbounded slope at its ends unless both exponents are 1, in which
    case K = 1; otherwise this returns inf.
    """
    p = zstar.params
    if p.n_plus > 1 or p.n_minus > 1 or delta <= 0:
        return math.inf
    return max(1, math.ceil(2.0 * zstar.y1 * zstar.a**2 * d / delta))


def discrete_margins(x: ProbVec, y: ProbVec, z: ProbVec, t: Fraction) -> tuple[Fraction, Fraction]:
    """Exact (sub-form, super-form) margins of a finite catalyst at threshold t.

    sub   = sum (y_i z_j - t)^+ - sum (x_i z_j - t)^+
    super = sum (t - y_i z_j)^+ - sum (t - x_i z_j)^+
    They coincide whenever x and y have equal sums.
    """
    def plus(vals, sign):
        return sum((v for v in (sign * (p - t) for p in vals) if v > 0), Fraction(0))

    xz = [a * b for a in x.components for b in z.components]
    yz = [a * b for a in y.components for b in z.components]
    return plus(yz, 1) - plus(xz, 1), plus(yz, -1) - plus(xz, -1)
