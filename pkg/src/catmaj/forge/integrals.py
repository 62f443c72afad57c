"""Closed forms for the truncated integrals behind the catalyst construction.

    alpha(c, t, n) = int_0^inf (c exp(-s^(1/n)) - t)^+ ds
    beta(c, t, n)  = int_0^inf (t - c exp(s^(1/n)))^+ ds

Both grow like n!, so the working values are the ``*_scaled`` variants
(divided by n!); sums of alpha over the components of two vectors share the
factor and can be compared directly in scaled form.
"""

from __future__ import annotations

import math

from scipy.special import gammainc

__all__ = [
    "alpha",
    "alpha_scaled",
    "alpha_direct_scaled",
    "alpha_tail_scaled",
    "beta",
    "beta_scaled",
    "beta_alternating_scaled",
    "regularized_lower_gamma",
    "power_exp_integral",
]

_SERIES_EPS = 1e-17
_MAX_TERMS = 100_000


def _log_ratio(a: float, b: float) -> float:
    # ln(a/b) without losing relative accuracy when a and b are close
    if 0.5 <= a / b <= 2.0:
        return math.log1p((a - b) / b)
    return math.log(a / b)


def _power_over_factorial(L: float, k: int, m: int) -> float:
    """L^k / m!, directly when that cannot overflow (exp of a large log costs ulps)."""
    log_value = k * math.log(L)
    if m <= 170 and abs(log_value) < 700:
        return L**k / math.factorial(m)
    return math.exp(log_value - math.lgamma(m + 1))


def alpha_direct_scaled(c: float, t: float, n: int) -> float:
    """c - t sum_{j<=n} L^j / j!  with L = ln(c/t)."""
    L = _log_ratio(c, t)
    term, acc = 1.0, 1.0
    for j in range(1, n + 1):
        term *= L / j
        acc += term
    return c - t * acc


def alpha_tail_scaled(c: float, t: float, n: int) -> float:
    """t sum_{j>n} L^j / j!, the cancellation-free form for small L."""
    L = _log_ratio(c, t)
    if L <= 0:
        return 0.0
    term = _power_over_factorial(L, n + 1, n + 1)
    acc = 0.0
    j = n + 1
    while term > _SERIES_EPS * acc or j <= L:
        acc += term
        j += 1
        term *= L / j
        if j - n > _MAX_TERMS:
            break
    return t * acc


def alpha_scaled(c: float, t: float, n: int) -> float:
    """alpha(c, t, n) / n!.  Zero when c <= t."""
    if c <= t:
        return 0.0
    direct = alpha_direct_scaled(c, t, n)
    # below c/2 the subtraction has cost more than a bit; the tail is then short
    if direct >= 0.5 * c:
        return direct
    return alpha_tail_scaled(c, t, n)


def alpha(c: float, t: float, n: int) -> float:
    """int_0^inf (c e^{-s^{1/n}} - t)^+ ds for c in (0, 1], t > 0, integer n >= 1."""
    return _unscale(alpha_scaled(c, t, n), n)


def beta_scaled(c: float, t: float, n: int) -> float:
    """beta(c, t, n) / n!.  Zero when t <= c.

    Integrating by parts on the support [0, L^n], L = ln(t/c), gives
    beta = c int_0^L u^n e^u du = c sum_{j>=0} L^{n+1+j} / (j! (n+1+j)),
    a series of positive terms.
    """
    if t <= c:
        return 0.0
    L = _log_ratio(t, c)
    # power = L^(n+1+j) / (j! n!); the 1/(n+1+j) factor stays out of the
    # recurrence so rounding does not accumulate through it
    power = _power_over_factorial(L, n + 1, n)
    terms, acc = [], 0.0
    j = 0
    while True:
        term = power / (n + 1 + j)
        terms.append(term)
        acc += term
        if term <= _SERIES_EPS * acc and j > L or j > _MAX_TERMS:
            break
        j += 1
        power = power * L / j
    return c * math.fsum(terms)


def beta_alternating_scaled(c: float, t: float, n: int) -> float:
    """Finite closed form t sum_{j<=n} (-1)^{n-j} L^j/j! - (-1)^n c.

    Obtained from the antiderivative of e^{s^{1/n}}; exact in exact
    arithmetic but it cancels badly once L is large, so ``beta_scaled``
    prefers the positive series.
    """
    if t <= c:
        return 0.0
    L = _log_ratio(t, c)
    term, acc = 1.0, (-1.0) ** n
    for j in range(1, n + 1):
        term *= L / j
        acc += (-1.0) ** (n - j) * term
    return t * acc - (-1.0) ** n * c


def _unscale(scaled: float, n: int) -> float:
    # n! is exact as a float product below 171; exp(log + lgamma) costs ~|log| ulps
    if scaled == 0.0:
        return 0.0
    if n <= 170:
        return scaled * float(math.factorial(n))
    return math.exp(math.log(scaled) + math.lgamma(n + 1))


def beta(c: float, t: float, n: int) -> float:
    """int_0^inf (t - c e^{s^{1/n}})^+ ds for c, t > 0, integer n >= 1."""
    return _unscale(beta_scaled(c, t, n), n)


def regularized_lower_gamma(k: int, u: float) -> float:
    """P(k, u) = gamma(k, u) / (k-1)! for integer k >= 1.

    Thin wrapper over scipy so callers get the integer-order convention.
    """
    if u <= 0:
        return 0.0
    return float(gammainc(k, u))


def power_exp_integral(m: int, w: float) -> float:
    """int_0^w v^m e^v dv / m!, i.e. beta_scaled(1, e^w, m)."""
    if w <= 0:
        return 0.0
    return beta_scaled(1.0, math.exp(w), m)
