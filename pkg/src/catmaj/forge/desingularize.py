"""Replace a target y that has zero components by a strictly positive y' majorized by y.

    y^(n) = (n-1)/n * y + w / (n k)

where w is 1 on the k zero positions of y and 0 elsewhere.  Any catalyst for
x and y' also works for x and y, because y' majorized by y survives tensoring.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..decider import window_bounds
from ..errors import BudgetExceeded, CatmajError, InvalidInput
from ..majorization import majorizes
from ..renyi import F_appendix
from ..vectors import ProbVec, pad

__all__ = ["desingularize", "desingularized", "desingularization_index", "MAX_N"]

MAX_N = 2**60
GRID_POINTS = 256
F_MARGIN = 1e-12


def desingularized(y: ProbVec, n: int) -> ProbVec:
    """y^(n) for a given n >= 1 (exact)."""
    k = y.dim - y.support_size
    if k == 0:
        return y
    mix = Fraction(n - 1, n)
    fill = Fraction(1, n * k)
    # ProbVec keeps components decreasing, so the zeros are the last k entries
    return ProbVec([mix * c for c in y.components[: y.dim - k]] + [fill] * k)


def _closed_form_floor(x: ProbVec, y: ProbVec, k: int) -> int:
    d = y.dim
    last_nonzero = y[d - k - 1]
    # (n-1) y_{d-k} >= 1/k keeps the filled entries at the bottom
    n_order = math.ceil(1 + Fraction(1) / (k * last_nonzero))
    # 1/(n k) < x_d
    n_small = math.floor(Fraction(1) / (k * x[-1])) + 1
    # (n-1)/n y_1 > x_1  <=>  n > y_1 / (y_1 - x_1)
    n_large = math.floor(y[0] / (y[0] - x[0])) + 1
    return max(2, n_order, n_small, n_large)


def _passes(x: ProbVec, yn: ProbVec) -> bool:
    if not (x[0] < yn[0] and x[-1] > yn[-1]):
        return False
    try:
        w = window_bounds(x, yn)
    except CatmajError:
        return False
    rs = np.linspace(w.r_lo, w.scan_hi, GRID_POINTS)
    xf, yf = x.floats, yn.floats
    return all(F_appendix(xf, yf, float(r)) > F_MARGIN for r in rs)


def desingularization_index(x: ProbVec, y: ProbVec) -> int:
    """The n used by :func:`desingularize` (1 when y is already positive)."""
    if not (x.normalized and y.normalized):
        raise InvalidInput("desingularize expects normalized vectors")
    d = max(x.dim, y.dim)
    x, y = pad(x, d), pad(y, d)
    if y.is_positive:
        return 1
    if not x.is_positive:
        raise InvalidInput("x must be strictly positive")
    if x[0] >= y[0]:
        raise InvalidInput("need x_1 < y_1")
    k = d - y.support_size

    lo = _closed_form_floor(x, y, k)
    if _passes(x, desingularized(y, lo)):
        n = lo
    else:
        hi = lo
        while True:
            hi *= 2
            if hi > MAX_N:
                raise BudgetExceeded(f"no n <= 2^60 desingularizes y (last tried {hi // 2})")
            if _passes(x, desingularized(y, hi)):
                break
            lo = hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if _passes(x, desingularized(y, mid)):
                hi = mid
            else:
                lo = mid
        n = hi
    return n


def desingularize(x: ProbVec, y: ProbVec) -> ProbVec:
    """y^(n) for the smallest-found n making it positive, ordered, bracketing x, with F > 0.

    Starts from the closed-form lower bound, doubles until the F-grid test
    passes, then bisects back (the test is monotone in practice, not
    provably).  The result is checked to be majorized by y exactly.
    """
    n = desingularization_index(x, y)
    y = pad(y, max(x.dim, y.dim))
    result = desingularized(y, n)
    if not majorizes(result, y):
        raise CatmajError("desingularized vector is not majorized by y")  # cannot happen
    return result
