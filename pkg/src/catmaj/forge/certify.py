"""Assemble a verified catalyst: brute force first, then the stitched construction.

Nothing is returned unless ``catalyzed_majorizes`` accepts it on the
original (padded) pair.  Every floating-point step before that is only a
heuristic for picking parameters.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from ..decider import DEFAULT_TOL, Verdict, decide, golden_section_min
from ..errors import BudgetExceeded, CatmajError, InvalidParams, NotApplicable
from ..majorization import MajorizationReport, catalyzed_majorizes
from ..vectors import ProbVec, pad
from .desingularize import MAX_N, desingularization_index, desingularized
from .profile import StitchParams, ZStar, discretize, ell_from_variation, stitch_zstar
from .search import brute_force_search
from .steps import check_step1, check_step1_stitched, check_step2, check_step2_stitched

__all__ = [
    "Method",
    "SearchBudget",
    "CatalystCertificate",
    "certify",
    "construct",
    "sum_integral_margin",
]

DELTA_GRID = 4096


class Method(str, Enum):
    BRUTE_FORCE = "BruteForce"
    CONSTRUCTED = "Constructed"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SearchBudget:
    """Limits for :func:`certify`.  ``brute_force_dim = 0`` skips the lattice search."""

    time_limit_s: float = 30.0
    brute_force_dim: int = 3
    brute_force_grid: int = 60
    max_ell: int = 4096
    max_n: int = 64
    offset_steps: int = 8


@dataclass(frozen=True)
class CatalystCertificate:
    z: ProbVec
    method: Method
    verification: MajorizationReport
    params: Optional[StitchParams] = None
    attempts: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.verification.holds:
            raise CatmajError("a certificate must carry a passing verification")

    @property
    def ell(self) -> int:
        return self.z.dim


class _Clock:
    def __init__(self, limit_s: float):
        self.deadline = time.monotonic() + limit_s

    def check(self, what: str) -> None:
        if time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time budget exhausted during {what}")


def _powers_of_two(limit: int):
    n = 1
    while n <= limit:
        yield n
        n *= 2


def sum_integral_margin(zstar: ZStar, x: ProbVec, y: ProbVec, samples: int = DELTA_GRID) -> float:
    """Smallest value of sum int (y_i z* - t)^+ - sum int (x_i z* - t)^+ over t in [x_d z*(a), x_1].

    Log-spaced grid plus every place a component crosses a profile joint,
    refined by golden section around sampled minima.
    """
    xf = [float(c) for c in x.components]
    yf = [float(c) for c in y.components]
    lo, hi = xf[-1] * zstar.z_end, xf[0]
    p = zstar.params
    joints = [1.0, zstar.z_end, zstar.value(p.s_plus), zstar.value(zstar.mid_end)]
    ts = list(np.geomspace(lo, hi, samples))
    ts += [c * j for c in xf + yf for j in joints if lo <= c * j <= hi]
    ts = np.unique(np.asarray(ts))
    vals = np.array([zstar.margin(xf, yf, float(t)) for t in ts])
    best = float(vals.min())
    logs = np.log(ts)
    left = np.concatenate([[np.inf], vals[:-1]])
    right = np.concatenate([vals[1:], [np.inf]])
    for i in np.flatnonzero((vals <= left) & (vals <= right)):
        a, b = logs[max(i - 1, 0)], logs[min(i + 1, ts.size - 1)]
        if b - a > 1e-12:
            _, m = golden_section_min(lambda u: zstar.margin(xf, yf, math.exp(u)), float(a), float(b),
                                      width=1e-9)
            best = min(best, m)
    return best


def _offset(check, x, y, n, base, steps, clock) -> Optional[float]:
    """Smallest tried offset U in {k * base} for which the truncated profile still passes."""
    if n == 1:
        return 0.0
    for k in range(1, steps + 1):
        clock.check("offset search")
        if check(x, y, n, k * base):
            return k * base
    return None


def construct(x: ProbVec, y: ProbVec, budget: SearchBudget = SearchBudget(), *,
              verify_x: Optional[ProbVec] = None, verify_y: Optional[ProbVec] = None,
              clock: Optional[_Clock] = None) -> CatalystCertificate:
    """Stitched construction for a strictly positive pair with x_1 < y_1 and x_d > y_d.

    ``verify_x``/``verify_y`` (default x, y) are the vectors the final exact
    check runs against; certify passes the original, unreduced pair.
    """
    clock = clock or _Clock(budget.time_limit_s)
    vx, vy = verify_x or x, verify_y or y
    y1, yd = float(y[0]), float(y[-1])
    spread = math.log(y1 / yd)
    log: list[str] = []

    def first_n(check):
        for n in _powers_of_two(budget.max_n):
            clock.check("exponent search")
            if check(x, y, n):
                return n
        return None

    n_plus, n_minus = first_n(check_step1), first_n(check_step2)
    if n_plus is None or n_minus is None:
        raise BudgetExceeded(f"no exponent up to {budget.max_n} passes both half-profile checks")
    log.append(f"exponents n+={n_plus} n-={n_minus}")

    while n_plus <= budget.max_n and n_minus <= budget.max_n:
        U = _offset(check_step1_stitched, x, y, n_plus, spread, budget.offset_steps, clock)
        V = _offset(check_step2_stitched, x, y, n_minus, spread, budget.offset_steps, clock)
        if U is not None and V is not None:
            params = StitchParams.for_pair(n_plus, U**n_plus, n_minus, V**n_minus, y1, yd)
            try:
                zstar = stitch_zstar(params, y1, yd)
            except InvalidParams as exc:
                log.append(f"rejected {params}: {exc}")
            else:
                clock.check("margin estimate")
                delta = sum_integral_margin(zstar, x, y) / 2
                log.append(f"n+={n_plus} n-={n_minus} a={params.a:.6g} delta={delta:.3g}")
                if delta > 0:
                    ell = min(ell_from_variation(zstar, delta), budget.max_ell)
                    while ell <= budget.max_ell:
                        clock.check("discretization")
                        sized = params.with_sizing(ell, delta)
                        z = discretize(zstar, sized)
                        report = catalyzed_majorizes(vx, vy, z)
                        log.append(f"ell={ell}: {'holds' if report.holds else 'fails'}")
                        if report.holds:
                            return CatalystCertificate(z.normalize(), Method.CONSTRUCTED, report,
                                                       sized, tuple(log))
                        if ell == budget.max_ell:
                            break
                        ell = min(2 * ell, budget.max_ell)
        n_plus, n_minus = 2 * n_plus, 2 * n_minus
        n_plus = next((n for n in _powers_of_two(budget.max_n) if n >= n_plus and check_step1(x, y, n)),
                      budget.max_n + 1)
        n_minus = next((n for n in _powers_of_two(budget.max_n) if n >= n_minus and check_step2(x, y, n)),
                       budget.max_n + 1)
    raise BudgetExceeded("constructive search exhausted: " + "; ".join(log[-4:]))


def _strengthened(x: ProbVec, y: ProbVec, target: float, clock: _Clock) -> ProbVec:
    """Desingularize, then keep raising n until the trumping margin is at least ``target``."""
    n = desingularization_index(x, y)
    while True:
        yn = desingularized(y, n)
        if yn.is_positive and decide(x, yn).min_margin >= target:
            return yn
        n *= 2
        if n > MAX_N:
            return desingularized(y, desingularization_index(x, y))
        clock.check("desingularization")


def certify(x: ProbVec, y: ProbVec, budget: SearchBudget = SearchBudget(),
            tol: float = DEFAULT_TOL, verdict: Optional[Verdict] = None) -> CatalystCertificate:
    """Find z with x (x) z majorized by y (x) z, verified exactly.

    Raises ``NotApplicable`` unless the decider says Trumped, and
    ``BudgetExceeded`` when the search gives up (the verdict still stands).
    """
    verdict = verdict or decide(x, y, tol)
    if not verdict.trumped:
        raise NotApplicable(f"certify needs a Trumped verdict, got {verdict.kind}")
    clock = _Clock(budget.time_limit_s)
    d = max(x.dim, y.dim)
    X, Y = pad(x, d), pad(y, d)

    if budget.brute_force_dim > 0:
        z = brute_force_search(X, Y, budget.brute_force_dim, budget.brute_force_grid)
        if z is not None:
            return CatalystCertificate(z.normalize(), Method.BRUTE_FORCE, catalyzed_majorizes(X, Y, z),
                                       attempts=(f"lattice grid {budget.brute_force_grid}",))
        clock.check("brute force")

    xr, yr = verdict.reduced.renormalized()
    if not yr.is_positive:
        # the desingularized target loses margin; ask for half of what the pair had
        yr = _strengthened(xr, yr, verdict.min_margin / 2, clock)
    return construct(xr, yr, budget, verify_x=X, verify_y=Y, clock=clock)
