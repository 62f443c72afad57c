"""Exact majorization predicates.

All comparisons run on Python integers: the components are brought to a
common denominator first, which keeps the catalyzed check fast even for
catalysts with thousands of components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, InvalidInput
from .vectors import ProbVec

__all__ = [
    "MajorizationReport",
    "majorizes",
    "majorizes_orderfree",
    "catalyzed_majorizes",
    "majorizes_integers",
]


@dataclass(frozen=True)
class MajorizationReport:
    """Outcome of a majorization test.

    ``first_violation_index`` is the 1-based prefix length k at which the
    partial sums of x first exceed those of y.  Order-free checks report the
    offending threshold in ``violation_t`` instead.
    """

    holds: bool
    first_violation_index: Optional[int] = None
    sums_equal: bool = True
    violation_t: Optional[Fraction] = None

    def __bool__(self) -> bool:
        return self.holds


def _common_integers(*groups: Sequence[Fraction]) -> tuple[list[list[int]], int]:
    denom = 1
    for group in groups:
        for v in group:
            denom = math.lcm(denom, v.denominator)
    scaled = [[v.numerator * (denom // v.denominator) for v in group] for group in groups]
    return scaled, denom


def majorizes_integers(a: Iterable[int], b: Iterable[int]) -> MajorizationReport:
    """Prefix-sum test on integer vectors (any order, equal length)."""
    a = sorted(a, reverse=True)
    b = sorted(b, reverse=True)
    if len(a) != len(b):
        raise DimensionMismatch(f"dimensions differ: {len(a)} vs {len(b)}")
    for k, (pa, pb) in enumerate(zip(accumulate(a), accumulate(b)), start=1):
        if pa > pb:
            return MajorizationReport(False, k, sum(a) == sum(b))
    same = sum(a) == sum(b)
    return MajorizationReport(same, None, same)


def _check_dims(x: ProbVec, y: ProbVec) -> None:
    if x.dim != y.dim:
        raise DimensionMismatch(f"dimensions differ: {x.dim} vs {y.dim}")


def majorizes(x: ProbVec, y: ProbVec) -> MajorizationReport:
    """Is x majorized by y?  Partial sums of x never exceed those of y, totals equal."""
    _check_dims(x, y)
    (a, b), _ = _common_integers(x.components, y.components)
    return majorizes_integers(a, b)


def _positive_part_sum(values: Sequence[Fraction], t: Fraction, form: str) -> Fraction:
    if form == "sub":
        return sum((v - t for v in values if v > t), Fraction(0))
    return sum((t - v for v in values if v < t), Fraction(0))


def majorizes_orderfree(x: ProbVec, y: ProbVec, form: str = "sub") -> MajorizationReport:
    """Order-free criterion with thresholds t.

    ``form="sub"`` compares sum (x_i - t)^+ with sum (y_i - t)^+;
    ``form="super"`` compares sum (t - x_i)^+ with sum (t - y_i)^+.
    Both sides are piecewise linear in t with kinks at the components, so
    checking t at every component (and at 0) decides the continuum.
    """
    if form not in ("sub", "super"):
        raise InvalidInput(f"form must be 'sub' or 'super', got {form!r}")
    _check_dims(x, y)
    same = x.total == y.total
    thresholds = sorted(set(x.components) | set(y.components) | {Fraction(0)}, reverse=True)
    for t in thresholds:
        if _positive_part_sum(x.components, t, form) > _positive_part_sum(y.components, t, form):
            return MajorizationReport(False, None, same, t)
    return MajorizationReport(same, None, same)


def catalyzed_majorizes(x: ProbVec, y: ProbVec, z: ProbVec) -> MajorizationReport:
    """Exact test of x (x) z majorized by y (x) z."""
    _check_dims(x, y)
    if z[0] == 0:
        raise InvalidInput("catalyst must have a positive component")
    (a, b), _ = _common_integers(x.components, y.components)
    (c,), _ = _common_integers(z.components)
    return majorizes_integers(
        (ai * cj for ai in a for cj in c),
        (bi * cj for bi in b for cj in c),
    )
