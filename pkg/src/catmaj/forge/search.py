"""Exhaustive catalyst search on a rational lattice (test oracle)."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, islice
from typing import Iterator, Optional

import numpy as np

from ..majorization import _common_integers, catalyzed_majorizes
from ..vectors import ProbVec, pad

__all__ = ["brute_force_search", "lattice_catalysts"]

BATCH = 4096
_INT64_HEADROOM = 2**62


def lattice_catalysts(dim: int, grid: int) -> Iterator[tuple[int, ...]]:
    """Decreasing integer tuples (grid, z_2, ..., z_dim), 1 <= z_j <= grid, largest first."""
    for tail in combinations_with_replacement(range(grid, 0, -1), dim - 1):
        yield (grid,) + tail


def _first_hit(a: np.ndarray, b: np.ndarray, cands: np.ndarray) -> Optional[int]:
    """Index of the first candidate row c with a (x) c majorized by b (x) c."""
    pa = np.sort((cands[:, None, :] * a[None, :, None]).reshape(len(cands), -1), axis=1)[:, ::-1]
    pb = np.sort((cands[:, None, :] * b[None, :, None]).reshape(len(cands), -1), axis=1)[:, ::-1]
    ok = np.all(np.cumsum(pa, axis=1) <= np.cumsum(pb, axis=1), axis=1)
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else None


def brute_force_search(x: ProbVec, y: ProbVec, max_dim: int = 3, grid: int = 64) -> Optional[ProbVec]:
    """First catalyst z with z_1 = 1 and z_j in {1/grid, ..., 1}, dimensions 1..max_dim.

    Within a dimension candidates are visited in decreasing lexicographic
    order, so the answer is deterministic.  Returns None when nothing on the
    lattice works.
    """
    if max_dim < 1 or grid < 1:
        return None
    d = max(x.dim, y.dim)
    x, y = pad(x, d), pad(y, d)
    if x.total != y.total:
        return None
    (a, b), _ = _common_integers(x.components, y.components)
    fits = max(max(a), max(b)) * grid * d * max_dim < _INT64_HEADROOM
    if fits:
        ai, bi = np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)
    for dim in range(1, max_dim + 1):
        it = lattice_catalysts(dim, grid)
        while True:
            batch = list(islice(it, BATCH))
            if not batch:
                break
            if fits:
                hit = _first_hit(ai, bi, np.array(batch, dtype=np.int64))
                found = batch[hit] if hit is not None else None
            else:
                found = next((c for c in batch
                              if catalyzed_majorizes(x, y, ProbVec(Fraction(v, grid) for v in c))),
                             None)
            if found is not None:
                return ProbVec(Fraction(v, grid) for v in found)
    return None
