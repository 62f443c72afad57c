"""Exact-rational probability vectors.

Every component is a :class:`fractions.Fraction`; vectors are stored in
decreasing order so that ``v[0]`` is the largest component and ``v[-1]`` the
smallest.  Nothing in this module touches floating point except the
``floats`` convenience accessor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import BothEmptyAfterReduction, EmptyVector, InvalidInput, NegativeComponent

__all__ = [
    "ProbVec",
    "ReducedPair",
    "canonicalize",
    "parse_scalar",
    "parse_vector",
    "format_vector",
    "tensor",
    "reduce_pair",
    "pad",
]


def parse_scalar(value) -> Fraction:
    """Convert ``value`` to an exact rational.

    Strings may be decimals (``"0.1"`` is exactly 1/10), ``p/q`` or integers.
    Python floats go through their shortest repr, so ``0.1`` also means 1/10.

    >>> parse_scalar("2/5"), parse_scalar("0.25"), parse_scalar(0.1)
    (Fraction(2, 5), Fraction(1, 4), Fraction(1, 10))
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInput(f"not a scalar: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not np.isfinite(value):
            raise InvalidInput(f"non-finite component: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"cannot parse scalar {value!r}") from exc
    raise InvalidInput(f"not a scalar: {value!r}")


@dataclass(frozen=True)
class ProbVec:
    """Nonnegative vector of exact rationals, kept in decreasing order.

    The constructor canonicalizes: any iterable of scalars is accepted and
    sorted.  ``normalized`` is true iff the components sum to exactly 1.
    """

    components: tuple[Fraction, ...]

    def __init__(self, components: Iterable):
        values = [parse_scalar(c) for c in components]
        if not values:
            raise EmptyVector("vector has no components")
        for v in values:
            if v < 0:
                raise NegativeComponent(f"negative component {v}")
        values.sort(reverse=True)
        object.__setattr__(self, "components", tuple(values))

    @classmethod
    def parse(cls, text: str) -> "ProbVec":
        return parse_vector(text)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, index):
        return self.components[index]

    def __str__(self) -> str:
        return format_vector(self)

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def total(self) -> Fraction:
        return sum(self.components, Fraction(0))

    @property
    def normalized(self) -> bool:
        return self.total == 1

    @property
    def support_size(self) -> int:
        return sum(1 for c in self.components if c > 0)

    @property
    def has_zero(self) -> bool:
        return self.components[-1] == 0

    @property
    def is_positive(self) -> bool:
        return self.components[-1] > 0

    @property
    def floats(self) -> np.ndarray:
        return np.array([float(c) for c in self.components], dtype=float)

    def scaled(self, factor) -> "ProbVec":
        factor = parse_scalar(factor)
        return ProbVec(c * factor for c in self.components)

    def normalize(self) -> "ProbVec":
        total = self.total
        if total == 0:
            raise InvalidInput("cannot normalize the zero vector")
        return ProbVec(c / total for c in self.components)


def canonicalize(raw: Iterable) -> ProbVec:
    """Return the decreasing-sorted vector of ``raw``; the sum is preserved exactly.

    Raises ``NegativeComponent`` or ``EmptyVector``.  Unlike the ``ProbVec``
    constructor this also insists on at least one positive entry.
    """
    vec = ProbVec(raw)
    if vec[0] == 0:
        raise InvalidInput("vector has no positive component")
    return vec


def parse_vector(text: str) -> ProbVec:
    """Parse ``"2/5,2/5,1/10,1/10"`` or ``"0.4,0.4,0.1,0.1"``."""
    parts = [p for p in text.split(",")]
    if not text.strip() or any(not p.strip() for p in parts):
        raise InvalidInput(f"malformed vector {text!r}")
    return canonicalize(parse_scalar(p) for p in parts)


def format_vector(vec: Iterable[Fraction]) -> str:
    return ",".join(str(c) for c in vec)


def tensor(x: ProbVec, z: ProbVec) -> ProbVec:
    """All products ``x_i * z_j``, canonicalized."""
    return ProbVec(a * b for a in x.components for b in z.components)


def pad(vec: ProbVec, dim: int) -> ProbVec:
    if dim < vec.dim:
        raise InvalidInput(f"cannot pad a {vec.dim}-vector down to {dim}")
    return ProbVec(vec.components + (Fraction(0),) * (dim - vec.dim))


@dataclass(frozen=True)
class ReducedPair:
    """Result of :func:`reduce_pair`.

    ``x`` and ``y`` are unnormalized (each sums to ``1 - scale`` when the
    inputs were normalized); ``scale`` is the mass removed as shared
    components.
    """

    x: ProbVec
    y: ProbVec
    scale: Fraction
    transcript: tuple[str, ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.x.dim

    def renormalized(self) -> tuple[ProbVec, ProbVec]:
        """Both reduced vectors rescaled to sum 1.

        A common rescaling leaves every f_r inequality unchanged.
        """
        return self.x.normalize(), self.y.normalize()


def _strip_common_zeros(a: list, b: list, log: list) -> tuple[list, list]:
    za = sum(1 for v in a if v == 0)
    zb = sum(1 for v in b if v == 0)
    common = min(za, zb)
    if common:
        a = a[: len(a) - common]
        b = b[: len(b) - common]
        log.append(f"strip {common} shared zero component(s)")
    return a, b


def _remove_shared_values(a: Sequence, b: Sequence, log: list):
    # two-pointer walk over decreasing sequences, largest value first
    out_a, out_b = [], []
    removed = Fraction(0)
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            log.append(f"remove shared component {a[i]}")
            removed += a[i]
            i += 1
            j += 1
        elif a[i] > b[j]:
            out_a.append(a[i])
            i += 1
        else:
            out_b.append(b[j])
            j += 1
    out_a.extend(a[i:])
    out_b.extend(b[j:])
    return out_a, out_b, removed


def reduce_pair(x: ProbVec, y: ProbVec) -> ReducedPair:
    """Strip shared zeros, pad to equal length, then drop shared values.

    None of these steps changes whether some catalyst exists, nor the sign
    of any f_r inequality.  Raises ``BothEmptyAfterReduction`` when
    ``x == y`` (after zero padding).
    """
    log: list[str] = []
    dim = max(x.dim, y.dim)
    if x.dim != y.dim:
        log.append(f"pad to dimension {dim}")
    a = list(pad(x, dim).components)
    b = list(pad(y, dim).components)
    a, b = _strip_common_zeros(a, b, log)
    a, b, removed = _remove_shared_values(a, b, log)
    if not a and not b:
        raise BothEmptyAfterReduction("x and y are equal")
    # removal is pairwise, so the lengths still agree
    return ReducedPair(ProbVec(a), ProbVec(b), removed, tuple(log))
