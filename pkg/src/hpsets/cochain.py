"""Chains and cochains with exact rational values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch


def _as_fractions(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True, init=False)
class Cochain:
    """A p-set: one rational number per p-cell, in the complex's cell order."""

    dim: int
    values: tuple[Fraction, ...]

    def __init__(self, dim: int, values: Iterable):
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "values", _as_fractions(values))

    @classmethod
    def zero(cls, dim: int, size: int) -> Cochain:
        return cls(dim, [0] * size)

    @classmethod
    def indicator(cls, dim: int, size: int, index: int) -> Cochain:
        v = [0] * size
        v[index] = 1
        return cls(dim, v)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def _check(self, other: Cochain) -> None:
        if type(other) is not type(self) or other.dim != self.dim or len(other) != len(self):
            raise ValueError("operands live in different degrees or complexes")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.dim, (a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.dim, (a - b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return type(self)(self.dim, (-a for a in self.values))

    def __mul__(self, scalar):
        return type(self)(self.dim, (scalar * a for a in self.values))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.values)


class Chain(Cochain):
    """A formal rational combination of p-cells."""


def pairing(eta: Cochain, z: Sequence | Chain) -> Fraction:
    """Evaluate a p-set on a p-chain: the sum of eta(A) * z(A)."""
    if isinstance(z, Cochain) and z.dim != eta.dim:
        raise DimensionMismatch(f"cannot pair a {eta.dim}-set with a {z.dim}-chain")
    if len(z) != len(eta):
        raise DimensionMismatch(f"lengths differ: {len(eta)} vs {len(z)}")
    return sum((a * b for a, b in zip(eta.values, z)), Fraction(0))
