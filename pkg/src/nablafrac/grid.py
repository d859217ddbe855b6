"""Finite integer-offset grids and grid-indexed real functions.

A grid is anchored at a real base point ``a`` and consists of the points
``a + k`` for integer offsets ``k`` in ``[lo, hi]``.  All position
arithmetic is done on the integer offsets, so membership tests never
suffer floating-point drift.  Function values are ordinary floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import OffGridError

# slack when converting a real point to an integer offset
_POINT_TOL = 1e-9


@dataclass(frozen=True)
class Grid:
    """Points ``base + k`` for ``k`` in ``[lo, hi]`` with unit step."""

    base: float
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty grid: lo={self.lo} > hi={self.hi}")

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def offsets(self) -> range:
        return range(self.lo, self.hi + 1)

    def points(self) -> list[float]:
        return [self.base + k for k in self.offsets()]

    def offset_of(self, t: float) -> int:
        """Integer offset of the point ``t``; raises if ``t`` is off-grid."""
        k = round(t - self.base)
        if abs((t - self.base) - k) > _POINT_TOL:
            raise OffGridError(f"{t} is not a unit-step point of grid based at {self.base}")
        if not self.lo <= k <= self.hi:
            raise OffGridError(f"{t} (offset {k}) outside grid offsets [{self.lo}, {self.hi}]")
        return k

    def contains_offset(self, k: int) -> bool:
        return self.lo <= k <= self.hi


@dataclass(frozen=True)
class GridFunction:
    """A real-valued function tabulated on a :class:`Grid`.

    Immutable after construction; evaluation outside the grid raises
    :class:`OffGridError` rather than silently returning zero.
    """

    grid: Grid
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.grid):
            raise ValueError(
                f"{len(self.values)} values for a grid of {len(self.grid)} points"
            )
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def from_offsets(cls, base: float, lo: int, values: Sequence[float]) -> "GridFunction":
        return cls(Grid(base, lo, lo + len(values) - 1), tuple(values))

    def at(self, k: int) -> float:
        """Value at integer offset ``k`` from the base."""
        if not self.grid.contains_offset(k):
            raise OffGridError(f"offset {k} outside [{self.grid.lo}, {self.grid.hi}]")
        return self.values[k - self.grid.lo]

    def __call__(self, t: float) -> float:
        return self.values[self.grid.offset_of(t) - self.grid.lo]

    def __iter__(self) -> Iterator[tuple[float, float]]:
        for k, v in zip(self.grid.offsets(), self.values):
            yield self.grid.base + k, v


def make_grid_function(grid: Grid, f: Callable[[float], float]) -> GridFunction:
    """Tabulate ``f`` at every point of ``grid``."""
    return GridFunction(grid, tuple(f(grid.base + k) for k in grid.offsets()))


def constant_grid_function(grid: Grid, c: float) -> GridFunction:
    return GridFunction(grid, (float(c),) * len(grid))


def nabla_integral(f: GridFunction, c: float, d: float) -> float:
    """Definite nabla integral of ``f`` from ``c`` to ``d``.

    Equals ``sum(f(s) for s in (c, d])`` when ``c < d`` and 0 when ``d <= c``.
    Both endpoints must be grid points of ``f``.
    """
    ck = f.grid.offset_of(c)
    dk = f.grid.offset_of(d)
    if dk <= ck:
        return 0.0
    return sum(f.at(k) for k in range(ck + 1, dk + 1))
