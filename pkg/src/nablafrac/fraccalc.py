"""Whole-order nabla differences and fractional integrals/differences.

Every operator maps a :class:`GridFunction` to a :class:`GridFunction`
tabulated on exactly the offsets where its defining formula makes sense;
there is no silent zero-padding.  Convolution sums are evaluated
directly at O(n^2) total cost, which is plenty for desk-scale grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .grid import Grid, GridFunction
from .monomial import taylor_monomial


@dataclass(frozen=True)
class FracOrder:
    """A fractional order ``nu > 0`` together with ``N = ceil(nu)``."""

    nu: float
    N: int

    def __post_init__(self):
        if not self.nu > 0:
            raise ValueError(f"order must be positive, got {self.nu}")
        if self.N != math.ceil(self.nu):
            raise ValueError(f"N={self.N} is not ceil({self.nu})")

    @classmethod
    def from_nu(cls, nu: float) -> "FracOrder":
        return cls(float(nu), math.ceil(nu))

    @property
    def is_whole(self) -> bool:
        return float(self.nu).is_integer()


def nabla(f: GridFunction) -> GridFunction:
    """Backward difference f(t) - f(t-1), defined on [lo+1, hi]."""
    g = f.grid
    if len(g) < 2:
        raise ValueError("nabla needs at least 2 points")
    vals = tuple(f.values[i] - f.values[i - 1] for i in range(1, len(g)))
    return GridFunction(Grid(g.base, g.lo + 1, g.hi), vals)


def nabla_n(f: GridFunction, n: int) -> GridFunction:
    """n-fold backward difference; n = 0 returns f unchanged."""
    if n < 0:
        raise ValueError("difference order must be >= 0")
    if len(f.grid) < n + 1:
        raise ValueError(f"grid of {len(f.grid)} points too short for nabla^{n}")
    for _ in range(n):
        f = nabla(f)
    return f


def _base_offset(f: GridFunction, base: float) -> int:
    """Offset of the base point, which may sit one step below f's grid."""
    k = round(base - f.grid.base)
    if abs((base - f.grid.base) - k) > 1e-9:
        raise ValueError(f"base {base} is not a unit-step point of f's grid")
    if not f.grid.lo - 1 <= k <= f.grid.hi:
        raise ValueError(f"base offset {k} outside [{f.grid.lo - 1}, {f.grid.hi}]")
    return k


def frac_integral(f: GridFunction, base: float, nu: float) -> GridFunction:
    """Fractional integral of order ``nu > 0`` based at ``base``.

    Result is tabulated on [base, hi] with value 0 at the base point;
    at base+m it is sum_{s=1..m} H_{nu-1}(m-s+1) * f(base+s).  f must be
    defined on (base, hi].
    """
    if not nu > 0:
        raise ValueError(f"integral order must be positive, got {nu}")
    b = _base_offset(f, base)
    hi = f.grid.hi
    vals = []
    for m in range(0, hi - b + 1):
        acc = 0.0
        for s in range(1, m + 1):
            acc += taylor_monomial(m - s + 1, nu - 1.0) * f.at(b + s)
        vals.append(acc)
    return GridFunction(Grid(f.grid.base, b, hi), tuple(vals))


def rl_difference(f: GridFunction, base: float, nu: float, extend: bool = False) -> GridFunction:
    """Riemann-Liouville difference: nabla^N of the (N-nu)-integral, N = ceil(nu).

    The result lives on [base+N, hi]: the whole-order difference consumes
    the N leading points of the fractional integral.  With ``extend=True``
    the inner integral is continued by zero below the base (the definite
    nabla integral is 0 whenever its upper limit is <= its lower limit),
    which extends the result down to [base, hi] with value 0 at the base.
    """
    if not nu > 0 or float(nu).is_integer():
        raise ValueError(f"RL order must be positive and non-integer, got {nu}")
    n = math.ceil(nu)
    g = frac_integral(f, base, n - nu)
    if extend:
        g = GridFunction(
            Grid(g.grid.base, g.grid.lo - n, g.grid.hi),
            (0.0,) * n + g.values,
        )
    return nabla_n(g, n)


def caputo_difference(f: GridFunction, base: float, nu: float) -> GridFunction:
    """Caputo difference: (N-nu)-integral of nabla^N f, for N-1 < nu < N.

    f must carry the N-1 ghost points below the base, i.e. be defined on
    [base-N+1, hi].  The result lives on [base, hi] and is 0 at the base.
    """
    n = math.ceil(nu)
    if float(nu).is_integer() or not n - 1 < nu < n:
        raise ValueError(f"Caputo order must be strictly between N-1 and N, got {nu}")
    b = round(base - f.grid.base)
    if f.grid.lo > b - n + 1:
        raise ValueError(
            f"f must be defined down to base-N+1 (offset {b - n + 1}), "
            f"but starts at {f.grid.lo}"
        )
    d = nabla_n(f, n)
    return frac_integral(d, base, n - nu)
