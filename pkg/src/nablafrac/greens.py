"""Green's functions: generic construction from a basis, the closed-form
(2,1) conjugate kernel, and the resulting zero-data BVP solver.

G(t,s) is assembled piecewise from u (below the diagonal band) and
v = u + Cauchy column (on and above it).  Cells outside the stated
piecewise regions carry the u-branch value and are flagged ``u*``;
comparisons quantify only over the stated region.  The t range is
extended down to a-N+1 so that operator residual checks are possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bvp import BoundarySpec, assemble_d, right_bc_eval
from .errors import DegenerateDenominatorError, NearSingularError
from .grid import Grid, GridFunction
from .ivp import cauchy_function
from .linalg import gauss_solve
from .monomial import taylor_monomial
from .operator import FracOperator

_DEGENERATE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class GreensFunction:
    """Piecewise kernel on t in [a-N+1, b] x s in [a+N+1, b].

    ``u``, ``v`` and ``G`` are (t, s)-indexed arrays; ``branch`` holds
    'u' / 'v' on the stated regions and 'u*' on flagged cells.
    """

    a: float
    nu: float
    N: int
    b_offset: int
    u: np.ndarray
    v: np.ndarray
    G: np.ndarray
    branch: np.ndarray

    @property
    def t_lo(self) -> int:
        return -(self.N - 1)

    @property
    def s_lo(self) -> int:
        return self.N + 1

    def value(self, t_offset: int, s_offset: int) -> float:
        return float(self.G[t_offset - self.t_lo, s_offset - self.s_lo])

    def branch_of(self, t_offset: int, s_offset: int) -> str:
        return str(self.branch[t_offset - self.t_lo, s_offset - self.s_lo])

    def column(self, s_offset: int) -> GridFunction:
        """G(., s) on the extended grid, for residual checks."""
        return GridFunction(
            Grid(self.a, self.t_lo, self.b_offset),
            tuple(self.G[:, s_offset - self.s_lo]),
        )


def _branch_table(n: int, b: int) -> np.ndarray:
    t_lo = -(n - 1)
    branch = np.empty((b - t_lo + 1, b - n), dtype="U2")
    for ti, t in enumerate(range(t_lo, b + 1)):
        for si, s in enumerate(range(n + 1, b + 1)):
            in_u = 0 <= t <= b - n and s >= max(t + 1, n + 1)
            in_v = n <= t <= b and s <= min(t + 1, b)
            if in_v:
                branch[ti, si] = "v"
            elif in_u:
                branch[ti, si] = "u"
            else:
                branch[ti, si] = "u*"
    return branch


def _assemble(a, nu, n, b, u, v, branch) -> GreensFunction:
    # u-branch value everywhere except the stated v region
    g = np.where(branch == "v", v, u)
    return GreensFunction(a, nu, n, b, u, v, g, branch)


def build_greens(op: FracOperator, spec: BoundarySpec,
                 basis: Sequence[GridFunction]) -> GreensFunction:
    """Construct G for the homogeneous part of ``spec`` over ``basis``.

    For each s, u(., s) solves the homogeneous equation with zero left
    boundary conditions and right condition equal to minus the right
    boundary functional of the Cauchy column; v = u + Cauchy column.
    """
    n = op.N
    b = op.b_offset
    d = assemble_d(basis, spec, op)
    if d.is_near_singular():
        raise NearSingularError(
            f"boundary matrix is singular at tolerance (det = {d.det:.3e})"
        )
    cf = cauchy_function(op)
    t_lo = -(n - 1)
    t_offsets = range(t_lo, b + 1)
    shape = (b - t_lo + 1, b - n)
    u = np.empty(shape)
    v = np.empty(shape)
    for si, s in enumerate(range(n + 1, b + 1)):
        rhs = np.zeros(n + 1)
        rhs[n] = -right_bc_eval(cf.column(s), spec.beta, op.b)
        coeffs = gauss_solve(d.entries, rhs)
        for ti, t in enumerate(t_offsets):
            u[ti, si] = sum(c * x.at(t) for c, x in zip(coeffs, basis))
            v[ti, si] = u[ti, si] + cf.value(t, s)
    return _assemble(op.a, op.nu, n, b, u, v, _branch_table(n, b))


def conjugate_greens_closed_form(a: float, b: float, nu: float) -> GreensFunction:
    """Closed-form Green's function for the (2,1) conjugate problem.

    For p == 1, q == 0 and 1 < nu < 2:
    u(t,s) = -H_nu(b, rho(s)) (t - a - H_nu(t,a)) / (b - a - H_nu(b,a)),
    v(t,s) = u(t,s) + H_nu(t, rho(s)).
    """
    if float(nu).is_integer() or not 1.0 < nu < 2.0:
        raise ValueError(f"conjugate closed form needs nu in (1, 2), got {nu}")
    b_off = round(b - a)
    if abs((b - a) - b_off) > 1e-9:
        raise ValueError(f"b - a = {b - a} is not an integer")
    if b_off < 3:
        raise ValueError(f"b - a must be at least 3, got {b_off}")
    n = 2
    denom = b_off - taylor_monomial(b_off, nu)
    if abs(denom) < _DEGENERATE_TOL * abs(b_off):
        raise DegenerateDenominatorError(
            f"b - a - H_nu(b, a) = {denom:.3e} vanishes at tolerance"
        )
    t_lo = -(n - 1)
    shape = (b_off - t_lo + 1, b_off - n)
    u = np.empty(shape)
    v = np.empty(shape)
    for ti, t in enumerate(range(t_lo, b_off + 1)):
        ramp = (t - taylor_monomial(t, nu)) / denom
        for si, s in enumerate(range(n + 1, b_off + 1)):
            u[ti, si] = -taylor_monomial(b_off - s + 1, nu) * ramp
            v[ti, si] = u[ti, si] + taylor_monomial(t - s + 1, nu)
    return _assemble(a, nu, n, b_off, u, v, _branch_table(n, b_off))


def greens_solve(g: GreensFunction, h: GridFunction) -> GridFunction:
    """x(t) = sum_{s=a+N+1}^{b} G(t,s) h(s), the zero-data BVP solution."""
    n = g.N
    b = g.b_offset
    if abs(h.grid.base - g.a) > 1e-9 or h.grid.lo > n + 1 or h.grid.hi < b:
        raise ValueError(f"h must cover offsets [{n + 1}, {b}] based at a")
    hs = np.array([h.at(s) for s in range(n + 1, b + 1)])
    vals = g.G @ hs
    return GridFunction(Grid(g.a, g.t_lo, b), tuple(vals))


def compare_greens(g1: GreensFunction, g2: GreensFunction) -> float:
    """Max absolute entry difference over the stated piecewise region."""
    if g1.G.shape != g2.G.shape or g1.N != g2.N or g1.b_offset != g2.b_offset:
        raise ValueError("Green's functions have different index sets")
    stated = g1.branch != "u*"
    if not np.array_equal(g1.branch, g2.branch):
        raise ValueError("branch tables disagree")
    return float(np.max(np.abs(g1.G[stated] - g2.G[stated])))
