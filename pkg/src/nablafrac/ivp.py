"""Initial value problems: forward recursion, Cauchy function, variation
of constants, and fundamental solution sets.

The recursion isolates the p(t)-weighted top term of the operator row at
each t; since the Caputo kernel weight at the diagonal is exactly 1, the
pivot is p(t) > 0 and the recursion never breaks down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from types import MappingProxyType
from typing import Mapping

from .grid import Grid, GridFunction, constant_grid_function
from .monomial import taylor_monomial
from .operator import FracOperator, GhostClosure


@dataclass(frozen=True)
class InitialConditions:
    """N+1 values A_i prescribing nabla^i x(a+i) = A_i, plus a ghost closure."""

    values: tuple[float, ...]
    closure: GhostClosure = field(default_factory=GhostClosure.zero)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.closure.mode == "natural":
            raise ValueError("natural closure is reserved for analytic basis functions")

    @classmethod
    def zeros(cls, n: int) -> "InitialConditions":
        """All-zero conditions for an operator of ceiling order n."""
        return cls((0.0,) * (n + 1))

    @classmethod
    def unit(cls, n: int, i: int) -> "InitialConditions":
        vals = [0.0] * (n + 1)
        vals[i] = 1.0
        return cls(tuple(vals))


def ic_to_values(ic: InitialConditions) -> tuple[float, ...]:
    """Unfold nabla^i x(a+i) = A_i into the point values x(a), ..., x(a+N).

    The system is unit lower triangular in the point values, so it is
    always solvable by forward substitution.
    """
    n = len(ic.values) - 1
    xs = [ic.values[0]]
    for i in range(1, n + 1):
        # nabla^i x(a+i) = sum_j (-1)^j C(i,j) x(a+i-j)
        acc = ic.values[i]
        for j in range(1, i + 1):
            acc -= (-1) ** j * comb(i, j) * xs[i - j]
        xs.append(acc)
    return tuple(xs)


def _nabla_pow(xs: list[float], lo: int, n: int, t: int) -> float:
    """nabla^n of the offset-indexed values xs at offset t."""
    return sum((-1) ** i * comb(n, i) * xs[t - i - lo] for i in range(n + 1))


def _caputo_at(xs: list[float], lo: int, base: int, nu: float, n: int, t: int) -> float:
    if t <= base:
        return 0.0
    acc = 0.0
    for s in range(base + 1, t + 1):
        acc += taylor_monomial(t - s + 1, n - nu - 1.0) * _nabla_pow(xs, lo, n, s)
    return acc


def _row_value(op: FracOperator, xs: list[float], lo: int, base: int, t: int) -> float:
    """(L_base x)(t) from the current values, p and q anchored at op.a."""
    n = op.N
    cap_t = _caputo_at(xs, lo, base, op.nu, n, t)
    cap_p = _caputo_at(xs, lo, base, op.nu, n, t - 1)
    return (op.p.at(t) * cap_t - op.p.at(t - 1) * cap_p
            + op.q.at(t) * xs[t - 1 - lo])


def solve_ivp(op: FracOperator, h: GridFunction, ic: InitialConditions) -> GridFunction:
    """Solve L x = h with nabla^i x(a+i) = A_i by forward recursion.

    Returns x on the extended grid [a-N+1, b].  The initial conditions
    and the ghost closure are satisfied exactly; the equation holds to
    accumulated rounding.
    """
    n = op.N
    b = op.b_offset
    if len(ic.values) != n + 1:
        raise ValueError(f"need {n + 1} initial values, got {len(ic.values)}")
    _check_forcing(op, h)
    lo = -(n - 1)
    xs = [0.0] * (b - lo + 1)
    for i, g in enumerate(ic.closure.ghost_values(n - 1), start=1):
        xs[-i - lo] = g
    for k, v in enumerate(ic_to_values(ic)):
        xs[k - lo] = v
    for t in range(n + 1, b + 1):
        xs[t - lo] = 0.0
        xs[t - lo] = (h.at(t) - _row_value(op, xs, lo, 0, t)) / op.p.at(t)
    return GridFunction(Grid(op.a, lo, b), tuple(xs))


def _check_forcing(op: FracOperator, h: GridFunction) -> None:
    n = op.N
    if abs(h.grid.base - op.a) > 1e-9 or h.grid.lo > n + 1 or h.grid.hi < op.b_offset:
        raise ValueError(
            f"h must cover offsets [{n + 1}, {op.b_offset}] based at a"
        )


def zero_forcing(op: FracOperator) -> GridFunction:
    return constant_grid_function(Grid(op.a, op.N + 1, op.b_offset), 0.0)


@dataclass(frozen=True, eq=False)
class CauchyFunction:
    """The two-parameter kernel x(t, s), one column per s in [a+N+1, b].

    Column s lives on offsets [s-N, b]; :meth:`value` zero-extends it
    below that, matching the pinned zero values at and below rho(s).
    """

    a: float
    nu: float
    N: int
    b_offset: int
    columns: Mapping[int, GridFunction]

    def value(self, t_offset: int, s_offset: int) -> float:
        col = self.columns[s_offset]
        if t_offset < col.grid.lo:
            return 0.0
        return col.at(t_offset)

    def column(self, s_offset: int) -> GridFunction:
        return self.columns[s_offset]

    def s_offsets(self) -> range:
        return range(self.N + 1, self.b_offset + 1)


def cauchy_function(op: FracOperator) -> CauchyFunction:
    """Build the Cauchy function for L x = 0.

    For each s the column solves the impulse IVP based at rho(s): zero
    values on [rho(s)-N+1, rho(s)], x(s,s) = 1/p(s) from the nabla^N
    condition, then the forward recursion of the homogeneous row from
    t = s+1 on (the row is already well defined there given the pinned
    lower values).
    """
    n = op.N
    b = op.b_offset
    cols = {}
    for s in range(n + 1, b + 1):
        lo = s - n
        xs = [0.0] * (b - lo + 1)
        xs[s - lo] = 1.0 / op.p.at(s)
        for t in range(s + 1, b + 1):
            xs[t - lo] = -_row_value(op, xs, lo, s - 1, t) / op.p.at(t)
        cols[s] = GridFunction(Grid(op.a, lo, b), tuple(xs))
    return CauchyFunction(op.a, op.nu, n, b, MappingProxyType(cols))


def variation_of_constants(op: FracOperator, h: GridFunction,
                           cauchy: CauchyFunction | None = None) -> GridFunction:
    """Particular solution x(t) = sum_{s=a+N+1}^{t} x(t,s) h(s).

    Solves L x = h with all N+1 initial conditions zero; the result is 0
    on [a-N+1, a+N] and is returned on the extended grid.
    """
    _check_forcing(op, h)
    if cauchy is None:
        cauchy = cauchy_function(op)
    n = op.N
    b = op.b_offset
    lo = -(n - 1)
    xs = [0.0] * (b - lo + 1)
    for t in range(n + 1, b + 1):
        xs[t - lo] = sum(
            cauchy.value(t, s) * h.at(s) for s in range(n + 1, t + 1)
        )
    return GridFunction(Grid(op.a, lo, b), tuple(xs))


def homogeneous_basis(op: FracOperator, analytic: bool = False) -> tuple[GridFunction, ...]:
    """N+1 linearly independent solutions of L x = 0 on [a-N+1, b].

    The numeric basis uses unit initial-condition vectors with zero ghost
    closure, so the matrix of initial data is the identity.  With
    ``analytic=True`` (p == 1, q == 0 only) the monomial basis
    {H_0, ..., H_{N-1}, H_nu} is returned with its natural extension:
    polynomial below a for the integer orders, zero below a for H_nu.
    """
    n = op.N
    if analytic:
        if not op.is_basic():
            raise ValueError("analytic basis requires p == 1 and q == 0")
        grid = Grid(op.a, -(n - 1), op.b_offset)
        orders = [float(k) for k in range(n)] + [op.nu]
        return tuple(
            GridFunction(grid, tuple(taylor_monomial(m, order) for m in grid.offsets()))
            for order in orders
        )
    h0 = zero_forcing(op)
    return tuple(
        solve_ivp(op, h0, InitialConditions.unit(n, i)) for i in range(n + 1)
    )
