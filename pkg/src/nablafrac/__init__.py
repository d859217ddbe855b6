"""Discrete nabla fractional calculus on finite integer-offset grids.

Rising functions and Taylor monomials, fractional integrals and
Riemann-Liouville / Caputo differences, the fractional operator
L x = nabla[p * caputo x] + q * shift(x), IVP solvers via Cauchy
functions and variation of constants, (N,1) boundary value problems via
constructed Green's functions, and a dense brute-force oracle.
"""

from .errors import (
    DegenerateDenominatorError,
    NearSingularError,
    OffGridError,
    SingularSystemError,
)
from .grid import Grid, GridFunction, constant_grid_function, make_grid_function, nabla_integral
from .monomial import rising, taylor_monomial
from .fraccalc import (
    FracOrder,
    caputo_difference,
    frac_integral,
    nabla,
    nabla_n,
    rl_difference,
)
from .operator import (
    FracOperator,
    GhostClosure,
    apply,
    extend_with_closure,
    leading_coefficient,
)
from .ivp import (
    CauchyFunction,
    InitialConditions,
    cauchy_function,
    homogeneous_basis,
    ic_to_values,
    solve_ivp,
    variation_of_constants,
    zero_forcing,
)
from .bvp import BoundarySpec, DMatrix, assemble_d, left_bc_eval, right_bc_eval, solve_bvp
from .greens import (
    GreensFunction,
    build_greens,
    compare_greens,
    conjugate_greens_closed_form,
    greens_solve,
)
from .oracle import (
    DenseSystem,
    assemble_bvp,
    assemble_ivp,
    dense_solve,
    probe_equation_rows,
    residual,
)

__version__ = "0.1.0"

__all__ = [
    "BoundarySpec",
    "CauchyFunction",
    "DMatrix",
    "DegenerateDenominatorError",
    "DenseSystem",
    "FracOperator",
    "FracOrder",
    "GhostClosure",
    "GreensFunction",
    "Grid",
    "GridFunction",
    "InitialConditions",
    "NearSingularError",
    "OffGridError",
    "SingularSystemError",
    "apply",
    "assemble_bvp",
    "assemble_d",
    "assemble_ivp",
    "build_greens",
    "caputo_difference",
    "cauchy_function",
    "compare_greens",
    "conjugate_greens_closed_form",
    "constant_grid_function",
    "dense_solve",
    "extend_with_closure",
    "frac_integral",
    "greens_solve",
    "homogeneous_basis",
    "ic_to_values",
    "leading_coefficient",
    "left_bc_eval",
    "make_grid_function",
    "nabla",
    "nabla_integral",
    "nabla_n",
    "probe_equation_rows",
    "residual",
    "right_bc_eval",
    "rising",
    "rl_difference",
    "solve_bvp",
    "solve_ivp",
    "taylor_monomial",
    "variation_of_constants",
    "zero_forcing",
]
