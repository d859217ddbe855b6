import numpy as np
import pytest

from nablafrac import (
    BoundarySpec,
    FracOperator,
    Grid,
    GridFunction,
    NearSingularError,
    apply,
    assemble_d,
    homogeneous_basis,
    left_bc_eval,
    make_grid_function,
    residual,
    right_bc_eval,
    solve_bvp,
    taylor_monomial,
    zero_forcing,
)
from conftest import max_gap, random_forcing, random_operator


class TestBoundaryEvaluators:
    def test_left_unit_row_picks_endpoint_value(self):
        x = make_grid_function(Grid(0.0, -1, 6), lambda t: t * t + 1)
        assert left_bc_eval(x, (1.0, 0.0, 0.0), 0.0) == x.at(0)

    def test_left_first_difference_row(self):
        x = make_grid_function(Grid(0.0, -1, 6), lambda t: t * t)
        assert left_bc_eval(x, (0.0, 1.0, 0.0), 0.0) == x.at(1) - x.at(0)

    def test_left_mixed_row(self):
        x = make_grid_function(Grid(0.0, -1, 6), lambda t: t)
        assert left_bc_eval(x, (1.0, 1.0, 0.0), 0.0) == 0.0 + 1.0

    def test_right_unit_row_picks_endpoint_value(self):
        x = make_grid_function(Grid(0.0, -1, 6), lambda t: t ** 3)
        assert right_bc_eval(x, (1.0, 0.0, 0.0), 6.0) == x.at(6)

    def test_right_first_difference_of_identity(self):
        x = make_grid_function(Grid(0.0, -1, 6), lambda t: t)
        assert right_bc_eval(x, (0.0, 1.0, 0.0), 6.0) == 1.0

    def test_right_second_difference_of_square(self):
        x = make_grid_function(Grid(0.0, -1, 6), lambda t: t * t)
        assert right_bc_eval(x, (0.0, 0.0, 1.0), 6.0) == 2.0


class TestBoundarySpec:
    def test_conjugate_shape(self):
        spec = BoundarySpec.conjugate(1.0, 2.0, 3.0)
        assert spec.N == 2
        assert spec.left_values == (1.0, 2.0)
        assert spec.right_value == 3.0

    def test_zero_row_rejected(self):
        with pytest.raises(ValueError):
            BoundarySpec(
                alpha=((0.0, 0.0, 0.0), (0.0, 1.0, 0.0)),
                left_values=(0.0, 0.0),
                beta=(1.0, 0.0, 0.0),
                right_value=0.0,
            )

    def test_zero_beta_rejected(self):
        with pytest.raises(ValueError):
            BoundarySpec(
                alpha=((1.0, 0.0, 0.0), (0.0, 1.0, 0.0)),
                left_values=(0.0, 0.0),
                beta=(0.0, 0.0, 0.0),
                right_value=0.0,
            )

    def test_dependent_rows_rejected(self):
        with pytest.raises(ValueError, match="dependent"):
            BoundarySpec(
                alpha=((1.0, 2.0, 0.0), (2.0, 4.0, 0.0)),
                left_values=(0.0, 0.0),
                beta=(1.0, 0.0, 0.0),
                right_value=0.0,
            )

    def test_wrong_row_width_rejected(self):
        with pytest.raises(ValueError):
            BoundarySpec(
                alpha=((1.0, 0.0), (0.0, 1.0)),
                left_values=(0.0, 0.0),
                beta=(1.0, 0.0, 0.0),
                right_value=0.0,
            )


class TestDMatrix:
    def test_conjugate_analytic_entries(self):
        b = 8
        op = FracOperator.constant(0.0, 1.5, b)
        basis = homogeneous_basis(op, analytic=True)
        d = assemble_d(basis, BoundarySpec.conjugate(), op)
        expected = np.array([
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 1.0],
            [1.0, float(b), taylor_monomial(b, 1.5)],
        ])
        assert np.max(np.abs(d.entries - expected)) < 1e-12

    def test_conjugate_determinant_hand_expansion(self):
        for b in range(4, 21):
            op = FracOperator.constant(0.0, 1.5, b)
            d = assemble_d(homogeneous_basis(op, analytic=True), BoundarySpec.conjugate(), op)
            expected = taylor_monomial(b, 1.5) - b
            assert d.det == pytest.approx(expected, rel=1e-12)
            assert not d.is_near_singular()

    def test_numeric_basis_top_rows_are_alpha_rows(self, rng):
        # identity initial data makes row i of D equal alpha row i
        op = random_operator(rng, 0.0, 1.5, 9)
        basis = homogeneous_basis(op)
        spec = BoundarySpec(
            alpha=((1.0, 2.0, -1.0), (0.5, 0.0, 3.0)),
            left_values=(0.0, 0.0),
            beta=(1.0, 1.0, 0.0),
            right_value=0.0,
        )
        d = assemble_d(basis, spec, op)
        assert np.max(np.abs(d.entries[:2] - np.array(spec.alpha))) < 1e-12

    def test_zero_basis_column_kills_determinant(self, rng):
        op = random_operator(rng, 0.0, 1.5, 9)
        basis = list(homogeneous_basis(op))
        basis[1] = GridFunction(basis[1].grid, (0.0,) * len(basis[1].grid))
        d = assemble_d(basis, BoundarySpec.conjugate(), op)
        assert d.det == 0.0
        assert d.is_near_singular()


class TestSolveBvp:
    def test_zero_data_gives_trivial_solution(self, rng):
        op = random_operator(rng, 0.0, 1.5, 10)
        x = solve_bvp(op, zero_forcing(op), BoundarySpec.conjugate())
        assert max(abs(v) for v in x.values) < 1e-12

    def test_boundary_residuals_on_random_instances(self, rng):
        for trial in range(8):
            op = random_operator(rng, 0.0, 1.5, 12)
            h = random_forcing(rng, op)
            spec = BoundarySpec.conjugate(*rng.uniform(-1, 1, 3))
            x = solve_bvp(op, h, spec)
            assert residual(op, x, h) < 1e-8
            for i in range(2):
                assert left_bc_eval(x, spec.alpha[i], 0.0) == pytest.approx(
                    spec.left_values[i], abs=1e-9
                )
            assert right_bc_eval(x, spec.beta, 12.0) == pytest.approx(
                spec.right_value, abs=1e-9
            )

    def test_general_left_rows(self, rng):
        op = random_operator(rng, 0.0, 1.5, 11)
        h = random_forcing(rng, op)
        spec = BoundarySpec(
            alpha=((1.0, -1.0, 0.5), (0.0, 2.0, 1.0)),
            left_values=(0.3, -0.7),
            beta=(1.0, 0.5, 0.0),
            right_value=0.9,
        )
        x = solve_bvp(op, h, spec)
        assert residual(op, x, h) < 1e-8
        assert left_bc_eval(x, spec.alpha[0], 0.0) == pytest.approx(0.3, abs=1e-9)
        assert left_bc_eval(x, spec.alpha[1], 0.0) == pytest.approx(-0.7, abs=1e-9)
        assert right_bc_eval(x, spec.beta, 11.0) == pytest.approx(0.9, abs=1e-9)

    def test_invariant_under_basis_scaling(self, rng):
        op = random_operator(rng, 0.0, 1.5, 10)
        h = random_forcing(rng, op)
        spec = BoundarySpec.conjugate(0.1, -0.2, 0.3)
        basis = homogeneous_basis(op)
        scaled = tuple(
            GridFunction(x.grid, tuple(c * v for v in x.values))
            for c, x in zip((2.0, -0.5, 10.0), basis)
        )
        x1 = solve_bvp(op, h, spec, basis)
        x2 = solve_bvp(op, h, spec, scaled)
        assert max_gap(x1, x2) < 1e-9

    def test_invariant_under_basis_recombination(self, rng):
        op = random_operator(rng, 0.0, 1.5, 10)
        h = random_forcing(rng, op)
        spec = BoundarySpec.conjugate(0.1, -0.2, 0.3)
        basis = homogeneous_basis(op)
        mix = np.array([[1.0, 1.0, 0.0], [0.0, 1.0, -2.0], [1.0, 0.0, 1.0]])
        recombined = tuple(
            GridFunction(
                basis[0].grid,
                tuple(
                    sum(mix[j, i] * basis[j].at(k) for j in range(3))
                    for k in basis[0].grid.offsets()
                ),
            )
            for i in range(3)
        )
        x1 = solve_bvp(op, h, spec, basis)
        x2 = solve_bvp(op, h, spec, recombined)
        assert max_gap(x1, x2) < 1e-9

    def test_singular_basis_raises_near_singular(self, rng):
        op = random_operator(rng, 0.0, 1.5, 10)
        basis = homogeneous_basis(op)
        with pytest.raises(NearSingularError):
            solve_bvp(op, zero_forcing(op), BoundarySpec.conjugate(),
                      (basis[0], basis[0], basis[2]))

    def test_nontrivial_homogeneous_solutions_iff_singular_d(self, rng):
        # nullspace probe: det(D) = 0 exactly when some basis combination
        # satisfies the homogeneous boundary conditions nontrivially
        op = random_operator(rng, 0.0, 1.5, 10)
        basis = homogeneous_basis(op)
        spec = BoundarySpec.conjugate()
        d = assemble_d(basis, spec, op)
        _, svals, _ = np.linalg.svd(d.entries)
        assert (abs(d.det) < 1e-10) == (svals[-1] < 1e-10)
