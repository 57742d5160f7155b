"""Benchmark problem setups: sources, exterior data, exact solutions."""

import math

import numpy as np
import pytest

from templap import (
    BoundarySpec,
    Grid,
    SchemeParams,
    assemble_operator,
    assemble_rhs,
    boundary_tail_load,
    dense_gauss_solve,
    example1_exact,
    example1_f,
    example2_setup,
    example3_exact,
    example3_setup,
    materialize_dense,
    reference_apply_operator,
)
from templap.problems import EXAMPLE2_SUPPORT, example2_extension


class TestProblem1:
    def test_requires_unit_interval(self):
        p = SchemeParams(beta=0.5, s=0, s1=0)
        with pytest.raises(ValueError):
            example1_f(p, Grid(0.0, 2.0, 7))

    def test_zero_exterior_means_plain_load(self):
        p = SchemeParams(beta=1.5, lam=3.0, s=1, s1=1)
        grid = Grid(0.0, 1.0, 31)
        f = example1_f(p, grid)
        F = assemble_rhs(f, BoundarySpec.zero(), p, grid)
        np.testing.assert_array_equal(F.values, f)

    @pytest.mark.parametrize("beta,lam,s,s1", [
        (0.5, 0.0, 0, 0), (0.5, 0.5, 1, 1), (1.0, 0.0, 1, 1),
        (1.0, 3.0, 0, 1), (1.5, 0.0, 0, 1),
    ])
    def test_solving_recovers_exact_solution(self, beta, lam, s, s1):
        p = SchemeParams(beta=beta, lam=lam, s=s, s1=s1)
        grid = Grid(0.0, 1.0, 127)
        op = assemble_operator(p, grid)
        U = dense_gauss_solve(materialize_dense(op), example1_f(p, grid))
        err = np.max(np.abs(U - example1_exact(grid.interior)))
        assert err < 5e-3  # coarse-grid sanity; rates are checked elsewhere


class TestProblem2:
    def test_extension_pieces(self):
        y = np.array([-0.6, -0.25, 0.0, 0.5, 1.0, 1.25, 1.6])
        vals = example2_extension(y)
        np.testing.assert_allclose(
            vals, [0.0, 0.5, 0.0, 0.0625, 0.0, 0.5, 0.0], atol=1e-15)

    def test_setup_contracts(self):
        p = SchemeParams(beta=0.5, lam=0.0, s=1, s1=1)
        grid = Grid(0.0, 1.0, 16)
        f, boundary, exact = example2_setup(p, grid)
        assert boundary.u_a == 0.0 and boundary.u_b == 0.0
        assert boundary.support == EXAMPLE2_SUPPORT
        x = grid.interior
        np.testing.assert_allclose(exact, (x - x * x) ** 2, rtol=1e-14)
        np.testing.assert_allclose(f, f[::-1], rtol=1e-12)  # symmetric data

    def test_source_matches_pointwise_reference(self):
        from templap.problems import example2_second_difference

        p = SchemeParams(beta=1.5, lam=3.0, s=1, s1=1)
        grid = Grid(0.0, 1.0, 16)
        f, _, _ = example2_setup(p, grid)
        for idx in (0, 7, 12):
            x = float(grid.interior[idx])
            exact_sd = reference_apply_operator(
                example2_extension, x, p, 0.0, 1.0, support=EXAMPLE2_SUPPORT,
                second_difference=example2_second_difference)
            generic = reference_apply_operator(
                example2_extension, x, p, 0.0, 1.0, support=EXAMPLE2_SUPPORT)
            assert f[idx] == pytest.approx(exact_sd, rel=1e-12)
            assert f[idx] == pytest.approx(generic, abs=2e-9)

    def test_exterior_loads_nonnegative(self):
        # Both exterior pieces are nonnegative, so the kernel-weighted loads are too.
        p = SchemeParams(beta=0.5, lam=0.0, s=0, s1=0)
        grid = Grid(0.0, 1.0, 16)
        _, boundary, _ = example2_setup(p, grid)
        for i in (1, 8, 16):
            d1, d2 = boundary_tail_load(i, boundary, p, grid)
            assert d1 >= 0.0 and d2 >= 0.0
            assert d1 + d2 > 0.0


class TestProblem3:
    def test_closed_form_values(self):
        assert example3_exact(1.0, 1.0, 0.0) == pytest.approx(1.0, rel=1e-13)
        assert example3_exact(0.5, 1.0, 1.0) == 0.0
        assert example3_exact(1.5, 2.0, -2.0) == 0.0
        # beta = 1, r = 1: u(x) = sqrt(1 - x^2)
        x = np.array([-0.5, 0.0, 0.25])
        np.testing.assert_allclose(example3_exact(1.0, 1.0, x), np.sqrt(1 - x * x),
                                   rtol=1e-13)

    def test_rejects_points_outside_domain(self):
        with pytest.raises(ValueError):
            example3_exact(0.5, 1.0, 1.5)

    def test_setup_exact_only_for_untempered(self):
        grid = Grid(-1.0, 1.0, 15)
        f0, b0, exact0 = example3_setup(SchemeParams(beta=0.5, lam=0.0, s=0, s1=0), grid)
        np.testing.assert_array_equal(f0, np.ones(15))
        assert b0.exterior_g is None
        assert exact0 is not None
        _, _, exact1 = example3_setup(SchemeParams(beta=0.5, lam=2.0, s=0, s1=0), grid)
        assert exact1 is None

    def test_normalization_required_for_convergence(self):
        # With the constant source fixed, only the normalized operator
        # converges to the closed form; dropping the constant leaves an O(1)
        # discrepancy.
        grid = Grid(-1.0, 1.0, 255)
        exact = example3_exact(0.5, 1.0, grid.interior)
        errs = {}
        for apply_cbeta in (True, False):
            p = SchemeParams(beta=0.5, lam=0.0, s=0, s1=0, apply_cbeta=apply_cbeta)
            op = assemble_operator(p, grid)
            U = dense_gauss_solve(materialize_dense(op), np.ones(grid.M))
            errs[apply_cbeta] = np.max(np.abs(U - exact))
        assert errs[True] < 0.1
        assert errs[False] > 0.5
