import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqsphere import (BudgetError, PackingMatrix, PointwiseMatrix,
                      SingularMatrixError, compose_transforms,
                      enumerate_packings, jacobi_formula_check, packing_count,
                      packing_multiplicity, transform_coefficients,
                      transform_index_form)


class TestPackings:
    def test_single_row(self):
        out = enumerate_packings((2,))
        assert out == [PackingMatrix(((2,),))]
        assert out[0].col_sums == (2,)

    def test_sparse_rows(self):
        out = enumerate_packings((1, 0))
        assert [m.entries for m in out] == [((0, 1), (0, 0)), ((1, 0), (0, 0))]
        assert sorted(m.col_sums for m in out) == [(0, 1), (1, 0)]

    def test_count_matches_enumeration(self):
        q = (2, 1)
        out = enumerate_packings(q)
        assert len(out) == 6
        assert packing_count(q) == 6
        assert all(m.row_sums == q for m in out)

    def test_budget(self):
        with pytest.raises(BudgetError):
            enumerate_packings((10, 10, 10, 10, 10), max_count=1000)

    def test_multiplicities_sum_to_assignments(self):
        # the packings of row sums q classify the k^{|q|} ordered assignments
        for q in ((2, 1), (1, 1, 2), (3,)):
            k = len(q)
            total = sum(packing_multiplicity(m) for m in enumerate_packings(q))
            assert total == k ** sum(q)

    def test_multiplicity_counts_raw_terms(self):
        # brute count of ordered index assignments falling onto each packing
        q = (2, 1)
        k = 2
        idx = [i for i, qi in enumerate(q) for _ in range(qi)]
        counts = {}
        for js in product(range(k), repeat=len(idx)):
            r = [[0] * k for _ in range(k)]
            for i, j in zip(idx, js):
                r[i][j] += 1
            key = tuple(tuple(row) for row in r)
            counts[key] = counts.get(key, 0) + 1
        for m in enumerate_packings(q):
            assert counts.get(m.entries, 0) == packing_multiplicity(m)


class TestTransformCoefficients:
    def test_zero_orders_give_determinant(self):
        beta = PointwiseMatrix(np.array([[2.0, 1.0], [0.5, 1.0]]))
        out = transform_coefficients(beta, (0, 0))
        assert out == {(0, 0): pytest.approx(1.5)}

    @pytest.mark.parametrize("m", range(6))
    @pytest.mark.parametrize("c", [0.5, 2.0, 3.7])
    def test_scaling_identity_exact(self, m, c):
        out = transform_coefficients(PointwiseMatrix(np.array([[1.0 / c]])), (m,))
        assert out[(m,)] == pytest.approx((1.0 / c) ** (m + 1), rel=1e-13, abs=0.0)

    def test_shear_example(self):
        beta = PointwiseMatrix(np.array([[1.0, 1.0], [0.0, 1.0]]))
        out = transform_coefficients(beta, (1, 1))
        assert out == {(0, 2): 1.0, (1, 1): 1.0, (2, 0): 0.0}

    def test_identity_matrix(self):
        beta = PointwiseMatrix(np.eye(3))
        out = transform_coefficients(beta, (1, 2, 0))
        nonzero = {k: v for k, v in out.items() if v != 0.0}
        assert nonzero == {(1, 2, 0): 1.0}

    def test_order_conservation(self):
        rng = np.random.default_rng(3)
        beta = PointwiseMatrix(rng.normal(size=(3, 3)) + 2 * np.eye(3))
        out = transform_coefficients(beta, (2, 1, 1))
        assert all(sum(p) == 4 for p in out)

    def test_lexicographic_key_order(self):
        beta = PointwiseMatrix(np.array([[1.0, 0.5], [0.5, 1.0]]))
        keys = list(transform_coefficients(beta, (2, 0)))
        assert keys == sorted(keys)

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            transform_coefficients(PointwiseMatrix(np.ones((2, 2))), (1, 0))


class TestIndexForm:
    def test_empty_contraction(self):
        beta = PointwiseMatrix(np.array([[1.0, 2.0], [0.0, 1.0]]))
        assert transform_index_form(beta, []) == {(0, 0): 1.0}

    def test_single_index(self):
        beta = PointwiseMatrix(np.array([[1.2, -0.7], [0.4, 0.9]]))
        det = beta.det()
        out = transform_index_form(beta, [0])
        assert out[(1, 0)] == pytest.approx(det * 1.2)
        assert out[(0, 1)] == pytest.approx(det * -0.7)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 3), st.integers(0, 4), st.integers(0, 10**9))
    def test_grouping_reproduces_coefficients(self, k, total, seed):
        rng = np.random.default_rng(seed)
        b = rng.normal(size=(k, k))
        if abs(np.linalg.det(b)) < 1e-2:
            b += 2.0 * np.eye(k)
        beta = PointwiseMatrix(b)
        splits = sorted(rng.integers(0, total + 1, size=k - 1).tolist()) if k > 1 else []
        q = tuple(b2 - a2 for a2, b2 in zip([0] + splits, splits + [total]))
        direct = transform_coefficients(beta, q)
        idx = [i for i, qi in enumerate(q) for _ in range(qi)]
        grouped = transform_index_form(beta, idx)
        for key in set(direct) | set(grouped):
            d = direct.get(key, 0.0)
            g = grouped.get(key, 0.0)
            assert abs(d - g) <= 1e-12 * max(1.0, abs(d))


class TestJacobiFormula:
    def test_constant_matrix(self):
        k = 2
        b = np.array([[2.0, 0.3], [0.1, 1.5]])
        beta = PointwiseMatrix(b, np.zeros((k, k, 1)))
        res = jacobi_formula_check(beta, np.linalg.inv(b), [b], [b], 1e-5)
        assert res < 1e-14

    def test_linear_diagonal_case(self):
        # beta(x) = [[1+x, 0], [0, 1]] at x = 0: d det/dx = 1 both ways
        h = 1e-5
        b0 = np.eye(2)
        derivs = np.zeros((2, 2, 1))
        derivs[0, 0, 0] = 1.0
        plus = [np.array([[1 + h, 0.0], [0.0, 1.0]])]
        minus = [np.array([[1 - h, 0.0], [0.0, 1.0]])]
        res = jacobi_formula_check(PointwiseMatrix(b0, derivs), np.eye(2),
                                   plus, minus, h)
        # the difference quotient itself carries ~eps/2h of rounding noise
        assert res < 1e-10

    def test_random_polynomial_battery(self):
        rng = np.random.default_rng(11)
        h = 1e-5
        for _ in range(8):
            k = 3
            c0 = rng.normal(size=(k, k)) + 2.0 * np.eye(k)
            c1 = rng.normal(size=(k, k, 2))
            c2 = rng.normal(size=(k, k, 2))

            def beta_at(xv):
                out = c0.copy()
                for m in range(2):
                    out += c1[:, :, m] * xv[m] + c2[:, :, m] * xv[m] ** 2
                return out

            x0 = 0.2 * rng.normal(size=2)
            b0 = beta_at(x0)
            derivs = np.stack([c1[:, :, m] + 2 * c2[:, :, m] * x0[m]
                               for m in range(2)], axis=2)
            plus = [beta_at(x0 + h * np.eye(2)[m]) for m in range(2)]
            minus = [beta_at(x0 - h * np.eye(2)[m]) for m in range(2)]
            res = jacobi_formula_check(PointwiseMatrix(b0, derivs),
                                       np.linalg.inv(b0), plus, minus, h)
            assert res < 1e-8

    def test_inconsistent_inverse_rejected(self):
        b = np.eye(2)
        beta = PointwiseMatrix(b, np.zeros((2, 2, 1)))
        with pytest.raises(ValueError):
            jacobi_formula_check(beta, 2 * np.eye(2), [b], [b], 1e-5)

    def test_requires_derivatives(self):
        beta = PointwiseMatrix(np.eye(2))
        with pytest.raises(ValueError):
            jacobi_formula_check(beta, np.eye(2), [np.eye(2)], [np.eye(2)], 1e-5)


class TestComposition:
    def test_identity_second_factor(self):
        beta = PointwiseMatrix(np.array([[1.1, 0.2], [-0.3, 0.8]]))
        ident = PointwiseMatrix(np.eye(2))
        assert compose_transforms(beta, ident, (1, 1)) == pytest.approx(
            transform_coefficients(beta, (1, 1)))

    def test_scalar_composition(self):
        for m in range(4):
            a, b = 0.7, 1.9
            composed = compose_transforms(PointwiseMatrix(np.array([[a]])),
                                          PointwiseMatrix(np.array([[b]])), (m,))
            assert composed[(m,)] == pytest.approx((a * b) ** (m + 1))

    def test_matches_matrix_product(self):
        rng = np.random.default_rng(5)
        for _ in range(6):
            b1 = PointwiseMatrix(rng.normal(size=(2, 2)) + np.eye(2))
            b2 = PointwiseMatrix(rng.normal(size=(2, 2)) + np.eye(2))
            composed = compose_transforms(b1, b2, (2, 1))
            direct = transform_coefficients(
                PointwiseMatrix(b1.entries @ b2.entries), (2, 1))
            for key in set(composed) | set(direct):
                assert abs(composed.get(key, 0.0) - direct.get(key, 0.0)) \
                    <= 1e-12 * max(1.0, abs(direct.get(key, 0.0)))
