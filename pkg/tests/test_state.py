import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from qcomplement import (
    DimensionMismatch,
    NotHermitian,
    NotPositive,
    TraceNotOne,
    bell_state,
    ket_density,
    maximally_mixed,
    partial_trace,
    product_ket,
    purify,
    tensor_product,
    validate_density,
    von_neumann_entropy,
)
from qcomplement.errors import BadSubsystemIndex
from qcomplement.ensembles import sample_haar_unitary, sample_mixed_state

from conftest import naive_partial_trace, random_density


class TestValidate:
    def test_maximally_mixed(self):
        rho = validate_density(np.eye(2) / 2)
        assert rho.dims == (2,)

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            validate_density([[0.5, 0.6], [0.1, 0.5]])

    def test_not_positive_reports_eigenvalue(self):
        with pytest.raises(NotPositive) as exc:
            validate_density(np.diag([1.2, -0.2]))
        assert exc.value.min_eigenvalue == pytest.approx(-0.2)

    def test_trace(self):
        with pytest.raises(TraceNotOne):
            validate_density(np.eye(2))

    def test_layout_mismatch(self):
        with pytest.raises(DimensionMismatch):
            validate_density(np.eye(4) / 4, (2, 3))

    def test_stored_matrix_is_read_only(self):
        rho = maximally_mixed(2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1


class TestEntropy:
    def test_pure(self):
        psi = np.array([1, 1j]) / np.sqrt(2)
        assert von_neumann_entropy(ket_density(psi)) == pytest.approx(0, abs=1e-12)

    def test_maximally_mixed_qubit(self):
        assert von_neumann_entropy(maximally_mixed(2)) == pytest.approx(1.0, abs=1e-12)

    def test_three_quarters(self):
        # two-term Shannon formula, evaluated with math only
        expected = -(0.75 * math.log2(0.75) + 0.25 * math.log2(0.25))
        assert expected == pytest.approx(2 - 0.75 * math.log2(3), abs=1e-15)
        assert von_neumann_entropy(validate_density(np.diag([0.75, 0.25]))) == pytest.approx(expected, abs=1e-12)
        assert expected == pytest.approx(0.811278124459, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_bounds(self, d):
        rng = np.random.default_rng(d)
        for _ in range(50):
            s = von_neumann_entropy(validate_density(random_density(rng, d)))
            assert -1e-12 <= s <= math.log2(d) + 1e-9

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 4), st.integers(0, 2**32 - 1))
    def test_unitary_invariance(self, d, seed):
        rho = sample_mixed_state((d,), seed)
        u = sample_haar_unitary(d, seed + 1)
        rotated = validate_density(u @ rho.matrix @ u.conj().T)
        assert von_neumann_entropy(rotated) == pytest.approx(von_neumann_entropy(rho), abs=1e-9)


class TestTensorAndTrace:
    def test_tensor_of_mixed(self):
        t = tensor_product(maximally_mixed(2), maximally_mixed(2))
        assert t.dims == (2, 2)
        assert_allclose(t.matrix, np.eye(4) / 4)

    def test_tensor_kets(self):
        t = tensor_product(product_ket((0, 2)), product_ket((1, 2)))
        expected = np.zeros((4, 4))
        expected[1, 1] = 1
        assert_allclose(t.matrix, expected)

    def test_tensor_block_diagonal(self):
        p = 0.3
        sigma = validate_density([[0.6, 0.2j], [-0.2j, 0.4]])
        t = tensor_product(validate_density(np.diag([p, 1 - p])), sigma)
        assert_allclose(t.matrix[:2, :2], p * sigma.matrix)
        assert_allclose(t.matrix[2:, 2:], (1 - p) * sigma.matrix)
        assert_allclose(t.matrix[:2, 2:], 0)

    def test_bell_marginal(self):
        bell = bell_state()
        # oracle: explicit index contraction
        assert_allclose(naive_partial_trace(bell.matrix, (2, 2), [1]), np.eye(2) / 2, atol=1e-15)
        assert_allclose(partial_trace(bell, [1]).matrix, np.eye(2) / 2, atol=1e-15)

    def test_product_marginal(self):
        rng = np.random.default_rng(3)
        ra, rb = validate_density(random_density(rng, 2)), validate_density(random_density(rng, 3))
        assert_allclose(partial_trace(tensor_product(ra, rb), [0]).matrix, ra.matrix, atol=1e-14)
        assert_allclose(partial_trace(tensor_product(ra, rb), [1]).matrix, rb.matrix, atol=1e-14)

    def test_all_but_one(self):
        rho = product_ket((0, 2), (0, 2), (0, 2))
        assert_allclose(partial_trace(rho, [2]).matrix, np.diag([1, 0]))

    @pytest.mark.parametrize("dims,keep", [((2, 3), [0]), ((2, 3), [1]), ((2, 2, 2), [0, 2]),
                                           ((3, 2, 2), [1]), ((2, 3, 2), [2, 0])])
    def test_matches_naive_contraction(self, dims, keep):
        rng = np.random.default_rng(sum(dims))
        rho = validate_density(random_density(rng, int(np.prod(dims))), dims)
        reduced = partial_trace(rho, keep)
        assert_allclose(reduced.matrix, naive_partial_trace(rho.matrix, dims, keep), atol=1e-13)
        assert reduced.dims == tuple(dims[i] for i in sorted(keep))
        assert abs(np.trace(reduced.matrix) - 1) < 1e-10
        validate_density(reduced.matrix, reduced.dims)

    def test_bad_index(self):
        with pytest.raises(BadSubsystemIndex):
            partial_trace(bell_state(), [2])


class TestPurify:
    def test_maximally_mixed(self):
        psi = purify(maximally_mixed(2))
        assert psi.dims == (2, 2)
        assert_allclose(np.abs(psi.amplitudes) ** 2, [0.5, 0, 0, 0.5], atol=1e-15)
        assert_allclose(partial_trace(psi.density(), [0]).matrix, np.eye(2) / 2, atol=1e-12)

    def test_pure_input(self):
        v = np.array([0.6, 0.8j])
        psi = purify(ket_density(v))
        assert_allclose(partial_trace(psi.density(), [0]).matrix, np.outer(v, v.conj()), atol=1e-12)
        assert_allclose(partial_trace(psi.density(), [1]).matrix, np.diag([1, 0]), atol=1e-12)

    def test_three_quarters(self):
        psi = purify(validate_density(np.diag([0.75, 0.25])))
        assert_allclose(psi.amplitudes, [np.sqrt(0.75), 0, 0, np.sqrt(0.25)], atol=1e-15)
        assert_allclose(partial_trace(psi.density(), [0]).matrix, np.diag([0.75, 0.25]), atol=1e-10)

    def test_round_trip(self):
        for d in (2, 3, 4):
            for seed in range(200):
                rho = sample_mixed_state((d,), seed)
                psi = purify(rho)
                assert abs(np.linalg.norm(psi.amplitudes) - 1) < 1e-12
                back = partial_trace(psi.density(), [0])
                assert np.max(np.abs(back.matrix - rho.matrix)) <= 1e-10

    def test_multipartite_layout(self):
        rho = sample_mixed_state((2, 2), 5)
        psi = purify(rho)
        assert psi.dims == (2, 2, 4)
        assert_allclose(partial_trace(psi.density(), [0, 1]).matrix, rho.matrix, atol=1e-10)

    def test_deterministic(self):
        rho = sample_mixed_state((3,), 11)
        assert purify(rho).amplitudes.tobytes() == purify(rho).amplitudes.tobytes()


def test_subadditivity_step():
    # S(ABC) - S(BC) <= S(AB) - S(B) (strong subadditivity form)
    for seed in range(200):
        rho = sample_mixed_state((2, 2, 2), seed)
        s = von_neumann_entropy
        lhs = s(rho) - s(partial_trace(rho, [1, 2]))
        rhs = s(partial_trace(rho, [0, 1])) - s(partial_trace(rho, [1]))
        assert lhs <= rhs + 1e-9
