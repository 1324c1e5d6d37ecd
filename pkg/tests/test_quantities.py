import numpy as np
import pytest
from numpy.testing import assert_allclose

from qcomplement import (
    bell_state,
    conditional_entropy,
    dephase,
    ket_density,
    maximally_mixed,
    post_measurement_conditional_entropy,
    product_ket,
    rel_entropy_coherence,
    signals_entanglement,
    tensor_product,
    thermal_discord,
    thermal_discord_identity,
    validate_density,
    von_neumann_entropy,
)
from qcomplement.ensembles import sample_measurement, sample_mixed_state

PLUS = np.array([1, 1]) / np.sqrt(2)


class TestCoherence:
    def test_maximally_mixed_any_basis(self, zxy):
        for m in zxy + [sample_measurement(2, s) for s in range(10)]:
            assert rel_entropy_coherence(maximally_mixed(2), m) == pytest.approx(0, abs=1e-12)

    def test_plus_in_z(self, zxy):
        assert rel_entropy_coherence(ket_density(PLUS), zxy[0]) == pytest.approx(1.0, abs=1e-12)

    def test_incoherent(self, zxy):
        assert rel_entropy_coherence(validate_density(np.diag([0.9, 0.1])), zxy[0]) == 0.0

    def test_zero_iff_fixed_point(self):
        for seed in range(50):
            rho = sample_mixed_state((3,), seed)
            m = sample_measurement(3, seed + 1)
            c = rel_entropy_coherence(rho, m)
            assert c >= 0
            fixed = np.max(np.abs(dephase(rho, m).matrix - rho.matrix)) <= 1e-9
            assert (c <= 1e-9) == fixed


class TestConditionalEntropy:
    def test_bell(self):
        assert conditional_entropy(bell_state(), [1]) == pytest.approx(-1.0, abs=1e-12)
        assert signals_entanglement(bell_state(), [1])

    def test_product(self):
        ra, rb = sample_mixed_state((2,), 0), sample_mixed_state((3,), 1)
        assert conditional_entropy(tensor_product(ra, rb), [1]) == pytest.approx(von_neumann_entropy(ra), abs=1e-12)

    def test_classical_correlated(self):
        rho = validate_density(np.diag([0.5, 0, 0, 0.5]), (2, 2))
        assert conditional_entropy(rho, [1]) == pytest.approx(0.0, abs=1e-12)
        assert not signals_entanglement(rho, [1])


class TestPostMeasurementConditional:
    def test_bell_z(self, zxy):
        assert post_measurement_conditional_entropy(bell_state(), zxy[0], 0, [1]) == pytest.approx(0, abs=1e-12)

    def test_zero_x(self, zxy):
        assert post_measurement_conditional_entropy(product_ket((0, 2), (0, 2)), zxy[1], 0, [1]) == \
            pytest.approx(1.0, abs=1e-12)

    def test_product_decouples(self):
        ra, rb = sample_mixed_state((2,), 4), sample_mixed_state((2,), 5)
        m = sample_measurement(2, 6)
        assert post_measurement_conditional_entropy(tensor_product(ra, rb), m, 0, [1]) == \
            pytest.approx(von_neumann_entropy(dephase(ra, m)), abs=1e-12)

    def test_non_negative(self):
        for seed in range(100):
            rho = sample_mixed_state((2, 3), seed)
            m = sample_measurement(2, seed)
            assert post_measurement_conditional_entropy(rho, m, 0, [1], clamp=False) >= -1e-9


class TestDiscord:
    def test_bell_z(self, zxy):
        br = thermal_discord(bell_state(), zxy[0], 0)
        assert br.avg_conditional_entropy == pytest.approx(0, abs=1e-12)
        assert br.post_meas_marginal_entropy == pytest.approx(1, abs=1e-12)
        assert br.joint_entropy == pytest.approx(0, abs=1e-12)
        assert br.discord == pytest.approx(1, abs=1e-12)
        assert thermal_discord_identity(bell_state(), zxy[0], 0) == pytest.approx(1, abs=1e-12)

    def test_diagonal_product_in_eigenbasis(self, zxy):
        rho = tensor_product(validate_density(np.diag([0.8, 0.2])), validate_density(np.diag([0.4, 0.6])))
        assert thermal_discord(rho, zxy[0], 0).discord == pytest.approx(0, abs=1e-12)
        assert thermal_discord_identity(rho, zxy[0], 0) == pytest.approx(0, abs=1e-12)

    def test_breakdown_arithmetic(self):
        rho = sample_mixed_state((2, 2), 3)
        br = thermal_discord(rho, sample_measurement(2, 3), 0, clamp=False)
        assert br.discord == br.avg_conditional_entropy + br.post_meas_marginal_entropy - br.joint_entropy

    def test_identity_sweep(self):
        for seed in range(200):
            rho = sample_mixed_state((2, 2), seed)
            m = sample_measurement(2, 10_000 + seed)
            d = thermal_discord(rho, m, 0, clamp=False).discord
            assert d >= -1e-9
            assert abs(d - thermal_discord_identity(rho, m, 0, clamp=False)) <= 1e-9

    def test_measuring_second_party(self):
        for seed in range(20):
            rho = sample_mixed_state((3, 2), seed)
            m = sample_measurement(2, seed)
            assert thermal_discord(rho, m, 1).discord == pytest.approx(thermal_discord_identity(rho, m, 1), abs=1e-9)

    def test_composite_memory(self):
        for seed in range(20):
            rho = sample_mixed_state((2, 2, 2), seed)
            m = sample_measurement(2, seed)
            assert thermal_discord(rho, m, 1).discord == pytest.approx(thermal_discord_identity(rho, m, 1), abs=1e-9)

    def test_trivial_memory_reduces_to_coherence(self):
        for seed in range(100):
            ra = sample_mixed_state((2,), seed)
            rho = validate_density(ra.matrix, (2, 1))
            m = sample_measurement(2, seed + 1)
            assert thermal_discord(rho, m, 0).discord == pytest.approx(rel_entropy_coherence(ra, m), abs=1e-9)
            assert conditional_entropy(rho, [1]) == pytest.approx(von_neumann_entropy(ra), abs=1e-9)
