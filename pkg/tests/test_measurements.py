import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

import qinfo as q

from conftest import random_state

E0 = q.proj(q.ket(0, 3))
E1 = q.proj(q.ket(1, 3)) + q.proj(q.ket(2, 3))
RHO = q.proj((q.ket(0, 3) + q.ket(2, 3)) / np.sqrt(2))


def alpha_channel(alpha=0.3):
    k0 = np.array([[0, 0, np.sqrt(alpha)], [0, 1, 0], [0, 0, 0]], dtype=complex)
    k1 = np.array([[1, 0, 0], [0, 0, 0], [0, 0, np.sqrt(1 - alpha)]], dtype=complex)
    return q.KrausOperators([k0, k1])


def random_povm(d, n, rng):
    """Rank-one effects from the rows of a Haar unitary, grouped into n outcomes."""
    u = q.CUE(d).sample(rng)
    groups = np.array_split(np.arange(d), n)
    return [sum(np.outer(u[:, i], u[:, i].conj()) for i in g) for g in groups]


class TestPOVM:
    def test_reference_values(self):
        m = q.POVMMeasurement([E0, E1])
        assert (m.idim, m.odim) == (3, 2)
        assert q.ispovm(m)
        assert_allclose(m(RHO), np.diag([0.5, 0.5]), atol=1e-15)

    def test_output_exactly_diagonal(self, rng):
        m = q.POVMMeasurement(random_povm(4, 3, rng))
        out = m(random_state(4, rng))
        assert_array_equal(out - np.diag(np.diag(out)), 0)

    def test_probabilities_trace_oracle(self, rng):
        for _ in range(20):
            effects = random_povm(4, 3, rng)
            rho = random_state(4, rng)
            probs = q.POVMMeasurement(effects).probabilities(rho)
            assert_allclose(probs, [np.trace(rho @ e).real for e in effects], atol=1e-12)
            assert abs(probs.sum() - 1) < 1e-12

    def test_ispovm(self, rng):
        assert not q.ispovm([np.eye(2) / 2, np.eye(2) / 3])
        assert q.ispovm(random_povm(5, 5, rng))
        assert not q.ispovm([np.diag([1.5, 1.0]), np.diag([-0.5, 0.0])])

    @pytest.mark.parametrize("rep", ["kraus", "superoperator", "dynamical", "stinespring"])
    def test_conversions_preserve_action(self, rng, rep):
        m = q.POVMMeasurement(random_povm(3, 2, rng))
        conv = q.convert(m, rep)
        for _ in range(10):
            rho = random_state(3, rng)
            assert np.abs(conv(rho) - m(rho)).max() <= 1e-10
        assert q.iscptp(q.convert(m, "dynamical"))


class TestPostSelection:
    def test_reference_values(self):
        pm = q.PostSelectionMeasurement(E1)
        assert q.iseffect(pm)
        assert_allclose(pm(RHO), np.diag([0, 0, 0.5]), atol=1e-15)

    def test_composition_reference(self):
        pm = q.PostSelectionMeasurement(E1)
        assert_allclose((pm @ alpha_channel())(RHO), np.diag([0, 0, 0.35]), atol=1e-12)

    def test_identity_effect(self, rng):
        rho = random_state(3, rng)
        assert_allclose(q.PostSelectionMeasurement(np.eye(3))(rho), rho)

    def test_complete_measurement_sums_to_one(self, rng):
        effects = [q.proj(q.ket(i, 4)) for i in range(4)]
        for _ in range(20):
            rho = random_state(4, rng)
            total = sum(np.trace(q.PostSelectionMeasurement(e)(rho)).real for e in effects)
            assert abs(total - 1) <= 1e-10

    def test_single_effect_is_cptni(self):
        pm = q.PostSelectionMeasurement(E1)
        assert q.validate(pm) is q.ChannelClass.CPTNI

    def test_iseffect_rejects(self):
        assert not q.iseffect(2 * np.eye(2))
        assert not q.iseffect(np.array([[0, 1.1], [0, 0]]))
        # Only mu^dagger mu <= I is required, so a nilpotent contraction qualifies.
        assert q.iseffect(np.array([[0, 1], [0, 0]]))

    @pytest.mark.parametrize("rep", ["superoperator", "dynamical", "stinespring"])
    def test_conversions(self, rng, rep):
        pm = q.PostSelectionMeasurement(E1)
        rho = random_state(3, rng)
        assert np.abs(q.convert(pm, rep)(rho) - pm(rho)).max() <= 1e-12
