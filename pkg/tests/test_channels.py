"""Channels: superoperators, Jamiolkowski states, reshuffling, verdicts."""

import json
import math

import numpy as np
import pytest

import oracles
from geodiscord.linalg import DimensionMismatch, reshuffle
from geodiscord.channels import (
    INCONCLUSIVE,
    NOT_QUANTUMNESS_BREAKING,
    QUANTUMNESS_BREAKING,
    CovarianceMatrixM,
    MarginalsNotMaximallyMixed,
    NotTracePreserving,
    QuantumChannel,
    channel_from_json,
    channel_to_json,
    covariance_matrix_m,
    depolarizing_channel,
    hs_discord_covariance,
    hs_discord_lower_bound,
    hs_discord_mm_marginals,
    identity_channel,
    jamiolkowski_state,
    measure_z_channel,
    quantumness_breaking_verdict,
    random_channel,
    reshuffled_max_singular_value,
    superoperator,
    unitary_channel,
)
from geodiscord.measures import hs_geo_discord_closed
from geodiscord.states import (
    DensityMatrix,
    bell_state,
    bell_vector,
    random_haar_state,
    random_haar_unitary,
)


def bell_diagonal(weights) -> DensityMatrix:
    mat = np.zeros((4, 4), dtype=complex)
    for w, label in zip(weights, ("phi+", "phi-", "psi+", "psi-")):
        v = bell_vector(label)
        mat += w * np.outer(v, v.conj())
    return DensityMatrix(2, 2, mat)


class TestQuantumChannel:
    def test_trace_preservation_enforced(self):
        with pytest.raises(NotTracePreserving):
            QuantumChannel(2, 2, (np.eye(2) * 0.5,))

    def test_kraus_shape_enforced(self):
        with pytest.raises(DimensionMismatch):
            QuantumChannel(2, 3, (np.eye(2),))

    def test_apply_preserves_trace_and_positivity(self):
        phi = random_channel(2, kraus_count=3, seed=5)
        rho = random_haar_state(1, 2, rank=2, seed=6).mat
        out = phi.apply(rho)
        assert np.trace(out).real == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.eigvalsh(out).min() >= -1e-12

    def test_constructors(self):
        assert len(identity_channel(3).kraus) == 1
        assert len(depolarizing_channel(2).kraus) == 4
        assert len(measure_z_channel().kraus) == 2
        u = random_haar_unitary(2, 7)
        phi = unitary_channel(u)
        rho = random_haar_state(1, 2, rank=2, seed=8).mat
        assert np.allclose(phi.apply(rho), u @ rho @ u.conj().T)

    def test_depolarizing_sends_everything_to_identity(self):
        phi = depolarizing_channel(3)
        rho = random_haar_state(1, 3, rank=3, seed=9).mat
        assert np.allclose(phi.apply(rho), np.eye(3) / 3.0, atol=1e-12)

    def test_random_channel_is_tp(self):
        for k in (1, 2, 4):
            phi = random_channel(3, kraus_count=k, seed=k)
            total = sum(m.conj().T @ m for m in phi.kraus)
            assert np.allclose(total, np.eye(3), atol=1e-10)


class TestSuperoperatorAndJamiolkowski:
    def test_superoperator_matches_reference(self):
        phi = random_channel(2, kraus_count=3, seed=11)
        assert np.allclose(
            superoperator(phi), oracles.ref_superoperator(list(phi.kraus))
        )

    def test_superoperator_acts_by_vectorization(self):
        phi = random_channel(2, kraus_count=2, seed=12)
        rho = random_haar_state(1, 2, rank=2, seed=13).mat
        vec_out = superoperator(phi) @ rho.reshape(-1)
        assert np.allclose(vec_out.reshape(2, 2), phi.apply(rho), atol=1e-12)

    def test_jamiolkowski_of_identity_is_bell(self):
        jam = jamiolkowski_state(identity_channel(2))
        assert np.allclose(jam.mat, bell_state("phi+").mat, atol=1e-12)

    def test_jamiolkowski_of_depolarizing_is_maximally_mixed(self):
        jam = jamiolkowski_state(depolarizing_channel(2))
        assert np.allclose(jam.mat, np.eye(4) / 4.0, atol=1e-12)

    @pytest.mark.parametrize("n,kraus_count", [(2, 1), (2, 3), (3, 2), (3, 5)])
    def test_reshuffled_superoperator_is_scaled_jamiolkowski(self, n, kraus_count):
        phi = random_channel(n, kraus_count=kraus_count, seed=[n, kraus_count])
        lhs = reshuffle(superoperator(phi), n, n)
        rhs = n * jamiolkowski_state(phi).mat
        assert np.max(np.abs(lhs - rhs)) < 1e-12


class TestReshuffledStateBounds:
    def test_lower_bound_never_exceeds_discord(self):
        for k in range(4):
            rho = random_haar_state(2, 2, rank=k + 1, seed=[k, 20])
            assert hs_discord_lower_bound(rho) <= hs_geo_discord_closed(rho) + 1e-9

    def test_lower_bound_tight_on_bell_diagonal(self):
        rho = bell_diagonal([0.4, 0.3, 0.2, 0.1])
        assert hs_discord_lower_bound(rho) == pytest.approx(
            hs_geo_discord_closed(rho), abs=1e-10
        )

    def test_covariance_route_matches_closed_form(self):
        for k in range(4):
            rho = random_haar_state(2, 2, rank=k + 1, seed=[k, 21])
            assert hs_discord_covariance(rho) == pytest.approx(
                hs_geo_discord_closed(rho), abs=1e-10
            )

    def test_covariance_route_qubit_qutrit(self):
        rho = random_haar_state(2, 3, rank=4, seed=22)
        assert hs_discord_covariance(rho) == pytest.approx(
            hs_geo_discord_closed(rho), abs=1e-10
        )

    def test_covariance_matrix_shares_reshuffled_singular_values(self):
        rho = random_haar_state(2, 2, rank=3, seed=23)
        m = covariance_matrix_m(rho)
        resh_sv = np.linalg.svd(
            reshuffle(rho.mat, 2, 2), compute_uv=False
        )
        assert np.allclose(m.singular_values(), np.sort(resh_sv)[::-1], atol=1e-10)
        assert m.m_tilde.shape == (3, 4)

    def test_mm_marginals_route(self):
        rho = bell_diagonal([0.35, 0.25, 0.25, 0.15])
        got = hs_discord_mm_marginals(rho)
        assert got == pytest.approx(hs_geo_discord_closed(rho), abs=1e-10)
        assert reshuffled_max_singular_value(rho) == pytest.approx(0.5, abs=1e-12)

    def test_mm_marginals_route_rejects_generic_state(self):
        rho = random_haar_state(2, 2, rank=2, seed=24)
        with pytest.raises(MarginalsNotMaximallyMixed):
            hs_discord_mm_marginals(rho)


class TestVerdicts:
    def test_identity_is_not_quantumness_breaking(self):
        v = quantumness_breaking_verdict(identity_channel(2))
        assert v.status == NOT_QUANTUMNESS_BREAKING
        assert v.jamiolkowski_discord > 0.1

    def test_depolarizing_is_quantumness_breaking(self):
        v = quantumness_breaking_verdict(depolarizing_channel(2))
        assert v.status == QUANTUMNESS_BREAKING
        assert v.jamiolkowski_discord == pytest.approx(0.0, abs=1e-9)
        assert v.superoperator_rank == 1

    def test_measure_z_is_quantumness_breaking(self):
        v = quantumness_breaking_verdict(measure_z_channel())
        assert v.status == QUANTUMNESS_BREAKING
        assert v.superoperator_rank <= 2

    def test_unitary_is_not_quantumness_breaking(self):
        v = quantumness_breaking_verdict(unitary_channel(random_haar_unitary(2, 30)))
        assert v.status == NOT_QUANTUMNESS_BREAKING

    def test_rank_fields_populated(self):
        v = quantumness_breaking_verdict(random_channel(2, kraus_count=3, seed=31))
        assert v.superoperator_rank >= 1
        assert v.residual_lower_bound >= 0.0
        assert v.status in {
            QUANTUMNESS_BREAKING, NOT_QUANTUMNESS_BREAKING, INCONCLUSIVE,
        }

    def test_qutrit_depolarizing_breaks_quantumness(self):
        v = quantumness_breaking_verdict(depolarizing_channel(3))
        assert v.status == QUANTUMNESS_BREAKING


class TestChannelSerialization:
    def test_round_trip(self):
        phi = random_channel(2, kraus_count=3, seed=40)
        back = channel_from_json(channel_to_json(phi))
        assert back.n_in == phi.n_in and back.n_out == phi.n_out
        for a, b in zip(back.kraus, phi.kraus):
            assert np.allclose(a, b, atol=0.0)

    def test_payload_shape(self):
        payload = json.loads(channel_to_json(measure_z_channel()))
        assert payload["n_in"] == 2 and payload["n_out"] == 2
        assert len(payload["kraus"]) == 2
        assert set(payload["kraus"][0]) == {"re", "im"}
