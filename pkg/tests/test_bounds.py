"""Scalar bound functions, the relation registry, and the audit driver."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geodiscord.bounds import (
    _CONJECTURE,
    _REGISTRY,
    MAX_QUBIT_DISCORD,
    BoundRecord,
    BoundReport,
    DomainError,
    audit,
    g,
    g_inv,
    h,
    pure_state_saturation_check,
)
from geodiscord.measures import OptimizerConfig, UnsupportedDimension
from geodiscord.states import bell_state, from_pure, random_haar_state, random_pure_vector


class TestScalarBounds:
    def test_anchor_values(self):
        assert g(0.0) == 0.0
        assert g(MAX_QUBIT_DISCORD) == pytest.approx(1.0, abs=1e-12)
        assert g_inv(0.0) == 0.0
        assert g_inv(1.0) == pytest.approx(MAX_QUBIT_DISCORD, abs=1e-12)
        assert h(0.0) == 0.0
        assert h(MAX_QUBIT_DISCORD) == pytest.approx(1.0, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0.0, MAX_QUBIT_DISCORD))
    def test_g_round_trip(self, d):
        assert g_inv(g(d)) == pytest.approx(d, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0.0, 1.0))
    def test_g_inv_round_trip(self, v):
        assert g(g_inv(v)) == pytest.approx(v, abs=1e-12)

    def test_monotone(self):
        xs = np.linspace(0.0, MAX_QUBIT_DISCORD, 50)
        assert np.all(np.diff([g(x) for x in xs]) > 0)
        assert np.all(np.diff([h(x) for x in xs]) > 0)

    def test_edge_clamping_within_slack(self):
        assert g(-1e-10) == 0.0
        assert g(MAX_QUBIT_DISCORD + 1e-10) == pytest.approx(1.0, abs=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            g(0.7)
        with pytest.raises(DomainError):
            g(-1e-3)
        with pytest.raises(DomainError):
            g_inv(1.1)
        with pytest.raises(DomainError):
            h(1.0)


class TestRegistry:
    def test_record_count_and_unique_names(self):
        names = [name for name, *_ in _REGISTRY]
        assert len(names) == 43
        assert len(set(names)) == 43
        assert _CONJECTURE[1] == "conjecture"

    def test_kinds(self):
        kinds = {kind for _, kind, *_ in _REGISTRY}
        assert kinds == {"identity", "inequality"}
        identities = [name for name, kind, *_ in _REGISTRY if kind == "identity"]
        assert len(identities) == 6


class TestAudit:
    def test_bell_state_all_satisfied(self, fast_config):
        report = audit(bell_state("phi+"), config=fast_config)
        assert report.all_satisfied
        assert report.violations == ()
        assert report.conjecture_counterexamples == 0
        assert len(report.records) == 44  # registry + conjecture for n_b = 2
        assert set(report.measures) == {
            "G_tr", "G_hs", "G_bu", "G_he",
            "M_tr", "M_hs", "M_bu", "M_he",
            "R_tr", "R_hs", "R_bu", "R_he",
        }

    def test_bell_state_saturates_identities(self, fast_config):
        report = audit(bell_state("psi-"), config=fast_config)
        by_name = {r.name: r for r in report.records}
        for name in (
            "trace-geo-meas-identity",
            "bures-response-g-geo-identity",
            "hellinger-response-g-geo-identity",
        ):
            assert abs(by_name[name].slack) < 1e-6, name

    def test_mixed_state_all_satisfied(self, fast_config):
        rho = random_haar_state(2, 2, rank=3, seed=202)
        report = audit(rho, config=fast_config)
        assert report.all_satisfied, report.violations

    def test_qubit_qutrit_audit_has_no_conjecture(self, fast_config):
        rho = random_haar_state(2, 3, rank=2, seed=203)
        report = audit(rho, config=fast_config)
        assert len(report.records) == 43
        assert all(r.relation_kind != "conjecture" for r in report.records)
        assert report.all_satisfied, report.violations

    def test_rejects_non_qubit_a_side(self, fast_config):
        with pytest.raises(UnsupportedDimension):
            audit(random_haar_state(3, 2, rank=2, seed=204), config=fast_config)

    def test_violations_property_ignores_conjecture(self):
        records = (
            BoundRecord("fake-conjecture", "conjecture", 1.0, 0.0, -1.0, False),
            BoundRecord("fake-inequality", "inequality", 1.0, 0.0, -1.0, False),
        )
        report = BoundReport(
            records=records, measures={}, n_a=2, n_b=2,
            tol_inequality=1e-5, tol_identity=1e-4,
        )
        assert report.violations == ("fake-inequality",)
        assert report.conjecture_counterexamples == 1
        assert not report.all_satisfied

    def test_json_serialization(self, fast_config):
        report = audit(bell_state("phi-"), config=fast_config)
        payload = json.loads(report.to_json())
        assert payload["n_a"] == 2
        assert payload["violations"] == []
        assert len(payload["records"]) == len(report.records)
        assert all(
            set(r) == {"name", "relation_kind", "lhs", "rhs", "slack", "satisfied"}
            for r in payload["records"]
        )

    def test_json_maps_nan_to_null(self):
        records = (BoundRecord("nan-record", "inequality", math.nan, 1.0, math.nan, True),)
        report = BoundReport(
            records=records, measures={"G_tr": math.nan}, n_a=2, n_b=3,
            tol_inequality=1e-5, tol_identity=1e-4,
        )
        payload = json.loads(report.to_json())
        assert payload["records"][0]["lhs"] is None
        assert payload["measures"]["G_tr"] is None

    def test_csv_serialization(self, fast_config):
        report = audit(bell_state("psi+"), config=fast_config)
        lines = report.to_csv().strip().splitlines()
        assert lines[0] == "relation,lhs,rhs,slack,satisfied"
        assert len(lines) == len(report.records) + 1
        cells = lines[1].split(",")
        assert len(cells) == 5
        float(cells[1]), float(cells[2]), float(cells[3])
        assert cells[4] in {"0", "1"}


class TestPureSaturation:
    def test_random_pure_state_saturates(self, fast_config):
        for k in range(4):
            v = random_pure_vector(4, [k, 300])
            mu = np.linalg.eigvalsh(from_pure(v, 2, 2).marginal("a"))
            report = pure_state_saturation_check(np.sort(mu)[::-1], config=fast_config)
            assert report.all_satisfied, report.violations
            assert len(report.records) == 6
            assert all(r.relation_kind == "identity" for r in report.records)

    def test_product_pure_state_saturates_trivially(self, fast_config):
        report = pure_state_saturation_check([1.0, 0.0], config=fast_config)
        assert report.all_satisfied
        assert all(abs(r.slack) < 1e-9 for r in report.records)

    def test_maximally_entangled_saturates(self, fast_config):
        report = pure_state_saturation_check([0.5, 0.5], config=fast_config)
        assert report.all_satisfied
        assert report.measures["R_he"] == pytest.approx(1.0, abs=1e-9)
