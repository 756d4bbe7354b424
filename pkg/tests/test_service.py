import numpy as np
import pytest
from fastapi.testclient import TestClient

from semihilbert.service import app

from conftest import problem_dict

client = TestClient(app)


def test_health():
    r = client.get("/v1/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


class TestAnalyze:
    def test_signflip_report(self):
        prob = problem_dict(np.diag([1.0, 2.0]), np.diag([1.0, -1.0]))
        r = client.post("/v1/analyze", json=prob)
        assert r.status_code == 200
        body = r.json()
        sc = body["scalars"]
        assert sc["seminorm_t"] == pytest.approx(1.0, abs=1e-9)
        assert sc["davis_wielandt_t"] == pytest.approx(2 ** 0.5, abs=1e-9)
        assert sc["seminorm_s"] == pytest.approx(1.0)  # S defaults to I
        assert body["parallel"]["certificate"]["verdict"] is True
        assert body["parallel"]["lambda_star"] == pytest.approx([1.0, 0.0],
                                                                abs=1e-9)
        assert body["daugavet"]["verdict"] is True
        assert body["identity_cluster_consensus"] is True
        assert len(body["provenance"]["input_sha256"]) == 64

    def test_projection_counterexample_report(self):
        prob = problem_dict(np.diag([1.0, 1.0, 0.0]), np.diag([2.0, -1.0, 1.0]))
        r = client.post("/v1/analyze", json=prob)
        body = r.json()
        assert body["scalars"]["distance_t_line_s"] == pytest.approx(1.5,
                                                                     abs=1e-9)
        assert body["scalars"]["distance_s_line_t"] == pytest.approx(1.0,
                                                                     abs=1e-9)
        assert body["bj_t_s"]["verdict"] is False
        assert body["bj_s_t"]["verdict"] is True

    def test_explicit_pair(self):
        lam = 3.0
        prob = problem_dict(np.diag([0.0, 1.0, 0.0]),
                            np.diag([0.0, lam, 1.0]),
                            np.diag([lam, lam, 1.0]))
        body = client.post("/v1/analyze", json=prob).json()
        assert body["parallel"]["certificate"]["verdict"] is True
        assert body["scalars"]["seminorm_s"] == pytest.approx(lam, abs=1e-9)

    def test_dim_mismatch_is_422(self):
        prob = problem_dict(np.diag([1.0, 2.0]), np.diag([1.0, -1.0]))
        prob["dim"] = 3
        assert client.post("/v1/analyze", json=prob).status_code == 422

    def test_not_hermitian_is_422(self):
        prob = problem_dict(np.array([[1.0, 1.0], [0.0, 1.0]]), np.eye(2))
        r = client.post("/v1/analyze", json=prob)
        assert r.status_code == 422
        assert r.json()["detail"]["code"] == "NotHermitian"

    def test_unbounded_is_409_with_residuals(self):
        prob = problem_dict(np.diag([1.0, 0.0]), np.array([[0, 1], [0, 0.0]]))
        r = client.post("/v1/analyze", json=prob)
        assert r.status_code == 409
        detail = r.json()["detail"]
        assert detail["code"] == "not_a_bounded"
        assert detail["residual_seminorm"] == pytest.approx(1.0)
        assert detail["residual_adjoint"] == pytest.approx(1.0)

    def test_roundtrip_identical_scalars(self):
        prob = problem_dict(np.diag([1.0, 1.0, 0.0]), np.diag([2.0, -1.0, 1.0]),
                            seed=3)
        b1 = client.post("/v1/analyze", json=prob).json()
        b2 = client.post("/v1/analyze", json=prob).json()
        assert b1["scalars"] == b2["scalars"]
        assert b1["provenance"]["input_sha256"] == b2["provenance"]["input_sha256"]


class TestRange:
    def test_identity_samples(self):
        prob = problem_dict(np.eye(2), np.eye(2), grid=16)
        body = client.post("/v1/range", json=prob).json()
        assert body["re"] == pytest.approx([1.0] * 16, abs=1e-9)
        assert body["im"] == pytest.approx([0.0] * 16, abs=1e-9)

    def test_projection_disc(self):
        prob = problem_dict(np.diag([1.0, 1.0, 0.0]), np.diag([2.0, -1.0, 1.0]),
                            grid=64)
        body = client.post("/v1/range", json=prob).json()
        assert body["center"] == pytest.approx([0.5, 0.0], abs=1e-6)
        assert body["radius"] == pytest.approx(1.5, abs=1e-9)
        zs = np.array(body["re"]) + 1j * np.array(body["im"])
        assert np.max(np.abs(zs - 0.5)) <= 1.5 + 1e-7

    def test_samples_respect_grid_option(self):
        prob = problem_dict(np.diag([1.0, 2.0]), np.diag([1.0, -1.0]), grid=32)
        body = client.post("/v1/range", json=prob).json()
        assert len(body["theta"]) == 32


class TestSuiteEndpoint:
    def test_small_suite(self):
        r = client.post("/v1/suite", json={"trials": 2, "seed": 5})
        assert r.status_code == 200
        body = r.json()
        assert body["scalars"]["failures_total"] == 0
        assert body["wall_time_s"] > 0

    def test_sizes_validation(self):
        r = client.post("/v1/suite", json={"trials": 2, "seed": 5,
                                           "sizes": [0, 3]})
        assert r.status_code == 422

    def test_deterministic_scalars(self):
        payload = {"trials": 2, "seed": 5, "sizes": [2, 3]}
        b1 = client.post("/v1/suite", json=payload).json()
        b2 = client.post("/v1/suite", json=payload).json()
        assert b1["scalars"] == b2["scalars"]
