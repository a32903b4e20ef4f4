"""
End-to-end tests for the Monova HTTP API, run in-process with the FastAPI test client
"""

import pytest
from fastapi.testclient import TestClient

from app import app


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/api/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy", "service": "Monova API"}


def test_check(client):
    response = client.post("/api/check", json={"variety": "q1", "identity": "xy ~ yx"})
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "FAILS"
    assert data["payload"]["identity"] == "xy ~ yx"


def test_check_with_bad_variety(client):
    response = client.post("/api/check", json={"variety": "nope", "identity": "x ~ x"})
    assert response.status_code == 400
    assert "unknown variety" in response.json()["detail"]


def test_budget_exceeded_is_unprocessable(client, monkeypatch):
    monkeypatch.setenv("MONOVA_BUDGET", "100")
    response = client.post("/api/check", json={"variety": "monoid(k1)", "identity": "xyzt ~ tzyx"})
    assert response.status_code == 422
    assert "budget exceeded" in response.json()["detail"]


def test_monoid_build(client):
    response = client.post("/api/monoid", json={"preset": "q1"})
    assert response.status_code == 200
    payload = response.json()["payload"]
    assert payload["size"] == 6
    assert payload["elements"] == ["1", "b", "c", "e", "bc", "0"]
    assert payload["j_trivial"] is True


def test_family(client):
    response = client.post("/api/family", json={"name": "un_vn", "n": 2})
    assert response.status_code == 200
    assert response.json()["payload"]["identities"] == ["x y1^2 y2^2 x ~ x y1^2 x y2^2 x"]


def test_stability(client):
    response = client.post("/api/stability", json={"variety": "l2", "class_spec": "aabb", "max_len": 4})
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "COUNTEREXAMPLE"
    assert data["payload"]["v"] == "ab"


def test_isoterm(client):
    response = client.post("/api/isoterm", json={"variety": "q1", "word": "xtx", "max_len": 4})
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "COUNTEREXAMPLE"
    assert data["payload"]["v"] == "xtx^2"

    response = client.post("/api/isoterm", json={"variety": "q1", "word": "xy", "max_len": 4})
    assert response.json()["status"] == "STABLE_UPTO"


def test_sc2_failure(client):
    response = client.post("/api/sc2", json={"variety": "q1 v r3", "n_max": 3, "stab_len": 5})
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "FAILS"
    assert data["payload"]["checks"][0].startswith("U_n ~ V_n: failed (fails at n = 2")


def test_sweep_rejects_nonpositive_length(client):
    response = client.post("/api/sweep", json={"first": "q1", "second": "e1", "max_len": 0})
    assert response.status_code == 422


def test_derive_with_inline_basis(client):
    response = client.post(
        "/api/derive", json={"identity": "xyx ~ xyxyx", "basis": "x ~ xx", "max_word_len": 6}
    )
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "DERIVABLE"
    assert data["payload"]["replayed"] is True
    assert data["bounds"]["max_word_len"] == 6


def test_meet(client):
    response = client.post(
        "/api/meet",
        json={"first": "l2", "second": "r2", "identity": "xy ~ yx", "max_word_len": 4, "ambient_len": 4},
    )
    assert response.status_code == 200
    assert response.json()["status"] == "DERIVABLE"


def test_dist(client):
    response = client.post("/api/dist", json={"kind": "q1_to_e1", "identity": "xyxy ~ xyxyxy"})
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "HOLDS"
    assert data["payload"]["size"] == 0


def test_lattice(client):
    response = client.get("/api/lattice", params={"max_level": 2})
    assert response.status_code == 200
    assert "L2 v R2 < B1" in response.json()["payload"]["covers"]


def test_metrics_record_runs(client):
    client.post("/api/stability", json={"variety": "l2", "class_spec": "aabb", "max_len": 4})
    response = client.get("/api/metrics/runs", params={"limit": 5})
    assert response.status_code == 200
    runs = response.json()["runs"]
    assert runs
    assert runs[-1]["kind"] == "stability"
    assert runs[-1]["status"] == "COUNTEREXAMPLE"
