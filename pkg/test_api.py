"""
Tests for the HTTP API
"""
import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from app.charge import TSD
from app.config import settings
from app.main import app
from app.models import UNIFORM_E6_EXAMPLE
from conftest import document

PREFIX = settings.api_prefix


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as test_client:
        yield test_client


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    data = response.json()
    assert data["service"] == settings.app_name
    assert data["check"] == f"{PREFIX}/check"


def test_health(client):
    response = client.get(f"{PREFIX}/health")
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "healthy"
    assert set(data["types_cached"]) >= {"D4", "E6", "E8"}
    assert data["timestamp"].endswith("Z")


def test_check_sample_request(client):
    payload = json.loads(Path(__file__).with_name("test_request.json").read_text(encoding="utf-8"))
    response = client.post(f"{PREFIX}/check", json=payload)
    assert response.status_code == 200
    data = response.json()
    assert data["success"] is True
    assert data["member"] is True
    assert data["type"] == "E(6)"


def test_check_violation(client, violating_d4):
    response = client.post(f"{PREFIX}/check", json=document(violating_d4))
    assert response.status_code == 200
    data = response.json()
    assert data["member"] is False
    assert data["violations"][0]["id"].startswith("D4.L2")


def test_check_rejects_bad_document(client):
    payload = json.loads(json.dumps(UNIFORM_E6_EXAMPLE))
    payload["z"] = {"re": "0.5", "im": "1"}
    response = client.post(f"{PREFIX}/check", json=payload)
    assert response.status_code == 422
    data = response.json()
    assert data["success"] is False
    assert any(item["field"].startswith("body") for item in data["detail"])


def test_check_rejects_wild_weights(client):
    payload = {"weights": [2, 3, 7], "mu": {}, "z": {"re": "0", "im": "1"}}
    assert client.post(f"{PREFIX}/check", json=payload).status_code == 422


def test_oracle(client, violating_d4):
    response = client.post(f"{PREFIX}/oracle", params={"periods": 2}, json=document(violating_d4))
    assert response.status_code == 200
    assert response.json()["source"] == "oracle"
    assert response.json()["member"] is False


def test_oracle_rejects_zero_periods(client):
    response = client.post(f"{PREFIX}/oracle", params={"periods": 0}, json=UNIFORM_E6_EXAMPLE)
    assert response.status_code == 422


def test_oracle_degenerate_datum_is_bad_request(client, d4):
    response = client.post(f"{PREFIX}/oracle", json=document(TSD.uniform(d4, z_re=-5, z_im=0)))
    assert response.status_code == 400
    data = response.json()
    assert data["success"] is False
    assert data["error"].startswith("Degenerate")


def test_derive(client):
    response = client.get(f"{PREFIX}/derive/D5")
    assert response.status_code == 200
    data = response.json()
    assert data["equivalent"] is True
    assert data["reading"] == "coupled"
    assert data["redundant_listed"] is None
    assert all(set(item) >= {"id", "coefficients", "constant", "text"} for item in data["derived"])


def test_derive_unknown_type(client):
    response = client.get(f"{PREFIX}/derive/E9")
    assert response.status_code == 400
    assert response.json()["status_code"] == 400


def test_derive_with_redundancy(client):
    response = client.get(f"{PREFIX}/derive/D4", params={"redundancy": True})
    assert response.status_code == 200
    assert isinstance(response.json()["redundant_listed"], list)


def test_derive_bad_flag(client):
    response = client.get(f"{PREFIX}/derive/D4", params={"redundancy": "maybe"})
    assert response.status_code == 422


def test_flow(client, violating_d4):
    payload = {"start": UNIFORM_E6_EXAMPLE, "end": UNIFORM_E6_EXAMPLE, "steps": 2}
    response = client.post(f"{PREFIX}/flow", json=payload)
    assert response.status_code == 200
    assert [s["t"] for s in response.json()["steps"]] == ["0", "1/2", "1"]

    mismatched = {"start": UNIFORM_E6_EXAMPLE, "end": document(violating_d4), "steps": 2}
    assert client.post(f"{PREFIX}/flow", json=mismatched).status_code == 400


def test_heart(client):
    response = client.post(f"{PREFIX}/heart", json=UNIFORM_E6_EXAMPLE)
    assert response.status_code == 200
    assert response.json()["kind"] == "NonConcentrated"


def test_sample(client):
    response = client.get(f"{PREFIX}/sample", params={"type_tag": "E6", "count": 2, "seed": 3})
    assert response.status_code == 200
    data = response.json()
    assert data["count"] == 2
    again = client.get(f"{PREFIX}/sample", params={"type_tag": "E6", "count": 2, "seed": 3}).json()
    assert again["documents"] == data["documents"]


def test_sample_count_limit(client):
    response = client.get(f"{PREFIX}/sample", params={"type_tag": "E6", "count": settings.max_sample_count + 1})
    assert response.status_code == 422


def test_types(client):
    response = client.get(f"{PREFIX}/types")
    assert response.status_code == 200
    assert response.json()["count"] == len(response.json()["types"])


def test_sample_real_members(client):
    params = {"type_tag": "D4", "count": 3, "seed": 5, "real": True, "members": True}
    response = client.get(f"{PREFIX}/sample", params=params)
    assert response.status_code == 200
    for doc in response.json()["documents"]:
        assert doc["z"]["im"] == "0"
        checked = client.post(f"{PREFIX}/check", json=doc).json()
        assert checked["member"] is True
        assert checked["nondegenerate"] is True
