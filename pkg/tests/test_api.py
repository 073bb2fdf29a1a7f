"""
Tests for the REST API.
"""

import inspect
import json
from pathlib import Path

import pytest
from fastapi.routing import APIRoute
from fastapi.testclient import TestClient

from reeskit.api import app

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def client():
    return TestClient(app)


def golden(name):
    return json.loads((GOLDEN / name).read_text(encoding="utf-8"))


class TestInfo:
    """Health and root endpoints."""

    def test_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json()["status"] == "healthy"

    def test_root_lists_endpoints(self, client):
        data = client.get("/").json()
        assert "POST /package" in data["endpoints"]
        assert data["documentation"] == "/docs"

    def test_compute_routes_are_sync(self):
        """CPU-bound handlers run in the threadpool, off the event loop."""
        posts = [r for r in app.routes if isinstance(r, APIRoute) and "POST" in r.methods]
        assert len(posts) == 8
        for route in posts:
            assert not inspect.iscoroutinefunction(route.endpoint), route.path


class TestComputations:
    """Each endpoint on a reference input."""

    def test_package(self, client):
        response = client.post("/package", json=golden("det_example.json"))
        assert response.status_code == 200
        data = response.json()
        assert data["rees_valuations"] == ["γ1", "γ1+γ2"]
        assert data["denominator_bound"] == 6

    def test_ratpow_generators(self, client):
        response = client.post("/ratpow", json={"ideal": golden("mon_example.json"), "w": "3/2"})
        assert response.status_code == 200
        assert response.json()["generators"] == [[5, 5], [6, 3]]

    def test_ratpow_membership(self, client):
        response = client.post(
            "/ratpow", json={"ideal": golden("mon_example.json"), "w": "3/2", "point": [4, 2]}
        )
        assert response.status_code == 200
        assert response.json()["member"] is False

    def test_ratpow_symbolic(self, client):
        response = client.post("/ratpow", json={"ideal": golden("det_example.json"), "w": "1"})
        assert response.status_code == 200
        assert response.json()["symbolic_terms"] == ["I_1^(2) ∩ I_2^(1)", "I_1^(3)"]

    def test_join(self, client):
        response = client.post("/join", json=golden("join_example.json"))
        assert response.status_code == 200
        assert response.json()["valuations"] == ["v1+2γ1", "3v1+4γ1+4γ2"]

    def test_sum_check(self, client):
        body = dict(golden("principal_pair.json"), w="5/2")
        response = client.post("/sum-check", json=body)
        assert response.status_code == 200
        assert response.json()["verdict"] == "EQUAL"

    def test_sandwich(self, client):
        body = dict(golden("principal_pair.json"), w="4", tau="2")
        data = client.post("/sandwich", json=body).json()
        assert data["left_holds"] and data["right_holds"]
        assert data["weaker_form_holds"] is True

    def test_counterexample(self, client):
        response = client.post("/counterexample", params={"n": 2})
        assert response.status_code == 200
        data = response.json()
        assert data["point"] == [10, 10]
        assert data["in_closure"] is True
        assert data["in_sum"] is False

    def test_resurgence(self, client):
        response = client.post("/resurgence", params={"m": 3, "t": 2})
        assert response.status_code == 200
        assert response.json()["resurgence"] == "4/3"

    def test_star(self, client):
        response = client.post("/star", json=golden("star_example.json"))
        assert response.status_code == 200
        assert response.json()["product"]["equation"] == "3X+4X1+4X2=12"


class TestErrors:
    """Input errors map to 422."""

    def test_float_exponent(self, client):
        response = client.post("/ratpow", json={"ideal": golden("mon_example.json"), "w": "1.5"})
        assert response.status_code == 422

    def test_resurgence_out_of_range(self, client):
        response = client.post("/resurgence", params={"m": 2, "t": 3})
        assert response.status_code == 422

    def test_sandwich_needs_monomials(self, client):
        body = dict(golden("join_example.json"), w="1")
        response = client.post("/sandwich", json=body)
        assert response.status_code == 422


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
