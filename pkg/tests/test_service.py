"""HTTP service: endpoint contracts, error mapping, spec resolution."""

import pytest
from fastapi.testclient import TestClient

from khrank.service import create_app, resolve_link_spec


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_resolve_link_spec_splits_on_first_colon():
    # braid payloads contain their own colon; only the prefix is ours
    diagram = resolve_link_spec("braid:3:1 -2 1 -2")
    assert diagram.crossing_count == 4
    assert resolve_link_spec("pd:O").free_loops == 1
    assert resolve_link_spec("name:4_1").name == "4_1"
    assert resolve_link_spec("axis:2:1").component_count() == 2


@pytest.mark.parametrize("spec", ["nocolon", "zz:1", "name:nosuch", "pd:"])
def test_resolve_link_spec_rejects(spec):
    with pytest.raises(ValueError):
        resolve_link_spec(spec)


def test_kh_endpoint(client):
    resp = client.post("/kh", json={"link": "name:L4a1"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["total"] == 8
    assert body["components"] == 2
    assert body["reduced_bigraded"] is None


def test_kh_endpoint_reduced_and_mirror(client):
    resp = client.post("/kh", json={"link": "name:3_1", "reduced": True,
                                    "mirror": True})
    body = resp.json()
    other = client.post("/kh", json={"link": "name:3_1-mirror"}).json()
    assert body["bigraded"] == other["bigraded"]
    assert body["reduced_bigraded"] is not None
    assert sum(r for _, _, r in body["reduced_bigraded"]) == 3


def test_kh_endpoint_maps_value_errors_to_400(client):
    resp = client.post("/kh", json={"link": "name:nosuch"})
    assert resp.status_code == 400
    assert "no builtin entry" in resp.json()["detail"]
    resp = client.post("/kh", json={"link": "braid:2:1 1 1 1 1",
                                    "max_crossings": 3})
    assert resp.status_code == 400
    assert "over the limit" in resp.json()["detail"]


def test_kh_endpoint_validates_payload(client):
    assert client.post("/kh", json={}).status_code == 422
    assert client.post("/kh", json={"link": "pd:O",
                                    "max_crossings": -1}).status_code == 422


def test_burau_endpoint(client):
    resp = client.post("/burau", json={"braid": "3:1 2"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["size"] == 2
    assert body["entries"] == [["0", "-t"], ["t", "-t"]]
    assert client.post("/burau", json={"braid": "1:"}).status_code == 400


def test_alex_endpoint(client):
    resp = client.post("/alex", json={"braid": "3:1 2"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["delta"] == "x^2+x*y+y^2"
    assert body["torres"] is True
    assert body["stat"] == 12
    assert body["axis_form"] == {"a": 2, "f": ["y"]}
    # disconnected closures are rejected, not silently accepted
    assert client.post("/alex", json={"braid": "3:1"}).status_code == 400


def test_classify_endpoint(client):
    resp = client.post("/classify", json={"link": "braid:2:1 1"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["rank_class"] == "Hopf"
    assert body["flags"] == []
    assert "finite table" in body["caveat"]


def test_verify_endpoint_builtin(client):
    resp = client.post("/verify-table", json={"jobs": 2})
    assert resp.status_code == 200
    body = resp.json()
    assert body["entries"] == 37
    assert body["all_pass"] is True
    assert len(body["checks"]) == 16


def test_verify_endpoint_rejects_bad_table(client):
    resp = client.post("/verify-table", json={"table_text": "not json"})
    assert resp.status_code == 400
    assert "bad JSON" in resp.json()["detail"]


def test_table_and_health_routes(client):
    resp = client.get("/table")
    assert resp.status_code == 200
    assert len(resp.json()["text"].splitlines()) == 37
    assert client.get("/healthz").json() == {"status": "ok"}
