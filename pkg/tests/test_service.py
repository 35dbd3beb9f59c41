import pytest
from fastapi.testclient import TestClient

from ssetkit.service import create_app
from ssetkit.core import identity_map
from ssetkit.build import boundary, standard_simplex, subcomplex_inclusion
from ssetkit.jsonio import map_to_payload, set_to_payload


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_build_endpoint(client):
    body = client.post("/build",
                       json={"expr": "wjoin(delta 0, delta 1)"}).json()
    assert body["space"]["nondeg"] == [3, 4, 2]


def test_count_endpoint(client):
    body = client.post("/count", json={"expr": "wjoin(delta 0, delta 1)",
                                       "dim": 2,
                                       "mode": "nondegenerate"}).json()
    assert body["count"] == 2


def test_build_usage_error(client):
    response = client.post("/build", json={"expr": "join(delta 0,"})
    assert response.status_code == 400
    assert response.json()["kind"] == "usage"
    assert "offset 13" in response.json()["error"]


def test_check_endpoint(client):
    payload = map_to_payload(identity_map(standard_simplex(2)))
    body = client.post("/check", json={"map": payload,
                                       "fibration_class": "trivial",
                                       "max_dim": 2}).json()
    assert body["holds"] is True

    incl = map_to_payload(subcomplex_inclusion(boundary(2), 2))
    body = client.post("/check", json={"map": incl,
                                       "fibration_class": "trivial",
                                       "max_dim": 2}).json()
    assert body["holds"] is False
    assert body["witness"] is not None


def test_certify_endpoint(client):
    body = client.post("/certify", json={"sub_expr": "spine 3",
                                         "sup_expr": "delta 3",
                                         "fibration_class": "inner",
                                         "budget": 10000}).json()
    assert body["status"] == "found" and body["steps"] == 4

    response = client.post("/certify", json={"sub_expr": "spine 4",
                                             "sup_expr": "delta 4",
                                             "fibration_class": "inner",
                                             "budget": 2})
    assert response.json()["status"] == "budget"


def test_certify_locates_other_families(client):
    # a horn inclusion is a single inner attachment
    body = client.post("/certify", json={"sub_expr": "horn 3 1",
                                         "sup_expr": "delta 3",
                                         "fibration_class": "inner",
                                         "budget": 1000}).json()
    assert body["status"] == "found" and body["steps"] == 1

    # skeleta carry the labels of their parent, so they locate; the
    # boundary inclusion is not horn-presentable in any class, and the
    # search honestly exhausts (every edge is already present, so the top
    # cell has no fresh face to enter through)
    body = client.post("/certify", json={"sub_expr": "skel(delta 2, 1)",
                                         "sup_expr": "delta 2",
                                         "fibration_class": "kan",
                                         "budget": 1000}).json()
    assert body["status"] == "exhausted"

    # a subcomplex of something unrelated is a usage error
    response = client.post("/certify", json={"sub_expr": "spine 2",
                                             "sup_expr": "prod(delta 1, delta 1)",
                                             "fibration_class": "inner",
                                             "budget": 1000})
    assert response.status_code == 400


def test_slice_endpoint(client):
    from ssetkit.build import vertex_map
    body = client.post("/slice", json={
        "kind": "slice",
        "space": set_to_payload(standard_simplex(2)),
        "map": map_to_payload(vertex_map(0, 2)),
        "max_dim": 1}).json()
    assert body["space"]["nondeg"][0] == 3
    assert body["space"]["truncation_dim"] == 1


def test_verify_endpoint(client):
    body = client.post("/verify", json={"claim": "prism", "n": 2}).json()
    assert body["passed"] is True
    assert body["reports"][0]["claim"] == "prism"


def test_export_endpoint(client):
    body = client.post("/export", json={"expr": "delta 2",
                                        "format": "dot"}).json()
    assert body["payload"].startswith("digraph")


def test_validation_error_422(client):
    response = client.post("/count", json={"expr": "delta 1", "dim": -1})
    assert response.status_code == 422
