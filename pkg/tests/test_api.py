from fastapi.testclient import TestClient

from app.main import app

client = TestClient(app)

SQUARE = {"vars": ["x", "y"], "ideal": ["x^2", "x*y", "y^2"], "reduction": ["x^2", "y^2"], "max_n": 8}


def test_health():
    response = client.get("/api/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "healthy"
    assert "closure-dim2" in body["theorems"]


def test_hilbert_endpoint():
    response = client.post("/api/hilbert", json=SQUARE)
    assert response.status_code == 200
    body = response.json()
    assert body["coefficients"]["e"] == ["4", "1", "0"]
    assert body["hilbert"]["values"][:3] == ["0", "3", "10"]


def test_max_n_query():
    response = client.post("/api/hilbert", params={"max_n": 7}, json=SQUARE)
    assert response.json()["hilbert"]["N"] == "7"


def test_chern_endpoint():
    body = client.post("/api/chern", json=SQUARE).json()
    assert body["chern"]["consistent"] is True
    routes = {r["route"]: r["value"] for r in body["chern"]["e1_routes"]}
    assert routes["euler-characteristic"] == "1"


def test_verify_endpoint():
    response = client.post("/api/verify/modified-koszul", json=SQUARE)
    assert response.status_code == 200
    assert response.json()["theorem"]["verdict"] == "verified"


def test_closure_endpoint():
    body = client.post("/api/closure", params={"max_n": 3}, json={"vars": ["x", "y"], "ideal": ["x^3", "y^2"]}).json()
    assert [t["colength"] for t in body["closure"]["terms"]] == ["5", "16", "33"]


def test_input_error_is_400():
    response = client.post("/api/hilbert", json={"vars": ["x"], "ideal": ["z"]})
    assert response.status_code == 400
    assert "error" in response.json()


def test_unknown_theorem_is_400():
    response = client.post("/api/verify/briancon-skoda", json=SQUARE)
    assert response.status_code == 400
    assert response.json()["details"]


def test_mathematical_error_is_422():
    response = client.post("/api/chern", json={"vars": ["x"], "ideal": ["x^2"], "reduction": ["x^3"], "max_n": 8})
    assert response.status_code == 422
    assert "not a reduction" in response.json()["error"]
