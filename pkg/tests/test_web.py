import time

import pytest
from fastapi.testclient import TestClient

from web import app
from web.routes import api_config


@pytest.fixture
def client(tmp_path, monkeypatch):
    monkeypatch.setenv("GRADREAL_OUTPUT_DIR", str(tmp_path / "out"))
    for var in ("GRADREAL_ENUM_BOUND", "GRADREAL_ORACLE_WIDTH", "GRADREAL_DEBUG"):
        monkeypatch.delenv(var, raising=False)
    monkeypatch.setattr(api_config, "_env_path", lambda: str(tmp_path / ".env"))
    return TestClient(app)


def _espera_fim(client, limite: float = 30.0) -> dict:
    fim = time.time() + limite
    while time.time() < fim:
        st = client.get("/api/status").json()
        if not st["running"]:
            return st
        time.sleep(0.05)
    raise AssertionError("run nao terminou")


def test_verbs_endpoint(client):
    r = client.get("/api/verbs")
    assert r.status_code == 200
    body = r.json()
    assert "classify" in {v["key"] for v in body["verbs"]}
    assert "loop_real" in {c["name"] for c in body["constructors"]}


def test_config_validate(client):
    r = client.get("/api/config/validate")
    assert r.json() == {"valid": True, "errors": []}
    assert client.get("/api/config").json()["output_dir"].endswith("out")


def test_config_update_writes_env_file(client, tmp_path):
    r = client.post("/api/config", json={"enum_bound": 64, "debug": False})
    assert r.json()["status"] == "ok"
    texto = (tmp_path / ".env").read_text(encoding="utf-8")
    assert "GRADREAL_ENUM_BOUND=64" in texto
    assert "GRADREAL_DEBUG=false" in texto
    assert client.post("/api/config", json={}).json() == {"status": "ok", "updated": []}


def test_run_rejects_invalid_document(client):
    r = client.post("/api/run", json={"document": "B = real()\nfrobnicate B\n"})
    body = r.json()
    assert body["status"] == "invalid_document"
    assert body["exit"] == 2
    assert body["error"].startswith("2:1: unknown verb")


def test_run_rejects_invalid_config(client):
    r = client.post("/api/run", json={"document": "O = octonion()\n", "config": {"enum_bound": 0}})
    body = r.json()
    assert body["status"] == "invalid_config"
    assert "enum_bound deve ser positivo." in body["errors"]


def test_run_executes_document(client):
    doc = "O = octonion()\ncheck O identity=associative\n"
    r = client.post("/api/run", json={"document": doc})
    body = r.json()
    assert body["status"] == "started"
    assert body["verbs"] == ["check"]
    st = _espera_fim(client)
    resultado = st["last_run"]["result"]
    assert st["last_run"]["status"] == "completed"
    assert resultado["exit"] == 1
    assert resultado["reports"][0]["verb"] == "check"
    historico = client.get("/api/history").json()
    assert historico[0]["id"] == body["run_id"]
