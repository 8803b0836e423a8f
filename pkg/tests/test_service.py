"""HTTP endpoints wrap the runner without changing its answers."""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from mixlab.experiments import run_experiment
from mixlab.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200 and resp.json() == {"status": "ok"}


def test_scenarios_listing(client):
    resp = client.get("/scenarios")
    assert resp.status_code == 200
    ids = {s["id"] for s in resp.json()}
    assert "ledrappier_counterexample" in ids and len(ids) == 12
    assert all("summary" in s and "defaults" in s for s in resp.json())


def test_run_endpoint_matches_direct_call(client):
    payload = {"scenario": "sumfree_selftest", "params": {"k_max": 8}}
    resp = client.post("/run", json=payload)
    assert resp.status_code == 200
    body = resp.json()
    direct = run_experiment("sumfree_selftest", {"k_max": 8})
    got = body["report"]
    want = direct.to_json()
    got.pop("wall_time_s"), want.pop("wall_time_s")
    assert got == want and body["passed"]


def test_run_endpoint_rejects_bad_config(client):
    assert client.post("/run", json={"scenario": "nope"}).status_code == 422
    resp = client.post("/run", json={"scenario": "diagonal_Z", "params": {"coeffs": [1, 1]}})
    assert resp.status_code == 422


def test_verify_endpoint(client):
    report = client.post("/run", json={"scenario": "ramsey_selftest",
                                       "params": {"n_full": 4}}).json()["report"]
    resp = client.post("/verify", json={"report": report})
    assert resp.status_code == 200 and resp.json()["ok"]
    report["verdict"] = "tampered"
    resp2 = client.post("/verify", json={"report": report})
    assert resp2.status_code == 200 and not resp2.json()["ok"]


def test_cli_as_thin_client_of_live_server(tmp_path):
    import json
    import socket
    import threading
    import time

    import uvicorn

    from mixlab.cli import main

    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        port = s.getsockname()[1]
    config = uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 10
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("service did not start")
        time.sleep(0.05)
    try:
        cfg = tmp_path / "config.json"
        cfg.write_text(json.dumps({"scenario": "sumfree_selftest", "params": {"k_max": 8}}))
        out = tmp_path / "report.json"
        url = f"http://127.0.0.1:{port}"
        assert main(["run", str(cfg), "--server", url, "--out", str(out)]) == 0
        assert main(["verify", str(out), "--server", url]) == 0
        local = tmp_path / "local.json"
        assert main(["run", str(cfg), "--out", str(local)]) == 0
        remote = json.loads(out.read_text())
        direct = json.loads(local.read_text())
        remote.pop("wall_time_s"), direct.pop("wall_time_s")
        assert remote == direct
    finally:
        server.should_exit = True
        thread.join(timeout=10)
