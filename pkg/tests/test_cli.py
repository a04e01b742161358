"""Command-line client behavior against the in-process and real service."""

from __future__ import annotations

import json
import socket
import subprocess
import sys
import time

import httpx
import pytest

from spectral_logic.cli import main

LOVE_CONFIG = {
    "schema": 1,
    "world": {
        "bounds": {"xmin": -10, "ymin": -10, "xmax": 10, "ymax": 10},
        "lights": [{"x": 3.0, "y": 0.0, "power": 1.0}],
    },
    "vehicles": [
        {"x": 0.0, "y": 0.0, "heading": 0.0, "archetype": "love", "mode": "fuzzy"}
    ],
    "dt": 0.02,
    "steps": 2000,
}


def _write_config(tmp_path, config, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(config), encoding="utf-8")
    return str(path)


def test_truth_table_and(capsys):
    assert main(["truth-table", "AND"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("AND")
    assert out[1:5] == ["(0,0) -> 0", "(0,1) -> 0", "(1,0) -> 0", "(1,1) -> 1"]
    assert out[5] == "diagonal: 0, 0, 0, 1"


def test_truth_table_formula(capsys):
    assert main(["truth-table", "A ^ B"]) == 0
    out = capsys.readouterr().out
    assert "diagonal: 0, 1, 1, 0" in out


def test_truth_table_min_m3(capsys):
    assert main(["truth-table", "min", "--m", "3"]) == 0
    out = capsys.readouterr().out
    assert "diagonal: 0, 0, 0, 0, 1, 1, 0, 1, 2" in out


def test_truth_table_parse_error(capsys):
    assert main(["truth-table", "A &"]) == 1
    assert "error:" in capsys.readouterr().err


def test_membership_examples(capsys):
    assert main(["membership", "A & B", "0.5", "0.5"]) == 0
    assert capsys.readouterr().out.strip() == "0.250000000000"
    assert main(["membership", "!A", "0.3"]) == 0
    assert capsys.readouterr().out.strip() == "0.700000000000"
    assert main(["membership", "A -> B", "1", "0"]) == 0
    assert capsys.readouterr().out.strip() == "0.000000000000"


def test_membership_arity_mismatch(capsys):
    assert main(["membership", "A & B", "0.5"]) == 1
    assert "error:" in capsys.readouterr().err


def test_eval_examples(capsys):
    assert main(["eval", "A -> B", "1", "0"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["eval", "max(A, B)", "1", "2", "--m", "3"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_simulate_love_demo(tmp_path, capsys):
    cfg = _write_config(tmp_path, LOVE_CONFIG)
    out_path = str(tmp_path / "run.csv")
    assert main(["simulate", "--config", cfg, "--out", out_path]) == 0
    printed = capsys.readouterr().out
    assert "wrote 2000 rows" in printed
    assert "vehicle 0:" in printed
    assert "min distance to light 0:" in printed
    data = open(out_path, "rb").read()
    assert data.startswith(b"t,vehicle_id,x,y,heading,vL,vR,muL,muR\n")
    assert b"\r" not in data
    assert data.count(b"\n") == 2001
    # Love slows to a stop near the light.
    final_vl = float(data.decode().strip().rsplit("\n", 1)[-1].split(",")[5])
    assert final_vl < 0.05


def test_simulate_zero_steps(tmp_path, capsys):
    config = dict(LOVE_CONFIG, steps=0)
    cfg = _write_config(tmp_path, config)
    out_path = str(tmp_path / "empty.csv")
    assert main(["simulate", "--config", cfg, "--out", out_path]) == 0
    assert open(out_path, "rb").read() == b"t,vehicle_id,x,y,heading,vL,vR,muL,muR\n"


def test_simulate_fear_turns_away(tmp_path, capsys):
    config = dict(
        LOVE_CONFIG,
        steps=600,
        world={
            "bounds": {"xmin": -10, "ymin": -10, "xmax": 10, "ymax": 10},
            "lights": [{"x": 1.5, "y": 1.0, "power": 1.0}],
        },
        vehicles=[
            {"x": 0.0, "y": 0.0, "heading": 0.0, "archetype": "fear", "mode": "fuzzy"}
        ],
    )
    cfg = _write_config(tmp_path, config)
    out_path = str(tmp_path / "fear.csv")
    assert main(["simulate", "--config", cfg, "--out", out_path]) == 0
    last = open(out_path).read().strip().rsplit("\n", 1)[-1].split(",")
    # Light sits on the left; fear ends rotated to the right (negative).
    assert float(last[4]) < 0.0


def test_simulate_is_deterministic(tmp_path, capsys):
    cfg = _write_config(tmp_path, dict(LOVE_CONFIG, steps=300))
    a, b = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    assert main(["simulate", "--config", cfg, "--out", a]) == 0
    assert main(["simulate", "--config", cfg, "--out", b]) == 0
    capsys.readouterr()
    assert open(a, "rb").read() == open(b, "rb").read()


def test_simulate_bad_config_reports_field_path(tmp_path, capsys):
    bad = dict(LOVE_CONFIG)
    bad["vehicles"] = [{"x": 0.0, "warp_drive": True}]
    cfg = _write_config(tmp_path, bad)
    assert main(["simulate", "--config", cfg, "--out", str(tmp_path / "x.csv")]) == 1
    err = capsys.readouterr().err
    assert "warp_drive" in err
    assert "vehicles" in err


def test_simulate_missing_config_file(tmp_path, capsys):
    code = main(
        ["simulate", "--config", str(tmp_path / "nope.json"), "--out", "/tmp/x.csv"]
    )
    assert code == 1
    assert "error:" in capsys.readouterr().err


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.fixture(scope="module")
def live_server(tmp_path_factory):
    port = _free_port()
    cfg = tmp_path_factory.mktemp("serve") / "config.json"
    cfg.write_text(json.dumps(dict(LOVE_CONFIG, steps=0)), encoding="utf-8")
    proc = subprocess.Popen(
        [
            sys.executable,
            "-m",
            "spectral_logic.cli",
            "serve",
            "--config",
            str(cfg),
            "--port",
            str(port),
        ],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    base = f"http://127.0.0.1:{port}"
    try:
        for _ in range(100):
            try:
                httpx.get(base + "/docs", timeout=0.5)
                break
            except httpx.HTTPError:
                time.sleep(0.1)
        else:
            raise RuntimeError("server never came up")
        yield base
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def test_cli_against_live_server(live_server, capsys):
    assert main(["membership", "A | B", "0.5", "0.5", "--server", live_server]) == 0
    assert capsys.readouterr().out.strip() == "0.750000000000"
    assert main(["truth-table", "OR", "--server", live_server]) == 0
    assert "diagonal: 0, 1, 1, 1" in capsys.readouterr().out


def test_live_server_runs_session_loop(live_server):
    # The served world advances on its own: two REST fetches are enough
    # to confirm liveness, and the websocket endpoint accepts upgrades.
    resp = httpx.post(
        live_server + "/eval", json={"formula": "A", "assignment": [1], "m": 2}
    )
    assert resp.status_code == 200
    assert resp.json()["value"] == 1
