"""WebSocket endpoint tests: handshake, live stream, control round trip.

The client side is the starlette test client, so every exchange runs over
a real ASGI connection with the session on its worker thread.
"""

import time

import pytest
from fastapi.testclient import TestClient

from chinpoint.server import config_from_dict, create_app
from chinpoint.service import ConfigError
from chinpoint.simulate import ScriptError
from chinpoint.wire import BACKEND

AGENT_START = {
    "type": "start",
    "config": {
        "mode": "pointing", "source": "agent", "seed": 3,
        "runs": 1, "trials_per_run": 4,
        "agent": {"a_true": 0.4, "b_true": 1.2, "seed": 3},
    },
}


def drain(ws, limit=200000):
    """Read until session_end; returns every message in arrival order."""
    messages = []
    for _ in range(limit):
        msg = ws.receive_json()
        messages.append(msg)
        if msg["type"] == "session_end":
            return messages
    raise AssertionError("no session_end within message limit")


@pytest.fixture()
def client():
    with TestClient(create_app()) as c:
        yield c


class TestHealth:
    def test_health_reports_wire_backend(self, client):
        body = client.get("/health").json()
        assert body["status"] == "ok"
        assert body["wire_backend"] == BACKEND
        assert body["wire_backend"] in ("cython", "python")


class TestConfigFromDict:
    def test_scalars_applied(self):
        config = config_from_dict({"mode": "arm3d", "source": "agent",
                                   "seed": 11, "arm_trials": 5,
                                   "participant": "p3"})
        assert config.mode == "arm3d"
        assert config.seed == 11
        assert config.arm_trials == 5
        assert config.participant == "p3"

    def test_profile_merged_over_defaults(self):
        config = config_from_dict({"profile": {"speed_xy": 750.0}})
        assert config.profile.speed_xy == 750.0
        assert config.profile.debounce_ms == 200.0

    def test_agent_and_script_blocks(self):
        config = config_from_dict({
            "mode": "calibration", "source": "simulator",
            "script": [{"duration_ms": 500.0, "ax": 300.0}],
            "noise": {"sigma_ax": 10.0, "seed": 2}})
        assert config.script.total_ms == 500.0
        assert config.noise.sigma_ax == 10.0

    def test_invalid_mode_rejected(self):
        with pytest.raises(ConfigError):
            config_from_dict({"mode": "dash"})

    def test_invalid_script_segment_rejected(self):
        with pytest.raises(ScriptError):
            config_from_dict({"source": "simulator",
                              "script": [{"duration_ms": -5.0}]})


class TestWebSocketSession:
    def test_agent_session_streams_to_completion(self, client):
        with client.websocket_connect("/ws") as ws:
            ws.send_json(AGENT_START)
            messages = drain(ws)
        kinds = {m["type"] for m in messages}
        assert kinds == {"event", "trial", "task_state", "session_end"}
        assert sum(1 for m in messages if m["type"] == "trial") == 4
        summary = messages[-1]["summary"]
        assert summary["complete"] is True
        assert summary["trials"] == 4

    def test_task_state_sequence_is_monotone(self, client):
        with client.websocket_connect("/ws") as ws:
            ws.send_json(AGENT_START)
            messages = drain(ws)
        seqs = [m["seq"] for m in messages if m["type"] == "task_state"]
        assert seqs == sorted(seqs)
        assert len(set(seqs)) == len(seqs)
        summary = messages[-1]["summary"]
        # delivery may shed under backpressure but never reorders
        assert len(seqs) >= 0.99 * summary["task_state_count"]

    def test_first_message_must_be_start(self, client):
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "hello"})
            reply = ws.receive_json()
        assert reply["type"] == "error"
        assert "start" in reply["reason"]

    def test_invalid_config_reports_error(self, client):
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "start", "config": {"mode": "dash"}})
            reply = ws.receive_json()
        assert reply["type"] == "error"
        assert "dash" in reply["reason"]

    def test_calibration_update_acked_within_budget(self, client):
        start = {
            "type": "start",
            "config": {
                "mode": "calibration", "source": "simulator", "seed": 1,
                "pace": "real", "rate_hz": 100.0,
                "script": [{"duration_ms": 10000.0, "ax": 400.0}],
            },
        }
        with client.websocket_connect("/ws") as ws:
            ws.send_json(start)
            ws.receive_json()  # stream is live
            sent_at = time.perf_counter()
            ws.send_json({"type": "calib_update", "request_id": "r1",
                          "values": {"speed_xy": 620.0}})
            ack = None
            for _ in range(500):
                msg = ws.receive_json()
                if msg["type"] == "calib_ack":
                    ack = msg
                    break
            latency = time.perf_counter() - sent_at
            assert ack is not None
            assert ack["ok"] is True
            assert ack["request_id"] == "r1"
            assert ack["profile"]["speed_xy"] == 620.0
            assert latency < 0.150
            ws.send_json({"type": "stop"})
            messages = drain(ws)
        assert messages[-1]["summary"]["complete"] is False

    def test_rejected_update_acked_with_reason(self, client):
        start = {
            "type": "start",
            "config": {
                "mode": "calibration", "source": "simulator", "seed": 1,
                "pace": "real", "rate_hz": 100.0,
                "script": [{"duration_ms": 10000.0}],
            },
        }
        with client.websocket_connect("/ws") as ws:
            ws.send_json(start)
            ws.receive_json()
            ws.send_json({"type": "calib_update", "request_id": 9,
                          "values": {"speed_xy": -3.0}})
            ack = None
            for _ in range(500):
                msg = ws.receive_json()
                if msg["type"] == "calib_ack":
                    ack = msg
                    break
            assert ack is not None
            assert ack["ok"] is False
            assert ack["request_id"] == 9
            assert ack["reason"]
            ws.send_json({"type": "stop"})
            drain(ws)
