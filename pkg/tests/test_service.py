"""HTTP service endpoints: payload shapes, selectors, error mapping."""

import asyncio
import math

import httpx
import pytest

from qwtree4.service.app import create_app


def post(path, payload):
    async def go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://test") as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def get(path):
    async def go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://test") as client:
            return await client.get(path)

    return asyncio.run(go())


class TestHealth:
    def test_health(self):
        resp = get("/v1/health")
        assert resp.status_code == 200
        assert resp.json()["status"] == "ok"


class TestInfo:
    def test_p5_document(self):
        resp = post("/v1/info", {"params": {"q": [1], "a": [2]}})
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["schema_version"] == "1"
        assert doc["command"] == "info"
        assert doc["inputs"]["params"] == {"q": [1], "a": [2]}
        results = doc["results"]
        assert results["n"] == 5
        assert results["centre_degree"] == 2
        kinds = [p["kind"] for p in results["cospectral_pairs"]]
        assert kinds == ["A", "B"]
        total = sum(e["multiplicity"] for e in results["spectrum"])
        assert total == 5

    def test_k3_pair_count(self):
        resp = post("/v1/info", {"params": {"q": [0, 2], "a": [9, 8]}})
        results = resp.json()["results"]
        assert results["n"] == 34
        assert len(results["cospectral_pairs"]) == 8

    def test_invalid_params_rejected(self):
        resp = post("/v1/info", {"params": {"q": [0], "a": [5]}})
        assert resp.status_code == 422
        assert "DiameterNot4" in resp.json()["detail"]


class TestScan:
    def test_pair_selector(self):
        resp = post(
            "/v1/scan",
            {"params": {"q": [1], "a": [2]}, "pair": "A", "t0": 0.0, "t1": 1.0, "steps": 4},
        )
        doc = resp.json()
        assert (doc["results"]["x"], doc["results"]["y"]) == (1, 2)
        assert len(doc["results"]["records"]) == 5
        assert doc["results"]["records"][0]["sensitivity"] is not None

    def test_zero_steps_empty(self):
        resp = post(
            "/v1/scan",
            {"params": {"q": [1], "a": [2]}, "pair": "B", "t0": 0.0, "t1": 1.0, "steps": 0},
        )
        assert resp.json()["results"]["records"] == []

    def test_non_cospectral_needs_flag(self):
        payload = {
            "params": {"q": [0, 2], "a": [9, 8]},
            "vertices": [1, 2],
            "t0": 0.0,
            "t1": 1.0,
            "steps": 2,
        }
        resp = post("/v1/scan", payload)
        assert resp.status_code == 422
        assert "PairNotCospectral" in resp.json()["detail"]
        resp = post("/v1/scan", {**payload, "any_pair": True})
        assert resp.status_code == 200
        assert all(r["sensitivity"] is None for r in resp.json()["results"]["records"])

    def test_oracle_tree_scan(self):
        # ends of P3 through the degenerate-tree flag
        payload = {
            "params": {"q": [1], "a": [1]},
            "vertices": [0, 2],
            "t0": 0.0,
            "t1": 2 * math.pi / math.sqrt(2),
            "steps": 100,
            "any_pair": True,
            "oracle_tree": True,
        }
        resp = post("/v1/scan", payload)
        records = resp.json()["results"]["records"]
        assert max(r["fidelity"] for r in records) == pytest.approx(1.0, abs=1e-9)

    def test_bad_selector(self):
        resp = post(
            "/v1/scan",
            {"params": {"q": [0, 2], "a": [9, 8]}, "pair": "B", "t0": 0, "t1": 1, "steps": 1},
        )
        assert resp.status_code == 422


class TestSchedule:
    def test_t3_defaults_to_smallest_q3(self):
        resp = post("/v1/schedule", {"family": "t3", "k2": 3, "k3": 11, "n": [3]})
        results = resp.json()["results"]
        assert results["q3"] == 22
        row = results["rows"][0]
        assert row["time_symbolic"] == "7*pi/sqrt(2)"
        assert row["discrepancy"] < 1e-9
        assert row["direct_fidelity"] == pytest.approx(0.999873, abs=1e-5)

    def test_q_readout_rows_carry_integers(self):
        resp = post("/v1/schedule", {"family": "q_readout", "q": 1, "ell": [0, 1]})
        rows = resp.json()["results"]["rows"]
        assert [(r["N"], r["D"]) for r in rows] == [(2, 1), (26, 15)]

    def test_family_from_params(self):
        resp = post("/v1/schedule", {"family": "type_c", "params": {"q": [0, 2], "a": [9, 8]}, "n": [3]})
        assert resp.json()["results"]["k"] == 3

    def test_dist4_refuses_square(self):
        resp = post("/v1/schedule", {"family": "dist4", "q2": 5})
        assert resp.status_code == 422

    def test_coupled_rows(self):
        resp = post("/v1/schedule", {"family": "coupled_q2", "n": [2]})
        row = resp.json()["results"]["rows"][0]
        assert row["q2"] == 26
        assert row["direct_fidelity"] == pytest.approx(0.9759, abs=1e-3)
        assert row["discrepancy"] < 1e-9

    def test_coupled_row_beyond_dense_limit(self):
        # n = 3 routes the 21173-vertex tree through the quotient reduction
        resp = post("/v1/schedule", {"family": "coupled_q2", "n": [3]})
        row = resp.json()["results"]["rows"][0]
        assert row["q2"] == 146
        assert row["time_symbolic"] == "17*pi"
        assert row["discrepancy"] < 1e-9
        assert row["sensitivity"] is not None

    def test_p5_leaf_rows(self):
        resp = post("/v1/schedule", {"family": "p5_leaf", "ell": [0, 1]})
        rows = resp.json()["results"]["rows"]
        assert [r["time_symbolic"] for r in rows] == ["1*pi", "15*pi"]
        assert all(r["discrepancy"] < 1e-9 for r in rows)

    def test_missing_family_args(self):
        resp = post("/v1/schedule", {"family": "q_readout"})
        assert resp.status_code == 422


class TestVerifyEndpoint:
    def test_quick_scope_passes(self):
        resp = post("/v1/verify", {"scope": "quick"})
        results = resp.json()["results"]
        assert results["ok"] is True
        names = [c["name"] for c in results["checks"]]
        assert "amplitude-vs-exp-itA" in names
        assert all(c["ok"] for c in results["checks"])
