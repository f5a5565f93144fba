"""HTTP API: runs, sessions, edits, data uploads, renders, undo."""

import json
import time
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from revis.gallery import build
from revis.io import document_to_jsonable, serialize, parse_document
from revis.service import ServiceConfig, create_app

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
PNG_MAGIC = b"\x89PNG\r\n\x1a\n" + b"0" * 16


@pytest.fixture()
def client(tmp_path):
    config = ServiceConfig(
        storage_path=str(tmp_path / "state.sqlite"),
        fixtures_dir=str(FIXTURES),
    )
    app = create_app(config)
    with TestClient(app) as c:
        yield c


def make_session(client, name="composite-06-radial-rings", seed=0):
    doc = build(name)
    response = client.post(
        "/sessions", json={"document": document_to_jsonable(doc), "seed": seed}
    )
    assert response.status_code == 201, response.text
    return response.json()


def wait_run(client, run_id, timeout=10.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        record = client.get(f"/runs/{run_id}").json()
        if record["status"] in ("done", "failed"):
            return record
        time.sleep(0.02)
    raise AssertionError("run did not finish in time")


class TestRuns:
    def test_valid_png_gets_202(self, client):
        response = client.post(
            "/runs?case=basic-bar", content=PNG_MAGIC, headers={"content-type": "image/png"}
        )
        assert response.status_code == 202
        assert "run_id" in response.json()

    def test_unsupported_media_type_415(self, client):
        response = client.post(
            "/runs", content=b"x", headers={"content-type": "image/tiff"}
        )
        assert response.status_code == 415

    def test_oversized_upload_413(self, tmp_path):
        config = ServiceConfig(
            storage_path=None, fixtures_dir=str(FIXTURES), max_upload_bytes=64
        )
        with TestClient(create_app(config)) as client:
            response = client.post(
                "/runs?case=basic-bar",
                content=PNG_MAGIC + b"0" * 100,
                headers={"content-type": "image/png"},
            )
            assert response.status_code == 413

    def test_fixture_run_completes_with_document(self, client):
        response = client.post(
            "/runs?case=merge-1d", content=PNG_MAGIC, headers={"content-type": "image/png"}
        )
        record = wait_run(client, response.json()["run_id"])
        assert record["status"] == "done", record
        stored = (FIXTURES / "merge-1d" / "final.revis.json").read_text()
        assert serialize(parse_document(json.dumps(record["document"]))) == stored

    def test_unknown_run_404(self, client):
        assert client.get("/runs/nope").status_code == 404

    def test_session_from_run(self, client):
        response = client.post(
            "/runs?case=basic-bar", content=PNG_MAGIC, headers={"content-type": "image/png"}
        )
        run_id = response.json()["run_id"]
        wait_run(client, run_id)
        session = client.post("/sessions", json={"run_id": run_id})
        assert session.status_code == 201
        assert session.json()["document"]["container_id"] == "0"


class TestSessions:
    def test_create_and_fetch(self, client):
        snap = make_session(client)
        fetched = client.get(f"/sessions/{snap['session_id']}").json()
        assert fetched["document"] == snap["document"]
        assert fetched["validation"] == []

    def test_render_is_pure_and_byte_stable(self, client):
        snap = make_session(client)
        url = f"/sessions/{snap['session_id']}/render?width=800&height=600"
        first = client.get(url)
        assert first.status_code == 200
        assert first.headers["content-type"].startswith("image/svg+xml")
        assert first.text == client.get(url).text

    def test_render_size_bound(self, client):
        snap = make_session(client)
        response = client.get(f"/sessions/{snap['session_id']}/render?width=9000")
        assert response.status_code == 422

    def test_provenance_attributes_in_render(self, client):
        snap = make_session(client)
        svg = client.get(f"/sessions/{snap['session_id']}/render").text
        import re

        elements = re.findall(r"<(?:rect|circle|path) [^>]*>", svg)
        assert elements and all("data-container=" in e for e in elements)

    def test_seed_change_alters_mocked_containers_only(self, client):
        snap = make_session(client, "basic-01-simple-bar")
        sid = snap["session_id"]
        rows = [{"value": float(i + 1)} for i in range(12)]
        client.put(f"/sessions/{sid}/data/0", json=rows)
        a = client.get(f"/sessions/{sid}/render?seed=1").text
        b = client.get(f"/sessions/{sid}/render?seed=2").text
        assert a == b  # fully overridden container ignores the seed

    def test_tree_panel_shapes(self, client):
        snap = make_session(client)
        tree = client.get(f"/sessions/{snap['session_id']}/tree").json()
        assert tree["id"] == "0" and tree["kind"] == "polar"
        assert [c["id"] for c in tree["children"]] == ["0-0", "0-1", "0-2"]
        assert tree["children"][0]["rel"]["kind"] == "polar"
        count = 0
        stack = [tree]
        while stack:
            item = stack.pop()
            count += 1
            stack.extend(item["children"])
        assert count == 4


class TestEdits:
    def test_half_ring_edit_rerenders(self, client):
        snap = make_session(client)
        sid = snap["session_id"]
        before = client.get(f"/sessions/{sid}/render").text
        response = client.patch(
            f"/sessions/{sid}/containers/0-1",
            json={
                "op": "set_frame",
                "coordinate": "polar",
                "coordinate_system": {"cx": 0.5, "cy": 0.5, "r1": 0.35, "r2": 0.6,
                                      "a1": 180, "a2": 360},
            },
        )
        assert response.status_code == 200
        body = response.json()
        assert body["render"] != before
        edited = [
            c for c in body["document"]["components"] if c["container_id"] == "0-1"
        ][0]
        assert edited["coordinate_system"]["a1"] == 180

    def test_invalid_edit_is_422_and_atomic(self, client):
        snap = make_session(client)
        sid = snap["session_id"]
        response = client.patch(
            f"/sessions/{sid}/containers/0-1",
            json={
                "op": "set_frame",
                "coordinate": "polar",
                "coordinate_system": {"cx": 0.5, "cy": 0.5, "r1": 0.9, "r2": 0.2,
                                      "a1": 0, "a2": 360},
            },
        )
        assert response.status_code == 422
        unchanged = client.get(f"/sessions/{sid}").json()
        assert unchanged["document"] == snap["document"]

    def test_spec_field_edit(self, client):
        snap = make_session(client, "composite-07-linked-bar-panels")
        sid = snap["session_id"]
        response = client.patch(
            f"/sessions/{sid}/containers/0-a",
            json={
                "op": "set_spec_field",
                "path": "data_structure.data_size.primary.number",
                "value": 4,
            },
        )
        assert response.status_code == 200
        spec = response.json()["document"]["data_specification"]["0-a"]
        assert spec["data_structure"]["data_size"]["primary"]["number"] == 4

    def test_duplicate_remove_add(self, client):
        snap = make_session(client, "composite-03-marginal-histograms")
        sid = snap["session_id"]
        dup = client.patch(f"/sessions/{sid}/containers/0-1", json={"op": "duplicate"})
        assert dup.status_code == 200
        ids = [c["container_id"] for c in dup.json()["document"]["components"]]
        assert "0-3" in ids
        removed = client.patch(f"/sessions/{sid}/containers/0-3", json={"op": "remove"})
        assert removed.status_code == 200
        added = client.patch(
            f"/sessions/{sid}/containers/0",
            json={
                "op": "add",
                "node": {
                    "container_id": "0-4",
                    "description": "extra dots",
                    "coordinate": "cartesian",
                    "coordinate_system": {"x1": 75, "y1": 72, "x2": 100, "y2": 100},
                    "if_leaf": True,
                    "mark_type": "circle",
                },
                "spec": {
                    "data_structure": {
                        "data_type": "1D_list",
                        "data_size": {"primary": {"number": 6, "dimension": ["x", "y"]}},
                    },
                    "mark_specification": {
                        "mark_type": "circle", "is_link_mark": False,
                        "link_mark_type": "no_link", "is_width_encoded_data": False,
                    },
                    "layout_specification": {
                        "x": {"stacking": False, "size_uniform": True,
                              "size_range": [4, 4], "anchor": "middle",
                              "anchor_distribute": "flexible"},
                        "y": {"stacking": False, "size_uniform": True,
                              "size_range": [4, 4], "anchor": "middle",
                              "anchor_distribute": "flexible"},
                    },
                },
            },
        )
        assert added.status_code == 200, added.text
        assert added.json()["validation"] == []

    def test_undo_restores_prior_bytes(self, client):
        snap = make_session(client)
        sid = snap["session_id"]
        original = serialize(parse_document(json.dumps(snap["document"])))
        client.patch(
            f"/sessions/{sid}/containers/0-1",
            json={
                "op": "set_frame",
                "coordinate": "polar",
                "coordinate_system": {"cx": 0.5, "cy": 0.5, "r1": 0.35, "r2": 0.6,
                                      "a1": 180, "a2": 360},
            },
        )
        undone = client.post(f"/sessions/{sid}/undo")
        assert undone.status_code == 200
        restored = serialize(parse_document(json.dumps(undone.json()["document"])))
        assert restored == original

    def test_undo_empty_history_409(self, client):
        snap = make_session(client)
        assert client.post(f"/sessions/{snap['session_id']}/undo").status_code == 409


class TestDataUpload:
    def test_json_upload_changes_target_only(self, client):
        snap = make_session(client, "composite-13-line-with-dots")
        sid = snap["session_id"]
        before = client.get(f"/sessions/{sid}/render").text
        rows = [{"y": float(v)} for v in (5, 1, 9, 3, 7, 2, 8, 4, 6, 10, 11, 12)]
        response = client.put(f"/sessions/{sid}/data/0-1", json=rows)
        assert response.status_code == 200, response.text
        after = client.get(f"/sessions/{sid}/render").text
        assert before != after

        def isolate(svg, cid):
            import re

            return [e for e in re.findall(r"<[a-z]+ [^>]*>", svg)
                    if f'data-container="{cid}"' in e]

        assert isolate(before, "0-0") == isolate(after, "0-0")
        assert isolate(before, "0-1") != isolate(after, "0-1")

    def test_csv_upload(self, client):
        snap = make_session(client, "basic-01-simple-bar")
        sid = snap["session_id"]
        body = "value\n" + "\n".join(str(v) for v in range(1, 13))
        response = client.put(
            f"/sessions/{sid}/data/0", content=body, headers={"content-type": "text/csv"}
        )
        assert response.status_code == 200, response.text

    def test_malformed_rows_422(self, client):
        snap = make_session(client, "basic-01-simple-bar")
        response = client.put(
            f"/sessions/{snap['session_id']}/data/0", json=[{"nope": 1}]
        )
        assert response.status_code == 422


class TestPersistence:
    def test_sessions_survive_restart(self, tmp_path):
        config = ServiceConfig(storage_path=str(tmp_path / "kv.sqlite"))
        with TestClient(create_app(config)) as client:
            snap = make_session(client, "basic-01-simple-bar")
            sid = snap["session_id"]
        with TestClient(create_app(config)) as client:
            fetched = client.get(f"/sessions/{sid}")
            assert fetched.status_code == 200
            assert fetched.json()["document"] == snap["document"]
