"""HTTP API backing the interactive editor.

Pipeline runs execute on a background worker pool; sessions hold one
document plus per-container data overrides and a server-side undo stack,
persisted to an embedded sqlite store so accepted edits survive restarts.
Every mutating endpoint is atomic: nothing persists unless the resulting
document parses, and renders stay pure functions of
(document, overrides, seed, size).
"""

from __future__ import annotations

import json
import os
import sqlite3
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from fastapi import Body, FastAPI, HTTPException, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from . import edit
from .datagen import (
    DataGenError,
    apply_user_data,
    generate_table,
    parse_user_table,
    table_from_jsonable,
    table_to_jsonable,
)
from .io import (
    document_to_jsonable,
    parse_document,
    parse_frame,
    parse_spec_entry,
    serialize,
)
from .model import DslError, DslParseError, EditError, UnknownContainerError
from .pipeline import (
    FixtureTransport,
    HttpChatTransport,
    InputError,
    MllmEndpointConfig,
    PipelineRunner,
)
from .render import RenderError, render_document
from .validate import validate

ALLOWED_MEDIA = ("image/png", "image/jpeg", "image/gif", "image/webp")


@dataclass
class ServiceConfig:
    storage_path: Optional[str] = None  # None -> in-memory sqlite
    fixtures_dir: Optional[str] = None  # set -> pipeline replays fixtures
    max_upload_bytes: int = 20 * 1024 * 1024
    max_render_px: int = 4096
    history_limit: int = 100
    cors_origins: tuple[str, ...] = ("*",)
    mllm: MllmEndpointConfig = field(default_factory=MllmEndpointConfig)

    @classmethod
    def from_env(cls, env=os.environ) -> "ServiceConfig":
        return cls(
            storage_path=env.get("REVIS_STORAGE") or None,
            fixtures_dir=env.get("REVIS_FIXTURES") or None,
            max_upload_bytes=int(env.get("REVIS_MAX_UPLOAD", 20 * 1024 * 1024)),
            mllm=MllmEndpointConfig.from_env(env),
        )


class Store:
    """Tiny embedded key-value store over sqlite."""

    def __init__(self, path: Optional[str]):
        self._conn = sqlite3.connect(path or ":memory:", check_same_thread=False)
        self._lock = threading.Lock()
        with self._lock:
            self._conn.execute(
                "CREATE TABLE IF NOT EXISTS kv ("
                "tab TEXT NOT NULL, id TEXT NOT NULL, data TEXT NOT NULL, "
                "PRIMARY KEY (tab, id))"
            )
            self._conn.commit()

    def get(self, table: str, key: str) -> Optional[dict]:
        with self._lock:
            row = self._conn.execute(
                "SELECT data FROM kv WHERE tab = ? AND id = ?", (table, key)
            ).fetchone()
        return json.loads(row[0]) if row else None

    def put(self, table: str, key: str, value: dict) -> None:
        with self._lock:
            self._conn.execute(
                "INSERT OR REPLACE INTO kv (tab, id, data) VALUES (?, ?, ?)",
                (table, key, json.dumps(value)),
            )
            self._conn.commit()


def _session_locks() -> dict:
    return {}


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    app = FastAPI(title="revis", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = Store(config.storage_path)
    app.state.config = config
    app.state.store = store
    app.state.workers = ThreadPoolExecutor(max_workers=2)
    app.state.locks = _session_locks()
    app.state.locks_guard = threading.Lock()

    def session_lock(session_id: str) -> threading.Lock:
        with app.state.locks_guard:
            return app.state.locks.setdefault(session_id, threading.Lock())

    # -- helpers -----------------------------------------------------------

    def load_session(session_id: str) -> dict:
        session = store.get("sessions", session_id)
        if session is None:
            raise HTTPException(404, f"unknown session {session_id!r}")
        return session

    def session_document(session: dict):
        return parse_document(json.dumps(session["document"]))

    def session_tables(session: dict, doc) -> dict:
        tables = {}
        for cid, payload in session.get("overrides", {}).items():
            if doc.root.find(cid) is not None:
                tables[cid] = table_from_jsonable(payload)
        return tables

    def render_session(session: dict, width=800, height=600, seed=None) -> str:
        doc = session_document(session)
        return render_document(
            doc,
            seed=session["seed"] if seed is None else seed,
            width=width,
            height=height,
            overrides=session_tables(session, doc),
        )

    def snapshot(session: dict, with_render: bool = True) -> dict:
        doc = session_document(session)
        out = {
            "session_id": session["session_id"],
            "document": session["document"],
            "seed": session["seed"],
            "run_id": session.get("run_id"),
            "validation": validate(doc).to_jsonable(),
            "history_depth": len(session.get("history", [])),
            "overrides": {
                cid: table_from_jsonable(payload).to_jsonable()
                for cid, payload in session.get("overrides", {}).items()
            },
        }
        if with_render:
            try:
                out["render"] = render_session(session)
            except (RenderError, DslError) as exc:
                out["render"] = None
                out["render_error"] = str(exc)
        return out

    def push_history(session: dict) -> None:
        history = session.setdefault("history", [])
        history.append(
            {"document": session["document"], "overrides": session.get("overrides", {})}
        )
        if len(history) > config.history_limit:
            del history[: len(history) - config.history_limit]

    # -- pipeline runs -------------------------------------------------------

    def execute_run(run_id: str, image: bytes, media_type: str, case: Optional[str]):
        record = store.get("runs", run_id) or {"run_id": run_id}
        try:
            if config.fixtures_dir:
                if not case:
                    raise InputError("fixture mode needs a ?case=<name> parameter")
                transport = FixtureTransport(Path(config.fixtures_dir) / case)
            else:
                transport = HttpChatTransport(config.mllm)
            runner = PipelineRunner(config.mllm, transport)
            run = runner.run(image, media_type, run_id=run_id)
            record.update(
                {
                    "status": run.status,
                    "failure": run.failure,
                    "warnings": run.warnings,
                    "template_index": run.template_index,
                    "document": document_to_jsonable(run.document) if run.document else None,
                    "validation": run.report.to_jsonable() if run.report else None,
                }
            )
        except Exception as exc:  # noqa: BLE001 - background job boundary
            record.update({"status": "failed", "failure": str(exc)})
        store.put("runs", run_id, record)

    @app.post("/runs", status_code=202)
    async def start_run(request: Request, case: Optional[str] = Query(default=None)):
        media_type = (request.headers.get("content-type") or "").split(";")[0].strip()
        if media_type not in ALLOWED_MEDIA:
            raise HTTPException(415, f"unsupported media type {media_type!r}")
        image = await request.body()
        if len(image) > config.max_upload_bytes:
            raise HTTPException(413, "image exceeds the configured upload limit")
        if not config.fixtures_dir and not (config.mllm.base_url and config.mllm.api_key):
            raise HTTPException(503, "no pipeline endpoint configured")
        run_id = uuid.uuid4().hex
        store.put("runs", run_id, {"run_id": run_id, "status": "pending"})
        app.state.workers.submit(execute_run, run_id, image, media_type, case)
        return {"run_id": run_id, "status": "pending"}

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        record = store.get("runs", run_id)
        if record is None:
            raise HTTPException(404, f"unknown run {run_id!r}")
        return record

    # -- sessions ------------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def create_session(body: dict = Body(...)):
        if "run_id" in body:
            record = store.get("runs", body["run_id"])
            if record is None:
                raise HTTPException(404, f"unknown run {body['run_id']!r}")
            if record.get("status") != "done" or not record.get("document"):
                raise HTTPException(409, "run has not produced a document yet")
            document = record["document"]
            run_id = body["run_id"]
        elif "document" in body:
            document = body["document"]
            run_id = None
        else:
            raise HTTPException(422, "body needs either run_id or document")
        try:
            doc = parse_document(json.dumps(document))
        except DslParseError as exc:
            raise HTTPException(422, f"document does not parse: {exc}") from exc
        session = {
            "session_id": uuid.uuid4().hex,
            "document": document_to_jsonable(doc),
            "seed": int(body.get("seed", 0)),
            "run_id": run_id,
            "overrides": {},
            "history": [],
        }
        store.put("sessions", session["session_id"], session)
        return snapshot(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return snapshot(load_session(session_id), with_render=False)

    @app.get("/sessions/{session_id}/render")
    def get_render(
        session_id: str,
        width: float = Query(default=800, gt=0),
        height: float = Query(default=600, gt=0),
        seed: Optional[int] = Query(default=None),
    ):
        if width > config.max_render_px or height > config.max_render_px:
            raise HTTPException(422, f"render size is capped at {config.max_render_px}px")
        session = load_session(session_id)
        try:
            svg = render_session(session, width, height, seed)
        except (RenderError, DslError) as exc:
            raise HTTPException(409, f"document does not render: {exc}") from exc
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/sessions/{session_id}/tree")
    def get_tree(session_id: str):
        session = load_session(session_id)
        doc = session_document(session)

        def describe(node, parent):
            if parent is None:
                rel: dict = {"kind": node.frame.kind}
                if node.frame.kind == "cartesian":
                    rel.update({"x": 0.0, "y": 0.0, "w": 1.0, "h": 1.0})
                else:
                    f = node.frame
                    rel.update({"cx": f.cx, "cy": f.cy, "r1": f.r1, "r2": f.r2,
                                "a1": f.a1, "a2": f.a2})
            elif node.frame.kind == "cartesian":
                p = parent.frame
                w, h = p.x2 - p.x1, p.y2 - p.y1
                f = node.frame
                rel = {
                    "kind": "cartesian",
                    "x": (f.x1 - p.x1) / w,
                    "y": (f.y1 - p.y1) / h,
                    "w": (f.x2 - f.x1) / w,
                    "h": (f.y2 - f.y1) / h,
                }
            else:
                f = node.frame
                rel = {"kind": "polar", "cx": f.cx, "cy": f.cy, "r1": f.r1,
                       "r2": f.r2, "a1": f.a1, "a2": f.a2}
            return {
                "id": node.id,
                "kind": node.frame.kind,
                "is_leaf": node.is_leaf,
                "is_template": node.is_template,
                "mark_type": node.mark_type,
                "description": node.description,
                "rel": rel,
                "children": [describe(c, node) for c in node.children],
            }

        return describe(doc.root, None)

    def apply_patch(doc, cid: str, body: dict):
        op = body.get("op")
        if op == "set_frame":
            frame = parse_frame(body.get("coordinate", ""), body.get("coordinate_system") or {})
            return edit.edit_frame(doc, cid, frame)
        if op == "set_spec":
            entry = parse_spec_entry(body.get("spec"), "$.spec")
            return edit.with_spec(doc, cid, entry)
        if op == "set_spec_field":
            path = body.get("path")
            if not isinstance(path, str) or not path:
                raise HTTPException(422, "set_spec_field needs a dotted path")
            from .io import spec_entry_to_jsonable

            entry_obj = spec_entry_to_jsonable(doc.spec_for(cid))
            target = entry_obj
            parts = path.split(".")
            for part in parts[:-1]:
                if not isinstance(target, dict) or part not in target:
                    raise HTTPException(422, f"unknown specification path {path!r}")
                target = target[part]
            if not isinstance(target, dict):
                raise HTTPException(422, f"unknown specification path {path!r}")
            target[parts[-1]] = body.get("value")
            entry = parse_spec_entry(entry_obj, "$.spec")
            return edit.with_spec(doc, cid, entry)
        if op == "duplicate":
            node = doc.find_container(cid)
            frame = node.frame
            if body.get("coordinate_system"):
                frame = parse_frame(
                    body.get("coordinate", node.frame.kind), body["coordinate_system"]
                )
            new_doc, new_id = edit.duplicate_container(doc, cid, frame)
            return new_doc
        if op == "remove":
            return edit.remove_container(doc, cid)
        if op == "add":
            node_obj = body.get("node")
            if not isinstance(node_obj, dict):
                raise HTTPException(422, "add needs a node object")
            new_node = _parse_orphan_container(node_obj, cid)
            spec_obj = body.get("spec")
            entry = parse_spec_entry(spec_obj, "$.spec") if spec_obj else None
            return edit.add_subcontainer(doc, cid, new_node, entry)
        raise HTTPException(422, f"unknown op {op!r}")

    @app.patch("/sessions/{session_id}/containers/{cid}")
    def patch_container(session_id: str, cid: str, body: dict = Body(...)):
        with session_lock(session_id):
            session = load_session(session_id)
            doc = session_document(session)
            try:
                new_doc = apply_patch(doc, cid, body)
            except (EditError, DslParseError, UnknownContainerError) as exc:
                raise HTTPException(
                    422,
                    {"message": str(exc), "validation": validate(doc).to_jsonable()},
                ) from exc
            push_history(session)
            session["document"] = document_to_jsonable(new_doc)
            # drop overrides for containers that no longer exist
            session["overrides"] = {
                k: v
                for k, v in session.get("overrides", {}).items()
                if new_doc.root.find(k) is not None
            }
            store.put("sessions", session_id, session)
            return snapshot(session)

    @app.put("/sessions/{session_id}/data/{cid}")
    async def put_data(session_id: str, cid: str, request: Request):
        content_type = (request.headers.get("content-type") or "").split(";")[0].strip()
        raw = await request.body()
        try:
            if content_type == "text/csv":
                rows = parse_user_table(raw.decode("utf-8"))
            else:
                payload = json.loads(raw.decode("utf-8"))
                rows = payload.get("rows") if isinstance(payload, dict) else payload
                if not isinstance(rows, list):
                    raise DataGenError("expected a JSON array of row objects")
        except (ValueError, DataGenError) as exc:
            raise HTTPException(422, f"malformed table: {exc}") from exc
        with session_lock(session_id):
            session = load_session(session_id)
            doc = session_document(session)
            current = None
            if cid in session.get("overrides", {}):
                current = table_from_jsonable(session["overrides"][cid])
            else:
                if cid in doc.data_specifications:
                    current = generate_table(doc.data_specifications[cid], session["seed"], cid)
            try:
                new_doc, table = apply_user_data(
                    doc, cid, rows, seed=session["seed"], current=current
                )
            except (DataGenError, UnknownContainerError) as exc:
                raise HTTPException(422, str(exc)) from exc
            push_history(session)
            session["document"] = document_to_jsonable(new_doc)
            session.setdefault("overrides", {})[cid] = table_to_jsonable(table)
            store.put("sessions", session_id, session)
            return snapshot(session)

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str):
        with session_lock(session_id):
            session = load_session(session_id)
            history = session.get("history", [])
            if not history:
                raise HTTPException(409, "nothing to undo")
            previous = history.pop()
            session["document"] = previous["document"]
            session["overrides"] = previous.get("overrides", {})
            store.put("sessions", session_id, session)
            return snapshot(session)

    return app


def _parse_orphan_container(node_obj: dict, parent_id: str):
    """Parse a container subtree that is not rooted at '0'."""
    # Wrap in a synthetic root so the regular parser applies all checks,
    # then unwrap.  The wrapper spans an arbitrary cartesian space.
    wrapper = {
        "container_id": "0",
        "description": "",
        "coordinate": "cartesian",
        "coordinate_system": {"x1": 0, "y1": 0, "x2": 100, "y2": 100},
        "if_leaf": False,
        "components": [node_obj],
    }
    cid = node_obj.get("container_id")
    if not isinstance(cid, str) or not cid.startswith(parent_id + "-"):
        raise HTTPException(422, f"node id must be a direct child of {parent_id!r}")
    # Temporarily rebase the id chain onto the wrapper root.
    suffix = cid[len(parent_id):]
    rebased = json.loads(json.dumps(node_obj))

    def rebase(obj, old_prefix, new_prefix):
        obj["container_id"] = new_prefix + obj["container_id"][len(old_prefix):]
        for child in obj.get("components") or []:
            rebase(child, old_prefix, new_prefix)

    rebase(rebased, parent_id, "0")
    wrapper["components"] = [rebased]
    parsed = parse_document(json.dumps(wrapper))
    sub = parsed.root.children[0]

    def restore(node):
        import dataclasses as dc

        return dc.replace(
            node,
            id=parent_id + node.id[1:],
            children=tuple(restore(c) for c in node.children),
        )

    del suffix
    return restore(sub)
