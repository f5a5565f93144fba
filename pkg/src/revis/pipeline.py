"""Three-step image-to-DSL pipeline against a chat-completions endpoint.

Step 1 parses the visual structure into a container tree, step 2 merges
repeated containers into template containers (two sequential calls: merge,
then per-template data inference), and step 3 infers one data specification
per leaf, fanning out with bounded parallelism.  Raw responses are persisted
before any parse attempt, one corrective repair round is allowed per call,
and a recorded-fixture transport makes full runs replayable offline.
"""

from __future__ import annotations

import base64
import json
import logging
import re
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Optional, Protocol

from . import prompts
from .io import (
    document_to_jsonable,
    parse_document,
    parse_spec_entry,
    serialize,
)
from .model import (
    CartesianFrame,
    ContainerNode,
    DataSpecification,
    DslDocument,
    DslParseError,
    Frame,
    PolarFrame,
    is_template_id,
)
from .validate import ValidationReport, validate

log = logging.getLogger(__name__)

_FENCE_RE = re.compile(r"```(?:json)?\s*(.*?)```", re.DOTALL | re.IGNORECASE)
_OBJECT_RE = re.compile(r"\{.*\}", re.DOTALL)

_IMAGE_MAGIC = {
    "image/png": b"\x89PNG",
    "image/jpeg": b"\xff\xd8\xff",
    "image/gif": b"GIF8",
}


class PipelineError(Exception):
    pass


class InputError(PipelineError):
    pass


class TransportError(PipelineError):
    pass


class StructuredOutputError(PipelineError):
    """Terminal schema failure; carries every transcript seen for the call."""

    def __init__(self, message: str, transcripts: Optional[list[str]] = None):
        super().__init__(message)
        self.transcripts = transcripts or []


@dataclass
class MllmEndpointConfig:
    base_url: str = ""
    model: str = ""
    api_key: str = ""
    timeout: float = 120.0
    max_retries: int = 2
    max_parallel: int = 4

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be > 0")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        if self.max_parallel < 1:
            raise ValueError("max_parallel must be >= 1")

    @classmethod
    def from_env(cls, env) -> "MllmEndpointConfig":
        return cls(
            base_url=env.get("REVIS_MLLM_BASE_URL", ""),
            model=env.get("REVIS_MLLM_MODEL", ""),
            api_key=env.get("REVIS_MLLM_API_KEY", ""),
            timeout=float(env.get("REVIS_MLLM_TIMEOUT", "120")),
            max_retries=int(env.get("REVIS_MLLM_RETRIES", "2")),
            max_parallel=int(env.get("REVIS_MLLM_PARALLEL", "4")),
        )


class ChatTransport(Protocol):
    def complete(self, key: str, messages: list[dict]) -> str:
        """Run one chat completion; ``key`` names the pipeline call."""


class HttpChatTransport:
    """Live OpenAI-style chat-completions endpoint."""

    def __init__(self, config: MllmEndpointConfig):
        if not config.base_url or not config.api_key:
            raise InputError("live pipeline runs need an endpoint base URL and API key")
        self.config = config

    def complete(self, key: str, messages: list[dict]) -> str:
        import httpx

        url = self.config.base_url.rstrip("/") + "/chat/completions"
        payload = {
            "model": self.config.model,
            "messages": messages,
            "response_format": {"type": "json_object"},
        }
        if key == "step1" or key.startswith("step1."):
            # Step 1 output is a nested container tree, not forced JSON mode
            # on endpoints that reject response_format; keep it regardless.
            pass
        last_error: Exception | None = None
        for attempt in range(self.config.max_retries + 1):
            try:
                response = httpx.post(
                    url,
                    json=payload,
                    headers={"Authorization": f"Bearer {self.config.api_key}"},
                    timeout=self.config.timeout,
                )
                response.raise_for_status()
                return response.json()["choices"][0]["message"]["content"]
            except Exception as exc:  # noqa: BLE001 - retried, then surfaced
                last_error = exc
                log.warning("call %s attempt %d failed: %s", key, attempt + 1, exc)
        raise TransportError(f"endpoint failed after retries for {key}: {last_error}")


class FixtureTransport:
    """Replays recorded responses from ``<case>/<key>.txt`` files."""

    def __init__(self, case_dir):
        self.case_dir = Path(case_dir)
        if not self.case_dir.is_dir():
            raise InputError(f"fixture case directory not found: {case_dir}")

    def complete(self, key: str, messages: list[dict]) -> str:
        path = self.case_dir / f"{key}.txt"
        if not path.is_file():
            raise TransportError(f"no recorded fixture for call {key!r} in {self.case_dir}")
        return path.read_text(encoding="utf-8")


class ScriptedTransport:
    """In-memory transport for tests: key -> list of successive responses."""

    def __init__(self, responses: dict[str, list[str]]):
        self.responses = {k: list(v) for k, v in responses.items()}
        self.calls: list[str] = []

    def complete(self, key: str, messages: list[dict]) -> str:
        self.calls.append(key)
        queue = self.responses.get(key)
        if not queue:
            raise TransportError(f"no scripted response for {key!r}")
        return queue.pop(0)


# ---------------------------------------------------------------------------
# Structured-output repair


def strip_framing(raw: str) -> str:
    """Peel markdown fences and any prose surrounding the JSON payload."""
    fenced = _FENCE_RE.findall(raw)
    if fenced:
        raw = "\n".join(fenced)
    match = _OBJECT_RE.search(raw)
    return match.group(0).strip() if match else raw.strip()


def repair_structured_output(
    raw: str,
    parser: Callable[[str], object],
    schema_name: str,
    corrective_call: Optional[Callable[[str, str], str]] = None,
):
    """Parse a raw response, repairing once before giving up.

    The strict parse runs first; on failure the payload is re-tried with
    framing stripped; on failure again a single corrective follow-up call
    (when available) receives the validation errors.  Returns
    ``(artifact, transcripts)``.
    """
    transcripts = [raw]
    try:
        return parser(raw), transcripts
    except (DslParseError, PipelineError, json.JSONDecodeError, ValueError) as first:
        stripped = strip_framing(raw)
        if stripped != raw:
            try:
                return parser(stripped), transcripts
            except (DslParseError, PipelineError, json.JSONDecodeError, ValueError):
                pass
        if corrective_call is None:
            raise StructuredOutputError(
                f"{schema_name}: {first}", transcripts
            ) from first
        corrected = corrective_call(raw, str(first))
        transcripts.append(corrected)
        for candidate in (corrected, strip_framing(corrected)):
            try:
                return parser(candidate), transcripts
            except (DslParseError, PipelineError, json.JSONDecodeError, ValueError) as last:
                error = last
        raise StructuredOutputError(
            f"{schema_name}: unrepairable output: {error}", transcripts
        ) from error


# ---------------------------------------------------------------------------
# Run bookkeeping


@dataclass
class PipelineRun:
    run_id: str
    media_type: str = "image/png"
    status: str = "pending"
    transcripts: dict[str, str] = field(default_factory=dict)
    template_index: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    document: Optional[DslDocument] = None
    report: Optional[ValidationReport] = None
    failure: Optional[str] = None


def check_image(image: bytes, media_type: str) -> None:
    if media_type == "image/webp":
        if len(image) < 12 or image[:4] != b"RIFF" or image[8:12] != b"WEBP":
            raise InputError("corrupt webp image payload")
        return
    magic = _IMAGE_MAGIC.get(media_type)
    if magic is None:
        raise InputError(f"unsupported media type {media_type!r}")
    if not image.startswith(magic):
        raise InputError(f"payload does not look like {media_type}")


def _image_part(image: bytes, media_type: str) -> dict:
    encoded = base64.b64encode(image).decode("ascii")
    return {
        "type": "image_url",
        "image_url": {"url": f"data:{media_type};base64,{encoded}"},
    }


def _user_message(text: str, image_part: Optional[dict] = None) -> dict:
    content: list[dict] = [{"type": "text", "text": text}]
    if image_part is not None:
        content.append(image_part)
    return {"role": "user", "content": content}


def _tree_issues(doc: DslDocument) -> list[str]:
    """Structural problems, ignoring data-specification coverage."""
    return [
        str(issue)
        for issue in validate(doc).errors
        if not issue.rule.startswith("spec.")
    ]


def _parse_bbox(obj: dict) -> Frame:
    keys = set(obj)
    if keys == {"x1", "y1", "x2", "y2"}:
        return CartesianFrame(**{k: float(obj[k]) for k in obj})
    if keys == {"cx", "cy", "r1", "r2", "a1", "a2"}:
        return PolarFrame(**{k: float(obj[k]) for k in obj})
    raise DslParseError("template_index", f"unrecognized bounding box fields {sorted(keys)}")


def union_frames(frames: list[Frame]) -> Frame:
    first = frames[0]
    if isinstance(first, CartesianFrame):
        return CartesianFrame(
            x1=min(f.x1 for f in frames),
            y1=min(f.y1 for f in frames),
            x2=max(f.x2 for f in frames),
            y2=max(f.y2 for f in frames),
        )
    return PolarFrame(
        cx=first.cx,
        cy=first.cy,
        r1=min(f.r1 for f in frames),
        r2=max(f.r2 for f in frames),
        a1=min(f.a1 for f in frames),
        a2=max(f.a2 for f in frames),
    )


class PipelineRunner:
    """Drives one image through structure, template, and encoding parsing."""

    def __init__(
        self,
        config: MllmEndpointConfig,
        transport: ChatTransport,
        store_dir=None,
    ):
        self.config = config
        self.transport = transport
        self.store_dir = Path(store_dir) if store_dir else None
        self._lock = threading.Lock()

    # -- persistence -------------------------------------------------------

    def _persist(self, run: PipelineRun, key: str, raw: str) -> None:
        with self._lock:
            run.transcripts[key] = raw
            if self.store_dir is not None:
                run_dir = self.store_dir / run.run_id
                run_dir.mkdir(parents=True, exist_ok=True)
                (run_dir / f"{key}.txt").write_text(raw, encoding="utf-8")

    def _call(self, run: PipelineRun, key: str, messages: list[dict], parser, schema: str):
        raw = self.transport.complete(key, messages)
        self._persist(run, key, raw)

        def corrective(previous: str, errors: str) -> str:
            follow_up = messages + [
                {"role": "assistant", "content": previous},
                _user_message(
                    "The previous response failed schema validation:\n"
                    f"{errors}\n"
                    "Return the corrected JSON only. No extra text."
                ),
            ]
            corrected = self.transport.complete(f"{key}.repair", follow_up)
            self._persist(run, f"{key}.repair", corrected)
            return corrected

        artifact, _ = repair_structured_output(raw, parser, schema, corrective)
        return artifact

    # -- steps -------------------------------------------------------------

    def step1_parse_structure(self, run: PipelineRun, image_part: dict) -> DslDocument:
        def parser(raw: str) -> DslDocument:
            doc = parse_document(raw)
            problems = _tree_issues(doc)
            if problems:
                raise DslParseError("structure", "; ".join(problems))
            return doc

        messages = [_user_message(prompts.STEP1_STRUCTURE_PROMPT, image_part)]
        return self._call(run, "step1", messages, parser, "container structure")

    def step2_extract_templates(
        self, run: PipelineRun, structure: DslDocument, image_part: dict
    ) -> tuple[DslDocument, list[dict], dict[str, DataSpecification]]:
        structure_text = serialize(structure)

        def parse_merge(raw: str):
            obj = json.loads(raw)
            if not isinstance(obj, dict) or "cleaned_dsl" not in obj:
                raise DslParseError("$", "expected an object with cleaned_dsl and template_index")
            cleaned = parse_document(json.dumps(obj["cleaned_dsl"]))
            problems = _tree_issues(cleaned)
            if problems:
                raise DslParseError("cleaned_dsl", "; ".join(problems))
            index = obj.get("template_index") or []
            if not isinstance(index, list):
                raise DslParseError("template_index", "expected a list")
            entries = []
            for i, item in enumerate(index):
                tid = item.get("template_id")
                instance_ids = item.get("instance_ids") or []
                bboxes = [_parse_bbox(b) for b in item.get("instance_bboxes") or []]
                if not is_template_id(tid or ""):
                    raise DslParseError(f"template_index[{i}]", f"bad template id {tid!r}")
                if cleaned.root.find(tid) is None:
                    raise DslParseError(
                        f"template_index[{i}]", f"template {tid!r} missing from cleaned_dsl"
                    )
                if len(instance_ids) != len(bboxes) or len(instance_ids) < 2:
                    raise DslParseError(
                        f"template_index[{i}]",
                        "instance_ids and instance_bboxes must align with >= 2 entries",
                    )
                for iid in instance_ids:
                    if cleaned.root.find(iid) is not None:
                        raise DslParseError(
                            f"template_index[{i}]",
                            f"merged instance {iid!r} still present in cleaned_dsl",
                        )
                entries.append(
                    {"template_id": tid, "instance_ids": list(instance_ids), "bboxes": bboxes}
                )
            return cleaned, entries

        merge_prompt = prompts.render_prompt(
            prompts.TEMPLATE_PARSING_1_PROMPT, structure_result=structure_text
        )
        cleaned, entries = self._call(
            run, "step2a", [_user_message(merge_prompt, image_part)], parse_merge,
            "template merge",
        )

        # Template frames are the bounding box of all merged instances.
        root = cleaned.root
        for entry in entries:
            tid = entry["template_id"]
            box = union_frames(entry["bboxes"])
            current = root.find(tid)
            if current.frame != box:
                run.warnings.append(
                    f"{tid}: template frame adjusted to the union of its instances"
                )
                root = _replace_frame(root, tid, box)
        cleaned = cleaned.with_root(root)

        template_specs: dict[str, DataSpecification] = {}
        cleaned_text = serialize(cleaned)
        index_text = json.dumps(
            [
                {
                    "template_id": e["template_id"],
                    "instance_ids": e["instance_ids"],
                    "instance_bboxes": [
                        document_frame_jsonable(b) for b in e["bboxes"]
                    ],
                }
                for e in entries
            ],
            indent=2,
        )
        for entry in entries:
            tid = entry["template_id"]

            def parse_template_spec(raw: str, tid=tid) -> DataSpecification:
                obj = json.loads(raw)
                if obj.get("container_id") not in (None, tid):
                    raise DslParseError("container_id", f"expected {tid!r}")
                payload = {
                    "data_structure": obj.get("data_structure"),
                    "layout_specification": obj.get("layout_specification"),
                }
                return parse_spec_entry(payload, "$")

            text = prompts.render_prompt(
                prompts.TEMPLATE_PARSING_2_PROMPT,
                structure_result=structure_text,
                cleaned_dsl=cleaned_text,
                template_index=index_text,
            )
            template_specs[tid] = self._call(
                run, f"step2b-{tid}", [_user_message(text, image_part)],
                parse_template_spec, f"template spec {tid}",
            )
        return cleaned, entries, template_specs

    def step3_parse_leaf(
        self, run: PipelineRun, cleaned: DslDocument, leaf_id: str, image_part: dict
    ) -> DataSpecification:
        node = cleaned.root.find(leaf_id)
        if node is None or not node.is_leaf:
            raise InputError(f"{leaf_id!r} is not a leaf of the cleaned tree")
        text = prompts.render_prompt(
            prompts.MARK_PARSING_PROMPT,
            dsl=serialize(cleaned),
            mark_type=node.mark_type or "",
            container_id=leaf_id,
        )
        allowed_dims = ("x", "y") if node.frame.kind == "cartesian" else ("radius", "angle")

        def parser(raw: str) -> DataSpecification:
            entry = parse_spec_entry(json.loads(raw), "$")
            bad = [d for d in entry.layout_specification.dimensions if d not in allowed_dims]
            if bad:
                raise DslParseError(
                    "$.layout_specification",
                    f"dimension(s) {', '.join(bad)} are not usable in a "
                    f"{node.frame.kind} container; use {' and '.join(allowed_dims)}",
                )
            return entry

        entry = self._call(
            run, f"step3-{leaf_id}", [_user_message(text, image_part)], parser,
            f"leaf spec {leaf_id}",
        )
        mark = entry.mark_specification
        if mark is not None and node.mark_type and mark.mark_type != node.mark_type:
            run.warnings.append(
                f"{leaf_id}: specification mark_type {mark.mark_type!r} overridden "
                f"by the tree's {node.mark_type!r}"
            )
            entry = replace(
                entry, mark_specification=replace(mark, mark_type=node.mark_type)
            )
        return entry

    # -- assembly ----------------------------------------------------------

    @staticmethod
    def assemble(
        cleaned: DslDocument,
        template_specs: dict[str, DataSpecification],
        leaf_specs: dict[str, DataSpecification],
    ) -> tuple[DslDocument, ValidationReport]:
        specs: dict[str, DataSpecification] = {}
        for cid in cleaned.specced_ids():
            node = cleaned.root.find(cid)
            if node is not None and node.is_template:
                if cid not in template_specs:
                    raise PipelineError(f"missing template specification for {cid!r}")
                specs[cid] = template_specs[cid]
            else:
                if cid not in leaf_specs:
                    raise PipelineError(f"missing leaf specification for {cid!r}")
                specs[cid] = leaf_specs[cid]
        doc = cleaned.with_specs(specs)
        return doc, validate(doc)

    # -- whole run ---------------------------------------------------------

    def run(
        self, image: bytes, media_type: str = "image/png", run_id: Optional[str] = None
    ) -> PipelineRun:
        run = PipelineRun(run_id=run_id or uuid.uuid4().hex, media_type=media_type)
        try:
            check_image(image, media_type)
            image_part = _image_part(image, media_type)

            run.status = "step1"
            structure = self.step1_parse_structure(run, image_part)

            run.status = "step2"
            cleaned, entries, template_specs = self.step2_extract_templates(
                run, structure, image_part
            )
            run.template_index = [
                {"template_id": e["template_id"], "instance_ids": e["instance_ids"]}
                for e in entries
            ]

            run.status = "step3"
            from .model import id_sort_key

            leaf_ids = sorted((n.id for n in cleaned.leaves()), key=id_sort_key)
            leaf_specs: dict[str, DataSpecification] = {}
            if leaf_ids:
                with ThreadPoolExecutor(max_workers=self.config.max_parallel) as pool:
                    futures = {
                        cid: pool.submit(self.step3_parse_leaf, run, cleaned, cid, image_part)
                        for cid in leaf_ids
                    }
                    for cid in leaf_ids:  # deterministic merge order
                        leaf_specs[cid] = futures[cid].result()

            run.status = "assembling"
            run.document, run.report = self.assemble(cleaned, template_specs, leaf_specs)
            if self.store_dir is not None:
                run_dir = self.store_dir / run.run_id
                run_dir.mkdir(parents=True, exist_ok=True)
                (run_dir / "final.revis.json").write_text(
                    serialize(run.document), encoding="utf-8"
                )
            run.status = "done"
        except PipelineError as exc:
            run.status = "failed"
            run.failure = str(exc)
        except DslParseError as exc:
            run.status = "failed"
            run.failure = str(exc)
        return run


def _replace_frame(root: ContainerNode, cid: str, frame: Frame) -> ContainerNode:
    if root.id == cid:
        return replace(root, frame=frame)
    return replace(
        root,
        children=tuple(
            _replace_frame(c, cid, frame) if (c.id == cid or cid.startswith(c.id + "-")) else c
            for c in root.children
        ),
    )


def document_frame_jsonable(frame: Frame) -> dict:
    from .io import frame_to_jsonable

    return frame_to_jsonable(frame)


def reproduce_from_fixtures(case_dir, store_dir=None) -> PipelineRun:
    """Replay one recorded case end to end without network access."""
    case = Path(case_dir)
    config = MllmEndpointConfig(base_url="fixture", model="fixture", api_key="fixture")
    runner = PipelineRunner(config, FixtureTransport(case), store_dir=store_dir)
    image = case / "image.png"
    payload = image.read_bytes() if image.is_file() else _PLACEHOLDER_PNG
    return runner.run(payload, "image/png", run_id=f"fixture-{case.name}")


# A 1x1 transparent png so fixture replays need no binary asset checked in.
_PLACEHOLDER_PNG = base64.b64decode(
    "iVBORw0KGgoAAAANSUhEUgAAAAEAAAABCAYAAAAfFcSJAAAADUlEQVR42mNk"
    "YPhfDwAChwGA60e6kgAAAABJRU5ErkJggg=="
)
