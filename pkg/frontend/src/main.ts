/** DOM wiring for the five-panel editor. */

import { ApiClient, ApiError } from "./api.js";
import { buildPatch, formFields, parseFieldInput, type FormField } from "./form.js";
import {
  dataPanelHtml,
  editorPanelHtml,
  imagePanelHtml,
  resultPanelHtml,
  treePanelHtml,
} from "./panels.js";
import { Store, findNode, hover, select, setMode, withSession } from "./state.js";
import type { DslContainer, MockRow, PatchBody, SpecEntry } from "./types.js";

const SERVICE_URL =
  new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8008";

const api = new ApiClient(SERVICE_URL);
const store = new Store();

const panels = {
  image: document.getElementById("image-panel")!,
  tree: document.getElementById("tree-panel")!,
  editor: document.getElementById("editor-panel")!,
  result: document.getElementById("result-panel")!,
  data: document.getElementById("data-panel")!,
  status: document.getElementById("status-bar")!,
};

let currentFields: FormField[] = [];

function status(text: string, isError = false): void {
  panels.status.textContent = text;
  panels.status.classList.toggle("error", isError);
}

function selectedContainer(): DslContainer | null {
  const state = store.get();
  if (!state.snapshot || !state.selectedId) return null;
  const walk = (node: DslContainer): DslContainer | null => {
    if (node.container_id === state.selectedId) return node;
    for (const child of node.components ?? []) {
      const found = walk(child);
      if (found) return found;
    }
    return null;
  };
  return walk(state.snapshot.document);
}

function selectedSpec(): SpecEntry | null {
  const state = store.get();
  if (!state.snapshot || !state.selectedId) return null;
  return state.snapshot.document.data_specification?.[state.selectedId] ?? null;
}

function selectedRows(): MockRow[] {
  const state = store.get();
  if (!state.snapshot || !state.selectedId) return [];
  return state.snapshot.overrides[state.selectedId] ?? [];
}

async function refreshSession(sessionId: string): Promise<void> {
  const snapshot = await api.getSession(sessionId);
  snapshot.render = await api.render(sessionId);
  const tree = await api.getTree(sessionId);
  store.update((state) => withSession(state, snapshot, tree));
}

function renderAll(): void {
  const state = store.get();
  panels.image.innerHTML = imagePanelHtml(state);
  panels.tree.innerHTML = treePanelHtml(state);
  const container = selectedContainer();
  const entry = selectedSpec();
  currentFields = container ? formFields(container, entry) : [];
  const rawText = entry ? JSON.stringify(entry, null, 2) : "";
  panels.editor.innerHTML = editorPanelHtml(state, currentFields, rawText);
  panels.result.innerHTML = resultPanelHtml(state);
  panels.data.innerHTML = dataPanelHtml(state.selectedId, selectedRows());
}

async function applyPatch(containerId: string, body: PatchBody): Promise<void> {
  const state = store.get();
  if (!state.sessionId) return;
  try {
    await api.patchContainer(state.sessionId, containerId, body);
    await refreshSession(state.sessionId);
    status(`updated ${containerId}`);
  } catch (error) {
    status(error instanceof ApiError ? error.message : String(error), true);
  }
}

// -- event wiring -------------------------------------------------------------

panels.image.addEventListener("change", async (event) => {
  const input = event.target as HTMLInputElement;
  if (input.id !== "image-upload" || !input.files?.length) return;
  const file = input.files[0];
  store.update((state) => ({ ...state, imageUrl: URL.createObjectURL(file) }));
  status("running the reproduction pipeline…");
  try {
    const fixtureCase = file.name.replace(/\.[^.]*$/, "");
    const { run_id } = await api.uploadImage(await file.arrayBuffer(), file.type, fixtureCase);
    const run = await api.waitForRun(run_id);
    if (run.status !== "done") throw new Error(run.failure ?? "pipeline failed");
    const snapshot = await api.createSession({ run_id });
    await refreshSession(snapshot.session_id);
    status(`reproduced ${file.name} — session ${snapshot.session_id.slice(0, 8)}`);
  } catch (error) {
    status(error instanceof ApiError ? error.message : String(error), true);
  }
});

panels.tree.addEventListener("click", (event) => {
  const node = (event.target as HTMLElement).closest<HTMLElement>("[data-node-id]");
  if (node) store.update((state) => select(state, node.dataset.nodeId ?? null));
});

panels.tree.addEventListener("mouseover", (event) => {
  const node = (event.target as HTMLElement).closest<HTMLElement>("[data-node-id]");
  store.update((state) => hover(state, node?.dataset.nodeId ?? null));
});

panels.tree.addEventListener("mouseleave", () => {
  store.update((state) => hover(state, null));
});

panels.tree.addEventListener("contextmenu", async (event) => {
  const node = (event.target as HTMLElement).closest<HTMLElement>("[data-node-id]");
  if (!node?.dataset.nodeId) return;
  event.preventDefault();
  const id = node.dataset.nodeId;
  const action = window.prompt(`Container ${id}: type "remove" or "add <child-suffix>"`, "");
  if (!action) return;
  if (action.trim() === "remove") {
    await applyPatch(id, { op: "remove" });
    return;
  }
  const match = action.trim().match(/^add\s+(\S+)$/);
  if (match) {
    const state = store.get();
    const parent = findNode(state.tree, id);
    if (!parent) return;
    const childId = `${id}-${match[1]}`;
    await applyPatch(id, {
      op: "add",
      node: {
        container_id: childId,
        description: "added via the tree panel",
        coordinate: parent.kind,
        coordinate_system:
          parent.kind === "cartesian"
            ? { x1: 0, y1: 0, x2: 100, y2: 100 }
            : { cx: 0.5, cy: 0.5, r1: 0, r2: 1, a1: 0, a2: 360 },
        if_leaf: true,
        mark_type: "rectangle",
      } as unknown as DslContainer,
    });
  }
});

panels.result.addEventListener("mouseover", (event) => {
  const mark = (event.target as HTMLElement).closest<HTMLElement>("[data-container]");
  store.update((state) => hover(state, mark?.dataset.container ?? null));
});

panels.editor.addEventListener("click", (event) => {
  const target = event.target as HTMLElement;
  const mode = target.dataset?.mode;
  if (mode === "form" || mode === "raw") {
    store.update((state) => setMode(state, mode));
  }
  if (target.id === "raw-apply") {
    const textarea = document.getElementById("raw-editor") as HTMLTextAreaElement | null;
    const state = store.get();
    if (!textarea || !state.selectedId) return;
    try {
      const spec = JSON.parse(textarea.value) as SpecEntry;
      void applyPatch(state.selectedId, { op: "set_spec", spec });
    } catch (error) {
      status(`raw JSON does not parse: ${error}`, true);
    }
  }
});

panels.editor.addEventListener("change", (event) => {
  const input = event.target as HTMLInputElement | HTMLSelectElement;
  const indexText = input.dataset?.fieldIndex;
  const state = store.get();
  if (indexText === undefined || !state.selectedId) return;
  const field = currentFields[Number(indexText)];
  const container = selectedContainer();
  if (!field || !container) return;
  try {
    const raw =
      input instanceof HTMLInputElement && input.type === "checkbox"
        ? String(input.checked)
        : input.value;
    const value = parseFieldInput(field, raw);
    void applyPatch(state.selectedId, buildPatch(container, selectedSpec(), field, value));
  } catch (error) {
    status(String(error), true);
  }
});

panels.data.addEventListener("click", async (event) => {
  if ((event.target as HTMLElement).id !== "data-apply") return;
  const textarea = document.getElementById("data-input") as HTMLTextAreaElement | null;
  const state = store.get();
  if (!textarea || !state.sessionId || !state.selectedId) return;
  const text = textarea.value.trim();
  if (!text) return;
  try {
    if (text.startsWith("[")) {
      await api.putData(state.sessionId, state.selectedId, JSON.parse(text));
    } else {
      await api.putCsv(state.sessionId, state.selectedId, text);
    }
    await refreshSession(state.sessionId);
    status(`replaced data of ${state.selectedId}`);
  } catch (error) {
    status(error instanceof ApiError ? error.message : String(error), true);
  }
});

document.getElementById("undo-button")?.addEventListener("click", async () => {
  const state = store.get();
  if (!state.sessionId) return;
  try {
    await api.undo(state.sessionId);
    await refreshSession(state.sessionId);
    status("undid the last change");
  } catch (error) {
    status(error instanceof ApiError ? error.message : String(error), true);
  }
});

store.subscribe(renderAll);
renderAll();
status(`ready — service at ${SERVICE_URL}`);
