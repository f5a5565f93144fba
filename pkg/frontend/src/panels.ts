/** Pure HTML builders for the five editor panels.
 *
 * Rendering to strings keeps the panel logic testable without a browser;
 * main.ts owns the DOM wiring and event delegation.
 */

import { highlightStyle, overlayHtml, overlayShape } from "./highlight.js";
import type { FormField } from "./form.js";
import type { EditorState } from "./state.js";
import type { MockRow, TreeNode } from "./types.js";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

// -- Image panel -------------------------------------------------------------

export function imagePanelHtml(state: EditorState): string {
  if (!state.imageUrl) {
    return (
      '<div class="image-empty">' +
      '<label class="upload-label">Upload a chart image' +
      '<input type="file" id="image-upload" accept="image/png,image/jpeg,image/gif,image/webp"/>' +
      "</label></div>"
    );
  }
  const overlay =
    state.hoverId && state.tree ? overlayHtml(overlayShape(state.tree, state.hoverId)) : "";
  return (
    '<div class="image-holder">' +
    `<img src="${esc(state.imageUrl)}" alt="uploaded visualization"/>` +
    overlay +
    "</div>"
  );
}

// -- Tree panel --------------------------------------------------------------

function thumbShapeHtml(node: TreeNode): string {
  const rel = node.rel;
  if (rel.kind === "polar") {
    return '<span class="thumb thumb-polar"><span class="thumb-ring"></span></span>';
  }
  const pct = (v: number | undefined, fallback: number) =>
    `${(((v ?? fallback) as number) * 100).toFixed(1)}%`;
  // The shadow shape shows the container's relative position inside its
  // parent; tree fractions are y-up, CSS is y-down.
  const top = 1 - (rel.y ?? 0) - (rel.h ?? 1);
  return (
    '<span class="thumb thumb-cartesian">' +
    `<span class="thumb-shadow" style="left:${pct(rel.x, 0)};top:${(top * 100).toFixed(1)}%;` +
    `width:${pct(rel.w, 1)};height:${pct(rel.h, 1)}"></span></span>`
  );
}

function treeNodeHtml(node: TreeNode, state: EditorState): string {
  const classes = ["tree-node", node.kind === "polar" ? "node-polar" : "node-cartesian"];
  if (node.id === state.selectedId) classes.push("selected");
  if (node.id === state.hoverId) classes.push("hovered");
  if (node.is_template) classes.push("template");
  const label = node.is_leaf ? `${node.id} · ${node.mark_type ?? "?"}` : node.id;
  const children = node.children.length
    ? `<ul>${node.children.map((c) => `<li>${treeNodeHtml(c, state)}</li>`).join("")}</ul>`
    : "";
  return (
    `<div class="${classes.join(" ")}" data-node-id="${esc(node.id)}" ` +
    `title="${esc(node.description)}">${thumbShapeHtml(node)}` +
    `<span class="node-label">${esc(label)}</span></div>${children}`
  );
}

export function treePanelHtml(state: EditorState): string {
  if (!state.tree) return '<div class="tree-empty">No document yet.</div>';
  return `<ul class="tree-root"><li>${treeNodeHtml(state.tree, state)}</li></ul>`;
}

// -- DSL editor panel --------------------------------------------------------

function fieldInputHtml(field: FormField, index: number): string {
  const id = `form-field-${index}`;
  const common = `id="${id}" data-field-index="${index}"`;
  if (field.kind === "boolean") {
    const checked = field.value ? " checked" : "";
    return `<input type="checkbox" ${common}${checked}/>`;
  }
  if (field.kind === "select") {
    const options = (field.options ?? [])
      .map(
        (option) =>
          `<option value="${esc(option)}"${option === field.value ? " selected" : ""}>` +
          `${esc(option)}</option>`,
      )
      .join("");
    return `<select ${common}>${options}</select>`;
  }
  if (field.kind === "color") {
    return `<input type="color" ${common} value="${esc(String(field.value))}"/>`;
  }
  const step = field.step ? ` step="${field.step}"` : ' step="any"';
  const type = field.kind === "number" ? "number" : "text";
  return `<input type="${type}" ${common}${step} value="${esc(String(field.value))}"/>`;
}

export function editorPanelHtml(
  state: EditorState,
  fields: FormField[],
  rawText: string,
): string {
  const formActive = state.editorMode === "form";
  const tabs =
    '<div class="editor-tabs">' +
    `<button data-mode="form" class="${formActive ? "active" : ""}">Form Mode</button>` +
    `<button data-mode="raw" class="${formActive ? "" : "active"}">Raw JSON</button>` +
    "</div>";
  if (!formActive) {
    return (
      tabs +
      `<textarea id="raw-editor" spellcheck="false">${esc(rawText)}</textarea>` +
      '<button id="raw-apply">Apply</button>'
    );
  }
  if (!fields.length) {
    return tabs + '<div class="editor-empty">Select a container to edit.</div>';
  }
  const rows = fields
    .map(
      (field, index) =>
        `<label class="form-row"><span>${esc(field.label)}</span>` +
        `${fieldInputHtml(field, index)}</label>`,
    )
    .join("");
  return tabs + `<form id="spec-form">${rows}</form>`;
}

// -- Result panel ------------------------------------------------------------

export function resultPanelHtml(state: EditorState): string {
  const svg = state.snapshot?.render;
  if (!svg) return '<div class="result-empty">Nothing rendered yet.</div>';
  return `<div class="result-holder">${highlightStyle(state.hoverId)}${svg}</div>`;
}

// -- Data panel --------------------------------------------------------------

export function dataColumns(rows: MockRow[]): string[] {
  const columns: string[] = [];
  for (const row of rows) {
    for (const key of Object.keys(row)) {
      if (!columns.includes(key)) columns.push(key);
    }
  }
  return columns;
}

export function dataPanelHtml(containerId: string | null, rows: MockRow[]): string {
  if (!containerId) return '<div class="data-empty">Select a container.</div>';
  if (!rows.length) {
    return `<div class="data-empty">${esc(containerId)} carries no data table.</div>`;
  }
  const columns = dataColumns(rows);
  const head = columns.map((c) => `<th>${esc(c)}</th>`).join("");
  const body = rows
    .map(
      (row) =>
        "<tr>" +
        columns
          .map((column) => {
            const value = row[column];
            const text =
              typeof value === "number" ? value.toFixed(3).replace(/\.?0+$/, "") : String(value ?? "");
            return `<td>${esc(text)}</td>`;
          })
          .join("") +
        "</tr>",
    )
    .join("");
  return (
    `<div class="data-meta">${esc(containerId)} — ${rows.length} rows. ` +
    "Paste replacement rows (JSON or CSV) below; matching columns update in place.</div>" +
    `<table class="data-table"><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>` +
    '<textarea id="data-input" placeholder=\'[{"value": 1.0, "fill": "#4c78a8"}]\'></textarea>' +
    '<button id="data-apply">Apply data</button>'
  );
}
