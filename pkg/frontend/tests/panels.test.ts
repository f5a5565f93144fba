import { describe, expect, it } from "vitest";

import {
  dataColumns,
  dataPanelHtml,
  editorPanelHtml,
  imagePanelHtml,
  resultPanelHtml,
  treePanelHtml,
} from "../src/panels.js";
import { initialState, withSession } from "../src/state.js";
import type { EditorState } from "../src/state.js";
import type { MockRow, SessionSnapshot, TreeNode } from "../src/types.js";

const tree: TreeNode = {
  id: "0",
  kind: "polar",
  is_leaf: false,
  is_template: false,
  mark_type: null,
  description: "rings",
  rel: { kind: "polar", cx: 0.5, cy: 0.5, r1: 0, r2: 1, a1: 0, a2: 360 },
  children: [
    {
      id: "0-0",
      kind: "polar",
      is_leaf: true,
      is_template: false,
      mark_type: "circle",
      description: "inner points",
      rel: { kind: "polar", cx: 0.5, cy: 0.5, r1: 0, r2: 0.3, a1: 0, a2: 360 },
      children: [],
    },
  ],
};

function stateWith(overrides: Partial<EditorState>): EditorState {
  const snapshot = {
    session_id: "s",
    document: { container_id: "0" } as never,
    seed: 0,
    validation: [],
    history_depth: 0,
    overrides: {},
    render: '<svg xmlns="http://www.w3.org/2000/svg"><circle data-container="0-0"/></svg>',
  } as unknown as SessionSnapshot;
  return { ...withSession(initialState(), snapshot, tree), ...overrides };
}

describe("tree panel", () => {
  it("marks polar nodes as circular and carries node ids", () => {
    const html = treePanelHtml(stateWith({}));
    expect(html).toContain("node-polar");
    expect(html).toContain('data-node-id="0-0"');
    expect(html).toContain("thumb-ring");
  });

  it("flags selection and hover", () => {
    const html = treePanelHtml(stateWith({ selectedId: "0-0", hoverId: "0-0" }));
    expect(html).toMatch(/class="[^"]*selected[^"]*"[^>]*data-node-id="0-0"/);
    expect(html).toMatch(/hovered/);
  });

  it("shows cartesian shadow shapes at their relative position", () => {
    const cartesianTree: TreeNode = {
      ...tree,
      kind: "cartesian",
      rel: { kind: "cartesian", x: 0, y: 0, w: 1, h: 1 },
      children: [
        {
          ...tree.children[0],
          kind: "cartesian",
          rel: { kind: "cartesian", x: 0.5, y: 0, w: 0.5, h: 0.25 },
        },
      ],
    };
    const html = treePanelHtml(stateWith({ tree: cartesianTree }));
    expect(html).toContain("thumb-shadow");
    expect(html).toContain("left:50.0%");
    expect(html).toContain("top:75.0%"); // y-up fraction flipped for CSS
  });
});

describe("image panel", () => {
  it("offers an upload input before any image exists", () => {
    expect(imagePanelHtml(initialState())).toContain('id="image-upload"');
  });

  it("overlays the hovered container on the image", () => {
    const html = imagePanelHtml(stateWith({ imageUrl: "blob:x", hoverId: "0-0" }));
    expect(html).toContain("overlay-ring");
  });
});

describe("result panel", () => {
  it("injects a highlight style for the hovered id", () => {
    const html = resultPanelHtml(stateWith({ hoverId: "0-0" }));
    expect(html).toContain('data-container="0-0"');
    expect(html).toContain("<style>");
  });
});

describe("editor panel", () => {
  it("renders raw mode with the serialized entry", () => {
    const html = editorPanelHtml(stateWith({ editorMode: "raw" }), [], '{"a": 1}');
    expect(html).toContain("raw-editor");
    expect(html).toContain("&quot;a&quot;: 1");
  });

  it("renders form rows with enum dropdowns", () => {
    const html = editorPanelHtml(
      stateWith({}),
      [
        { path: "p", label: "anchor", kind: "select", value: "min", options: ["min", "max"] },
        { path: "q", label: "stacking", kind: "boolean", value: true },
      ],
      "",
    );
    expect(html).toContain("<select");
    expect(html).toContain('type="checkbox"');
    expect(html).toContain("checked");
  });
});

describe("data panel", () => {
  const rows: MockRow[] = [
    { group_index: 0, item_index: 0, value: 0.5, fill: "#112233" },
    { group_index: 0, item_index: 1, value: 0.75, fill: "#445566" },
  ];

  it("derives columns across rows", () => {
    expect(dataColumns(rows)).toEqual(["group_index", "item_index", "value", "fill"]);
  });

  it("renders the exemplar table plus an input area", () => {
    const html = dataPanelHtml("0-0", rows);
    expect(html).toContain("<table");
    expect(html).toContain("#112233");
    expect(html).toContain('id="data-input"');
  });

  it("asks for a selection when nothing is selected", () => {
    expect(dataPanelHtml(null, [])).toContain("Select a container");
  });
});
