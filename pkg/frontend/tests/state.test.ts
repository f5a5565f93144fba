import { describe, expect, it } from "vitest";

import {
  Store,
  findNode,
  hover,
  initialState,
  select,
  setMode,
  treeIds,
  withSession,
} from "../src/state.js";
import type { SessionSnapshot, TreeNode } from "../src/types.js";

const tree: TreeNode = {
  id: "0",
  kind: "cartesian",
  is_leaf: false,
  is_template: false,
  mark_type: null,
  description: "root",
  rel: { kind: "cartesian", x: 0, y: 0, w: 1, h: 1 },
  children: [
    {
      id: "0-0",
      kind: "cartesian",
      is_leaf: true,
      is_template: false,
      mark_type: "rectangle",
      description: "bars",
      rel: { kind: "cartesian", x: 0, y: 0, w: 0.5, h: 1 },
      children: [],
    },
  ],
};

const snapshot = {
  session_id: "s1",
  document: {} as never,
  seed: 0,
  validation: [],
  history_depth: 0,
  overrides: {},
} as unknown as SessionSnapshot;

describe("editor state", () => {
  it("collects tree ids", () => {
    expect(treeIds(tree)).toEqual(new Set(["0", "0-0"]));
  });

  it("selects the root when a session loads", () => {
    const state = withSession(initialState(), snapshot, tree);
    expect(state.sessionId).toBe("s1");
    expect(state.selectedId).toBe("0");
  });

  it("keeps a still-valid selection across reloads", () => {
    let state = withSession(initialState(), snapshot, tree);
    state = select(state, "0-0");
    state = withSession(state, snapshot, tree);
    expect(state.selectedId).toBe("0-0");
  });

  it("refuses selection of unknown ids", () => {
    let state = withSession(initialState(), snapshot, tree);
    state = select(state, "9-9");
    expect(state.selectedId).toBe("0");
  });

  it("drops hover ids that left the tree", () => {
    let state = withSession(initialState(), snapshot, tree);
    state = hover(state, "0-0");
    expect(state.hoverId).toBe("0-0");
    state = hover(state, "gone");
    expect(state.hoverId).toBeNull();
  });

  it("switches editor modes", () => {
    const state = setMode(initialState(), "raw");
    expect(state.editorMode).toBe("raw");
  });

  it("finds nodes by id", () => {
    expect(findNode(tree, "0-0")?.mark_type).toBe("rectangle");
    expect(findNode(tree, "nope")).toBeNull();
  });

  it("notifies subscribers on every update", () => {
    const store = new Store();
    const seen: (string | null)[] = [];
    store.subscribe((state) => seen.push(state.selectedId));
    store.update((state) => withSession(state, snapshot, tree));
    store.update((state) => select(state, "0-0"));
    expect(seen).toEqual(["0", "0-0"]);
  });
});
