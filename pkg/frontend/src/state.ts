/** Editor state: selection, hover, and editor mode.
 *
 * Selected and hovered ids are always validated against the current tree;
 * stale ids (after removals) are dropped rather than kept dangling.
 */

import type { SessionSnapshot, TreeNode } from "./types.js";

export interface EditorState {
  sessionId: string | null;
  snapshot: SessionSnapshot | null;
  tree: TreeNode | null;
  selectedId: string | null;
  hoverId: string | null;
  editorMode: "form" | "raw";
  rawDirty: boolean;
  imageUrl: string | null;
}

export function initialState(): EditorState {
  return {
    sessionId: null,
    snapshot: null,
    tree: null,
    selectedId: null,
    hoverId: null,
    editorMode: "form",
    rawDirty: false,
    imageUrl: null,
  };
}

export function treeIds(tree: TreeNode | null): Set<string> {
  const ids = new Set<string>();
  const walk = (node: TreeNode) => {
    ids.add(node.id);
    node.children.forEach(walk);
  };
  if (tree) walk(tree);
  return ids;
}

export function findNode(tree: TreeNode | null, id: string | null): TreeNode | null {
  if (!tree || !id) return null;
  if (tree.id === id) return tree;
  for (const child of tree.children) {
    const found = findNode(child, id);
    if (found) return found;
  }
  return null;
}

export function withSession(
  state: EditorState,
  snapshot: SessionSnapshot,
  tree: TreeNode,
): EditorState {
  const ids = treeIds(tree);
  return {
    ...state,
    sessionId: snapshot.session_id,
    snapshot,
    tree,
    selectedId: state.selectedId && ids.has(state.selectedId) ? state.selectedId : tree.id,
    hoverId: state.hoverId && ids.has(state.hoverId) ? state.hoverId : null,
    rawDirty: false,
  };
}

export function select(state: EditorState, id: string | null): EditorState {
  if (id !== null && !treeIds(state.tree).has(id)) return state;
  return { ...state, selectedId: id };
}

export function hover(state: EditorState, id: string | null): EditorState {
  if (id !== null && !treeIds(state.tree).has(id)) return { ...state, hoverId: null };
  return { ...state, hoverId: id };
}

export function setMode(state: EditorState, mode: "form" | "raw"): EditorState {
  return { ...state, editorMode: mode, rawDirty: false };
}

type Listener = (state: EditorState) => void;

/** Minimal observable store so panels re-render on every accepted change. */
export class Store {
  private state: EditorState = initialState();
  private listeners: Listener[] = [];

  get(): EditorState {
    return this.state;
  }

  set(next: EditorState): void {
    this.state = next;
    for (const listener of this.listeners) listener(next);
  }

  update(fn: (state: EditorState) => EditorState): void {
    this.set(fn(this.state));
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}
