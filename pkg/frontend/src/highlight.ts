/** Hover-highlight linkage across the image, tree, and result panels.
 *
 * All three panels agree on container ids: an id highlights its own marks
 * plus every descendant's (prefix rule), the matching tree node, and the
 * container's region overlaid on the original image.
 */

import type { TreeNode, TreeRel } from "./types.js";

export function matchesContainer(elementContainer: string, hovered: string): boolean {
  return elementContainer === hovered || elementContainer.startsWith(hovered + "-");
}

/** CSS selector that lights up a container's marks inside the result SVG. */
export function svgHighlightSelector(hovered: string): string {
  return `[data-container="${hovered}"], [data-container^="${hovered}-"]`;
}

/** Style block injected next to the rendered SVG for the hovered id. */
export function highlightStyle(hovered: string | null): string {
  if (!hovered) return "";
  return `<style>${svgHighlightSelector(hovered)} { stroke: #ff5722; stroke-width: 2px; }</style>`;
}

/** Container ids of all mark elements in an SVG text, in document order. */
export function svgContainerIds(svgText: string): string[] {
  const ids: string[] = [];
  const re = /data-container="([^"]+)"/g;
  let match: RegExpExecArray | null;
  while ((match = re.exec(svgText)) !== null) ids.push(match[1]);
  return ids;
}

export function countHighlighted(svgText: string, hovered: string): number {
  return svgContainerIds(svgText).filter((cid) => matchesContainer(cid, hovered)).length;
}

export interface RectOverlay {
  kind: "rect";
  x: number; // fractions of the image, y measured downward from the top
  y: number;
  w: number;
  h: number;
}

export interface RingOverlay {
  kind: "ring";
  cx: number;
  cy: number;
  r: number; // outer radius as a fraction of min(image width, height) / 2 basis
  rInner: number;
}

export type Overlay = RectOverlay | RingOverlay;

interface Region {
  x: number;
  y: number;
  w: number;
  h: number;
  polar?: { cx: number; cy: number; r1: number; r2: number };
}

function applyRel(parent: Region, rel: TreeRel): Region {
  if (rel.kind === "cartesian") {
    const relY = rel.y ?? 0;
    const relH = rel.h ?? 1;
    return {
      x: parent.x + (rel.x ?? 0) * parent.w,
      // tree panel fractions keep the DSL orientation (y up); images go down
      y: parent.y + (1 - relY - relH) * parent.h,
      w: (rel.w ?? 1) * parent.w,
      h: relH * parent.h,
    };
  }
  const unit = Math.min(parent.w, parent.h) / 2;
  let cx: number;
  let cy: number;
  let r1: number;
  let r2: number;
  if (parent.polar) {
    const span = parent.polar.r2 - parent.polar.r1;
    cx = parent.polar.cx;
    cy = parent.polar.cy;
    r1 = parent.polar.r1 + (rel.r1 ?? 0) * span;
    r2 = parent.polar.r1 + (rel.r2 ?? 1) * span;
  } else {
    cx = parent.x + (rel.cx ?? 0.5) * parent.w;
    cy = parent.y + (1 - (rel.cy ?? 0.5)) * parent.h;
    r1 = (rel.r1 ?? 0) * unit;
    r2 = (rel.r2 ?? 1) * unit;
  }
  return {
    x: cx - r2,
    y: cy - r2,
    w: 2 * r2,
    h: 2 * r2,
    polar: { cx, cy, r1, r2 },
  };
}

/** Region of a container in image fractions, walking the tree to its id. */
export function overlayShape(tree: TreeNode, containerId: string): Overlay | null {
  const path: TreeNode[] = [];

  const locate = (node: TreeNode): boolean => {
    path.push(node);
    if (node.id === containerId) return true;
    for (const child of node.children) {
      if (locate(child)) return true;
    }
    path.pop();
    return false;
  };
  if (!locate(tree)) return null;

  let region: Region = { x: 0, y: 0, w: 1, h: 1 };
  for (const node of path) {
    region = applyRel(region, node.rel);
  }
  if (region.polar) {
    return {
      kind: "ring",
      cx: region.polar.cx,
      cy: region.polar.cy,
      r: region.polar.r2,
      rInner: region.polar.r1,
    };
  }
  return { kind: "rect", x: region.x, y: region.y, w: region.w, h: region.h };
}

/** Absolute-positioned overlay element for the image panel. */
export function overlayHtml(overlay: Overlay | null): string {
  if (!overlay) return "";
  const pct = (v: number) => `${(v * 100).toFixed(2)}%`;
  if (overlay.kind === "rect") {
    return (
      `<div class="overlay overlay-rect" style="left:${pct(overlay.x)};top:${pct(overlay.y)};` +
      `width:${pct(overlay.w)};height:${pct(overlay.h)}"></div>`
    );
  }
  const size = 2 * overlay.r;
  return (
    `<div class="overlay overlay-ring" style="left:${pct(overlay.cx - overlay.r)};` +
    `top:${pct(overlay.cy - overlay.r)};width:${pct(size)};height:${pct(size)}"></div>`
  );
}
