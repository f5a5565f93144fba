import { describe, expect, it } from "vitest";

import {
  countHighlighted,
  highlightStyle,
  matchesContainer,
  overlayShape,
  svgContainerIds,
  svgHighlightSelector,
} from "../src/highlight.js";
import type { TreeNode } from "../src/types.js";

const SVG = `
<svg xmlns="http://www.w3.org/2000/svg">
  <rect data-container="0-0" data-item="0"/>
  <rect data-container="0-0" data-item="1"/>
  <circle data-container="0-1" data-item="0"/>
  <path data-container="0-a-0" data-item="0" data-instance="0"/>
</svg>`;

describe("container matching", () => {
  it("matches itself and descendants only", () => {
    expect(matchesContainer("0-0", "0-0")).toBe(true);
    expect(matchesContainer("0-0-2", "0-0")).toBe(true);
    expect(matchesContainer("0-01", "0-0")).toBe(false);
    expect(matchesContainer("0-1", "0-0")).toBe(false);
  });

  it("extracts container ids from rendered svg", () => {
    expect(svgContainerIds(SVG)).toEqual(["0-0", "0-0", "0-1", "0-a-0"]);
  });

  it("counts highlighted marks for a hovered id", () => {
    expect(countHighlighted(SVG, "0-0")).toBe(2);
    expect(countHighlighted(SVG, "0-a")).toBe(1);
    expect(countHighlighted(SVG, "0")).toBe(4);
  });

  it("emits a selector and style block", () => {
    expect(svgHighlightSelector("0-1")).toContain('[data-container="0-1"]');
    expect(highlightStyle("0-1")).toContain("stroke");
    expect(highlightStyle(null)).toBe("");
  });
});

const tree: TreeNode = {
  id: "0",
  kind: "cartesian",
  is_leaf: false,
  is_template: false,
  mark_type: null,
  description: "",
  rel: { kind: "cartesian", x: 0, y: 0, w: 1, h: 1 },
  children: [
    {
      id: "0-0",
      kind: "cartesian",
      is_leaf: true,
      is_template: false,
      mark_type: "rectangle",
      description: "",
      // top strip in DSL fractions: y in [0.72, 1]
      rel: { kind: "cartesian", x: 0, y: 0.72, w: 0.75, h: 0.28 },
      children: [],
    },
    {
      id: "0-1",
      kind: "polar",
      is_leaf: true,
      is_template: false,
      mark_type: "arc",
      description: "",
      rel: { kind: "polar", cx: 0.5, cy: 0.5, r1: 0.2, r2: 0.8, a1: 0, a2: 360 },
      children: [],
    },
  ],
};

describe("image overlay shapes", () => {
  it("maps the root to the whole image", () => {
    expect(overlayShape(tree, "0")).toEqual({ kind: "rect", x: 0, y: 0, w: 1, h: 1 });
  });

  it("flips cartesian fractions into image coordinates", () => {
    const overlay = overlayShape(tree, "0-0");
    expect(overlay).toEqual({ kind: "rect", x: 0, y: 0, w: 0.75, h: 0.28 });
  });

  it("produces a ring for polar containers", () => {
    const overlay = overlayShape(tree, "0-1");
    expect(overlay?.kind).toBe("ring");
    if (overlay?.kind === "ring") {
      expect(overlay.cx).toBeCloseTo(0.5);
      expect(overlay.cy).toBeCloseTo(0.5);
      expect(overlay.r).toBeCloseTo(0.8 * 0.5);
      expect(overlay.rInner).toBeCloseTo(0.2 * 0.5);
    }
  });

  it("returns null for unknown ids", () => {
    expect(overlayShape(tree, "9-9")).toBeNull();
  });
});
