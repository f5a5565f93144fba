import { describe, expect, it } from "vitest";

import { buildPatch, coordinateFields, formFields, parseFieldInput, specFields } from "../src/form.js";
import type { DslContainer, SpecEntry } from "../src/types.js";

const polarContainer: DslContainer = {
  container_id: "0-1",
  coordinate: "polar",
  coordinate_system: { cx: 0.5, cy: 0.5, r1: 0.35, r2: 0.6, a1: 0, a2: 360 },
  if_leaf: true,
  mark_type: "arc",
};

const entry: SpecEntry = {
  mark_specification: {
    mark_type: "arc",
    is_link_mark: false,
    link_mark_type: "no_link",
    is_width_encoded_data: false,
  },
  data_structure: {
    data_type: "2D_matrix",
    data_size: {
      primary: { number: 18, dimension: "angle" },
      secondary: { number: 3, dimension: "radius" },
    },
  },
  layout_specification: {
    angle: {
      stacking: false,
      stacking_direction: "min",
      subdividing: false,
      "2d_flatten": false,
      size_uniform: true,
      size_range: [4, 4],
      anchor: "min",
      anchor_distribute: "uniform_interval",
      anchor_start: 0.5,
      anchor_interval: 5.5,
    },
    radius: {
      stacking: true,
      stacking_direction: "min",
      subdividing: false,
      "2d_flatten": false,
      size_uniform: false,
      size_range: [8, 30],
      anchor: "stacking_decided",
      anchor_distribute: "uniform_interval",
    },
  },
  non_layout_specification: {
    fill: { scale: "fix", fix: "#4c78a8" },
  },
};

describe("form fields", () => {
  it("exposes the polar coordinate parameters", () => {
    const labels = coordinateFields(polarContainer).map((f) => f.label);
    expect(labels).toEqual(["cx", "cy", "r1", "r2", "a1", "a2"]);
  });

  it("exposes only schema-enumerated dropdown values", () => {
    const fields = specFields(entry);
    const distribute = fields.find((f) => f.path.endsWith("angle.anchor_distribute"));
    expect(distribute?.options).toEqual(["fixed_value", "uniform_interval", "flexible"]);
    const anchor = fields.find((f) => f.path.endsWith("angle.anchor"));
    expect(anchor?.options).toContain("stacking_decided");
  });

  it("shows spacing inputs only when the distribution uses them", () => {
    const fields = specFields(entry);
    expect(fields.some((f) => f.path === "layout_specification.angle.anchor_interval")).toBe(true);
    expect(fields.some((f) => f.path === "layout_specification.radius.anchor_interval")).toBe(true);
  });

  it("renders color inputs for fixed color encodings", () => {
    const fill = specFields(entry).find((f) => f.path === "non_layout_specification.fill.fix");
    expect(fill?.kind).toBe("color");
  });

  it("combines coordinates and specification fields", () => {
    const fields = formFields(polarContainer, entry);
    expect(fields.length).toBeGreaterThan(10);
    expect(fields[0].path).toBe("coordinate_system.cx");
  });
});

describe("input parsing and patch building", () => {
  it("parses numbers and rejects junk", () => {
    const field = coordinateFields(polarContainer)[4]; // a1
    expect(parseFieldInput(field, "180")).toBe(180);
    expect(() => parseFieldInput(field, "abc")).toThrow();
  });

  it("coordinate edits post the whole frame", () => {
    const field = coordinateFields(polarContainer)[4]; // a1
    const patch = buildPatch(polarContainer, entry, field, 180);
    expect(patch).toEqual({
      op: "set_frame",
      coordinate: "polar",
      coordinate_system: { cx: 0.5, cy: 0.5, r1: 0.35, r2: 0.6, a1: 180, a2: 360 },
    });
  });

  it("spec edits use the dotted-path op", () => {
    const fields = specFields(entry);
    const number = fields.find((f) => f.path === "data_structure.data_size.primary.number")!;
    expect(buildPatch(polarContainer, entry, number, 24)).toEqual({
      op: "set_spec_field",
      path: "data_structure.data_size.primary.number",
      value: 24,
    });
  });

  it("size_range halves merge into the stored pair", () => {
    const fields = specFields(entry);
    const sizeMax = fields.find((f) => f.path === "layout_specification.radius.size_range.1")!;
    expect(buildPatch(polarContainer, entry, sizeMax, 40)).toEqual({
      op: "set_spec_field",
      path: "layout_specification.radius.size_range",
      value: [8, 40],
    });
  });
});
