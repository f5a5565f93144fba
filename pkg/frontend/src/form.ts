/** Form Mode: schema-driven field descriptors for a container's editable
 * parts (coordinates and data specification), plus PATCH bodies for edits.
 *
 * Only schema-enumerated values appear in dropdowns, so Form Mode cannot
 * produce invalid enum entries. Anything the form does not cover is edited
 * in raw-text mode instead.
 */

import type {
  CartesianSystem,
  DimensionSpec,
  DslContainer,
  PatchBody,
  PolarSystem,
  SpecEntry,
} from "./types.js";

export type FieldKind = "number" | "boolean" | "select" | "color" | "text";

export interface FormField {
  /** Dotted path; "coordinate_system.*" targets the frame, everything else
   * the data-specification entry. */
  path: string;
  label: string;
  kind: FieldKind;
  value: unknown;
  options?: readonly string[];
  step?: number;
}

const DIRECTIONS = ["min", "middle", "max"] as const;
const ANCHORS = ["min", "middle", "max", "stacking_decided"] as const;
const DISTRIBUTES = ["fixed_value", "uniform_interval", "flexible"] as const;
const DATA_TYPES = ["1D_list", "2D_matrix", "2D_list"] as const;
const SCALES = ["fix", "linear", "ordinal_primary", "ordinal_secondary", "categorical"] as const;

export function coordinateFields(container: DslContainer): FormField[] {
  const system = container.coordinate_system;
  const keys =
    container.coordinate === "cartesian"
      ? (["x1", "y1", "x2", "y2"] as const)
      : (["cx", "cy", "r1", "r2", "a1", "a2"] as const);
  return keys.map((key) => ({
    path: `coordinate_system.${key}`,
    label: key,
    kind: "number",
    value: (system as unknown as Record<string, number>)[key],
    step: container.coordinate === "polar" && (key === "cx" || key === "cy" || key[0] === "r") ? 0.05 : 1,
  }));
}

function dimensionFields(dim: string, spec: DimensionSpec): FormField[] {
  const base = `layout_specification.${dim}`;
  const fields: FormField[] = [
    { path: `${base}.stacking`, label: `${dim} stacking`, kind: "boolean", value: spec.stacking },
    {
      path: `${base}.stacking_direction`,
      label: `${dim} stacking_direction`,
      kind: "select",
      value: spec.stacking_direction,
      options: DIRECTIONS,
    },
    {
      path: `${base}.subdividing`,
      label: `${dim} subdividing`,
      kind: "boolean",
      value: spec.subdividing,
    },
    {
      path: `${base}.size_uniform`,
      label: `${dim} size_uniform`,
      kind: "boolean",
      value: spec.size_uniform,
    },
    {
      path: `${base}.size_range.0`,
      label: `${dim} size min`,
      kind: "number",
      value: spec.size_range[0],
    },
    {
      path: `${base}.size_range.1`,
      label: `${dim} size max`,
      kind: "number",
      value: spec.size_range[1],
    },
    {
      path: `${base}.anchor`,
      label: `${dim} anchor`,
      kind: "select",
      value: spec.anchor,
      options: ANCHORS,
    },
    {
      path: `${base}.anchor_distribute`,
      label: `${dim} anchor_distribute`,
      kind: "select",
      value: spec.anchor_distribute,
      options: DISTRIBUTES,
    },
  ];
  if (spec.anchor_distribute !== "flexible") {
    fields.push({
      path: `${base}.anchor_start`,
      label: `${dim} anchor_start`,
      kind: "number",
      value: spec.anchor_start ?? 0,
    });
  }
  if (spec.anchor_distribute === "uniform_interval") {
    fields.push({
      path: `${base}.anchor_interval`,
      label: `${dim} anchor_interval`,
      kind: "number",
      value: spec.anchor_interval ?? 0,
    });
  }
  return fields;
}

export function specFields(entry: SpecEntry): FormField[] {
  const fields: FormField[] = [];
  fields.push({
    path: "data_structure.data_type",
    label: "data_type",
    kind: "select",
    value: entry.data_structure.data_type,
    options: DATA_TYPES,
  });
  const primary = entry.data_structure.data_size.primary;
  if (typeof primary.number === "number") {
    fields.push({
      path: "data_structure.data_size.primary.number",
      label: "primary.number",
      kind: "number",
      value: primary.number,
      step: 1,
    });
  }
  const secondary = entry.data_structure.data_size.secondary;
  if (secondary && typeof secondary.number === "number") {
    fields.push({
      path: "data_structure.data_size.secondary.number",
      label: "secondary.number",
      kind: "number",
      value: secondary.number,
      step: 1,
    });
  }
  for (const dim of ["x", "y", "radius", "angle"] as const) {
    const spec = entry.layout_specification[dim];
    if (spec) fields.push(...dimensionFields(dim, spec));
  }
  for (const [name, attr] of Object.entries(entry.non_layout_specification ?? {})) {
    const scale = (attr as { scale?: string }).scale;
    fields.push({
      path: `non_layout_specification.${name}.scale`,
      label: `${name} scale`,
      kind: "select",
      value: scale,
      options: SCALES,
    });
    const fix = (attr as { fix?: unknown }).fix;
    if (scale === "fix" && fix !== undefined) {
      fields.push({
        path: `non_layout_specification.${name}.fix`,
        label: `${name} value`,
        kind: typeof fix === "string" && fix.startsWith("#") ? "color" : "number",
        value: fix,
      });
    }
  }
  return fields;
}

/** Fields for the selected container; null means raw-text mode only. */
export function formFields(
  container: DslContainer,
  entry: SpecEntry | null,
): FormField[] {
  const fields = coordinateFields(container);
  if (entry) fields.push(...specFields(entry));
  return fields;
}

export function parseFieldInput(field: FormField, raw: string): unknown {
  if (field.kind === "number") {
    const value = Number(raw);
    if (Number.isNaN(value)) throw new Error(`${field.label}: not a number`);
    return value;
  }
  if (field.kind === "boolean") return raw === "true" || raw === "on";
  return raw;
}

/** Build the PATCH body for one edited field.
 *
 * Coordinate fields post the whole frame (the service validates it as a
 * unit); specification fields use the dotted-path op. size_range halves are
 * merged into the stored pair client-side.
 */
export function buildPatch(
  container: DslContainer,
  entry: SpecEntry | null,
  field: FormField,
  value: unknown,
): PatchBody {
  if (field.path.startsWith("coordinate_system.")) {
    const key = field.path.split(".")[1];
    const system = { ...(container.coordinate_system as unknown as Record<string, number>) };
    system[key] = value as number;
    return { op: "set_frame", coordinate: container.coordinate, coordinate_system: system };
  }
  const match = field.path.match(/^(layout_specification\.\w+\.size_range)\.([01])$/);
  if (match) {
    if (!entry) throw new Error("no data specification to edit");
    const dim = field.path.split(".")[1] as keyof SpecEntry["layout_specification"];
    const spec = entry.layout_specification[dim] as DimensionSpec;
    const pair: [number, number] = [...spec.size_range];
    pair[Number(match[2]) as 0 | 1] = value as number;
    return { op: "set_spec_field", path: match[1], value: pair };
  }
  return { op: "set_spec_field", path: field.path, value };
}

export function frameOf(container: DslContainer): CartesianSystem | PolarSystem {
  return container.coordinate_system;
}
