/** Wire types mirroring the service API. */

export type Dimension = "x" | "y" | "radius" | "angle";

export interface CartesianSystem {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface PolarSystem {
  cx: number;
  cy: number;
  r1: number;
  r2: number;
  a1: number;
  a2: number;
}

export interface DslContainer {
  container_id: string;
  description?: string;
  coordinate: "cartesian" | "polar";
  coordinate_system: CartesianSystem | PolarSystem;
  if_leaf: boolean;
  mark_type?: string;
  components?: DslContainer[];
  data_specification?: Record<string, SpecEntry>;
}

export interface DimensionSpec {
  stacking: boolean;
  stacking_direction: "min" | "middle" | "max";
  subdividing: boolean;
  "2d_flatten": boolean;
  size_uniform: boolean;
  size_range: [number, number];
  anchor: "min" | "middle" | "max" | "stacking_decided";
  anchor_distribute: "fixed_value" | "uniform_interval" | "flexible";
  anchor_start?: number;
  anchor_interval?: number;
}

export interface SpecEntry {
  mark_specification?: Record<string, unknown>;
  data_structure: {
    data_type: string;
    data_size: {
      primary: { number: number; dimension: Dimension | Dimension[]; explanation?: string };
      secondary?: { number: number | number[]; dimension: Dimension | Dimension[] };
    };
  };
  layout_specification: Partial<Record<Dimension, DimensionSpec>> & {
    source?: string[];
    target?: string[];
  };
  non_layout_specification?: Record<string, unknown>;
}

export interface ValidationIssue {
  severity: "error" | "warning";
  container: string;
  rule: string;
  message: string;
}

export interface RunRecord {
  run_id: string;
  status: "pending" | "step1" | "step2" | "step3" | "assembling" | "done" | "failed";
  failure?: string | null;
  document?: DslContainer | null;
  validation?: ValidationIssue[] | null;
  warnings?: string[];
}

export interface MockRow {
  group_index: number;
  item_index: number;
  value: number;
  [extra: string]: unknown;
}

export interface SessionSnapshot {
  session_id: string;
  document: DslContainer;
  seed: number;
  run_id?: string | null;
  validation: ValidationIssue[];
  history_depth: number;
  overrides: Record<string, MockRow[]>;
  render?: string | null;
  render_error?: string;
}

export interface TreeRel {
  kind: "cartesian" | "polar";
  x?: number;
  y?: number;
  w?: number;
  h?: number;
  cx?: number;
  cy?: number;
  r1?: number;
  r2?: number;
  a1?: number;
  a2?: number;
}

export interface TreeNode {
  id: string;
  kind: "cartesian" | "polar";
  is_leaf: boolean;
  is_template: boolean;
  mark_type: string | null;
  description: string;
  rel: TreeRel;
  children: TreeNode[];
}

export type PatchBody =
  | { op: "set_frame"; coordinate: string; coordinate_system: Record<string, number> }
  | { op: "set_spec"; spec: SpecEntry }
  | { op: "set_spec_field"; path: string; value: unknown }
  | { op: "duplicate"; coordinate?: string; coordinate_system?: Record<string, number> }
  | { op: "remove" }
  | { op: "add"; node: DslContainer; spec?: SpecEntry };
