/** End-to-end acceptance against a fixture-mode service instance.
 *
 * Spawns the Python service with REVIS_FIXTURES pointing at the recorded
 * cases, then drives the editor flows through the real HTTP API:
 * upload -> run -> session -> edit -> render, hover-highlight id linkage
 * across the image/tree/result panels, and a Form Mode coordinate edit
 * with a geometric assertion on the re-render.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { fileURLToPath } from "node:url";
import path from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { coordinateFields, buildPatch } from "../src/form.js";
import { countHighlighted, overlayShape, svgContainerIds } from "../src/highlight.js";
import { treePanelHtml } from "../src/panels.js";
import { initialState, withSession } from "../src/state.js";
import type { DslContainer, TreeNode } from "../src/types.js";

const ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..");
const PORT = 8561;
const BASE = `http://127.0.0.1:${PORT}`;

const PNG_BYTES = new Uint8Array([
  0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0, 0, 0, 0, 0, 0, 0, 0,
]);

let service: ChildProcess;
const api = new ApiClient(BASE);

async function waitForService(timeoutMs = 20_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      const response = await fetch(`${BASE}/runs/ping`);
      if (response.status === 404) return; // server answered: it is up
    } catch {
      /* not listening yet */
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
}

beforeAll(async () => {
  service = spawn(
    "python3",
    ["-m", "revis.cli", "serve", "--port", String(PORT)],
    {
      cwd: ROOT,
      env: { ...process.env, REVIS_FIXTURES: path.join(ROOT, "fixtures") },
      stdio: "ignore",
    },
  );
  await waitForService();
}, 30_000);

afterAll(() => {
  service?.kill();
});

describe("upload -> run -> edit -> render round trip", () => {
  it("completes against the fixture-mode service", async () => {
    const { run_id } = await api.uploadImage(PNG_BYTES, "image/png", "composite-panels");
    const run = await api.waitForRun(run_id);
    expect(run.status).toBe("done");
    expect(run.document?.container_id).toBe("0");

    const session = await api.createSession({ run_id });
    expect(session.validation.filter((v) => v.severity === "error")).toEqual([]);

    const tree = await api.getTree(session.session_id);
    expect(tree.children.map((c) => c.id)).toEqual(["0-a", "0-4"]);

    // edit: one more panel column; tightening the spacing first keeps the
    // uniform-interval bound satisfied, exactly as a user would in Form Mode
    const before = await api.render(session.session_id);
    for (const [fieldPath, value] of [
      ["layout_specification.x.anchor_interval", 33],
      ["layout_specification.x.size_range", [30, 30]],
      ["data_structure.data_size.primary.number", 3],
    ] as const) {
      await api.patchContainer(session.session_id, "0-a", {
        op: "set_spec_field",
        path: fieldPath,
        value,
      });
    }
    const after = await api.render(session.session_id);
    expect(after).not.toBe(before);

    const bars = (svg: string) =>
      svgContainerIds(svg).filter((cid) => cid === "0-a-0").length;
    expect(bars(before)).toBe(4 * 5); // 4 instances x 5 bars
    expect(bars(after)).toBe(6 * 5); // 6 instances after the column edit

    // three undos walk back the three accepted edits byte-exactly
    for (let i = 0; i < 3; i += 1) await api.undo(session.session_id);
    expect(await api.render(session.session_id)).toBe(before);
  }, 20_000);
});

describe("hover-highlight id linkage", () => {
  it("agrees across image overlay, tree panel, and rendered svg", async () => {
    const { run_id } = await api.uploadImage(PNG_BYTES, "image/png", "merge-1d");
    await api.waitForRun(run_id);
    const session = await api.createSession({ run_id });
    const tree = await api.getTree(session.session_id);
    const svg = await api.render(session.session_id);

    const leafIds: string[] = [];
    const collect = (node: TreeNode) => {
      if (node.is_leaf) leafIds.push(node.id);
      node.children.forEach(collect);
    };
    collect(tree);
    expect(leafIds.length).toBeGreaterThan(0);

    for (const id of leafIds) {
      // result panel: at least one mark lights up for the hovered id
      expect(countHighlighted(svg, id)).toBeGreaterThan(0);
      // image panel: the container resolves to an overlay region
      expect(overlayShape(tree, id)).not.toBeNull();
      // tree panel: the same id is addressable and flagged as hovered
      const snapshot = { ...session, render: svg };
      let state = withSession(initialState(), snapshot, tree);
      state = { ...state, hoverId: id };
      const html = treePanelHtml(state);
      expect(html).toContain(`data-node-id="${id}"`);
      expect(html).toMatch(new RegExp(`hovered[^>]*data-node-id="${id}"`));
    }

    // every mark in the svg belongs to a container the tree knows
    const treeIds = new Set<string>();
    const walk = (node: TreeNode) => {
      treeIds.add(node.id);
      node.children.forEach(walk);
    };
    walk(tree);
    for (const cid of svgContainerIds(svg)) {
      expect(treeIds.has(cid)).toBe(true);
    }
  }, 20_000);
});

const RING_DOCUMENT: DslContainer = {
  container_id: "0",
  description: "two rings",
  coordinate: "polar",
  coordinate_system: { cx: 0.5, cy: 0.5, r1: 0, r2: 1, a1: 0, a2: 360 },
  if_leaf: false,
  components: [
    {
      container_id: "0-0",
      description: "inner dots",
      coordinate: "polar",
      coordinate_system: { cx: 0.5, cy: 0.5, r1: 0, r2: 0.3, a1: 0, a2: 360 },
      if_leaf: true,
      mark_type: "circle",
    },
    {
      container_id: "0-1",
      description: "outer ring slices",
      coordinate: "polar",
      coordinate_system: { cx: 0.5, cy: 0.5, r1: 0.4, r2: 0.95, a1: 0, a2: 360 },
      if_leaf: true,
      mark_type: "arc",
    },
  ],
  data_specification: {
    "0-0": {
      mark_specification: {
        mark_type: "circle",
        is_link_mark: false,
        link_mark_type: "no_link",
        is_width_encoded_data: false,
      },
      data_structure: {
        data_type: "1D_list",
        data_size: { primary: { number: 20, dimension: ["radius", "angle"] } },
      },
      layout_specification: {
        radius: {
          stacking: false, stacking_direction: "min", subdividing: false,
          "2d_flatten": false, size_uniform: true, size_range: [5, 5],
          anchor: "middle", anchor_distribute: "flexible",
        },
        angle: {
          stacking: false, stacking_direction: "min", subdividing: false,
          "2d_flatten": false, size_uniform: true, size_range: [5, 5],
          anchor: "middle", anchor_distribute: "flexible",
        },
      },
    },
    "0-1": {
      mark_specification: {
        mark_type: "arc",
        is_link_mark: false,
        link_mark_type: "no_link",
        is_width_encoded_data: false,
      },
      data_structure: {
        data_type: "1D_list",
        data_size: { primary: { number: 8, dimension: "angle" } },
      },
      layout_specification: {
        angle: {
          stacking: true, stacking_direction: "min", subdividing: true,
          "2d_flatten": false, size_uniform: true, size_range: [0, 0],
          anchor: "stacking_decided", anchor_distribute: "uniform_interval",
        },
        radius: {
          stacking: false, stacking_direction: "min", subdividing: false,
          "2d_flatten": false, size_uniform: true, size_range: [100, 100],
          anchor: "min", anchor_distribute: "fixed_value", anchor_start: 0,
        },
      },
    },
  },
};

/** Endpoint coordinates of every path command in a `d` attribute. */
function pathEndpoints(d: string): Array<[number, number]> {
  const points: Array<[number, number]> = [];
  const tokens = d.match(/[MLAZ]|-?\d+(?:\.\d+)?/g) ?? [];
  let i = 0;
  while (i < tokens.length) {
    const token = tokens[i];
    if (token === "M" || token === "L") {
      points.push([Number(tokens[i + 1]), Number(tokens[i + 2])]);
      i += 3;
    } else if (token === "A") {
      // rx ry rotation large-arc sweep x y
      points.push([Number(tokens[i + 6]), Number(tokens[i + 7])]);
      i += 8;
    } else {
      i += 1;
    }
  }
  return points;
}

function arcEndpointsFor(svg: string, containerId: string): Array<[number, number]> {
  const out: Array<[number, number]> = [];
  const re = new RegExp(
    `<path d="([^"]+)"[^>]*data-container="${containerId}"`,
    "g",
  );
  let match: RegExpExecArray | null;
  while ((match = re.exec(svg)) !== null) {
    out.push(...pathEndpoints(match[1]));
  }
  return out;
}

describe("form mode coordinate edit", () => {
  it("restricting a2 range to the left half moves every slice left of center", async () => {
    const session = await api.createSession({ document: RING_DOCUMENT });
    const svgBefore = await api.render(session.session_id, { width: 800, height: 600 });
    const beforePoints = arcEndpointsFor(svgBefore, "0-1");
    expect(beforePoints.some(([x]) => x > 400 + 1)).toBe(true); // spans the right half

    // Drive the edit exactly the way Form Mode does: take the container's
    // coordinate fields, change a1 to 180, and post the resulting frame.
    const container = (RING_DOCUMENT.components ?? [])[1];
    const fields = coordinateFields(container);
    const a1 = fields.find((f) => f.label === "a1")!;
    const patch = buildPatch(container, null, a1, 180);
    const snapshot = await api.patchContainer(session.session_id, "0-1", patch);
    const edited = (snapshot.document.components ?? []).find(
      (c) => c.container_id === "0-1",
    );
    expect((edited?.coordinate_system as { a1: number }).a1).toBe(180);

    const svgAfter = await api.render(session.session_id, { width: 800, height: 600 });
    expect(svgAfter).not.toBe(svgBefore);
    const afterPoints = arcEndpointsFor(svgAfter, "0-1");
    expect(afterPoints.length).toBeGreaterThan(0);
    for (const [x] of afterPoints) {
      expect(x).toBeLessThanOrEqual(400 + 1e-6); // everything in the left half
    }
    // the untouched inner ring keeps its geometry
    const inner = (svg: string) =>
      svg
        .split("\n")
        .filter((line) => line.includes('data-container="0-0"'))
        .join("\n");
    expect(inner(svgAfter)).toBe(inner(svgBefore));
  }, 20_000);
});
