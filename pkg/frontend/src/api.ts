/** Thin typed client for the service HTTP API.
 *
 * The UI never mutates documents locally; every change round-trips through
 * these calls and the server's response is authoritative.
 */

import type {
  DslContainer,
  MockRow,
  PatchBody,
  RunRecord,
  SessionSnapshot,
  TreeNode,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: unknown,
  ) {
    super(`HTTP ${status}: ${typeof detail === "string" ? detail : JSON.stringify(detail)}`);
  }
}

async function parseError(response: Response): Promise<never> {
  let detail: unknown = response.statusText;
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (body && body.detail !== undefined) detail = body.detail;
  } catch {
    /* non-JSON error body */
  }
  throw new ApiError(response.status, detail);
}

export class ApiClient {
  constructor(private readonly base: string) {}

  private url(path: string): string {
    return this.base.replace(/\/$/, "") + path;
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.url(path), init);
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  async uploadImage(
    bytes: BlobPart,
    mediaType: string,
    fixtureCase?: string,
  ): Promise<{ run_id: string }> {
    const query = fixtureCase ? `?case=${encodeURIComponent(fixtureCase)}` : "";
    return this.json(`/runs${query}`, {
      method: "POST",
      headers: { "content-type": mediaType },
      body: new Blob([bytes], { type: mediaType }),
    });
  }

  async getRun(runId: string): Promise<RunRecord> {
    return this.json(`/runs/${runId}`);
  }

  async waitForRun(runId: string, timeoutMs = 30_000, pollMs = 100): Promise<RunRecord> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const record = await this.getRun(runId);
      if (record.status === "done" || record.status === "failed") return record;
      if (Date.now() > deadline) throw new Error(`run ${runId} timed out`);
      await new Promise((resolve) => setTimeout(resolve, pollMs));
    }
  }

  async createSession(
    body: { run_id: string } | { document: DslContainer },
  ): Promise<SessionSnapshot> {
    return this.json("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async getSession(sessionId: string): Promise<SessionSnapshot> {
    return this.json(`/sessions/${sessionId}`);
  }

  async getTree(sessionId: string): Promise<TreeNode> {
    return this.json(`/sessions/${sessionId}/tree`);
  }

  async render(
    sessionId: string,
    options: { width?: number; height?: number; seed?: number } = {},
  ): Promise<string> {
    const params = new URLSearchParams();
    if (options.width) params.set("width", String(options.width));
    if (options.height) params.set("height", String(options.height));
    if (options.seed !== undefined) params.set("seed", String(options.seed));
    const suffix = params.size ? `?${params}` : "";
    const response = await fetch(this.url(`/sessions/${sessionId}/render${suffix}`));
    if (!response.ok) await parseError(response);
    return response.text();
  }

  async patchContainer(
    sessionId: string,
    containerId: string,
    body: PatchBody,
  ): Promise<SessionSnapshot> {
    return this.json(`/sessions/${sessionId}/containers/${containerId}`, {
      method: "PATCH",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async putData(
    sessionId: string,
    containerId: string,
    rows: MockRow[] | Record<string, unknown>[],
  ): Promise<SessionSnapshot> {
    return this.json(`/sessions/${sessionId}/data/${containerId}`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(rows),
    });
  }

  async putCsv(sessionId: string, containerId: string, csv: string): Promise<SessionSnapshot> {
    return this.json(`/sessions/${sessionId}/data/${containerId}`, {
      method: "PUT",
      headers: { "content-type": "text/csv" },
      body: csv,
    });
  }

  async undo(sessionId: string): Promise<SessionSnapshot> {
    return this.json(`/sessions/${sessionId}/undo`, { method: "POST" });
  }
}
