import {
  BuildSpec,
  ClusterDoc,
  GraphDoc,
  IngestReport,
  MetricsRow,
  ProjectionDoc,
  PruneDoc,
} from "./types.js";

/**
 * Service client surface. Tests substitute stub implementations; the UI
 * never computes metrics, thresholds, or clusters on its own.
 */
export interface ApiClient {
  uploadDataset(text: string, delimiter?: string): Promise<{ dataset_id: string }>;
  datasetInfo(id: string): Promise<{ dataset_id: string; columns: string[]; rows: number }>;
  buildHin(datasetId: string, spec: BuildSpec, name?: string): Promise<{ hin_id: string; report: IngestReport }>;
  getGraph(hinId: string): Promise<GraphDoc>;
  getMetrics(hinId: string, groupAttr?: string): Promise<MetricsRow[]>;
  prune(hinId: string, alpha: number, fixDeg: string): Promise<PruneDoc>;
  cluster(hinId: string, seed?: number | null, restarts?: number): Promise<ClusterDoc>;
  projection(hinId: string, cluster: number, alpha: number, fixDeg: string): Promise<ProjectionDoc>;
}

async function asJson<T>(res: Response): Promise<T> {
  if (!res.ok) {
    let detail = `${res.status}`;
    try {
      const body = await res.json();
      detail = body.error ? `${body.error}: ${body.detail ?? ""}` : JSON.stringify(body);
    } catch {
      /* non-JSON error body */
    }
    throw new Error(detail);
  }
  return (await res.json()) as T;
}

export class HttpApiClient implements ApiClient {
  constructor(private base: string = "") {}

  private url(path: string): string {
    return this.base + path;
  }

  async uploadDataset(text: string, delimiter?: string) {
    const query = delimiter ? `?delimiter=${encodeURIComponent(delimiter)}` : "";
    return asJson<{ dataset_id: string }>(
      await fetch(this.url(`/datasets${query}`), { method: "POST", body: text })
    );
  }

  async datasetInfo(id: string) {
    return asJson<{ dataset_id: string; columns: string[]; rows: number }>(
      await fetch(this.url(`/datasets/${id}`))
    );
  }

  async buildHin(datasetId: string, spec: BuildSpec, name?: string) {
    return asJson<{ hin_id: string; report: IngestReport }>(
      await fetch(this.url("/hins"), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ dataset_id: datasetId, spec, name }),
      })
    );
  }

  async getGraph(hinId: string) {
    return asJson<GraphDoc>(await fetch(this.url(`/hins/${hinId}`)));
  }

  async getMetrics(hinId: string, groupAttr?: string) {
    const query = groupAttr ? `?group_attr=${encodeURIComponent(groupAttr)}` : "";
    return asJson<MetricsRow[]>(await fetch(this.url(`/hins/${hinId}/metrics${query}`)));
  }

  async prune(hinId: string, alpha: number, fixDeg: string) {
    return asJson<PruneDoc>(
      await fetch(this.url(`/hins/${hinId}/prune`), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ alpha, fix_deg: fixDeg }),
      })
    );
  }

  async cluster(hinId: string, seed?: number | null, restarts?: number) {
    return asJson<ClusterDoc>(
      await fetch(this.url(`/hins/${hinId}/cluster`), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ seed: seed ?? null, restarts: restarts ?? 1 }),
      })
    );
  }

  async projection(hinId: string, cluster: number, alpha: number, fixDeg: string) {
    const query = `?alpha=${alpha}&fix_deg=${encodeURIComponent(fixDeg)}`;
    return asJson<ProjectionDoc>(
      await fetch(this.url(`/hins/${hinId}/clusters/${cluster}/projection${query}`))
    );
  }
}
