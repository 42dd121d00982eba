// Wire types mirroring the service's JSON documents. The UI performs no
// analytics of its own: every number rendered comes from these payloads.

export interface GraphNode {
  parts: string[];
  attrs: Record<string, string>;
}

export interface GraphDoc {
  set1: GraphNode[];
  set2: GraphNode[];
  edges: [number, number, number][]; // [i, j, w] sorted by (i, j)
  meta: Record<string, unknown>;
}

export interface PruneEdge {
  i: number;
  j: number;
  w: number;
  kept: boolean;
  threshold: number;
  n: number;
  rho: number;
}

export interface PruneDoc {
  spec: { fix_deg: string; alpha: number; bonferroni?: boolean };
  edges: PruneEdge[];
  kept_count: number;
  heterogeneity?: unknown;
}

export interface ClusterDoc {
  labels: number[];
  B: number;
  dl_bits: number;
  trace: [number, number][];
}

export interface MetricsRow {
  index: number;
  label: string;
  group: string | null;
  strength: number;
  quantity: number;
  quantity_group: number | null;
  diversity: number;
  isolated: boolean;
}

export interface ProjectionDoc {
  cluster: number;
  members: number[];
  graph: GraphDoc;
  prune: PruneDoc;
}

export interface IngestReport {
  rows_total: number;
  rows_after_filter: number;
  rows_rejected: number;
  rows_kept: number;
  self_pairs_dropped: number;
  n1: number;
  n2: number;
  total_weight: number;
  diagnostics: string[];
}

export interface BuildSpec {
  set1_columns: string[];
  set2_columns: string[];
  weight_column?: string | null;
  attribute_columns?: [string, string][];
  allow_self_pairs?: boolean;
  row_filter?: [string, string][];
}

/** Composite labels render with the double-asterisk convention. */
export function displayLabel(node: GraphNode): string {
  return node.parts.join(" **");
}

export type NodeKey = `${1 | 2}:${number}`;

export function nodeKey(set: 1 | 2, index: number): NodeKey {
  return `${set}:${index}`;
}
