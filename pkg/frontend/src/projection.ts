import { displayLabel, ProjectionDoc } from "./types.js";

export interface ProjectionRow {
  code: string;
  partner: string;
  weight: number;
  kept: boolean;
  threshold: number;
}

export interface ProjectionPanelModel {
  cluster: number;
  memberCount: number;
  alpha: number;
  rows: ProjectionRow[];
  keptRows: ProjectionRow[];
}

/**
 * Panel model for one cluster's aggregated (code, partner) network. Every
 * row comes verbatim from the API payload: the graph supplies the labels
 * and weights, the prune block supplies significance flags. Nothing is
 * recomputed client-side.
 */
export function projectionPanel(doc: ProjectionDoc): ProjectionPanelModel {
  const keptByPair = new Map(doc.prune.edges.map((e) => [`${e.i}|${e.j}`, e]));
  const rows: ProjectionRow[] = doc.graph.edges.map(([i, j, w]) => {
    const annotated = keptByPair.get(`${i}|${j}`);
    return {
      code: displayLabel(doc.graph.set1[i]),
      partner: displayLabel(doc.graph.set2[j]),
      weight: w,
      kept: annotated?.kept ?? false,
      threshold: annotated?.threshold ?? Number.POSITIVE_INFINITY,
    };
  });
  rows.sort((a, b) => b.weight - a.weight);
  return {
    cluster: doc.cluster,
    memberCount: doc.members.length,
    alpha: doc.prune.spec.alpha,
    rows,
    keptRows: rows.filter((r) => r.kept),
  };
}
