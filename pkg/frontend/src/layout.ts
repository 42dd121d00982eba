import { mulberry32 } from "./rng.js";
import { GraphDoc, nodeKey, NodeKey } from "./types.js";

export interface LayoutOptions {
  width: number;
  height: number;
  seed: number;
  iterations?: number;
}

export type Positions = Record<NodeKey, { x: number; y: number }>;

/**
 * Force-directed layout with bipartite set separation: focal nodes are
 * anchored toward the left band, targets toward the right, springs pull
 * endpoints of heavy edges together and same-set nodes repel. Seeded
 * initialization makes the result reproducible for a given graph.
 */
export function computeLayout(graph: GraphDoc, opts: LayoutOptions): Positions {
  const iterations = opts.iterations ?? 150;
  const rand = mulberry32(opts.seed);
  const n1 = graph.set1.length;
  const n2 = graph.set2.length;
  const total = n1 + n2;
  const band1 = opts.width * 0.28;
  const band2 = opts.width * 0.72;

  const x = new Float64Array(total);
  const y = new Float64Array(total);
  for (let k = 0; k < total; k++) {
    const inSet1 = k < n1;
    x[k] = (inSet1 ? band1 : band2) + (rand() - 0.5) * opts.width * 0.15;
    y[k] = opts.height * (0.1 + 0.8 * rand());
  }

  const maxW = Math.max(1, ...graph.edges.map((e) => e[2]));
  const springBase = 0.04;
  const repulsion = (opts.height * opts.width) / (55 * Math.max(total, 4));

  for (let step = 0; step < iterations; step++) {
    const cool = 1 - step / iterations;
    const dx = new Float64Array(total);
    const dy = new Float64Array(total);

    // same-set repulsion keeps columns spread vertically
    for (const [start, end] of [
      [0, n1],
      [n1, total],
    ] as const) {
      for (let a = start; a < end; a++) {
        for (let b = a + 1; b < end; b++) {
          let vx = x[a] - x[b];
          let vy = y[a] - y[b];
          const dist2 = vx * vx + vy * vy + 1e-6;
          const f = repulsion / dist2;
          vx *= f;
          vy *= f;
          dx[a] += vx;
          dy[a] += vy;
          dx[b] -= vx;
          dy[b] -= vy;
        }
      }
    }

    // springs along edges, stronger for heavier edges
    for (const [i, j, w] of graph.edges) {
      const a = i;
      const b = n1 + j;
      const k = springBase * (0.3 + w / maxW);
      dx[a] += (x[b] - x[a]) * k;
      dy[a] += (y[b] - y[a]) * k;
      dx[b] += (x[a] - x[b]) * k;
      dy[b] += (y[a] - y[b]) * k;
    }

    for (let k = 0; k < total; k++) {
      const anchor = k < n1 ? band1 : band2;
      dx[k] += (anchor - x[k]) * 0.08;
      x[k] += dx[k] * cool;
      y[k] += dy[k] * cool;
      x[k] = Math.min(opts.width - 20, Math.max(20, x[k]));
      y[k] = Math.min(opts.height - 20, Math.max(20, y[k]));
    }
  }

  const out: Positions = {};
  for (let i = 0; i < n1; i++) {
    out[nodeKey(1, i)] = { x: x[i], y: y[i] };
  }
  for (let j = 0; j < n2; j++) {
    out[nodeKey(2, j)] = { x: x[n1 + j], y: y[n1 + j] };
  }
  return out;
}
