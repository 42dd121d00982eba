import { GraphDoc, ProjectionDoc, PruneDoc } from "../src/types.js";

export function demoGraph(): GraphDoc {
  return {
    set1: [
      { parts: ["s01"], attrs: { group: "g1" } },
      { parts: ["s02"], attrs: { group: "g1" } },
      { parts: ["s03"], attrs: { group: "g2" } },
    ],
    set2: [
      { parts: ["Question", "AI"], attrs: {} },
      { parts: ["Planning", "s01"], attrs: {} },
      { parts: ["Agreement", "s02"], attrs: {} },
    ],
    edges: [
      [0, 0, 9],
      [0, 1, 1],
      [1, 0, 4],
      [1, 2, 2],
      [2, 1, 6],
    ],
    meta: { name: "demo" },
  };
}

export function demoPrune(): PruneDoc {
  return {
    spec: { fix_deg: "none", alpha: 0.05 },
    edges: [
      { i: 0, j: 0, w: 9, kept: true, threshold: 5, n: 22, rho: 1 / 9 },
      { i: 0, j: 1, w: 1, kept: false, threshold: 5, n: 22, rho: 1 / 9 },
      { i: 1, j: 0, w: 4, kept: false, threshold: 5, n: 22, rho: 1 / 9 },
      { i: 1, j: 2, w: 2, kept: false, threshold: 5, n: 22, rho: 1 / 9 },
      { i: 2, j: 1, w: 6, kept: true, threshold: 5, n: 22, rho: 1 / 9 },
    ],
    kept_count: 2,
  };
}

export function demoProjection(): ProjectionDoc {
  return {
    cluster: 0,
    members: [0, 1],
    graph: {
      set1: [{ parts: ["Agreement"], attrs: {} }, { parts: ["Question"], attrs: {} }],
      set2: [{ parts: ["AI"], attrs: {} }, { parts: ["s02"], attrs: {} }],
      edges: [
        [0, 1, 2],
        [1, 0, 13],
      ],
      meta: { name: "cluster-0-projection" },
    },
    prune: {
      spec: { fix_deg: "none", alpha: 0.05 },
      edges: [
        { i: 0, j: 1, w: 2, kept: false, threshold: 8, n: 15, rho: 0.25 },
        { i: 1, j: 0, w: 13, kept: true, threshold: 8, n: 15, rho: 0.25 },
      ],
      kept_count: 1,
    },
  };
}
