import { describe, expect, it } from "vitest";

import { computeLayout } from "../src/layout.js";
import { demoGraph } from "./fixtures.js";

const OPTS = { width: 800, height: 600, seed: 7 };

describe("seeded force layout", () => {
  it("is reproducible for a fixed seed", () => {
    const a = computeLayout(demoGraph(), OPTS);
    const b = computeLayout(demoGraph(), OPTS);
    expect(a).toEqual(b);
  });

  it("changes with the seed", () => {
    const a = computeLayout(demoGraph(), OPTS);
    const b = computeLayout(demoGraph(), { ...OPTS, seed: 8 });
    expect(a).not.toEqual(b);
  });

  it("keeps the two node sets in separate horizontal bands", () => {
    const pos = computeLayout(demoGraph(), OPTS);
    const set1x = [pos["1:0"].x, pos["1:1"].x, pos["1:2"].x];
    const set2x = [pos["2:0"].x, pos["2:1"].x, pos["2:2"].x];
    expect(Math.max(...set1x)).toBeLessThan(Math.min(...set2x));
  });

  it("keeps every node inside the canvas", () => {
    const pos = computeLayout(demoGraph(), { ...OPTS, width: 300, height: 200 });
    for (const { x, y } of Object.values(pos)) {
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThanOrEqual(300);
      expect(y).toBeGreaterThanOrEqual(0);
      expect(y).toBeLessThanOrEqual(200);
    }
  });
});
