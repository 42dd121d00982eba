import { describe, expect, it } from "vitest";

import { projectionPanel } from "../src/projection.js";
import { demoProjection } from "./fixtures.js";

describe("cluster projection panel", () => {
  it("renders exactly the API-provided edges, nothing recomputed", () => {
    const doc = demoProjection();
    const panel = projectionPanel(doc);
    expect(panel.cluster).toBe(0);
    expect(panel.memberCount).toBe(2);
    const fromApi = doc.graph.edges
      .map(([i, j, w]) => `${doc.graph.set1[i].parts.join("")}-${doc.graph.set2[j].parts.join("")}-${w}`)
      .sort();
    const rendered = panel.rows.map((r) => `${r.code}-${r.partner}-${r.weight}`).sort();
    expect(rendered).toEqual(fromApi);
  });

  it("kept rows are the alpha-significant associations only", () => {
    const panel = projectionPanel(demoProjection());
    expect(panel.keptRows).toHaveLength(1);
    expect(panel.keptRows[0].code).toBe("Question");
    expect(panel.keptRows[0].partner).toBe("AI");
    expect(panel.alpha).toBe(0.05);
  });

  it("rows sort heaviest first with thresholds attached verbatim", () => {
    const panel = projectionPanel(demoProjection());
    expect(panel.rows[0].weight).toBeGreaterThanOrEqual(panel.rows[1].weight);
    expect(panel.rows.map((r) => r.threshold)).toEqual([8, 8]);
  });
});
