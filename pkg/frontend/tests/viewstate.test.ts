import { describe, expect, it } from "vitest";

import {
  defaultViewState,
  deserializeViewState,
  serializeViewState,
} from "../src/viewstate.js";

describe("view state serialization", () => {
  it("round-trips every field", () => {
    const state = defaultViewState();
    state.hinId = "hin-3";
    state.alpha = 0.12;
    state.fixDeg = "set1";
    state.colorMode = "by-cluster";
    state.significanceOnly = true;
    state.positions["1:0"] = { x: 120.5, y: 44 };
    state.filters = [{ attribute: "group", value: "g2" }];
    state.selection = { nodes: ["1:0", "2:3"], cluster: 1 };
    state.layoutSeed = 99;

    const restored = deserializeViewState(serializeViewState(state));
    expect(restored).toEqual(state);
  });

  it("tolerates missing fields from older snapshots", () => {
    const restored = deserializeViewState('{"alpha":0.2}');
    expect(restored.alpha).toBe(0.2);
    expect(restored.significanceOnly).toBe(false);
    expect(restored.positions).toEqual({});
    expect(restored.selection.cluster).toBeNull();
  });
});
