import { MetricsRow, nodeKey, NodeKey } from "./types.js";

export type QuantityAxis = "quantity" | "strength";

export interface ScatterPoint {
  index: number;
  key: NodeKey;
  label: string;
  x: number;
  y: number;
  isolated: boolean;
  zeroDiversity: boolean;
  group: string | null;
}

/**
 * Engagement scatter: quantity (or raw strength) on x, diversity on y.
 * Points on the y=0 band mark single-target profiles; isolated nodes sit
 * at the origin with a flag. Point keys match network-node keys so the two
 * views stay linked in both directions.
 */
export function scatterPoints(rows: MetricsRow[], axis: QuantityAxis = "strength"): ScatterPoint[] {
  return rows.map((row) => ({
    index: row.index,
    key: nodeKey(1, row.index),
    label: row.label,
    x: axis === "strength" ? row.strength : row.quantity,
    y: row.diversity,
    isolated: row.isolated,
    zeroDiversity: row.diversity === 0,
    group: row.group,
  }));
}

export interface AxisScale {
  min: number;
  max: number;
  toPixel(value: number, extentPx: number, invert?: boolean): number;
}

export function linearScale(values: number[]): AxisScale {
  const min = 0;
  const max = Math.max(1e-9, ...values);
  return {
    min,
    max,
    toPixel(value, extentPx, invert = false) {
      const t = (value - min) / (max - min);
      return invert ? extentPx * (1 - t) : extentPx * t;
    },
  };
}

/** Toggle a point/node in a selection list, returning the new list. */
export function toggleSelection(selection: NodeKey[], key: NodeKey): NodeKey[] {
  return selection.includes(key) ? selection.filter((k) => k !== key) : [...selection, key];
}
