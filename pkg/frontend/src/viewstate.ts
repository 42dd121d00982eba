import { NodeKey } from "./types.js";

export type ColorMode = "by-set" | "by-cluster" | "by-attribute";

export interface Selection {
  nodes: NodeKey[];
  cluster: number | null;
}

export interface AttributeFilter {
  attribute: string;
  value: string;
}

/**
 * Everything needed to reproduce a rendered scene given the same API data.
 * Fully serializable; restoring a serialized state yields the same view.
 */
export interface ViewState {
  hinId: string | null;
  positions: Record<NodeKey, { x: number; y: number }>;
  alpha: number;
  fixDeg: string;
  colorMode: ColorMode;
  colorAttribute: string | null;
  significanceOnly: boolean;
  filters: AttributeFilter[];
  selection: Selection;
  layoutSeed: number;
}

export function defaultViewState(): ViewState {
  return {
    hinId: null,
    positions: {},
    alpha: 0.05,
    fixDeg: "none",
    colorMode: "by-set",
    colorAttribute: null,
    significanceOnly: false,
    filters: [],
    selection: { nodes: [], cluster: null },
    layoutSeed: 1,
  };
}

export function serializeViewState(state: ViewState): string {
  return JSON.stringify(state);
}

export function deserializeViewState(text: string): ViewState {
  const raw = JSON.parse(text) as Partial<ViewState>;
  const base = defaultViewState();
  return {
    ...base,
    ...raw,
    positions: raw.positions ?? {},
    filters: raw.filters ?? [],
    selection: raw.selection ?? base.selection,
  };
}
