import { displayLabel, GraphDoc, nodeKey, NodeKey, PruneDoc } from "./types.js";
import { ViewState } from "./viewstate.js";

export interface SceneNode {
  set: 1 | 2;
  index: number;
  key: NodeKey;
  label: string;
  attrs: Record<string, string>;
  color: string;
  selected: boolean;
  visible: boolean;
}

export interface SceneEdge {
  i: number;
  j: number;
  w: number;
  /** null until a prune result is loaded */
  kept: boolean | null;
  visible: boolean;
  width: number;
  highlighted: boolean;
}

const SET1_COLOR = "#4c78a8";
const SET2_COLOR = "#59a14f";
const NEUTRAL = "#9aa3ab";
const PALETTE = [
  "#f58518", "#4c78a8", "#54a24b", "#b279a2", "#e45756",
  "#72b7b2", "#eeca3b", "#ff9da6", "#9d755d", "#bab0ac",
];

/**
 * Pure projection of (graph, prune result, cluster labels, view state) into
 * drawable nodes and edges. Holds no DOM; renderers consume its output and
 * interaction handlers write back into the ViewState only.
 */
export class SceneModel {
  private keptByPair: Map<string, boolean> | null = null;
  private clusterLabels: number[] | null = null;
  private maxWeight: number;

  constructor(public readonly graph: GraphDoc) {
    this.maxWeight = Math.max(1, ...graph.edges.map((e) => e[2]));
  }

  applyPrune(doc: PruneDoc | null): void {
    if (doc === null) {
      this.keptByPair = null;
      return;
    }
    this.keptByPair = new Map(doc.edges.map((e) => [`${e.i}|${e.j}`, e.kept]));
  }

  applyClusterLabels(labels: number[] | null): void {
    this.clusterLabels = labels;
  }

  get hasPrune(): boolean {
    return this.keptByPair !== null;
  }

  get hasClusters(): boolean {
    return this.clusterLabels !== null;
  }

  clusterOf(index: number): number | null {
    return this.clusterLabels ? this.clusterLabels[index] : null;
  }

  private nodePassesFilters(set: 1 | 2, index: number, state: ViewState): boolean {
    const attrs = (set === 1 ? this.graph.set1 : this.graph.set2)[index].attrs;
    for (const f of state.filters) {
      if ((attrs[f.attribute] ?? "") !== f.value) {
        return false;
      }
    }
    if (state.selection.cluster !== null && set === 1 && this.clusterLabels) {
      return this.clusterLabels[index] === state.selection.cluster;
    }
    return true;
  }

  private nodeColor(set: 1 | 2, index: number, state: ViewState): string {
    if (state.colorMode === "by-cluster" && this.clusterLabels) {
      // focal nodes take their cluster color; target nodes stay neutral
      if (set === 1) {
        return PALETTE[this.clusterLabels[index] % PALETTE.length];
      }
      return NEUTRAL;
    }
    if (state.colorMode === "by-attribute" && state.colorAttribute) {
      const nodes = set === 1 ? this.graph.set1 : this.graph.set2;
      const value = nodes[index].attrs[state.colorAttribute];
      if (value === undefined) {
        return NEUTRAL;
      }
      const values = this.attributeValues(state.colorAttribute);
      return PALETTE[Math.max(0, values.indexOf(value)) % PALETTE.length];
    }
    return set === 1 ? SET1_COLOR : SET2_COLOR;
  }

  attributeValues(attribute: string): string[] {
    const seen = new Set<string>();
    for (const node of [...this.graph.set1, ...this.graph.set2]) {
      const v = node.attrs[attribute];
      if (v !== undefined) {
        seen.add(v);
      }
    }
    return [...seen].sort();
  }

  attributeNames(): string[] {
    const names = new Set<string>();
    for (const node of [...this.graph.set1, ...this.graph.set2]) {
      for (const k of Object.keys(node.attrs)) {
        names.add(k);
      }
    }
    return [...names].sort();
  }

  nodes(state: ViewState): SceneNode[] {
    const selected = new Set(state.selection.nodes);
    const out: SceneNode[] = [];
    ([1, 2] as const).forEach((set) => {
      const list = set === 1 ? this.graph.set1 : this.graph.set2;
      list.forEach((node, index) => {
        const key = nodeKey(set, index);
        out.push({
          set,
          index,
          key,
          label: displayLabel(node),
          attrs: node.attrs,
          color: this.nodeColor(set, index, state),
          selected: selected.has(key),
          visible: this.nodePassesFilters(set, index, state),
        });
      });
    });
    return out;
  }

  edges(state: ViewState): SceneEdge[] {
    const selected = new Set(state.selection.nodes);
    return this.graph.edges.map(([i, j, w]) => {
      const kept = this.keptByPair ? this.keptByPair.get(`${i}|${j}`) ?? false : null;
      let visible = this.nodePassesFilters(1, i, state) && this.nodePassesFilters(2, j, state);
      if (state.significanceOnly && this.keptByPair !== null && kept !== true) {
        visible = false;
      }
      return {
        i,
        j,
        w,
        kept,
        visible,
        width: 1 + 5 * (w / this.maxWeight),
        highlighted: selected.has(nodeKey(1, i)) || selected.has(nodeKey(2, j)),
      };
    });
  }

  visibleEdges(state: ViewState): SceneEdge[] {
    return this.edges(state).filter((e) => e.visible);
  }

  visibleNodes(state: ViewState): SceneNode[] {
    return this.nodes(state).filter((n) => n.visible);
  }
}
