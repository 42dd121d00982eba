import { SceneEdge, SceneModel, SceneNode } from "./scene.js";
import { linearScale, ScatterPoint } from "./scatter.js";
import { ProjectionPanelModel } from "./projection.js";
import { Positions } from "./layout.js";
import { nodeKey, NodeKey } from "./types.js";
import { ViewState } from "./viewstate.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface NetworkCallbacks {
  onNodeClick(key: NodeKey): void;
  onNodeDrag(key: NodeKey, x: number, y: number): void;
  onClusterClick(cluster: number): void;
  onBackgroundClick(): void;
}

function el<K extends keyof SVGElementTagNameMap>(
  name: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, name);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, String(v));
  }
  return node;
}

/** Imperative SVG renderer for the bipartite network view. */
export class NetworkRenderer {
  private dragging: NodeKey | null = null;

  constructor(
    private svg: SVGSVGElement,
    private callbacks: NetworkCallbacks,
  ) {
    svg.addEventListener("pointermove", (ev) => this.handleDrag(ev));
    svg.addEventListener("pointerup", () => (this.dragging = null));
    svg.addEventListener("pointerleave", () => (this.dragging = null));
    svg.addEventListener("click", (ev) => {
      if (ev.target === svg) {
        this.callbacks.onBackgroundClick();
      }
    });
  }

  private handleDrag(ev: PointerEvent): void {
    if (!this.dragging) {
      return;
    }
    const rect = this.svg.getBoundingClientRect();
    this.callbacks.onNodeDrag(this.dragging, ev.clientX - rect.left, ev.clientY - rect.top);
  }

  render(scene: SceneModel, state: ViewState, positions: Positions): void {
    this.svg.textContent = "";
    const edgeLayer = el("g");
    const nodeLayer = el("g");
    this.svg.append(edgeLayer, nodeLayer);

    for (const edge of scene.visibleEdges(state)) {
      const a = positions[nodeKey(1, edge.i)];
      const b = positions[nodeKey(2, edge.j)];
      if (!a || !b) {
        continue;
      }
      edgeLayer.append(
        el("line", {
          x1: a.x,
          y1: a.y,
          x2: b.x,
          y2: b.y,
          class: edgeClass(edge),
          "stroke-width": edge.width,
        }),
      );
    }

    for (const node of scene.visibleNodes(state)) {
      const pos = positions[node.key];
      if (!pos) {
        continue;
      }
      const group = el("g", { class: "node", transform: `translate(${pos.x},${pos.y})` });
      const shape =
        node.set === 1
          ? el("circle", { r: node.selected ? 10 : 7 })
          : el("rect", { x: -7, y: -7, width: 14, height: 14, rx: 3 });
      shape.setAttribute("fill", node.color);
      if (node.selected) {
        shape.setAttribute("stroke", "#222");
        shape.setAttribute("stroke-width", "2.5");
      }
      const text = el("text", { x: 10, y: 4, class: "node-label" });
      text.textContent = node.label;
      group.append(shape, text);
      group.addEventListener("pointerdown", (ev) => {
        ev.preventDefault();
        this.dragging = node.key;
      });
      group.addEventListener("click", (ev) => {
        ev.stopPropagation();
        this.callbacks.onNodeClick(node.key);
        const cluster = node.set === 1 ? scene.clusterOf(node.index) : null;
        if (cluster !== null && state.colorMode === "by-cluster") {
          this.callbacks.onClusterClick(cluster);
        }
      });
      nodeLayer.append(group);
    }
  }
}

function edgeClass(edge: SceneEdge): string {
  const parts = ["edge"];
  if (edge.kept === false) {
    parts.push("edge-insignificant");
  }
  if (edge.highlighted) {
    parts.push("edge-highlighted");
  }
  return parts.join(" ");
}

export class ScatterRenderer {
  constructor(
    private svg: SVGSVGElement,
    private onPointClick: (key: NodeKey) => void,
  ) {}

  render(points: ScatterPoint[], selected: Set<NodeKey>, axisLabel: string): void {
    this.svg.textContent = "";
    const width = this.svg.clientWidth || 360;
    const height = this.svg.clientHeight || 260;
    const margin = 34;
    const xscale = linearScale(points.map((p) => p.x));
    const plotW = width - 2 * margin;
    const plotH = height - 2 * margin;

    const axes = el("g", { class: "axes" });
    axes.append(
      el("line", { x1: margin, y1: height - margin, x2: width - margin, y2: height - margin }),
      el("line", { x1: margin, y1: margin, x2: margin, y2: height - margin }),
    );
    const xText = el("text", { x: width / 2, y: height - 6, class: "axis-label" });
    xText.textContent = axisLabel;
    const yText = el("text", {
      x: 10,
      y: height / 2,
      class: "axis-label",
      transform: `rotate(-90 10 ${height / 2})`,
    });
    yText.textContent = "diversity";
    axes.append(xText, yText);
    // zero-diversity band
    axes.append(
      el("rect", {
        x: margin,
        y: height - margin - 4,
        width: plotW,
        height: 4,
        class: "zero-band",
      }),
    );
    this.svg.append(axes);

    for (const p of points) {
      const cx = margin + xscale.toPixel(p.x, plotW);
      const cy = margin + (1 - p.y) * plotH;
      const dot = el("circle", {
        cx,
        cy,
        r: selected.has(p.key) ? 7 : 4.5,
        class: p.isolated ? "dot dot-isolated" : p.zeroDiversity ? "dot dot-zero" : "dot",
      });
      dot.addEventListener("click", () => this.onPointClick(p.key));
      const title = el("title");
      title.textContent = `${p.label}: x=${p.x}, D=${p.y.toFixed(4)}${p.isolated ? " (isolated)" : ""}`;
      dot.append(title);
      this.svg.append(dot);
    }
  }
}

export function renderProjectionPanel(
  container: HTMLElement,
  model: ProjectionPanelModel | null,
  significantOnly: boolean,
): void {
  container.textContent = "";
  if (!model) {
    container.append("Select a cluster (color by cluster, then click a focal node).");
    return;
  }
  const heading = document.createElement("h3");
  heading.textContent = `Cluster ${model.cluster} · ${model.memberCount} members · α=${model.alpha}`;
  container.append(heading);
  const table = document.createElement("table");
  table.innerHTML =
    "<thead><tr><th>code</th><th>partner</th><th>weight</th><th>threshold</th><th>kept</th></tr></thead>";
  const body = document.createElement("tbody");
  const rows = significantOnly ? model.keptRows : model.rows;
  for (const row of rows) {
    const tr = document.createElement("tr");
    tr.className = row.kept ? "kept" : "pruned";
    for (const cell of [row.code, row.partner, String(row.weight), String(row.threshold), row.kept ? "yes" : "no"]) {
      const td = document.createElement("td");
      td.textContent = cell;
      tr.append(td);
    }
    body.append(tr);
  }
  table.append(body);
  container.append(table);
}

export function renderErrorPanel(container: HTMLElement, message: string | null): void {
  container.textContent = message ?? "";
  container.classList.toggle("visible", message !== null);
}
