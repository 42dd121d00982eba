import { HttpApiClient } from "./api.js";
import { computeLayout, Positions } from "./layout.js";
import { projectionPanel, ProjectionPanelModel } from "./projection.js";
import {
  NetworkRenderer,
  renderErrorPanel,
  renderProjectionPanel,
  ScatterRenderer,
} from "./render.js";
import { scatterPoints, toggleSelection } from "./scatter.js";
import { SceneModel } from "./scene.js";
import { PruneScheduler } from "./scheduler.js";
import { ClusterDoc, MetricsRow, NodeKey } from "./types.js";
import { defaultViewState, deserializeViewState, serializeViewState, ViewState } from "./viewstate.js";

const api = new HttpApiClient("");

interface AppState {
  view: ViewState;
  scene: SceneModel | null;
  positions: Positions;
  metrics: MetricsRow[];
  clusters: ClusterDoc | null;
  projection: ProjectionPanelModel | null;
  datasetId: string | null;
  columns: string[];
}

const state: AppState = {
  view: defaultViewState(),
  scene: null,
  positions: {},
  metrics: [],
  clusters: null,
  projection: null,
  datasetId: null,
  columns: [],
};

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

const errorPanel = () => byId<HTMLDivElement>("error-panel");

function showError(err: unknown): void {
  renderErrorPanel(errorPanel(), err === null ? null : String(err));
}

const VIEWSTATE_KEY = "hinet-viewstate";

function persistView(): void {
  try {
    sessionStorage.setItem(VIEWSTATE_KEY, serializeViewState(state.view));
  } catch {
    /* storage unavailable (private mode) */
  }
}

function restoreView(): void {
  try {
    const saved = sessionStorage.getItem(VIEWSTATE_KEY);
    if (saved) {
      state.view = deserializeViewState(saved);
    }
  } catch {
    /* ignore corrupted state */
  }
}

let networkRenderer: NetworkRenderer;
let scatterRenderer: ScatterRenderer;

const scheduler = new PruneScheduler(
  (alpha, fixDeg) => {
    if (!state.view.hinId) {
      return Promise.reject(new Error("no graph loaded"));
    }
    return api.prune(state.view.hinId, alpha, fixDeg);
  },
  (doc) => {
    state.scene?.applyPrune(doc);
    showError(null);
    redraw();
  },
  showError,
);

function redraw(): void {
  if (state.scene) {
    networkRenderer.render(state.scene, state.view, state.positions);
  }
  const selected = new Set(state.view.selection.nodes);
  scatterRenderer.render(scatterPoints(state.metrics), selected, "strength (s_i)");
  renderProjectionPanel(
    byId("projection-panel"),
    state.projection,
    byId<HTMLInputElement>("significance-toggle").checked,
  );
  persistView();
}

async function loadGraph(hinId: string): Promise<void> {
  const graph = await api.getGraph(hinId);
  if (state.view.hinId !== hinId) {
    // dragged positions belong to the previous graph's index space
    state.view.positions = {};
  }
  state.view.hinId = hinId;
  state.scene = new SceneModel(graph);
  state.clusters = null;
  state.projection = null;
  state.view.selection = { nodes: [], cluster: null };
  const svg = byId<HTMLElement>("network") as unknown as SVGSVGElement;
  const rect = svg.getBoundingClientRect();
  state.positions = computeLayout(graph, {
    width: rect.width || 760,
    height: rect.height || 520,
    seed: state.view.layoutSeed,
  });
  // user-dragged positions win over the computed layout
  for (const [key, pos] of Object.entries(state.view.positions)) {
    if (key in state.positions) {
      state.positions[key as NodeKey] = pos;
    }
  }
  state.metrics = await api.getMetrics(hinId);
  scheduler.flush();
  populateAttributeSelect();
  redraw();
}

function populateAttributeSelect(): void {
  const select = byId<HTMLSelectElement>("color-attribute");
  select.textContent = "";
  for (const name of state.scene?.attributeNames() ?? []) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    select.append(option);
  }
}

async function selectCluster(cluster: number): Promise<void> {
  if (!state.view.hinId) {
    return;
  }
  state.view.selection.cluster = cluster;
  try {
    const doc = await api.projection(
      state.view.hinId,
      cluster,
      state.view.alpha,
      state.view.fixDeg,
    );
    state.projection = projectionPanel(doc);
    showError(null);
  } catch (err) {
    showError(err);
  }
  redraw();
}

function wireControls(): void {
  byId<HTMLButtonElement>("upload-btn").addEventListener("click", async () => {
    try {
      const file = byId<HTMLInputElement>("upload-file").files?.[0];
      if (!file) {
        throw new Error("choose a CSV/TSV file first");
      }
      const { dataset_id } = await api.uploadDataset(await file.text());
      state.datasetId = dataset_id;
      const info = await api.datasetInfo(dataset_id);
      state.columns = info.columns;
      byId("dataset-info").textContent =
        `${dataset_id}: ${info.rows} rows, columns: ${info.columns.join(", ")}`;
      showError(null);
    } catch (err) {
      showError(err);
    }
  });

  byId<HTMLButtonElement>("build-btn").addEventListener("click", async () => {
    try {
      if (!state.datasetId) {
        throw new Error("upload a dataset first");
      }
      const set1 = byId<HTMLInputElement>("set1-cols").value.split(",").map((s) => s.trim()).filter(Boolean);
      const set2 = byId<HTMLInputElement>("set2-cols").value.split(",").map((s) => s.trim()).filter(Boolean);
      const attr = byId<HTMLInputElement>("attr-col").value.trim();
      const filter = byId<HTMLInputElement>("row-filter").value.trim();
      const { hin_id, report } = await api.buildHin(state.datasetId, {
        set1_columns: set1,
        set2_columns: set2,
        attribute_columns: attr ? [[attr, "set1"]] : [],
        row_filter: filter.includes("=")
          ? [[filter.split("=")[0], filter.split("=").slice(1).join("=")]]
          : [],
      });
      byId("build-info").textContent =
        `${hin_id}: N1=${report.n1}, N2=${report.n2}, W=${report.total_weight}` +
        (report.self_pairs_dropped ? ` (${report.self_pairs_dropped} self-pairs dropped)` : "");
      await loadGraph(hin_id);
      showError(null);
    } catch (err) {
      showError(err);
    }
  });

  const alphaSlider = byId<HTMLInputElement>("alpha-slider");
  alphaSlider.addEventListener("input", () => {
    state.view.alpha = Number(alphaSlider.value);
    byId("alpha-value").textContent = state.view.alpha.toFixed(3);
    scheduler.setAlpha(state.view.alpha);
  });

  byId<HTMLSelectElement>("fix-deg").addEventListener("change", (ev) => {
    state.view.fixDeg = (ev.target as HTMLSelectElement).value;
    scheduler.setFixDeg(state.view.fixDeg);
  });

  byId<HTMLInputElement>("significance-toggle").addEventListener("change", (ev) => {
    state.view.significanceOnly = (ev.target as HTMLInputElement).checked;
    redraw();
  });

  byId<HTMLSelectElement>("color-mode").addEventListener("change", (ev) => {
    state.view.colorMode = (ev.target as HTMLSelectElement).value as ViewState["colorMode"];
    redraw();
  });

  byId<HTMLSelectElement>("color-attribute").addEventListener("change", (ev) => {
    state.view.colorAttribute = (ev.target as HTMLSelectElement).value || null;
    redraw();
  });

  byId<HTMLButtonElement>("cluster-btn").addEventListener("click", async () => {
    try {
      if (!state.view.hinId || !state.scene) {
        throw new Error("build a graph first");
      }
      state.clusters = await api.cluster(state.view.hinId);
      state.scene.applyClusterLabels(state.clusters.labels);
      state.view.colorMode = "by-cluster";
      byId<HTMLSelectElement>("color-mode").value = "by-cluster";
      byId("cluster-info").textContent =
        `B=${state.clusters.B}, description length ${state.clusters.dl_bits.toFixed(2)} bits`;
      showError(null);
      redraw();
    } catch (err) {
      showError(err);
    }
  });

  byId<HTMLButtonElement>("clear-selection").addEventListener("click", () => {
    state.view.selection = { nodes: [], cluster: null };
    state.projection = null;
    redraw();
  });
}

function start(): void {
  restoreView();
  networkRenderer = new NetworkRenderer(byId("network") as unknown as SVGSVGElement, {
    onNodeClick: (key) => {
      state.view.selection.nodes = toggleSelection(state.view.selection.nodes, key);
      redraw();
    },
    onNodeDrag: (key, x, y) => {
      state.positions[key] = { x, y };
      state.view.positions[key] = { x, y };
      redraw();
    },
    onClusterClick: (cluster) => {
      void selectCluster(cluster);
    },
    onBackgroundClick: () => {
      state.view.selection.nodes = [];
      redraw();
    },
  });
  scatterRenderer = new ScatterRenderer(byId("scatter") as unknown as SVGSVGElement, (key) => {
    state.view.selection.nodes = toggleSelection(state.view.selection.nodes, key);
    redraw();
  });
  wireControls();
  byId("alpha-value").textContent = state.view.alpha.toFixed(3);
}

document.addEventListener("DOMContentLoaded", start);
