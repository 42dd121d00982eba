"""HTTP API wrapping the analysis pipeline for interactive use.

Sessions hold uploaded datasets and built graphs in memory (optionally
mirrored to a directory) and cache analysis responses keyed by the graph
and the request parameters, so identical requests return byte-identical
bodies. Graphs are immutable once built; every analysis endpoint is a pure
function of (graph, parameters) and safe to retry.

Clustering runs under a server-side time budget. A request that exceeds it
gets 503 with a retry hint while the computation keeps going; a later
retry picks up the finished result from the cache.
"""

from __future__ import annotations

import asyncio
import itertools
import json
import re
import threading
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse, Response
from fastapi.staticfiles import StaticFiles

from . import clustering, metrics, model, pruning
from .ingest import HinSpec, IngestReport, Table, ingest_with_report, read_delimited_text
from .errors import HinetError, UnknownId


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


class Session:
    """Per-session state: datasets, built graphs, and cached responses."""

    def __init__(self, session_id: str, persist_dir: Path | None = None):
        self.session_id = session_id
        self.lock = threading.Lock()
        self.datasets: dict[str, Table] = {}
        self.raw_datasets: dict[str, tuple[str, str | None]] = {}  # id -> (text, delimiter)
        self.hins: dict[str, model.Hin] = {}
        self.reports: dict[str, IngestReport] = {}
        self.cluster_results: dict[tuple, clustering.ClusterResult] = {}
        self.latest_cluster: dict[str, clustering.ClusterResult] = {}
        self.response_cache: dict[tuple, str] = {}
        self.pending: dict[tuple, object] = {}
        self.persist_dir = persist_dir
        self._counter = itertools.count(1)
        if persist_dir is not None:
            self._reload()

    def allocate_id(self, prefix: str) -> str:
        with self.lock:
            return f"{prefix}-{next(self._counter)}"

    # -- persistence ---------------------------------------------------------

    def _reload(self) -> None:
        root = self.persist_dir
        highest = 0
        ds_dir = root / "datasets"
        if ds_dir.is_dir():
            for meta_path in sorted(ds_dir.glob("*.json")):
                meta = json.loads(meta_path.read_text(encoding="utf-8"))
                ds_id = meta["dataset_id"]
                text = (ds_dir / f"{ds_id}.txt").read_text(encoding="utf-8")
                self.raw_datasets[ds_id] = (text, meta.get("delimiter"))
                self.datasets[ds_id] = read_delimited_text(text, meta.get("delimiter"))
                highest = max(highest, _id_number(ds_id))
        hin_dir = root / "hins"
        if hin_dir.is_dir():
            for path in sorted(hin_dir.glob("*.json")):
                if path.name.endswith(".report.json"):
                    continue
                hin_id = path.stem
                self.hins[hin_id] = model.read_json(path)
                report_path = hin_dir / f"{hin_id}.report.json"
                if report_path.exists():
                    doc = json.loads(report_path.read_text(encoding="utf-8"))
                    self.reports[hin_id] = IngestReport(
                        rows_total=doc["rows_total"],
                        rows_after_filter=doc["rows_after_filter"],
                        rows_rejected=doc["rows_rejected"],
                        rows_kept=doc["rows_kept"],
                        self_pairs_dropped=doc["self_pairs_dropped"],
                        n1=doc["n1"],
                        n2=doc["n2"],
                        total_weight=doc["total_weight"],
                        diagnostics=tuple(doc.get("diagnostics", ())),
                    )
                highest = max(highest, _id_number(hin_id))
        if highest:
            self._counter = itertools.count(highest + 1)

    def persist_dataset(self, ds_id: str) -> None:
        if self.persist_dir is None:
            return
        ds_dir = self.persist_dir / "datasets"
        ds_dir.mkdir(parents=True, exist_ok=True)
        text, delimiter = self.raw_datasets[ds_id]
        (ds_dir / f"{ds_id}.txt").write_text(text, encoding="utf-8")
        (ds_dir / f"{ds_id}.json").write_text(
            _dumps({"dataset_id": ds_id, "delimiter": delimiter}), encoding="utf-8"
        )

    def persist_hin(self, hin_id: str) -> None:
        if self.persist_dir is None:
            return
        hin_dir = self.persist_dir / "hins"
        hin_dir.mkdir(parents=True, exist_ok=True)
        model.write_json(self.hins[hin_id], hin_dir / f"{hin_id}.json")
        if hin_id in self.reports:
            (hin_dir / f"{hin_id}.report.json").write_text(
                _dumps(self.reports[hin_id].to_dict()), encoding="utf-8"
            )

    # -- lookups ---------------------------------------------------------------

    def dataset(self, ds_id: str) -> Table:
        try:
            return self.datasets[ds_id]
        except KeyError:
            raise UnknownId(f"no dataset {ds_id!r}") from None

    def hin(self, hin_id: str) -> model.Hin:
        try:
            return self.hins[hin_id]
        except KeyError:
            raise UnknownId(f"no hin {hin_id!r}") from None


def _id_number(identifier: str) -> int:
    match = re.search(r"(\d+)$", identifier)
    return int(match.group(1)) if match else 0


def create_app(
    persist_dir: str | None = None,
    ui_dir: str | None = None,
    cluster_budget: float = 60.0,
) -> FastAPI:
    app = FastAPI(title="hinet service", version="0.1.0")
    sessions: dict[str, Session] = {}
    sessions_lock = threading.Lock()
    executor = ThreadPoolExecutor(max_workers=4)
    persist_root = Path(persist_dir) if persist_dir else None

    def get_session(request: Request) -> Session:
        sid = request.headers.get("x-session-id", "default")
        with sessions_lock:
            if sid not in sessions:
                sub = persist_root / sid if persist_root else None
                sessions[sid] = Session(sid, sub)
            return sessions[sid]

    @app.exception_handler(HinetError)
    async def handle_domain_error(request: Request, exc: HinetError):
        status = 404 if isinstance(exc, UnknownId) else 422
        return JSONResponse({"error": type(exc).__name__, "detail": str(exc)}, status_code=status)

    @app.exception_handler(ValueError)
    async def handle_malformed(request: Request, exc: ValueError):
        return JSONResponse({"error": "MalformedSpec", "detail": str(exc)}, status_code=400)

    async def read_json_body(request: Request) -> dict:
        try:
            payload = await request.json()
        except json.JSONDecodeError:
            raise ValueError("request body is not valid JSON") from None
        if not isinstance(payload, dict):
            raise ValueError("request body must be a JSON object")
        return payload

    def cached_json(session: Session, key: tuple, build) -> Response:
        with session.lock:
            body = session.response_cache.get(key)
        if body is None:
            body = _dumps(build())
            with session.lock:
                session.response_cache[key] = body
        return Response(content=body, media_type="application/json")

    @app.get("/healthz")
    async def healthz():
        return PlainTextResponse("ok")

    @app.post("/datasets")
    async def upload_dataset(request: Request, delimiter: str | None = None):
        raw = (await request.body()).decode("utf-8")
        if not raw.strip():
            raise ValueError("empty upload")
        table = read_delimited_text(raw, delimiter)
        session = get_session(request)
        ds_id = session.allocate_id("ds")
        with session.lock:
            session.datasets[ds_id] = table
            session.raw_datasets[ds_id] = (raw, delimiter)
        session.persist_dataset(ds_id)
        return JSONResponse({"dataset_id": ds_id})

    @app.get("/datasets/{ds_id}")
    async def dataset_info(ds_id: str, request: Request):
        table = get_session(request).dataset(ds_id)
        return JSONResponse(
            {"dataset_id": ds_id, "columns": list(table.columns), "rows": len(table.rows)}
        )

    @app.post("/hins")
    async def build_hin(request: Request):
        payload = await read_json_body(request)
        if "dataset_id" not in payload or "spec" not in payload:
            raise ValueError("body must contain dataset_id and spec")
        session = get_session(request)
        table = session.dataset(str(payload["dataset_id"]))
        spec = HinSpec.from_dict(payload["spec"])
        name = str(payload.get("name") or "hin")
        hin, report = ingest_with_report(table, spec, name=name)
        hin_id = session.allocate_id("hin")
        with session.lock:
            session.hins[hin_id] = hin
            session.reports[hin_id] = report
        session.persist_hin(hin_id)
        return JSONResponse({"hin_id": hin_id, "report": report.to_dict()})

    @app.get("/hins/{hin_id}")
    async def get_hin(hin_id: str, request: Request):
        hin = get_session(request).hin(hin_id)
        return Response(content=model.to_canonical_json(hin), media_type="application/json")

    @app.get("/hins/{hin_id}/metrics")
    async def get_metrics(hin_id: str, request: Request, group_attr: str | None = None):
        session = get_session(request)
        hin = session.hin(hin_id)
        key = (hin_id, "metrics", group_attr)
        return cached_json(
            session, key, lambda: metrics.metrics_to_dicts(metrics.metrics_table(hin, group_attr))
        )

    @app.post("/hins/{hin_id}/prune")
    async def prune_hin(hin_id: str, request: Request):
        payload = await read_json_body(request)
        session = get_session(request)
        hin = session.hin(hin_id)
        spec = pruning.NullModelSpec.from_dict(payload)
        bonferroni = bool(payload.get("bonferroni", False))
        key = (hin_id, "prune", spec.fix_deg.value, spec.alpha, bonferroni)
        return cached_json(
            session,
            key,
            lambda: pruning.prune(hin, spec, bonferroni=bonferroni).to_json_dict(hin),
        )

    async def run_cluster(
        session: Session, hin_id: str, hin: model.Hin, seed: int | None, restarts: int
    ):
        """Run clustering under the time budget, sharing work across retries."""
        key = (hin_id, "cluster", seed, restarts)
        with session.lock:
            if key in session.response_cache:
                return session.cluster_results[key], session.response_cache[key]
            future = session.pending.get(key)
            if future is None:
                future = executor.submit(clustering.cluster, hin, seed=seed, restarts=restarts)
                session.pending[key] = future
        try:
            result = await asyncio.wait_for(asyncio.wrap_future(future), timeout=cluster_budget)
        except asyncio.TimeoutError:
            # the submitted job keeps running; a retry will reuse it
            return None, None
        body = _dumps(result.to_json_dict())
        with session.lock:
            session.response_cache[key] = body
            session.pending.pop(key, None)
            session.cluster_results[key] = result
            session.latest_cluster[hin_id] = result
        return result, body

    def timeout_response():
        return JSONResponse(
            {
                "error": "Timeout",
                "detail": f"clustering exceeded the {cluster_budget:.0f}s budget; retry shortly",
            },
            status_code=503,
            headers={"Retry-After": "5"},
        )

    @app.post("/hins/{hin_id}/cluster")
    async def cluster_hin(hin_id: str, request: Request):
        raw = await request.body()
        payload = await read_json_body(request) if raw else {}
        session = get_session(request)
        hin = session.hin(hin_id)
        seed = payload.get("seed")
        seed = int(seed) if seed is not None else None
        restarts = int(payload.get("restarts", 1))
        result, body = await run_cluster(session, hin_id, hin, seed, restarts)
        if result is None:
            return timeout_response()
        return Response(content=body, media_type="application/json")

    @app.get("/hins/{hin_id}/clusters/{cluster_id}/projection")
    async def cluster_projection(
        hin_id: str,
        cluster_id: int,
        request: Request,
        alpha: float = 0.05,
        fix_deg: str = "none",
    ):
        session = get_session(request)
        hin = session.hin(hin_id)
        with session.lock:
            latest = session.latest_cluster.get(hin_id)
        if latest is None:
            latest, _ = await run_cluster(session, hin_id, hin, None, 1)
            if latest is None:
                return timeout_response()
        partition = latest.best_partition
        spec = pruning.NullModelSpec(pruning.FixDeg(fix_deg), alpha)
        key = (hin_id, "projection", partition.labels, cluster_id, spec.fix_deg.value, spec.alpha)

        def build():
            projection = clustering.project_cluster(hin, partition, cluster_id)
            bip = clustering.projection_to_hin(projection)
            pruned = pruning.prune(bip, spec)
            return {
                "cluster": cluster_id,
                "members": list(projection.members),
                "graph": model.to_canonical_dict(bip),
                "prune": pruned.to_json_dict(bip),
            }

        return cached_json(session, key, build)

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
