"""Command-line pipeline driver.

One binary covers the whole flow: build a graph from a log, compute node
metrics, prune edges against a null model, cluster the focal set, project
clusters, validate thresholds by simulation, and serve the HTTP API.

Exit codes: 0 success, 1 data error, 2 usage error. Artifacts are written
in canonical form only after a stage fully succeeds, so failed runs never
leave partial files. Every randomized path takes ``--seed``; identical
inputs, flags and seed give byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import clustering, metrics, model, pruning
from .ingest import HinSpec, ingest_with_report, read_delimited_file
from .errors import HinetError

OUT_DIR_ENV = "HINET_OUT_DIR"

_DELIMITERS = {",": ",", "comma": ",", "tab": "\t", "\\t": "\t", "\t": "\t"}


@dataclass(frozen=True)
class PipelineConfig:
    """Resolved options for one pipeline invocation; JSON round-trippable."""

    command: str
    input_path: str | None = None
    hin_spec: HinSpec | None = None
    null_spec: pruning.NullModelSpec | None = None
    bonferroni: bool = False
    seed: int | None = None
    restarts: int = 1
    draws: int | None = None
    output_path: str | None = None
    options: tuple[tuple[str, str], ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "command": self.command,
            "input_path": self.input_path,
            "hin_spec": self.hin_spec.to_dict() if self.hin_spec else None,
            "null_spec": self.null_spec.to_dict() if self.null_spec else None,
            "bonferroni": self.bonferroni,
            "seed": self.seed,
            "restarts": self.restarts,
            "draws": self.draws,
            "output_path": self.output_path,
            "options": [list(pair) for pair in self.options],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "PipelineConfig":
        return cls(
            command=obj["command"],
            input_path=obj.get("input_path"),
            hin_spec=HinSpec.from_dict(obj["hin_spec"]) if obj.get("hin_spec") else None,
            null_spec=(
                pruning.NullModelSpec.from_dict(obj["null_spec"]) if obj.get("null_spec") else None
            ),
            bonferroni=bool(obj.get("bonferroni", False)),
            seed=obj.get("seed"),
            restarts=int(obj.get("restarts", 1)),
            draws=obj.get("draws"),
            output_path=obj.get("output_path"),
            options=tuple((str(k), str(v)) for k, v in obj.get("options", ())),
        )


def _resolve_out(path: str) -> str:
    base = os.environ.get(OUT_DIR_ENV, "")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write_text(path: str, content: str) -> str:
    target = _resolve_out(path)
    parent = os.path.dirname(target)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(target, "w", encoding="utf-8") as fh:
        fh.write(content)
    return target


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n"


def _parse_pairs(raw: list[str] | None, flag: str) -> list[tuple[str, str]]:
    pairs = []
    for item in raw or []:
        if "=" not in item:
            raise ValueError(f"{flag} expects col=value, got {item!r}")
        col, _, value = item.partition("=")
        pairs.append((col, value))
    return pairs


def _load_hin(path: str) -> model.Hin:
    return model.read_json(path)


def _spec_from_args(args) -> HinSpec:
    return HinSpec(
        set1_columns=tuple(c for c in args.set1.split(",") if c),
        set2_columns=tuple(c for c in args.set2.split(",") if c),
        weight_column=args.weight_column,
        attribute_columns=tuple(_parse_pairs(args.attr, "--attr")),
        allow_self_pairs=args.allow_self_pairs,
        row_filter=tuple(_parse_pairs(args.filter, "--filter")),
    )


def cmd_build(args) -> int:
    delimiter = _DELIMITERS.get(args.delimiter) if args.delimiter else None
    if args.delimiter and delimiter is None:
        raise ValueError(f"unsupported delimiter {args.delimiter!r}; use comma or tab")
    spec = _spec_from_args(args)
    table = read_delimited_file(args.input, delimiter=delimiter)
    name = args.name or os.path.splitext(os.path.basename(args.out))[0]
    hin, report = ingest_with_report(table, spec, name=name)
    out = _write_text(args.out, model.to_canonical_json(hin) + "\n")
    if args.report:
        _write_text(args.report, _dumps(report.to_dict()))
    print(f"wrote {out} (N1={hin.n1}, N2={hin.n2}, W={hin.total_weight})")
    return 0


def cmd_metrics(args) -> int:
    hin = _load_hin(args.hin)
    rows = metrics.metrics_table(hin, args.group_attr)
    if args.format == "json":
        content = _dumps(metrics.metrics_to_dicts(rows))
    else:
        content = metrics.metrics_to_csv(rows)
    out = _write_text(args.out, content)
    print(f"wrote {out} ({len(rows)} nodes)")
    return 0


def _null_spec_from_args(args) -> pruning.NullModelSpec:
    return pruning.NullModelSpec(fix_deg=pruning.FixDeg(args.fix_deg), alpha=args.alpha)


def cmd_prune(args) -> int:
    hin = _load_hin(args.hin)
    spec = _null_spec_from_args(args)
    result = pruning.prune(hin, spec, bonferroni=args.bonferroni)
    out = _write_text(args.out, _dumps(result.to_json_dict(hin)))
    print(f"wrote {out} (kept {len(result.kept_edges)}/{len(hin.edges)} edges)")
    return 0


def cmd_cluster(args) -> int:
    hin = _load_hin(args.hin)
    result = clustering.cluster(hin, seed=args.seed, restarts=args.restarts)
    out = _write_text(args.out, _dumps(result.to_json_dict()))
    print(f"wrote {out} (B={result.best_partition.b}, dl={result.best_dl:.4f} bits)")
    return 0


def cmd_project(args) -> int:
    hin = _load_hin(args.hin)
    with open(args.labels, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    partition = clustering.Partition(tuple(doc["labels"]))
    projection = clustering.project_cluster(hin, partition, args.cluster)
    bip = clustering.projection_to_hin(projection)
    out = _write_text(args.out, model.to_canonical_json(bip) + "\n")
    print(f"wrote {out} (cluster {args.cluster}, {len(projection.weights)} targets)")
    return 0


def cmd_simulate_null(args) -> int:
    hin = _load_hin(args.hin)
    spec = _null_spec_from_args(args)
    report = pruning.null_simulation(hin, spec, draws=args.draws, seed=args.seed)
    out = _write_text(args.out, report.to_json() + "\n")
    print(
        f"wrote {out} (exceedance {report.exceedance_ge:.5f} at alpha={spec.alpha})"
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        persist_dir=args.persist_dir,
        ui_dir=args.ui_dir,
        cluster_budget=args.budget,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def config_from_args(args) -> PipelineConfig:
    """Capture the resolved options of a parsed invocation."""
    command = args.command
    kwargs: dict = {"command": command}
    if command == "build":
        kwargs.update(
            input_path=args.input,
            hin_spec=_spec_from_args(args),
            output_path=args.out,
            options=tuple(
                sorted(
                    {
                        "delimiter": args.delimiter or "",
                        "name": args.name or "",
                        "report": args.report or "",
                    }.items()
                )
            ),
        )
    elif command in ("prune", "simulate-null"):
        kwargs.update(
            input_path=args.hin,
            null_spec=_null_spec_from_args(args),
            bonferroni=getattr(args, "bonferroni", False),
            draws=getattr(args, "draws", None),
            seed=getattr(args, "seed", None),
            output_path=args.out,
        )
    elif command == "cluster":
        kwargs.update(
            input_path=args.hin, seed=args.seed, restarts=args.restarts, output_path=args.out
        )
    elif command == "metrics":
        kwargs.update(
            input_path=args.hin,
            output_path=args.out,
            options=(("format", args.format), ("group_attr", args.group_attr or "")),
        )
    elif command == "project":
        kwargs.update(
            input_path=args.hin,
            output_path=args.out,
            options=(("cluster", str(args.cluster)), ("labels", args.labels)),
        )
    return PipelineConfig(**kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hinet",
        description="Bipartite interaction-network analytics pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a graph from a delimited log")
    p.add_argument("--input", required=True, help="delimited log with a header row")
    p.add_argument("--set1", required=True, help="comma-separated focal columns")
    p.add_argument("--set2", required=True, help="comma-separated target columns (composite if >1)")
    p.add_argument("--weight-column", default=None, help="sum this integer column instead of counting rows")
    p.add_argument("--attr", action="append", metavar="COL=SET", help="attach column as node attribute, e.g. team=set1")
    p.add_argument("--filter", action="append", metavar="COL=VALUE", help="keep only rows where column equals value")
    p.add_argument("--allow-self-pairs", action="store_true", help="keep rows whose two labels coincide")
    p.add_argument("--delimiter", default=None, help="comma or tab (default: sniffed)")
    p.add_argument("--name", default=None, help="graph name stored in metadata")
    p.add_argument("--report", default=None, help="also write the ingest report here")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("metrics", help="per-node quantity/diversity table")
    p.add_argument("--hin", required=True)
    p.add_argument("--group-attr", default=None, help="focal attribute for subgroup normalization")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("prune", help="keep edges significant under a null model")
    p.add_argument("--hin", required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--fix-deg", choices=("none", "set1", "set2"), default="none")
    p.add_argument("--bonferroni", action="store_true", help="divide alpha by the edge count")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("cluster", help="minimum-description-length clustering of the focal set")
    p.add_argument("--hin", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("project", help="aggregate one cluster onto the target set")
    p.add_argument("--hin", required=True)
    p.add_argument("--labels", required=True, help="clustering output JSON")
    p.add_argument("--cluster", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("simulate-null", help="Monte Carlo check of pruning thresholds")
    p.add_argument("--hin", required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--fix-deg", choices=("none", "set1", "set2"), default="none")
    p.add_argument("--draws", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate_null)

    p = sub.add_parser("serve", help="run the HTTP API (and UI, if built)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--persist-dir", default=os.environ.get("HINET_PERSIST_DIR"))
    p.add_argument("--ui-dir", default=os.environ.get("HINET_UI_DIR"))
    p.add_argument("--budget", type=float, default=60.0, help="clustering time budget in seconds")
    p.set_defaults(func=cmd_serve)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except HinetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
