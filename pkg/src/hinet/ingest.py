"""Turn tabular interaction logs into interaction graphs.

The pipeline follows three construction steps: pick the columns that type
each entity (possibly composite), treat each surviving row as one
interaction, and assign weights either by counting rows or by summing an
integer column.

Ingestion is order-insensitive: node indices are assigned by sorting the
distinct labels, so permuting input rows yields an identical graph.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    EmptyAfterFilter,
    InconsistentAttribute,
    MissingColumn,
    NonIntegerWeightCell,
)
from .model import Hin, NodeLabel, build_hin

SET1 = "set1"
SET2 = "set2"


@dataclass(frozen=True)
class Table:
    """In-memory table of string cells with a named header."""

    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        seen = set()
        for col in self.columns:
            if col in seen:
                raise ValueError(f"duplicate column name {col!r}")
            seen.add(col)

    def column_index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise MissingColumn(f"column {name!r} not in table") from None


def sniff_delimiter(header_line: str) -> str:
    """Pick comma or tab, whichever occurs more often in the header."""
    return "\t" if header_line.count("\t") > header_line.count(",") else ","


def read_delimited_text(text: str, delimiter: str | None = None) -> Table:
    """Parse delimiter-separated text with a header row into a Table.

    The delimiter is auto-detected among comma/tab unless given. Rows
    shorter than the header are padded with empty cells; blank lines are
    skipped.
    """
    first_newline = text.find("\n")
    header_line = text if first_newline < 0 else text[:first_newline]
    if delimiter is None:
        delimiter = sniff_delimiter(header_line)
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    rows_iter = iter(reader)
    try:
        header = next(rows_iter)
    except StopIteration:
        raise ValueError("empty input: no header row") from None
    columns = tuple(c.strip() for c in header)
    width = len(columns)
    rows = []
    for raw in rows_iter:
        if not raw or all(cell == "" for cell in raw):
            continue
        cells = list(raw[:width])
        if len(cells) < width:
            cells.extend([""] * (width - len(cells)))
        rows.append(tuple(cells))
    return Table(columns=columns, rows=tuple(rows))


def read_delimited_file(path, delimiter: str | None = None) -> Table:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return read_delimited_text(fh.read(), delimiter=delimiter)


@dataclass(frozen=True)
class HinSpec:
    """Column mapping that turns a table into a bipartite graph.

    ``weight_column=None`` counts rows per (label1, label2) pair; otherwise
    the named column is summed and must hold integers >= 1.
    """

    set1_columns: tuple[str, ...]
    set2_columns: tuple[str, ...]
    weight_column: str | None = None
    attribute_columns: tuple[tuple[str, str], ...] = ()
    allow_self_pairs: bool = False
    row_filter: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "set1_columns", tuple(self.set1_columns))
        object.__setattr__(self, "set2_columns", tuple(self.set2_columns))
        object.__setattr__(
            self, "attribute_columns", tuple((c, t) for c, t in self.attribute_columns)
        )
        object.__setattr__(self, "row_filter", tuple((c, v) for c, v in self.row_filter))
        if not self.set1_columns or not self.set2_columns:
            raise ValueError("both node-set column lists must be non-empty")
        if set(self.set1_columns) & set(self.set2_columns):
            raise ValueError("set1 and set2 columns must be disjoint")
        for _, target in self.attribute_columns:
            if target not in (SET1, SET2):
                raise ValueError(f"attribute target must be 'set1' or 'set2', got {target!r}")

    def to_dict(self) -> dict:
        return {
            "set1_columns": list(self.set1_columns),
            "set2_columns": list(self.set2_columns),
            "weight_column": self.weight_column,
            "attribute_columns": [list(pair) for pair in self.attribute_columns],
            "allow_self_pairs": self.allow_self_pairs,
            "row_filter": [list(pair) for pair in self.row_filter],
        }

    @classmethod
    def from_dict(cls, obj: Mapping) -> "HinSpec":
        try:
            return cls(
                set1_columns=tuple(obj["set1_columns"]),
                set2_columns=tuple(obj["set2_columns"]),
                weight_column=obj.get("weight_column"),
                attribute_columns=tuple(
                    (str(c), str(t)) for c, t in obj.get("attribute_columns", ())
                ),
                allow_self_pairs=bool(obj.get("allow_self_pairs", False)),
                row_filter=tuple((str(c), str(v)) for c, v in obj.get("row_filter", ())),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed build spec: {exc}") from exc


@dataclass(frozen=True)
class IngestReport:
    """Counts describing one ingestion run, consistent with its Hin."""

    rows_total: int
    rows_after_filter: int
    rows_rejected: int
    rows_kept: int
    self_pairs_dropped: int
    n1: int
    n2: int
    total_weight: int
    diagnostics: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "rows_total": self.rows_total,
            "rows_after_filter": self.rows_after_filter,
            "rows_rejected": self.rows_rejected,
            "rows_kept": self.rows_kept,
            "self_pairs_dropped": self.self_pairs_dropped,
            "n1": self.n1,
            "n2": self.n2,
            "total_weight": self.total_weight,
            "diagnostics": list(self.diagnostics),
        }


def _parse_weight_cell(cell: str, column: str, row_no: int) -> int:
    text = cell.strip()
    try:
        value = int(text)
    except ValueError:
        raise NonIntegerWeightCell(
            f"row {row_no}: weight column {column!r} cell {cell!r} is not an integer"
        ) from None
    if value < 1:
        raise NonIntegerWeightCell(
            f"row {row_no}: weight column {column!r} cell {cell!r} must be >= 1"
        )
    return value


def _run_pipeline(table: Table, spec: HinSpec, name: str) -> tuple[Hin, IngestReport]:
    col_idx = {}
    needed = list(spec.set1_columns) + list(spec.set2_columns)
    if spec.weight_column is not None:
        needed.append(spec.weight_column)
    needed.extend(col for col, _ in spec.attribute_columns)
    needed.extend(col for col, _ in spec.row_filter)
    for col in needed:
        col_idx[col] = table.column_index(col)

    rows_total = len(table.rows)
    filtered = []
    for row_no, row in enumerate(table.rows, start=1):
        if all(row[col_idx[col]] == value for col, value in spec.row_filter):
            filtered.append((row_no, row))
    if not filtered:
        raise EmptyAfterFilter(f"row filter removed all {rows_total} rows")

    idx1 = [col_idx[c] for c in spec.set1_columns]
    idx2 = [col_idx[c] for c in spec.set2_columns]

    weights: dict[tuple[tuple[str, ...], tuple[str, ...]], int] = {}
    attr_values: dict[tuple[str, tuple[str, ...], str], str] = {}
    diagnostics: list[str] = []
    rejected = 0
    dropped_self = 0
    kept = 0

    for row_no, row in filtered:
        parts1 = tuple(row[k] for k in idx1)
        parts2 = tuple(row[k] for k in idx2)
        empty_cols = [
            spec.set1_columns[pos] for pos, part in enumerate(parts1) if part == ""
        ] + [spec.set2_columns[pos] for pos, part in enumerate(parts2) if part == ""]
        if empty_cols:
            rejected += 1
            diagnostics.append(f"row {row_no}: empty cell in node column(s) {empty_cols}")
            continue
        if parts1 == parts2 and not spec.allow_self_pairs:
            dropped_self += 1
            continue
        if spec.weight_column is None:
            w = 1
        else:
            w = _parse_weight_cell(row[col_idx[spec.weight_column]], spec.weight_column, row_no)
        kept += 1
        key = (parts1, parts2)
        weights[key] = weights.get(key, 0) + w
        for col, target in spec.attribute_columns:
            value = row[col_idx[col]]
            node_parts = parts1 if target == SET1 else parts2
            attr_key = (target, node_parts, col)
            previous = attr_values.get(attr_key)
            if previous is None:
                attr_values[attr_key] = value
            elif previous != value:
                raise InconsistentAttribute(
                    f"row {row_no}: node {node_parts!r} has conflicting "
                    f"{col!r} values {previous!r} and {value!r}"
                )

    if not weights:
        raise EmptyAfterFilter(
            f"no interactions left ({rejected} rejected rows, {dropped_self} self-pairs dropped)"
        )

    labels1 = sorted({p1 for p1, _ in weights})
    labels2 = sorted({p2 for _, p2 in weights})
    attrs1 = [
        {col: attr_values[(SET1, parts, col)]
         for col, target in spec.attribute_columns
         if target == SET1 and (SET1, parts, col) in attr_values}
        for parts in labels1
    ]
    attrs2 = [
        {col: attr_values[(SET2, parts, col)]
         for col, target in spec.attribute_columns
         if target == SET2 and (SET2, parts, col) in attr_values}
        for parts in labels2
    ]

    hin = build_hin(
        [NodeLabel(p) for p in labels1],
        [NodeLabel(p) for p in labels2],
        [(p1, p2, w) for (p1, p2), w in sorted(weights.items())],
        set1_attrs=attrs1,
        set2_attrs=attrs2,
        meta={"name": name, "built_from": spec.to_dict()},
    )
    report = IngestReport(
        rows_total=rows_total,
        rows_after_filter=len(filtered),
        rows_rejected=rejected,
        rows_kept=kept,
        self_pairs_dropped=dropped_self,
        n1=hin.n1,
        n2=hin.n2,
        total_weight=hin.total_weight,
        diagnostics=tuple(diagnostics),
    )
    return hin, report


def ingest(table: Table, spec: HinSpec, *, name: str = "hin") -> Hin:
    """Build the graph described by ``spec`` from ``table``."""
    hin, _ = _run_pipeline(table, spec, name)
    return hin


def ingest_report(table: Table, spec: HinSpec, *, name: str = "hin") -> IngestReport:
    """Run the same pipeline as :func:`ingest` and return its counts."""
    _, report = _run_pipeline(table, spec, name)
    return report


def ingest_with_report(table: Table, spec: HinSpec, *, name: str = "hin") -> tuple[Hin, IngestReport]:
    return _run_pipeline(table, spec, name)
