"""Per-node engagement measures for the focal (Set1) side of a graph.

Two measures per focal node: quantity, its share of the total interaction
weight, and diversity, the normalized Shannon entropy of how its weight
spreads over the target set. Diversity runs from 0 (all weight on a single
target) to 1 (uniform over every available target) and is independent of
the logarithm base.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyGroupWeight, EmptyHin, MissingAttribute, NodeNotInGroup
from .model import Hin


@dataclass(frozen=True)
class NodeMetrics:
    """Metrics row for one focal node."""

    index: int
    label: str
    strength: int
    quantity: float
    diversity: float
    isolated: bool
    quantity_group: float | None = None
    group_id: str | None = None


def _check_index(hin: Hin, i: int) -> None:
    if not 0 <= i < hin.n1:
        raise IndexError(f"focal node index {i} out of range [0, {hin.n1})")


def quantity(hin: Hin, i: int) -> float:
    """Share of the total interaction weight carried by focal node ``i``."""
    _check_index(hin, i)
    if hin.total_weight < 1:
        raise EmptyHin("quantity needs total weight >= 1")
    return hin.set1_strengths[i] / hin.total_weight


def quantity_group(hin: Hin, i: int, group: Iterable[int]) -> float:
    """Quantity renormalized within a subgroup of focal nodes.

    Equals quantity exactly when the group is the whole focal set.
    """
    _check_index(hin, i)
    members = set(group)
    if i not in members:
        raise NodeNotInGroup(f"node {i} is not in the given group")
    for m in members:
        _check_index(hin, m)
    group_weight = sum(hin.set1_strengths[m] for m in members)
    if group_weight < 1:
        raise EmptyGroupWeight("subgroup carries no interaction weight")
    return hin.set1_strengths[i] / group_weight


def diversity(hin: Hin, i: int) -> float:
    """Normalized entropy of node ``i``'s weight distribution over targets.

    Isolated nodes (strength 0) and single-target graphs (N2 = 1) have no
    spread to measure and return 0. Zero-weight targets contribute nothing
    (0 log 0 = 0 convention).
    """
    _check_index(hin, i)
    s = hin.set1_strengths[i]
    if s == 0 or hin.n2 == 1:
        return 0.0
    entropy = 0.0
    for (ei, _), w in hin.edges.items():
        if ei == i:
            p = w / s
            entropy -= p * math.log(p)
    value = entropy / math.log(hin.n2)
    return min(1.0, max(0.0, value))


def metrics_table(hin: Hin, group_attribute: str | None = None) -> list[NodeMetrics]:
    """One metrics row per focal node, in index order.

    With ``group_attribute`` set, every focal node must carry a non-empty
    value for that attribute; quantity is additionally renormalized within
    each attribute-value group. Members of a zero-weight group get a group
    quantity of 0.
    """
    if hin.total_weight < 1:
        raise EmptyHin("metrics need total weight >= 1")

    group_ids: list[str | None] = [None] * hin.n1
    group_weights: dict[str, int] = {}
    if group_attribute is not None:
        for i in range(hin.n1):
            attrs = hin.set1_attrs[i] if hin.set1_attrs else {}
            value = attrs.get(group_attribute, "")
            if value == "":
                raise MissingAttribute(
                    f"focal node {hin.set1_labels[i].display()!r} lacks "
                    f"attribute {group_attribute!r}"
                )
            group_ids[i] = value
            group_weights[value] = group_weights.get(value, 0) + hin.set1_strengths[i]

    # single pass over edges: entropy sums per focal node
    entropy = [0.0] * hin.n1
    if hin.n2 > 1:
        for (i, _), w in hin.edges.items():
            s = hin.set1_strengths[i]
            p = w / s
            entropy[i] -= p * math.log(p)
    log_n2 = math.log(hin.n2) if hin.n2 > 1 else 1.0

    rows = []
    for i in range(hin.n1):
        s = hin.set1_strengths[i]
        q_group = None
        if group_ids[i] is not None:
            gw = group_weights[group_ids[i]]
            q_group = s / gw if gw >= 1 else 0.0
        div = 0.0 if (s == 0 or hin.n2 == 1) else min(1.0, max(0.0, entropy[i] / log_n2))
        rows.append(
            NodeMetrics(
                index=i,
                label=hin.set1_labels[i].display(),
                strength=s,
                quantity=s / hin.total_weight,
                diversity=div,
                isolated=s == 0,
                quantity_group=q_group,
                group_id=group_ids[i],
            )
        )
    return rows


CSV_COLUMNS = ("label", "group", "strength", "quantity", "quantity_group", "diversity", "isolated")


def metrics_to_csv(rows: Sequence[NodeMetrics]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r.label,
                r.group_id or "",
                r.strength,
                repr(r.quantity),
                "" if r.quantity_group is None else repr(r.quantity_group),
                repr(r.diversity),
                "true" if r.isolated else "false",
            ]
        )
    return buf.getvalue()


def metrics_to_dicts(rows: Sequence[NodeMetrics]) -> list[dict]:
    return [
        {
            "index": r.index,
            "label": r.label,
            "group": r.group_id,
            "strength": r.strength,
            "quantity": r.quantity,
            "quantity_group": r.quantity_group,
            "diversity": r.diversity,
            "isolated": r.isolated,
        }
        for r in rows
    ]
