"""Immutable weighted bipartite interaction graph.

A ``Hin`` holds two typed node sets (the focal set and the target set),
positive integer edge weights between them, and cached totals every
downstream analysis reads. Composite entities (e.g. a behaviour code paired
with a partner) are ordered label tuples in one node set.

Instances are frozen after construction: all analyses are pure functions of
a ``Hin``, so sharing across threads needs no synchronization. Do not mutate
the ``edges`` mapping or the attribute dicts of a built instance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping, Sequence, Union

from .errors import (
    DuplicateLabelInSet,
    EmptySelection,
    NonPositiveWeight,
    UnknownLabel,
)

# Separator used when rendering composite labels, e.g. "Appreciation **AI".
COMPOSITE_SEPARATOR = " **"


class NodeSet(Enum):
    SET1 = "set1"
    SET2 = "set2"


@dataclass(frozen=True)
class NodeLabel:
    """Ordered, non-empty tuple of string parts identifying one node.

    Single-part labels name simple entities; two or more parts form a
    composite entity such as (behaviour code, partner). Equality is
    element-wise and order-sensitive.
    """

    parts: tuple[str, ...]

    def __post_init__(self):
        if not isinstance(self.parts, tuple):
            object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) == 0:
            raise ValueError("label needs at least one part")
        for part in self.parts:
            if not isinstance(part, str) or part == "":
                raise ValueError(f"label parts must be non-empty strings, got {self.parts!r}")

    @property
    def is_composite(self) -> bool:
        return len(self.parts) > 1

    def display(self) -> str:
        """Human-readable form; composite parts joined with '**'."""
        return COMPOSITE_SEPARATOR.join(self.parts)

    def __str__(self) -> str:
        return self.display()


LabelLike = Union[NodeLabel, str, Sequence[str]]


def as_label(value: LabelLike) -> NodeLabel:
    """Coerce a string or part sequence into a NodeLabel."""
    if isinstance(value, NodeLabel):
        return value
    if isinstance(value, str):
        return NodeLabel((value,))
    return NodeLabel(tuple(value))


@dataclass(frozen=True)
class NodeRef:
    """Reference to one node: which set it lives in plus its dense index."""

    node_set: NodeSet
    index: int


@dataclass(frozen=True)
class Hin:
    """Weighted bipartite graph over two typed node sets.

    Invariants (enforced by the constructors in this module):
      * every stored weight is an integer >= 1; absent edges mean weight 0
      * ``total_weight`` equals the sum of all edge weights, and the per-set
        strength vectors sum to it exactly
      * labels within a set are pairwise distinct
    """

    set1_labels: tuple[NodeLabel, ...]
    set2_labels: tuple[NodeLabel, ...]
    edges: Mapping[tuple[int, int], int]
    set1_strengths: tuple[int, ...]
    set2_strengths: tuple[int, ...]
    total_weight: int
    set1_attrs: tuple[Mapping[str, str], ...] = ()
    set2_attrs: tuple[Mapping[str, str], ...] = ()
    meta: Mapping[str, object] = field(default_factory=dict)

    @property
    def n1(self) -> int:
        return len(self.set1_labels)

    @property
    def n2(self) -> int:
        return len(self.set2_labels)

    def edge_list(self) -> list[tuple[int, int, int]]:
        """Edges as (i, j, w) triples sorted by (i, j)."""
        return sorted((i, j, w) for (i, j), w in self.edges.items())

    def labels(self, node_set: NodeSet) -> tuple[NodeLabel, ...]:
        return self.set1_labels if node_set is NodeSet.SET1 else self.set2_labels

    def attributes(self, ref: NodeRef) -> Mapping[str, str]:
        attrs = self.set1_attrs if ref.node_set is NodeSet.SET1 else self.set2_attrs
        if not attrs:
            return {}
        return attrs[ref.index]

    @property
    def node_attributes(self) -> dict[NodeRef, Mapping[str, str]]:
        """Attribute view keyed by NodeRef (empty-attr nodes omitted)."""
        out: dict[NodeRef, Mapping[str, str]] = {}
        for node_set, attrs in ((NodeSet.SET1, self.set1_attrs), (NodeSet.SET2, self.set2_attrs)):
            for idx, a in enumerate(attrs):
                if a:
                    out[NodeRef(node_set, idx)] = a
        return out

    def index_of(self, node_set: NodeSet, label: LabelLike) -> int:
        """Dense index of a label within a set; raises UnknownLabel."""
        wanted = as_label(label)
        for idx, existing in enumerate(self.labels(node_set)):
            if existing == wanted:
                return idx
        raise UnknownLabel(f"{wanted.display()!r} not in {node_set.value}")


def _check_distinct(labels: Sequence[NodeLabel], set_name: str) -> None:
    seen: set[tuple[str, ...]] = set()
    for lbl in labels:
        if lbl.parts in seen:
            raise DuplicateLabelInSet(f"label {lbl.display()!r} repeated in {set_name}")
        seen.add(lbl.parts)


def _normalize_attrs(
    attrs: Sequence[Mapping[str, str]] | None, n: int
) -> tuple[dict[str, str], ...]:
    if attrs is None:
        return tuple({} for _ in range(n))
    if len(attrs) != n:
        raise ValueError(f"expected {n} attribute dicts, got {len(attrs)}")
    return tuple({str(k): str(v) for k, v in sorted(a.items())} for a in attrs)


def build_hin(
    set1_labels: Sequence[LabelLike],
    set2_labels: Sequence[LabelLike],
    weighted_pairs: Iterable[tuple[LabelLike, LabelLike, int]],
    *,
    set1_attrs: Sequence[Mapping[str, str]] | None = None,
    set2_attrs: Sequence[Mapping[str, str]] | None = None,
    meta: Mapping[str, object] | None = None,
) -> Hin:
    """Construct a Hin from declared node sets and weighted label pairs.

    Index assignment follows declaration order. Duplicate (label1, label2)
    pairs are summed into a single edge. Weights must be integers >= 1.
    """
    labels1 = tuple(as_label(x) for x in set1_labels)
    labels2 = tuple(as_label(x) for x in set2_labels)
    _check_distinct(labels1, "set1")
    _check_distinct(labels2, "set2")

    index1 = {lbl.parts: i for i, lbl in enumerate(labels1)}
    index2 = {lbl.parts: j for j, lbl in enumerate(labels2)}

    edges: dict[tuple[int, int], int] = {}
    for raw1, raw2, w in weighted_pairs:
        l1, l2 = as_label(raw1), as_label(raw2)
        if l1.parts not in index1:
            raise UnknownLabel(f"{l1.display()!r} not declared in set1")
        if l2.parts not in index2:
            raise UnknownLabel(f"{l2.display()!r} not declared in set2")
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            raise NonPositiveWeight(
                f"edge ({l1.display()!r}, {l2.display()!r}) has weight {w!r}; "
                "weights must be integers >= 1"
            )
        key = (index1[l1.parts], index2[l2.parts])
        edges[key] = edges.get(key, 0) + w

    return _assemble(
        labels1,
        labels2,
        edges,
        _normalize_attrs(set1_attrs, len(labels1)),
        _normalize_attrs(set2_attrs, len(labels2)),
        dict(meta) if meta else {},
    )


def _assemble(
    labels1: tuple[NodeLabel, ...],
    labels2: tuple[NodeLabel, ...],
    edges: dict[tuple[int, int], int],
    attrs1: tuple[dict[str, str], ...],
    attrs2: tuple[dict[str, str], ...],
    meta: dict,
) -> Hin:
    s = [0] * len(labels1)
    d = [0] * len(labels2)
    total = 0
    for (i, j), w in edges.items():
        s[i] += w
        d[j] += w
        total += w
    return Hin(
        set1_labels=labels1,
        set2_labels=labels2,
        edges=edges,
        set1_strengths=tuple(s),
        set2_strengths=tuple(d),
        total_weight=total,
        set1_attrs=attrs1,
        set2_attrs=attrs2,
        meta=meta,
    )


def subnetwork(hin: Hin, keep_set1: Callable[[int], bool] | Iterable[int]) -> Hin:
    """Restrict to a subset of focal (Set1) nodes.

    The target set stays identical so diversity normalization is unchanged;
    strengths and the total weight are recomputed over the surviving edges.
    """
    if callable(keep_set1):
        kept = [i for i in range(hin.n1) if keep_set1(i)]
    else:
        wanted = set(keep_set1)
        kept = [i for i in range(hin.n1) if i in wanted]
    if not kept:
        raise EmptySelection("subnetwork would keep no focal nodes")
    if len(kept) == hin.n1:
        return hin

    remap = {old: new for new, old in enumerate(kept)}
    edges = {
        (remap[i], j): w for (i, j), w in hin.edges.items() if i in remap
    }
    return _assemble(
        tuple(hin.set1_labels[i] for i in kept),
        hin.set2_labels,
        edges,
        tuple(dict(hin.set1_attrs[i]) for i in kept) if hin.set1_attrs else (),
        tuple(dict(a) for a in hin.set2_attrs) if hin.set2_attrs else (),
        dict(hin.meta),
    )


# -- canonical JSON graph format ---------------------------------------------
#
# {"set1":[{"parts":[...],"attrs":{...}},...],
#  "set2":[...],
#  "edges":[[i,j,w],...],          # sorted by (i, j)
#  "meta":{"name":...,"built_from":...}}
#
# The writer is canonical: attrs and meta keys sorted, no whitespace, UTF-8.
# serialize -> deserialize -> serialize is byte-identical.


def _sorted_json(value):
    if isinstance(value, dict):
        return {k: _sorted_json(value[k]) for k in sorted(value)}
    if isinstance(value, (list, tuple)):
        return [_sorted_json(v) for v in value]
    return value


def to_canonical_dict(hin: Hin) -> dict:
    def node_entries(labels, attrs):
        entries = []
        for idx, lbl in enumerate(labels):
            a = attrs[idx] if attrs else {}
            entries.append({"parts": list(lbl.parts), "attrs": _sorted_json(dict(a))})
        return entries

    return {
        "set1": node_entries(hin.set1_labels, hin.set1_attrs),
        "set2": node_entries(hin.set2_labels, hin.set2_attrs),
        "edges": [[i, j, w] for i, j, w in hin.edge_list()],
        "meta": _sorted_json(dict(hin.meta)),
    }


def to_canonical_json(hin: Hin) -> str:
    return json.dumps(to_canonical_dict(hin), ensure_ascii=False, separators=(",", ":"))


def from_canonical_dict(obj: Mapping) -> Hin:
    try:
        set1 = obj["set1"]
        set2 = obj["set2"]
        raw_edges = obj["edges"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"not a canonical graph document: missing {exc}") from exc

    labels1 = tuple(NodeLabel(tuple(e["parts"])) for e in set1)
    labels2 = tuple(NodeLabel(tuple(e["parts"])) for e in set2)
    _check_distinct(labels1, "set1")
    _check_distinct(labels2, "set2")
    attrs1 = tuple({str(k): str(v) for k, v in sorted(e.get("attrs", {}).items())} for e in set1)
    attrs2 = tuple({str(k): str(v) for k, v in sorted(e.get("attrs", {}).items())} for e in set2)

    edges: dict[tuple[int, int], int] = {}
    for entry in raw_edges:
        i, j, w = entry
        if not (0 <= i < len(labels1)) or not (0 <= j < len(labels2)):
            raise UnknownLabel(f"edge [{i},{j}] references an out-of-range node")
        if isinstance(w, bool) or not isinstance(w, int) or w < 1:
            raise NonPositiveWeight(f"edge [{i},{j}] has weight {w!r}")
        edges[(i, j)] = edges.get((i, j), 0) + w

    meta = obj.get("meta", {})
    return _assemble(labels1, labels2, edges, attrs1, attrs2, dict(meta))


def from_canonical_json(text: str) -> Hin:
    return from_canonical_dict(json.loads(text))


def write_json(hin: Hin, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_canonical_json(hin))
        fh.write("\n")


def read_json(path) -> Hin:
    with open(path, "r", encoding="utf-8") as fh:
        return from_canonical_json(fh.read())
