"""Nonparametric clustering of the focal node set by description length.

A partition of the focal (Set1) nodes is scored by the number of bits
needed to transmit the graph when edge weights are coarse-grained through
the partition: first the group labels, then the per-group weight totals
toward each target node, then the exact weights given those totals. All
counting terms are logarithms of binomial/multinomial coefficients; the
optimal partition needs no preset group count because extra groups must pay
for themselves in compression.

Search is agglomerative: start from singletons, repeatedly commit the merge
with the lowest description-length change (smallest increase if none
decreases it), record the value at every group count, and return the best
recorded level. An exhaustive enumerator over all set partitions is
provided as a small-instance oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.special import gammaln

from .errors import (
    EmptyHin,
    InvalidPartition,
    NotBipartiteProjection,
    TooLarge,
    UnknownCluster,
)
from .model import Hin, NodeLabel, build_hin
from .pruning import NullModelSpec, PruneResult, prune

_LN2 = math.log(2.0)


def canonical_labels(raw: Iterable) -> tuple[int, ...]:
    """Relabel arbitrary group ids to dense ints by first occurrence."""
    mapping: dict = {}
    out = []
    for value in raw:
        if value not in mapping:
            mapping[value] = len(mapping)
        out.append(mapping[value])
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """Dense group labels over the focal set; ids run 0..B-1, all non-empty."""

    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if not self.labels:
            raise InvalidPartition("partition over an empty node set")
        b = max(self.labels) + 1
        counts = [0] * b
        for lbl in self.labels:
            if lbl < 0:
                raise InvalidPartition(f"negative group id {lbl}")
            counts[lbl] += 1
        if any(c == 0 for c in counts):
            raise InvalidPartition("group ids must be dense 0..B-1 with no empty group")
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_sizes", tuple(counts))

    @classmethod
    def from_labels(cls, raw: Iterable) -> "Partition":
        return cls(canonical_labels(raw))

    @property
    def b(self) -> int:
        return self._b

    @property
    def group_sizes(self) -> tuple[int, ...]:
        return self._sizes

    def members(self, group: int) -> tuple[int, ...]:
        if not 0 <= group < self.b:
            raise UnknownCluster(f"no cluster {group} in a {self.b}-group partition")
        return tuple(i for i, lbl in enumerate(self.labels) if lbl == group)


def block_weights(hin: Hin, partition: Partition) -> np.ndarray:
    """Total edge weight from each group to each target node (B x N2)."""
    _check_partition(hin, partition)
    w = np.zeros((partition.b, hin.n2), dtype=np.int64)
    for (i, j), weight in hin.edges.items():
        w[partition.labels[i], j] += weight
    return w


def _check_partition(hin: Hin, partition: Partition) -> None:
    if len(partition.labels) != hin.n1:
        raise InvalidPartition(
            f"partition covers {len(partition.labels)} nodes, graph has {hin.n1}"
        )


class _DLContext:
    """Log-gamma lookup table over the integer range one graph can need."""

    def __init__(self, hin: Hin):
        self.n1 = hin.n1
        self.n2 = hin.n2
        self.total = hin.total_weight
        edge_items = sorted(hin.edges.items())
        self.edge_i = np.array([i for (i, _), _ in edge_items], dtype=np.int64)
        self.edge_j = np.array([j for (_, j), _ in edge_items], dtype=np.int64)
        self.edge_w = np.array([w for _, w in edge_items], dtype=np.int64)
        top = max(self.n1 * self.n2 + self.total, self.n1 + self.total) + 2
        self.lg = gammaln(np.arange(top, dtype=np.float64))

    def log2_choose(self, a, b):
        return (self.lg[a + 1] - self.lg[b + 1] - self.lg[a - b + 1]) / _LN2

    def rows_for(self, labels: np.ndarray, b: int) -> np.ndarray:
        w = np.zeros((b, self.n2), dtype=np.int64)
        np.add.at(w, (labels[self.edge_i], self.edge_j), self.edge_w)
        return w

    def chunk_bits(self, size: int, row: np.ndarray) -> float:
        """Bits to place a group's weight row among its ``size`` members."""
        return float(
            (self.lg[row + size] - self.lg[row + 1]).sum() - self.n2 * self.lg[size]
        ) / _LN2

    def dl(self, labels: np.ndarray) -> float:
        b = int(labels.max()) + 1
        sizes = np.bincount(labels, minlength=b)
        rows = self.rows_for(labels, b)
        bits = math.log2(self.n1)
        bits += float(self.log2_choose(self.n1 - 1, b - 1))
        bits += float(self.lg[self.n1 + 1] - self.lg[sizes + 1].sum()) / _LN2
        bits += float(self.log2_choose(b * self.n2 + self.total - 1, self.total))
        sz = sizes[:, None]
        bits += float((self.lg[rows + sz] - self.lg[rows + 1] - self.lg[sz]).sum()) / _LN2
        return bits

    def shared_merge_delta(self, b: int) -> float:
        """Description-length change common to every candidate merge at B=b."""
        d = self.log2_choose(self.n1 - 1, b - 2) - self.log2_choose(self.n1 - 1, b - 1)
        d += self.log2_choose((b - 1) * self.n2 + self.total - 1, self.total)
        d -= self.log2_choose(b * self.n2 + self.total - 1, self.total)
        return float(d)


def description_length(hin: Hin, partition: Partition | Sequence[int]) -> float:
    """Bits to transmit the graph using the given focal-set partition."""
    if not isinstance(partition, Partition):
        partition = Partition(tuple(partition))
    _check_partition(hin, partition)
    ctx = _DLContext(hin)
    return ctx.dl(np.asarray(partition.labels, dtype=np.int64))


@dataclass(frozen=True)
class MergeStep:
    step: int
    merged: tuple[int, int]  # lowest member index on each side
    delta_dl: float


@dataclass(frozen=True)
class ClusterResult:
    best_partition: Partition
    best_dl: float
    dl_trace: tuple[tuple[int, float], ...]
    merge_log: tuple[MergeStep, ...]

    def to_json_dict(self) -> dict:
        return {
            "labels": list(self.best_partition.labels),
            "B": self.best_partition.b,
            "dl_bits": self.best_dl,
            "trace": [[b, dl] for b, dl in self.dl_trace],
        }


def _replay_labels(n1: int, merge_log: Sequence[MergeStep], steps: int) -> tuple[int, ...]:
    parent = list(range(n1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for entry in merge_log[:steps]:
        a, b = entry.merged
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return canonical_labels(find(i) for i in range(n1))


def partition_at(n1: int, merge_log: Sequence[MergeStep], b: int) -> Partition:
    """Partition reached by replaying the first ``n1 - b`` merges."""
    if not 1 <= b <= n1:
        raise InvalidPartition(f"cannot replay to B={b} with {n1} nodes")
    return Partition(_replay_labels(n1, merge_log, n1 - b))


def _pick_best(trace: Sequence[tuple[int, float]]) -> tuple[int, float]:
    best_b, best_dl = trace[0]
    for b, dl in trace[1:]:
        if dl < best_dl or (dl == best_dl and b < best_b):
            best_b, best_dl = b, dl
    return best_b, best_dl


def _greedy_once(ctx: _DLContext, rank: np.ndarray) -> ClusterResult:
    n1, n2 = ctx.n1, ctx.n2
    ident = np.arange(n1, dtype=np.int64)
    dl = ctx.dl(ident)
    trace = [(n1, dl)]
    merge_log: list[MergeStep] = []

    if n1 == 1:
        return ClusterResult(Partition((0,)), dl, tuple(trace), ())

    rows = {i: np.zeros(n2, dtype=np.int64) for i in range(n1)}
    for k in range(len(ctx.edge_w)):
        rows[int(ctx.edge_i[k])][int(ctx.edge_j[k])] += int(ctx.edge_w[k])
    sizes = {i: 1 for i in range(n1)}
    min_node = {i: i for i in range(n1)}
    tiebreak = {i: int(rank[i]) for i in range(n1)}
    chunk = {i: ctx.chunk_bits(1, rows[i]) for i in range(n1)}

    def pair_specific(a: int, b: int) -> float:
        na, nb = sizes[a], sizes[b]
        merged_chunk = ctx.chunk_bits(na + nb, rows[a] + rows[b])
        split_cost = float(ctx.lg[na + nb + 1] - ctx.lg[na + 1] - ctx.lg[nb + 1]) / _LN2
        return merged_chunk - chunk[a] - chunk[b] - split_cost

    alive = list(range(n1))
    pairspec: dict[tuple[int, int], float] = {}
    for ai in range(n1):
        for bi in range(ai + 1, n1):
            pairspec[(ai, bi)] = pair_specific(ai, bi)

    next_id = n1
    b_now = n1
    step = 0
    while b_now > 1:
        shared = ctx.shared_merge_delta(b_now)
        best_key = None
        best_rank = None
        for (a, b), val in pairspec.items():
            lo, hi = tiebreak[a], tiebreak[b]
            if lo > hi:
                lo, hi = hi, lo
            candidate = (val, lo, hi)
            if best_rank is None or candidate < best_rank:
                best_rank = candidate
                best_key = (a, b)
        a, b = best_key
        delta = shared + best_rank[0]
        merged_pair = (min(min_node[a], min_node[b]), max(min_node[a], min_node[b]))
        merge_log.append(MergeStep(step=step, merged=merged_pair, delta_dl=delta))

        u = next_id
        next_id += 1
        rows[u] = rows[a] + rows[b]
        sizes[u] = sizes[a] + sizes[b]
        min_node[u] = merged_pair[0]
        tiebreak[u] = min(tiebreak[a], tiebreak[b])
        chunk[u] = ctx.chunk_bits(sizes[u], rows[u])
        for gone in (a, b):
            del rows[gone], sizes[gone], min_node[gone], tiebreak[gone], chunk[gone]
        alive = [c for c in alive if c != a and c != b]
        for key in [k for k in pairspec if a in k or b in k]:
            del pairspec[key]
        for c in alive:
            pairspec[(c, u)] = pair_specific(c, u)
        alive.append(u)

        dl += delta
        b_now -= 1
        step += 1
        trace.append((b_now, dl))

    best_b, best_dl = _pick_best(trace)
    best = partition_at(n1, merge_log, best_b)
    return ClusterResult(best, best_dl, tuple(trace), tuple(merge_log))


def cluster(hin: Hin, seed: int | None = None, restarts: int = 1) -> ClusterResult:
    """Greedy agglomerative search for the minimum-description-length partition.

    Deterministic with ``restarts=1``: candidates are scored for every
    unordered cluster pair and ties break on the lowest member indices.
    Extra restarts shuffle the tie-breaking order (seeded) and keep the best
    result found.
    """
    if hin.n1 < 1:
        raise EmptyHin("clustering needs at least one focal node")
    ctx = _DLContext(hin)
    identity = np.arange(hin.n1, dtype=np.int64)
    result = _greedy_once(ctx, identity)
    if restarts > 1:
        rng = np.random.default_rng(seed)
        for _ in range(restarts - 1):
            perm = rng.permutation(hin.n1)
            rank = np.empty(hin.n1, dtype=np.int64)
            rank[perm] = np.arange(hin.n1)
            candidate = _greedy_once(ctx, rank)
            if candidate.best_dl < result.best_dl - 1e-9 or (
                abs(candidate.best_dl - result.best_dl) <= 1e-9
                and candidate.best_partition.b < result.best_partition.b
            ):
                result = candidate
    return result


def _set_partition_labels(n: int):
    """Yield every restricted-growth string over n items in lex order."""
    a = [0] * n
    m = [0] * n  # m[k] = max(a[:k]) for k >= 1
    while True:
        yield a
        k = n - 1
        while k > 0 and a[k] > m[k]:
            k -= 1
        if k == 0:
            return
        a[k] += 1
        mk = m[k] if m[k] >= a[k] else a[k]
        for i in range(k + 1, n):
            a[i] = 0
            m[i] = mk


def exhaustive_cluster(hin: Hin, max_n1: int = 10) -> ClusterResult:
    """Global optimum by enumerating all set partitions of the focal set.

    Intended as a correctness oracle for small instances; refuses graphs
    with more than ``max_n1`` focal nodes. Ties resolve to the smallest
    group count, then the lexicographically smallest label vector.
    """
    if hin.n1 > max_n1:
        raise TooLarge(f"{hin.n1} focal nodes exceeds the enumeration cap {max_n1}")
    ctx = _DLContext(hin)
    best_labels: tuple[int, ...] | None = None
    best_dl = math.inf
    best_b = hin.n1 + 1
    per_b: dict[int, float] = {}
    for labels in _set_partition_labels(hin.n1):
        arr = np.asarray(labels, dtype=np.int64)
        b = int(arr.max()) + 1
        dl = ctx.dl(arr)
        if dl < per_b.get(b, math.inf):
            per_b[b] = dl
        if dl < best_dl or (
            dl == best_dl and (b < best_b or (b == best_b and tuple(labels) < best_labels))
        ):
            best_dl = dl
            best_b = b
            best_labels = tuple(labels)
    trace = tuple((b, per_b[b]) for b in range(hin.n1, 0, -1))
    return ClusterResult(Partition(best_labels), best_dl, trace, ())


# -- cluster projections -------------------------------------------------------


@dataclass(frozen=True)
class ProjectedNetwork:
    """Per-cluster aggregation of member weights onto the target set."""

    cluster_id: int
    weights: Mapping[int, int]  # target index -> aggregated weight (> 0 only)
    set2_labels: tuple[NodeLabel, ...]
    members: tuple[int, ...]

    def rows(self) -> list[tuple[int, int]]:
        return sorted(self.weights.items())

    def split_rows(self) -> list[tuple[str, str, int]]:
        """(first part, remaining parts, weight) triples for composite targets."""
        out = []
        for j, w in self.rows():
            parts = self.set2_labels[j].parts
            if len(parts) < 2:
                raise NotBipartiteProjection(
                    f"target {self.set2_labels[j].display()!r} is not composite"
                )
            out.append((parts[0], " **".join(parts[1:]), w))
        return out


def project_cluster(hin: Hin, partition: Partition, cluster_id: int) -> ProjectedNetwork:
    """Aggregate the edges of one cluster's members onto the target set."""
    _check_partition(hin, partition)
    if not 0 <= cluster_id < partition.b:
        raise UnknownCluster(f"no cluster {cluster_id} in a {partition.b}-group partition")
    members = partition.members(cluster_id)
    member_set = set(members)
    weights: dict[int, int] = {}
    for (i, j), w in hin.edges.items():
        if i in member_set:
            weights[j] = weights.get(j, 0) + w
    return ProjectedNetwork(
        cluster_id=cluster_id,
        weights=weights,
        set2_labels=hin.set2_labels,
        members=members,
    )


def projection_to_hin(projection: ProjectedNetwork, *, name: str | None = None) -> Hin:
    """Re-express a projection as a graph in the canonical format.

    Composite targets split into (first part) x (remaining parts) so the
    projection becomes its own bipartite graph; simple targets hang off a
    single pseudo-node for the cluster.
    """
    rows = projection.rows()
    label = name or f"cluster-{projection.cluster_id}-projection"
    if rows and all(len(projection.set2_labels[j].parts) >= 2 for j, _ in rows):
        pairs = []
        for j, w in rows:
            parts = projection.set2_labels[j].parts
            pairs.append((NodeLabel((parts[0],)), NodeLabel(parts[1:]), w))
        set1 = sorted({p1.parts for p1, _, _ in pairs})
        set2 = sorted({p2.parts for _, p2, _ in pairs})
        return build_hin(
            [NodeLabel(p) for p in set1],
            [NodeLabel(p) for p in set2],
            pairs,
            meta={"name": label, "built_from": {"cluster": projection.cluster_id}},
        )
    cluster_label = NodeLabel((f"cluster:{projection.cluster_id}",))
    return build_hin(
        [cluster_label],
        list(projection.set2_labels),
        [(cluster_label, projection.set2_labels[j], w) for j, w in rows],
        meta={"name": label, "built_from": {"cluster": projection.cluster_id}},
    )


def prune_projection(
    projection: ProjectedNetwork, spec: NullModelSpec, *, bonferroni: bool = False
) -> PruneResult:
    """Significance-prune a cluster projection's (code x partner) graph.

    Requires composite targets: the projection must itself form a bipartite
    graph between the first label part and the rest.
    """
    rows = projection.rows()
    if not rows:
        raise EmptyHin(f"cluster {projection.cluster_id} projects to no edges")
    for j, _ in rows:
        if len(projection.set2_labels[j].parts) < 2:
            raise NotBipartiteProjection(
                f"target {projection.set2_labels[j].display()!r} has a single part; "
                "projection pruning needs composite targets"
            )
    return prune(projection_to_hin(projection), spec, bonferroni=bonferroni)
