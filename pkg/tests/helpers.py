"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's own code paths: the
description-length oracle works on exact big-integer binomials, the
quantile oracle on a cumulative sum of scipy pmf terms, and NMI is written
out longhand.
"""

from __future__ import annotations

import math
from collections import Counter
from math import comb

import numpy as np
from scipy.stats import binom

import hinet


def random_hin(rng, n1_max=50, n2_max=50, w_max=500, isolated_prob=0.2):
    """Random bipartite graph with occasional isolated focal nodes."""
    n1 = int(rng.integers(1, n1_max + 1))
    n2 = int(rng.integers(1, n2_max + 1))
    set1 = [f"s{i}" for i in range(n1)]
    set2 = [f"t{j}" for j in range(n2)]
    active = list(range(n1))
    if n1 > 1 and rng.random() < isolated_prob:
        keep = int(rng.integers(1, n1))
        active = sorted(rng.choice(n1, size=keep, replace=False).tolist())
    cells = [(i, j) for i in active for j in range(n2)]
    n_edges = int(rng.integers(1, min(len(cells), w_max) + 1))
    chosen = rng.choice(len(cells), size=n_edges, replace=False)
    budget = int(rng.integers(n_edges, w_max + 1))
    extra = rng.multinomial(budget - n_edges, np.full(n_edges, 1.0 / n_edges))
    pairs = []
    for pick, add in zip(chosen, extra):
        i, j = cells[int(pick)]
        pairs.append((set1[i], set2[j], 1 + int(add)))
    return hinet.build_hin(set1, set2, pairs)


def random_partition(rng, n1):
    labels = rng.integers(0, int(rng.integers(1, n1 + 1)), size=n1)
    return hinet.Partition.from_labels(labels.tolist())


def log2_bigint(n: int) -> float:
    bits = n.bit_length()
    if bits <= 53:
        return math.log2(n)
    shift = bits - 53
    return math.log2(n >> shift) + shift


def description_length_bigint(hin, labels) -> float:
    """Exact big-integer evaluation of the coding cost, in bits."""
    labels = list(labels)
    n1, n2, total = hin.n1, hin.n2, hin.total_weight
    b = max(labels) + 1
    sizes = [0] * b
    for lbl in labels:
        sizes[lbl] += 1
    wcn = [[0] * n2 for _ in range(b)]
    for (i, j), w in hin.edges.items():
        wcn[labels[i]][j] += w

    bits = math.log2(n1)
    bits += log2_bigint(comb(n1 - 1, b - 1))
    multinomial = math.factorial(n1)
    for size in sizes:
        multinomial //= math.factorial(size)
    bits += log2_bigint(multinomial)
    bits += log2_bigint(comb(b * n2 + total - 1, total))
    for r in range(b):
        for j in range(n2):
            w = wcn[r][j]
            bits += log2_bigint(comb(sizes[r] + w - 1, w))
    return bits


def quantile_bruteforce(n: int, rho: float, p: float) -> int:
    """Smallest k with the cumulative pmf sum reaching p."""
    ks = np.arange(n + 1)
    cdf = np.cumsum(binom.pmf(ks, n, rho))
    idx = int(np.searchsorted(cdf, p, side="left"))
    return min(idx, n)


def nmi(a, b) -> float:
    """Normalized mutual information between two label vectors."""
    a = list(a)
    b = list(b)
    n = len(a)
    ca, cb, cab = Counter(a), Counter(b), Counter(zip(a, b))
    ha = -sum(c / n * math.log(c / n) for c in ca.values())
    hb = -sum(c / n * math.log(c / n) for c in cb.values())
    if ha == 0.0 and hb == 0.0:
        return 1.0
    mi = sum(
        c / n * math.log((c / n) / ((ca[x] / n) * (cb[y] / n))) for (x, y), c in cab.items()
    )
    return 2.0 * mi / (ha + hb)


def planted_hin(rng=None, blocks=2, per_block=10, targets_per_block=5, in_weight=5, noise_prob=0.0):
    """Block-structured graph: each block talks to its own exclusive targets."""
    n1 = blocks * per_block
    set1 = [f"s{i:02d}" for i in range(n1)]
    set2 = [f"t{j:02d}" for j in range(blocks * targets_per_block)]
    pairs = []
    for i in range(n1):
        grp = i // per_block
        for j in range(grp * targets_per_block, (grp + 1) * targets_per_block):
            pairs.append((set1[i], set2[j], in_weight))
        if noise_prob > 0.0 and rng is not None:
            for j in range(len(set2)):
                if j // targets_per_block != grp and rng.random() < noise_prob:
                    pairs.append((set1[i], set2[j], 1))
    truth = [i // per_block for i in range(n1)]
    return hinet.build_hin(set1, set2, pairs), truth
