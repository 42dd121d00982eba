"""Acceptance suite: one test per release criterion, at pinned tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL line
per criterion. Everything here checks the library against independent
oracles (exact big-integer arithmetic, scipy pmf summation, exhaustive
enumeration, Monte Carlo simulation) on seeded random fixtures.
"""

from __future__ import annotations

import contextlib
import csv
import hashlib
import io
import json
import math
import time

import numpy as np
import pytest
from scipy.stats import binom

import hinet
from hinet import cli
from tests.fixtures import PLANTED_LABELS, STUDENTS, case_study_csv
from tests.helpers import (
    description_length_bigint,
    nmi,
    planted_hin,
    quantile_bruteforce,
    random_hin,
    random_partition,
)


@contextlib.contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"[acceptance] {name}: FAIL")
        raise
    print(f"[acceptance] {name}: PASS")


@pytest.fixture(scope="module")
def fixture_hins():
    rng = np.random.default_rng(20260809)
    return [random_hin(rng, n1_max=50, n2_max=50, w_max=500) for _ in range(1000)]


def test_c1_metric_exactness(fixture_hins):
    with criterion("C1 metric exactness on 1000 random graphs"):
        start = time.perf_counter()
        for h in fixture_hins:
            rows = hinet.metrics_table(h)
            assert abs(sum(r.quantity for r in rows) - 1.0) <= 1e-9
            per_node: dict[int, list[int]] = {}
            for (i, _), w in h.edges.items():
                per_node.setdefault(i, []).append(w)
            for r in rows:
                assert 0.0 <= r.diversity <= 1.0
                # independent base-2 evaluation must match the natural-log path
                if r.strength > 0 and h.n2 > 1:
                    weights = per_node.get(r.index, [])
                    base2 = -sum(
                        w / r.strength * math.log2(w / r.strength) for w in weights
                    ) / math.log2(h.n2)
                    assert abs(r.diversity - base2) <= 1e-9
        elapsed = time.perf_counter() - start
        assert elapsed < 10.0, f"took {elapsed:.1f}s"


def test_c2_group_reduction(fixture_hins):
    with criterion("C2 whole-set group quantity reduces to plain quantity"):
        for h in fixture_hins:
            everyone = range(h.n1)
            for i in range(h.n1):
                assert (
                    abs(hinet.quantity_group(h, i, everyone) - hinet.quantity(h, i))
                    <= 1e-12
                )


def test_c3_pruning_calibration():
    with criterion("C3 Monte Carlo calibration of all null models"):
        start = time.perf_counter()
        h = hinet.build_hin(
            [f"a{i}" for i in range(5)],
            [f"b{j}" for j in range(5)],
            [(f"a{i}", f"b{j}", 2000) for i in range(5) for j in range(5)],
        )
        draws = 10_000
        for fix in (hinet.FixDeg.NONE, hinet.FixDeg.SET1, hinet.FixDeg.SET2):
            for alpha in (0.01, 0.05, 0.10):
                rep = hinet.null_simulation(
                    h, hinet.NullModelSpec(fix, alpha), draws=draws, seed=1729
                )
                bound = alpha + 3.0 * math.sqrt(alpha / draws)
                assert rep.exceedance_ge <= bound, (
                    f"{fix.value} alpha={alpha}: {rep.exceedance_ge:.5f} > {bound:.5f}"
                )
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"took {elapsed:.1f}s"


def test_c4_quantile_oracle():
    with criterion("C4 binomial quantile vs brute-force pmf summation (10k triples)"):
        rng = np.random.default_rng(424242)
        for _ in range(10_000):
            n = int(rng.integers(1, 10_001))
            rho = float(rng.uniform(1e-4, 1.0 - 1e-4))
            p = float(rng.uniform(1e-4, 1.0 - 1e-4))
            assert hinet.binomial_quantile(n, rho, p) == quantile_bruteforce(n, rho, p)


def test_c5_nestedness(fixture_hins):
    with criterion("C5 kept-edge nestedness across alpha levels"):
        alphas = (0.01, 0.05, 0.10)
        for h in fixture_hins:
            kept = [
                hinet.prune(h, hinet.NullModelSpec(hinet.FixDeg.NONE, a)).kept_pairs()
                for a in alphas
            ]
            assert kept[0] <= kept[1] <= kept[2]
        rng = np.random.default_rng(5)
        for h in (random_hin(rng, 15, 15, 300) for _ in range(100)):
            for fix in (hinet.FixDeg.SET1, hinet.FixDeg.SET2):
                kept = [
                    hinet.prune(h, hinet.NullModelSpec(fix, a)).kept_pairs()
                    for a in alphas
                ]
                assert kept[0] <= kept[1] <= kept[2]


def test_c6_description_length_oracle():
    with criterion("C6 description length vs exact big-integer arithmetic"):
        h = hinet.build_hin(["u", "v"], ["x", "y"], [("u", "x", 2), ("v", "y", 2)])
        assert abs(hinet.description_length(h, hinet.Partition((0, 0))) - 6.4919) <= 1e-3
        assert abs(hinet.description_length(h, hinet.Partition((0, 1))) - 7.1293) <= 1e-3
        rng = np.random.default_rng(606)
        for _ in range(500):
            g = random_hin(rng, n1_max=20, n2_max=20, w_max=200)
            p = random_partition(rng, g.n1)
            exact = description_length_bigint(g, p.labels)
            assert abs(hinet.description_length(g, p) - exact) <= 1e-6


def test_c7_exhaustive_oracle_agreement():
    with criterion("C7 greedy vs exhaustive optimum and planted recovery"):
        start = time.perf_counter()
        rng = np.random.default_rng(1234)
        matches = 0
        for _ in range(100):
            h = random_hin(rng, n1_max=8, n2_max=6, w_max=60, isolated_prob=0.0)
            greedy = hinet.cluster(h)
            exact = hinet.exhaustive_cluster(h, max_n1=8)
            assert greedy.best_dl >= exact.best_dl - 1e-9
            if abs(greedy.best_dl - exact.best_dl) <= 1e-9:
                matches += 1
        assert matches >= 90, f"greedy matched the optimum on only {matches}/100"

        noise_rng = np.random.default_rng(77)
        for _ in range(25):
            h, truth = planted_hin(
                noise_rng, blocks=2, per_block=4, targets_per_block=3,
                in_weight=5, noise_prob=0.25,
            )
            res = hinet.cluster(h)
            assert res.best_partition.b == 2
            assert nmi(res.best_partition.labels, truth) == pytest.approx(1.0)
        elapsed = time.perf_counter() - start
        assert elapsed < 120.0, f"took {elapsed:.1f}s"


def _run_case_study(workdir) -> dict[str, bytes]:
    """Full pipeline over the synthetic 27-student log; returns artifact bytes."""
    log = workdir / "log.csv"
    log.write_text(case_study_csv(), encoding="utf-8")

    def run(argv):
        assert cli.run([str(a) for a in argv]) == 0

    sp = workdir / "sp.json"
    scp = workdir / "scp.json"
    run(["build", "--input", log, "--set1", "student", "--set2", "partner",
         "--filter", "phase=w1", "--attr", "group=set1", "--name", "sp", "--out", sp])
    run(["build", "--input", log, "--set1", "student", "--set2", "code,partner",
         "--filter", "phase=w2", "--name", "scp", "--out", scp])
    run(["metrics", "--hin", sp, "--out", workdir / "metrics.csv"])
    run(["prune", "--hin", sp, "--alpha", "0.05", "--fix-deg", "set1",
         "--out", workdir / "sp-pruned.json"])
    run(["cluster", "--hin", scp, "--seed", "11", "--out", workdir / "clusters.json"])
    labels_doc = json.loads((workdir / "clusters.json").read_text())
    for r in range(labels_doc["B"]):
        run(["project", "--hin", scp, "--labels", workdir / "clusters.json",
             "--cluster", r, "--out", workdir / f"proj{r}.json"])
        run(["prune", "--hin", workdir / f"proj{r}.json", "--alpha", "0.05",
             "--fix-deg", "none", "--out", workdir / f"proj{r}-pruned.json"])
    run(["simulate-null", "--hin", sp, "--alpha", "0.05", "--fix-deg", "none",
         "--draws", "500", "--seed", "3", "--out", workdir / "calibration.json"])
    return {
        p.name: p.read_bytes()
        for p in sorted(workdir.iterdir())
        if p.suffix in (".json", ".csv") and p.name != "log.csv"
    }


def test_c8_case_study_shape(tmp_path):
    with criterion("C8 27-student case-shaped pipeline end to end"):
        start = time.perf_counter()
        artifacts = _run_case_study(tmp_path)

        rows = list(csv.DictReader(io.StringIO(artifacts["metrics.csv"].decode())))
        assert len(rows) == 27
        zero_div = [r for r in rows if float(r["diversity"]) == 0.0]
        assert len(zero_div) == 9

        clusters = json.loads(artifacts["clusters.json"])
        assert clusters["B"] == 2
        assert nmi(clusters["labels"], PLANTED_LABELS) == pytest.approx(1.0)

        for r in range(2):
            pruned = json.loads(artifacts[f"proj{r}-pruned.json"])
            assert pruned["spec"]["alpha"] == 0.05
            assert any(e["kept"] for e in pruned["edges"])

        # composite build over the full log keeps the case-study shape
        scp_all = hinet.ingest_with_report(
            hinet.read_delimited_text(case_study_csv()),
            hinet.HinSpec(("student",), ("code", "partner")),
        )[1]
        assert scp_all.n1 == 27
        assert scp_all.n2 <= 14 * 28

        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"took {elapsed:.1f}s"


def test_c9_cli_determinism(tmp_path):
    with criterion("C9 byte-identical artifacts across three seeded runs"):
        digests = []
        for k in range(3):
            run_dir = tmp_path / f"run{k}"
            run_dir.mkdir()
            artifacts = _run_case_study(run_dir)
            digest = hashlib.sha256()
            for name in sorted(artifacts):
                digest.update(name.encode())
                digest.update(artifacts[name])
            digests.append(digest.hexdigest())
        assert digests[0] == digests[1] == digests[2]
