from __future__ import annotations

import jsonschema
import pytest

from dcnet import errors, search
from dcnet.metric import gen_powerset_network, inheritance_distance
from dcnet.network import classify, networks_equal, trivial_clusters
from dcnet.schemas import BEST_TREE_SCHEMA
from dcnet.search import (
    best_fitting_cps_tree,
    best_fitting_in_class,
    enumerate_cps_candidates,
    nontrivial_clusters,
)
from dcnet.simplify import canonical_cps, transitive_reduction

from golden import TABLE_DISTANCES, TABLE_MINIMIZERS, TABLE_NAMES, TABLE_NOT_TREE
from helpers import load, random_dcs


@pytest.fixture(scope="module")
def fig1_report():
    return best_fitting_cps_tree(load("fig1"), workers=1)


class TestFig1Trees:
    def test_candidates_and_distances(self, fig1_report):
        r = fig1_report
        assert [r.name(c) for c in r.evaluated] == TABLE_NAMES
        assert [c.distance for c in r.evaluated] == TABLE_DISTANCES

    def test_non_tree_flags(self, fig1_report):
        r = fig1_report
        assert {r.name(c) for c in r.evaluated if not c.eligible} == TABLE_NOT_TREE

    def test_minimizers(self, fig1_report):
        r = fig1_report
        assert {r.name(c) for c in r.minimizers} == TABLE_MINIMIZERS
        assert r.min_distance == 13
        named = {r.name(c): c.network for c in r.minimizers}
        assert networks_equal(named["N(5,8)"], load("t1"))
        assert networks_equal(named["N(6,8)"], load("t2"))

    def test_table_text(self, fig1_report):
        lines = fig1_report.table().splitlines()
        assert lines[0].split() == ["CPS", "D(N,N')"]
        rows = [ln.split(None, 2) for ln in lines[1:12]]
        assert [row[0] for row in rows] == TABLE_NAMES
        assert [int(row[1]) for row in rows] == TABLE_DISTANCES
        assert {row[0] for row in rows if len(row) == 3 and row[2] == "not a tree"} == TABLE_NOT_TREE
        assert lines[-1] == "best: N(5,8), N(6,8) at distance 13"

    def test_json_schema(self, fig1_report):
        doc = fig1_report.to_json()
        jsonschema.validate(doc, BEST_TREE_SCHEMA)
        assert doc["min_distance"] == "13"


class TestClasses:
    def test_any_keeps_everything(self):
        net = load("fig1")
        r = best_fitting_in_class(net, "any", workers=1)
        assert r.min_distance == 1
        (best,) = r.minimizers
        assert networks_equal(best.network, transitive_reduction(net))

    def test_tree_child_and_normal(self):
        net = load("fig1")
        for cls, attr in (("tree_child", "is_tree_child"), ("normal", "is_normal")):
            r = best_fitting_in_class(net, cls, workers=1)
            assert all(getattr(c.flags, attr) for c in r.minimizers)
            assert r.min_distance == min(c.distance for c in r.evaluated if getattr(c.flags, attr))

    def test_unknown_class(self):
        with pytest.raises(ValueError):
            best_fitting_in_class(load("fig1"), "galled")

    def test_tree_search_cap(self):
        net = load("fig2")
        r = best_fitting_cps_tree(net, workers=1)
        assert max(len(c.keep) for c in r.evaluated) <= net.n - 2
        r = best_fitting_in_class(net, "tree", max_nontrivial=1, workers=1)
        assert max(len(c.keep) for c in r.evaluated) == 1


class TestEnumeration:
    def test_counts(self):
        net = load("fig1")
        assert len(list(enumerate_cps_candidates(net))) == 2 ** 4
        assert len(list(enumerate_cps_candidates(net, max_nontrivial=1))) == 5

    def test_candidates_are_canonical(self):
        for net in random_dcs(20, seed=81):
            for w, cand in enumerate_cps_candidates(net):
                assert cand.cluster_set == trivial_clusters(net.n) | w

    def test_brute_minimum(self):
        for net in random_dcs(30, seed=82):
            r = best_fitting_in_class(net, "any", workers=1)
            brute = min(inheritance_distance(net, c) for _, c in enumerate_cps_candidates(net))
            assert r.min_distance == brute


class TestGuards:
    def test_too_many_clusters(self):
        net = gen_powerset_network(5)
        assert len(nontrivial_clusters(net)) == 25
        with pytest.raises(errors.SearchTooLarge):
            best_fitting_cps_tree(net)

    def test_force_runs(self):
        net = gen_powerset_network(5)
        r = best_fitting_cps_tree(net, max_nontrivial=1, force=True, workers=1)
        assert all(classify(c.network).is_tree for c in r.minimizers)

    def test_parallel_matches_serial(self, monkeypatch):
        net = load("fig2")
        serial = best_fitting_in_class(net, "any", workers=1)
        monkeypatch.setattr(search, "PARALLEL_THRESHOLD", 1)
        parallel = best_fitting_in_class(net, "any", workers=2)
        assert [c.keep for c in parallel.evaluated] == [c.keep for c in serial.evaluated]
        assert [c.distance for c in parallel.evaluated] == [c.distance for c in serial.evaluated]

    def test_thread_env(self, monkeypatch):
        monkeypatch.setenv("DCNET_THREADS", "3")
        assert search.default_workers() == 3
        monkeypatch.delenv("DCNET_THREADS")
        assert search.default_workers() >= 1


def test_empty_keep_is_trivial_tree():
    net = load("fig1")
    cand = canonical_cps(net, trivial_clusters(net.n))
    assert classify(cand).is_tree and len(cand) == net.n + 1
