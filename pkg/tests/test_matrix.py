from __future__ import annotations

import math

import pytest

from dcnet.matrix import (
    adjacency_matrix,
    count_paths_oracle,
    identity,
    inheritance_matrix,
    invert_unitriangular,
    matadd,
    matmul,
    matsub,
    max_path_length,
    network_from_inheritance,
    power_sum,
    verify_inverse_identity,
)
from dcnet.metric import gen_powerset_network
from dcnet.network import networks_equal, parse_network

from golden import FIG1_A, FIG1_H
from helpers import load, random_dcs, random_nets


def in_file_order(m, net):
    return m.reordered(list(range(len(net))))


class TestFig1:
    def test_adjacency(self):
        net = load("fig1")
        assert in_file_order(adjacency_matrix(net), net) == FIG1_A

    def test_inheritance(self):
        net = load("fig1")
        h = inheritance_matrix(net)
        assert in_file_order(h, net) == FIG1_H
        assert h[net.vertex("9"), net.vertex("3")] == 3

    def test_longest_path(self):
        assert max_path_length(load("fig1")) == 3

    def test_power_sum_matches(self):
        net = load("fig1")
        assert power_sum(in_file_order(adjacency_matrix(net), net)) == FIG1_H


@pytest.fixture(scope="module")
def nets():
    return list(random_nets(80, seed=21, max_vertices=12))


class TestIdentities:
    def test_inverse(self, nets):
        assert all(verify_inverse_identity(net) for net in nets)

    def test_h_minus_i(self, nets):
        for net in nets:
            a, h = adjacency_matrix(net).rows, inheritance_matrix(net).rows
            lhs = matsub(h, identity(len(a)))
            assert lhs == matmul(a, h) == matmul(h, a)

    def test_row_and_column_decompositions(self, nets):
        for net in nets:
            h = inheritance_matrix(net)
            m = len(net)
            for u in range(m):
                for v in range(m):
                    kids = sum(h[c, v] for c in net.children[u])
                    parents = sum(h[u, p] for p in net.parents[v])
                    unit = int(u == v)
                    assert h[u, v] == unit + kids == unit + parents

    def test_unitriangular_in_topological_order(self, nets):
        for net in nets:
            rows = inheritance_matrix(net).rows
            for i, row in enumerate(rows):
                assert row[i] == 1 and not any(row[:i])

    def test_matches_path_listing(self, nets):
        for net in nets:
            h = inheritance_matrix(net)
            for u in range(len(net)):
                for v in range(len(net)):
                    assert h[u, v] == count_paths_oracle(net, u, v)


class TestReconstruction:
    def test_round_trip(self):
        for net in random_dcs(60, seed=8):
            back = network_from_inheritance(inheritance_matrix(net), net)
            assert back.arcs == net.arcs
            assert networks_equal(back, net)

    def test_inverse_helper(self):
        h = inheritance_matrix(load("fig2")).rows
        assert matmul(h, invert_unitriangular(h)) == identity(len(h))

    def test_rejects_non_unitriangular(self):
        with pytest.raises(ValueError):
            invert_unitriangular([[1, 0], [1, 1]])
        with pytest.raises(ValueError):
            invert_unitriangular([[2, 0], [0, 1]])


def test_powerset_path_counts_are_factorials():
    net = gen_powerset_network(4)
    h = inheritance_matrix(net)
    cl = net.clusters
    for u in range(len(net)):
        for v in range(len(net)):
            if cl[v] & cl[u] == cl[v]:
                assert h[u, v] == math.factorial(cl[u].bit_count() - cl[v].bit_count())
            else:
                assert h[u, v] == 0


def test_single_vertex():
    net = parse_network("taxa x\n")
    assert inheritance_matrix(net).rows == ((1,),)
    assert adjacency_matrix(net).rows == ((0,),)
    assert max_path_length(net) == 0


def test_matadd_matsub_inverse():
    a = [[1, 2], [3, 4]]
    b = [[5, -6], [7, 8]]
    assert matsub(matadd(a, b), b) == a
