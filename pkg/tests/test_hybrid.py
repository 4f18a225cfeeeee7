from __future__ import annotations

import random

import pytest

from dcnet import errors
from dcnet.hybrid import (
    _contract_all,
    contract_o1,
    d_o1,
    expand_o1,
    is_extended_dc,
    is_o1,
    o1_networks_equal,
)
from dcnet.network import networks_equal, parse_network
from dcnet.oracle import RandomNetSpec, gen_random_network

from helpers import load, o1_key, random_o1

# the hybrid h hangs above a tree vertex c of out-degree 1; contraction swallows c too
SWALLOWED_CHILD = """\
taxa 1 2 3
arc r a
arc r b
arc a h
arc b h
arc a 2
arc b 3
arc h c
arc c 1
"""


class TestFig2:
    def test_expand(self):
        net = load("fig2")
        out = expand_o1(net)
        added = [lab for lab in out.labels if lab.startswith("_h")]
        assert len(added) == 4
        assert is_o1(out) and not out.is_dc and is_extended_dc(out)
        assert networks_equal(contract_o1(out), net)

    def test_tree_is_unchanged(self):
        tree = load("t1")
        assert expand_o1(tree) is tree
        assert contract_o1(tree) is tree


class TestRoundTrip:
    def test_expansion_then_contraction(self):
        for net in (load(n) for n in ("fig1", "fig2", "fig3")):
            assert networks_equal(contract_o1(expand_o1(net)), net)

    def test_contraction_then_expansion(self):
        for net in random_o1(100, seed=90):
            assert is_o1(net)
            assert o1_key(expand_o1(contract_o1(net))) == o1_key(net)

    def test_contraction_order_is_irrelevant(self):
        rng = random.Random(91)
        found = 0
        for _ in range(300):
            spec = RandomNetSpec(rng.randint(2, 5), rng.randint(1, 6), rng.uniform(0.3, 0.7), rng.randrange(2**32))
            net = gen_random_network(spec)
            if not is_o1(net):
                continue
            found += 1
            ref = contract_o1(net)
            other = _contract_all(net, lambda labels: rng.choice(labels))
            assert other.labels == ref.labels and other.arcs == ref.arcs
        assert found

    def test_swallowed_child_breaks_round_trip(self):
        net = parse_network(SWALLOWED_CHILD)
        assert is_o1(net) and is_extended_dc(net)
        back = expand_o1(contract_o1(net))
        assert len(back) == len(net) - 1
        assert "c" not in back.labels
        # the two networks are not isomorphic, yet nothing tells them apart
        assert d_o1(net, back) == 0
        assert o1_networks_equal(net, back)


class TestDistance:
    def test_metric_axioms(self):
        rng = random.Random(92)
        for _ in range(100):
            n = rng.randint(2, 5)
            a, b, c = random_o1(3, rng.randrange(2**32), n=n)
            dab = d_o1(a, b)
            assert dab == d_o1(b, a)
            assert d_o1(a, a) == 0
            assert (dab == 0) == (o1_key(a) == o1_key(b))
            assert d_o1(a, c) <= dab + d_o1(b, c)

    def test_matches_plain_distance_after_expansion(self):
        assert d_o1(expand_o1(load("fig1")), load("t1")) == 13

    def test_hybrid_leaves_need_expanding(self):
        with pytest.raises(errors.NotO1Network):
            d_o1(load("fig1"), load("t1"))

    def test_needs_extended_dc(self):
        # after contraction, u still shares its cluster with the leaf below it
        bad = parse_network("taxa 1 2\narc r u\narc u 1\narc r 2\n")
        with pytest.raises(errors.NotExtendedDC):
            d_o1(bad, bad)


class TestErrors:
    def test_contract_needs_o1(self):
        with pytest.raises(errors.NotO1Network):
            contract_o1(load("fig1"))

    def test_expand_refuses_o1_hybrid(self):
        with pytest.raises(errors.AlreadyHasO1Hybrid):
            expand_o1(expand_o1(load("fig2")))

    def test_fresh_labels_avoid_collisions(self):
        net = parse_network("taxa 1 2 3\narc _h0 a\narc _h0 b\narc a 1\narc a 2\narc b 2\narc b 3\n")
        out = expand_o1(net)
        assert "_h1" in out.labels and out.labels.count("_h0") == 1
