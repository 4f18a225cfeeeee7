from __future__ import annotations

import random
from itertools import combinations

import pytest

from dcnet import errors, oracle
from dcnet.metric import gen_trivial_tree
from dcnet.network import classify, networks_equal, parse_network, redundant_arcs, serialize, trivial_clusters
from dcnet.oracle import (
    RandomNetSpec,
    enumerate_all_cps,
    gen_random_dc,
    gen_random_network,
    induced_cover_network,
    network_key,
    random_step_sequence,
)
from dcnet.search import nontrivial_clusters
from dcnet.simplify import canonical_cps, is_cps, transitive_reduction

from helpers import load, random_dcs


def canonical_image(net):
    pool = nontrivial_clusters(net)
    base = trivial_clusters(net.n)
    return {network_key(canonical_cps(net, base | set(w)))
            for k in range(len(pool) + 1) for w in combinations(pool, k)}


class TestGenerator:
    def test_deterministic(self):
        spec = RandomNetSpec(n=3, max_internal=2, seed=1)
        assert serialize(gen_random_dc(spec)) == serialize(gen_random_dc(spec))

    def test_zero_density_gives_trivial_tree(self):
        net = gen_random_dc(RandomNetSpec(n=4, max_internal=4, density=0.0, seed=7))
        assert networks_equal(net, gen_trivial_tree(4))

    def test_samples_are_valid_dc(self):
        rng = random.Random(100)
        for _ in range(1000):
            spec = RandomNetSpec(rng.randint(1, 5), rng.randint(0, 8), rng.random(), rng.randrange(2**32))
            assert gen_random_dc(spec).is_dc

    def test_non_dc_sampler_produces_non_dc(self):
        nets = [gen_random_network(RandomNetSpec(4, 4, 0.5, s)) for s in range(50)]
        assert any(not n.is_dc for n in nets)

    @pytest.mark.parametrize("kwargs", [{"n": 0}, {"n": 7}, {"max_internal": 9}, {"density": 1.5}])
    def test_spec_bounds(self, kwargs):
        with pytest.raises(ValueError):
            RandomNetSpec(**kwargs)

    def test_exhaustion(self, monkeypatch):
        not_dc = parse_network("taxa 1 2\narc r u\narc u 1\narc r 2\n")
        monkeypatch.setattr(oracle, "_sample", lambda spec, rng, min_children, distinct: not_dc)
        with pytest.raises(errors.GenerationExhausted):
            gen_random_dc(RandomNetSpec(n=2, seed=0))


class TestClosure:
    def test_trivial_tree(self):
        tree = gen_trivial_tree(4)
        assert list(enumerate_all_cps(tree)) == [network_key(tree)]

    def test_fig3(self):
        net = load("fig3")
        found = enumerate_all_cps(net)
        assert network_key(load("fig3_n5")) in found
        assert network_key(transitive_reduction(net)) in found
        assert network_key(load("fig3_t")) not in found

    def test_size_limit(self):
        with pytest.raises(errors.TooLarge):
            enumerate_all_cps(load("fig2"))

    def test_reduced_members_are_the_canonical_image(self):
        checked = 0
        for net in random_dcs(80, seed=101):
            if len(net) > 8:
                continue
            found = enumerate_all_cps(net)
            reduced = {k for k, m in found.items() if not redundant_arcs(m)}
            assert reduced == canonical_image(net)
            checked += 1
        assert checked >= 30

    def test_membership_matches_recognizer(self):
        rng = random.Random(102)
        for net in random_dcs(30, seed=102):
            if len(net) > 8:
                continue
            found = enumerate_all_cps(net)
            for member in found.values():
                assert is_cps(net, member)
            outsiders = 0
            for _ in range(200):
                other = gen_random_dc(RandomNetSpec(net.n, rng.randint(0, 4), rng.random(), rng.randrange(2**32)))
                if network_key(other) not in found:
                    assert not is_cps(net, other)
                    outsiders += 1
                if outsiders == 20:
                    break


class TestCoverCharacterization:
    def test_canonical_is_restricted_cover_relation(self):
        rng = random.Random(103)
        for net in random_dcs(100, seed=103, max_internal=5):
            keep = trivial_clusters(net.n) | {c for c in nontrivial_clusters(net) if rng.random() < 0.5}
            assert networks_equal(induced_cover_network(net, keep), canonical_cps(net, keep))


def test_step_sequences_stay_dc():
    rng = random.Random(104)
    for net in random_dcs(50, seed=104):
        steps, nets = random_step_sequence(net, rng)
        assert len(nets) == len(steps) + 1
        assert all(n.is_dc for n in nets)
        if classify(net).is_tree:
            assert all(classify(n).is_tree for n in nets)
