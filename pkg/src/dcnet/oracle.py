"""Random small networks and brute-force oracles for cross-checking.

Everything here is exponential or sampling-based and meant for tests and
the hidden ``dcnet debug`` commands.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import GenerationExhausted, TooLarge
from .network import Network, is_redundant
from .simplify import (
    DeleteRedundantArc,
    DeleteVertex,
    Step,
    apply_step,
)

MAX_TRIES = 10_000
SLOT_ATTEMPTS = 8


@dataclass(frozen=True)
class RandomNetSpec:
    n: int = 4
    max_internal: int = 4
    density: float = 0.4
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= 6:
            raise ValueError(f"n must be in 1..6, got {self.n}")
        if not 0 <= self.max_internal <= 8:
            raise ValueError(f"max_internal must be in 0..8, got {self.max_internal}")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"density must be in [0, 1], got {self.density}")


def _sample(spec: RandomNetSpec, rng: random.Random, min_children: int, distinct: bool) -> Network:
    # Internal vertices are created bottom-up; each may point at leaves and
    # at earlier internal vertices.  Vertices nobody points at hang off the root.
    # With ``distinct`` a draw repeating an existing cluster (or X) is
    # redrawn a few times and then dropped, which keeps far more internal
    # vertices than rejecting whole networks would.
    taxa = [str(i) for i in range(1, spec.n + 1)]
    if spec.n == 1:
        return Network(taxa, taxa, [])
    everything = (1 << spec.n) - 1
    labels = list(taxa)
    lower = list(range(spec.n))
    cluster = [1 << k for k in range(spec.n)]
    arcs = []
    for _ in range(rng.randint(0, spec.max_internal)):
        for _attempt in range(SLOT_ATTEMPTS if distinct else 1):
            kids = [u for u in lower if rng.random() < spec.density]
            bits = 0
            for c in kids:
                bits |= cluster[c]
            if len(kids) >= min_children and not (distinct and (bits == everything or bits in cluster)):
                break
        else:
            continue
        v = len(labels)
        labels.append(str(v + 1))
        cluster.append(bits)
        arcs.extend((v, c) for c in kids)
        lower.append(v)
    root = len(labels)
    labels.append(str(root + 1))
    has_parent = {c for _, c in arcs}
    arcs.extend((root, u) for u in lower if u not in has_parent or rng.random() < spec.density)
    return Network(taxa, labels, arcs)


def gen_random_dc(spec: RandomNetSpec) -> Network:
    """A random DC network, reproducible from ``spec.seed``."""
    rng = random.Random(spec.seed)
    for _ in range(MAX_TRIES):
        net = _sample(spec, rng, min_children=2, distinct=True)
        if net.is_dc:
            return net
    raise GenerationExhausted(f"no DC network found in {MAX_TRIES} tries for {spec}")


def gen_random_network(spec: RandomNetSpec) -> Network:
    """A random valid network; not necessarily DC (out-degree-1 vertices allowed)."""
    return _sample(spec, random.Random(spec.seed), min_children=1, distinct=False)


def permute_vertices(net: Network, rng: random.Random) -> Network:
    """The same network with vertex ids shuffled."""
    perm = list(range(len(net)))
    rng.shuffle(perm)
    labels = [None] * len(net)
    for old, new in enumerate(perm):
        labels[new] = net.labels[old]
    return Network(net.taxa, labels, [(perm[u], perm[v]) for u, v in net.arcs])


def gen_random_o1(spec: RandomNetSpec) -> Network:
    """A random extended-DC network in which every hybrid has out-degree 1.

    Obtained by expanding a random DC network, then shuffling vertex ids.
    """
    from .hybrid import expand_o1

    net = expand_o1(gen_random_dc(spec))
    return permute_vertices(net, random.Random(spec.seed ^ 0x5EED))


# -- single steps ---------------------------------------------------------------------

def valid_steps(net: Network) -> list[Step]:
    """Every step applicable to the DC network ``net``."""
    cl = net.clusters
    steps: list[Step] = [DeleteVertex(cl[v]) for v in range(len(net))
                         if v != net.root and not net.is_leaf(v)]
    steps.extend(DeleteRedundantArc(cl[a], cl[b]) for a, b in sorted(net.arcs)
                 if is_redundant(net, a, b))
    return steps


def random_step_sequence(net: Network, rng: random.Random, max_len: int = 8
                         ) -> tuple[list[Step], list[Network]]:
    """A random valid sequence and the networks it passes through (start included)."""
    steps: list[Step] = []
    nets = [net]
    for _ in range(rng.randint(0, max_len)):
        options = valid_steps(nets[-1])
        if not options:
            break
        step = rng.choice(options)
        steps.append(step)
        nets.append(apply_step(nets[-1], step))
    return steps, nets


def network_key(net: Network) -> tuple[frozenset[int], frozenset[tuple[int, int]]]:
    """Hashable identity of a DC network up to isomorphism."""
    return net.cluster_set, net.cluster_arcs


def enumerate_all_cps(net: Network, max_vertices: int = 8) -> dict:
    """Closure of ``{net}`` under all valid single steps, keyed by :func:`network_key`."""
    net.require_dc()
    if len(net) > max_vertices:
        raise TooLarge(f"{len(net)} vertices; the closure is only computed up to {max_vertices}")
    found = {network_key(net): net}
    queue = deque([net])
    while queue:
        cur = queue.popleft()
        for step in valid_steps(cur):
            nxt = apply_step(cur, step)
            key = network_key(nxt)
            if key not in found:
                found[key] = nxt
                queue.append(nxt)
    return found


# -- brute-force relations ------------------------------------------------------------------

def simple_paths(net: Network, u: int, v: int) -> list[tuple[int, ...]]:
    out = []
    stack = [(u,)]
    while stack:
        path = stack.pop()
        if path[-1] == v:
            out.append(path)
            continue
        stack.extend(path + (c,) for c in net.children[path[-1]])
    return out


def brute_force_redundant_arcs(net: Network) -> set[tuple[int, int]]:
    return {(a, b) for a, b in net.arcs if any(len(p) > 2 for p in simple_paths(net, a, b))}


def brute_force_reachable(net: Network, u: int, v: int) -> bool:
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            return True
        for c in net.children[x]:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return False


def induced_cover_network(net: Network, keep: Iterable[int]) -> Network:
    """The Hasse diagram of ``net``'s reachability order restricted to the clusters ``keep``."""
    ids = sorted(net.vertex_of_cluster(c) for c in keep)
    below = {u: [v for v in ids if v != u and net.reachable(u, v)] for u in ids}
    arcs = []
    for u in ids:
        for v in below[u]:
            if not any(net.reachable(w, v) for w in below[u] if w != v):
                arcs.append((u, v))
    return net.derive(ids, arcs)
