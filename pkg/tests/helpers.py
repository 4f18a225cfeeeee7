from __future__ import annotations

import random
from pathlib import Path
from typing import Iterator

from dcnet.network import Network, read_network
from dcnet.oracle import RandomNetSpec, gen_random_dc, gen_random_network, gen_random_o1

DATA = Path(__file__).parent / "data"


def load(name: str) -> Network:
    return read_network(DATA / f"{name}.dcn")


def spec_from(rng: random.Random, n_max: int = 5, max_internal: int = 6, n_min: int = 3) -> RandomNetSpec:
    return RandomNetSpec(
        n=rng.randint(n_min, n_max),
        max_internal=rng.randint(2, max_internal),
        density=rng.uniform(0.3, 0.7),
        seed=rng.randrange(2**32),
    )


def random_dcs(count: int, seed: int, n_max: int = 5, max_internal: int = 6) -> Iterator[Network]:
    rng = random.Random(seed)
    for _ in range(count):
        yield gen_random_dc(spec_from(rng, n_max, max_internal))


def random_nets(count: int, seed: int, max_vertices: int) -> Iterator[Network]:
    """Random valid networks, DC or not, with at most ``max_vertices`` vertices."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        net = gen_random_network(spec_from(rng, 5, 5))
        if len(net) <= max_vertices:
            made += 1
            yield net


def dense_dcs(count: int, seed: int, max_internal: int = 6, density: float = 0.5) -> Iterator[Network]:
    """Random DC networks on 3..5 taxa dense enough to contain redundant arcs."""
    rng = random.Random(seed)
    for _ in range(count):
        yield gen_random_dc(RandomNetSpec(rng.randint(3, 5), max_internal, density, rng.randrange(2**32)))


def o1_key(net: Network) -> tuple[frozenset, frozenset]:
    """Isomorphism key for extended-DC networks whose hybrids came from an expansion.

    Each vertex is named by its cluster plus whether it is an out-degree-1 hybrid.
    """
    names = [(net.clusters[v], net.is_hybrid(v) and len(net.children[v]) == 1) for v in range(len(net))]
    assert len(set(names)) == len(names)
    return frozenset(names), frozenset((names[u], names[v]) for u, v in net.arcs)


def random_o1(count: int, seed: int, n: int | None = None) -> list[Network]:
    rng = random.Random(seed)
    lo, hi = (n, n) if n else (3, 5)
    return [gen_random_o1(spec_from(rng, hi, n_min=lo)) for _ in range(count)]
