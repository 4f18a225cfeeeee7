"""Inheritance distance between DC networks and the reference networks Tr(X), P(X)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Iterable, Sequence

from .errors import IndexMissingCluster, InvalidN, InvalidP, TaxonSetMismatch, TooLarge
from .matrix import inheritance_matrix
from .network import Network, align_taxa, format_cluster, full_cluster

MAX_POWERSET_TAXA = 14


@dataclass(frozen=True)
class ClusterIndex:
    """An ordered set of clusters used to align inheritance matrices."""

    taxa: tuple[str, ...]
    clusters: tuple[int, ...]

    def __post_init__(self):
        if list(self.clusters) != sorted(set(self.clusters)):
            raise ValueError("cluster index must be strictly increasing")

    def __len__(self) -> int:
        return len(self.clusters)

    def __contains__(self, cluster: int) -> bool:
        return cluster in self.position

    @property
    def position(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self.clusters)}

    def extended(self, extra: Iterable[int]) -> ClusterIndex:
        return ClusterIndex(self.taxa, tuple(sorted(set(self.clusters) | set(extra))))


@dataclass(frozen=True)
class EmbeddedMatrix:
    index: ClusterIndex
    rows: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Distance:
    """``radicand ** (1/p)``, kept exact as the integer ``sum |delta|^p``."""

    radicand: int
    p: int = 1

    @property
    def value(self) -> float:
        return float(self.radicand) ** (1.0 / self.p)

    def __str__(self) -> str:
        if self.p == 1:
            return str(self.radicand)
        if self.p == 2:
            return f"sqrt({self.radicand})"
        return f"{self.radicand}^(1/{self.p})"


def _check_nets(nets: Sequence[Network]) -> list[Network]:
    if not nets:
        raise ValueError("at least one network is required")
    first = nets[0]
    out = []
    for i, net in enumerate(nets):
        net.require_dc(f"network {i + 1}")
        try:
            out.append(align_taxa(first, net))
        except TaxonSetMismatch:
            raise TaxonSetMismatch(
                f"network {i + 1} has taxa {sorted(net.taxa)}, expected {sorted(first.taxa)}"
            ) from None
    return out


def cluster_index(nets: Sequence[Network]) -> ClusterIndex:
    """Sorted union of the networks' cluster sets (over the first network's taxon order)."""
    nets = _check_nets(nets)
    union: set[int] = set()
    for net in nets:
        union |= net.cluster_set
    return ClusterIndex(nets[0].taxa, tuple(sorted(union)))


def embed(net: Network, index: ClusterIndex) -> EmbeddedMatrix:
    """The inheritance matrix of ``net`` spread over ``index``, zero outside its clusters."""
    net.require_dc()
    net = net.with_taxa_order(index.taxa)
    pos = index.position
    missing = [c for c in net.clusters if c not in pos]
    if missing:
        raise IndexMissingCluster(
            f"index lacks cluster {format_cluster(missing[0], net.taxa)}"
        )
    k = len(index)
    rows = [[0] * k for _ in range(k)]
    h = inheritance_matrix(net)
    where = [pos[net.clusters[v]] for v in h.order]
    for i, row in enumerate(h.rows):
        out = rows[where[i]]
        for j, x in enumerate(row):
            if x:
                out[where[j]] = x
    return EmbeddedMatrix(index, tuple(tuple(r) for r in rows))


def _radicand(a: Network, b: Network, p: int, index: ClusterIndex | None) -> int:
    a, b = _check_nets([a, b])
    if index is None:
        index = cluster_index([a, b])
    ea, eb = embed(a, index).rows, embed(b, index).rows
    total = 0
    for ra, rb in zip(ea, eb):
        for x, y in zip(ra, rb):
            if x != y:
                total += abs(x - y) ** p
    return total


def inheritance_distance(a: Network, b: Network, index: ClusterIndex | None = None) -> int:
    """Entrywise 1-norm of the difference of the embedded inheritance matrices.

    ``index`` defaults to the union of both cluster sets; any superset gives
    the same value.
    """
    return _radicand(a, b, 1, index)


def p_norm_distance(a: Network, b: Network, p: int, index: ClusterIndex | None = None) -> Distance:
    if not isinstance(p, int) or p < 1:
        raise InvalidP(f"p must be an integer >= 1, got {p!r}")
    return Distance(_radicand(a, b, p, index), p)


# -- reference networks -------------------------------------------------------------

def _taxa_names(taxa: Sequence[str] | int) -> tuple[str, ...]:
    if isinstance(taxa, int):
        if taxa < 1:
            raise InvalidN(f"need at least one taxon, got {taxa}")
        return tuple(str(i) for i in range(1, taxa + 1))
    return tuple(taxa)


def _cluster_label(bits: int, taxa: Sequence[str]) -> str:
    return format_cluster(bits, taxa)


def gen_trivial_tree(taxa: Sequence[str] | int) -> Network:
    """Root ``X`` with one arc to each taxon; a lone vertex when there is one taxon."""
    taxa = _taxa_names(taxa)
    if len(taxa) == 1:
        return Network(taxa, taxa, [])
    root = _cluster_label(full_cluster(len(taxa)), taxa)
    return Network.from_label_arcs(taxa, [(root, t) for t in taxa])


def gen_powerset_network(taxa: Sequence[str] | int) -> Network:
    """All non-empty subsets of ``X``, each subset pointing to those one element smaller."""
    taxa = _taxa_names(taxa)
    n = len(taxa)
    if n > MAX_POWERSET_TAXA:
        raise TooLarge(f"powerset network on {n} taxa has {2 ** n - 1} vertices; limit is n <= {MAX_POWERSET_TAXA}")
    if n == 1:
        return Network(taxa, taxa, [])

    def label(bits: int) -> str:
        return taxa[bits.bit_length() - 1] if bits.bit_count() == 1 else _cluster_label(bits, taxa)

    arcs = []
    for size in range(n, 1, -1):
        for members in combinations(range(n), size):
            bits = sum(1 << k for k in members)
            for k in members:
                arcs.append((label(bits), label(bits & ~(1 << k))))
    return Network.from_label_arcs(taxa, arcs)


def reference_distance_formula(n: int) -> int:
    """Closed form for the distance between P(X) and Tr(X) when ``|X| = n``."""
    if n < 2:
        raise InvalidN(f"the closed form needs n >= 2, got {n}")
    paths = sum(
        comb(n, k) * sum(comb(k, j) * factorial(k - j) for j in range(1, k + 1))
        for k in range(1, n + 1)
    )
    return paths - 2 * n - 1


def explore_max_distance(n: int, samples: int, seed: int = 0) -> tuple[int, int]:
    """Largest distance seen over ``samples`` random DC pairs, next to the P(X)/Tr(X) value.

    Exploratory only: nothing is claimed about the true maximum.
    """
    from .oracle import RandomNetSpec, gen_random_dc

    rng = random.Random(seed)
    best = 0
    for _ in range(samples):
        a = gen_random_dc(RandomNetSpec(n=n, max_internal=8, density=rng.random(), seed=rng.randrange(2**32)))
        b = gen_random_dc(RandomNetSpec(n=n, max_internal=8, density=rng.random(), seed=rng.randrange(2**32)))
        best = max(best, inheritance_distance(a, b))
    return best, reference_distance_formula(n)
