"""Exhaustive search for best-fitting canonical simplifications.

Every redundant-arc-free CPS of ``N`` is ``N(W)`` for a set ``W`` of
nontrivial clusters of ``N``, so the search walks all such ``W`` (up to a
size cap), scores ``N(W)`` by its inheritance distance to ``N`` and keeps
every candidate of the requested class that attains the minimum.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .errors import SearchTooLarge
from .metric import inheritance_distance
from .network import Network, NetworkClass, classify, natural_key, trivial_clusters
from .simplify import canonical_cps

MAX_NONTRIVIAL = 24
PARALLEL_THRESHOLD = 512

NET_CLASSES = ("tree", "tree_child", "normal", "any")


def nontrivial_clusters(net: Network) -> list[int]:
    return sorted(net.cluster_set - trivial_clusters(net.n))


def enumerate_cps_candidates(net: Network, max_nontrivial: int | None = None
                             ) -> Iterator[tuple[frozenset[int], Network]]:
    """Yield ``(W, N(W))`` for every ``W`` with at most ``max_nontrivial`` clusters."""
    net.require_dc()
    pool = nontrivial_clusters(net)
    cap = len(pool) if max_nontrivial is None else max(0, min(max_nontrivial, len(pool)))
    base = trivial_clusters(net.n)
    for k in range(cap + 1):
        for chosen in combinations(pool, k):
            w = frozenset(chosen)
            yield w, canonical_cps(net, base | w)


@dataclass(frozen=True)
class Candidate:
    keep: frozenset[int]
    network: Network
    distance: int
    flags: NetworkClass
    eligible: bool


@dataclass
class SearchReport:
    base: Network
    net_class: str
    evaluated: list[Candidate]
    minimizers: list[Candidate]
    min_distance: int

    def labels_of(self, cand: Candidate) -> list[str]:
        labels = [self.base.labels[self.base.vertex_of_cluster(c)] for c in cand.keep]
        return sorted(labels, key=natural_key)

    def name(self, cand: Candidate) -> str:
        labels = self.labels_of(cand)
        return f"N({','.join(labels)})" if labels else "N(∅)"

    def table(self) -> str:
        """One row per candidate: name, distance, and a note for ineligible ones."""
        note = {"tree": "not a tree", "tree_child": "not tree-child",
                "normal": "not normal", "any": ""}[self.net_class]
        names = [self.name(c) for c in self.evaluated]
        width = max(len("CPS"), *(len(s) for s in names))
        lines = [f"{'CPS':<{width}}  D(N,N')"]
        for name, cand in zip(names, self.evaluated):
            row = f"{name:<{width}}  {cand.distance:<7}"
            if not cand.eligible:
                row += f"  {note}"
            lines.append(row.rstrip())
        lines.append("")
        best = ", ".join(self.name(c) for c in self.minimizers)
        lines.append(f"best: {best} at distance {self.min_distance}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        def entry(c: Candidate) -> dict:
            return {
                "name": self.name(c),
                "keep": self.labels_of(c),
                "distance": str(c.distance),
                "eligible": c.eligible,
                "flags": c.flags.as_dict(),
            }

        return {
            "class": self.net_class,
            "min_distance": str(self.min_distance),
            "minimizers": [self.name(c) for c in self.minimizers],
            "evaluated": [entry(c) for c in self.evaluated],
        }


def _eligible(flags: NetworkClass, net_class: str) -> bool:
    if net_class == "tree":
        return flags.is_tree
    if net_class == "tree_child":
        return flags.is_tree_child
    if net_class == "normal":
        return flags.is_normal
    return True


def _score(args: tuple[Network, frozenset[int], str]) -> Candidate:
    net, w, net_class = args
    cand = canonical_cps(net, trivial_clusters(net.n) | w)
    flags = classify(cand)
    return Candidate(w, cand, inheritance_distance(net, cand), flags, _eligible(flags, net_class))


def default_workers() -> int:
    env = os.environ.get("DCNET_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def best_fitting_in_class(net: Network, net_class: str = "tree", max_nontrivial: int | None = None,
                          force: bool = False, workers: int | None = None) -> SearchReport:
    """Minimise the distance to ``net`` over ``N(W)`` restricted to a network class.

    For ``tree`` the size of ``W`` is capped at ``|X| - 2``, the most
    internal non-root vertices a DC tree on ``|X|`` leaves can have.
    """
    if net_class not in NET_CLASSES:
        raise ValueError(f"unknown class {net_class!r}; expected one of {NET_CLASSES}")
    net.require_dc()
    pool = nontrivial_clusters(net)
    if len(pool) > MAX_NONTRIVIAL and not force:
        raise SearchTooLarge(
            f"{len(pool)} nontrivial clusters (limit {MAX_NONTRIVIAL}); pass force=True to search anyway"
        )
    if max_nontrivial is None and net_class == "tree":
        max_nontrivial = max(0, net.n - 2)
    cap = len(pool) if max_nontrivial is None else max(0, min(max_nontrivial, len(pool)))

    jobs = [(net, frozenset(chosen), net_class)
            for k in range(cap + 1) for chosen in combinations(pool, k)]
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(jobs) >= PARALLEL_THRESHOLD:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            evaluated = list(ex.map(_score, jobs, chunksize=32))
    else:
        evaluated = [_score(job) for job in jobs]

    label = {c: net.labels[net.vertex_of_cluster(c)] for c in pool}
    evaluated.sort(key=lambda c: (len(c.keep), sorted((natural_key(label[x]) for x in c.keep))))
    eligible = [c for c in evaluated if c.eligible]
    best = min(c.distance for c in eligible)
    return SearchReport(net, net_class, evaluated, [c for c in eligible if c.distance == best], best)


def best_fitting_cps_tree(net: Network, **kwargs) -> SearchReport:
    return best_fitting_in_class(net, "tree", **kwargs)
