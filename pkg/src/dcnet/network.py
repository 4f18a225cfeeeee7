"""Rooted acyclic X-networks: data model, validation, clusters and classes.

Vertices are dense integer ids.  A cluster is stored as an ``int`` bitset
over taxon positions (bit ``i`` set means ``taxa[i]`` is in the cluster),
so at most 64 taxa are accepted.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    CycleDetected,
    DcnSyntaxError,
    DuplicateArc,
    DuplicateLabel,
    DuplicateTaxon,
    EmptyTaxonSet,
    InvalidLabel,
    MultipleRoots,
    NoRoot,
    NoSuchCluster,
    NoSuchVertex,
    NotDistinctCluster,
    TaxonNotALeaf,
    TaxonSetMismatch,
    TooManyTaxa,
    UnlabeledLeaf,
)

MAX_TAXA = 64

Arc = tuple[int, int]


def _check_token(token: str, what: str) -> None:
    if not token or any(ch.isspace() for ch in token) or "#" in token:
        raise InvalidLabel(f"invalid {what} {token!r}: must be non-empty, without whitespace or '#'")


class Network:
    """An immutable rooted acyclic directed graph whose leaves are the taxa.

    ``labels[i]`` is the printable name of vertex ``i``; the leaf for taxon
    ``taxa[k]`` is the vertex labelled ``taxa[k]``.  The constructor checks
    every structural axiom and raises a :class:`~dcnet.errors.DcnetError`
    subclass on the first violation found.
    """

    def __init__(self, taxa: Iterable[str], labels: Iterable[str], arcs: Iterable[Arc]):
        taxa = tuple(taxa)
        labels = tuple(labels)
        if not taxa:
            raise EmptyTaxonSet("the taxon set is empty")
        if len(taxa) > MAX_TAXA:
            raise TooManyTaxa(f"{len(taxa)} taxa given; at most {MAX_TAXA} are supported")
        seen_taxa: set[str] = set()
        for t in taxa:
            _check_token(t, "taxon name")
            if t in seen_taxa:
                raise DuplicateTaxon(f"taxon {t!r} listed twice")
            seen_taxa.add(t)

        index: dict[str, int] = {}
        for i, lab in enumerate(labels):
            _check_token(lab, "vertex label")
            if lab in index:
                raise DuplicateLabel(f"vertex label {lab!r} used twice")
            index[lab] = i
        m = len(labels)

        taxon_of: list[int | None] = [None] * m
        leaf_of = []
        for k, t in enumerate(taxa):
            if t not in index:
                raise NoSuchVertex(f"taxon {t!r} has no vertex")
            taxon_of[index[t]] = k
            leaf_of.append(index[t])

        children: list[list[int]] = [[] for _ in range(m)]
        parents: list[list[int]] = [[] for _ in range(m)]
        arc_set: set[Arc] = set()
        for u, v in arcs:
            if not (0 <= u < m and 0 <= v < m):
                raise NoSuchVertex(f"arc ({u}, {v}) refers to a missing vertex")
            if u == v:
                raise CycleDetected(f"self-loop at {labels[u]!r}")
            if (u, v) in arc_set:
                raise DuplicateArc(f"arc {labels[u]} -> {labels[v]} listed twice")
            arc_set.add((u, v))
            children[u].append(v)
            parents[v].append(u)

        # Kahn's algorithm; the heap makes ties break by vertex id.
        indeg = [len(p) for p in parents]
        heap = [v for v in range(m) if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            u = heapq.heappop(heap)
            order.append(u)
            for c in children[u]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    heapq.heappush(heap, c)
        if len(order) < m:
            stuck = sorted(labels[v] for v in range(m) if indeg[v] > 0)
            raise CycleDetected(f"directed cycle through vertices {', '.join(stuck)}")

        roots = [v for v in range(m) if not parents[v]]
        if not roots:
            raise NoRoot("no vertex of in-degree 0")
        if len(roots) > 1:
            names = ", ".join(labels[v] for v in roots)
            raise MultipleRoots(f"several vertices of in-degree 0: {names}")

        for v in range(m):
            if not children[v] and taxon_of[v] is None:
                raise UnlabeledLeaf(f"vertex {labels[v]!r} has no children but is not a taxon")
            if children[v] and taxon_of[v] is not None:
                raise TaxonNotALeaf(f"taxon {labels[v]!r} has children")

        self.taxa: tuple[str, ...] = taxa
        self.labels: tuple[str, ...] = labels
        self.arcs: frozenset[Arc] = frozenset(arc_set)
        self.children: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(c)) for c in children)
        self.parents: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(p)) for p in parents)
        self.root: int = roots[0]
        self.taxon_of: tuple[int | None, ...] = tuple(taxon_of)
        self.leaf_of: tuple[int, ...] = tuple(leaf_of)
        self.order: tuple[int, ...] = tuple(order)
        self._index = index

    # -- construction helpers ---------------------------------------------------

    @classmethod
    def from_label_arcs(cls, taxa: Sequence[str], arcs: Iterable[tuple[str, str]]) -> Network:
        """Build from ``(parent_label, child_label)`` pairs.

        Vertex ids follow first mention: taxa first, then arc endpoints.
        """
        labels: list[str] = list(taxa)
        index = {lab: i for i, lab in enumerate(labels)}
        pairs = []
        for p, c in arcs:
            for lab in (p, c):
                if lab not in index:
                    index[lab] = len(labels)
                    labels.append(lab)
            pairs.append((index[p], index[c]))
        return cls(taxa, labels, pairs)

    def derive(self, keep: Iterable[int], arcs: Iterable[Arc]) -> Network:
        """A new network on the vertices ``keep`` (old ids) with ``arcs`` (old ids).

        Surviving vertices keep their labels and relative id order.
        """
        kept = sorted(set(keep))
        remap = {old: new for new, old in enumerate(kept)}
        return Network(
            self.taxa,
            [self.labels[v] for v in kept],
            [(remap[u], remap[v]) for u, v in arcs],
        )

    def with_taxa_order(self, taxa: Sequence[str]) -> Network:
        """The same network with its taxon list permuted to ``taxa``."""
        taxa = tuple(taxa)
        if taxa == self.taxa:
            return self
        if sorted(taxa) != sorted(self.taxa):
            raise TaxonSetMismatch(
                f"taxon sets differ: {sorted(self.taxa)} vs {sorted(taxa)}"
            )
        return Network(taxa, self.labels, self.arcs)

    # -- basic queries -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"<Network taxa={len(self.taxa)} vertices={len(self)} arcs={len(self.arcs)}>"

    @property
    def n(self) -> int:
        return len(self.taxa)

    def vertex(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise NoSuchVertex(f"no vertex labelled {label!r}") from None

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def is_hybrid(self, v: int) -> bool:
        return len(self.parents[v]) > 1

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    @cached_property
    def descendants(self) -> tuple[int, ...]:
        """Bitset over vertex ids of everything reachable from each vertex (itself included)."""
        desc = [0] * len(self)
        for v in reversed(self.order):
            d = 1 << v
            for c in self.children[v]:
                d |= desc[c]
            desc[v] = d
        return tuple(desc)

    def reachable(self, u: int, v: int) -> bool:
        return bool(self.descendants[u] >> v & 1)

    @cached_property
    def clusters(self) -> tuple[int, ...]:
        cl = [0] * len(self)
        for v in reversed(self.order):
            k = self.taxon_of[v]
            c = 1 << k if k is not None else 0
            for ch in self.children[v]:
                c |= cl[ch]
            cl[v] = c
        return tuple(cl)

    @cached_property
    def dc_violation(self) -> tuple[int, int] | None:
        first: dict[int, int] = {}
        for v in range(len(self)):
            c = self.clusters[v]
            if c in first:
                return first[c], v
            first[c] = v
        return None

    @property
    def is_dc(self) -> bool:
        return self.dc_violation is None

    def require_dc(self, what: str = "network") -> None:
        bad = self.dc_violation
        if bad is not None:
            u, v = bad
            raise NotDistinctCluster(
                f"{what}: vertices {self.labels[u]!r} and {self.labels[v]!r} share cluster "
                f"{format_cluster(self.clusters[u], self.taxa)}"
            )

    @cached_property
    def _vertex_by_cluster(self) -> dict[int, int]:
        self.require_dc()
        return {c: v for v, c in enumerate(self.clusters)}

    def vertex_of_cluster(self, cluster: int) -> int:
        """Vertex with the given cluster; the network must be DC."""
        try:
            return self._vertex_by_cluster[cluster]
        except KeyError:
            raise NoSuchCluster(
                f"no vertex has cluster {format_cluster(cluster, self.taxa)}"
            ) from None

    def has_cluster(self, cluster: int) -> bool:
        return cluster in self.cluster_set

    @cached_property
    def cluster_set(self) -> frozenset[int]:
        return frozenset(self.clusters)

    @cached_property
    def cluster_arcs(self) -> frozenset[tuple[int, int]]:
        """The arc set with every vertex replaced by its cluster."""
        cl = self.clusters
        return frozenset((cl[u], cl[v]) for u, v in self.arcs)

    def cluster_name(self, v: int) -> str:
        return format_cluster(self.clusters[v], self.taxa)


# -- clusters as text -----------------------------------------------------------------

def format_cluster(bits: int, taxa: Sequence[str]) -> str:
    return "{" + ",".join(t for k, t in enumerate(taxa) if bits >> k & 1) + "}"


def cluster_from_names(names: Iterable[str], taxa: Sequence[str]) -> int:
    pos = {t: k for k, t in enumerate(taxa)}
    bits = 0
    for name in names:
        if name not in pos:
            raise NoSuchVertex(f"unknown taxon {name!r}")
        bits |= 1 << pos[name]
    if not bits:
        raise NoSuchCluster("a cluster must be non-empty")
    return bits


def full_cluster(n: int) -> int:
    return (1 << n) - 1


def trivial_clusters(n: int) -> frozenset[int]:
    """``X`` together with every singleton."""
    return frozenset([full_cluster(n)] + [1 << k for k in range(n)])


def natural_key(label: str) -> tuple:
    """Sort key that orders ``"9"`` before ``"10"``."""
    return tuple((0, int(tok), "") if tok.isdigit() else (1, 0, tok)
                 for tok in re.split(r"(\d+)", label) if tok)


# -- the .dcn text format ----------------------------------------------------------------

def parse_network(text: str) -> Network:
    """Parse and validate a network in ``.dcn`` format.

    The first non-comment line is ``taxa <name> ...``; every further line is
    ``arc <parent> <child>``.  ``#`` starts a comment.
    """
    taxa: list[str] | None = None
    arcs: list[tuple[str, str]] = []
    seen: dict[tuple[str, str], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword = tokens[0]
        if taxa is None:
            if keyword != "taxa":
                raise DcnSyntaxError(lineno, f"expected 'taxa' line, found {keyword!r}")
            if len(tokens) < 2:
                raise DcnSyntaxError(lineno, "'taxa' needs at least one name")
            taxa = tokens[1:]
            seen_names: set[str] = set()
            for t in taxa:
                if t in seen_names:
                    raise DuplicateTaxon(f"line {lineno}: taxon {t!r} listed twice")
                seen_names.add(t)
        elif keyword == "taxa":
            raise DcnSyntaxError(lineno, "'taxa' given more than once")
        elif keyword == "arc":
            if len(tokens) != 3:
                raise DcnSyntaxError(lineno, "expected 'arc <parent> <child>'")
            pair = (tokens[1], tokens[2])
            if pair in seen:
                raise DuplicateArc(
                    f"line {lineno}: arc {pair[0]} -> {pair[1]} already given on line {seen[pair]}"
                )
            seen[pair] = lineno
            arcs.append(pair)
        else:
            raise DcnSyntaxError(lineno, f"unknown keyword {keyword!r}")
    if taxa is None:
        raise DcnSyntaxError(0, "missing 'taxa' line")
    return Network.from_label_arcs(taxa, arcs)


def read_network(path) -> Network:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())


def serialize(net: Network) -> str:
    """``.dcn`` text; taxa in their given order, arcs sorted by (parent, child) label."""
    lines = ["taxa " + " ".join(net.taxa)]
    lab = net.labels
    for p, c in sorted((lab[u], lab[v]) for u, v in net.arcs):
        lines.append(f"arc {p} {c}")
    return "\n".join(lines) + "\n"


# -- module-level operations -------------------------------------------------------

def topological_order(net: Network) -> list[int]:
    return list(net.order)


def compute_clusters(net: Network) -> tuple[int, ...]:
    return net.clusters


def reachable(net: Network, u: int, v: int) -> bool:
    return net.reachable(u, v)


def distinct_cluster_violation(net: Network) -> tuple[int, int] | None:
    """A pair of distinct vertices sharing a cluster, or ``None`` if the network is DC."""
    return net.dc_violation


def is_distinct_cluster(net: Network) -> bool:
    return net.dc_violation is None


def redundant_arcs(net: Network) -> set[Arc]:
    """Arcs ``(a, b)`` bypassed by some longer directed path from ``a`` to ``b``."""
    out = set()
    for a, b in net.arcs:
        if any(c != b and net.reachable(c, b) for c in net.children[a]):
            out.add((a, b))
    return out


def is_redundant(net: Network, a: int, b: int) -> bool:
    return (a, b) in net.arcs and any(c != b and net.reachable(c, b) for c in net.children[a])


@dataclass(frozen=True)
class NetworkClass:
    is_tree: bool
    is_tree_child: bool
    is_normal: bool
    is_regular: bool
    is_dc: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


def cover_arcs(clusters: Iterable[int]) -> set[tuple[int, int]]:
    """Cover relation of proper containment among ``clusters`` (as cluster pairs)."""
    cs = set(clusters)
    covers = set()
    for big in cs:
        below = [c for c in cs if c != big and c & big == c]
        for small in below:
            if not any(mid != small and mid & small == small for mid in below):
                covers.add((big, small))
    return covers


def classify(net: Network) -> NetworkClass:
    m = len(net)
    is_tree = all(len(net.parents[v]) <= 1 for v in range(m))
    is_tree_child = all(
        net.is_leaf(v) or any(len(net.parents[c]) == 1 for c in net.children[v])
        for v in range(m)
    )
    is_normal = (
        is_tree_child
        and all(len(net.children[v]) != 1 for v in range(m))
        and not redundant_arcs(net)
    )
    is_dc = net.is_dc
    is_regular = is_dc and net.cluster_arcs == cover_arcs(net.clusters)
    return NetworkClass(is_tree, is_tree_child, is_normal, is_regular, is_dc)


def align_taxa(a: Network, b: Network) -> Network:
    """``b`` re-expressed over ``a``'s taxon order; raises if the taxon sets differ."""
    return b.with_taxa_order(a.taxa)


def networks_equal(a: Network, b: Network) -> bool:
    """Isomorphism of DC networks, decided by comparing clusters and cluster-labelled arcs."""
    a.require_dc("first network")
    b.require_dc("second network")
    b = align_taxa(a, b)
    return a.cluster_set == b.cluster_set and a.cluster_arcs == b.cluster_arcs
