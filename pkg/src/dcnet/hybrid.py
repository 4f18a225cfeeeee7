"""Networks whose hybrid vertices all have out-degree 1.

Such a network cannot be DC (a hybrid shares its cluster with its only
child).  ``contract_o1`` merges each of those hybrids into its child;
``expand_o1`` splits every hybrid back into a fresh out-degree-1 hybrid
sitting above it.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import AlreadyHasO1Hybrid, NotDistinctCluster, NotExtendedDC, NotO1Network
from .metric import inheritance_distance
from .network import Network, networks_equal


def is_o1(net: Network) -> bool:
    return all(len(net.children[v]) == 1 for v in range(len(net)) if net.is_hybrid(v))


def _o1_hybrids(net: Network) -> list[int]:
    return [v for v in range(len(net)) if net.is_hybrid(v) and len(net.children[v]) == 1]


def _contract_one(net: Network, v: int) -> Network:
    (c,) = net.children[v]
    arcs = {(a, b) for a, b in net.arcs if a != v and b != v}
    arcs.update((q, c) for q in net.parents[v])
    return net.derive((u for u in range(len(net)) if u != v), arcs)


def _contract_all(net: Network, pick: Callable[[Sequence[str]], str]) -> Network:
    """Contract until no out-degree-1 hybrid is left; ``pick`` chooses by label."""
    while True:
        todo = _o1_hybrids(net)
        if not todo:
            return net
        label = pick([net.labels[v] for v in todo])
        net = _contract_one(net, net.vertex(label))


def contract_o1(net: Network) -> Network:
    """Replace every out-degree-1 hybrid by its child, repeatedly."""
    if not is_o1(net):
        bad = next(v for v in range(len(net)) if net.is_hybrid(v) and len(net.children[v]) != 1)
        raise NotO1Network(
            f"hybrid {net.labels[bad]!r} has out-degree {len(net.children[bad])}"
        )
    return _contract_all(net, lambda labels: labels[0])


def expand_o1(net: Network) -> Network:
    """Insert a new parent ``_h<k>`` above every hybrid, taking over its parents."""
    if _o1_hybrids(net):
        v = _o1_hybrids(net)[0]
        raise AlreadyHasO1Hybrid(f"hybrid {net.labels[v]!r} already has out-degree 1")
    hybrids = [v for v in net.order if net.is_hybrid(v)]
    if not hybrids:
        return net
    labels = list(net.labels)
    taken = set(labels)
    arcs = {(a, b) for a, b in net.arcs if not net.is_hybrid(b)}
    k = 0
    for v in hybrids:
        while f"_h{k}" in taken:
            k += 1
        w = len(labels)
        labels.append(f"_h{k}")
        taken.add(f"_h{k}")
        arcs.update((q, w) for q in net.parents[v])
        arcs.add((w, v))
    return Network(net.taxa, labels, arcs)


def is_extended_dc(net: Network) -> bool:
    return contract_o1(net).is_dc


def _contracted_dc(net: Network, which: str) -> Network:
    out = contract_o1(net)
    try:
        out.require_dc(which)
    except NotDistinctCluster as exc:
        raise NotExtendedDC(str(exc)) from None
    return out


def d_o1(a: Network, b: Network) -> int:
    """Inheritance distance between the contractions of two extended-DC networks."""
    return inheritance_distance(_contracted_dc(a, "first network"), _contracted_dc(b, "second network"))


def o1_networks_equal(a: Network, b: Network) -> bool:
    """Equality of extended-DC networks: equal contractions and equal hybrid counts."""
    ca, cb = _contracted_dc(a, "first network"), _contracted_dc(b, "second network")
    return networks_equal(ca, cb) and _hybrid_count(a) == _hybrid_count(b)


def _hybrid_count(net: Network) -> int:
    return sum(net.is_hybrid(v) for v in range(len(net)))
