"""Cluster-preserving simplification (CPS) of DC networks.

Two steps are available: passing through a vertex (remove it and connect
each of its parents to each of its children) and deleting a redundant arc.
Both keep every surviving vertex's cluster, so vertices are named by
cluster throughout and intermediate networks stay DC.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import (
    ArcNotRedundant,
    DcnetError,
    KeepMissingTrivial,
    KeepNotSubsetOfVertices,
    NoAdmissibleInstance,
    NoSuchArc,
    NoSuchCluster,
    StepFailed,
    VertexIsLeaf,
    VertexIsRoot,
)
from .network import (
    Network,
    align_taxa,
    classify,
    format_cluster,
    is_redundant,
    networks_equal,
    redundant_arcs,
    trivial_clusters,
)


@dataclass(frozen=True)
class DeleteVertex:
    v: int


@dataclass(frozen=True)
class DeleteRedundantArc:
    a: int
    b: int


Step = Union[DeleteVertex, DeleteRedundantArc]


# -- the two elementary steps --------------------------------------------------------

def delete_vertex(net: Network, v: int) -> Network:
    """Pass through the vertex whose cluster is ``v``."""
    net.require_dc()
    x = net.vertex_of_cluster(v)
    if x == net.root:
        raise VertexIsRoot(f"cannot delete the root {net.labels[x]!r}")
    if net.is_leaf(x):
        raise VertexIsLeaf(f"cannot delete the leaf {net.labels[x]!r}")
    arcs = {(a, b) for a, b in net.arcs if a != x and b != x}
    arcs.update((q, c) for q in net.parents[x] for c in net.children[x])
    out = net.derive((u for u in range(len(net)) if u != x), arcs)
    assert out.is_dc, "pass-through deletion broke distinct clusters"
    return out


def delete_redundant_arc(net: Network, a: int, b: int) -> Network:
    """Remove the arc between the vertices with clusters ``a`` and ``b``; it must be redundant."""
    net.require_dc()
    ua, ub = net.vertex_of_cluster(a), net.vertex_of_cluster(b)
    if (ua, ub) not in net.arcs:
        raise NoSuchArc(f"no arc {net.labels[ua]} -> {net.labels[ub]}")
    if not is_redundant(net, ua, ub):
        raise ArcNotRedundant(f"arc {net.labels[ua]} -> {net.labels[ub]} is not redundant")
    return net.derive(range(len(net)), net.arcs - {(ua, ub)})


def apply_step(net: Network, step: Step) -> Network:
    if isinstance(step, DeleteVertex):
        return delete_vertex(net, step.v)
    if isinstance(step, DeleteRedundantArc):
        return delete_redundant_arc(net, step.a, step.b)
    raise TypeError(f"not a simplification step: {step!r}")


def apply_sequence(net: Network, steps: Iterable[Step]) -> Network:
    for i, step in enumerate(steps):
        try:
            net = apply_step(net, step)
        except DcnetError as exc:
            raise StepFailed(i, exc) from exc
    return net


# -- reductions -------------------------------------------------------------------

def reduction_steps(net: Network) -> list[DeleteRedundantArc]:
    """Redundant-arc deletions, in (cluster, cluster) order, that leave no redundant arc.

    An arc is tested against the arcs still present.  Reachability never
    changes under these deletions, so the original reachability relation
    stays valid while arcs are removed.
    """
    net.require_dc()
    cl = net.clusters
    children = {v: set(cs) for v, cs in enumerate(net.children)}
    removed = []
    for a, b in sorted(net.arcs, key=lambda e: (cl[e[0]], cl[e[1]])):
        if any(c != b and net.reachable(c, b) for c in children[a]):
            children[a].discard(b)
            removed.append(DeleteRedundantArc(cl[a], cl[b]))
    return removed


def transitive_reduction(net: Network) -> Network:
    """The unique network with the same vertices and reachability and no redundant arc."""
    cl = net.clusters
    gone = {(net.vertex_of_cluster(s.a), net.vertex_of_cluster(s.b)) for s in reduction_steps(net)}
    if not gone:
        return net
    out = net.derive(range(len(net)), net.arcs - gone)
    assert out.cluster_set == frozenset(cl)
    return out


def pass_through(net: Network, drop: Iterable[int]) -> Network:
    """Delete every vertex whose cluster is in ``drop``, with no arc deletions.

    Computed in one sweep: a survivor ``x`` gets an arc to a survivor ``y``
    exactly when some ``x``-to-``y`` path has all its interior vertices
    deleted.  This is what any sequence of single pass-through deletions
    produces, whatever the order.
    """
    net.require_dc()
    doomed = {net.vertex_of_cluster(c) for c in drop}
    if net.root in doomed:
        raise VertexIsRoot("cannot delete the root")
    for x in doomed:
        if net.is_leaf(x):
            raise VertexIsLeaf(f"cannot delete the leaf {net.labels[x]!r}")
    arcs = set()
    for x in range(len(net)):
        if x in doomed:
            continue
        stack = list(net.children[x])
        seen = set(stack)
        while stack:
            y = stack.pop()
            if y in doomed:
                for z in net.children[y]:
                    if z not in seen:
                        seen.add(z)
                        stack.append(z)
            else:
                arcs.add((x, y))
    return net.derive((v for v in range(len(net)) if v not in doomed), arcs)


def canonical_cps(net: Network, keep: Iterable[int],
                  deletion_order: Sequence[int] | None = None) -> Network:
    """The unique redundant-arc-free CPS of ``net`` whose clusters are exactly ``keep``.

    Built as: reduce, pass through the unwanted vertices one at a time,
    reduce again.  ``deletion_order`` overrides the default ascending
    cluster order of the pass-through deletions (the result does not depend
    on it).
    """
    net.require_dc()
    keep = frozenset(keep)
    missing = trivial_clusters(net.n) - keep
    if missing:
        raise KeepMissingTrivial(
            f"keep set lacks trivial cluster {format_cluster(min(missing), net.taxa)}"
        )
    foreign = keep - net.cluster_set
    if foreign:
        raise KeepNotSubsetOfVertices(
            f"{format_cluster(min(foreign), net.taxa)} is not a cluster of the network"
        )
    drop = sorted(net.cluster_set - keep)
    if deletion_order is not None:
        if sorted(deletion_order) != drop:
            raise ValueError("deletion_order must list exactly the clusters being removed")
        drop = list(deletion_order)
    out = transitive_reduction(net)
    for c in drop:
        out = delete_vertex(out, c)
    return transitive_reduction(out)


# -- CPS recognition --------------------------------------------------------------------

@dataclass(frozen=True)
class CpsCertificate:
    steps: tuple[Step, ...]
    start: Network
    end: Network

    def replay(self) -> Network:
        return apply_sequence(self.start, self.steps)

    def verify(self) -> bool:
        try:
            return networks_equal(self.replay(), self.end)
        except DcnetError:
            return False


@dataclass(frozen=True)
class CpsVerdict:
    is_cps: bool
    certificate: CpsCertificate | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.is_cps


def is_cps(base: Network, candidate: Network) -> CpsVerdict:
    """Decide whether ``candidate`` is a cluster-preserving simplification of ``base``.

    ``candidate`` is a CPS exactly when its clusters are clusters of
    ``base``, the two networks order their shared vertices identically, and
    every arc of ``candidate`` is an arc of the network obtained from
    ``base`` by passing through the vertices ``candidate`` lacks.  The
    certificate performs those pass-through deletions (ascending cluster
    order) and then deletes the surplus arcs, each redundant at its turn.
    """
    base.require_dc("base")
    candidate.require_dc("candidate")
    cand = align_taxa(base, candidate)
    taxa = base.taxa

    foreign = sorted(cand.cluster_set - base.cluster_set)
    if foreign:
        return CpsVerdict(False, reason=(
            f"cluster {format_cluster(foreign[0], taxa)} of the candidate "
            "is not a cluster of any vertex of the base"
        ))
    if classify(base).is_tree and not classify(cand).is_tree:
        return CpsVerdict(False, reason=(
            "the base is a tree but the candidate is not, and every CPS of a tree is a tree"
        ))

    image = [base.vertex_of_cluster(c) for c in cand.clusters]
    for u in range(len(cand)):
        for v in range(len(cand)):
            if u == v:
                continue
            in_cand = cand.reachable(u, v)
            if in_cand != base.reachable(image[u], image[v]):
                a, b = cand.cluster_name(u), cand.cluster_name(v)
                where = "the candidate but not the base" if in_cand else "the base but not the candidate"
                return CpsVerdict(False, reason=f"{a} lies above {b} in {where}")

    drop = sorted(base.cluster_set - cand.cluster_set)
    thinned = pass_through(base, drop)
    extra = sorted(cand.cluster_arcs - thinned.cluster_arcs)
    if extra:
        a, b = extra[0]
        return CpsVerdict(False, reason=(
            f"arc {format_cluster(a, taxa)} -> {format_cluster(b, taxa)} of the candidate "
            "does not arise from the base by deleting vertices"
        ))
    surplus = sorted(thinned.cluster_arcs - cand.cluster_arcs)
    steps = tuple([DeleteVertex(c) for c in drop] + [DeleteRedundantArc(a, b) for a, b in surplus])
    cert = CpsCertificate(steps, base, cand)
    assert cert.verify(), "CPS certificate failed to replay"
    return CpsVerdict(True, cert)


# -- commutation laws for pairs of steps ------------------------------------------------

COMMUTATION_CASES = ("i", "ii", "iii", "iv", "v")


def _deletable(net: Network) -> list[int]:
    return [v for v in range(len(net)) if v != net.root and not net.is_leaf(v)]


def commutation_instances(net: Network, case: str) -> list[tuple[int, ...]]:
    """Admissible instances of a commutation law, as vertex-id tuples.

    ``i``: ``(v, w)``; ``ii``/``iii``: ``(v, a, b)``; ``iv``/``v``: ``(a, b)``.
    Cases ``iv`` and ``v`` additionally require that the arcs the law
    deletes on its right-hand side are new, i.e. not already arcs of ``net``:
    without that, the left-hand side keeps an arc the right-hand side drops.
    """
    if case not in COMMUTATION_CASES:
        raise ValueError(f"unknown case {case!r}; expected one of {COMMUTATION_CASES}")
    net.require_dc()
    movable = _deletable(net)
    red = sorted(redundant_arcs(net))
    arcs = net.arcs
    if case == "i":
        return [(v, w) for i, v in enumerate(movable) for w in movable[i + 1:]]
    if case in ("ii", "iii"):
        out = []
        for v in movable:
            for a, b in red:
                if v in (a, b):
                    continue
                through_v = (a, v) in arcs and (v, b) in arcs
                if through_v == (case == "iii"):
                    out.append((v, a, b))
        return out
    if case == "iv":
        return [(a, b) for a, b in red
                if a != net.root and not any((q, b) in arcs for q in net.parents[a])]
    return [(a, b) for a, b in red
            if not net.is_leaf(b) and not any((a, c) in arcs for c in net.children[b])]


def _sides(net: Network, case: str, inst: tuple[int, ...]) -> tuple[list[Step], list[Step]]:
    cl = net.clusters
    if case == "i":
        v, w = inst
        return [DeleteVertex(cl[w]), DeleteVertex(cl[v])], [DeleteVertex(cl[v]), DeleteVertex(cl[w])]
    if case == "ii":
        v, a, b = inst
        arc = DeleteRedundantArc(cl[a], cl[b])
        return [arc, DeleteVertex(cl[v])], [DeleteVertex(cl[v]), arc]
    if case == "iii":
        v, a, b = inst
        return [DeleteRedundantArc(cl[a], cl[b]), DeleteVertex(cl[v])], [DeleteVertex(cl[v])]
    a, b = inst
    arc = DeleteRedundantArc(cl[a], cl[b])
    if case == "iv":
        return ([arc, DeleteVertex(cl[a])],
                [DeleteVertex(cl[a])] + [DeleteRedundantArc(cl[q], cl[b]) for q in net.parents[a]])
    return ([arc, DeleteVertex(cl[b])],
            [DeleteVertex(cl[b])] + [DeleteRedundantArc(cl[a], cl[c]) for c in net.children[b]])


def commutation_holds(net: Network, case: str, inst: tuple[int, ...]) -> bool:
    lhs, rhs = _sides(net, case, inst)
    try:
        return networks_equal(apply_sequence(net, lhs), apply_sequence(net, rhs))
    except StepFailed:
        return False


def commutation_check(net: Network, case: str) -> bool:
    """Evaluate both sides of a commutation law on every admissible instance in ``net``."""
    instances = commutation_instances(net, case)
    if not instances:
        raise NoAdmissibleInstance(f"no admissible instance of case {case}")
    return all(commutation_holds(net, case, inst) for inst in instances)


# -- text form of steps ----------------------------------------------------------------------

def format_step(step: Step, net: Network) -> str:
    """``D(v)`` / ``D(a,b)`` using ``net``'s labels where the cluster exists there."""

    def name(c: int) -> str:
        try:
            return net.labels[net.vertex_of_cluster(c)]
        except NoSuchCluster:
            return format_cluster(c, net.taxa)

    if isinstance(step, DeleteVertex):
        return f"D({name(step.v)})"
    return f"D({name(step.a)},{name(step.b)})"


_STEP_RE = re.compile(r"D\(\s*([^,()\s]+)\s*(?:,\s*([^,()\s]+)\s*)?\)")


def parse_steps(text: str, net: Network) -> list[Step]:
    """Parse ``D(9,3) D(7) ...`` written with ``net``'s vertex labels.

    Steps are listed in the order they are applied.
    """
    steps: list[Step] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _STEP_RE.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse step at {text[pos:]!r}")
        a, b = m.group(1), m.group(2)
        if b is None:
            steps.append(DeleteVertex(net.clusters[net.vertex(a)]))
        else:
            steps.append(DeleteRedundantArc(net.clusters[net.vertex(a)], net.clusters[net.vertex(b)]))
        pos = m.end()
    return steps
