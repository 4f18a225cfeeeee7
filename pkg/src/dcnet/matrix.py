"""Adjacency and inheritance (path-count) matrices.

Rows and columns follow the network's topological order, so the adjacency
matrix is strictly upper triangular and the inheritance matrix is upper
unitriangular.  Entries are Python ints: path counts can grow factorially.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .network import Network

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class VertexMatrix:
    """Square integer matrix indexed by vertex ids through ``order``."""

    order: tuple[int, ...]
    rows: Rows

    def __getitem__(self, key: tuple[int, int]) -> int:
        u, v = key
        pos = self.position
        return self.rows[pos[u]][pos[v]]

    @property
    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def __len__(self) -> int:
        return len(self.order)

    def reordered(self, order: Sequence[int]) -> list[list[int]]:
        """Plain nested lists with rows/columns in ``order``."""
        pos = self.position
        idx = [pos[v] for v in order]
        return [[self.rows[i][j] for j in idx] for i in idx]


class AdjacencyMatrix(VertexMatrix):
    pass


class InheritanceMatrix(VertexMatrix):
    pass


def adjacency_matrix(net: Network) -> AdjacencyMatrix:
    order = net.order
    pos = {v: i for i, v in enumerate(order)}
    m = len(order)
    rows = [[0] * m for _ in range(m)]
    for u, v in net.arcs:
        rows[pos[u]][pos[v]] = 1
    return AdjacencyMatrix(tuple(order), tuple(tuple(r) for r in rows))


def max_path_length(net: Network) -> int:
    """Length (in arcs) of the longest directed path."""
    longest = [0] * len(net)
    for v in reversed(net.order):
        if net.children[v]:
            longest[v] = 1 + max(longest[c] for c in net.children[v])
    return longest[net.root]


def inheritance_matrix(net: Network) -> InheritanceMatrix:
    """``H[u][v]`` = number of directed paths from ``u`` to ``v`` (length 0 included).

    Each row is its unit vector plus the sum of its children's rows, filled
    in reverse topological order.
    """
    order = net.order
    pos = {v: i for i, v in enumerate(order)}
    m = len(order)
    rows: list[list[int]] = [[] for _ in range(m)]
    for u in reversed(order):
        row = [0] * m
        row[pos[u]] = 1
        for c in net.children[u]:
            crow = rows[pos[c]]
            # columns before c's position are zero in c's row
            for j in range(pos[c], m):
                if crow[j]:
                    row[j] += crow[j]
        rows[pos[u]] = row
    return InheritanceMatrix(tuple(order), tuple(tuple(r) for r in rows))


def count_paths_oracle(net: Network, u: int, v: int) -> int:
    """Count ``u``-to-``v`` paths by listing every one of them.

    Exponential; meant for cross-checking the DP on small networks.
    """
    count = 0
    stack = [(u,)]
    while stack:
        path = stack.pop()
        last = path[-1]
        if last == v:
            count += 1
            continue
        for c in net.children[last]:
            stack.append(path + (c,))
    return count


# -- exact integer matrix helpers ---------------------------------------------------

def identity(m: int) -> list[list[int]]:
    return [[int(i == j) for j in range(m)] for i in range(m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    m, k = len(a), len(b)
    p = len(b[0]) if k else 0
    out = [[0] * p for _ in range(m)]
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(p):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return out


def matsub(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matadd(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def power_sum(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """``I + A + A^2 + ...`` for a nilpotent ``A``, stopping at the first zero power."""
    m = len(a)
    total = identity(m)
    power = [list(r) for r in a]
    while any(any(r) for r in power):
        total = matadd(total, power)
        power = matmul(power, a)
    return total


def invert_unitriangular(h: Sequence[Sequence[int]]) -> list[list[int]]:
    """Exact inverse of an upper unitriangular integer matrix."""
    m = len(h)
    for i in range(m):
        if h[i][i] != 1 or any(h[i][j] for j in range(i)):
            raise ValueError("matrix is not upper unitriangular")
    inv = identity(m)
    for col in range(m):
        for i in range(col - 1, -1, -1):
            inv[i][col] = -sum(h[i][t] * inv[t][col] for t in range(i + 1, col + 1))
    return inv


def verify_inverse_identity(net: Network) -> bool:
    """Whether ``(I - A) H == I`` holds exactly."""
    a = adjacency_matrix(net).rows
    h = inheritance_matrix(net).rows
    m = len(a)
    return matmul(matsub(identity(m), a), h) == identity(m)


def network_from_inheritance(h: InheritanceMatrix, template: Network) -> Network:
    """Rebuild a network from its inheritance matrix via ``A = I - H^-1``.

    Vertex labels and taxa are taken from ``template``; only the arcs come
    from the matrix.
    """
    inv = invert_unitriangular(h.rows)
    a = matsub(identity(len(h)), inv)
    arcs = []
    for i, u in enumerate(h.order):
        for j, v in enumerate(h.order):
            if a[i][j] not in (0, 1):
                raise ValueError(f"recovered adjacency entry {a[i][j]} is not 0/1")
            if a[i][j]:
                arcs.append((u, v))
    return Network(template.taxa, template.labels, arcs)
