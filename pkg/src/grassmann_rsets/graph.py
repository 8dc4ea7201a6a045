"""Grassmann graphs and automorphism group orders of small graphs.

The order is computed along a stabiliser chain: at each level the orbit of
a base vertex under the pointwise stabiliser of the earlier base points is
found by asking, for every candidate in its refined cell, whether some
automorphism maps one to the other.  Each such question is answered by
individualisation plus equitable refinement with backtracking, and every
leaf is checked to be a genuine automorphism.  The group order is the
product of the orbit lengths.
"""

from __future__ import annotations

from typing import Optional

from .field import FieldSpec
from .subspace import BudgetExceeded, GrassmannianIndex, enumerate_grassmannian, meet

MAX_VERTICES = 256


class Graph:
    """Simple undirected graph on vertices ``0..n-1`` with adjacency sets."""

    def __init__(self, adj):
        self.adj = tuple(frozenset(a) for a in adj)

    @classmethod
    def from_edges(cls, num_vertices: int, edges) -> Graph:
        adj = [set() for _ in range(num_vertices)]
        for u, v in edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return cls(adj)

    def __len__(self):
        return len(self.adj)

    def edges(self):
        return [(u, v) for u in range(len(self.adj)) for v in sorted(self.adj[u]) if u < v]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def edge_list_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges())


class GrassmannGraph(Graph):
    """Vertices ``G_k(F_q^n)``; edges join planes at distance 1."""

    def __init__(self, index: GrassmannianIndex, adj):
        super().__init__(adj)
        self.index = index


def grassmann_graph(n: int, k: int, field: FieldSpec) -> GrassmannGraph:
    G = enumerate_grassmannian(n, k, field)
    adj = [set() for _ in range(len(G))]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if meet(G[i], G[j]).dim == k - 1:
                adj[i].add(j)
                adj[j].add(i)
    return GrassmannGraph(G, adj)


def parse_edge_list(text: str, num_vertices: Optional[int] = None) -> Graph:
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            u, v = line.split()
            edges.append((int(u), int(v)))
    if num_vertices is None:
        num_vertices = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(num_vertices, edges)


# --- partition refinement ----------------------------------------------------------


def _refine(adj, cells):
    """Coarsest equitable refinement of an ordered partition.

    Splitting depends only on neighbour counts and cell positions, never on
    vertex labels, so refinement commutes with graph automorphisms.
    """
    cells = [list(c) for c in cells]
    while True:
        for s in range(len(cells)):
            count = {}
            for v in cells[s]:
                for w in adj[v]:
                    count[w] = count.get(w, 0) + 1
            new_cells = []
            split = False
            for c in cells:
                if len(c) == 1:
                    new_cells.append(c)
                    continue
                groups = {}
                for v in c:
                    groups.setdefault(count.get(v, 0), []).append(v)
                if len(groups) > 1:
                    split = True
                    new_cells.extend(groups[key] for key in sorted(groups))
                else:
                    new_cells.append(c)
            if split:
                cells = new_cells
                break
        else:
            return cells


def _individualize(cells, v):
    for i, c in enumerate(cells):
        if v in c:
            rest = [w for w in c if w != v]
            return cells[:i] + [[v]] + ([rest] if rest else []) + cells[i + 1 :], i
    raise KeyError(v)


def _shape(cells):
    return [len(c) for c in cells]


def _is_automorphism(adj, perm) -> bool:
    return all({perm[w] for w in adj[v]} == adj[perm[v]] for v in range(len(adj)))


def _descend(adj, left, right):
    if _shape(left) != _shape(right):
        return None
    if all(len(c) == 1 for c in left):
        perm = [0] * len(adj)
        for a, b in zip(left, right):
            perm[a[0]] = b[0]
        return perm if _is_automorphism(adj, perm) else None
    i = next(i for i, c in enumerate(left) if len(c) > 1)
    x = min(left[i])
    left2, _ = _individualize(left, x)
    left2 = _refine(adj, left2)
    for y in sorted(right[i]):
        right2, _ = _individualize(right, y)
        found = _descend(adj, left2, _refine(adj, right2))
        if found is not None:
            return found
    return None


def _partition_after(adj, seq):
    cells = _refine(adj, [list(range(len(adj)))])
    trail = []
    for v in seq:
        cells, i = _individualize(cells, v)
        trail.append(i)
        cells = _refine(adj, cells)
    return cells, trail


def find_automorphism(graph: Graph, source_seq, target_seq) -> Optional[list[int]]:
    """An automorphism mapping ``source_seq[i]`` to ``target_seq[i]`` for all ``i``."""
    adj = graph.adj
    left, lt = _partition_after(adj, source_seq)
    right, rt = _partition_after(adj, target_seq)
    if lt != rt:
        return None
    return _descend(adj, left, right)


def _orbit(start, gens):
    orbit = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for g in gens:
            w = g[v]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


def automorphism_group_order(graph: Graph, max_vertices: int = MAX_VERTICES) -> int:
    if len(graph) > max_vertices:
        raise BudgetExceeded(f"{len(graph)} vertices exceed the automorphism budget {max_vertices}")
    adj = graph.adj
    order = 1
    base: list[int] = []
    while True:
        cells, _ = _partition_after(adj, base)
        cell = next((c for c in cells if len(c) > 1), None)
        if cell is None:
            return order
        v = min(cell)
        gens: list[list[int]] = []
        orbit = {v}
        for w in sorted(cell):
            if w in orbit:
                continue
            g = find_automorphism(graph, base + [v], base + [w])
            if g is not None:
                gens.append(g)
                orbit = _orbit(v, gens)
        order *= len(orbit)
        base.append(v)
