"""Finite simple graphs on dense integer vertices 0..n-1.

Graphs are immutable values. Edges are stored canonically as sorted
(min, max) pairs in lexicographic order, so two graphs compare equal iff
they have the same vertex count and edge list. Adjacency is also kept as
per-vertex bitmasks because everything downstream (matching search, cover
enumeration, corpus canonicalization) runs on masks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from ._caps import MAX_CONSTRUCT_VERTICES, CapExceeded

VertexSet = frozenset


def _canon_edges(n: int, edges: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    seen = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop edge ({u},{u}) not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        seen.add((min(u, v), max(u, v)))
    return tuple(sorted(seen))


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    names: tuple[str, ...] | None = None
    # per-vertex neighbor bitmasks, derived in __post_init__
    adj_masks: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        object.__setattr__(self, "adj_masks", tuple(masks))

    def adj(self, u: int, v: int) -> bool:
        return bool(self.adj_masks[u] >> v & 1)

    def degree(self, u: int) -> int:
        return self.adj_masks[u].bit_count()

    @property
    def vertices(self) -> range:
        return range(self.n)

    def __str__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


def build_graph(n: int, edges: Iterable[tuple[int, int]], names=None) -> Graph:
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if n > MAX_CONSTRUCT_VERTICES:
        raise CapExceeded("vertex count", MAX_CONSTRUCT_VERTICES, n)
    if names is not None:
        names = tuple(names)
        if len(names) != n:
            raise ValueError("names length must equal n")
    return Graph(n, _canon_edges(n, edges), names)


def neighborhood(G: Graph, u: int, closed: bool = False) -> VertexSet:
    if not 0 <= u < G.n:
        raise ValueError(f"vertex {u} out of range")
    mask = G.adj_masks[u]
    if closed:
        mask |= 1 << u
    return frozenset(_bits(mask))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def delete_vertices(G: Graph, U) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on V minus U, plus the old->new relabeling."""
    U = frozenset(U)
    for v in U:
        if not 0 <= v < G.n:
            raise ValueError(f"vertex {v} out of range")
    keep = [v for v in range(G.n) if v not in U]
    relabel = {old: new for new, old in enumerate(keep)}
    edges = [(relabel[u], relabel[v]) for u, v in G.edges if u in relabel and v in relabel]
    names = tuple(G.names[v] for v in keep) if G.names else None
    return Graph(len(keep), tuple(sorted(edges)), names), relabel


def induced_subgraph(G: Graph, A) -> tuple[Graph, dict[int, int]]:
    A = frozenset(A)
    return delete_vertices(G, frozenset(range(G.n)) - A)


def complement(G: Graph) -> Graph:
    edges = [
        (u, v)
        for u in range(G.n)
        for v in range(u + 1, G.n)
        if not G.adj(u, v)
    ]
    return Graph(G.n, tuple(edges), G.names)


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    n = G1.n + G2.n
    if n > MAX_CONSTRUCT_VERTICES:
        raise CapExceeded("vertex count", MAX_CONSTRUCT_VERTICES, n)
    edges = list(G1.edges) + [(u + G1.n, v + G1.n) for u, v in G2.edges]
    names = None
    if G1.names is not None and G2.names is not None:
        names = G1.names + G2.names
    return Graph(n, tuple(sorted(edges)), names)


def is_simplicial(G: Graph, v: int) -> bool:
    """True iff the neighbors of v form a clique (degree <= 1 counts)."""
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} out of range")
    nbrs = list(_bits(G.adj_masks[v]))
    for i, a in enumerate(nbrs):
        for b in nbrs[i + 1:]:
            if not G.adj(a, b):
                return False
    return True


def connected_components(G: Graph) -> list[VertexSet]:
    """Partition of V ordered by least vertex."""
    seen = 0
    out = []
    for start in range(G.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= G.adj_masks[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(frozenset(_bits(comp)))
    return out


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(connected_components(G)) == 1


# named constructors

def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    return build_graph(k, [(i, i + 1) for i in range(k - 1)])


def complete_graph(k: int) -> Graph:
    return build_graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


# serialization

def to_json_dict(G: Graph) -> dict:
    d = {"n": G.n, "edges": [[u, v] for u, v in G.edges]}
    if G.names is not None:
        d["names"] = list(G.names)
    return d


def from_json_dict(d: dict) -> Graph:
    return build_graph(d["n"], [tuple(e) for e in d["edges"]], d.get("names"))


def to_json(G: Graph) -> str:
    return json.dumps(to_json_dict(G))


def from_json(s: str) -> Graph:
    return from_json_dict(json.loads(s))


def to_text(G: Graph) -> str:
    lines = [str(G.n)]
    lines += [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def from_text(s: str) -> Graph:
    lines = [ln for ln in s.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph text")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        u, v = ln.split()
        edges.append((int(u), int(v)))
    return build_graph(n, edges)
