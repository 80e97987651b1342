"""Clique attachments over a base graph, and cycle decompositions.

A star of cliques is a family of complete graphs sharing exactly one
center vertex.  Hanging such stars at chosen vertices of a base graph
produces the composite graphs this module builds and takes apart:

* ``attach_HT`` realizes the attachment with a stable labeling, so
  generated corpora are byte-for-byte reproducible;
* ``kappa`` totals the vertex counts of the attachments that contain a
  clique on three or more vertices;
* ``decompose_unicyclic`` splits a connected graph with exactly one
  cycle into that cycle, the pieces hanging off it, and the neighbor
  set whose removal separates the two;
* ``construct_cochordal_cover_HT`` emits an explicit minimum co-chordal
  edge cover when the base is bipartite and the attachment vertices
  cover its edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import graphs as _g
from .graphs import Graph, build_graph, induced_subgraph, is_connected
from .invariants import (
    CoChordalCover,
    cochordal_cover_number,
    is_bipartite,
    is_chordal,
    is_vertex_cover,
    validate_cochordal_cover,
)


@dataclass(frozen=True)
class StarOfCliquesSpec:
    """Sizes of complete graphs sharing one center; each size counts it."""

    clique_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.clique_sizes)
        object.__setattr__(self, "clique_sizes", sizes)
        if not sizes:
            raise ValueError("a star of cliques needs at least one clique")
        if any(s < 2 for s in sizes):
            raise ValueError("clique sizes must be at least 2")

    @property
    def is_star(self) -> bool:
        return all(s == 2 for s in self.clique_sizes)

    @property
    def is_star_complete(self) -> bool:
        return any(s >= 3 for s in self.clique_sizes)

    @property
    def vertex_count(self) -> int:
        return 1 + sum(s - 1 for s in self.clique_sizes)


def build_star_of_cliques(spec: StarOfCliquesSpec) -> tuple[Graph, int]:
    """The star of cliques itself, with its center vertex (always 0)."""
    center = 0
    edges = []
    nxt = 1
    for s in spec.clique_sizes:
        block = list(range(nxt, nxt + s - 1))
        nxt += s - 1
        for i, u in enumerate(block):
            edges.append((center, u))
            for v in block[i + 1:]:
                edges.append((u, v))
    return build_graph(nxt, edges), center


@dataclass(frozen=True)
class HTSpec:
    """A base graph plus stars of cliques hung at distinct vertices."""

    base: Graph
    attachments: tuple[tuple[int, StarOfCliquesSpec], ...]

    def __post_init__(self):
        att = tuple((int(v), s) for v, s in self.attachments)
        object.__setattr__(self, "attachments", att)
        seen = set()
        for v, s in att:
            if not 0 <= v < self.base.n:
                raise ValueError(f"attachment vertex {v} outside the base graph")
            if v in seen:
                raise ValueError(f"duplicate attachment vertex {v}")
            seen.add(v)
            if not isinstance(s, StarOfCliquesSpec):
                raise TypeError("attachments must carry StarOfCliquesSpec values")

    @property
    def q(self) -> int:
        return len(self.attachments)

    @property
    def p(self) -> int:
        return sum(1 for _, s in self.attachments if s.is_star)

    @property
    def attachment_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.attachments)

    def to_json_dict(self) -> dict:
        return {
            "base": _g.to_json_dict(self.base),
            "attachments": [
                {"vertex": v, "cliques": list(s.clique_sizes)}
                for v, s in self.attachments
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "HTSpec":
        base = _g.from_json_dict(d["base"])
        att = tuple(
            (int(a["vertex"]), StarOfCliquesSpec(tuple(a["cliques"])))
            for a in d["attachments"]
        )
        return cls(base, att)


def ht_layout(spec: HTSpec) -> tuple[Graph, list[list[list[int]]]]:
    """The attached graph plus, per attachment and clique, the new labels.

    Base vertices keep their labels; clique vertices are appended in
    attachment order, cliques in listed order.
    """
    edges = list(spec.base.edges)
    nxt = spec.base.n
    layout: list[list[list[int]]] = []
    for v, s in spec.attachments:
        blocks = []
        for size in s.clique_sizes:
            block = list(range(nxt, nxt + size - 1))
            nxt += size - 1
            for i, u in enumerate(block):
                edges.append((v, u))
                for w in block[i + 1:]:
                    edges.append((u, w))
            blocks.append(block)
        layout.append(blocks)
    names = None
    if spec.base.names is not None:
        extra = []
        for j, (v, s) in enumerate(spec.attachments):
            for c, size in enumerate(s.clique_sizes):
                extra += [f"a{j}c{c}_{i}" for i in range(size - 1)]
        names = tuple(spec.base.names) + tuple(extra)
    return build_graph(nxt, edges, names), layout


def attach_HT(spec: HTSpec) -> Graph:
    """The base graph with every specified star of cliques attached."""
    return ht_layout(spec)[0]


def kappa(spec: HTSpec) -> int:
    """Total vertex count of the attachments holding a clique of size >= 3.

    Zero exactly when every attachment is a plain star; otherwise at
    least 3.
    """
    return sum(s.vertex_count for _, s in spec.attachments if s.is_star_complete)


# ---------------------------------------------------------------------------
# cycle decomposition


@dataclass(frozen=True)
class UnicyclicDecomposition:
    """The cycle, the pieces hanging off it, and the separating set.

    ``parts[j]`` holds the vertices of the j-th attached piece including
    its cycle vertex ``attach_points[j]``; ``gamma`` collects the
    non-cycle neighbors of the attach points inside their pieces, and
    ``h_parts[j]`` is what is left of a piece after removing gamma and
    the attach point.  Deleting gamma from the graph leaves exactly the
    cycle and the h_parts, pairwise disconnected.
    """

    cycle: tuple[int, ...]
    attach_points: tuple[int, ...]
    parts: tuple[frozenset, ...]
    gamma: frozenset
    h_parts: tuple[frozenset, ...]

    def to_json_dict(self) -> dict:
        return {
            "cycle": list(self.cycle),
            "attach_points": list(self.attach_points),
            "parts": [sorted(p) for p in self.parts],
            "gamma": sorted(self.gamma),
            "h_parts": [sorted(p) for p in self.h_parts],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "UnicyclicDecomposition":
        return cls(
            tuple(d["cycle"]),
            tuple(d["attach_points"]),
            tuple(frozenset(p) for p in d["parts"]),
            frozenset(d["gamma"]),
            tuple(frozenset(p) for p in d["h_parts"]),
        )


def _strip_to_cycle(G: Graph) -> tuple[int, ...]:
    """Vertices of the unique cycle, in walk order from the least label."""
    alive = set(range(G.n))
    deg = {v: G.degree(v) for v in alive}
    queue = [v for v in alive if deg[v] <= 1]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for u in _g._bits(G.adj_masks[v]):
            if u in alive:
                deg[u] -= 1
                if deg[u] <= 1:
                    queue.append(u)
    if not alive or any(deg[v] != 2 for v in alive):
        raise ValueError("leaf stripping did not isolate a single cycle")
    start = min(alive)
    order = [start]
    prev = -1
    cur = start
    while True:
        nxts = [u for u in _g._bits(G.adj_masks[cur]) if u in alive and u != prev]
        nxt = min(nxts)
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return tuple(order)


def _decompose_along_cycle(G: Graph, cycle: tuple[int, ...]) -> UnicyclicDecomposition:
    cset = set(cycle)
    cyc_edges = set()
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        cyc_edges.add((min(u, v), max(u, v)))
    rest = [e for e in G.edges if e not in cyc_edges]
    R = build_graph(G.n, rest)
    comps = _g.connected_components(R)
    attach = []
    parts = []
    for comp in comps:
        on_cycle = sorted(cset & comp)
        if len(comp) == 1:
            continue
        if len(on_cycle) != 1:
            raise ValueError("a piece touches the cycle more than once; not unicyclic")
        attach.append(on_cycle[0])
        parts.append(frozenset(comp))
    order = sorted(range(len(attach)), key=lambda j: attach[j])
    attach = [attach[j] for j in order]
    parts = [parts[j] for j in order]
    gamma = set()
    h_parts = []
    for y, comp in zip(attach, parts):
        piece, _ = induced_subgraph(G, comp)
        if not is_chordal(piece)[0]:
            raise ValueError(f"piece at vertex {y} is not chordal")
        nbrs = {u for u in _g._bits(G.adj_masks[y]) if u in comp}
        gamma |= nbrs
    for y, comp in zip(attach, parts):
        h_parts.append(frozenset(comp - gamma - {y}))
    dec = UnicyclicDecomposition(
        cycle, tuple(attach), tuple(parts), frozenset(gamma), tuple(h_parts)
    )
    _check_split(G, dec)
    return dec


def _check_split(G: Graph, dec: UnicyclicDecomposition) -> None:
    # removing gamma must leave the bare cycle plus the h_parts, with no
    # edges between any two of those pieces
    H, m = _g.delete_vertices(G, dec.gamma)
    comps = [{v for v, nv in m.items() if nv in c} for c in _g.connected_components(H)]
    want = [set(dec.cycle)] + [set(h) for h in dec.h_parts if h]
    for comp in comps:
        if not any(comp <= w for w in want):
            raise AssertionError("pieces remained attached after removing gamma")
    cyc_comp = next(c for c in comps if dec.cycle[0] in c)
    if cyc_comp != set(dec.cycle):
        raise AssertionError("cycle did not separate cleanly")


def decompose_unicyclic(G: Graph) -> UnicyclicDecomposition:
    """Split a connected graph with |E| = |V| along its unique cycle.

    Raises ValueError when the graph is not of that shape or an attached
    piece fails the chordality requirement.
    """
    if not is_connected(G):
        raise ValueError("graph must be connected")
    if len(G.edges) != G.n:
        raise ValueError("graph must have exactly as many edges as vertices")
    return _decompose_along_cycle(G, _strip_to_cycle(G))


def ht_unicyclic_decomposition(spec: HTSpec) -> UnicyclicDecomposition:
    """Cycle decomposition of an attachment graph over a unicyclic base.

    The composite graph usually has many triangles inside the attached
    cliques, so the cycle is read off the base and the pieces off the
    composite.
    """
    H = spec.base
    if not is_connected(H) or len(H.edges) != H.n:
        raise ValueError("base must be connected with exactly one cycle")
    cycle = _strip_to_cycle(H)
    return _decompose_along_cycle(attach_HT(spec), cycle)


# ---------------------------------------------------------------------------
# explicit co-chordal covers for attachments over a covered bipartite base


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _star_side_parts(
    G: Graph, H: Graph, spec: HTSpec, layout, star_centers: set
) -> list[tuple[tuple[int, int], ...]]:
    """Cover the star whiskers and every base edge at a star center.

    An exact cover of the induced core (centers, their whisker tips, and
    the base edges among centers) is computed first; each core part then
    absorbs all base edges at the centers whose whisker it contains.
    """
    whisker_of = {}
    core_verts = set()
    for j, (v, s) in enumerate(spec.attachments):
        if v not in star_centers:
            continue
        core_verts.add(v)
        for block in layout[j]:
            tip = block[0]
            core_verts.add(tip)
            whisker_of[_norm_edge(v, tip)] = v
    Gp, relab = induced_subgraph(G, core_verts)
    back = {nv: ov for ov, nv in relab.items()}
    _, core_cover = cochordal_cover_number(Gp)
    parts = []
    for core_part in core_cover.parts:
        edges = {_norm_edge(back[a], back[b]) for a, b in core_part}
        hit = {whisker_of[e] for e in edges if e in whisker_of}
        for v in hit:
            for u in _g._bits(H.adj_masks[v]):
                edges.add(_norm_edge(v, u))
        parts.append(tuple(sorted(edges)))
    return parts


def _clique_side_parts(
    G: Graph, H: Graph, spec: HTSpec, layout, star_centers: set
) -> list[tuple[tuple[int, int], ...]]:
    """One part per clique on >= 3 vertices, anchored at its center.

    Each part takes the clique itself, the center's pendant edges, and
    the base edges at the center not already owned by the star side.
    """
    parts = []
    for j, (v, s) in enumerate(spec.attachments):
        if not s.is_star_complete:
            continue
        anchored = set()
        for u in _g._bits(H.adj_masks[v]):
            if u not in star_centers:
                anchored.add(_norm_edge(v, u))
        for u in _g._bits(G.adj_masks[v]):
            if G.degree(u) == 1:
                anchored.add(_norm_edge(v, u))
        for block, size in zip(layout[j], s.clique_sizes):
            if size < 3:
                continue
            U = [v] + block
            edges = set(anchored)
            for a in range(len(U)):
                for b in range(a + 1, len(U)):
                    edges.add(_norm_edge(U[a], U[b]))
            parts.append(tuple(sorted(edges)))
    return parts


def construct_cochordal_cover_HT(spec: HTSpec) -> CoChordalCover:
    """Explicit minimum co-chordal edge cover of the attached graph.

    Needs a bipartite base whose edges are all touched by attachment
    vertices.  Every emitted part is re-validated; a failure there is a
    bug, not bad input, and raises AssertionError.
    """
    H = spec.base
    if not is_bipartite(H)[0]:
        raise ValueError("base graph must be bipartite")
    T = spec.attachment_vertices
    if not is_vertex_cover(H, T):
        raise ValueError("attachment vertices must form a vertex cover of the base")
    G, layout = ht_layout(spec)
    star_centers = {v for v, s in spec.attachments if s.is_star}
    parts: list[tuple[tuple[int, int], ...]] = []
    if star_centers:
        parts += _star_side_parts(G, H, spec, layout, star_centers)
    parts += _clique_side_parts(G, H, spec, layout, star_centers)
    cert = CoChordalCover("cochordal_cover", tuple(parts))
    if not validate_cochordal_cover(G, cert):
        raise AssertionError("constructed cover failed validation")
    return cert
