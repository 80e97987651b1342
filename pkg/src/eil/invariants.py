"""Exact combinatorial invariants with checkable certificates.

Every answer that is not a plain boolean ships with a witness object, and
every witness type has a validator that rechecks it from the definition,
independent of the search that produced it.

The hard invariants (induced matching, co-chordal cover number) are
NP-hard in general; the implementations are exact exponential searches
with explicit budgets. When a budget runs out the caller gets an interval
inside SearchBudgetExceeded, never a silently wrong number.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Optional

from ._caps import COCHORD_NODE_BUDGET, MAX_VERTICES, CapExceeded, SearchBudgetExceeded
from .graphs import Graph, VertexSet, _bits, complement, induced_subgraph


# ---------------------------------------------------------------- certificates

@dataclass(frozen=True)
class MatchingCertificate:
    kind: str  # "matching" | "induced_matching"
    edges: tuple[tuple[int, int], ...]

    def to_json_dict(self):
        return {"kind": self.kind, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class CoChordalCover:
    kind: str
    parts: tuple[tuple[tuple[int, int], ...], ...]

    def to_json_dict(self):
        return {"kind": self.kind, "parts": [[list(e) for e in part] for part in self.parts]}


@dataclass(frozen=True)
class EliminationOrder:
    kind: str
    ordering: tuple[int, ...]

    def to_json_dict(self):
        return {"kind": self.kind, "ordering": list(self.ordering)}


@dataclass(frozen=True)
class Bipartition:
    kind: str
    left: frozenset
    right: frozenset

    def to_json_dict(self):
        return {"kind": self.kind, "left": sorted(self.left), "right": sorted(self.right)}


@dataclass(frozen=True)
class VertexCoverList:
    kind: str
    covers: tuple[frozenset, ...]

    def to_json_dict(self):
        return {"kind": self.kind, "covers": [sorted(c) for c in self.covers]}


def certificate_from_json(s: str):
    d = json.loads(s) if isinstance(s, str) else s
    kind = d["kind"]
    if kind in ("matching", "induced_matching"):
        return MatchingCertificate(kind, tuple(tuple(e) for e in d["edges"]))
    if kind == "cochordal_cover":
        return CoChordalCover(kind, tuple(tuple(tuple(e) for e in part) for part in d["parts"]))
    if kind == "elimination_order":
        return EliminationOrder(kind, tuple(d["ordering"]))
    if kind == "bipartition":
        return Bipartition(kind, frozenset(d["left"]), frozenset(d["right"]))
    if kind == "vertex_covers":
        return VertexCoverList(kind, tuple(frozenset(c) for c in d["covers"]))
    raise ValueError(f"unknown certificate kind {kind!r}")


# validators recheck witnesses straight from the definitions

def validate_matching(G: Graph, cert: MatchingCertificate) -> bool:
    used = set()
    for u, v in cert.edges:
        if not G.adj(u, v) or u in used or v in used:
            return False
        used.update((u, v))
    if cert.kind == "induced_matching":
        for (a, b), (c, d) in itertools.combinations(cert.edges, 2):
            if any(G.adj(x, y) for x in (a, b) for y in (c, d)):
                return False
    return True


def validate_elimination_order(G: Graph, cert: EliminationOrder) -> bool:
    if sorted(cert.ordering) != list(range(G.n)):
        return False
    remaining = (1 << G.n) - 1
    for v in cert.ordering:
        nbrs = list(_bits(G.adj_masks[v] & remaining))
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1:]:
                if not G.adj(a, b):
                    return False
        remaining &= ~(1 << v)
    return True


def validate_bipartition(G: Graph, cert: Bipartition) -> bool:
    if cert.left & cert.right or cert.left | cert.right != frozenset(range(G.n)):
        return False
    return all(
        (u in cert.left) != (v in cert.left)
        for u, v in G.edges
    )


def validate_odd_cycle(G: Graph, cycle: tuple[int, ...]) -> bool:
    k = len(cycle)
    if k % 2 == 0 or k < 3 or len(set(cycle)) != k:
        return False
    return all(G.adj(cycle[i], cycle[(i + 1) % k]) for i in range(k))


def validate_induced_cycle(G: Graph, cycle: tuple[int, ...]) -> bool:
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = G.adj(cycle[i], cycle[j])
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                return False
    return True


def validate_cochordal_cover(G: Graph, cert: CoChordalCover) -> bool:
    covered = set()
    for part in cert.parts:
        for u, v in part:
            if not G.adj(u, v):
                return False
            covered.add((min(u, v), max(u, v)))
        if not _edge_set_is_cochordal(G.n, part):
            return False
    return covered == set(G.edges)


def _edge_set_is_cochordal(n: int, part) -> bool:
    # evaluated on the part's incident vertices; universal vertices of the
    # complement never break chordality so the convention is harmless
    verts = sorted({v for e in part for v in e})
    idx = {v: i for i, v in enumerate(verts)}
    H = Graph(len(verts), tuple(sorted((min(idx[u], idx[v]), max(idx[u], idx[v])) for u, v in part)))
    return is_chordal(complement(H))[0]


# ---------------------------------------------------------------- matchings

def matching_number(G: Graph) -> tuple[int, MatchingCertificate]:
    if G.n > MAX_VERTICES:
        raise CapExceeded("vertex count", MAX_VERTICES, G.n)
    memo = {}

    def rec(mask):
        if mask in memo:
            return memo[mask]
        v = None
        m = mask
        while m:
            low = m & -m
            u = low.bit_length() - 1
            if G.adj_masks[u] & mask:
                v = u
                break
            m ^= low
        if v is None:
            memo[mask] = (0, ())
            return memo[mask]
        best = rec(mask & ~(1 << v))
        for u in _bits(G.adj_masks[v] & mask):
            size, w = rec(mask & ~(1 << v) & ~(1 << u))
            if size + 1 > best[0]:
                best = (size + 1, w + ((v, u),))
        memo[mask] = best
        return best

    size, edges = rec((1 << G.n) - 1)
    cert = MatchingCertificate("matching", tuple(sorted((min(u, v), max(u, v)) for u, v in edges)))
    return size, cert


def induced_matching_number(G: Graph) -> tuple[int, MatchingCertificate]:
    if G.n > MAX_VERTICES:
        raise CapExceeded("vertex count", MAX_VERTICES, G.n)
    closed = tuple(G.adj_masks[v] | (1 << v) for v in range(G.n))
    memo = {}

    def rec(mask):
        if mask in memo:
            return memo[mask]
        v = None
        m = mask
        while m:
            low = m & -m
            u = low.bit_length() - 1
            if G.adj_masks[u] & mask:
                v = u
                break
            m ^= low
        if v is None:
            memo[mask] = (0, ())
            return memo[mask]
        best = rec(mask & ~(1 << v))
        for u in _bits(G.adj_masks[v] & mask):
            # taking edge (v,u) removes both closed neighborhoods, which is
            # exactly the induced-matching constraint for later edges
            size, w = rec(mask & ~closed[v] & ~closed[u])
            if size + 1 > best[0]:
                best = (size + 1, w + ((v, u),))
        memo[mask] = best
        return best

    size, edges = rec((1 << G.n) - 1)
    cert = MatchingCertificate("induced_matching", tuple(sorted((min(u, v), max(u, v)) for u, v in edges)))
    return size, cert


# ---------------------------------------------------------------- cycles / chordality

def find_induced_cycle(G: Graph, min_len: int) -> Optional[tuple[int, ...]]:
    """Shortest induced cycle of length >= min_len, or None.

    Breadth-first over chordless paths, each cycle discovered from its
    least vertex, so the first hit is shortest.
    """
    if G.n > MAX_VERTICES:
        raise CapExceeded("vertex count", MAX_VERTICES, G.n)
    for target_len in range(max(min_len, 3), G.n + 1):
        hit = _induced_cycle_of_length(G, target_len)
        if hit is not None:
            return hit
    return None


def _induced_cycle_of_length(G: Graph, k: int) -> Optional[tuple[int, ...]]:
    for s in range(G.n):
        # chordless paths (s, v1, ..., vj) with every vi > s
        stack = [((s,), 1 << s)]
        while stack:
            path, mask = stack.pop()
            last = path[-1]
            for w in _bits(G.adj_masks[last] & ~mask):
                if w <= s:
                    continue
                if len(path) + 1 == k:
                    # closing vertex: touches s and last, nothing between
                    if not G.adj(w, s):
                        continue
                    if any(G.adj(w, p) for p in path[1:-1]):
                        continue
                    if w < path[1]:
                        continue  # one orientation per cycle
                    return path + (w,)
                # interior vertex: touches only `last` so far
                if any(G.adj(w, p) for p in path[:-1]):
                    continue
                stack.append((path + (w,), mask | (1 << w)))
    return None


def is_chordal(G: Graph) -> tuple[bool, EliminationOrder | tuple[int, ...]]:
    """Perfect elimination order, or an induced cycle of length >= 4."""
    remaining = (1 << G.n) - 1
    order = []
    while remaining:
        found = None
        for v in _bits(remaining):
            nbrs = list(_bits(G.adj_masks[v] & remaining))
            if all(G.adj(a, b) for a, b in itertools.combinations(nbrs, 2)):
                found = v
                break
        if found is None:
            cycle = find_induced_cycle(G, 4)
            assert cycle is not None, "no simplicial vertex forces a hole"
            return False, cycle
        order.append(found)
        remaining &= ~(1 << found)
    return True, EliminationOrder("elimination_order", tuple(order))


def is_cochordal(G: Graph) -> bool:
    return is_chordal(complement(G))[0]


def is_weakly_chordal(G: Graph) -> bool:
    if G.n > MAX_VERTICES:
        raise CapExceeded("vertex count", MAX_VERTICES, G.n)
    if find_induced_cycle(G, 5) is not None:
        return False
    return find_induced_cycle(complement(G), 5) is None


def is_bipartite(G: Graph) -> tuple[bool, Bipartition | tuple[int, ...]]:
    color: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for start in range(G.n):
        if start in color:
            continue
        color[start] = 0
        parent[start] = None
        queue = [start]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for y in _bits(G.adj_masks[x]):
                if y not in color:
                    color[y] = 1 - color[x]
                    parent[y] = x
                    queue.append(y)
                elif color[y] == color[x]:
                    return False, _odd_cycle(parent, x, y)
    left = frozenset(v for v, c in color.items() if c == 0)
    right = frozenset(range(G.n)) - left
    return True, Bipartition("bipartition", left, right)


def _odd_cycle(parent, x, y) -> tuple[int, ...]:
    ax = [x]
    while parent[ax[-1]] is not None:
        ax.append(parent[ax[-1]])
    ay = [y]
    while parent[ay[-1]] is not None:
        ay.append(parent[ay[-1]])
    in_ay = set(ay)
    lca = next(v for v in ax if v in in_ay)
    px = ax[: ax.index(lca) + 1]
    py = ay[: ay.index(lca) + 1]
    return tuple(px + py[-2::-1])


def is_cameron_walker(G: Graph) -> bool:
    """Induced matching number equals matching number."""
    return induced_matching_number(G)[0] == matching_number(G)[0]


# ---------------------------------------------------------------- covers

def maximal_independent_sets(G: Graph) -> list[int]:
    """All maximal independent sets as bitmasks (pivoting Bron-Kerbosch)."""
    full = (1 << G.n) - 1
    nonadj = [~(G.adj_masks[v] | (1 << v)) & full for v in range(G.n)]
    out = []

    def bk(r, p, x):
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best = pivot
        best_deg = -1
        for u in _bits(pivot_pool):
            d = (nonadj[u] & p).bit_count()
            if d > best_deg:
                best_deg = d
                best = u
        for v in _bits(p & ~nonadj[best]):
            bk(r | (1 << v), p & nonadj[v], x & nonadj[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk(0, full, 0)
    return out


def minimal_vertex_covers(G: Graph) -> VertexCoverList:
    """Complete list of minimal vertex covers (complements of maximal
    independent sets), sorted by size then lexicographically."""
    if G.n > MAX_VERTICES:
        raise CapExceeded("vertex count", MAX_VERTICES, G.n)
    full = (1 << G.n) - 1
    covers = [frozenset(_bits(full & ~mis)) for mis in maximal_independent_sets(G)]
    covers.sort(key=lambda c: (len(c), sorted(c)))
    return VertexCoverList("vertex_covers", tuple(covers))


def is_vertex_cover(G: Graph, C) -> bool:
    C = frozenset(C)
    if any(not 0 <= v < G.n for v in C):
        raise ValueError("cover vertex out of range")
    return all(u in C or v in C for u, v in G.edges)


# ---------------------------------------------------------------- cochord

def _minimal_chordal_completions(H: Graph, budget: list[int]) -> list[frozenset]:
    """All inclusion-minimal chordal fills of H, as frozensets of added edges.

    Branches on the chords of an induced cycle of length >= 4; every
    minimal fill survives because a non-chordal intermediate graph always
    has an induced long cycle and the target fill must chord it. The final
    inclusion filter removes the non-minimal fills the branching also
    produces.
    """
    fills = set()
    seen_states = set()

    def rec(extra: frozenset):
        if budget[0] <= 0:
            raise SearchBudgetExceeded("chordal completion enumeration", 0, 0)
        budget[0] -= 1
        if extra in seen_states:
            return
        seen_states.add(extra)
        Hx = Graph(H.n, tuple(sorted(set(H.edges) | set(extra))))
        cycle = find_induced_cycle(Hx, 4)
        if cycle is None:
            fills.add(extra)
            return
        k = len(cycle)
        for i in range(k):
            for j in range(i + 2, k):
                if i == 0 and j == k - 1:
                    continue
                e = (min(cycle[i], cycle[j]), max(cycle[i], cycle[j]))
                rec(extra | {e})

    rec(frozenset())
    minimal = [f for f in fills if not any(g < f for g in fills)]
    minimal.sort(key=lambda f: (len(f), sorted(f)))
    return minimal


def cochordal_cover_number(
    G: Graph, node_budget: int = COCHORD_NODE_BUDGET
) -> tuple[int, CoChordalCover]:
    """Exact co-chordal cover number with an optimal cover witness.

    A subgraph of G is co-chordal iff its edges avoid the fill of some
    minimal chordal completion of the complement of G, so the problem is
    an exact set cover of E(G) by the completions' avoided-edge sets.
    Raises SearchBudgetExceeded carrying [lower, upper] when the node
    budget runs out.
    """
    edges = list(G.edges)
    if not edges:
        return 0, CoChordalCover("cochordal_cover", ())
    nu = induced_matching_number(G)[0]
    budget = [node_budget]
    try:
        fills = _minimal_chordal_completions(complement(G), budget)
    except SearchBudgetExceeded:
        raise SearchBudgetExceeded("cochord", nu, len(edges)) from None

    candidate_sets = []
    for fill in fills:
        avoided = frozenset(e for e in edges if e not in fill)
        candidate_sets.append(avoided)
    candidate_sets = sorted(set(candidate_sets), key=lambda s: (-len(s), sorted(s)))

    full = frozenset(edges)
    best: list = [None]

    def greedy_upper():
        covered: frozenset = frozenset()
        picked = []
        while covered != full:
            nxt = max(candidate_sets, key=lambda s: len(s - covered))
            if not (nxt - covered):
                return None
            picked.append(nxt)
            covered |= nxt
        return picked

    g = greedy_upper()
    if g is not None:
        best[0] = g

    def cover_rec(covered: frozenset, picked: list):
        if budget[0] <= 0:
            raise SearchBudgetExceeded("cochord cover search", 0, 0)
        budget[0] -= 1
        if best[0] is not None and len(picked) >= len(best[0]):
            return
        if covered == full:
            best[0] = list(picked)
            return
        # branch on the uncovered edge with fewest candidates
        uncovered = full - covered
        e = min(uncovered, key=lambda e: sum(1 for s in candidate_sets if e in s))
        for s in candidate_sets:
            if e in s:
                picked.append(s)
                cover_rec(covered | s, picked)
                picked.pop()

    try:
        cover_rec(frozenset(), [])
    except SearchBudgetExceeded:
        upper = len(best[0]) if best[0] is not None else len(edges)
        raise SearchBudgetExceeded("cochord", nu, upper) from None

    parts = tuple(tuple(sorted(s)) for s in best[0])
    cert = CoChordalCover("cochordal_cover", parts)
    return len(parts), cert


def cochordal_cover_interval(
    G: Graph, node_budget: int = COCHORD_NODE_BUDGET
) -> tuple[int, int, Optional[CoChordalCover], bool]:
    """(lower, upper, witness or None, exact flag); never raises on budget."""
    try:
        k, cert = cochordal_cover_number(G, node_budget)
        return k, k, cert, True
    except SearchBudgetExceeded as e:
        return e.lower, e.upper, None, False
