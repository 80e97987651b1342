"""Independent brute-force oracles used to freeze expected test values.

Everything here is deliberately naive: exhaustive subset or product
enumeration, pure Python, no shared code with the package algorithms
beyond the Graph value type. Oracle complexity is exponential; callers
keep inputs tiny (n <= 7 or so).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from eil.graphs import Graph, complement


# -- matchings --

def all_matchings(G: Graph):
    edges = list(G.edges)
    for k in range(len(edges) + 1):
        for combo in itertools.combinations(edges, k):
            used = set()
            ok = True
            for u, v in combo:
                if u in used or v in used:
                    ok = False
                    break
                used.add(u)
                used.add(v)
            if ok:
                yield combo


def matching_number(G: Graph) -> int:
    return max(len(m) for m in all_matchings(G))


def is_induced_matching(G: Graph, combo) -> bool:
    used = set()
    for u, v in combo:
        if u in used or v in used:
            return False
        used.update((u, v))
    for (a, b), (c, d) in itertools.combinations(combo, 2):
        for x in (a, b):
            for y in (c, d):
                if G.adj(x, y):
                    return False
    return True


def induced_matching_number(G: Graph) -> int:
    best = 0
    for m in all_matchings(G):
        if len(m) > best and is_induced_matching(G, m):
            best = len(m)
    return best


# -- vertex covers / independent sets --

def is_vertex_cover(G: Graph, C) -> bool:
    C = set(C)
    return all(u in C or v in C for u, v in G.edges)


def minimal_vertex_covers(G: Graph):
    covers = []
    verts = list(range(G.n))
    for k in range(G.n + 1):
        for combo in itertools.combinations(verts, k):
            s = frozenset(combo)
            if is_vertex_cover(G, s) and not any(c <= s for c in covers):
                covers.append(s)
    return covers


# -- chordality / induced cycles --

def has_induced_cycle_at_least(G: Graph, min_len: int) -> bool:
    """Exhaustive check over vertex subsets: some induced subgraph is a cycle."""
    for k in range(min_len, G.n + 1):
        for combo in itertools.combinations(range(G.n), k):
            sub_edges = [(u, v) for u, v in G.edges if u in combo and v in combo]
            if len(sub_edges) != k:
                continue
            deg = {v: 0 for v in combo}
            for u, v in sub_edges:
                deg[u] += 1
                deg[v] += 1
            if all(d == 2 for d in deg.values()) and _is_connected_on(combo, sub_edges):
                return True
    return False


def _is_connected_on(verts, edges):
    verts = list(verts)
    if not verts:
        return True
    adj = {v: set() for v in verts}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


def is_chordal(G: Graph) -> bool:
    return not has_induced_cycle_at_least(G, 4)


def is_cochordal(G: Graph) -> bool:
    return is_chordal(complement(G))


def is_weakly_chordal(G: Graph) -> bool:
    return not has_induced_cycle_at_least(G, 5) and not has_induced_cycle_at_least(complement(G), 5)


def is_bipartite(G: Graph) -> bool:
    color = {}
    for start in range(G.n):
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for y in range(G.n):
                if G.adj(x, y):
                    if y not in color:
                        color[y] = 1 - color[x]
                        stack.append(y)
                    elif color[y] == color[x]:
                        return False
    return True


# -- co-chordal cover number --

def cochordal_cover_number(G: Graph) -> int:
    """Smallest k so that E(G) is a union of k co-chordal edge subsets.

    Searches covers by subsets of E(G) directly. Exponential in |E|;
    fine for n <= 5, slow but usable at n = 6 on sparse graphs.
    """
    edges = list(G.edges)
    if not edges:
        return 0
    cochordal_sets = []
    for k in range(1, len(edges) + 1):
        for combo in itertools.combinations(edges, k):
            verts = sorted({v for e in combo for v in e})
            H = Graph(G.n, tuple(sorted(combo)))
            # evaluate on incident vertices only
            idx = {v: i for i, v in enumerate(verts)}
            Hs = Graph(len(verts), tuple(sorted((idx[u], idx[v]) for u, v in combo)))
            if is_cochordal(Hs):
                cochordal_sets.append(frozenset(combo))
    full = frozenset(edges)
    maximal = [s for s in cochordal_sets if not any(s < t for t in cochordal_sets)]
    for k in range(1, len(edges) + 1):
        for combo in itertools.combinations(maximal, k):
            if frozenset().union(*combo) == full:
                return k
    raise AssertionError("single edges are co-chordal, cover must exist")


# -- monomial ideals as tuples of exponent tuples --

def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize_tuples(gens):
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return sorted(out)


def product_power(gens, r, n):
    """All products of r generators, minimalized."""
    out = set()
    for combo in itertools.combinations_with_replacement(gens, r):
        m = tuple(sum(col) for col in zip(*combo)) if combo else (0,) * n
        out.add(m)
    return minimalize_tuples(out)


def symbolic_power_box(G: Graph, r: int):
    """Minimal generators of the r-th symbolic power of the edge ideal.

    Scans the whole box [0, r]^n and keeps exponent vectors whose sum over
    every minimal vertex cover is at least r, then minimalizes. Pure Python.
    """
    covers = minimal_vertex_covers(G)
    sat = []
    for vec in itertools.product(range(r + 1), repeat=G.n):
        if all(sum(vec[i] for i in c) >= r for c in covers):
            sat.append(vec)
    return minimalize_tuples(sat)


def symbolic_membership(G: Graph, m, r: int) -> bool:
    return all(sum(m[i] for i in c) >= r for c in minimal_vertex_covers(G))


# -- simplicial homology over the rationals --

def reduced_homology_ranks(faces) -> dict[int, int]:
    """dim of reduced homology per degree, faces given as a set of frozensets.

    The empty face must be included explicitly if the complex is nonvoid.
    Dense Gaussian elimination over Fraction. Returns only nonzero dims.
    """
    faces = set(faces)
    if not faces:
        return {}
    by_dim: dict[int, list] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    for d in by_dim:
        by_dim[d] = sorted(by_dim[d], key=sorted)
    max_d = max(by_dim)
    ranks = {}
    for d in range(0, max_d + 1):
        rows = by_dim.get(d - 1, [])
        cols = by_dim.get(d, [])
        if not rows or not cols:
            ranks[d] = 0
            continue
        row_idx = {f: i for i, f in enumerate(rows)}
        M = [[Fraction(0)] * len(cols) for _ in rows]
        for j, f in enumerate(cols):
            fs = sorted(f)
            for pos, v in enumerate(fs):
                sub = frozenset(f - {v})
                if sub in row_idx:
                    M[row_idx[sub]][j] = Fraction(-1 if pos % 2 else 1)
        ranks[d] = _rank_fraction(M)
    dims = {}
    for d in range(-1, max_d + 1):
        nf = len(by_dim.get(d, []))
        dim_h = nf - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if dim_h:
            dims[d] = dim_h
    return dims


def _rank_fraction(M) -> int:
    M = [row[:] for row in M]
    rows, cols = len(M), len(M[0]) if M else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def upper_koszul_faces(gens, m):
    """Faces of the squarefree complex at multidegree m for ideal gens."""
    supp = [i for i, e in enumerate(m) if e > 0]
    faces = set()
    for k in range(len(supp) + 1):
        for combo in itertools.combinations(supp, k):
            quot = tuple(e - (1 if i in combo else 0) for i, e in enumerate(m))
            if any(divides(g, quot) for g in gens):
                faces.add(frozenset(combo))
    return faces


def betti_fine(gens, n) -> dict:
    """Multigraded Betti numbers over the rationals, brute force.

    Scans ALL multidegrees below the lcm of the generators, not just the
    lattice, so it independently validates the lattice restriction.
    """
    if not gens:
        return {}
    top = tuple(max(g[i] for g in gens) for i in range(n))
    fine = {}
    for m in itertools.product(*(range(t + 1) for t in top)):
        if not any(divides(g, m) for g in gens):
            continue
        faces = upper_koszul_faces(gens, m)
        dims = reduced_homology_ranks(faces)
        for d, dim_h in dims.items():
            fine[(d + 1, m)] = dim_h
    return fine


def regularity_from_fine(fine) -> int:
    """reg of S/I given the fine Betti table of I."""
    return max(sum(m) - i for (i, m) in fine) - 1
