"""Instance generators for the verification harness.

Three families of inputs feed the theorem checks: exhaustive lists of
connected graphs up to isomorphism (small vertex counts), seeded random
graphs-with-clique-attachments over bipartite or unicyclic bases, and a
handful of fixed named instances used by the golden-value checks.  Every
generator is driven entirely by an explicit seed so a corpus spec
reproduces the same instance list byte for byte.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .constructions import HTSpec, StarOfCliquesSpec, attach_HT
from .graphs import (
    Graph,
    build_graph,
    connected_components,
    cycle_graph,
    disjoint_union,
    from_json_dict,
    is_connected,
    to_json_dict,
)
from .invariants import is_bipartite, is_weakly_chordal, minimal_vertex_covers

# Connected graphs up to isomorphism, by vertex count.  Used as a golden
# check on the enumerator.
CONNECTED_GRAPH_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}

ENUMERATION_LIMIT = 7

CORPUS_KINDS = ("all-connected", "random-ht", "random-unicyclic-ht", "named")

NAMED_INSTANCES = ("golden-union",)


# ------------------------------------------------------- canonical forms

_PAIRS: dict[int, list[tuple[int, int]]] = {}
_PERM_POW: dict[int, np.ndarray] = {}


def _pairs(n: int) -> list[tuple[int, int]]:
    if n not in _PAIRS:
        _PAIRS[n] = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return _PAIRS[n]


def _perm_pow_table(n: int) -> np.ndarray:
    # Row per permutation p, column per vertex pair (i, j): the value
    # 2**index(p(i), p(j)).  A dot product with an edge indicator vector
    # gives the bitmask of the relabelled graph; float64 is exact since
    # masks stay below 2**53.
    if n not in _PERM_POW:
        pairs = _pairs(n)
        eidx = {pair: k for k, pair in enumerate(pairs)}
        rows = []
        for p in itertools.permutations(range(n)):
            rows.append(
                [eidx[tuple(sorted((p[i], p[j])))] for (i, j) in pairs]
            )
        _PERM_POW[n] = np.power(2.0, np.asarray(rows, dtype=np.float64))
    return _PERM_POW[n]


def canonical_key(G: Graph) -> int:
    """Smallest edge bitmask over all relabellings; equal keys mean
    isomorphic graphs.  Exhaustive over permutations, so capped at
    ENUMERATION_LIMIT vertices."""
    if G.n > ENUMERATION_LIMIT:
        raise ValueError(
            f"canonical form is exhaustive over permutations, "
            f"capped at {ENUMERATION_LIMIT} vertices (got {G.n})"
        )
    pairs = _pairs(G.n)
    eidx = {pair: k for k, pair in enumerate(pairs)}
    vec = np.zeros(len(pairs), dtype=np.float64)
    for e in G.edges:
        vec[eidx[e]] = 1.0
    masks = vec @ _perm_pow_table(G.n).T
    return int(masks.min())


def _graph_from_key(n: int, key: int) -> Graph:
    pairs = _pairs(n)
    edges = [pairs[k] for k in range(len(pairs)) if (key >> k) & 1]
    return build_graph(n, edges)


_CONNECTED_CACHE: dict[int, list[Graph]] = {}


def connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on exactly n vertices, one per isomorphism
    class, in ascending canonical-key order."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if n > ENUMERATION_LIMIT:
        raise ValueError(
            f"exhaustive enumeration capped at {ENUMERATION_LIMIT} "
            f"vertices (got {n})"
        )
    if n in _CONNECTED_CACHE:
        return list(_CONNECTED_CACHE[n])
    if n == 1:
        out = [build_graph(1, [])]
        _CONNECTED_CACHE[1] = out
        return list(out)

    # Every connected graph on n vertices arises from a connected graph
    # on n-1 vertices (drop a non-cut vertex) by adding one vertex with a
    # nonempty neighbourhood, so augmenting the previous level and
    # deduplicating by canonical key is exhaustive.
    prev = connected_graphs(n - 1)
    pairs = _pairs(n)
    eidx = {pair: k for k, pair in enumerate(pairs)}
    cand_rows = []
    for G in prev:
        base_cols = [eidx[e] for e in G.edges]
        for nb in range(1, 1 << (n - 1)):
            row = np.zeros(len(pairs), dtype=np.float64)
            row[base_cols] = 1.0
            for v in range(n - 1):
                if (nb >> v) & 1:
                    row[eidx[(v, n - 1)]] = 1.0
            cand_rows.append(row)
    mat = np.asarray(cand_rows)
    masks = mat @ _perm_pow_table(n).T
    keys = np.unique(masks.min(axis=1).astype(np.int64))
    out = [_graph_from_key(n, int(k)) for k in keys]
    _CONNECTED_CACHE[n] = out
    return list(out)


def connected_graphs_upto(k: int) -> list[Graph]:
    out: list[Graph] = []
    for n in range(1, k + 1):
        out.extend(connected_graphs(n))
    return out


# ------------------------------------------------------ random instances

_CLIQUE_SIZES = (2, 3, 4)


def _random_bipartite_base(rng: random.Random, max_base: int) -> Graph:
    while True:
        nb = rng.randint(2, max_base)
        a = rng.randint(1, nb - 1)
        p = rng.uniform(0.35, 0.85)
        edges = [
            (u, v)
            for u in range(a)
            for v in range(a, nb)
            if rng.random() < p
        ]
        if edges:
            return build_graph(nb, edges)


def _random_connected_bipartite(rng: random.Random, max_base: int) -> Graph:
    nb = rng.randint(2, max_base)
    a = rng.randint(1, nb - 1)
    edges = set()
    for v in range(a, nb):
        edges.add((rng.randrange(a), v))
    for u in range(a):
        if not any(e[0] == u for e in edges):
            edges.add((u, rng.randrange(a, nb)))
    for u in range(a):
        for v in range(a, nb):
            if rng.random() < 0.25:
                edges.add((u, v))
    G = build_graph(nb, sorted(edges))
    while not is_connected(G):
        # every component holds vertices from both sides, so bridge the
        # component of vertex 0 to a right vertex outside it
        comp = next(c for c in connected_components(G) if 0 in c)
        u = min(v for v in comp if v < a)
        other = [v for v in range(a, nb) if v not in comp]
        edges.add((u, rng.choice(other)))
        G = build_graph(nb, sorted(edges))
    return G


def _attach_with_budget(
    rng: random.Random,
    base: Graph,
    T: list[int],
    max_total: int,
    sizes=_CLIQUE_SIZES,
    require: bool = True,
) -> HTSpec:
    total = base.n
    atts: list[tuple[int, StarOfCliquesSpec]] = []
    for v in sorted(T):
        cliques = []
        for _ in range(rng.randint(1, 2)):
            s = rng.choice(sizes)
            if total + (s - 1) > max_total:
                continue
            cliques.append(s)
            total += s - 1
        if cliques:
            atts.append((v, StarOfCliquesSpec(tuple(sorted(cliques)))))
    if require and not atts:
        v = sorted(T)[0] if T else 0
        atts.append((v, StarOfCliquesSpec((2,))))
    return HTSpec(base, tuple(atts))


def random_ht_instance(
    rng: random.Random,
    *,
    max_base: int = 8,
    max_total: int = 12,
    case: int = 0,
    require_attachments: bool = True,
) -> HTSpec:
    """One bipartite-base instance.  case shapes the hypothesis family:
    0 any bipartite base, 1 weakly chordal bipartite base, 2 the
    pendant-edge / pendant-triangle class with matching number equal to
    the induced matching number, 3 bipartite base with the attachment
    set a vertex cover."""
    if case == 1:
        while True:
            base = _random_bipartite_base(rng, max_base)
            if is_weakly_chordal(base):
                break
    elif case == 2:
        base = _random_connected_bipartite(rng, min(max_base, 5))
    elif case == 3:
        base = _random_bipartite_base(rng, max_base)
    else:
        base = _random_bipartite_base(rng, max_base)

    if case == 2:
        _, cert = is_bipartite(base)
        left = sorted(cert.left)
        right = sorted(cert.right)
        total = base.n
        atts: list[tuple[int, StarOfCliquesSpec]] = []
        for x in left:
            k = rng.randint(1, 2)
            k = min(k, max(1, max_total - total))
            atts.append((x, StarOfCliquesSpec((2,) * k)))
            total += k
        for y in right:
            k = rng.randint(0, 1)
            if k and total + 2 <= max_total:
                atts.append((y, StarOfCliquesSpec((3,))))
                total += 2
        return HTSpec(base, tuple(sorted(atts, key=lambda t: t[0])))

    if case == 3:
        covers = minimal_vertex_covers(base).covers
        pick = rng.randrange(len(covers))
        T = sorted(covers[pick])
        extras = [v for v in range(base.n) if v not in covers[pick]]
        for v in extras:
            if rng.random() < 0.15:
                T.append(v)
        spec = _attach_with_budget(
            rng, base, sorted(T), max(max_total, base.n + len(T)), require=True
        )
        # every cover vertex must actually receive an attachment
        missing = [v for v in T if v not in spec.attachment_vertices]
        if missing:
            atts = dict(spec.attachments)
            for v in missing:
                atts[v] = StarOfCliquesSpec((2,))
            spec = HTSpec(base, tuple(sorted(atts.items(), key=lambda t: t[0])))
        return spec

    size = rng.randint(1, min(3, base.n))
    T = rng.sample(range(base.n), size)
    return _attach_with_budget(
        rng, base, T, max_total, require=require_attachments
    )


def random_unicyclic_ht_instance(
    rng: random.Random,
    *,
    max_base: int = 9,
    max_total: int = 12,
    require_attachments: bool = True,
    cycle_length: int | None = None,
) -> HTSpec:
    """A unicyclic base (cycle plus pendant trees) with random clique
    attachments."""
    nc = cycle_length if cycle_length else rng.randint(3, min(7, max_base))
    n = nc
    edges = [(i, (i + 1) % nc) for i in range(nc)]
    while n < max_base and rng.random() < 0.55:
        edges.append((rng.randrange(n), n))
        n += 1
    base = build_graph(n, edges)
    if not require_attachments:
        return HTSpec(base, ())
    size = rng.randint(1, min(3, base.n))
    T = rng.sample(range(base.n), size)
    return _attach_with_budget(rng, base, T, max_total, require=True)


# ------------------------------------------------------- named instances

def golden_union_spec() -> HTSpec:
    """Two 8-cycles, a 10-cycle, and a second 10-cycle carrying one
    triangle attachment: the fixed multi-component benchmark."""
    base = cycle_graph(8)
    for k in (8, 10, 10):
        base = disjoint_union(base, cycle_graph(k))
    return HTSpec(base, ((26, StarOfCliquesSpec((3,))),))


def _named_instance(name: str) -> "CorpusInstance":
    if name == "golden-union":
        spec = golden_union_spec()
        return CorpusInstance("golden-union", attach_HT(spec), spec)
    raise ValueError(
        f"unknown named instance {name!r}; known: {NAMED_INSTANCES}"
    )


# --------------------------------------------------------------- corpora

@dataclass(frozen=True)
class CorpusInstance:
    label: str
    graph: Graph
    ht: HTSpec | None = None

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "graph": to_json_dict(self.graph),
            "ht": self.ht.to_json_dict() if self.ht is not None else None,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "CorpusInstance":
        ht = d.get("ht")
        return cls(
            label=d["label"],
            graph=from_json_dict(d["graph"]),
            ht=HTSpec.from_json_dict(ht) if ht is not None else None,
        )


@dataclass(frozen=True)
class CorpusSpec:
    """Reproducible instance-list description.

    kind "all-connected" enumerates every connected graph on at most
    max_vertices vertices; "random-ht" and "random-unicyclic-ht" draw
    `count` seeded instances with at most max_base base vertices and
    max_vertices vertices in total; "named" yields the single fixed
    instance called `name`.
    """

    kind: str
    count: int = 0
    seed: int = 0
    max_vertices: int = 6
    max_base: int = 8
    case: int = 0
    require_attachments: bool = True
    name: str = ""

    def __post_init__(self):
        if self.kind not in CORPUS_KINDS:
            raise ValueError(
                f"unknown corpus kind {self.kind!r}; known: {CORPUS_KINDS}"
            )
        if self.kind == "all-connected" and not (
            1 <= self.max_vertices <= ENUMERATION_LIMIT
        ):
            raise ValueError(
                f"all-connected needs 1 <= max_vertices <= {ENUMERATION_LIMIT}"
            )
        if self.kind.startswith("random") and self.count < 1:
            raise ValueError("random corpora need count >= 1")
        if self.case not in (0, 1, 2, 3):
            raise ValueError("case must be 0, 1, 2 or 3")
        if self.kind == "named" and self.name not in NAMED_INSTANCES:
            raise ValueError(
                f"unknown named instance {self.name!r}; known: {NAMED_INSTANCES}"
            )

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "count": self.count,
            "seed": self.seed,
            "max_vertices": self.max_vertices,
            "max_base": self.max_base,
            "case": self.case,
            "require_attachments": self.require_attachments,
            "name": self.name,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "CorpusSpec":
        known = {
            "kind", "count", "seed", "max_vertices", "max_base",
            "case", "require_attachments", "name",
        }
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown corpus spec fields: {sorted(extra)}")
        return cls(**d)


def generate_corpus(spec: CorpusSpec) -> list[CorpusInstance]:
    """Materialise the instance list; identical specs give identical
    lists."""
    if spec.kind == "all-connected":
        out = []
        for n in range(1, spec.max_vertices + 1):
            for i, G in enumerate(connected_graphs(n)):
                out.append(CorpusInstance(f"conn-n{n}-{i:03d}", G))
        return out
    if spec.kind == "named":
        return [_named_instance(spec.name)]

    rng = random.Random(spec.seed)
    out = []
    for i in range(spec.count):
        if spec.kind == "random-ht":
            ht = random_ht_instance(
                rng,
                max_base=spec.max_base,
                max_total=spec.max_vertices,
                case=spec.case,
                require_attachments=spec.require_attachments,
            )
            tag = f"ht-c{spec.case}-{i:03d}" if spec.case else f"ht-{i:03d}"
        else:
            ht = random_unicyclic_ht_instance(
                rng,
                max_base=spec.max_base,
                max_total=spec.max_vertices,
                require_attachments=spec.require_attachments,
            )
            tag = f"uni-{i:03d}"
        out.append(CorpusInstance(tag, attach_HT(ht), ht))
    return out
