"""Multigraded Betti numbers of monomial ideals, taken simplicially.

For a monomial x^m in an ideal I the upper Koszul complex K^m(I) has as
faces the subsets s of supp(m) with x^m / x^s still in I, and

    beta_{i,m}(I) = dim H~_{i-1}(K^m(I)).

Nonzero entries only occur when m is a join (coordinatewise max) of
generators, so the table is assembled by walking the join closure of
the generating set.  Per multidegree the complex is determined by the
inclusion-minimal "tight sets" T_g = {v : g_v = m_v > 0} over the
generators g dividing x^m: faces are exactly the subsets missing some
T_g entirely.  Complexes with an empty tight set (full simplex) or a
vertex outside every minimal tight set (cone) are acyclic and skipped.
When the tight sets are fewer than the support vertices we pass to the
nerve of the covering simplices instead, which has the same reduced
homology.  Surviving complexes are pre-reduced by elementary collapses
and boundary ranks are computed over GF(p), or over the rationals on
request.

Regularity conventions follow the quotient ring: reg(S/I) is
max(|m| - i) - 1 over the nonzero beta_{i,m}(I), reg of S/0 is 0 and
reg of S/S is minus infinity.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._caps import (
    DENSE_FACE_LIMIT,
    FACE_CAP,
    LCM_LATTICE_CAP,
    CapExceeded,
    MinusInfinity,
    RegValue,
)
from .graphs import Graph, connected_components, induced_subgraph
from .monomials import MonomialIdeal, edge_ideal, membership, power, symbolic_power_edge

DEFAULT_PRIME = 32003

# entries stay below p*p + p during elimination; keep that comfortably in int64
MAX_PRIME = 1 << 20

FineTable = dict[tuple[int, tuple[int, ...]], int]


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def _check_char(p: int) -> None:
    if not (2 <= p <= MAX_PRIME) or not _is_prime(p):
        raise ValueError(f"characteristic must be a prime in [2, {MAX_PRIME}], got {p}")


# ---------------------------------------------------------------------------
# join closure of the generators


def _pack(arr: np.ndarray, n: int, bits: int) -> np.ndarray:
    shifts = np.arange(n, dtype=np.int64) * bits
    return (arr.astype(np.int64) << shifts[None, :]).sum(axis=1)


def _unpack(keys: np.ndarray, n: int, bits: int) -> np.ndarray:
    shifts = np.arange(n, dtype=np.int64) * bits
    mask = (1 << bits) - 1
    return ((keys[:, None] >> shifts[None, :]) & mask).astype(np.int16)


def _closure_packed(gens: np.ndarray, cap: int, bits: int) -> np.ndarray:
    n = gens.shape[1]
    gkeys = np.unique(_pack(gens, n, bits))
    known = gkeys.copy()
    frontier = gkeys.copy()
    base = _unpack(gkeys, n, bits)
    while len(frontier):
        F = _unpack(frontier, n, bits)
        outs = []
        chunk = max(1, 2_000_000 // max(1, len(base)))
        for s in range(0, len(F), chunk):
            J = np.maximum(F[s:s + chunk, None, :], base[None, :, :]).reshape(-1, n)
            outs.append(np.unique(_pack(J, n, bits)))
        cand = np.unique(np.concatenate(outs))
        new = cand[~np.isin(cand, known, assume_unique=True)]
        known = np.union1d(known, new)
        if len(known) > cap:
            raise CapExceeded("lcm_lattice", cap, len(known))
        frontier = new
    return _unpack(known, n, bits)


def _closure_tuples(gens: np.ndarray, cap: int) -> np.ndarray:
    # fallback when packed keys would not fit in 62 bits
    base = {tuple(int(x) for x in g) for g in gens}
    known = set(base)
    frontier = set(base)
    while frontier:
        new = set()
        for f in frontier:
            for g in base:
                j = tuple(a if a >= b else b for a, b in zip(f, g))
                if j not in known:
                    new.add(j)
        known |= new
        if len(known) > cap:
            raise CapExceeded("lcm_lattice", cap, len(known))
        frontier = new
    return np.array(sorted(known), dtype=np.int16)


def _sort_rows(arr: np.ndarray) -> np.ndarray:
    """Order multidegrees by total degree, then lexicographically."""
    if len(arr) == 0:
        return arr
    deg = arr.sum(axis=1)
    keys = [arr[:, c] for c in range(arr.shape[1] - 1, -1, -1)] + [deg]
    return arr[np.lexsort(keys)]


def lcm_lattice(I: MonomialIdeal, cap: int = LCM_LATTICE_CAP) -> np.ndarray:
    """All joins of nonempty subsets of gens(I), sorted by (degree, lex).

    Raises CapExceeded when the closure grows past ``cap``.
    """
    if I.is_zero:
        return np.zeros((0, I.n), dtype=np.int16)
    gens = I.gens
    top = int(gens.max()) if gens.size else 0
    bits = max(1, top.bit_length())
    if I.n == 0 or bits * I.n <= 62:
        closed = _closure_packed(gens, cap, bits) if I.n else gens[:1].copy()
    else:
        closed = _closure_tuples(gens, cap)
    return _sort_rows(closed)


# ---------------------------------------------------------------------------
# simplicial complexes and their reduced homology


@dataclass(frozen=True)
class SimplicialComplex:
    """Faces as vertex bitmasks; 0 is the empty face.

    ``faces == frozenset()`` is the void complex, ``{0}`` the complex
    whose only face is empty.  Both matter: the latter has reduced
    homology in dimension -1, the former none at all.
    """

    n: int
    faces: frozenset

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def dim(self) -> int | None:
        if not self.faces:
            return None
        return max(f.bit_count() for f in self.faces) - 1

    def face_count(self) -> int:
        return len(self.faces)

    def faces_of_dim(self, d: int) -> list[int]:
        return sorted(f for f in self.faces if f.bit_count() == d + 1)

    def vertex_list(self) -> list[int]:
        used = 0
        for f in self.faces:
            used |= f
        return [v for v in range(self.n) if used >> v & 1]


def upper_koszul(I: MonomialIdeal, m) -> SimplicialComplex:
    """K^m(I), by direct membership tests on all subsets of supp(m).

    Requires x^m in I; raises ValueError otherwise.  Exponential in
    |supp(m)|, meant as the reference the lattice walk is checked
    against.
    """
    mv = np.asarray(list(m), dtype=np.int16)
    if mv.shape != (I.n,) or (mv < 0).any():
        raise ValueError("multidegree must have one nonnegative entry per variable")
    if not membership(mv, I):
        raise ValueError("monomial lies outside the ideal, K^m is undefined here")
    supp = [v for v in range(I.n) if mv[v] > 0]
    k = len(supp)
    if (1 << k) > FACE_CAP:
        raise CapExceeded("koszul_faces", FACE_CAP, 1 << k)
    sub = np.arange(1 << k, dtype=np.int64)
    cand = np.repeat(mv[None, :], 1 << k, axis=0)
    full = np.zeros(1 << k, dtype=np.int64)
    for i, v in enumerate(supp):
        hit = (sub >> i) & 1
        cand[:, v] -= hit.astype(np.int16)
        full |= hit << v
    ok = np.zeros(1 << k, dtype=bool)
    step = max(1, (1 << 22) // max(1, I.gens.shape[0]))
    for s in range(0, 1 << k, step):
        blk = cand[s:s + step]
        ok[s:s + step] = (I.gens[None, :, :] <= blk[:, None, :]).all(axis=2).any(axis=1)
    return SimplicialComplex(I.n, frozenset(int(f) for f in full[ok]))


def _rank_dense_gf(M: np.ndarray, p: int) -> int:
    M = M % p
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = np.nonzero(M[r:, c])[0]
        if len(piv) == 0:
            continue
        i = r + piv[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = M[r] * inv % p
        nz = np.nonzero(M[r + 1:, c])[0] + r + 1
        if len(nz):
            M[nz] = (M[nz] - np.outer(M[nz, c], M[r])) % p
        r += 1
    return r


def _rank_sparse(rows: list[dict], p: int | None) -> int:
    """Rank of a matrix given as sparse rows; p None means rationals."""
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        ri = min(range(len(rows)), key=lambda i: len(rows[i]))
        row = rows.pop(ri)
        rank += 1
        c = min(row)
        pv = row[c]
        if p is None:
            norm = {k: Fraction(v, pv) for k, v in row.items() if k != c}
        else:
            inv = pow(pv % p, p - 2, p)
            norm = {k: v * inv % p for k, v in row.items() if k != c}
        nxt = []
        for r in rows:
            f = r.pop(c, 0)
            if f:
                for k, v in norm.items():
                    nv = r.get(k, 0) - f * v
                    if p is not None:
                        nv %= p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
            if r:
                nxt.append(r)
        rows = nxt
    return rank


def _boundary_rank(lower: list[int], upper: list[int], p: int | None,
                   dense_limit: int, total_faces: int) -> int:
    """Rank of the boundary map from span(upper) down to span(lower)."""
    if not lower or not upper:
        return 0
    index = {f: i for i, f in enumerate(lower)}
    dense = (
        p is not None
        and total_faces <= dense_limit
        and len(lower) * len(upper) <= 1 << 22
    )
    if dense:
        M = np.zeros((len(lower), len(upper)), dtype=np.int64)
        for j, f in enumerate(upper):
            sign = 1
            mm = f
            while mm:
                v = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                sub = f & ~(1 << v)
                if sub in index:
                    M[index[sub], j] = sign
                sign = -sign
        return _rank_dense_gf(M, p)
    rows = []
    for f in upper:
        sign = 1
        mm = f
        row = {}
        while mm:
            v = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            sub = f & ~(1 << v)
            if sub in index:
                row[index[sub]] = sign if p is None else sign % p
            sign = -sign
        rows.append(row)
    return _rank_sparse(rows, p)


def _homology_from_faces(fs, p: int | None, dense_limit: int) -> dict[int, int]:
    """Reduced homology dims {dim: rank} from a set of bitmask faces."""
    if not fs:
        return {}
    by_card: dict[int, list[int]] = {}
    for f in fs:
        by_card.setdefault(f.bit_count(), []).append(f)
    for c in by_card:
        by_card[c].sort()
    maxc = max(by_card)
    total = len(fs)
    ranks = {}
    for c in range(1, maxc + 1):
        ranks[c] = _boundary_rank(
            by_card.get(c - 1, []), by_card.get(c, []), p, dense_limit, total
        )
    dims = {}
    for c in range(0, maxc + 1):
        nf = len(by_card.get(c, []))
        d = nf - ranks.get(c, 0) - ranks.get(c + 1, 0)
        if d:
            dims[c - 1] = d
    return dims


def reduced_homology_dims(
    K: SimplicialComplex,
    p: int = DEFAULT_PRIME,
    *,
    rational: bool = False,
    dense_limit: int = DENSE_FACE_LIMIT,
) -> dict[int, int]:
    """Nonzero reduced homology dimensions of K over GF(p) or over Q."""
    if rational:
        field = None
    else:
        _check_char(p)
        field = p
    return _homology_from_faces(set(K.faces), field, dense_limit)


def _collapse(faces: set) -> set:
    """Remove free face pairs until none remain; homology is preserved."""
    fs = set(faces)
    if not fs:
        return fs
    uni = 0
    for f in fs:
        uni |= f
    verts = [v for v in range(uni.bit_length()) if uni >> v & 1]
    cof = {}
    for f in fs:
        c = 0
        for v in verts:
            b = 1 << v
            if not (f & b) and (f | b) in fs:
                c += 1
        cof[f] = c
    queue = [f for f, c in cof.items() if c == 1]
    while queue:
        f = queue.pop()
        if f not in fs or cof.get(f) != 1:
            continue
        cf = None
        for v in verts:
            b = 1 << v
            if not (f & b) and (f | b) in fs:
                cf = f | b
                break
        if cf is None:
            continue
        fs.discard(f)
        fs.discard(cf)
        for g in (f, cf):
            m = g
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                s = g & ~(1 << v)
                if s in fs:
                    cof[s] -= 1
                    if cof[s] == 1:
                        queue.append(s)
    return fs


def _direct_faces(min_tights: list[int], s_mask: int, n: int, face_cap: int) -> set:
    """All subsets of s_mask disjoint from some tight set, as bitmasks."""
    sverts = [v for v in range(n) if s_mask >> v & 1]
    k = len(sverts)
    if (1 << k) > face_cap:
        raise CapExceeded("koszul_faces", face_cap, 1 << k)
    subs = np.arange(1 << k, dtype=np.int64)
    full = np.zeros(1 << k, dtype=np.int64)
    for i, v in enumerate(sverts):
        full |= ((subs >> i) & 1) << v
    T = np.array(min_tights, dtype=np.int64)
    ok = ((full[:, None] & T[None, :]) == 0).any(axis=1)
    return set(int(x) for x in full[ok])


def _nerve_faces(mins: list[int], s_mask: int, face_cap: int) -> set:
    """Nerve of the cover by the simplices avoiding each tight set.

    A set J of tight sets spans a nerve face iff their union misses a
    support vertex.  Same reduced homology as the covered complex since
    every nonempty intersection of cover members is a simplex.
    """
    t = len(mins)
    fset = {0}
    level = [(0, 0)]
    for _ in range(t):
        nxt = []
        for fm, un in level:
            for j in range(fm.bit_length(), t):
                u2 = un | mins[j]
                if u2 != s_mask:
                    nm = fm | (1 << j)
                    fset.add(nm)
                    nxt.append((nm, u2))
        if len(fset) > face_cap:
            raise CapExceeded("nerve_faces", face_cap, len(fset))
        if not nxt:
            break
        level = nxt
    return fset


def _fine_table(
    gens: np.ndarray,
    n: int,
    p: int | None,
    lattice_cap: int,
    face_cap: int,
    dense_limit: int,
    stats: dict | None,
) -> FineTable:
    lat = lcm_lattice(MonomialIdeal(n, gens), lattice_cap)
    G = gens.astype(np.int16)
    pow2 = 1 << np.arange(n, dtype=np.int64)
    fine: FineTable = {}
    st = {"lattice": len(lat), "noncone": 0, "hom_time": 0.0, "max_faces": 0}
    chunk = 8192
    for start in range(0, len(lat), chunk):
        Lc = lat[start:start + chunk]
        below = (G[None, :, :] <= Lc[:, None, :]).all(axis=2)
        eq = (G[None, :, :] == Lc[:, None, :]) & (Lc[:, None, :] > 0)
        tmask = (eq * pow2[None, None, :]).sum(axis=2)
        suppm = ((Lc > 0) * pow2[None, :]).sum(axis=1)
        # some divisor strictly below on all of supp(m): full simplex, acyclic
        strict = ((tmask == 0) & below).any(axis=1)
        tm = np.where(below, tmask, 0)
        union_all = np.bitwise_or.reduce(tm, axis=1)
        # a vertex in no tight set makes the complex a cone over it
        maybe = ~strict & (union_all == suppm)
        for k in np.nonzero(maybe)[0]:
            ts = sorted(set(int(t) for t in tm[k][below[k]]))
            S = int(suppm[k])
            mins = [a for a in ts if not any(b != a and a & b == b for b in ts)]
            u = 0
            for mk in mins:
                u |= mk
            if u != S:
                continue
            st["noncone"] += 1
            t0 = time.time()
            if len(mins) < S.bit_count():
                faces = _nerve_faces(mins, S, face_cap)
            else:
                faces = _direct_faces(mins, S, n, face_cap)
            st["max_faces"] = max(st["max_faces"], len(faces))
            dims = _homology_from_faces(_collapse(faces), p, dense_limit)
            st["hom_time"] += time.time() - t0
            if dims:
                mdeg = tuple(int(x) for x in Lc[k])
                for i, d in dims.items():
                    key = (i + 1, mdeg)
                    fine[key] = fine.get(key, 0) + d
    if stats is not None:
        stats.update(st)
    return fine


# ---------------------------------------------------------------------------
# Betti tables and regularity


@dataclass
class BettiTable:
    """Fine table {(i, multidegree): beta}; char 0 marks rational ranks."""

    n: int
    char: int
    fine: FineTable

    @property
    def coarse(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for (i, m), b in self.fine.items():
            key = (i, int(sum(m)))
            out[key] = out.get(key, 0) + b
        return out

    def max_index(self) -> int:
        return max(i for i, _ in self.fine)

    def regularity_of_quotient(self) -> int:
        return max(sum(m) - i for (i, m) in self.fine) - 1

    def to_json_dict(self) -> dict:
        fine = [[i, list(m), b] for (i, m), b in sorted(self.fine.items())]
        coarse = [[i, j, b] for (i, j), b in sorted(self.coarse.items())]
        return {"char": self.char, "fine": fine, "coarse": coarse}

    @classmethod
    def from_json_dict(cls, d: dict) -> "BettiTable":
        fine: FineTable = {}
        nvars = 0
        for i, m, b in d["fine"]:
            fine[(int(i), tuple(int(x) for x in m))] = int(b)
            nvars = len(m)
        return cls(nvars, int(d["char"]), fine)


def betti_table(
    I: MonomialIdeal,
    p: int = DEFAULT_PRIME,
    *,
    rational: bool = False,
    lattice_cap: int = LCM_LATTICE_CAP,
    face_cap: int = FACE_CAP,
    dense_limit: int = DENSE_FACE_LIMIT,
    stats: dict | None = None,
) -> BettiTable:
    """Full multigraded Betti table of a proper nonzero monomial ideal."""
    if not I.is_proper:
        raise ValueError("betti_table needs a proper nonzero ideal")
    if rational:
        field = None
    else:
        _check_char(p)
        field = p
    fine = _fine_table(I.gens, I.n, field, lattice_cap, face_cap, dense_limit, stats)
    _check_generator_row(fine, I.gens)
    return BettiTable(I.n, 0 if rational else p, fine)


def _check_generator_row(fine: FineTable, gens: np.ndarray) -> None:
    # homological index 0 must list exactly the minimal generators, each once
    got = {m for (i, m), b in fine.items() if i == 0 and b == 1}
    bad = {m for (i, m), b in fine.items() if i == 0 and b != 1}
    want = {tuple(int(x) for x in g) for g in gens}
    if bad or got != want:
        raise AssertionError("index-0 row disagrees with the minimal generators")


def regularity_quotient(
    I: MonomialIdeal,
    p: int = DEFAULT_PRIME,
    *,
    rational: bool = False,
    lattice_cap: int = LCM_LATTICE_CAP,
    face_cap: int = FACE_CAP,
    dense_limit: int = DENSE_FACE_LIMIT,
) -> RegValue:
    """Castelnuovo-Mumford regularity of S/I.

    The zero ideal gives 0, the unit ideal gives minus infinity.
    """
    if I.is_zero:
        return 0
    if I.is_unit:
        return MinusInfinity
    table = betti_table(
        I, p, rational=rational, lattice_cap=lattice_cap,
        face_cap=face_cap, dense_limit=dense_limit,
    )
    return table.regularity_of_quotient()


def _power_of(I: MonomialIdeal, H: Graph, kind: str, r: int) -> MonomialIdeal:
    if kind == "ordinary":
        return power(I, r)
    return symbolic_power_edge(H, r)


def _fold_pair(F1: dict[int, int], F2: dict[int, int], rmax: int) -> dict[int, int]:
    # regularity table of a sum of ideals in disjoint variables, from the
    # tables of the summands
    F = {0: 0}
    for s in range(1, rmax + 1):
        best = F1[s] + F2[1]
        for mm in range(2, s + 1):
            best = max(best, F1[s - mm + 1] + F2[mm])
        for nn in range(1, s):
            best = max(best, F1[s - nn] + F2[nn] + 1)
        F[s] = best
    return F


def fold_power_tables(
    tables: Sequence[dict[int, RegValue]], rmax: int
) -> dict[int, RegValue]:
    """Power-regularity table of a disjoint union from the tables of its
    parts.

    Each table maps the exponent s in 1..rmax to reg(S/I^(s)) (or the
    ordinary-power analogue) for one part.  Parts with no edges must be
    omitted by the caller: their table is identically zero and would
    distort the combination rule.  An empty list gives the table of the
    zero ideal.
    """
    out: dict[int, RegValue] | None = None
    for t in tables:
        cur = {s: t[s] for s in range(1, rmax + 1)}
        out = cur if out is None else _fold_pair(out, cur, rmax)
    if out is None:
        return {s: 0 for s in range(1, rmax + 1)}
    return out


def regularity_additive_table(
    G: Graph,
    p: int = DEFAULT_PRIME,
    kind: str = "symbolic",
    rmax: int = 1,
    *,
    rational: bool = False,
    lattice_cap: int = LCM_LATTICE_CAP,
    face_cap: int = FACE_CAP,
) -> dict[int, RegValue]:
    """reg(S/I(G)^[r]) for r = 1..rmax, split over connected components.

    Each component with an edge is resolved on its own variables; the
    per-component tables are then folded.  Edgeless components change
    nothing and are dropped before folding.
    """
    if kind not in ("ordinary", "symbolic"):
        raise ValueError(f"kind must be 'ordinary' or 'symbolic', got {kind!r}")
    if rmax < 1:
        raise ValueError("rmax must be at least 1")
    tables = []
    for comp in connected_components(G):
        H, _ = induced_subgraph(G, comp)
        if not H.edges:
            continue
        I = edge_ideal(H)
        F = {0: 0}
        for r in range(1, rmax + 1):
            F[r] = regularity_quotient(
                _power_of(I, H, kind, r), p, rational=rational,
                lattice_cap=lattice_cap, face_cap=face_cap,
            )
        tables.append(F)
    if not tables:
        return {r: 0 for r in range(1, rmax + 1)}
    total = tables[0]
    for F in tables[1:]:
        total = _fold_pair(total, F, rmax)
    return {r: total[r] for r in range(1, rmax + 1)}


def regularity_additive(
    G: Graph,
    p: int = DEFAULT_PRIME,
    power_spec: tuple = ("plain",),
    *,
    rational: bool = False,
    lattice_cap: int = LCM_LATTICE_CAP,
    face_cap: int = FACE_CAP,
) -> RegValue:
    """Regularity of S/I(G), or of a power of it, component by component.

    power_spec is ("plain",), ("ordinary", r) or ("symbolic", r).
    """
    spec = tuple(power_spec)
    if spec == ("plain",):
        kind, r = "ordinary", 1
    elif len(spec) == 2 and spec[0] in ("ordinary", "symbolic"):
        kind, r = spec[0], int(spec[1])
    else:
        raise ValueError(f"unrecognized power_spec {power_spec!r}")
    table = regularity_additive_table(
        G, p, kind, r, rational=rational,
        lattice_cap=lattice_cap, face_cap=face_cap,
    )
    return table[r]
