"""Exact monomial-ideal arithmetic for edge ideals.

Ideals are immutable: an ambient variable count n and a canonical minimal
generating set stored as a sorted int16 matrix (one row per generator).
The zero ideal has an empty generator matrix; the unit ideal has the
single all-zero row. Monomials cross the API as integer sequences.

Symbolic powers use the cover characterization: a monomial lies in the
r-th symbolic power iff its exponent sum over every minimal vertex cover
is at least r. Minimal generators all have exponents <= r (capping an
exponent above r at r keeps every cover sum at or above r and divides the
original), so scanning the box [0, r]^n is exact.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._caps import (
    BOX_CELL_CAP,
    MAX_POWER,
    MAX_POWER_VARS,
    CapExceeded,
)
from .graphs import Graph
from .invariants import minimal_vertex_covers


def _as_matrix(n: int, gens) -> np.ndarray:
    arr = np.array(sorted(tuple(int(x) for x in g) for g in gens), dtype=np.int16)
    if arr.size == 0:
        arr = arr.reshape(0, n)
    if arr.shape[1] != n:
        raise ValueError(f"generator length mismatch: expected {n} variables")
    if arr.size and arr.min() < 0:
        raise ValueError("negative exponent")
    return arr


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    gens: np.ndarray = field(compare=False)

    def __post_init__(self):
        self.gens.setflags(write=False)

    @property
    def is_zero(self) -> bool:
        return self.gens.shape[0] == 0

    @property
    def is_unit(self) -> bool:
        return self.gens.shape[0] == 1 and not self.gens.any()

    @property
    def is_proper(self) -> bool:
        return not self.is_zero and not self.is_unit

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and self.gens.shape == other.gens.shape and bool(
            (self.gens == other.gens).all()
        )

    def __str__(self):
        return f"MonomialIdeal(n={self.n}, gens={self.gens.shape[0]})"


def _minimalize_matrix(arr: np.ndarray) -> np.ndarray:
    """Keep only divisibility-minimal rows, canonically sorted."""
    if arr.shape[0] == 0:
        return arr
    arr = np.unique(arr, axis=0)
    order = np.argsort(arr.sum(axis=1), kind="stable")
    arr = arr[order]
    kept: list[np.ndarray] = []
    for row in arr:
        if not any((k <= row).all() for k in kept):
            kept.append(row)
    if not kept:
        return arr[:0]
    out = np.array(sorted(map(tuple, kept)), dtype=np.int16)
    return out


def minimalize(n: int, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    return MonomialIdeal(n, _minimalize_matrix(_as_matrix(n, gens)))


def zero_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, np.zeros((0, n), dtype=np.int16))


def unit_ideal(n: int) -> MonomialIdeal:
    return MonomialIdeal(n, np.zeros((1, n), dtype=np.int16))


def edge_ideal(G: Graph) -> MonomialIdeal:
    gens = np.zeros((len(G.edges), G.n), dtype=np.int16)
    for k, (u, v) in enumerate(G.edges):
        gens[k, u] = 1
        gens[k, v] = 1
    return MonomialIdeal(G.n, _minimalize_matrix(gens))


def membership(m: Sequence[int], I: MonomialIdeal) -> bool:
    vec = np.asarray(tuple(m), dtype=np.int64)
    if vec.shape != (I.n,):
        raise ValueError("monomial length mismatch")
    if I.is_zero:
        return False
    return bool((I.gens <= vec).all(axis=1).any())


def equals(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    return I == J


def power(I: MonomialIdeal, r: int) -> MonomialIdeal:
    """Ordinary power: minimalized r-fold generator products."""
    if r < 1:
        raise ValueError("power requires r >= 1 (callers handle I^0)")
    if r > MAX_POWER:
        raise CapExceeded("power exponent", MAX_POWER, r)
    if I.is_zero or I.is_unit or r == 1:
        return I
    if I.n > MAX_POWER_VARS:
        raise CapExceeded("power variables", MAX_POWER_VARS, I.n)
    prods = {
        tuple(np.sum(combo, axis=0))
        for combo in itertools.combinations_with_replacement(I.gens.astype(np.int64), r)
    }
    return minimalize(I.n, prods)


def symbolic_membership(G: Graph, m: Sequence[int], r: int) -> bool:
    """Cover-sum criterion, independent of any generator computation."""
    if r < 1:
        raise ValueError("r >= 1 required")
    vec = tuple(int(x) for x in m)
    if len(vec) != G.n:
        raise ValueError("monomial length mismatch")
    for cover in minimal_vertex_covers(G).covers:
        if sum(vec[i] for i in cover) < r:
            return False
    return True


def symbolic_power_edge(G: Graph, r: int) -> MonomialIdeal:
    """Symbolic power of the edge ideal by bounded-box enumeration."""
    if r < 1:
        raise ValueError("r >= 1 required")
    if r > MAX_POWER:
        raise CapExceeded("power exponent", MAX_POWER, r)
    if not G.edges:
        raise ValueError("edgeless graph: the edge ideal is zero")
    if G.n > MAX_POWER_VARS:
        raise CapExceeded("power variables", MAX_POWER_VARS, G.n)
    if r == 1:
        return edge_ideal(G)
    n = G.n
    cells = (r + 1) ** n
    if cells > BOX_CELL_CAP:
        raise CapExceeded("symbolic box cells", BOX_CELL_CAP, cells)

    covers = minimal_vertex_covers(G).covers
    # digit i of a box index (base r+1) is the exponent of variable i
    sat = np.ones(cells, dtype=bool)
    digits = []
    stride = 1
    for i in range(n):
        pattern = np.repeat(np.arange(r + 1, dtype=np.int32), stride)
        digits.append(np.tile(pattern, cells // (stride * (r + 1))))
        stride *= r + 1
    for cover in covers:
        total = np.zeros(cells, dtype=np.int32)
        for i in cover:
            total += digits[i]
        sat &= total >= r
    # a vector is a minimal generator iff no coordinate can drop by one
    minimal = sat.copy()
    stride = 1
    for i in range(n):
        shifted = np.zeros(cells, dtype=bool)
        shifted[stride:] = sat[:-stride]
        # dropping digit i by one stays saturated => not minimal;
        # only meaningful where digit i > 0
        minimal &= ~(shifted & (digits[i] > 0))
        stride *= r + 1
    idx = np.nonzero(minimal)[0]
    gens = np.empty((len(idx), n), dtype=np.int16)
    for i in range(n):
        gens[:, i] = digits[i][idx]
    return MonomialIdeal(n, _minimalize_matrix(gens))


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    if I.n != J.n:
        raise ValueError("ambient mismatch")
    if I.is_zero or J.is_zero:
        return zero_ideal(I.n)
    lcms = np.maximum(I.gens[:, None, :], J.gens[None, :, :]).reshape(-1, I.n)
    return MonomialIdeal(I.n, _minimalize_matrix(lcms))


def symbolic_power_by_intersection(G: Graph, r: int) -> MonomialIdeal:
    """Second path: iterated intersection of cover-prime powers.

    Exponential in the cover count; used as a cross-check at small n.
    """
    if r < 1:
        raise ValueError("r >= 1 required")
    if not G.edges:
        raise ValueError("edgeless graph: the edge ideal is zero")
    result = None
    for cover in minimal_vertex_covers(G).covers:
        vars_ = sorted(cover)
        rows = []
        for combo in itertools.combinations_with_replacement(vars_, r):
            vec = [0] * G.n
            for v in combo:
                vec[v] += 1
            rows.append(vec)
        P_r = MonomialIdeal(G.n, _minimalize_matrix(np.array(rows, dtype=np.int16)))
        result = P_r if result is None else intersect(result, P_r)
    return result


def colon(I: MonomialIdeal, f: Sequence[int]) -> MonomialIdeal:
    """(I : f), the unit ideal when some generator divides f."""
    vec = np.asarray(tuple(int(x) for x in f), dtype=np.int16)
    if vec.shape != (I.n,):
        raise ValueError("monomial length mismatch")
    if I.is_zero:
        return I
    quotients = np.maximum(I.gens.astype(np.int32) - vec.astype(np.int32), 0).astype(np.int16)
    return MonomialIdeal(I.n, _minimalize_matrix(quotients))


def add_variable_gen(I: MonomialIdeal, v: int) -> MonomialIdeal:
    """Minimalized (I, x_v)."""
    if not 0 <= v < I.n:
        raise ValueError("variable out of range")
    row = np.zeros((1, I.n), dtype=np.int16)
    row[0, v] = 1
    return MonomialIdeal(I.n, _minimalize_matrix(np.vstack([I.gens, row])))


def monomial_from_vertices(n: int, vertices) -> tuple[int, ...]:
    """Squarefree monomial x_U as an exponent vector."""
    vec = [0] * n
    for v in vertices:
        vec[v] += 1
    return tuple(vec)


def to_json_dict(I: MonomialIdeal) -> dict:
    return {"n": I.n, "gens": [[int(x) for x in g] for g in I.gens]}


def from_json_dict(d: dict) -> MonomialIdeal:
    return minimalize(d["n"], d["gens"])


def to_json(I: MonomialIdeal) -> str:
    return json.dumps(to_json_dict(I))


def from_json(s: str) -> MonomialIdeal:
    return from_json_dict(json.loads(s))
