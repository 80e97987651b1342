"""Resource ceilings and shared error types.

Every algorithm in this package is exponential in the worst case. The caps
below are honest fail-fast limits, not tuning knobs: exceeding one raises
CapExceeded (or degrades to an explicit interval where the caller's contract
says skipping is allowed) instead of silently truncating the answer.
"""

from __future__ import annotations

import os

MAX_CONSTRUCT_VERTICES = 64  # graph constructors fail beyond this
MAX_VERTICES = 24            # subset-state algorithms fail beyond this
MAX_POWER = 6                # r cap for ordinary/symbolic powers
MAX_POWER_VARS = 14          # variable cap for power operations
BOX_CELL_CAP = 2 ** 26       # (r+1)^n cells scanned by the symbolic box
LCM_LATTICE_CAP = 200_000    # default join-closure size limit
FACE_CAP = 2 ** 22           # faces per simplicial complex
DENSE_FACE_LIMIT = 2 ** 14   # dense elimination below, sparse above
COCHORD_NODE_BUDGET = 10 ** 7

MinusInfinity = float("-inf")
# Regularity values are ints except reg(S/S) = -inf.
RegValue = int | float


class CapExceeded(Exception):
    """A stated resource ceiling would be crossed."""

    def __init__(self, what: str, limit, actual):
        self.what = what
        self.limit = limit
        self.actual = actual
        super().__init__(f"{what}: {actual} exceeds cap {limit}")


class SearchBudgetExceeded(Exception):
    """Exact search ran out of nodes; carries the best known interval."""

    def __init__(self, what: str, lower: int, upper: int, witness=None):
        self.what = what
        self.lower = lower
        self.upper = upper
        self.witness = witness
        super().__init__(f"{what}: budget exhausted, value in [{lower}, {upper}]")


def thread_count() -> int:
    """Parallelism ceiling from EIL_THREADS (defaults to 1)."""
    raw = os.environ.get("EIL_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        return 1
    return max(1, k)
