"""Theorem-shaped verification checks over instance corpora.

Every check computes both sides of a stated relation between regularity,
powers, and combinatorial invariants with exact arithmetic, and returns a
structured verdict: pass, fail, or skipped.  A failure carries the
complete instance and every computed quantity, so the report alone is
enough to rebuild the counterexample and re-run the check
(see rerun_check).  Resource caps and per-instance timeouts become
explicit skips; an exponent range is never silently reduced.

Suites bundle checks with fixed default corpora and seeds:

  goldens           fixed benchmark graphs with known regularities
  small-exhaustive  bound checks over all connected graphs up to a size
  bipartite         symbolic upper bounds over bipartite-base instances
  cover-classes     cover-number equalities on three hypothesis classes
  unicyclic         regularity and power formulas over unicyclic bases
  unicyclic-bare    power formulas with no attachments (optional: this
                    equality is reported elsewhere without proof)
  colon             colon identities and the deletion max-inequality
  self-consistency  cross-checks of independent computation paths
  all               everything above except unicyclic-bare

Reports contain no wall-clock data, so a suite run with the same corpus
spec, seed, and exponent range reproduces the identical report.
"""

from __future__ import annotations

import multiprocessing
import random
import signal
import traceback
import zlib
from dataclasses import dataclass, field

from ._caps import (
    CapExceeded,
    MinusInfinity,
    RegValue,
    SearchBudgetExceeded,
    thread_count,
)
from .constructions import (
    HTSpec,
    StarOfCliquesSpec,
    attach_HT,
    construct_cochordal_cover_HT,
    ht_unicyclic_decomposition,
)
from .corpus import (
    CorpusSpec,
    generate_corpus,
    golden_union_spec,
)
from .graphs import (
    Graph,
    connected_components,
    cycle_graph,
    delete_vertices,
    from_json_dict,
    induced_subgraph,
    is_simplicial,
    neighborhood,
    to_json_dict,
)
from .invariants import (
    cochordal_cover_number,
    induced_matching_number,
    is_bipartite,
    is_cameron_walker,
    is_vertex_cover,
    is_weakly_chordal,
)
from .monomials import (
    colon,
    edge_ideal,
    equals,
    membership,
    monomial_from_vertices,
    power,
    symbolic_membership,
    symbolic_power_by_intersection,
    symbolic_power_edge,
    unit_ideal,
    zero_ideal,
)
from .resolution import (
    DEFAULT_PRIME,
    SimplicialComplex,
    betti_table,
    fold_power_tables,
    reduced_homology_dims,
    regularity_additive,
    regularity_additive_table,
    regularity_quotient,
)

DEFAULT_TIMEOUT = 120.0
GOLDEN_TIMEOUT = 600.0
GOLDEN_LATTICE_CAP = 4_000_000

VERDICTS = ("pass", "fail", "skipped")


# ------------------------------------------------------------ check type

@dataclass
class TheoremCheck:
    """Outcome of one check on one instance.

    instance holds the full JSON payload the check ran on; evidence holds
    every computed quantity, including the counterexample bundle when the
    verdict is fail.  partial_skips counts sub-relations inside a passing
    check that a cap or budget made untestable.
    """

    check_id: str
    label: str
    verdict: str
    instance: dict
    evidence: dict = field(default_factory=dict)
    reason: str = ""
    partial_skips: int = 0

    def to_json_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "label": self.label,
            "verdict": self.verdict,
            "instance": self.instance,
            "evidence": self.evidence,
            "reason": self.reason,
            "partial_skips": self.partial_skips,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "TheoremCheck":
        return cls(
            check_id=d["check_id"],
            label=d["label"],
            verdict=d["verdict"],
            instance=d["instance"],
            evidence=d.get("evidence", {}),
            reason=d.get("reason", ""),
            partial_skips=d.get("partial_skips", 0),
        )


def _jv(v: RegValue | None):
    # JSON-safe regularity value
    if v is None:
        return None
    if v == MinusInfinity:
        return "-inf"
    return int(v)


def _skipped(check_id, label, payload, reason, evidence=None):
    return TheoremCheck(check_id, label, "skipped", payload, evidence or {}, reason)


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# ------------------------------------------------------------ reg helpers

def _reg_plain(G: Graph, rational=False, **kw) -> RegValue:
    return regularity_quotient(edge_ideal(G), rational=rational, **kw)


def _reg_power(G: Graph, r: int, rational=False, **kw) -> RegValue:
    return regularity_quotient(power(edge_ideal(G), r), rational=rational, **kw)


def _reg_symbolic(G: Graph, r: int, rational=False, **kw) -> RegValue:
    return regularity_quotient(symbolic_power_edge(G, r), rational=rational, **kw)


def _nu(G: Graph) -> int:
    return induced_matching_number(G)[0]


# ------------------------------------------------------------- the checks

def check_power_reg_bounds(
    G: Graph, r_max: int = 2, *, rational: bool = False, label: str = "adhoc"
) -> TheoremCheck:
    """2r + nu - 2 <= reg(S/I^r) <= 2r + cochord - 2 for r <= r_max,
    where nu is the induced matching number and cochord the co-chordal
    cover number.  Skipped when the cover search budget runs out."""
    payload = {"graph": to_json_dict(G), "r_max": r_max, "rational": rational}
    cid = "power_reg_bounds"
    if not G.edges:
        return _skipped(cid, label, payload, "edge ideal is zero")
    nu = _nu(G)
    try:
        cc, _cert = cochordal_cover_number(G)
    except SearchBudgetExceeded as e:
        return _skipped(
            cid, label, payload,
            f"co-chordal cover number inexact: known range [{e.lower}, {e.upper}]",
            {"nu": nu},
        )
    rows = []
    ok = True
    for r in range(1, r_max + 1):
        reg = _reg_power(G, r, rational)
        lower = 2 * r + nu - 2
        upper = 2 * r + cc - 2
        good = lower <= reg <= upper
        ok = ok and good
        rows.append(
            {"r": r, "reg": _jv(reg), "lower": lower, "upper": upper, "ok": good}
        )
    ev = {"nu": nu, "cochord": cc, "rows": rows}
    reason = "" if ok else "a power regularity escaped its combinatorial bounds"
    return TheoremCheck(cid, label, _verdict(ok), payload, ev, reason)


def check_symbolic_reg_lower(
    G: Graph, r_max: int = 2, *, rational: bool = False, label: str = "adhoc"
) -> TheoremCheck:
    """2r + nu - 2 <= reg(S/I^(r)) for r <= r_max."""
    payload = {"graph": to_json_dict(G), "r_max": r_max, "rational": rational}
    cid = "symbolic_reg_lower"
    if not G.edges:
        return _skipped(cid, label, payload, "edge ideal is zero")
    nu = _nu(G)
    rows = []
    ok = True
    for r in range(1, r_max + 1):
        reg = _reg_symbolic(G, r, rational)
        lower = 2 * r + nu - 2
        good = lower <= reg
        ok = ok and good
        rows.append({"r": r, "reg": _jv(reg), "lower": lower, "ok": good})
    ev = {"nu": nu, "rows": rows}
    reason = "" if ok else "a symbolic power regularity fell below 2r + nu - 2"
    return TheoremCheck(cid, label, _verdict(ok), payload, ev, reason)


def check_bipartite_power_equality(
    G: Graph, r_max: int = 3, *, label: str = "adhoc"
) -> TheoremCheck:
    """Bipartite graphs have I^r = I^(r) for every r; non-bipartite
    graphs must show a violation by r = k+1 where 2k+1 is the length of
    a recorded odd cycle, with the product of the cycle vertices as the
    canonical witness."""
    payload = {"graph": to_json_dict(G), "r_max": r_max}
    cid = "bipartite_power_equality"
    if not G.edges:
        return _skipped(cid, label, payload, "edge ideal is zero")
    I = edge_ideal(G)
    bip, cert = is_bipartite(G)
    if bip:
        rows = []
        ok = True
        witness = None
        for r in range(1, r_max + 1):
            Pr = power(I, r)
            Sr = symbolic_power_edge(G, r)
            eq = equals(Pr, Sr)
            rows.append({"r": r, "equal": eq})
            if not eq and witness is None:
                for g in Sr.gens:
                    if not membership(g, Pr):
                        witness = {"r": r, "monomial": [int(x) for x in g]}
                        break
            ok = ok and eq
        ev = {"bipartite": True, "rows": rows}
        if witness:
            ev["counterexample"] = witness
        reason = "" if ok else "powers of a bipartite edge ideal diverged"
        return TheoremCheck(cid, label, _verdict(ok), payload, ev, reason)

    cyc = tuple(int(v) for v in cert)
    k = (len(cyc) - 1) // 2
    r_hi = max(r_max, k + 1)
    rows = []
    first = None
    witness = None
    for r in range(1, r_hi + 1):
        Pr = power(I, r)
        Sr = symbolic_power_edge(G, r)
        eq = equals(Pr, Sr)
        rows.append({"r": r, "equal": eq})
        if not eq and first is None:
            first = r
            for g in Sr.gens:
                if not membership(g, Pr):
                    witness = {
                        "r": r,
                        "monomial": [int(x) for x in g],
                        "in_symbolic": symbolic_membership(G, g, r),
                        "in_power": membership(g, Pr),
                    }
                    break
    prod = monomial_from_vertices(G.n, cyc)
    prod_ok = symbolic_membership(G, prod, k + 1) and not membership(
        prod, power(I, k + 1)
    )
    ok = first is not None and prod_ok
    ev = {
        "bipartite": False,
        "odd_cycle": list(cyc),
        "rows": rows,
        "first_violation_r": first,
        "witness": witness,
        "cycle_product": {
            "monomial": list(prod),
            "r": k + 1,
            "separates": prod_ok,
        },
    }
    reason = "" if ok else "no symbolic/ordinary separation found for a non-bipartite graph"
    return TheoremCheck(cid, label, _verdict(ok), payload, ev, reason)


def check_ht_symbolic_upper(
    spec: HTSpec, r_max: int = 2, *, rational: bool = False, label: str = "adhoc"
) -> TheoremCheck:
    """For a bipartite base with clique attachments,
    reg(S/I(G)^(r)) <= 2r + reg(S/I(G)) - 2."""
    payload = {"ht": spec.to_json_dict(), "r_max": r_max, "rational": rational}
    cid = "ht_symbolic_upper"
    if not is_bipartite(spec.base)[0]:
        return _skipped(cid, label, payload, "hypothesis: base graph is not bipartite")
    G = attach_HT(spec)
    if not G.edges:
        return _skipped(cid, label, payload, "edge ideal is zero")
    base_reg = _reg_plain(G, rational)
    rows = []
    ok = True
    partial = 0
    for r in range(1, r_max + 1):
        bound = 2 * r + base_reg - 2
        try:
            reg = _reg_symbolic(G, r, rational)
        except (CapExceeded, SearchBudgetExceeded) as e:
            rows.append({"r": r, "reg": None, "bound": _jv(bound), "skip": str(e)})
            partial += 1
            continue
        good = reg <= bound
        ok = ok and good
        rows.append({"r": r, "reg": _jv(reg), "bound": _jv(bound), "ok": good})
    if partial == r_max:
        return _skipped(cid, label, payload, "every exponent hit a cap", {"rows": rows})
    ev = {"reg_quotient": _jv(base_reg), "rows": rows}
    reason = "" if ok else "a symbolic power exceeded 2r + reg - 2"
    if ok and partial:
        reason = f"{partial} exponent(s) skipped by caps"
    return TheoremCheck(cid, label, _verdict(ok), payload, ev, reason, partial)


def _case_graph(spec: HTSpec, case: int):
    """Returns (G, skip_reason)."""
    G = attach_HT(spec)
    if case == 1:
        if not is_bipartite(spec.base)[0]:
            return G, "hypothesis: base graph is not bipartite"
        if not is_weakly_chordal(spec.base):
            return G, "hypothesis: base graph is not weakly chordal"
    elif case == 2:
        if not is_cameron_walker(G):
            return G, "hypothesis: matching number exceeds induced matching number"
    elif case == 3:
        if not is_bipartite(spec.base)[0]:
            return G, "hypothesis: base graph is not bipartite"
        if not is_vertex_cover(spec.base, spec.attachment_vertices):
            return G, "hypothesis: attachment set is not a vertex cover"
    else:
        return G, f"unknown case {case}"
    return G, ""


def check_cover_matching(
    spec: HTSpec, case: int, *, label: str = "adhoc"
) -> TheoremCheck:
    """nu(G) = cochord(G) on three hypothesis classes: (1) weakly chordal
    bipartite base, (2) induced matching number equal to matching number,
    (3) bipartite base whose attachment set is a vertex cover.  Case 3
    also builds the constructive cover and compares its size."""
    payload = {"ht": spec.to_json_dict(), "case": case}
    cid = "cover_matching"
    G, why = _case_graph(spec, case)
    if why:
        return _skipped(cid, label, payload, why)
    nu = _nu(G)
    try:
        cc, cert = cochordal_cover_number(G)
    except SearchBudgetExceeded as e:
        return _skipped(
            cid, label, payload,
            f"co-chordal cover number inexact: known range [{e.lower}, {e.upper}]",
            {"nu": nu},
        )
    ev = {"case": case, "nu": nu, "cochord": cc,
          "cover_part_sizes": [len(p) for p in cert.parts]}
    ok = nu == cc
    if case == 3:
        try:
            parts = construct_cochordal_cover_HT(spec)
        except AssertionError as e:
            ev["constructive_error"] = str(e)
            return TheoremCheck(
                cid, label, "fail", payload, ev,
                "constructive cover failed validation",
            )
        ev["constructive_size"] = len(parts.parts)
        ok = ok and len(parts.parts) == cc
    reason = "" if ok else "cover number and induced matching number disagree"
    return TheoremCheck(cid, label, _verdict(ok), payload, ev, reason)


def check_class_power_formula(
    spec: HTSpec, case: int, r_max: int = 2, *,
    rational: bool = False, label: str = "adhoc",
) -> TheoremCheck:
    """reg(S/I^(r)) = reg(S/I^r) = 2r + nu - 2 on the same three
    hypothesis classes."""
    payload = {"ht": spec.to_json_dict(), "case": case,
               "r_max": r_max, "rational": rational}
    cid = "class_power_formula"
    G, why = _case_graph(spec, case)
    if why:
        return _skipped(cid, label, payload, why)
    if not G.edges:
        return _skipped(cid, label, payload, "edge ideal is zero")
    nu = _nu(G)
    rows = []
    ok = True
    partial = 0
    tested = 0
    for r in range(1, r_max + 1):
        target = 2 * r + nu - 2
        row = {"r": r, "target": target}
        for name, fn in (("ordinary", _reg_power), ("symbolic", _reg_symbolic)):
            try:
                val = fn(G, r, rational)
            except (CapExceeded, SearchBudgetExceeded) as e:
                row[name] = None
                row[f"{name}_skip"] = str(e)
                partial += 1
                continue
            row[name] = _jv(val)
            row[f"{name}_ok"] = val == target
            ok = ok and val == target
            tested += 1
        rows.append(row)
    if not tested:
        return _skipped(cid, label, payload, "every exponent hit a cap", {"rows": rows})
    ev = {"case": case, "nu": nu, "rows": rows}
    reason = "" if ok else "a power regularity missed 2r + nu - 2"
    if ok and partial:
        reason = f"{partial} value(s) skipped by caps"
    return TheoremCheck(cid, label, _verdict(ok), payload, ev, reason, partial)


def check_unicyclic_reg(
    spec: HTSpec, *, rational: bool = False, label: str = "adhoc"
) -> TheoremCheck:
    """Over a unicyclic base: nu <= reg(S/I) <= nu + 1, with equality
    reg = nu forced when the cycle length is 0 or 1 mod 3, or when it is
    2 mod 3 and deleting the attachment-neighbour set drops the induced
    matching number."""
    payload = {"ht": spec.to_json_dict(), "rational": rational}
    cid = "unicyclic_reg"
    try:
        dec = ht_unicyclic_decomposition(spec)
    except ValueError as e:
        return _skipped(cid, label, payload, f"hypothesis: {e}")
    G = attach_HT(spec)
    n_cyc = len(dec.cycle)
    nu = _nu(G)
    reg = _reg_plain(G, rational)
    sandwich = nu <= reg <= nu + 1

    Gdel, _ = delete_vertices(G, dec.gamma)
    nu_del = _nu(Gdel)
    # decomposition identity: the deletion splits into the cycle and the
    # trimmed pieces, so its invariant is the sum of theirs
    parts_sum = _nu(induced_subgraph(G, dec.cycle)[0]) + sum(
        _nu(induced_subgraph(G, sorted(h))[0]) for h in dec.h_parts
    )
    identity = nu_del == parts_sum

    mode = n_cyc % 3
    forced = mode in (0, 1) or (mode == 2 and nu_del < nu)
    equality = (reg == nu) if forced else True

    ok = sandwich and identity and equality
    ev = {
        "cycle_length": n_cyc,
        "cycle_mod_3": mode,
        "nu": nu,
        "reg": _jv(reg),
        "nu_after_deletion": nu_del,
        "nu_parts_sum": parts_sum,
        "sandwich_ok": sandwich,
        "identity_ok": identity,
        "equality_forced": forced,
        "equality_ok": equality,
    }
    if not ok:
        bits = []
        if not sandwich:
            bits.append("regularity left the [nu, nu+1] window")
        if not identity:
            bits.append("deletion invariant mismatch")
        if not equality:
            bits.append("forced equality reg = nu failed")
        reason = "; ".join(bits)
    else:
        reason = ""
    return TheoremCheck(cid, label, _verdict(ok), payload, ev, reason)


def check_unicyclic_powers(
    spec: HTSpec, r_max: int = 2, *,
    require_attachments: bool = True, rational: bool = False,
    label: str = "adhoc",
) -> TheoremCheck:
    """Over a unicyclic base: both reg(S/I^r) and reg(S/I^(r)) stay at or
    below 2r + reg(S/I) - 2 for any attachment set, with equality when at
    least one attachment is present.  With require_attachments=False the
    equality is also demanded of attachment-free instances; that claim is
    reported elsewhere without proof, so it lives in an optional suite."""
    payload = {
        "ht": spec.to_json_dict(), "r_max": r_max,
        "require_attachments": require_attachments, "rational": rational,
    }
    cid = "unicyclic_powers"
    try:
        ht_unicyclic_decomposition(spec)
    except ValueError as e:
        return _skipped(cid, label, payload, f"hypothesis: {e}")
    expect_equality = bool(spec.attachments) or not require_attachments
    G = attach_HT(spec)
    base_reg = _reg_plain(G, rational)
    rows = []
    ok = True
    partial = 0
    tested = 0
    for r in range(1, r_max + 1):
        bound = 2 * r + base_reg - 2
        row = {"r": r, "bound": _jv(bound)}
        for name, fn in (("ordinary", _reg_power), ("symbolic", _reg_symbolic)):
            try:
                val = fn(G, r, rational)
            except (CapExceeded, SearchBudgetExceeded) as e:
                row[name] = None
                row[f"{name}_skip"] = str(e)
                partial += 1
                continue
            row[name] = _jv(val)
            upper_ok = val <= bound
            row[f"{name}_upper_ok"] = upper_ok
            ok = ok and upper_ok
            if expect_equality:
                eq_ok = val == bound
                row[f"{name}_equal_ok"] = eq_ok
                ok = ok and eq_ok
            tested += 1
        rows.append(row)
    if not tested:
        return _skipped(cid, label, payload, "every exponent hit a cap", {"rows": rows})
    ev = {
        "reg_quotient": _jv(base_reg),
        "attachments": len(spec.attachments),
        "equality_expected": expect_equality,
        "rows": rows,
    }
    reason = "" if ok else "a power regularity violated the 2r + reg - 2 relation"
    if ok and partial:
        reason = f"{partial} value(s) skipped by caps"
    return TheoremCheck(cid, label, _verdict(ok), payload, ev, reason, partial)


def check_colon_identity(
    G: Graph, x: int, r_max: int = 3, *,
    rational: bool = False, label: str = "adhoc",
    max_partitions: int = 16,
) -> TheoremCheck:
    """For a simplicial vertex x with closed neighbourhood W: splitting
    W = A + B with x in B gives (I(G-A)^(r) : x_B) = I(G-A)^(r-|B|+1),
    the unit ideal once |B| >= r+1.  For r >= 2 the deletion
    max-inequality is also checked:
    reg(S/I^(r)) <= max(reg(S/I(G-x)^(r)), reg over all splits of the
    colon quotient plus |B|)."""
    payload = {"graph": to_json_dict(G), "x": x, "r_max": r_max,
               "rational": rational}
    cid = "colon_identity"
    if not is_simplicial(G, x):
        return _skipped(cid, label, payload, f"hypothesis: vertex {x} is not simplicial")
    if G.degree(x) == 0:
        return _skipped(cid, label, payload, f"hypothesis: vertex {x} is isolated")
    others = sorted(neighborhood(G, x))
    all_parts = []
    for bits in range(1 << len(others)):
        B = [x] + [others[i] for i in range(len(others)) if (bits >> i) & 1]
        A = [others[i] for i in range(len(others)) if not (bits >> i) & 1]
        all_parts.append((tuple(sorted(A)), tuple(sorted(B))))
    all_parts.sort()
    exhaustive = len(all_parts) <= max_partitions
    if exhaustive:
        parts = all_parts
    else:
        rng = random.Random(zlib.crc32(label.encode()))
        parts = sorted(rng.sample(all_parts, max_partitions))

    sym_cache: dict[tuple[tuple[int, ...], int], object] = {}

    def symbolic_of(H, key, r):
        # deleting A may leave no edges; the symbolic power is then zero
        if (key, r) not in sym_cache:
            sym_cache[(key, r)] = (
                zero_ideal(H.n) if not H.edges else symbolic_power_edge(H, r)
            )
        return sym_cache[(key, r)]

    rows = []
    ok = True
    colon_regs: dict[int, list] = {r: [] for r in range(1, r_max + 1)}
    for A, B in parts:
        H, relab = delete_vertices(G, A)
        Bm = [relab[b] for b in B]
        xB = monomial_from_vertices(H.n, Bm)
        for r in range(1, r_max + 1):
            Isym = symbolic_of(H, A, r)
            Q = colon(Isym, xB)
            t = r - len(B) + 1
            expected = unit_ideal(H.n) if t <= 0 else symbolic_of(H, A, t)
            match = equals(Q, expected)
            row = {"r": r, "A": list(A), "B": list(B), "t": t, "identity_ok": match}
            if len(B) >= 2:
                head = monomial_from_vertices(H.n, Bm[:-1])
                tail = monomial_from_vertices(H.n, Bm[-1:])
                stepwise = equals(colon(colon(Isym, head), tail), Q)
                row["stepwise_ok"] = stepwise
                match = match and stepwise
            ok = ok and match
            rows.append(row)
            colon_regs[r].append(
                (A, B, regularity_quotient(Q, rational=rational))
            )

    ineq_rows = []
    if exhaustive and r_max >= 2:
        Gx, _ = delete_vertices(G, [x])
        for r in range(2, r_max + 1):
            lhs = _reg_symbolic(G, r, rational)
            term0 = regularity_quotient(
                zero_ideal(Gx.n) if not Gx.edges else symbolic_power_edge(Gx, r),
                rational=rational,
            )
            terms = [reg + len(B) for (A, B, reg) in colon_regs[r]]
            rhs = max([term0] + terms)
            holds = lhs <= rhs
            ok = ok and holds
            ineq_rows.append({
                "r": r,
                "lhs": _jv(lhs),
                "deletion_term": _jv(term0),
                "colon_terms": [
                    {"A": list(A), "B": list(B), "value": _jv(reg + len(B))}
                    for (A, B, reg) in colon_regs[r]
                ],
                "holds": holds,
            })

    ev = {
        "x": x,
        "closed_neighborhood": [x] + others,
        "partitions_checked": len(parts),
        "partitions_exhaustive": exhaustive,
        "rows": rows,
        "max_inequality": ineq_rows,
    }
    reason = "" if ok else "a colon identity or the deletion max-inequality failed"
    if ok and not exhaustive:
        reason = "partition sample only; max-inequality not evaluated"
    return TheoremCheck(cid, label, _verdict(ok), payload, ev, reason)


# ------------------------------------------------------------ golden checks

def check_golden_reg(
    G: Graph, expected: int, *, rational: bool = False, label: str = "adhoc"
) -> TheoremCheck:
    payload = {"graph": to_json_dict(G), "expected": expected, "rational": rational}
    reg = _reg_plain(G, rational)
    ok = reg == expected
    return TheoremCheck(
        "golden_reg", label, _verdict(ok), payload,
        {"reg": _jv(reg), "expected": expected},
        "" if ok else "regularity disagrees with the recorded value",
    )


def check_golden_invariants(
    G: Graph, expected_nu: int, expected_cochord: int, *, label: str = "adhoc"
) -> TheoremCheck:
    payload = {"graph": to_json_dict(G), "expected_nu": expected_nu,
               "expected_cochord": expected_cochord}
    nu = _nu(G)
    cc, _ = cochordal_cover_number(G)
    ok = nu == expected_nu and cc == expected_cochord
    return TheoremCheck(
        "golden_invariants", label, _verdict(ok), payload,
        {"nu": nu, "cochord": cc},
        "" if ok else "invariants disagree with the recorded values",
    )


def check_golden_union_plain(
    spec: HTSpec, expected: int, *, rational: bool = False, label: str = "adhoc"
) -> TheoremCheck:
    payload = {"ht": spec.to_json_dict(), "expected": expected, "rational": rational}
    G = attach_HT(spec)
    reg = regularity_additive(G, power_spec=("plain",), rational=rational)
    comps = []
    for c in sorted(connected_components(G), key=min):
        sub, _ = induced_subgraph(G, sorted(c))
        if sub.edges:
            comps.append({"vertices": len(c), "reg": _jv(_reg_plain(sub, rational))})
    ok = reg == expected
    return TheoremCheck(
        "golden_union_plain", label, _verdict(ok), payload,
        {"reg": _jv(reg), "expected": expected, "components": comps},
        "" if ok else "componentwise regularity sum disagrees with the recorded value",
    )


def check_golden_union_symbolic(
    spec: HTSpec, expected: dict[int, int], *,
    rational: bool = False, lattice_cap: int = GOLDEN_LATTICE_CAP,
    label: str = "adhoc",
) -> TheoremCheck:
    """Symbolic power regularity of a disjoint union, combined from
    per-component tables (the union itself is never fed to the
    resolution engine)."""
    payload = {
        "ht": spec.to_json_dict(),
        "expected": {str(r): v for r, v in sorted(expected.items())},
        "rational": rational,
        "lattice_cap": lattice_cap,
    }
    cid = "golden_union_symbolic"
    G = attach_HT(spec)
    rmax = max(expected)
    tables = []
    comp_ev = []
    for c in sorted(connected_components(G), key=min):
        sub, _ = induced_subgraph(G, sorted(c))
        if not sub.edges:
            continue
        table = regularity_additive_table(
            sub, kind="symbolic", rmax=rmax,
            rational=rational, lattice_cap=lattice_cap,
        )
        tables.append(table)
        comp_ev.append({
            "vertices": len(c),
            "table": {str(r): _jv(v) for r, v in sorted(table.items())},
        })
    folded = fold_power_tables(tables, rmax)
    rows = []
    ok = True
    for r, want in sorted(expected.items()):
        got = folded[r]
        good = got == want
        ok = ok and good
        rows.append({"r": r, "computed": _jv(got), "expected": want, "ok": good})
    ev = {
        "component_tables": comp_ev,
        "combined_table": {str(r): _jv(v) for r, v in sorted(folded.items())},
        "rows": rows,
    }
    reason = "" if ok else "combined symbolic regularity disagrees with the recorded values"
    return TheoremCheck(cid, label, _verdict(ok), payload, ev, reason)


# ----------------------------------------------------- consistency checks

def check_field_agreement(G: Graph, *, label: str = "adhoc") -> TheoremCheck:
    """Betti tables over GF(32003) and over the rationals agree."""
    payload = {"graph": to_json_dict(G)}
    cid = "field_agreement"
    if not G.edges:
        return _skipped(cid, label, payload, "edge ideal is zero")
    I = edge_ideal(G)
    bt_p = betti_table(I)
    bt_q = betti_table(I, rational=True)
    same_fine = bt_p.fine == bt_q.fine
    reg_p = bt_p.regularity_of_quotient()
    reg_q = bt_q.regularity_of_quotient()
    ok = same_fine and reg_p == reg_q
    ev = {
        "char": bt_p.char,
        "reg_mod_p": _jv(reg_p),
        "reg_rational": _jv(reg_q),
        "fine_tables_equal": same_fine,
        "fine_entries": len(bt_p.fine),
    }
    if not ok:
        keys = set(bt_p.fine) | set(bt_q.fine)
        diff = sorted(k for k in keys if bt_p.fine.get(k) != bt_q.fine.get(k))
        ev["diverging_keys"] = [
            [i, list(m), bt_p.fine.get((i, m)), bt_q.fine.get((i, m))]
            for i, m in diff[:10]
        ]
    return TheoremCheck(
        cid, label, _verdict(ok), payload, ev,
        "" if ok else "characteristic-dependent Betti numbers detected",
    )


def check_box_intersection(
    G: Graph, r_max: int = 2, *, label: str = "adhoc"
) -> TheoremCheck:
    """The bounded-box symbolic power generators match the primary
    intersection computed independently."""
    payload = {"graph": to_json_dict(G), "r_max": r_max}
    cid = "box_intersection"
    if not G.edges:
        return _skipped(cid, label, payload, "edge ideal is zero")
    rows = []
    ok = True
    for r in range(1, r_max + 1):
        eq = equals(symbolic_power_edge(G, r), symbolic_power_by_intersection(G, r))
        rows.append({"r": r, "equal": eq})
        ok = ok and eq
    return TheoremCheck(
        cid, label, _verdict(ok), payload, {"rows": rows},
        "" if ok else "box enumeration and cover intersection disagree",
    )


def check_convention_anchors(*, label: str = "conventions") -> TheoremCheck:
    """Fixed-point checks of the homological conventions: reduced
    homology of the hollow triangle, a point, the empty complex, the
    void complex, and two points; regularity of the zero and unit
    ideals; and the smallest symbolic-power generator set."""
    payload: dict = {}
    cid = "convention_anchors"
    rows = []

    def anchor(name, got, want):
        rows.append({"anchor": name, "got": repr(got), "want": repr(want),
                     "ok": got == want})

    hollow = SimplicialComplex(3, frozenset({0, 1, 2, 4, 3, 5, 6}))
    anchor("hollow_triangle", reduced_homology_dims(hollow), {1: 1})
    point = SimplicialComplex(1, frozenset({0, 1}))
    anchor("point", reduced_homology_dims(point), {})
    empty = SimplicialComplex(0, frozenset({0}))
    anchor("empty_complex", reduced_homology_dims(empty), {-1: 1})
    void = SimplicialComplex(0, frozenset())
    anchor("void_complex", reduced_homology_dims(void), {})
    two_points = SimplicialComplex(2, frozenset({0, 1, 2}))
    anchor("two_points", reduced_homology_dims(two_points), {0: 1})

    anchor("reg_zero_ideal", regularity_quotient(zero_ideal(3)), 0)
    anchor("reg_unit_ideal", regularity_quotient(unit_ideal(3)), MinusInfinity)

    tri = cycle_graph(3)
    got = sorted(tuple(int(x) for x in g) for g in symbolic_power_edge(tri, 2).gens)
    want = sorted([(1, 1, 1), (2, 2, 0), (2, 0, 2), (0, 2, 2)])
    anchor("triangle_symbolic_square", got, want)

    ok = all(r["ok"] for r in rows)
    return TheoremCheck(
        cid, label, _verdict(ok), payload, {"rows": rows},
        "" if ok else "a fixed convention anchor moved",
    )


# --------------------------------------------------------------- registry

def _g(payload):
    return from_json_dict(payload["graph"])


def _h(payload):
    return HTSpec.from_json_dict(payload["ht"])


_REGISTRY = {
    "power_reg_bounds": lambda label, p: check_power_reg_bounds(
        _g(p), p["r_max"], rational=p.get("rational", False), label=label),
    "symbolic_reg_lower": lambda label, p: check_symbolic_reg_lower(
        _g(p), p["r_max"], rational=p.get("rational", False), label=label),
    "bipartite_power_equality": lambda label, p: check_bipartite_power_equality(
        _g(p), p["r_max"], label=label),
    "ht_symbolic_upper": lambda label, p: check_ht_symbolic_upper(
        _h(p), p["r_max"], rational=p.get("rational", False), label=label),
    "cover_matching": lambda label, p: check_cover_matching(
        _h(p), p["case"], label=label),
    "class_power_formula": lambda label, p: check_class_power_formula(
        _h(p), p["case"], p["r_max"], rational=p.get("rational", False), label=label),
    "unicyclic_reg": lambda label, p: check_unicyclic_reg(
        _h(p), rational=p.get("rational", False), label=label),
    "unicyclic_powers": lambda label, p: check_unicyclic_powers(
        _h(p), p["r_max"], require_attachments=p.get("require_attachments", True),
        rational=p.get("rational", False), label=label),
    "colon_identity": lambda label, p: check_colon_identity(
        _g(p), p["x"], p["r_max"], rational=p.get("rational", False), label=label),
    "golden_reg": lambda label, p: check_golden_reg(
        _g(p), p["expected"], rational=p.get("rational", False), label=label),
    "golden_invariants": lambda label, p: check_golden_invariants(
        _g(p), p["expected_nu"], p["expected_cochord"], label=label),
    "golden_union_plain": lambda label, p: check_golden_union_plain(
        _h(p), p["expected"], rational=p.get("rational", False), label=label),
    "golden_union_symbolic": lambda label, p: check_golden_union_symbolic(
        _h(p), {int(r): v for r, v in p["expected"].items()},
        rational=p.get("rational", False),
        lattice_cap=p.get("lattice_cap", GOLDEN_LATTICE_CAP), label=label),
    "field_agreement": lambda label, p: check_field_agreement(_g(p), label=label),
    "box_intersection": lambda label, p: check_box_intersection(
        _g(p), p["r_max"], label=label),
    "convention_anchors": lambda label, p: check_convention_anchors(label=label),
}


def rerun_check(check_json: dict) -> TheoremCheck:
    """Re-execute a reported check from its own JSON record."""
    cid = check_json["check_id"]
    if cid not in _REGISTRY:
        raise ValueError(f"unknown check id {cid!r}")
    return _REGISTRY[cid](check_json["label"], check_json["instance"])


# -------------------------------------------------------------- execution

class _CheckTimeout(Exception):
    pass


def _raise_timeout(signum, frame):
    raise _CheckTimeout()


def _run_task(task: dict) -> dict:
    cid = task["check_id"]
    label = task["label"]
    payload = task["payload"]
    limit = task.get("timeout", DEFAULT_TIMEOUT)
    use_alarm = limit and hasattr(signal, "SIGALRM")
    old = None
    if use_alarm:
        old = signal.signal(signal.SIGALRM, _raise_timeout)
        signal.alarm(int(limit))
    try:
        check = _REGISTRY[cid](label, payload)
    except _CheckTimeout:
        check = _skipped(cid, label, payload, f"timeout after {int(limit)}s")
    except (CapExceeded, SearchBudgetExceeded) as e:
        check = _skipped(cid, label, payload, str(e))
    except Exception:
        check = TheoremCheck(
            cid, label, "fail", payload,
            {"traceback": traceback.format_exc().splitlines()[-6:]},
            "unexpected error while running the check",
        )
    finally:
        if use_alarm:
            signal.alarm(0)
            signal.signal(signal.SIGALRM, old)
    return check.to_json_dict()


def _execute(tasks: list[dict], jobs: int | None) -> list[dict]:
    if jobs is None:
        jobs = thread_count()
    jobs = max(1, min(jobs, len(tasks)))
    if jobs == 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(jobs) as pool:
        return pool.map(_run_task, tasks, chunksize=1)


# ----------------------------------------------------------------- suites

def _task(check_id, label, payload, timeout=None):
    t = {"check_id": check_id, "label": label, "payload": payload}
    if timeout is not None:
        t["timeout"] = timeout
    return t


def _graph_payload(G, **kw):
    return {"graph": to_json_dict(G), **kw}


def _ht_payload(spec, **kw):
    return {"ht": spec.to_json_dict(), **kw}


def _tasks_goldens(corpus, r_max, seed, rational):
    r_max = 3 if r_max is None else r_max
    c10k3_spec = HTSpec(cycle_graph(10), ((0, StarOfCliquesSpec((3,))),))
    c10k3 = attach_HT(c10k3_spec)
    union = golden_union_spec()
    tasks = [
        _task("golden_reg", "goldens/cycle-8",
              _graph_payload(cycle_graph(8), expected=3, rational=rational)),
        _task("golden_reg", "goldens/cycle-10",
              _graph_payload(cycle_graph(10), expected=3, rational=rational)),
        _task("golden_reg", "goldens/cycle-10-triangle",
              _graph_payload(c10k3, expected=4, rational=rational)),
        _task("golden_invariants", "goldens/cycle-10-triangle",
              _graph_payload(c10k3, expected_nu=4, expected_cochord=4)),
        _task("golden_union_plain", "goldens/union",
              _ht_payload(union, expected=13, rational=rational)),
    ]
    rs = [r for r in (2, 3) if r <= r_max]
    if rs:
        tasks.append(_task(
            "golden_union_symbolic", "goldens/union",
            _ht_payload(
                union,
                expected={str(r): 2 * r + 9 for r in rs},
                rational=rational,
                lattice_cap=GOLDEN_LATTICE_CAP,
            ),
            timeout=GOLDEN_TIMEOUT,
        ))
    return tasks


def _tasks_small_exhaustive(corpus, r_max, seed, rational):
    corpus = corpus or CorpusSpec("all-connected", max_vertices=6)
    r_max = 2 if r_max is None else r_max
    tasks = []
    for inst in generate_corpus(corpus):
        if not inst.graph.edges:
            continue
        g = _graph_payload(inst.graph, r_max=r_max, rational=rational)
        tasks.append(_task("power_reg_bounds", f"small-exhaustive/{inst.label}", g))
        tasks.append(_task("symbolic_reg_lower", f"small-exhaustive/{inst.label}", g))
        tasks.append(_task(
            "bipartite_power_equality", f"small-exhaustive/{inst.label}",
            _graph_payload(inst.graph, r_max=r_max),
        ))
    return tasks


def _tasks_bipartite(corpus, r_max, seed, rational):
    corpus = corpus or CorpusSpec(
        "random-ht", count=50, seed=20240817 if seed is None else seed,
        max_vertices=12, max_base=7,
    )
    r_max = 2 if r_max is None else r_max
    return [
        _task("ht_symbolic_upper", f"bipartite/{inst.label}",
              _ht_payload(inst.ht, r_max=r_max, rational=rational))
        for inst in generate_corpus(corpus)
        if inst.ht is not None
    ]


_COVER_BASES = {1: 6, 2: 5, 3: 6}


def _tasks_cover_classes(corpus, r_max, seed, rational):
    r_max = 2 if r_max is None else r_max
    groups = []
    if corpus is not None:
        if corpus.case not in (1, 2, 3):
            raise ValueError("cover-classes corpus needs case 1, 2 or 3")
        groups.append(corpus)
    else:
        base_seed = 20240901 if seed is None else seed
        for case in (1, 2, 3):
            groups.append(CorpusSpec(
                "random-ht", count=50, seed=base_seed + case, case=case,
                max_vertices=12, max_base=_COVER_BASES[case],
            ))
    tasks = []
    for g in groups:
        insts = generate_corpus(g)
        for inst in insts:
            tasks.append(_task(
                "cover_matching", f"cover-classes/{inst.label}",
                _ht_payload(inst.ht, case=g.case),
            ))
        for inst in insts[:12]:
            if inst.graph.n <= 11:
                tasks.append(_task(
                    "class_power_formula", f"cover-classes/{inst.label}",
                    _ht_payload(inst.ht, case=g.case, r_max=r_max,
                                rational=rational),
                ))
    return tasks


def _tasks_unicyclic(corpus, r_max, seed, rational):
    corpus = corpus or CorpusSpec(
        "random-unicyclic-ht", count=60, seed=20240823 if seed is None else seed,
        max_vertices=12, max_base=9,
    )
    r_max = 2 if r_max is None else r_max
    tasks = []
    for inst in generate_corpus(corpus):
        if inst.ht is None:
            continue
        tasks.append(_task(
            "unicyclic_reg", f"unicyclic/{inst.label}",
            _ht_payload(inst.ht, rational=rational),
        ))
        tasks.append(_task(
            "unicyclic_powers", f"unicyclic/{inst.label}",
            _ht_payload(inst.ht, r_max=r_max, require_attachments=True,
                        rational=rational),
        ))
    return tasks


def _tasks_unicyclic_bare(corpus, r_max, seed, rational):
    corpus = corpus or CorpusSpec(
        "random-unicyclic-ht", count=25, seed=20240829 if seed is None else seed,
        max_vertices=10, max_base=8, require_attachments=False,
    )
    r_max = 2 if r_max is None else r_max
    return [
        _task("unicyclic_powers", f"unicyclic-bare/{inst.label}",
              _ht_payload(inst.ht, r_max=r_max, require_attachments=False,
                          rational=rational))
        for inst in generate_corpus(corpus)
        if inst.ht is not None
    ]


def _tasks_colon(corpus, r_max, seed, rational):
    r_max = 3 if r_max is None else r_max
    base_seed = 20240907 if seed is None else seed
    if corpus is not None:
        corpora = [corpus]
    else:
        corpora = [
            CorpusSpec("random-unicyclic-ht", count=12, seed=base_seed,
                       max_vertices=9, max_base=6),
            CorpusSpec("random-ht", count=12, seed=base_seed + 1,
                       max_vertices=9, max_base=5),
        ]
    tasks = []
    for c in corpora:
        for inst in generate_corpus(c):
            G = inst.graph
            xs = [v for v in range(G.n)
                  if G.degree(v) >= 1 and is_simplicial(G, v)]
            for x in xs[:2]:
                tasks.append(_task(
                    "colon_identity", f"colon/{inst.label}-x{x}",
                    _graph_payload(G, x=x, r_max=r_max, rational=rational),
                ))
    return tasks


def _tasks_self_consistency(corpus, r_max, seed, rational):
    corpus = corpus or CorpusSpec("all-connected", max_vertices=5)
    r_max = 2 if r_max is None else r_max
    tasks = [_task("convention_anchors", "self-consistency/conventions", {})]
    for inst in generate_corpus(corpus):
        if not inst.graph.edges:
            continue
        if inst.graph.n <= 7:
            tasks.append(_task(
                "field_agreement", f"self-consistency/{inst.label}",
                _graph_payload(inst.graph),
            ))
        if inst.graph.n <= 6:
            tasks.append(_task(
                "box_intersection", f"self-consistency/{inst.label}",
                _graph_payload(inst.graph, r_max=min(r_max, 3)),
            ))
    return tasks


SUITES = {
    "goldens": _tasks_goldens,
    "small-exhaustive": _tasks_small_exhaustive,
    "bipartite": _tasks_bipartite,
    "cover-classes": _tasks_cover_classes,
    "unicyclic": _tasks_unicyclic,
    "unicyclic-bare": _tasks_unicyclic_bare,
    "colon": _tasks_colon,
    "self-consistency": _tasks_self_consistency,
}

DEFAULT_SUITE_ORDER = (
    "goldens", "small-exhaustive", "bipartite", "cover-classes",
    "unicyclic", "colon", "self-consistency",
)

REPORT_FORMAT = "eil-verify-report/1"


def run_suite(
    suite: str,
    corpus: CorpusSpec | None = None,
    r_max: int | None = None,
    *,
    seed: int | None = None,
    rational: bool = False,
    jobs: int | None = None,
    timeout: float | None = None,
) -> dict:
    """Build and execute one suite (or "all"), returning the report
    dict.  corpus, r_max and seed override the suite defaults; timeout
    replaces the per-instance limit."""
    if suite == "all":
        if corpus is not None:
            raise ValueError(
                "a corpus override applies to a single suite, not to 'all'"
            )
        names = DEFAULT_SUITE_ORDER
    elif suite in SUITES:
        names = (suite,)
    else:
        raise ValueError(
            f"unknown suite {suite!r}; known: {('all',) + tuple(SUITES)}"
        )
    tasks = []
    for name in names:
        tasks.extend(SUITES[name](corpus, r_max, seed, rational))
    if timeout is not None:
        for t in tasks:
            t["timeout"] = timeout
    results = _execute(tasks, jobs)

    by_check: dict[str, dict] = {}
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    partial = 0
    for r in results:
        counts[r["verdict"]] += 1
        partial += r.get("partial_skips", 0)
        slot = by_check.setdefault(
            r["check_id"], {"pass": 0, "fail": 0, "skipped": 0}
        )
        slot[r["verdict"]] += 1
    return {
        "format": REPORT_FORMAT,
        "suite": suite,
        "char": 0 if rational else DEFAULT_PRIME,
        "r_max": r_max,
        "seed": seed,
        "corpus": corpus.to_json_dict() if corpus is not None else None,
        "checks": results,
        "summary": {
            "total": len(results),
            **counts,
            "partial_skips": partial,
            "by_check": {k: by_check[k] for k in sorted(by_check)},
        },
    }


def exit_code_for(report: dict, *, skips_ok: bool = False) -> int:
    """0 all pass, 1 any failure, 3 skips present (0 with skips_ok)."""
    s = report["summary"]
    if s["fail"]:
        return 1
    if (s["skipped"] or s["partial_skips"]) and not skips_ok:
        return 3
    return 0
