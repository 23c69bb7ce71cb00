"""Exhaustive extremal search over small-graph corpora plus the clause
rules that pick the conjectured/known maximizer family for given
(a, b, n, alpha).

Canonical forms use colour refinement with individualization and
twin-pruned backtracking, exact for n <= 10.  The internal enumerator
builds all graphs up to isomorphism for n <= 8 by vertex augmentation
with canonical-form dedup.
"""

from __future__ import annotations

import json
import multiprocessing as mp
from dataclasses import dataclass

from . import minors
from .graphs import (
    CLAUSE_APEX_CLIQUES,
    CLAUSE_APEX_F_BLOCK,
    CLAUSE_APEX_PETERSEN,
    CLAUSE_APEX_STAR_FORESTS,
    CLAUSE_OUTSIDE,
    CLAUSE_STAR_FOREST,
    CLAUSE_SUBDIVIDED,
    FamilyParams,
    Graph,
    _bits,
    _popcount,
    extremal_family,
    from_graph6,
)
from .minors import (
    VERDICT_BUDGET,
    VERDICT_FREE,
    ab_property,
    find_clique_dominating_set,
    has_minor,
    minor_free_given_apex,
    star_minor_free,
)
from .spectral import LAMBDA_TIE_TOL, check_alpha, spectral_radius

CANONICAL_MAX_N = 10
ENUMERATE_MAX_N = 8

# known counts of graphs up to isomorphism, n = 1..8
GRAPH_COUNTS = (1, 2, 4, 11, 34, 156, 1044, 12346)
CONNECTED_GRAPH_COUNTS = (1, 1, 2, 6, 21, 112, 853, 11117)


# ---------------------------------------------------------------------
# canonical form
# ---------------------------------------------------------------------

def _refine(rows, cells):
    """Colour refinement to a stable partition; cell order is determined
    by invariant signatures only."""
    cells = [list(c) for c in cells]
    while True:
        changed = False
        masks = [0] * len(cells)
        for i, c in enumerate(cells):
            for v in c:
                masks[i] |= 1 << v
        new_cells = []
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                sig = tuple(_popcount(rows[v] & m) for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
            for sig in sorted(groups):
                new_cells.append(groups[sig])
        cells = new_cells
        if not changed:
            return cells


def _encode(rows, lab):
    """Upper-triangle bit packing of the graph relabelled so that lab[p]
    sits at position p."""
    n = len(lab)
    bits = 0
    count = 0
    for q in range(1, n):
        rq = rows[lab[q]]
        for p in range(q):
            bits = bits << 1 | (rq >> lab[p] & 1)
            count += 1
    nbytes = (count + 7) // 8
    return bytes([n]) + (bits << (nbytes * 8 - count)).to_bytes(nbytes, "big")


def _canonical_search(g: Graph):
    rows = g.rows
    n = g.n
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(g.degree(v), []).append(v)
    cells = _refine(rows, [by_deg[d] for d in sorted(by_deg)])
    best: list = [None, None]

    def rec(cells):
        tgt = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if tgt is None:
            lab = [c[0] for c in cells]
            code = _encode(rows, lab)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, lab
            return
        cell = cells[tgt]
        # twins (identical rows once their mutual bits are cleared) are
        # swapped by an automorphism, so one representative branch suffices
        reps: list[int] = []
        for v in cell:
            dup = False
            for u in reps:
                off = ~(1 << v) & ~(1 << u)
                if rows[v] & off == rows[u] & off:
                    dup = True
                    break
            if not dup:
                reps.append(v)
        for v in reps:
            split = cells[:tgt] + [[v], [u for u in cell if u != v]] + cells[tgt + 1:]
            rec(_refine(rows, split))

    rec(cells)
    return best[0], best[1]


def canonical_form(g: Graph) -> bytes:
    """Byte string equal between two graphs iff they are isomorphic;
    exact for n <= 10."""
    if g.n > CANONICAL_MAX_N:
        raise ValueError(f"canonical form supported only up to n = {CANONICAL_MAX_N}")
    if g.n == 0:
        return b"\x00"
    code, _ = _canonical_search(g)
    return code


def canonical_graph(g: Graph) -> Graph:
    """The canonically labelled copy of g."""
    if g.n == 0:
        return g
    if g.n > CANONICAL_MAX_N:
        raise ValueError(f"canonical form supported only up to n = {CANONICAL_MAX_N}")
    _, lab = _canonical_search(g)
    perm = [0] * g.n
    for p, v in enumerate(lab):
        perm[v] = p
    return Graph(g.n, g.relabel(perm).rows)


# ---------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------

_ENUM_CACHE: dict[int, list[Graph]] = {}


def enumerate_graphs(n: int, connected_only: bool = False):
    """All graphs of order n up to isomorphism (internal enumerator,
    n <= 8), in canonical-form order."""
    if not 1 <= n <= ENUMERATE_MAX_N:
        raise ValueError(f"internal enumerator handles 1 <= n <= {ENUMERATE_MAX_N}")
    if n not in _ENUM_CACHE:
        if n == 1:
            _ENUM_CACHE[1] = [Graph(1, (0,))]
        else:
            prev = enumerate_graphs(n - 1)
            seen: dict[bytes, Graph] = {}
            for g in prev:
                for mask in range(1 << (n - 1)):
                    rows = [r | ((mask >> v & 1) << (n - 1)) for v, r in enumerate(g.rows)]
                    rows.append(mask)
                    child = Graph(n, tuple(rows))
                    code, lab = _canonical_search(child)
                    if code not in seen:
                        perm = [0] * n
                        for pos, v in enumerate(lab):
                            perm[v] = pos
                        seen[code] = Graph(n, child.relabel(perm).rows)
            _ENUM_CACHE[n] = [seen[c] for c in sorted(seen)]
    out = _ENUM_CACHE[n]
    if connected_only:
        out = [g for g in out if g.is_connected()]
    return list(out)


def ingest_graph6(path: str):
    """Decode a file of newline-separated graph6 records; malformed lines
    raise with their line number."""
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(from_graph6(line))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return out


# ---------------------------------------------------------------------
# prediction
# ---------------------------------------------------------------------

CAVEAT_LARGE_N = "theorem requires large n"
CAVEAT_ALPHA_WINDOW = "alpha below 2/(b+1) open for b >= 4"
CAVEAT_ORDER_TOO_SMALL = "order too small for the clause construction"


@dataclass(frozen=True)
class ExtremalPrediction:
    params: FamilyParams
    alpha: float
    clause: str
    graph: Graph | None
    caveat: str = ""

    def to_json(self) -> str:
        return json.dumps(
            {
                "a": self.params.a,
                "b": self.params.b,
                "n": self.params.n,
                "alpha": self.alpha,
                "clause": self.clause,
                "graph6": self.graph.to_graph6() if self.graph else None,
                "caveat": self.caveat,
            }
        )


def _select_clause(p: FamilyParams, alpha: float):
    a, b = p.a, p.b
    if a == 1:
        if p.n == b + 1:
            return CLAUSE_STAR_FOREST, ""
        if b == 3 or alpha >= 2 / (b + 1):
            return CLAUSE_SUBDIVIDED, ""
        return CLAUSE_OUTSIDE, CAVEAT_ALPHA_WINDOW
    t, tau = p.t, p.tau
    if t <= 2 * (tau - 1):
        if t == 2 and tau == 2:
            clause = CLAUSE_APEX_F_BLOCK if p.k >= 1 else CLAUSE_OUTSIDE
        else:
            clause = CLAUSE_APEX_STAR_FORESTS if p.k >= t else CLAUSE_OUTSIDE
    else:
        if t == 2 and tau == 1 and b == 8:
            clause = CLAUSE_APEX_PETERSEN if p.k >= 1 else CLAUSE_OUTSIDE
        else:
            clause = CLAUSE_APEX_CLIQUES
    if clause == CLAUSE_OUTSIDE:
        return clause, CAVEAT_ORDER_TOO_SMALL
    return clause, CAVEAT_LARGE_N


def predict(a: int, b: int, n: int, alpha: float) -> ExtremalPrediction:
    """Pick the extremal construction clause for (a, b, n, alpha) and
    build its graph; the graph is re-verified minor-free before being
    reported."""
    check_alpha(alpha)
    p = FamilyParams(a, b, n)
    clause, caveat = _select_clause(p, alpha)
    if clause == CLAUSE_OUTSIDE:
        return ExtremalPrediction(p, alpha, clause, None, caveat)
    g = extremal_family(p, clause)
    if a == 1:
        if not star_minor_free(g, b):
            raise AssertionError("predicted graph is not star-minor free")
    else:
        S = find_clique_dominating_set(g, a - 1)
        if S is None or not minor_free_given_apex(g, S, a, b):
            raise AssertionError("predicted graph fails the minor-freeness check")
    return ExtremalPrediction(p, alpha, clause, g, caveat)


# ---------------------------------------------------------------------
# search
# ---------------------------------------------------------------------

class BudgetAbort(RuntimeError):
    """Raised when a constraint check runs out of budget on a candidate."""

    def __init__(self, graph6: str):
        super().__init__(f"minor-search budget exhausted on candidate {graph6}")
        self.graph6 = graph6


def parse_constraint(tag: str):
    """Constraint tags: star-minor-free:B, kab-minor-free:A,B,
    ab-property:A,B."""
    name, _, arg = tag.partition(":")
    try:
        nums = [int(x) for x in arg.split(",")] if arg else []
    except ValueError:
        raise ValueError(f"bad constraint arguments in {tag!r}")
    if name == "star-minor-free" and len(nums) == 1:
        return name, tuple(nums)
    if name in ("kab-minor-free", "ab-property") and len(nums) == 2:
        a, b = nums
        if not 1 <= a <= b:
            raise ValueError(f"need 1 <= a <= b in {tag!r}")
        return name, tuple(nums)
    raise ValueError(f"unknown constraint {tag!r}")


def _check_constraint(g: Graph, name: str, args, budget: int) -> bool:
    if name == "star-minor-free":
        return star_minor_free(g, args[0])
    if name == "kab-minor-free":
        a, b = args
        if a == 1:
            return star_minor_free(g, b)
        from .graphs import complete_bipartite

        w = has_minor(g, complete_bipartite(a, b), budget)
        if w.verdict == VERDICT_BUDGET:
            raise BudgetAbort(g.to_graph6())
        return w.verdict == VERDICT_FREE
    if name == "ab-property":
        a, b = args
        rep = ab_property(g, a, b, budget)
        if VERDICT_BUDGET in rep.verdicts:
            raise BudgetAbort(g.to_graph6())
        return rep.overall
    raise ValueError(f"unknown constraint {name!r}")


@dataclass(frozen=True)
class SearchReport:
    constraint: str
    corpus_source: str
    corpus_size: int
    survivors: int
    alpha: float
    lambda_max: float
    maximizers: tuple[str, ...]  # canonical graph6, sorted
    prediction_clause: str | None = None
    prediction_graph6: str | None = None
    prediction_agrees: bool | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "constraint": self.constraint,
                "alpha": self.alpha,
                "corpus": {"source": self.corpus_source, "count": self.corpus_size},
                "survivors": self.survivors,
                "lambda_max": self.lambda_max,
                "maximizers": list(self.maximizers),
                "prediction": {
                    "clause": self.prediction_clause,
                    "graph6": self.prediction_graph6,
                    "agrees": self.prediction_agrees,
                },
            }
        )


def _worker(payload):
    g6, name, args, alpha, budget = payload
    g = from_graph6(g6)
    try:
        ok = _check_constraint(g, name, args, budget)
    except BudgetAbort:
        return (g6, "budget", 0.0)
    if not ok:
        return (g6, "out", 0.0)
    return (g6, "in", spectral_radius(g, alpha).lam)


def search_max(
    corpus,
    constraint: str,
    alpha: float,
    corpus_source: str = "internal",
    budget: int = minors.DEFAULT_BUDGET,
    jobs: int = 1,
    prediction: ExtremalPrediction | None = None,
) -> SearchReport:
    """Filter the corpus by the minor constraint and return every
    maximizer of the alpha spectral radius within the tie tolerance.
    Results are independent of jobs: per-graph work is pure and the merge
    is a deterministic fold in corpus order."""
    check_alpha(alpha)
    name, args = parse_constraint(constraint)
    graphs = list(corpus)
    payloads = [(g.to_graph6(), name, args, alpha, budget) for g in graphs]
    if jobs > 1 and len(payloads) > 1:
        with mp.get_context("fork").Pool(jobs) as pool:
            results = pool.map(_worker, payloads, chunksize=64)
    else:
        results = [_worker(p) for p in payloads]
    lam_by_graph = []
    for (g6, status, lam), g in zip(results, graphs):
        if status == "budget":
            raise BudgetAbort(g6)
        if status == "in":
            lam_by_graph.append((g, lam))
    if not lam_by_graph and graphs:
        raise ValueError("no corpus graph satisfies the constraint")
    lam_max = max(lam for _, lam in lam_by_graph) if lam_by_graph else float("nan")
    maximizers = sorted(
        canonical_graph(g).to_graph6()
        for g, lam in lam_by_graph
        if lam >= lam_max - LAMBDA_TIE_TOL
    )
    pred_clause = pred_g6 = agrees = None
    if prediction is not None:
        pred_clause = prediction.clause
        if prediction.graph is not None:
            pred_g6 = canonical_graph(prediction.graph).to_graph6()
            agrees = pred_g6 in maximizers
    return SearchReport(
        constraint,
        corpus_source,
        len(graphs),
        len(lam_by_graph),
        alpha,
        lam_max,
        tuple(maximizers),
        pred_clause,
        pred_g6,
        agrees,
    )


# ---------------------------------------------------------------------
# candidate comparison
# ---------------------------------------------------------------------

def _lambda_worker(payload):
    g6, alpha = payload
    return spectral_radius(from_graph6(g6), alpha).lam


def compare_candidates(candidates, alpha: float, jobs: int = 1):
    """Spectral radii of same-order candidate graphs, sorted descending,
    with strict-order flags at the tie tolerance.

    candidates: list of (id, Graph).  Returns a list of dict rows;
    independent of jobs."""
    check_alpha(alpha)
    items = list(candidates)
    if not items:
        return []
    n0 = items[0][1].n
    if any(g.n != n0 for _, g in items):
        raise ValueError("candidates must share one order")
    payloads = [(g.to_graph6(), alpha) for _, g in items]
    if jobs > 1 and len(payloads) > 1:
        with mp.get_context("fork").Pool(jobs) as pool:
            lams = pool.map(_lambda_worker, payloads)
    else:
        lams = [_lambda_worker(p) for p in payloads]
    rows = [{"id": cid, "lambda": lam} for (cid, _), lam in zip(items, lams)]
    rows.sort(key=lambda r: (-r["lambda"], r["id"]))
    for i, r in enumerate(rows):
        if i + 1 < len(rows):
            gap = r["lambda"] - rows[i + 1]["lambda"]
            r["strictly_above_next"] = gap > LAMBDA_TIE_TOL
            r["gap_to_next"] = gap
        else:
            r["strictly_above_next"] = None
            r["gap_to_next"] = None
    return rows
