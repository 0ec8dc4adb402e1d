"""k-extendability decisions by exhaustive enumeration over k-matchings.

A graph is k-extendable when it has a perfect matching and every
k-matching extends to one.  The decision procedure enumerates all
k-matchings in lexicographic order of sorted edge indices and asks the
matching engine to complete each; the first failure yields a witness
matching plus a Tutte violator for the leftover graph.

Also here: extendability numbers, (n,k)-graph checks, and the exhaustive
classification of small extendable graphs up to isomorphism.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .graph import Graph, connectivity, is_connected, min_degree, remove_vertices
from .matching import (
    Matching,
    TutteViolator,
    has_perfect_matching,
    make_matching,
    maximum_matching,
    tutte_violator_of_removal,
)


@dataclass(frozen=True)
class ExtendabilityReport:
    k: int
    verdict: bool
    witness: Optional[Matching]
    witness_certificate: Optional[TutteViolator]
    matchings_checked: int
    elapsed: float

    def to_json_obj(self):
        return {
            "k": self.k,
            "verdict": self.verdict,
            "witness": self.witness.to_json_obj() if self.witness else None,
            "certificate": (
                self.witness_certificate.to_json_obj() if self.witness_certificate else None
            ),
            "matchings_checked": self.matchings_checked,
            "elapsed": self.elapsed,
        }


def _k_matchings_from(edges, k, start, used_mask, chosen):
    """Yield k-matchings (as tuples of edge indices) lexicographically."""
    if len(chosen) == k:
        yield tuple(chosen)
        return
    # not enough edges left to finish
    for i in range(start, len(edges) - (k - len(chosen)) + 1):
        u, v = edges[i]
        bit = (1 << u) | (1 << v)
        if used_mask & bit:
            continue
        chosen.append(i)
        yield from _k_matchings_from(edges, k, i + 1, used_mask | bit, chosen)
        chosen.pop()


def k_matchings(g: Graph, k: int):
    """All k-matchings of g as sorted edge-index tuples, lexicographic order."""
    if k == 0:
        yield ()
        return
    yield from _k_matchings_from(g.edges, k, 0, 0, [])


def _extends(g: Graph, idx_tuple) -> bool:
    covered = frozenset(v for i in idx_tuple for v in g.edges[i])
    rest = maximum_matching(g, avoid=covered)
    return 2 * len(rest.edges) == g.order - len(covered)


# --- worker-side state for the parallel path -------------------------------

_WORK: dict = {}


def _init_worker(order, edges, k):
    _WORK["g"] = Graph(order, edges)
    _WORK["k"] = k


def _scan_first_edge(first: int):
    """Check every k-matching whose lowest edge index is `first`.

    Returns (matchings_checked, first_failing_index_tuple_or_None).
    """
    g, k = _WORK["g"], _WORK["k"]
    u, v = g.edges[first]
    checked = 0
    for tail in _k_matchings_from(g.edges, k - 1, first + 1, (1 << u) | (1 << v), []):
        m = (first,) + tail
        checked += 1
        if not _extends(g, m):
            return checked, m
    return checked, None


def is_k_extendable(g: Graph, k: int, jobs: int = 1) -> ExtendabilityReport:
    """Exhaustively decide whether every k-matching of g extends.

    For k greater than |G|/2 - 1 the verdict is defined to be false (no
    room to extend a k-matching by at least one edge).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    start = time.perf_counter()

    def done(verdict, witness_idx, checked):
        witness = cert = None
        if witness_idx is not None:
            witness = make_matching(g, [g.edges[i] for i in witness_idx])
            cert = tutte_violator_of_removal(g, witness.vertex_set())
        return ExtendabilityReport(k, verdict, witness, cert, checked, time.perf_counter() - start)

    if not has_perfect_matching(g):
        return done(False, None, 0)
    if k > g.order // 2 - 1:
        return done(False, None, 0)
    if k == 0:
        return done(True, None, 1)

    if jobs > 1:
        return _is_k_extendable_parallel(g, k, jobs, start)

    checked = 0
    for m in k_matchings(g, k):
        checked += 1
        if not _extends(g, m):
            return done(False, m, checked)
    return done(True, None, checked)


def _is_k_extendable_parallel(g: Graph, k: int, jobs: int, start: float):
    checked = 0
    witness_idx = None
    with ProcessPoolExecutor(
        max_workers=jobs, initializer=_init_worker, initargs=(g.order, g.edges, k)
    ) as pool:
        # results consumed in first-edge order, so the reported witness is
        # the lexicographically least failing k-matching, same as jobs=1
        for count, failure in pool.map(_scan_first_edge, range(len(g.edges))):
            checked += count
            if failure is not None:
                witness_idx = failure
                break
    witness = cert = None
    if witness_idx is not None:
        witness = make_matching(g, [g.edges[i] for i in witness_idx])
        cert = tutte_violator_of_removal(g, witness.vertex_set())
    return ExtendabilityReport(
        k, witness_idx is None, witness, cert, checked, time.perf_counter() - start
    )


def extendability_number(g: Graph, jobs: int = 1) -> int:
    """Largest k with a true verdict, or -1 when g has no perfect matching."""
    if not has_perfect_matching(g):
        return -1
    best = 0
    for k in range(1, g.order // 2):
        if not is_k_extendable(g, k, jobs=jobs).verdict:
            break
        best = k
    return best


@dataclass(frozen=True)
class NkReport:
    """Outcome of an (n,k)-graph check."""

    holds: bool
    failing_set: Optional[tuple[int, ...]]  # vertices whose removal breaks it
    failure: Optional[ExtendabilityReport]

    def to_json_obj(self):
        return {
            "holds": self.holds,
            "failing_set": list(self.failing_set) if self.failing_set else None,
            "failure": self.failure.to_json_obj() if self.failure else None,
        }


def is_nk_graph(g: Graph, n: int, k: int, jobs: int = 1) -> NkReport:
    """True iff g - W is k-extendable for every n-subset W of vertices."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if (g.order - n) % 2 != 0:
        raise ValueError("order minus n must be even")
    from itertools import combinations

    for w in combinations(range(g.order), n):
        sub = remove_vertices(g, w)
        report = is_k_extendable(sub.graph, k, jobs=jobs)
        if not report.verdict:
            return NkReport(False, w, report)
    return NkReport(True, None, None)


# ---------------------------------------------------------------------------
# Classification of small extendable graphs
# ---------------------------------------------------------------------------


def _refine_cells(n, adjsets):
    """Partition vertices by iterated degree profile (invariant cells)."""
    code = [len(adjsets[v]) for v in range(n)]
    for _ in range(n):
        nxt = [(code[v], tuple(sorted(code[w] for w in adjsets[v]))) for v in range(n)]
        ranks = {c: r for r, c in enumerate(sorted(set(nxt)))}
        new = [ranks[nxt[v]] for v in range(n)]
        if new == code:
            break
        code = new
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(code[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def _canonical_bits(n, edges) -> int:
    """Minimum adjacency bitmask over invariant-respecting permutations."""
    adjsets = [set() for _ in range(n)]
    for u, v in edges:
        adjsets[u].add(v)
        adjsets[v].add(u)
    cells = _refine_cells(n, adjsets)

    def bits_under(perm):
        out = 0
        for u, v in edges:
            a, b = perm[u], perm[v]
            if a > b:
                a, b = b, a
            out |= 1 << (a * n + b)
        return out

    best = None
    # cross product of permutations within each cell
    def assign(ci, perm):
        nonlocal best
        if ci == len(cells):
            b = bits_under(perm)
            if best is None or b < best:
                best = b
            return
        cell = cells[ci]
        for order in permutations(cell):
            p = dict(perm)
            base = sum(len(c) for c in cells[:ci])
            for pos, v in enumerate(order):
                p[v] = base + pos
            assign(ci + 1, p)

    assign(0, {v: None for v in range(n)})
    return best


def _all_graphs_up_to_iso(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Edge lists of all graphs on n vertices, one per isomorphism class.

    Built by extending each (n-1)-vertex representative with a new vertex
    joined to every neighbor subset, deduplicating by canonical form.
    """
    reps = [()]  # the single graph on 1 vertex
    for m in range(2, n + 1):
        seen = set()
        nxt = []
        for edges in reps:
            for mask in range(1 << (m - 1)):
                new_edges = tuple(edges) + tuple(
                    (w, m - 1) for w in range(m - 1) if mask >> w & 1
                )
                key = _canonical_bits(m, new_edges)
                if key not in seen:
                    seen.add(key)
                    nxt.append(new_edges)
        reps = nxt
    return reps


def classify_extendable_graphs(order: int, k: int) -> list[Graph]:
    """All connected k-extendable graphs of the given order, up to isomorphism."""
    if order > 8:
        raise ValueError("classification supported only for order <= 8")
    if order % 2 == 1 or order < 2 * k + 2:
        return []
    found = []
    for edges in _all_graphs_up_to_iso(order):
        g = Graph(order, edges)
        if not is_connected(g):
            continue
        # a connected k-extendable graph is (k+1)-connected, so delta >= k+1
        if k >= 1 and min_degree(g) < k + 1:
            continue
        if is_k_extendable(g, k).verdict:
            found.append(g)
    return found
