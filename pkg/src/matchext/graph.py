"""Immutable simple-graph representation with structured vertex labels.

Vertices are dense integers ``0..order-1``.  Labels (grid coordinates,
bow-tie names, plain text) live in a parallel map and never act as the
vertex identity.  All query functions treat the graph as read-only.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional


def _reduce_index(i: int, modulus: Optional[int]) -> int:
    """Reduce a 1-based index into 1..modulus (identity when no modulus)."""
    if modulus is None:
        return i
    return (i - 1) % modulus + 1


@dataclass(frozen=True)
class GridVertex:
    """Row/column label v_{i,j}; moduli are set for cyclic axes."""

    i: int
    j: int
    row_mod: Optional[int] = None
    col_mod: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "i", _reduce_index(self.i, self.row_mod))
        object.__setattr__(self, "j", _reduce_index(self.j, self.col_mod))

    def to_json(self):
        return {"grid": [self.i, self.j, self.row_mod, self.col_mod]}


@dataclass(frozen=True)
class BowtieVertex:
    """Named bow-tie vertex: kind is one of "h", "q", "h'", "q'".

    The index is reduced modulo the period (n for h-kinds, 2n for q-kinds).
    """

    kind: str
    index: int
    period: int

    def __post_init__(self):
        if self.kind not in ("h", "q", "h'", "q'"):
            raise ValueError(f"bad bow-tie vertex kind {self.kind!r}")
        object.__setattr__(self, "index", _reduce_index(self.index, self.period))

    def __str__(self):
        base, prime = self.kind[0], "'" if self.kind.endswith("'") else ""
        return f"{base}{prime}_{self.index}"

    def to_json(self):
        return {"bowtie": [self.kind, self.index, self.period]}


@dataclass(frozen=True)
class Plain:
    text: str

    def to_json(self):
        return {"plain": self.text}


def label_from_json(obj):
    if "grid" in obj:
        i, j, rm, cm = obj["grid"]
        return GridVertex(i, j, rm, cm)
    if "bowtie" in obj:
        kind, index, period = obj["bowtie"]
        return BowtieVertex(kind, index, period)
    if "plain" in obj:
        return Plain(obj["plain"])
    raise ValueError(f"unrecognized label {obj!r}")


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"loop edge ({u},{v}) not allowed")
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph with dense integer vertex ids."""

    __slots__ = ("order", "edges", "labels", "_adj", "_edge_index")

    def __init__(self, order: int, edges: Iterable[tuple[int, int]], labels=None):
        if order < 0:
            raise ValueError("order must be nonnegative")
        norm = sorted({normalize_edge(u, v) for u, v in edges})
        for u, v in norm:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u},{v}) out of range for order {order}")
        self.order = order
        self.edges = tuple(norm)
        self.labels = dict(labels) if labels else {}
        self._adj = None
        self._edge_index = None

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        if self._adj is None:
            adj = [[] for _ in range(self.order)]
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            self._adj = tuple(tuple(sorted(a)) for a in adj)
        return self._adj

    @property
    def edge_index(self) -> dict[tuple[int, int], int]:
        if self._edge_index is None:
            self._edge_index = {e: i for i, e in enumerate(self.edges)}
        return self._edge_index

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edge_index

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.order == other.order
            and self.edges == other.edges
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.order, self.edges))

    def __repr__(self):
        return f"Graph(order={self.order}, edges={len(self.edges)})"

    # -- serialization -------------------------------------------------

    def to_json(self) -> str:
        """Byte-stable JSON: {"order": N, "edges": [[u,v],...], "labels": {...}}."""
        labels = {str(v): self.labels[v].to_json() for v in sorted(self.labels)}
        obj = {"order": self.order, "edges": [list(e) for e in self.edges], "labels": labels}
        return json.dumps(obj, sort_keys=False, separators=(",", ": "), indent=None)

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        obj = json.loads(text)
        labels = {int(k): label_from_json(v) for k, v in obj.get("labels", {}).items()}
        return cls(obj["order"], [tuple(e) for e in obj["edges"]], labels)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.order):
            label = self.labels.get(v)
            if label is not None and isinstance(label, BowtieVertex):
                lines.append(f'  {v} [label="{label}"];')
            elif isinstance(label, GridVertex):
                lines.append(f'  {v} [label="v_{{{label.i},{label.j}}}"];')
            else:
                lines.append(f"  {v};")
        for u, v in self.edges:
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Structural queries
# ---------------------------------------------------------------------------


def neighbors(g: Graph, v: int) -> tuple[int, ...]:
    if not 0 <= v < g.order:
        raise ValueError(f"vertex {v} out of range")
    return g.adjacency[v]


def min_degree(g: Graph) -> int:
    if g.order < 1:
        raise ValueError("empty graph has no minimum degree")
    return min(len(a) for a in g.adjacency)


def is_connected(g: Graph, removed: frozenset[int] = frozenset()) -> bool:
    alive = [v for v in range(g.order) if v not in removed]
    if not alive:
        return True
    seen = {alive[0]}
    stack = [alive[0]]
    adj = g.adjacency
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(alive)


def connected_components(g: Graph, removed: frozenset[int] = frozenset()) -> list[list[int]]:
    seen = set(removed)
    comps = []
    adj = g.adjacency
    for s in range(g.order):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_bipartite(g: Graph) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Return a 2-coloring (two vertex tuples) or None, verified edge-by-edge."""
    color = [-1] * g.order
    adj = g.adjacency
    for s in range(g.order):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    for u, v in g.edges:
        assert color[u] != color[v]
    part0 = tuple(v for v in range(g.order) if color[v] == 0)
    part1 = tuple(v for v in range(g.order) if color[v] == 1)
    return (part0, part1)


def _is_complete(g: Graph) -> bool:
    return len(g.edges) == g.order * (g.order - 1) // 2


def _connectivity_bruteforce(g: Graph) -> int:
    cap = min_degree(g)
    for size in range(cap):
        for cut in combinations(range(g.order), size):
            if not is_connected(g, frozenset(cut)):
                return size
    return cap


def _max_vertex_disjoint_paths(g: Graph, s: int, t: int) -> int:
    """Menger via unit-capacity flow on the split-vertex digraph."""
    n = g.order
    # node 2v = in-copy, 2v+1 = out-copy
    cap: dict[tuple[int, int], int] = {}
    for v in range(n):
        cap[(2 * v, 2 * v + 1)] = 1 if v not in (s, t) else g.order
    for u, v in g.edges:
        cap[(2 * u + 1, 2 * v)] = 1
        cap[(2 * v + 1, 2 * u)] = 1
    succ: dict[int, list[int]] = {}
    for a, b in cap:
        succ.setdefault(a, []).append(b)
        succ.setdefault(b, [])
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in succ[a]:
                if b not in parent and cap.get((a, b), 0) > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            return flow
        b = sink
        while parent[b] is not None:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] = cap.get((b, a), 0) + 1
            if a not in succ[b]:
                succ[b].append(a)
            b = a
        flow += 1


def _connectivity_flow(g: Graph) -> int:
    best = g.order - 1
    adjsets = [set(a) for a in g.adjacency]
    # kappa = min over a fixed vertex s and all t non-adjacent to anything:
    # standard: min over (s, t) non-adjacent of max disjoint paths; pick s of
    # minimum degree plus its neighbors as the anchor set.
    s = min(range(g.order), key=g.degree)
    anchors = [s] + list(g.adjacency[s])
    for a in anchors:
        for t in range(g.order):
            if t != a and t not in adjsets[a]:
                best = min(best, _max_vertex_disjoint_paths(g, a, t))
    return best


def connectivity(g: Graph) -> int:
    """Vertex connectivity; n-1 for complete graphs."""
    if g.order < 2:
        raise ValueError("connectivity requires order >= 2")
    if _is_complete(g):
        return g.order - 1
    if not is_connected(g):
        return 0
    if g.order <= 16:
        return _connectivity_bruteforce(g)
    return _connectivity_flow(g)


@dataclass(frozen=True)
class InducedSubgraph:
    """Induced subgraph plus the id remap back to the host graph."""

    graph: Graph
    old_of_new: tuple[int, ...]  # new id -> host id

    @property
    def new_of_old(self) -> dict[int, int]:
        return {old: new for new, old in enumerate(self.old_of_new)}

    def lift_edges(self, edges) -> tuple[tuple[int, int], ...]:
        """Map edges of the subgraph back into host-graph vertex ids."""
        out = tuple(
            normalize_edge(self.old_of_new[u], self.old_of_new[v]) for u, v in edges
        )
        return tuple(sorted(out))

    def lift_vertices(self, vertices) -> tuple[int, ...]:
        return tuple(sorted(self.old_of_new[v] for v in vertices))


def induced_subgraph(g: Graph, keep: Iterable[int]) -> InducedSubgraph:
    keep_sorted = sorted(set(keep))
    for v in keep_sorted:
        if not 0 <= v < g.order:
            raise ValueError(f"vertex {v} not in graph")
    new_of_old = {old: new for new, old in enumerate(keep_sorted)}
    edges = [
        (new_of_old[u], new_of_old[v])
        for u, v in g.edges
        if u in new_of_old and v in new_of_old
    ]
    labels = {new_of_old[v]: g.labels[v] for v in keep_sorted if v in g.labels}
    return InducedSubgraph(Graph(len(keep_sorted), edges, labels), tuple(keep_sorted))


def remove_vertices(g: Graph, drop: Iterable[int]) -> InducedSubgraph:
    dropset = set(drop)
    return induced_subgraph(g, (v for v in range(g.order) if v not in dropset))
