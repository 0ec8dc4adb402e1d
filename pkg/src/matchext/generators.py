"""Constructors for the graph families used throughout the toolkit.

Path, cycle, complete and complete-bipartite graphs; Cartesian products
with grid labels v_{i,j} (row-major ids, 1-based indices, moduli on
cyclic axes); and the bow-tie graphs C_m >< P_n obtained from C_m x P_n
by adding the twisted edges v_{i,1} v_{m+2-i, n}.
"""

from __future__ import annotations

from typing import Optional

from .graph import BowtieVertex, Graph, GridVertex, Plain, normalize_edge


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    edges = [(i, i + 1) for i in range(n - 1)]
    return Graph(n, edges, {v: Plain(str(v)) for v in range(n)})


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return Graph(n, edges, {v: Plain(str(v)) for v in range(n)})


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete needs n >= 1")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph(n, edges, {v: Plain(str(v)) for v in range(n)})


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("complete_bipartite needs a, b >= 1")
    edges = [(u, a + v) for u in range(a) for v in range(b)]
    return Graph(a + b, edges, {v: Plain(str(v)) for v in range(a + b)})


def _is_cycle(g: Graph) -> bool:
    from .graph import is_connected

    return g.order >= 3 and all(g.degree(v) == 2 for v in range(g.order)) and is_connected(g)


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """Cartesian product with grid labels; g1 indexes rows, g2 columns.

    Vertex id of v_{i,j} is (i-1)*|g2| + (j-1) in row-major order.
    """
    if g1.order < 1 or g2.order < 1:
        raise ValueError("both factors must be nonempty")
    m, n = g1.order, g2.order
    row_mod = m if _is_cycle(g1) else None
    col_mod = n if _is_cycle(g2) else None
    edges = []
    for a in range(m):
        for u, v in g2.edges:
            edges.append((a * n + u, a * n + v))
    for j in range(n):
        for u, v in g1.edges:
            edges.append((u * n + j, v * n + j))
    labels = {
        a * n + b: GridVertex(a + 1, b + 1, row_mod, col_mod)
        for a in range(m)
        for b in range(n)
    }
    return Graph(m * n, edges, labels)


def grid_vertex_id(g: Graph, i: int, j: int) -> int:
    """Vertex id of v_{i,j} in a grid-labelled graph (indices modular per axis)."""
    dims = _grid_dims(g)
    m, n, row_mod, col_mod = dims
    if row_mod:
        i = (i - 1) % m + 1
    elif not 1 <= i <= m:
        raise ValueError(f"row index {i} out of range")
    if col_mod:
        j = (j - 1) % n + 1
    elif not 1 <= j <= n:
        raise ValueError(f"column index {j} out of range")
    return (i - 1) * n + (j - 1)


def _grid_dims(g: Graph) -> tuple[int, int, Optional[int], Optional[int]]:
    lab = g.labels.get(0)
    if not isinstance(lab, GridVertex):
        raise ValueError("graph lacks grid labels")
    m = max(l.i for l in g.labels.values() if isinstance(l, GridVertex))
    n = max(l.j for l in g.labels.values() if isinstance(l, GridVertex))
    return m, n, lab.row_mod, lab.col_mod


def row_set(g: Graph, i: int) -> tuple[int, ...]:
    """The i-th row {v_{i,1},...,v_{i,n}}; R_{i+m} = R_i on cyclic rows."""
    m, n, row_mod, _ = _grid_dims(g)
    if row_mod:
        i = (i - 1) % m + 1
    elif not 1 <= i <= m:
        raise ValueError(f"row index {i} out of range")
    return tuple((i - 1) * n + (j - 1) for j in range(1, n + 1))


def col_set(g: Graph, j: int) -> tuple[int, ...]:
    """The j-th column {v_{1,j},...,v_{m,j}}; T_{j+n} = T_j on cyclic columns."""
    m, n, _, col_mod = _grid_dims(g)
    if col_mod:
        j = (j - 1) % n + 1
    elif not 1 <= j <= n:
        raise ValueError(f"column index {j} out of range")
    return tuple((i - 1) * n + (j - 1) for i in range(1, m + 1))


def bowtie(m: int, n: int) -> Graph:
    """Bow-tie graph: C_m x P_n plus the edges v_{i,1} v_{m+2-i, n}.

    For m = 6 the vertices additionally carry the h/q renaming
    (v_{1i}=h_i, v_{6i}=q_i, v_{2i}=q_{i+n} and primed counterparts).
    """
    if m < 3 or n < 2:
        raise ValueError("bowtie needs m >= 3 and n >= 2")
    base = cartesian_product(cycle(m), path(n))
    edges = list(base.edges)
    for i in range(1, m + 1):
        p = (m + 2 - i - 1) % m + 1  # partner row, 1-based
        edges.append(normalize_edge((i - 1) * n, (p - 1) * n + (n - 1)))
    if m == 6:
        labels = {}
        for i in range(1, n + 1):
            labels[grid_vertex_id(base, 1, i)] = BowtieVertex("h", i, n)
            labels[grid_vertex_id(base, 6, i)] = BowtieVertex("q", i, 2 * n)
            labels[grid_vertex_id(base, 2, i)] = BowtieVertex("q", i + n, 2 * n)
            labels[grid_vertex_id(base, 4, i)] = BowtieVertex("h'", i, n)
            labels[grid_vertex_id(base, 5, i)] = BowtieVertex("q'", i, 2 * n)
            labels[grid_vertex_id(base, 3, i)] = BowtieVertex("q'", i + n, 2 * n)
    else:
        labels = base.labels
    return Graph(m * n, edges, labels)


def bowtie_vertex_id(n: int, kind: str, index: int) -> int:
    """Vertex id in bowtie(6, n) for the named vertex h_i / q_j / h'_i / q'_j."""
    if kind in ("h", "h'"):
        i = (index - 1) % n + 1
        row = 1 if kind == "h" else 4
        return (row - 1) * n + (i - 1)
    if kind in ("q", "q'"):
        j = (index - 1) % (2 * n) + 1
        if j <= n:
            row = 6 if kind == "q" else 5
            return (row - 1) * n + (j - 1)
        row = 2 if kind == "q" else 3
        return (row - 1) * n + (j - n - 1)
    raise ValueError(f"bad kind {kind!r}")
