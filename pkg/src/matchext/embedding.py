"""Signed rotation systems: face tracing, embedding verification, and
exact Euler contributions.

An embedding is encoded as a cyclic neighbor order at every vertex plus
a sign per edge (embedding scheme).  Faces are orbits of the next-dart
rule, where crossing a negative edge flips the local sense of rotation;
each face is traced in both senses, so orbits come in mirror pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, is_connected, normalize_edge
from .generators import bowtie, complete
from .surfaces import Surface, euler_characteristic


@dataclass(frozen=True)
class RotationSystem:
    graph: Graph
    rotations: tuple[tuple[int, ...], ...]  # per-vertex cyclic neighbor order
    signs: dict[tuple[int, int], int]  # normalized edge -> +1 / -1

    def __post_init__(self):
        g = self.graph
        if len(self.rotations) != g.order:
            raise ValueError("rotation list length must equal graph order")
        for v in range(g.order):
            if sorted(self.rotations[v]) != sorted(g.adjacency[v]):
                raise ValueError(f"rotation at {v} is not a permutation of its neighbors")
        for e in g.edges:
            if self.signs.get(e) not in (1, -1):
                raise ValueError(f"edge {e} lacks a valid sign")
        if len(self.signs) != len(g.edges):
            raise ValueError("sign map has extra entries")

    def sign(self, u: int, v: int) -> int:
        return self.signs[normalize_edge(u, v)]

    def to_json_obj(self):
        eidx = self.graph.edge_index
        rot = {
            str(v): [eidx[normalize_edge(v, w)] for w in self.rotations[v]]
            for v in range(self.graph.order)
        }
        return {"rotations": rot, "signs": {str(eidx[e]): s for e, s in self.signs.items()}}


@dataclass(frozen=True)
class FaceStructure:
    faces: tuple[tuple[tuple[int, int], ...], ...]  # boundary walks as dart lists
    face_sizes: tuple[int, ...]  # sorted multiset of walk lengths


@dataclass(frozen=True)
class ContributionReport:
    phi: tuple[Fraction, ...]
    control_point: int
    triangles_at: tuple[int, ...]


def _next_state(rs: RotationSystem, v: int, w: int, o: int):
    """Advance the face walk: arrived at w along v->w with sense o."""
    o2 = o * rs.sign(v, w)
    rot = rs.rotations[w]
    i = rot.index(v)
    u = rot[(i + 1) % len(rot)] if o2 == 1 else rot[(i - 1) % len(rot)]
    return (w, u, o2)


def trace_faces(rs: RotationSystem) -> FaceStructure:
    """Face decomposition of the embedding.

    States are (tail, head, sense); orbits of the next-state rule pair up
    under the mirror map (v,w,o) -> (w,v,-o*sign), each pair being one
    face.  A self-mirrored orbit is a single face of half its length.
    """
    states = [
        (v, w, o)
        for v, w in ((a, b) for e in rs.graph.edges for a, b in (e, e[::-1]))
        for o in (1, -1)
    ]
    seen = set()
    orbits = []
    for s0 in states:
        if s0 in seen:
            continue
        orbit = []
        s = s0
        while s not in seen:
            seen.add(s)
            orbit.append(s)
            s = _next_state(rs, *s)
        assert s == s0, "face walk did not close"
        orbits.append(orbit)

    def mirror(state):
        v, w, o = state
        return (w, v, -o * rs.sign(v, w))

    key_of = {}
    for i, orbit in enumerate(orbits):
        for s in orbit:
            key_of[s] = i
    faces = []
    used = set()
    for i, orbit in enumerate(orbits):
        if i in used:
            continue
        j = key_of[mirror(orbit[0])]
        used.add(i)
        if j == i:
            walk = orbit[: len(orbit) // 2]
        else:
            used.add(j)
            walk = orbit
        faces.append(tuple((v, w) for v, w, _ in walk))
    sizes = tuple(sorted(len(f) for f in faces))
    assert sum(sizes) == 2 * len(rs.graph.edges)
    return FaceStructure(tuple(faces), sizes)


def is_orientable(rs: RotationSystem) -> bool:
    """True iff every cycle has positive sign product (switching-invariant)."""
    g = rs.graph
    p = [0] * g.order
    for root in range(g.order):
        if p[root]:
            continue
        p[root] = 1
        stack = [root]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                want = p[v] * rs.sign(v, w)
                if p[w] == 0:
                    p[w] = want
                    stack.append(w)
                elif p[w] != want:
                    return False
    return True


def embedding_characteristic(rs: RotationSystem) -> int:
    g = rs.graph
    return g.order - len(g.edges) + len(trace_faces(rs).faces)


def verify_embedding(rs: RotationSystem, s: Surface) -> bool:
    """Check the traced faces against Euler's formula and orientability of s."""
    if not is_connected(rs.graph):
        raise ValueError("verify_embedding requires a connected graph")
    return (
        embedding_characteristic(rs) == euler_characteristic(s)
        and is_orientable(rs) == s.orientable
    )


def euler_contributions(rs: RotationSystem) -> ContributionReport:
    """Phi(v) = 1 - d(v)/2 + sum of 1/x_i over the angles at v, exact.

    A face incident to v several times contributes once per angle.
    """
    g = rs.graph
    fs = trace_faces(rs)
    phi = [Fraction(1) - Fraction(g.degree(v), 2) for v in range(g.order)]
    triangles = [0] * g.order
    for walk in fs.faces:
        size = len(walk)
        for v, _ in walk:
            phi[v] += Fraction(1, size)
            if size == 3:
                triangles[v] += 1
    total = sum(phi)
    assert total == embedding_characteristic(rs), "contributions do not sum to chi"
    control = max(range(g.order), key=lambda v: (phi[v], -v))
    return ContributionReport(tuple(phi), control, tuple(triangles))


def control_point(rs: RotationSystem) -> tuple[int, Fraction]:
    """A vertex of maximum Euler contribution; satisfies Phi >= chi/|G|."""
    report = euler_contributions(rs)
    v = report.control_point
    chi = embedding_characteristic(rs)
    assert report.phi[v] >= Fraction(chi, rs.graph.order)
    return v, report.phi[v]


def k5_torus_fixture() -> RotationSystem:
    """K_5 embedded on the torus (found by search over rotation orders).

    Five faces, chi = 0, orientable; one face meets a vertex in two
    angles, so contributions must be counted per angle.
    """
    g = complete(5)
    rotations = ((1, 2, 3, 4), (0, 2, 3, 4), (0, 1, 4, 3), (0, 2, 1, 4), (0, 3, 1, 2))
    return RotationSystem(g, rotations, {e: 1 for e in g.edges})


def bowtie_rotation_N2(n: int) -> RotationSystem:
    """The Klein-bottle quadrangulation of bowtie(6, n).

    Drawn as a 7 x (n+1) grid with the top and bottom rows identified
    directly and the two boundary columns identified with the row order
    reversed; every vertex reads (up, right, down, left).  The six edges
    crossing the reversed identification are exactly the twisted bow-tie
    edges and carry sign -1.
    """
    if n < 5 or n % 2 == 0:
        raise ValueError("needs odd n >= 5")
    g = bowtie(6, n)

    def vid(i, j):
        # row-major ids, same layout as cartesian_product(cycle(6), path(n))
        return ((i - 1) % 6) * n + (j - 1)

    rotations = []
    signs = {}
    for v in range(g.order):
        i, j = v // n + 1, v % n + 1
        up = vid(i - 1, j)
        down = vid(i + 1, j)
        right = vid(8 - i, 1) if j == n else vid(i, j + 1)
        left = vid(8 - i, n) if j == 1 else vid(i, j - 1)
        rotations.append((up, right, down, left))
        if j == n:
            signs[normalize_edge(v, right)] = -1
    for e in g.edges:
        signs.setdefault(e, 1)
    return RotationSystem(g, tuple(rotations), signs)
