import random

import pytest

from matchext.constructive import (
    bowtie_extend,
    bowtie_graph,
    c4cn_witness,
    classify_bowtie_edges,
    extend_via_separator,
    find_separator,
    j_vertices,
    lemma1_cover,
    lemma2_matching,
    lemma3_pm,
    lemma4_near_pm,
    mirror_vertex,
    separator_extend,
    _FIG2_EDGES,
    _FIG3_EDGES,
    _in_j,
    _j_coord,
)
from matchext.extendability import k_matchings
from matchext.generators import bowtie, bowtie_vertex_id, cartesian_product, cycle, path
from matchext.graph import connected_components, normalize_edge
from matchext.matching import make_matching, maximum_matching, verify_matching


def all_matchings(g, k):
    for idxs in k_matchings(g, k):
        yield make_matching(g, [g.edges[i] for i in idxs])


# ---------------------------------------------------------------------------
# Separator pipeline
# ---------------------------------------------------------------------------


def test_pmcn_every_2_matching_extends():
    for rows, n in ((4, 5), (6, 5), (4, 7)):
        g = cartesian_product(path(rows), cycle(n))
        for m in all_matchings(g, 2):
            pm = separator_extend(g, m)
            assert verify_matching(g, pm, "perfect")
            assert set(m.edges) <= set(pm.edges)


def test_cmcn_every_3_matching_extends():
    g = cartesian_product(cycle(6), cycle(5))
    for m in all_matchings(g, 3):
        choice = find_separator(g, m)
        assert choice is not None  # the torus case never needs the figure base case
        pm = extend_via_separator(g, m, choice)
        assert verify_matching(g, pm, "perfect")
        assert set(m.edges) <= set(pm.edges)


def grid_id(n, i, j):
    return (i - 1) * n + (j - 1) % n


def test_fig2_reproduced_edge_for_edge():
    n = 5
    g = cartesian_product(path(4), cycle(n))
    m = make_matching(g, [(grid_id(n, 1, 1), grid_id(n, 1, 2)),
                          (grid_id(n, 2, 2), grid_id(n, 2, 3))])
    assert find_separator(g, m) is None
    pm = separator_extend(g, m)
    fig = {normalize_edge(grid_id(n, *a), grid_id(n, *b)) for a, b in _FIG2_EDGES}
    for j in (5,):
        fig.add(normalize_edge(grid_id(n, 1, j), grid_id(n, 2, j)))
        fig.add(normalize_edge(grid_id(n, 3, j), grid_id(n, 4, j)))
    assert set(pm.edges) == fig


def test_fig3_reproduced_edge_for_edge():
    n = 5
    g = cartesian_product(path(4), cycle(n))
    m = make_matching(g, [(grid_id(n, 1, 1), grid_id(n, 1, 2)),
                          (grid_id(n, 4, 2), grid_id(n, 4, 3))])
    assert find_separator(g, m) is None
    pm = separator_extend(g, m)
    fig = {normalize_edge(grid_id(n, *a), grid_id(n, *b)) for a, b in _FIG3_EDGES}
    for j in (4, 5):
        fig.add(normalize_edge(grid_id(n, 1, j), grid_id(n, 2, j)))
        fig.add(normalize_edge(grid_id(n, 3, j), grid_id(n, 4, j)))
    assert set(pm.edges) == fig


def test_separator_choice_rejects_crossing_edges():
    from matchext.constructive import SeparatorChoice

    g = cartesian_product(cycle(6), cycle(5))
    m = make_matching(g, [(grid_id(5, 1, 1), grid_id(5, 2, 1))])
    with pytest.raises(ValueError):
        extend_via_separator(g, m, SeparatorChoice("row", 2, 2))


# ---------------------------------------------------------------------------
# Fig. 4 counterexample
# ---------------------------------------------------------------------------


def test_c4cn_witness_certificates():
    for n, expect_u, expect_iso in ((5, 6, 8), (7, 10, 12)):
        m, u = c4cn_witness(n)
        g = m.graph
        assert len(u) == expect_u
        assert not set(u) & m.vertex_set()
        comps = connected_components(g, frozenset(u) | m.vertex_set())
        assert len(comps) == expect_iso
        assert all(len(c) == 1 for c in comps)
        # so G - V(M) has no perfect matching
        rest = maximum_matching(g, avoid=m.vertex_set())
        assert 2 * len(rest.edges) < g.order - 6
    with pytest.raises(ValueError):
        c4cn_witness(6)


# ---------------------------------------------------------------------------
# Bow-tie machinery
# ---------------------------------------------------------------------------


def test_classify_bowtie_edges():
    n = 5
    g = bowtie(6, n)
    h1 = bowtie_vertex_id(n, "h", 1)
    h2 = bowtie_vertex_id(n, "h", 2)
    hp1 = bowtie_vertex_id(n, "h'", 1)
    hp2 = bowtie_vertex_id(n, "h'", 2)
    q3 = bowtie_vertex_id(n, "q", 3)
    qp3 = bowtie_vertex_id(n, "q'", 3)
    (x, y, z), tags = classify_bowtie_edges(n, [(h1, h2), (q3, qp3), (hp1, hp2)])
    assert (x, y, z) == (1, 1, 1)
    assert tags == ("faithful", "unfaithful", "co_faithful")


def test_mirror_is_an_automorphism():
    n = 5
    g = bowtie(6, n)
    for u, v in g.edges:
        assert g.has_edge(mirror_vertex(n, u), mirror_vertex(n, v))
    for v in range(g.order):
        assert mirror_vertex(n, mirror_vertex(n, v)) == v


def test_lemma1_cover():
    n = 5
    g = bowtie_graph(n)
    q1, q4 = bowtie_vertex_id(n, "q", 1), bowtie_vertex_id(n, "q", 4)
    m = lemma1_cover(n, [(q1, bowtie_vertex_id(n, "q", 2)), (q4, bowtie_vertex_id(n, "q", 5))])
    covered = m.vertex_set()
    for i in range(1, n + 1):
        assert bowtie_vertex_id(n, "h", i) in covered


def test_lemma3_exhaustive_n5():
    n = 5
    g = bowtie_graph(n)
    j_edges = [e for e in g.edges if _in_j(n, e[0]) and _in_j(n, e[1])]
    q_ids = [v for v in sorted(j_vertices(n)) if _j_coord(n, v)[0] == "q"]
    ran = 0
    for e in j_edges:
        for qk in q_ids:
            if qk in e:
                continue
            pm = lemma3_pm(n, e, qk)
            covered = pm.vertex_set()
            assert covered == j_vertices(n) - set(e) - {qk}
            ran += 1
    # 25 G[J]-edges, 10 q-vertices, minus the excluded incidences
    assert ran == sum(
        len(q_ids) - sum(1 for v in e if _j_coord(n, v)[0] == "q") for e in j_edges
    )


def test_lemma3_seeded_larger():
    rng = random.Random(7)
    for n in (7, 9):
        g = bowtie_graph(n)
        j_edges = [e for e in g.edges if _in_j(n, e[0]) and _in_j(n, e[1])]
        q_ids = [v for v in sorted(j_vertices(n)) if _j_coord(n, v)[0] == "q"]
        done = 0
        while done < 500:
            e = rng.choice(j_edges)
            qk = rng.choice(q_ids)
            if qk in e:
                continue
            pm = lemma3_pm(n, e, qk)
            assert pm.vertex_set() == j_vertices(n) - set(e) - {qk}
            done += 1


def test_lemma4_seeded():
    rng = random.Random(11)
    for n in (7, 9):
        g = bowtie_graph(n)
        j_edges = [e for e in g.edges if _in_j(n, e[0]) and _in_j(n, e[1])]
        q_edges = [
            e for e in j_edges
            if _j_coord(n, e[0])[0] == "q" and _j_coord(n, e[1])[0] == "q"
        ]
        done = 0
        while done < 500:
            e1, e2 = rng.sample(j_edges, 2)
            if set(e1) & set(e2):
                continue
            e0 = rng.choice(q_edges)
            near, tag = lemma4_near_pm(n, e0, [e1, e2])
            covered = near.vertex_set()
            missed = j_vertices(n) - covered
            assert len(missed) == 1
            (mv,) = missed
            assert _j_coord(n, mv)[0] == "q"
            assert mv not in e0
            assert {e1, e2} <= set(near.edges)
            assert tag.startswith("xyz=201/case")
            done += 1


def test_bowtie_extend_every_3_matching_n5():
    """Constructive/oracle equivalence at n=5: zero failures, zero alarms."""
    n = 5
    g = bowtie(6, n)
    count = 0
    for m in all_matchings(g, 3):
        plan = bowtie_extend(n, m)
        assert verify_matching(g, plan.matching, "perfect")
        assert set(m.edges) <= set(plan.matching.edges)
        count += 1
    assert count == 24560


def test_bowtie_extend_seeded_n7_n9():
    rng = random.Random(3)
    for n in (7, 9):
        g = bowtie(6, n)
        done = 0
        while done < 300:
            idxs = rng.sample(range(len(g.edges)), 3)
            vs = [v for i in idxs for v in g.edges[i]]
            if len(set(vs)) < 6:
                continue
            m = make_matching(g, [g.edges[i] for i in idxs])
            plan = bowtie_extend(n, m)
            assert set(m.edges) <= set(plan.matching.edges)
            done += 1


def test_bowtie_extend_validates_input():
    with pytest.raises(ValueError):
        bowtie_extend(6, [])
    with pytest.raises(ValueError):
        bowtie_extend(5, [(0, 1)])


def test_lemma2_branches():
    n = 5
    g = bowtie(6, n)
    q = lambda j: bowtie_vertex_id(n, "q", j)
    h = lambda i: bowtie_vertex_id(n, "h", i)
    rung = lambda j: normalize_edge(q(j), mirror_vertex(n, q(j)))
    # f=2, f=1, f=0 inputs
    cases = [
        [(h(1), h(2)), (q(4), q(5)), rung(8)],
        [(h(1), h(2)), rung(4), rung(8)],
        [rung(1), rung(4), rung(8)],
    ]
    for edges in cases:
        m0 = make_matching(g, edges)
        result, tag = lemma2_matching(n, m0)
        covered = result.vertex_set()
        for i in range(1, n + 1):
            assert h(i) in covered
        for e in edges:
            u = next((v for v in e if _in_j(n, v)), None)
            if not all(_in_j(n, v) for v in e) and u is not None:
                assert u not in covered  # unfaithful vertex missed
        assert tag.startswith("z0/f")
