import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from matchext.generators import complete, complete_bipartite, cycle, path
from matchext.graph import Graph, connected_components
from matchext.matching import (
    extend_to_perfect,
    has_perfect_matching,
    make_matching,
    maximum_matching,
    tutte_violator,
    tutte_violator_of_removal,
    verify_matching,
)


def brute_max_matching_size(g):
    """Exhaustive maximum matching by recursion over the edge list."""

    def rec(i, used):
        if i == len(g.edges):
            return 0
        best = rec(i + 1, used)
        u, v = g.edges[i]
        if not (used >> u & 1) and not (used >> v & 1):
            best = max(best, 1 + rec(i + 1, used | 1 << u | 1 << v))
        return best

    return rec(0, 0)


PETERSEN = Graph(
    10,
    [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
     (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
     (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
)


def test_make_matching_validates():
    g = cycle(6)
    m = make_matching(g, [(0, 1), (3, 2)])
    assert m.edges == ((0, 1), (2, 3))
    assert m.kind == "partial"
    with pytest.raises(ValueError):
        make_matching(g, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        make_matching(g, [(0, 2)])


def test_maximum_matching_simple():
    assert maximum_matching(cycle(6)).kind == "perfect"
    assert maximum_matching(cycle(7)).kind == "near_perfect"
    assert len(maximum_matching(complete_bipartite(3, 5)).edges) == 3
    assert maximum_matching(Graph(4, [])).edges == ()


def test_petersen_needs_blossoms():
    m = maximum_matching(PETERSEN)
    assert m.kind == "perfect"
    assert verify_matching(PETERSEN, m, "perfect")


def test_avoid_vertices():
    g = cycle(8)
    m = maximum_matching(g, avoid=frozenset({0, 1}))
    assert len(m.edges) == 3
    assert not {0, 1} & m.vertex_set()


def test_extend_to_perfect():
    g = cycle(6)
    pm = extend_to_perfect(g, make_matching(g, [(1, 2)]))
    assert pm is not None and pm.kind == "perfect"
    assert (1, 2) in pm.edges
    # middle edge of P_6 strands two odd pieces
    g2 = path(6)
    assert extend_to_perfect(g2, make_matching(g2, [(1, 2)])) is None


def test_tutte_violator_positive_and_negative():
    assert tutte_violator(cycle(6)) is None
    star = complete_bipartite(1, 3)
    cert = tutte_violator(star)
    assert cert is not None
    assert cert.odd_component_count > len(cert.witness_set)
    # re-verify by hand
    comps = connected_components(star, frozenset(cert.witness_set))
    assert sum(1 for c in comps if len(c) % 2) == cert.odd_component_count


def test_tutte_violator_of_removal_lifts_ids():
    g = cycle(8)
    cert = tutte_violator_of_removal(g, {0, 2})  # leaves odd paths {1}, {3..7}
    assert cert is not None
    assert all(v not in (0, 2) for v in cert.witness_set)


def _random_graph(rng, n, p):
    edges = [e for e in combinations(range(n), 2) if rng.random() < p]
    return Graph(n, edges)


def test_matching_size_against_brute_force_seeded():
    rng = random.Random(2024)
    for _ in range(150):
        n = rng.randint(2, 11)
        g = _random_graph(rng, n, rng.choice([0.2, 0.4, 0.6]))
        assert len(maximum_matching(g).edges) == brute_max_matching_size(g)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.integers(4, 10), st.random_module())
def test_tutte_duality_property(n, rnd):
    g = _random_graph(random.Random(rnd.seed), n, 0.35)
    cert = tutte_violator(g)
    if has_perfect_matching(g):
        assert cert is None
    else:
        assert cert is not None
        comps = connected_components(g, frozenset(cert.witness_set))
        odd = sum(1 for c in comps if len(c) % 2)
        assert odd == cert.odd_component_count
        assert odd > len(cert.witness_set)


def test_complete_graphs():
    for n in range(2, 12):
        m = maximum_matching(complete(n))
        assert len(m.edges) == n // 2
