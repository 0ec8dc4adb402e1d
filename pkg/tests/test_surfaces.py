import warnings
from fractions import Fraction

import pytest

from matchext.surfaces import (
    KLEIN_BOTTLE,
    PROJECTIVE_PLANE,
    SPHERE,
    TORUS,
    Surface,
    complete_graph_embeddable,
    control_bound_holds,
    degree_lower_bound,
    euler_characteristic,
    genus_complete,
    mu,
    mu_nk,
    mu_prime,
    nonorientable_genus_complete,
)


def test_surface_validation():
    assert euler_characteristic(SPHERE) == 2
    assert euler_characteristic(TORUS) == 0
    assert euler_characteristic(PROJECTIVE_PLANE) == 1
    assert euler_characteristic(KLEIN_BOTTLE) == 0
    with pytest.raises(ValueError):
        Surface(False, 0)
    with pytest.raises(ValueError):
        Surface(True, -1)


def test_mu_values():
    assert mu(SPHERE) == 3
    assert mu(PROJECTIVE_PLANE) == 3
    assert mu(TORUS) == 4
    assert mu(KLEIN_BOTTLE) == 4
    # chi = -2 gives 2 + floor(sqrt(8)) = 4
    assert mu(Surface(True, 2)) == 4
    assert mu(Surface(False, 10)) == 2 + 4  # chi=-8, sqrt(20) floor 4


def test_mu_prime_values_and_sphere_warning():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert mu_prime(SPHERE) == 3
    assert any("closed form" in str(w.message) for w in caught)
    assert mu_prime(PROJECTIVE_PLANE) == 3
    assert mu_prime(TORUS) == 4
    assert mu_prime(KLEIN_BOTTLE) == 4
    assert mu_prime(Surface(False, 3)) == 4  # chi = -1
    assert mu_prime(Surface(False, 4)) == 4  # chi = -2: floor((7+sqrt(97))/4)
    assert mu_prime(Surface(False, 9)) == 5  # chi = -7: floor((7+sqrt(217))/4)


def test_mu_nk():
    assert mu_nk(1, SPHERE) == 2
    assert mu_nk(2, SPHERE) == 2
    assert mu_nk(3, SPHERE) == 1
    assert mu_nk(6, SPHERE) == 0
    # mu(n, Sigma) is nonincreasing in n, never negative
    for s in (PROJECTIVE_PLANE, KLEIN_BOTTLE, Surface(False, 6)):
        vals = [mu_nk(n, s) for n in range(1, 12)]
        assert vals == sorted(vals, reverse=True)
        assert all(v >= 0 for v in vals)
    with pytest.raises(ValueError):
        mu_nk(0, SPHERE)


def test_genus_complete():
    assert genus_complete(5) == 1
    assert genus_complete(7) == 1
    assert genus_complete(8) == 2
    assert nonorientable_genus_complete(5) == 1
    assert nonorientable_genus_complete(6) == 1
    assert nonorientable_genus_complete(7) == 3  # the famous exception
    assert nonorientable_genus_complete(8) == 4
    # exact ceiling for the rest of the table
    for n in range(5, 51):
        if n != 7:
            assert nonorientable_genus_complete(n) == -(-(n - 3) * (n - 4) // 6)


def test_complete_graph_embeddable():
    assert complete_graph_embeddable(5, TORUS)
    assert not complete_graph_embeddable(8, TORUS)
    assert complete_graph_embeddable(6, PROJECTIVE_PLANE)
    assert not complete_graph_embeddable(7, KLEIN_BOTTLE)  # needs N_3
    assert complete_graph_embeddable(7, Surface(False, 3))


def test_control_bound_exact_rationals():
    # planar K_4 control point: d=3, x=3, chi=2, |G|=4: 3/4 - 1/4 <= 1/2
    assert control_bound_holds(3, 3, 2, 4)
    # boundary case equality must count as holding
    assert Fraction(3, 4) - Fraction(3, 12) == 1 - Fraction(2, 4)
    assert not control_bound_holds(9, 0, 2, 4)
    with pytest.raises(ValueError):
        control_bound_holds(3, 5, 0, 4)


def test_degree_lower_bound():
    assert degree_lower_bound(2, 0) == 3
    assert degree_lower_bound(2, 1) == 4
    assert degree_lower_bound(2, 2) == 4
    assert degree_lower_bound(2, 3) == 5  # x > 2k-2 branch
    assert degree_lower_bound(3, 4) == 6
    with pytest.raises(ValueError):
        degree_lower_bound(0, 0)
