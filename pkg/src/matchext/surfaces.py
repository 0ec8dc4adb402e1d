"""Closed-form surface-extendability formulas and related inequalities.

Everything here is exact arithmetic: floor-of-square-root expressions go
through math.isqrt and rational comparisons through fractions.Fraction,
so boundary cases (discriminants landing on perfect squares) are safe.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, isqrt


@dataclass(frozen=True)
class Surface:
    """Orientable surface S_g or non-orientable surface N_g."""

    orientable: bool
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if not self.orientable and self.genus == 0:
            raise ValueError("non-orientable genus starts at 1")

    def __str__(self):
        return f"{'S' if self.orientable else 'N'}_{self.genus}"


SPHERE = Surface(True, 0)
TORUS = Surface(True, 1)
PROJECTIVE_PLANE = Surface(False, 1)
KLEIN_BOTTLE = Surface(False, 2)


def euler_characteristic(s: Surface) -> int:
    """chi = 2 - 2g for S_g, 2 - g for N_g."""
    return 2 - 2 * s.genus if s.orientable else 2 - s.genus


def _floor_sqrt_frac(add: int, disc: int, div: int) -> int:
    """floor((add + sqrt(disc)) / div) in exact integer arithmetic."""
    if disc < 0:
        raise ValueError("negative discriminant")
    return (add + isqrt(disc)) // div


def mu(s: Surface) -> int:
    """Least k such that no Sigma-embeddable graph is k-extendable."""
    chi = euler_characteristic(s)
    if s.orientable and s.genus == 0:
        return 3
    return 2 + isqrt(4 - 2 * chi)


def mu_prime(s: Surface) -> int:
    """Least k such that no Sigma-embeddable non-bipartite graph is
    k-extendable.

    Piecewise in chi: 3 at chi in {2, 1}, 4 at chi in {0, -1}, and
    floor((7 + sqrt(49 - 24 chi)) / 4) for chi <= -2.  The sphere value
    3 comes from the case analysis; the closed form alone would give 2
    there, and we warn about the discrepancy rather than hide it.
    """
    chi = euler_characteristic(s)
    if chi == 2:
        literal = _floor_sqrt_frac(7, 49 - 24 * chi, 4)
        if literal != 3:
            warnings.warn(
                f"mu_prime(sphere): closed form gives {literal}, case analysis "
                "gives 3; using 3",
                stacklevel=2,
            )
        return 3
    if chi == 1:
        return 3
    if chi in (0, -1):
        return 4
    return _floor_sqrt_frac(7, 49 - 24 * chi, 4)


def mu_nk(n: int, s: Surface) -> int:
    """Least k such that there is no Sigma-embeddable (n,k)-graph."""
    if n < 1:
        raise ValueError("n must be >= 1")
    chi = euler_characteristic(s)
    if s.orientable and s.genus == 0:
        return max(0, 3 - -(-n // 2))  # 3 - ceil(n/2)
    return max(0, _floor_sqrt_frac(7 - 2 * n, 49 - 24 * chi, 4))


def genus_complete(n: int) -> int:
    """Orientable genus of K_n: ceil((n-3)(n-4)/12)."""
    if n < 5:
        raise ValueError("stated for n >= 5")
    return ceil((n - 3) * (n - 4) / Fraction(12))


def nonorientable_genus_complete(n: int) -> int:
    """Non-orientable genus of K_n: ceil((n-3)(n-4)/6), except K_7 -> 3."""
    if n < 5:
        raise ValueError("stated for n >= 5")
    if n == 7:
        return 3
    return ceil((n - 3) * (n - 4) / Fraction(6))


def complete_graph_embeddable(n: int, s: Surface) -> bool:
    """Whether K_n embeds in s (embeddability is monotone in genus)."""
    if s.orientable:
        return genus_complete(n) <= s.genus
    return nonorientable_genus_complete(n) <= s.genus


def control_bound_holds(degree: int, triangles: int, chi: int, order: int) -> bool:
    """Truth of d/4 - x/12 <= 1 - chi/order, in exact rationals.

    d is the degree of a control point and x the number of triangular
    faces at it (counted with angle multiplicity).
    """
    if order < 3:
        raise ValueError("order must be >= 3")
    if not 0 <= triangles <= degree:
        raise ValueError("triangle count must lie in [0, degree]")
    lhs = Fraction(degree, 4) - Fraction(triangles, 12)
    rhs = 1 - Fraction(chi, order)
    return lhs <= rhs


def degree_lower_bound(k: int, triangles: int) -> int:
    """Minimum degree of a vertex of a k-extendable embedded graph that
    lies in `triangles` triangular faces: k+1+ceil(x/2) when x <= 2k-2,
    else 2k+1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if triangles < 0:
        raise ValueError("triangle count must be nonnegative")
    if triangles <= 2 * k - 2:
        return k + 1 + (triangles + 1) // 2
    return 2 * k + 1
