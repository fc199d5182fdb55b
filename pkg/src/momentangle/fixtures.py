"""Named complexes used throughout the examples and tests."""

from __future__ import annotations

from .simplicial import (SimplicialComplex, bier, from_facets, from_nonfaces,
                         polygon, simplex_boundary)

# octahedron on 1..6 with antipodal pairs 15, 26, 34
_OCTAHEDRON = [(a, b, c) for a in (1, 5) for b in (2, 6) for c in (3, 4)]


def five_cycle_plus_edge() -> SimplicialComplex:
    """Flag complex on 6 vertices with minimal non-faces 12, 23, 34, 45, 56."""
    return from_facets(6, [(2, 4, 6), (1, 4, 6), (1, 3, 6), (1, 3, 5), (2, 5)])


def subdivided_octahedron() -> SimplicialComplex:
    """Octahedron with the triangle 456 subdivided by a new vertex 7.

    A 2-sphere on 7 vertices; not flag because 456 is an empty triangle.
    """
    facets = [tuple(sorted(f)) for f in _OCTAHEDRON if sorted(f) != [4, 5, 6]]
    facets += [(4, 5, 7), (4, 6, 7), (5, 6, 7)]
    return from_facets(7, facets)


FLAG8_EDGES = [(4, 6), (3, 6), (3, 5), (2, 5), (2, 6), (1, 6), (1, 5), (5, 7), (2, 7),
               (4, 7), (1, 7), (1, 4), (2, 4), (1, 3), (3, 8), (6, 8), (2, 8), (5, 8)]


def flag_complex(n: int, edges) -> SimplicialComplex:
    """Clique complex of a graph on ``[n]``."""
    adj = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    cliques = []

    def grow(clique, candidates):
        if not candidates:
            cliques.append(tuple(sorted(clique)))
            return
        for v in sorted(candidates):
            if v > max(clique, default=0):
                grow(clique + [v], candidates & adj[v])
        if all(v < max(clique, default=0) for v in candidates):
            cliques.append(tuple(sorted(clique)))

    grow([], set(adj))
    return from_facets(n, cliques)


def flag_sphere8() -> SimplicialComplex:
    """Flag 2-sphere on 8 vertices with a nontrivial triple Massey product."""
    return flag_complex(8, FLAG8_EDGES)


def massey_example8() -> SimplicialComplex:
    """Complex on 8 vertices with minimal non-faces 12, 1345, 3456, 3567, 78."""
    return from_nonfaces(8, [[1, 2], [1, 3, 4, 5], [3, 4, 5, 6], [3, 5, 6, 7], [7, 8]])


def massey_bier16() -> SimplicialComplex:
    return bier(massey_example8())


NAMED = {
    "five-cycle-plus-edge": five_cycle_plus_edge,
    "subdivided-octahedron": subdivided_octahedron,
    "flag-sphere-8": flag_sphere8,
    "massey-8": massey_example8,
    "massey-bier-16": massey_bier16,
    "pentagon": lambda: polygon(5),
    "bier-square": lambda: bier(polygon(4)),
    "tetrahedron-boundary": lambda: simplex_boundary(4),
}


def massey8_poincare():
    """Poincaré series of ``Tor^{S/I}(k, k)`` for :func:`massey_example8`.

    ``(1+st)^6 / ((1 - st - 3 s^6 t^2 - s^7 t^3)(1 - st))``.
    """
    from .exactalg import SparseBivariate

    return SparseBivariate.from_factors(
        [({(0, 0): 1, (1, 1): 1}, 6)],
        [({(0, 0): 1, (1, 1): -1, (6, 2): -3, (7, 3): -1}, 1), ({(0, 0): 1, (1, 1): -1}, 1)])


# Betti tables as printed for the complexes above (rows q, columns p).
SUBDIVIDED_OCTAHEDRON_TABLE = """\
 0: 1 .  . . .
 1: . .  . . .
 2: . .  . . .
 3: . 6  . . .
 4: . .  6 . .
 5: . 1  . 1 .
 6: . .  6 . .
 7: . .  . 6 .
 8: . .  . . .
 9: . .  . . .
10: . .  . . 1
"""

FLAG_SPHERE8_TABLE = """\
 0: 1  .  .  .  . .
 1: .  .  .  .  . .
 2: .  .  .  .  . .
 3: . 10  .  .  . .
 4: .  . 16  .  . .
 5: .  .  .  5  . .
 6: .  .  5  .  . .
 7: .  .  . 16  . .
 8: .  .  .  . 10 .
 9: .  .  .  .  . .
10: .  .  .  .  . .
11: .  .  .  .  . 1
"""

MASSEY8_TABLE = """\
 0: 1 . . . .
 1: . . . . .
 2: . . . . .
 3: . 2 . . .
 4: . . . . .
 5: . . . . .
 6: . . 1 . .
 7: . 3 . . .
 8: . . 4 . .
 9: . . . . .
10: . . 2 . .
11: . . . 4 .
12: . . . . 1
"""

MASSEY_BIER16_BETTI = [1, 0, 0, 10, 4, 12, 98, 130, 91, 233, 377, 268,
                       268, 377, 233, 91, 130, 98, 12, 4, 10, 0, 0, 1]

MASSEY8_RANKS = {3: 2, 4: 0, 5: 0, 6: 0, 7: 3, 8: 4, 9: 4, 10: 4, 11: 4, 12: 4, 13: 7}


def polygon_betti(n: int, k: int) -> int:
    """Closed form for ``b_k`` of the polygon's moment-angle manifold, ``3 <= k <= n-1``."""
    from fractions import Fraction
    from math import comb

    v = Fraction(k * (k - 2) * (n - k), (n - 1) * (n - k + 1)) * comb(n, k)
    assert v.denominator == 1
    return int(v)


def polygon_ranks(n: int) -> dict[int, int]:
    """Closed forms for ``phi_3 .. phi_7`` of the polygon's moment-angle manifold."""
    return {3: n * (n - 3) // 2, 4: n * (n - 2) * (n - 4) // 3,
            5: n * (n - 1) * (n - 3) * (n - 4) // 4,
            6: n * (n - 1) * (n - 2) * (n - 3) * (n - 4) // 5,
            7: n * (n - 2) * (n - 3) * (n - 4) * (n * n - 3 * n + 1) // 6}
