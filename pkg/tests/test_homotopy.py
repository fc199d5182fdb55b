import random

import pytest

from momentangle import fixtures
from momentangle.exactalg import SeriesError, SparseBivariate, TruncatedSeries, series_pow_factor
from momentangle.homotopy import (euler_identity_check, euler_polynomial, flag_series,
                                  general_series, koszul_dual_poincare, peel, ranks_flag,
                                  ranks_general)
from momentangle.simplicial import polygon, simplex_boundary

from complexes import random_complex


@pytest.mark.parametrize("n", range(4, 9))
def test_polygon_ranks(n):
    r = ranks_flag(polygon(n))
    for k, v in fixtures.polygon_ranks(n).items():
        assert r[k] == v


def test_square_is_product_of_spheres():
    # Z of the square is S^3 x S^3: phi_3 = 2 and nothing else
    r = ranks_flag(polygon(4), 10)
    assert r.phi == {d: (2 if d == 3 else 0) for d in range(2, 11)}


def test_peel_rebuilds_its_input():
    phi = {3: 2, 4: 1, 5: 3, 6: 0, 7: 4}
    N = 8
    F = TruncatedSeries.one(N)
    for r, e in phi.items():
        if r % 2 == 0:
            F = F * series_pow_factor(r - 1, e, 1, N)
        else:
            F = F * series_pow_factor(r - 1, -e, -1, N)
    table = peel(F, N + 1)
    assert all(table[r] == e for r, e in phi.items())
    assert table[2] == 0


def test_peel_rejects_bad_series():
    with pytest.raises(SeriesError):
        peel(TruncatedSeries.from_poly([1, 0, -1], 5), 6)
    with pytest.raises(SeriesError):
        peel(TruncatedSeries.from_poly([2], 5), 6)
    with pytest.raises(ValueError):
        peel(TruncatedSeries.from_poly([1], 3), 13)


def test_non_flag_needs_poincare_series():
    with pytest.raises(ValueError):
        ranks_flag(simplex_boundary(3))
    with pytest.raises(ValueError):
        koszul_dual_poincare(fixtures.massey_example8())


def test_general_pipeline_reproduces_known_row():
    K = fixtures.massey_example8()
    table = ranks_general(K, fixtures.massey8_poincare(), 13)
    assert table.row() == list(fixtures.MASSEY8_RANKS.values())
    assert table.pipeline == "general"
    # the intermediate series begins 1 + 2t^2 + 3t^4
    g = general_series(K.n, fixtures.massey8_poincare(), 13)
    assert [g[d] for d in range(6)] == [1, 0, 2, 0, 3, 0]


@pytest.mark.parametrize("n", range(4, 9))
def test_koszul_dual_agrees_with_flag_pipeline(n):
    K = polygon(n)
    assert ranks_general(K, koszul_dual_poincare(K)).phi == ranks_flag(K).phi


def test_euler_polynomial():
    # (1+t)^4 h(S/I, -t) for the square is (1-t^2)^2
    assert euler_polynomial(polygon(4)) == [1, 0, -2, 0, 1]
    assert flag_series(polygon(4), 4) == TruncatedSeries.from_poly([1, 0, 2, 0, 3], 4)


def test_euler_identity():
    for K in (polygon(6), fixtures.flag_sphere8(), fixtures.massey_example8(),
              fixtures.subdivided_octahedron()):
        assert euler_identity_check(K)
    rng = random.Random(4)
    for _ in range(20):
        assert euler_identity_check(random_complex(rng.randint(3, 7), rng))


def test_rank_table_output():
    r = ranks_flag(polygon(5), 6)
    assert r.to_dict() == {"N": 6, "phi": {"2": 0, "3": 5, "4": 5, "5": 10, "6": 24}, "pipeline": "flag"}
    assert r.render() == "r:   2 3 4  5  6\nphi: 0 5 5 10 24\n"


def test_bivariate_input_validation():
    bad = SparseBivariate({(0, 0): 2})
    with pytest.raises(ValueError):
        general_series(3, bad)
