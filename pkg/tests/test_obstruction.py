import random

import pytest

from momentangle import fixtures
from momentangle.obstruction import (CATALOG, DOTTED, LIMITATION, PATH, SOLID, canonical_form,
                                     certify, detect, detect_by_complement, scan_nonformal)
from momentangle.simplicial import from_facets, polygon

from complexes import random_complex
from oracles import triangle_completions


def test_catalog_sizes():
    assert len(CATALOG.labeled) == 8
    # the dotted choices {15} ~ {26} and {15,16} ~ {16,26} are isomorphic: six classes
    assert len(CATALOG.classes) == 6
    assert sorted(len(f) for f in CATALOG.classes) == [7, 8, 8, 9, 9, 10]
    g = lambda *extra: CATALOG.class_of(SOLID | set(extra))
    assert g((1, 5)) == g((2, 6)) != g((1, 6))
    assert g((1, 5), (1, 6)) == g((1, 6), (2, 6)) != g((1, 5), (2, 6))


def test_catalog_complements_contain_the_path():
    full = {(u, v) for u in range(1, 7) for v in range(u + 1, 7)}
    for g in CATALOG.labeled:
        comp = full - g
        assert PATH <= comp and comp - PATH <= set(DOTTED)


def test_solid_edges_are_complement_of_path_and_dotted():
    full = {(u, v) for u in range(1, 7) for v in range(u + 1, 7)}
    assert SOLID == full - PATH - set(DOTTED)


def test_canonical_form_is_invariant():
    rng = random.Random(1)
    g = sorted(SOLID | {(1, 5)})
    for _ in range(20):
        p = list(range(1, 7))
        rng.shuffle(p)
        h = [tuple(sorted((p[u - 1], p[v - 1]))) for u, v in g]
        assert canonical_form(h) == canonical_form(g)


def test_five_vertex_example_has_one_hit():
    K = fixtures.five_cycle_plus_edge()
    hits = detect(K)
    assert len(hits) == 1
    hit = hits[0]
    assert hit.vertices == (1, 2, 3, 4, 5, 6)
    r = certify(K, hit)
    assert r.nonvanishing and r.indeterminacy_dim == 0
    assert hit.to_dict()["class"] == hit.cls


def test_no_hits_on_small_or_sparse():
    assert detect(polygon(5)) == []
    assert detect(fixtures.subdivided_octahedron()) == []
    assert detect(fixtures.massey_example8()) == []


def test_detect_matches_complement_matcher():
    rng = random.Random(2)
    for _ in range(60):
        K = random_complex(rng.choice([6, 7]), rng)
        a = [(h.vertices, h.cls) for h in detect(K)]
        b = [(h.vertices, h.cls) for h in detect_by_complement(K)]
        assert a == b


@pytest.mark.parametrize("index", range(8))
def test_every_completion_certifies(index):
    g = CATALOG.labeled[index]
    for K in triangle_completions(6, g):
        hits = detect(K)
        assert hits
        for h in hits:
            assert certify(K, h, decomposability=False).nonvanishing


def test_flag_sphere_hits():
    K = fixtures.flag_sphere8()
    hits = detect(K)
    assert len(hits) == 10
    reports = [certify(K, h, decomposability=False) for h in hits]
    assert all(r.nonvanishing for r in reports)
    assert sorted(r.indeterminacy_dim for r in reports).count(0) == 2


def test_scan_verdicts():
    v = scan_nonformal(fixtures.five_cycle_plus_edge())
    assert v.nonformal_certified and len(v.certificates) == 1
    d = scan_nonformal(polygon(6)).to_dict()
    assert d["nonformal_certified"] is False and LIMITATION in d["note"] and d["hits"] == []


def test_undetected_nonvanishing_product():
    # a nontrivial lowest-degree Massey product that no obstruction graph detects
    K = from_facets(6, [(1, 2), (1, 3), (1, 5), (2, 4, 5), (2, 6), (3, 4), (3, 6)])
    assert detect(K) == []
    assert not scan_nonformal(K).nonformal_certified
