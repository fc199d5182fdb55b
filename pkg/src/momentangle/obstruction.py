"""Recognition of lowest-degree nontrivial Massey products from the 1-skeleton.

If some six vertices of ``K`` induce one of the obstruction graphs, then
``H^3(Z_K)`` carries classes ``a, b, c`` with a nontrivial product
``<a, b, c>`` in ``H^8``.  Labeled on ``{1..6}`` the graphs are the solid
edges below plus any subset of the three dotted ones: eight labeled graphs
in six isomorphism classes.

The converse does not hold in general.  Exhaustive search over six-vertex
complexes finds nontrivial products of this kind whose complement graph is
the path ``1..6`` plus the chord ``13``, or plus both chords ``13`` and
``46``; these are not detected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations

from .dga import CohomologyClass, DgaElement, MasseyReport, massey_triple
from .simplicial import SimplicialComplex, one_skeleton

SOLID = frozenset({(4, 6), (3, 6), (3, 5), (2, 5), (1, 4), (2, 4), (1, 3)})
DOTTED = ((2, 6), (1, 6), (1, 5))
PATH = frozenset({(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)})
LABELS = tuple(range(1, 7))
_PERMS = list(permutations(range(6)))

LIMITATION = ("only the lowest-degree pattern (3,3,3) is detected; an empty result "
              "does not mean Z_K is formal")


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def canonical_form(edges) -> tuple[tuple[int, int], ...]:
    """Lexicographically least relabeling of a graph on ``{1..6}``."""
    best = None
    for p in _PERMS:
        form = tuple(sorted(_edge(p[u - 1] + 1, p[v - 1] + 1) for u, v in edges))
        if best is None or form < best:
            best = form
    return best


@dataclass(frozen=True)
class ObstructionCatalog:
    """The eight labeled obstruction graphs and their isomorphism classes."""

    @cached_property
    def labeled(self) -> list[frozenset[tuple[int, int]]]:
        out = []
        for r in range(len(DOTTED) + 1):
            for extra in combinations(DOTTED, r):
                out.append(SOLID | frozenset(extra))
        return out

    @cached_property
    def classes(self) -> dict[tuple, int]:
        """Canonical form -> class id (1..6, ordered by edge count then form)."""
        forms = sorted({canonical_form(g) for g in self.labeled}, key=lambda f: (len(f), f))
        return {f: i + 1 for i, f in enumerate(forms)}

    def class_of(self, edges) -> int | None:
        return self.classes.get(canonical_form(edges))


CATALOG = ObstructionCatalog()


@dataclass(frozen=True)
class DetectionHit:
    vertices: tuple[int, ...]
    labeling: dict[int, int]  # label in 1..6 -> vertex of K
    cls: int

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices),
                "labeling": {str(k): v for k, v in sorted(self.labeling.items())},
                "class": self.cls}


def _relabel(edges, labeling: dict[int, int]) -> frozenset[tuple[int, int]]:
    pos = {v: k for k, v in labeling.items()}
    return frozenset(_edge(pos[u], pos[v]) for u, v in edges)


def _labelings(vertices, edges, accept):
    """First permutation (in lexicographic order) whose relabeled graph passes ``accept``."""
    for p in permutations(vertices):
        labeling = {i + 1: v for i, v in enumerate(p)}
        if accept(_relabel(edges, labeling)):
            return labeling
    return None


def _induced(K: SimplicialComplex, vertices) -> list[tuple[int, int]]:
    G = one_skeleton(K)
    return [(u, v) for u, v in combinations(vertices, 2) if G.has_edge(u, v)]


def _direct_accept(mapped) -> bool:
    return SOLID <= mapped and not mapped - SOLID - set(DOTTED)


def _complement_accept(mapped_complement) -> bool:
    return PATH <= mapped_complement and not mapped_complement - PATH - set(DOTTED)


def detect(K: SimplicialComplex) -> list[DetectionHit]:
    """All six-vertex subsets whose induced 1-skeleton is an obstruction graph."""
    hits = []
    for vs in combinations(K.vertices, 6):
        edges = _induced(K, vs)
        if not 7 <= len(edges) <= 10:
            continue
        labeling = _labelings(vs, edges, _direct_accept)
        if labeling is not None:
            hits.append(DetectionHit(vs, labeling, CATALOG.class_of(_relabel(edges, labeling))))
    return hits


def detect_by_complement(K: SimplicialComplex) -> list[DetectionHit]:
    """Same as :func:`detect`, matching the complement graph against ``12..56`` plus extras."""
    hits = []
    for vs in combinations(K.vertices, 6):
        edges = set(_induced(K, vs))
        missing = [e for e in combinations(vs, 2) if e not in edges]
        if not 5 <= len(missing) <= 8:
            continue
        labeling = _labelings(vs, missing, _complement_accept)
        if labeling is not None:
            hits.append(DetectionHit(vs, labeling, CATALOG.class_of(_relabel(edges, labeling))))
    return hits


def certificate_classes(K: SimplicialComplex, hit: DetectionHit):
    """``[chi_2]``, ``[chi_3]``, ``[chi_5]`` on the labeled pairs ``12``, ``34``, ``56``."""
    v = hit.labeling
    make = lambda pair, point: CohomologyClass(3, DgaElement.chi(K, (v[pair[0]], v[pair[1]]), (v[point],)))
    return make((1, 2), 2), make((3, 4), 3), make((5, 6), 5)


def certify(K: SimplicialComplex, hit: DetectionHit, **kwargs) -> MasseyReport:
    """Massey product of the three degree-3 classes attached to a detection hit."""
    a, b, c = certificate_classes(K, hit)
    report = massey_triple(K, a, b, c, **kwargs)
    if not report.nonvanishing:
        raise AssertionError(f"obstruction graph on {hit.vertices} gave a vanishing Massey product")
    return report


@dataclass
class ScanVerdict:
    hits: list[DetectionHit]
    certificates: list[MasseyReport] = field(default_factory=list)

    @property
    def nonformal_certified(self) -> bool:
        return bool(self.hits)

    @property
    def verdict(self) -> str:
        return "non-formal (certified)" if self.hits else "no lowest-degree obstruction"

    def to_dict(self) -> dict:
        note = self.verdict if self.hits else f"{self.verdict}; {LIMITATION}"
        return {"nonformal_certified": self.nonformal_certified,
                "hits": [h.to_dict() for h in self.hits], "note": note}


def scan_nonformal(K: SimplicialComplex, certify_all: bool = False) -> ScanVerdict:
    """Detect obstruction graphs and certify the first hit (or all of them)."""
    hits = detect(K)
    todo = hits if certify_all else hits[:1]
    return ScanVerdict(hits, [certify(K, h) for h in todo])
