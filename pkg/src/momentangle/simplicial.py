"""Finite simplicial complexes on the vertex set {1, ..., n}.

Complexes are immutable values described by their facets.  Faces are
derived lazily and cached.  Internally a face is also kept as a bitmask
(bit ``v - 1`` set for vertex ``v``), which is what the homology engines
consume.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    """Raised for malformed complexes or invalid constructions."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> Simplex:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _maximal(masks: Iterable[int]) -> list[int]:
    """Masks not strictly contained in another mask of the collection."""
    ordered = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in ordered:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


def _canonical(masks: Iterable[int]) -> tuple[Simplex, ...]:
    return tuple(sorted(vertices_of(m) for m in masks))


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex on ``[n]`` given by its facets.

    ``labels`` records original vertex names after re-indexing (for example
    by :func:`full_subcomplex`); it does not take part in equality.
    """

    n: int
    facets: tuple[Simplex, ...]
    labels: tuple[int, ...] | None = field(default=None, compare=False)

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self.n}, facets={list(map(list, self.facets))})"

    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(f) for f in self.facets)

    @cached_property
    def face_masks(self) -> frozenset[int]:
        faces: set[int] = set()
        for fm in self.facet_masks:
            if fm in faces:
                continue
            # enumerate submasks of the facet
            sub = fm
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & fm
        return frozenset(faces)

    @cached_property
    def faces_by_dim(self) -> tuple[tuple[Simplex, ...], ...]:
        """Faces grouped by dimension, starting at dimension -1."""
        top = max((len(f) for f in self.facets), default=0)
        groups: list[list[Simplex]] = [[] for _ in range(top + 1)]
        for m in self.face_masks:
            groups[m.bit_count()].append(vertices_of(m))
        return tuple(tuple(sorted(g)) for g in groups)

    @property
    def dim(self) -> int:
        return len(self.faces_by_dim) - 2

    @property
    def vertices(self) -> Simplex:
        return vertices_of(self.vertex_mask)

    @cached_property
    def vertex_mask(self) -> int:
        m = 0
        for fm in self.facet_masks:
            m |= fm
        return m

    @property
    def ground_mask(self) -> int:
        return (1 << self.n) - 1

    def __contains__(self, simplex) -> bool:
        if isinstance(simplex, int):
            return simplex in self.face_masks
        return mask_of(simplex) in self.face_masks

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.faces_by_dim)

    @cached_property
    def minimal_nonface_masks(self) -> tuple[int, ...]:
        faces = self.face_masks
        found: set[int] = set()
        for f in faces:
            for v in range(self.n):
                bit = 1 << v
                if f & bit:
                    continue
                g = f | bit
                if g in faces or g in found:
                    continue
                rest = g
                ok = True
                while rest:
                    low = rest & -rest
                    rest ^= low
                    if (g ^ low) not in faces:
                        ok = False
                        break
                if ok:
                    found.add(g)
        return tuple(sorted(found, key=lambda m: vertices_of(m)))

    @property
    def minimal_nonfaces(self) -> tuple[Simplex, ...]:
        return _canonical(self.minimal_nonface_masks)

    @property
    def is_full_simplex(self) -> bool:
        return self.facet_masks == (self.ground_mask,)

    def to_dict(self) -> dict:
        return {"n": self.n, "facets": [list(f) for f in self.facets]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _build(n: int, masks: Iterable[int], *, allow_ghosts: bool = False,
           labels: Sequence[int] | None = None) -> SimplicialComplex:
    facets = _maximal(masks)
    if not facets:
        raise ComplexError("void complex (no faces at all) is not allowed")
    used = 0
    for m in facets:
        used |= m
    ground = (1 << n) - 1
    if used & ~ground:
        raise ComplexError(f"vertex out of range 1..{n}")
    if used != ground and not allow_ghosts:
        missing = vertices_of(ground & ~used)
        raise ComplexError(
            f"vertices {list(missing)} lie in no facet; pass allow_ghosts=True to permit them")
    return SimplicialComplex(n, _canonical(facets),
                             tuple(labels) if labels is not None else None)


def from_facets(n: int, facets: Iterable[Iterable[int]], *,
                allow_ghosts: bool = False, allow_empty: bool = False) -> SimplicialComplex:
    """Complex generated by ``facets``; non-maximal entries are absorbed.

    ``allow_empty`` builds the complex ``{∅}`` from an empty facet list.
    """
    if n < 0:
        raise ComplexError("n must be nonnegative")
    masks = []
    for f in facets:
        f = list(f)
        for v in f:
            if not isinstance(v, int) or v < 1 or v > n:
                raise ComplexError(f"vertex {v!r} out of range 1..{n}")
        if len(set(f)) != len(f):
            raise ComplexError(f"repeated vertex in facet {f}")
        masks.append(mask_of(f))
    if not masks:
        if not allow_empty:
            raise ComplexError("empty facet list; pass allow_empty=True for the complex {∅}")
        masks = [0]
        allow_ghosts = True
    return _build(n, masks, allow_ghosts=allow_ghosts)


def from_nonfaces(n: int, generators: Iterable[Iterable[int]], *,
                  allow_ghosts: bool = False) -> SimplicialComplex:
    """The complex whose minimal non-faces are exactly ``generators``."""
    gens = []
    for g in generators:
        g = list(g)
        for v in g:
            if not isinstance(v, int) or v < 1 or v > n:
                raise ComplexError(f"vertex {v!r} out of range 1..{n}")
        gens.append(mask_of(g))
    gens = sorted(set(gens))
    for a, b in combinations(gens, 2):
        if a & b in (a, b):
            raise ComplexError(
                f"generators {list(vertices_of(a))} and {list(vertices_of(b))} are comparable")
    if 0 in gens:
        raise ComplexError("the empty set cannot be a non-face")
    # grow faces upward by adding larger vertices
    faces = [0]
    frontier = [0]
    while frontier:
        nxt = []
        for f in frontier:
            start = f.bit_length()
            for v in range(start, n):
                g = f | (1 << v)
                if any(x & g == x for x in gens if x >> v & 1):
                    continue
                nxt.append(g)
        faces.extend(nxt)
        frontier = nxt
    return _build(n, faces, allow_ghosts=allow_ghosts)


def from_dict(data: dict, **kwargs) -> SimplicialComplex:
    """Parse the ``{"n": .., "facets": ..}`` / ``{"n": .., "nonfaces": ..}`` schema."""
    if not isinstance(data, dict) or "n" not in data:
        raise ComplexError("complex JSON must be an object with key 'n'")
    keys = {"facets", "nonfaces"} & data.keys()
    if len(keys) != 1:
        raise ComplexError("exactly one of 'facets' or 'nonfaces' is required")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise ComplexError("'n' must be a positive integer")
    if "facets" in data:
        return from_facets(n, data["facets"], **kwargs)
    return from_nonfaces(n, data["nonfaces"], **kwargs)


def load(path) -> SimplicialComplex:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ComplexError(f"{path}: invalid JSON ({exc})") from exc
    return from_dict(data)


def minimal_nonfaces(K: SimplicialComplex) -> tuple[Simplex, ...]:
    return K.minimal_nonfaces


def f_vector(K: SimplicialComplex) -> tuple[int, ...]:
    return K.f_vector


def full_subcomplex(K: SimplicialComplex, I: Iterable[int]) -> SimplicialComplex:
    """Faces of ``K`` inside ``I``, re-indexed over ``1..|I|``.

    The original vertex of new vertex ``i`` is ``labels[i - 1]``.
    """
    verts = sorted(set(I))
    for v in verts:
        if v < 1 or v > K.n:
            raise ComplexError(f"vertex {v} out of range 1..{K.n}")
    imask = mask_of(verts)
    relabel = {v: i + 1 for i, v in enumerate(verts)}
    masks = [mask_of(relabel[v] for v in vertices_of(fm & imask)) for fm in K.facet_masks]
    return _build(len(verts), masks, allow_ghosts=True,
                  labels=[K.labels[v - 1] if K.labels else v for v in verts])


def restriction_masks(K: SimplicialComplex, imask: int) -> list[int]:
    """Face masks of the full subcomplex on ``imask``, original labels kept."""
    return [f for f in K.face_masks if f & ~imask == 0]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def induced(self, vertices: Sequence[int]) -> frozenset[tuple[int, int]]:
        vs = set(vertices)
        return frozenset(e for e in self.edges if e[0] in vs and e[1] in vs)


def one_skeleton(K: SimplicialComplex) -> Graph:
    edges = frozenset(f for f in K.faces_by_dim[2]) if len(K.faces_by_dim) > 2 else frozenset()
    return Graph(K.n, edges)


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Simplicial join; vertices of ``L`` are shifted by ``K.n``."""
    masks = [a | (b << K.n) for a in K.facet_masks for b in L.facet_masks]
    return _build(K.n + L.n, masks, allow_ghosts=True)


def alexander_dual(K: SimplicialComplex) -> SimplicialComplex:
    """Faces are complements of the non-faces of ``K``.

    The minimal non-faces of the dual are the complements of the facets of
    ``K``.  Vertices ``v`` with ``[n] - v`` a face of ``K`` become ghosts.
    """
    if K.is_full_simplex:
        raise ComplexError("the Alexander dual of the full simplex is void")
    ground = K.ground_mask
    gens = [vertices_of(ground & ~m) for m in K.facet_masks]
    return from_nonfaces(K.n, gens, allow_ghosts=True)


def bier(K: SimplicialComplex) -> SimplicialComplex:
    """Deleted join of ``K`` with its Alexander dual on ``2n`` vertices.

    Vertex ``i`` of the dual copy is renamed ``n + i``.
    """
    dual = alexander_dual(K)
    n = K.n
    ground = K.ground_mask
    dual_faces = list(dual.face_masks)
    masks = []
    for s in K.face_masks:
        free = ground & ~s
        for t in dual_faces:
            if t & free == t:
                masks.append(s | (t << n))
    return _build(2 * n, masks, allow_ghosts=True)


def corner_cut(K: SimplicialComplex, F: Iterable[int], w: int | None = None) -> SimplicialComplex:
    """Replace the maximal face ``F`` by the cone over its boundary with apex ``w``."""
    fm = mask_of(F)
    if fm not in K.facet_masks:
        raise ComplexError(f"{sorted(F)} is not a maximal face")
    if w is None:
        w = K.n + 1
    if w <= K.n:
        raise ComplexError(f"new vertex {w} must exceed n={K.n}")
    wbit = 1 << (w - 1)
    masks = [m for m in K.facet_masks if m != fm]
    rest = fm
    while rest:
        low = rest & -rest
        rest ^= low
        masks.append((fm ^ low) | wbit)
    return _build(w, masks)


def is_flag(K: SimplicialComplex) -> bool:
    return all(m.bit_count() == 2 for m in K.minimal_nonface_masks)


@dataclass(frozen=True)
class SphereReport:
    """Necessary conditions for ``K`` to triangulate a sphere.

    A passing report means only that ``K`` passes sphere checks.
    """

    dim: int
    pure: bool
    pseudomanifold: bool
    connected: bool
    sphere_homology: bool

    @property
    def passes(self) -> bool:
        return self.pure and self.pseudomanifold and self.connected and self.sphere_homology

    def summary(self) -> str:
        verdict = "passes sphere checks" if self.passes else "fails sphere checks"
        return (f"{verdict} (dim={self.dim}, pure={self.pure}, pseudomanifold={self.pseudomanifold}, "
                f"connected={self.connected}, sphere homology={self.sphere_homology})")

    def to_dict(self) -> dict:
        return {"dim": self.dim, "pure": self.pure, "pseudomanifold": self.pseudomanifold,
                "connected": self.connected, "sphere_homology": self.sphere_homology,
                "passes_sphere_checks": self.passes}


def _is_connected(K: SimplicialComplex) -> bool:
    verts = K.vertices
    if not verts:
        return False
    seen = {verts[0]}
    stack = [verts[0]]
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for f in K.facets:
        for v in f:
            adj[v].update(f)
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(verts)


def verify_sphere_candidate(K: SimplicialComplex) -> SphereReport:
    from .srhomology import reduced_betti_masks

    dim = K.dim
    pure = len({len(f) for f in K.facets}) == 1
    pseudo = False
    if pure and dim >= 0:
        counts: dict[int, int] = {}
        for fm in K.facet_masks:
            rest = fm
            while rest:
                low = rest & -rest
                rest ^= low
                ridge = fm ^ low
                counts[ridge] = counts.get(ridge, 0) + 1
        pseudo = all(c == 2 for c in counts.values())
    # S^0 is the one sphere that is disconnected
    connected = _is_connected(K) if dim > 0 else len(K.vertices) == 2
    dims = reduced_betti_masks(list(K.face_masks))
    sphere = dims == {dim: 1}
    return SphereReport(dim, pure, pseudo, connected, sphere)


@dataclass(frozen=True)
class CoordinateSubspace:
    """``{z_i = 0 for i in zeros}`` inside ``C^n``."""

    n: int
    zeros: Simplex

    def __str__(self) -> str:
        return "{" + "=".join(f"z{i}" for i in self.zeros) + "=0}"

    @property
    def codim(self) -> int:
        return len(self.zeros)


def coordinate_arrangement(K: SimplicialComplex) -> list[CoordinateSubspace]:
    """One coordinate subspace per minimal non-face of ``K``."""
    return [CoordinateSubspace(K.n, g) for g in K.minimal_nonfaces]


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the simplex on ``[n]``."""
    return from_facets(n, list(combinations(range(1, n + 1), n - 1)))


def polygon(n: int) -> SimplicialComplex:
    return from_facets(n, [(i, i % n + 1) for i in range(1, n + 1)])
