"""The cochain algebra ``R(K) = ⊕_I C~*(K_I)`` of a moment-angle complex.

Elements are sums of indicator cochains ``chi_sigma`` living in the summand
of a subset ``I`` of ``[n]`` (``sigma`` a face of ``K`` inside ``I``).  The
total degree of ``chi_sigma`` in summand ``I`` is ``|I| + |sigma|``.

The product is transferred from the squarefree Koszul model: the monomial
``x_sigma u_J`` (``I = sigma ⊔ J``, ``du_i = x_i``) corresponds to
``kappa(sigma, I) chi_sigma``, where ``kappa`` is the sign below.  With this
choice the differential is the coboundary of :mod:`srhomology` summand by
summand, and the product is strictly graded commutative and associative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import exactalg
from .simplicial import SimplicialComplex, mask_of, vertices_of
from .srhomology import (CohomologyGroup, ReducedCochainComplex, _reduced_betti,
                         coboundary_sign)

Key = tuple[int, int]  # (support mask I, face mask sigma)


class MasseyError(RuntimeError):
    """A step of the Massey computation that cannot fail did fail."""


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def kappa(sigma: int, imask: int) -> int:
    """Sign relating ``x_sigma u_{I - sigma}`` to ``chi_sigma`` in summand ``I``."""
    e = sum((imask & (b - 1)).bit_count() for b in _bits(sigma))
    k = sigma.bit_count()
    return -1 if (e + k * (k - 1) // 2) & 1 else 1


def exterior_sign(J: int, J2: int) -> int:
    """Sign of ``u_J u_J2 = ± u_{J ∪ J2}`` (disjoint index sets)."""
    e = sum((J & ~((b << 1) - 1)).bit_count() for b in _bits(J2))
    return -1 if e & 1 else 1


def product_sign(key: Key, key2: Key) -> int:
    (I, s), (I2, s2) = key, key2
    return (kappa(s, I) * kappa(s2, I2) * kappa(s | s2, I | I2)
            * exterior_sign(I & ~s, I2 & ~s2))


# ---------------------------------------------------------------------------


class BaskakovModel:
    """Per-summand cochain complexes and cohomology of one complex, cached."""

    def __init__(self, K: SimplicialComplex):
        self.K = K
        self.faces = K.face_masks
        self._faces_in: dict[int, list[int]] = {}
        self._cochains: dict[int, ReducedCochainComplex] = {}
        self._groups: dict[tuple[int, int], CohomologyGroup] = {}
        self._fast: dict[int, list[int]] = {}

    def faces_in(self, imask: int) -> list[int]:
        if imask not in self._faces_in:
            self._faces_in[imask] = [f for f in self.faces if not f & ~imask]
        return self._faces_in[imask]

    def fast_dim(self, imask: int, k: int) -> int:
        """``dim H~`` of ``K_I`` at faces with ``k`` vertices (integer engine)."""
        if imask not in self._fast:
            self._fast[imask] = _reduced_betti(self.faces_in(imask))
        b = self._fast[imask]
        return b[k] if 0 <= k < len(b) else 0

    def cochains(self, imask: int) -> ReducedCochainComplex:
        if imask not in self._cochains:
            self._cochains[imask] = ReducedCochainComplex.from_masks(self.faces_in(imask))
        return self._cochains[imask]

    def group(self, imask: int, k: int) -> CohomologyGroup:
        key = (imask, k)
        if key not in self._groups:
            self._groups[key] = self.cochains(imask).cohomology(k)
        return self._groups[key]

    def summand_vector(self, imask: int, k: int, terms: dict[int, Fraction]) -> list[Fraction]:
        cx = self.cochains(imask)
        vec = [Fraction(0)] * cx.size(k)
        idx = cx.index[k]
        for sigma, c in terms.items():
            vec[idx[sigma]] = c
        return vec

    def element(self, imask: int, k: int, vec) -> "DgaElement":
        basis = self.cochains(imask).basis[k]
        return DgaElement(self.K, {(imask, f): Fraction(c) for f, c in zip(basis, vec) if c})


@lru_cache(maxsize=16)
def model(K: SimplicialComplex) -> BaskakovModel:
    return BaskakovModel(K)


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DgaElement:
    """Finite sum ``sum c * chi_sigma`` over keys ``(I, sigma)``."""

    K: SimplicialComplex
    terms: dict[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (I, s), c in self.terms.items():
            c = Fraction(c)
            if not c:
                continue
            if s & ~I or s not in self.K.face_masks:
                raise ValueError(f"{vertices_of(s)} is not a face of K inside {vertices_of(I)}")
            clean[(I, s)] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def chi(cls, K: SimplicialComplex, support, simplex=(), coeff=1) -> "DgaElement":
        return cls(K, {(mask_of(support), mask_of(simplex)): Fraction(coeff)})

    @property
    def degrees(self) -> set[int]:
        return {I.bit_count() + s.bit_count() for I, s in self.terms}

    @property
    def degree(self) -> int:
        degs = self.degrees
        if len(degs) != 1:
            raise ValueError(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    @property
    def supports(self) -> list[int]:
        return sorted({I for I, _ in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, DgaElement) and self.terms == other.terms

    def __add__(self, other: "DgaElement") -> "DgaElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return DgaElement(self.K, out)

    def __neg__(self) -> "DgaElement":
        return DgaElement(self.K, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "DgaElement") -> "DgaElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "DgaElement":
        return DgaElement(self.K, {k: scalar * c for k, c in self.terms.items()})

    def __mul__(self, other: "DgaElement") -> "DgaElement":
        return product(self, other)

    def by_summand(self) -> dict[int, dict[int, Fraction]]:
        out: dict[int, dict[int, Fraction]] = {}
        for (I, s), c in self.terms.items():
            out.setdefault(I, {})[s] = c
        return out

    def to_list(self) -> list:
        return [[list(vertices_of(I)), list(vertices_of(s)), str(c)] for (I, s), c in self.terms.items()]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (I, s), c in self.terms.items():
            name = "chi_" + ("".join(map(str, vertices_of(s))) or "()")
            parts.append(f"{c}*{name}[{''.join(map(str, vertices_of(I)))}]")
        return " + ".join(parts)


def differential(e: DgaElement) -> DgaElement:
    faces = e.K.face_masks
    out: dict[Key, Fraction] = {}
    for (I, s), c in e.terms.items():
        for b in _bits(I & ~s):
            t = s | b
            if t in faces:
                key = (I, t)
                out[key] = out.get(key, 0) + coboundary_sign(s, b) * c
    return DgaElement(e.K, out)


def product(a: DgaElement, b: DgaElement) -> DgaElement:
    faces = a.K.face_masks
    out: dict[Key, Fraction] = {}
    for k1, c1 in a.terms.items():
        for k2, c2 in b.terms.items():
            if k1[0] & k2[0]:
                continue
            s = k1[1] | k2[1]
            if s not in faces:
                continue
            key = (k1[0] | k2[0], s)
            out[key] = out.get(key, 0) + product_sign(k1, k2) * c1 * c2
    return DgaElement(a.K, out)


# ---------------------------------------------------------------------------
# cohomology


@dataclass(frozen=True, eq=False)
class CohomologyClass:
    """A class in ``H^q(Z_K)`` given by a cocycle representative."""

    degree: int
    representative: DgaElement

    def __post_init__(self):
        if not differential(self.representative).is_zero():
            raise ValueError("representative is not a cocycle")

    @property
    def K(self) -> SimplicialComplex:
        return self.representative.K

    def coordinates(self) -> dict[tuple[int, int], Fraction]:
        return class_coordinates(self.representative)

    def is_zero(self) -> bool:
        return not self.coordinates()

    def __str__(self) -> str:
        return f"[{self.representative}] in H^{self.degree}"


def class_coordinates(e: DgaElement) -> dict[tuple[int, int], Fraction]:
    """Coordinates ``(I, class index) -> c`` of a cocycle in the chosen class bases."""
    M = model(e.K)
    out = {}
    for I, terms in e.by_summand().items():
        k = next(iter(terms)).bit_count()
        grp = M.group(I, k)
        coords = grp.coordinates(M.summand_vector(I, k, terms))
        if coords is None:
            raise ValueError(f"not a cocycle in the summand {vertices_of(I)}")
        for i, c in enumerate(coords):
            if c:
                out[(I, i)] = c
    return out


def basis_class(K: SimplicialComplex, imask: int, k: int, index: int) -> CohomologyClass:
    M = model(K)
    vec = M.group(imask, k).classes[index]
    return CohomologyClass(imask.bit_count() + k, M.element(imask, k, vec))


def summand_classes(K: SimplicialComplex, imask: int, q: int) -> list[CohomologyClass]:
    """Basis classes of ``H^q`` living in the summand ``I``."""
    k = q - imask.bit_count()
    M = model(K)
    if k < 0 or k > imask.bit_count() or not M.fast_dim(imask, k):
        return []
    return [basis_class(K, imask, k, i) for i in range(M.group(imask, k).dim)]


def _subsets(mask: int):
    sub = mask
    while True:
        yield sub
        if not sub:
            return
        sub = (sub - 1) & mask


def cohomology_basis(K: SimplicialComplex, q: int, within: int | None = None) -> list[CohomologyClass]:
    """Basis of ``H^q(Z_K)``, one block per summand, summands in increasing mask order.

    ``within`` restricts to summands inside the given vertex mask.
    """
    ground = K.ground_mask if within is None else within
    out = []
    for imask in sorted(_subsets(ground)):
        out.extend(summand_classes(K, imask, q))
    return out


def cohomology_dims(K: SimplicialComplex) -> list[int]:
    """``dim H^q(Z_K)`` for all ``q``, from the rational cochains of every summand.

    Uses only exact rational elimination, independently of the integer
    engine behind the Betti tables.
    """
    M = model(K)
    dims: dict[int, int] = {}
    for imask in range(K.ground_mask + 1):
        cx = M.cochains(imask)
        top = len(cx.basis)
        ranks = [0] * (top + 1)
        for k in range(top - 1):
            if cx.size(k) and cx.size(k + 1):
                ranks[k + 1] = exactalg.rank(cx.coboundary(k), cx.size(k))
        for k in range(top):
            d = cx.size(k) - ranks[k] - ranks[k + 1]
            if d:
                q = imask.bit_count() + k
                dims[q] = dims.get(q, 0) + d
    return [dims.get(q, 0) for q in range(max(dims) + 1)]


def cup(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    return CohomologyClass(a.degree + b.degree, product(a.representative, b.representative))


def unit(K: SimplicialComplex) -> CohomologyClass:
    return CohomologyClass(0, DgaElement.chi(K, (), ()))


# ---------------------------------------------------------------------------
# subspaces of cohomology, as sparse coordinate vectors


Coords = dict[tuple[int, int], Fraction]


def _span_rank(vectors: list[Coords]) -> int:
    keys = sorted({k for v in vectors for k in v})
    if not vectors or not keys:
        return 0
    pos = {k: i for i, k in enumerate(keys)}
    rows = [[Fraction(0)] * len(keys) for _ in vectors]
    for r, v in enumerate(vectors):
        for k, c in v.items():
            rows[r][pos[k]] = c
    return exactalg.rank(rows, len(keys))


def in_span(target: Coords, vectors: list[Coords]) -> bool:
    if not target:
        return True
    return _span_rank(vectors + [target]) == _span_rank(vectors)


def _products_with(fixed: CohomologyClass, degree: int, left: bool) -> list[Coords]:
    """Coordinates of ``fixed * h`` (or ``h * fixed``) for basis classes ``h`` of ``H^degree``.

    Only summands disjoint from a support of ``fixed`` can contribute.
    """
    K = fixed.K
    out = []
    if degree < 0:
        return out
    seen = set()
    for I in fixed.representative.supports:
        for J in sorted(_subsets(K.ground_mask & ~I)):
            if J in seen:
                continue
            seen.add(J)
            for h in summand_classes(K, J, degree):
                p = cup(fixed, h) if left else cup(h, fixed)
                c = p.coordinates()
                if c:
                    out.append(c)
    return out


def decomposables_near(K: SimplicialComplex, q: int, summands) -> list[Coords]:
    """Spanning set of the decomposables of ``H^q`` lying in the given summands."""
    out = []
    for S in summands:
        for A in sorted(_subsets(S)):
            B = S & ~A
            if not A or not B or A > B:
                continue
            for i in range(A.bit_count(), min(2 * A.bit_count(), q) + 1):
                j = q - i
                left = summand_classes(K, A, i)
                if not left:
                    continue
                right = summand_classes(K, B, j)
                for a in left:
                    for b in right:
                        c = cup(a, b).coordinates()
                        if c:
                            out.append(c)
    return out


def decomposables_subspace(K: SimplicialComplex, q: int) -> list[CohomologyClass]:
    """Basis of the span of all products ``H^i * H^j`` with ``i, j > 0``, ``i + j = q``."""
    vectors = decomposables_near(K, q, sorted(_subsets(K.ground_mask)))
    basis: list[Coords] = []
    for v in vectors:
        if not in_span(v, basis):
            basis.append(v)
    M = model(K)
    out = []
    for v in basis:
        e = DgaElement(K, {})
        for (I, i), c in v.items():
            k = q - I.bit_count()
            e = e + c * M.element(I, k, M.group(I, k).classes[i])
        out.append(CohomologyClass(q, e))
    return out


# ---------------------------------------------------------------------------
# Massey triple products


@dataclass
class MasseyReport:
    defined: bool
    degree: int
    representative: CohomologyClass | None = None
    indeterminacy: list[Coords] = field(default_factory=list)
    nonvanishing: bool = False
    decomposable: bool | None = None
    witnesses: tuple[DgaElement, DgaElement] | None = None
    reason: str = ""

    @property
    def indeterminacy_dim(self) -> int:
        return len(self.indeterminacy)

    def to_dict(self) -> dict:
        return {"defined": self.defined, "degree": self.degree, "nonvanishing": self.nonvanishing,
                "indeterminacy_dim": self.indeterminacy_dim, "decomposable": self.decomposable,
                "representative": self.representative.representative.to_list() if self.representative else []}

    def summary(self) -> str:
        if not self.defined:
            return f"undefined ({self.reason})"
        verdict = "nonvanishing" if self.nonvanishing else "vanishing"
        dec = {True: "decomposable", False: "indecomposable", None: "decomposability not evaluated"}
        return (f"{verdict} in H^{self.degree}, indeterminacy dim {self.indeterminacy_dim}, "
                f"{dec[self.decomposable]}; representative {self.representative.representative}")


def _preimage(target: DgaElement) -> DgaElement:
    """A cochain ``x`` with ``dx = target``, solved summand by summand."""
    M = model(target.K)
    x = DgaElement(target.K, {})
    for I, terms in target.by_summand().items():
        k = next(iter(terms)).bit_count()
        sol = M.group(I, k).preimage(M.summand_vector(I, k, terms))
        if sol is None:
            raise MasseyError(f"no preimage in summand {vertices_of(I)} although the class vanishes")
        x = x + M.element(I, k - 1, sol)
    return x


def massey_representative(a1: DgaElement, a3: DgaElement, x: DgaElement, y: DgaElement) -> DgaElement:
    """``x a3 - (-1)^{|a1|} a1 y`` for witnesses ``dx = a1 a2``, ``dy = a2 a3``."""
    sign = -1 if a1.degree % 2 else 1
    return product(x, a3) - sign * product(a1, y)


def massey_triple(K: SimplicialComplex, a1: CohomologyClass, a2: CohomologyClass,
                  a3: CohomologyClass, *, indeterminacy: bool = True,
                  decomposability: bool = True) -> MasseyReport:
    """Triple Massey product ``<a1, a2, a3>`` with indeterminacy and decomposability.

    With ``indeterminacy=False`` only the part of the indeterminacy lying
    in the summands of the representative is computed; this is enough to
    decide vanishing exactly, since every class used is supported on a
    single summand at a time and products respect the summand splitting.
    """
    degree = a1.degree + a2.degree + a3.degree - 1
    if not cup(a1, a2).is_zero():
        return MasseyReport(False, degree, reason="a1*a2 is nonzero")
    if not cup(a2, a3).is_zero():
        return MasseyReport(False, degree, reason="a2*a3 is nonzero")
    r1, r2, r3 = a1.representative, a2.representative, a3.representative
    x = _preimage(product(r1, r2))
    y = _preimage(product(r2, r3))
    rep = massey_representative(r1, r3, x, y)
    if not differential(rep).is_zero():
        raise MasseyError("Massey representative is not a cocycle")
    cls = CohomologyClass(degree, rep)
    target = cls.coordinates()

    gens = (_products_with(a1, a2.degree + a3.degree - 1, left=True)
            + _products_with(a3, a1.degree + a2.degree - 1, left=False))
    if not indeterminacy:
        local = {I for I, _ in target}
        gens = [{k: c for k, c in g.items() if k[0] in local} for g in gens]
        gens = [g for g in gens if g]
    basis: list[Coords] = []
    for g in gens:
        if not in_span(g, basis):
            basis.append(g)
    nonvanishing = not in_span(target, basis)

    decomposable = None
    if nonvanishing and decomposability:
        summands = sorted({I for I, _ in target} | {I for g in basis for I, _ in g})
        decomposable = in_span(target, basis + decomposables_near(K, degree, summands))
    return MasseyReport(True, degree, cls, basis, nonvanishing, decomposable, (x, y))


def degree3_classes(K: SimplicialComplex) -> list[CohomologyClass]:
    return cohomology_basis(K, 3)
