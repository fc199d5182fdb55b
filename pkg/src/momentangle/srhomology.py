"""Reduced simplicial cohomology and the bigraded Betti numbers of Z_K.

Bigrading: an entry ``(q, p)`` of a :class:`BettiTable` is the dimension
of the part of ``H^q(Z_K)`` in homological degree ``p``.  A full
subcomplex ``K_I`` with ``dim H~^{s-1}(K_I) = h`` contributes ``h`` to
``(|I| + s, |I| - s)``; the internal degree ``p + q`` is always even.

Cochain sign convention (used everywhere, including the DGA): for
``f`` in ``C~^k`` the coboundary is ``(df)(tau) = (-1)^(k+1) sum_i
(-1)^i f(tau - tau_i)`` with vertices of ``tau`` in increasing order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb

from . import exactalg
from .exactalg import SparseBivariate, TruncatedSeries
from .simplicial import SimplicialComplex, alexander_dual, vertices_of

Table = dict[tuple[int, int], int]


def coboundary_sign(face_mask: int, v_bit: int) -> int:
    """Coefficient of ``chi_{face + v}`` in ``d chi_face``."""
    below = (face_mask & (v_bit - 1)).bit_count()
    return -1 if (face_mask.bit_count() + below) & 1 else 1


# ---------------------------------------------------------------------------
# fast exact Betti numbers of a set of faces (rank only)


def _reduced_betti(faces: list[int]) -> list[int]:
    """Reduced Betti numbers ``[b_{-1}, b_0, ...]`` of the complex with these face masks.

    Exact over the rationals: sparse integer elimination of the boundary
    maps with the clearing shortcut (faces that are pivots of the boundary
    of the next dimension up are skipped).  ``faces`` must contain ``0``.
    """
    by_size: list[list[int]] = []
    for f in faces:
        k = f.bit_count()
        while len(by_size) <= k:
            by_size.append([])
        by_size[k].append(f)
    top = len(by_size) - 1
    for g in by_size:
        g.sort()
    ranks = [0] * (top + 2)
    cleared: set[int] = set()
    for k in range(top, 0, -1):
        index = {f: i for i, f in enumerate(by_size[k - 1])}
        pivots: dict[int, dict[int, int]] = {}
        new_cleared: set[int] = set()
        for f in by_size[k]:
            if f in cleared:
                continue
            row: dict[int, int] = {}
            rest = f
            sign = 1
            while rest:
                low = rest & -rest
                rest ^= low
                row[index[f ^ low]] = sign
                sign = -sign
            while row:
                lo = max(row)
                p = pivots.get(lo)
                if p is None:
                    pivots[lo] = row
                    new_cleared.add(by_size[k - 1][lo])
                    break
                c, pc = row[lo], p[lo]
                if pc == 1 or pc == -1:
                    m = c * pc
                    for j, x in p.items():
                        y = row.get(j, 0) - m * x
                        if y:
                            row[j] = y
                        else:
                            row.pop(j, None)
                else:
                    new = {}
                    for j in row.keys() | p.keys():
                        y = pc * row.get(j, 0) - c * p.get(j, 0)
                        if y:
                            new[j] = y
                    row = new
        ranks[k] = len(pivots)
        cleared = new_cleared
    return [len(by_size[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1)]


def reduced_betti_masks(faces: list[int]) -> dict[int, int]:
    """``{i: dim H~^i}`` (nonzero entries only) for a face list containing 0."""
    return {k - 1: b for k, b in enumerate(_reduced_betti(faces)) if b}


# ---------------------------------------------------------------------------
# cochain complexes with explicit bases (exact rationals)


@dataclass
class ReducedCochainComplex:
    """Reduced cochains of a complex given by face masks.

    ``basis[k]`` lists the faces of dimension ``k - 1`` (so ``basis[0]`` is
    the empty face) in increasing vertex-tuple order.
    """

    basis: list[list[int]]

    @classmethod
    def from_masks(cls, faces) -> "ReducedCochainComplex":
        by_size: list[list[int]] = []
        for f in faces:
            k = f.bit_count()
            while len(by_size) <= k:
                by_size.append([])
            by_size[k].append(f)
        return cls([sorted(g, key=vertices_of) for g in by_size])

    @cached_property
    def index(self) -> list[dict[int, int]]:
        return [{f: i for i, f in enumerate(g)} for g in self.basis]

    def size(self, k: int) -> int:
        return len(self.basis[k]) if 0 <= k < len(self.basis) else 0

    @cached_property
    def _coboundaries(self) -> dict[int, list[list[Fraction]]]:
        return {}

    def coboundary(self, k: int) -> list[list[Fraction]]:
        """Matrix of ``d: C(k) -> C(k + 1)`` (sizes = faces with k, k+1 vertices)."""
        cache = self._coboundaries
        if k not in cache:
            rows = [[Fraction(0)] * self.size(k) for _ in range(self.size(k + 1))]
            if self.size(k) and self.size(k + 1):
                src = self.index[k]
                for r, tau in enumerate(self.basis[k + 1]):
                    rest = tau
                    while rest:
                        low = rest & -rest
                        rest ^= low
                        sigma = tau ^ low
                        rows[r][src[sigma]] = Fraction(coboundary_sign(sigma, low))
            cache[k] = rows
        return cache[k]

    def apply(self, k: int, vec) -> list[Fraction]:
        return exactalg.mat_vec(self.coboundary(k), vec) if self.size(k + 1) else []

    def cohomology(self, k: int) -> "CohomologyGroup":
        return CohomologyGroup(self, k)


class CohomologyGroup:
    """``H~`` of a :class:`ReducedCochainComplex` at faces with ``k`` vertices.

    Holds a cocycle basis, a coboundary spanning set and a chosen
    complement basis representing the cohomology classes.
    """

    def __init__(self, cx: ReducedCochainComplex, k: int):
        self.cx = cx
        self.k = k
        dim_c = cx.size(k)
        if dim_c == 0:
            self.cocycles, self.boundaries, self.classes = [], [], []
            return
        if cx.size(k + 1):
            _, self.cocycles = exactalg.rank_kernel(cx.coboundary(k), dim_c)
        else:
            self.cocycles = [[Fraction(int(i == j)) for j in range(dim_c)] for i in range(dim_c)]
        if k >= 1 and cx.size(k - 1):
            M = cx.coboundary(k - 1)
            cols = [[M[r][c] for r in range(dim_c)] for c in range(cx.size(k - 1))]
        else:
            cols = []
        # columns [coboundaries | cocycles]; cocycle pivots give the class basis
        full = cols + self.cocycles
        rows = [[v[r] for v in full] for r in range(dim_c)]
        _, piv = exactalg.rref(rows, len(full))
        self.boundaries = [cols[p] for p in piv if p < len(cols)]
        self.classes = [full[p] for p in piv if p >= len(cols)]
        self._solve_cols = self.boundaries + self.classes

    @property
    def dim(self) -> int:
        return len(self.classes)

    def coordinates(self, vec) -> list[Fraction] | None:
        """Class coordinates of a cocycle, ``None`` if ``vec`` is not a cocycle."""
        if not self.classes:
            if self.cx.size(self.k + 1) and any(self.cx.apply(self.k, vec)):
                return None
            return []
        n = len(vec)
        rows = [[v[r] for v in self._solve_cols] for r in range(n)]
        sol = exactalg.solve_preimage(rows, list(vec), len(self._solve_cols))
        if sol is None:
            return None
        return sol[len(self.boundaries):]

    def preimage(self, vec) -> list[Fraction] | None:
        """Some cochain ``x`` one dimension down with ``d x = vec``, or ``None``."""
        if self.k == 0 or not self.cx.size(self.k - 1):
            return None if any(vec) else []
        return exactalg.solve_preimage(self.cx.coboundary(self.k - 1), list(vec), self.cx.size(self.k - 1))


@dataclass
class ReducedCohomology:
    """Reduced cohomology of a complex in every degree ``i >= -1``."""

    dims: dict[int, int]
    groups: dict[int, CohomologyGroup] = field(repr=False)
    cochains: ReducedCochainComplex = field(repr=False)

    def cocycle_basis(self, i: int):
        return self.groups[i].cocycles

    def coboundary_basis(self, i: int):
        return self.groups[i].boundaries

    def class_basis(self, i: int):
        return self.groups[i].classes


def reduced_cohomology(K: SimplicialComplex) -> ReducedCohomology:
    cx = ReducedCochainComplex.from_masks(K.face_masks)
    groups = {k - 1: cx.cohomology(k) for k in range(len(cx.basis))}
    return ReducedCohomology({i: g.dim for i, g in groups.items()}, groups, cx)


# ---------------------------------------------------------------------------
# Betti tables


@dataclass(frozen=True)
class BettiTable:
    """Bigraded Betti numbers ``(q, p) -> dim`` of ``H*(Z_K)``."""

    n: int
    entries: dict[tuple[int, int], int]
    dim_zk: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", {k: v for k, v in sorted(self.entries.items()) if v})

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, tuple(self.entries.items())))

    @property
    def max_q(self) -> int:
        return max(q for q, _ in self.entries)

    @property
    def max_p(self) -> int:
        return max(p for _, p in self.entries)

    def betti_numbers(self) -> list[int]:
        out = [0] * (self.max_q + 1)
        for (q, _), v in self.entries.items():
            out[q] += v
        return out

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def to_dict(self) -> dict:
        return {"n": self.n, "dim_zk": self.dim_zk,
                "entries": [[q, p, v] for (q, p), v in sorted(self.entries.items())]}

    @classmethod
    def from_dict(cls, data: dict) -> "BettiTable":
        return cls(data["n"], {(q, p): v for q, p, v in data["entries"]}, data.get("dim_zk"))

    def render(self) -> str:
        return render_table(self)


def _dim_zk(K: SimplicialComplex) -> int | None:
    from .simplicial import verify_sphere_candidate

    if K.vertex_mask != K.ground_mask or K.is_full_simplex:
        return None
    return K.n + K.dim + 1 if verify_sphere_candidate(K).passes else None


def subsets_in_order(n: int):
    """All subsets of ``[n]`` as masks, by popcount then lexicographically."""
    from itertools import combinations

    for k in range(n + 1):
        for c in combinations(range(n), k):
            m = 0
            for v in c:
                m |= 1 << v
            yield m


def _hochster_chunk(args) -> Table:
    faces, subsets = args
    table: Table = {}
    face_set = set(faces)
    for imask in subsets:
        size = imask.bit_count()
        if imask and imask in face_set:
            continue  # K_I is a simplex
        sub = [f for f in faces if not f & ~imask]
        for i, b in enumerate(_reduced_betti(sub)):
            if b:
                s = i
                key = (size + s, size - s)
                table[key] = table.get(key, 0) + b
    return table


def _merge(tables) -> Table:
    out: Table = {}
    for t in tables:
        for k, v in t.items():
            out[k] = out.get(k, 0) + v
    return out


def hochster_betti(K: SimplicialComplex, jobs: int | None = None,
                   with_dim: bool = True) -> BettiTable:
    """Bigraded Betti numbers by summing ``H~^*(K_I)`` over all ``I ⊆ [n]``.

    ``jobs`` > 1 spreads subset chunks over worker processes; the integer
    reduction makes the result independent of scheduling.
    """
    faces = sorted(K.face_masks)
    subsets = list(subsets_in_order(K.n))
    jobs = jobs or os.cpu_count() or 1
    if jobs > 1 and len(subsets) >= 1024:
        step = -(-len(subsets) // (4 * jobs))
        chunks = [(faces, subsets[i:i + step]) for i in range(0, len(subsets), step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            table = _merge(pool.map(_hochster_chunk, chunks))
    else:
        table = _hochster_chunk((faces, subsets))
    return BettiTable(K.n, table, _dim_zk(K) if with_dim else None)


def betti_numbers(K: SimplicialComplex, jobs: int | None = None) -> list[int]:
    return hochster_betti(K, jobs, with_dim=False).betti_numbers()


def _link(faces: frozenset[int], sigma: int) -> list[int]:
    return [t for t in faces if not t & sigma and (t | sigma) in faces]


def _reduced_homology_dims(faces: list[int]) -> dict[int, int]:
    """Reduced homology via exact Gaussian elimination of boundary matrices."""
    by_size: list[list[int]] = []
    for f in faces:
        k = f.bit_count()
        while len(by_size) <= k:
            by_size.append([])
        by_size[k].append(f)
    for g in by_size:
        g.sort()
    ranks = [0] * (len(by_size) + 1)
    for k in range(1, len(by_size)):
        index = {f: i for i, f in enumerate(by_size[k - 1])}
        rows = []
        for f in by_size[k]:
            row = [0] * len(by_size[k - 1])
            sign = 1
            rest = f
            while rest:
                low = rest & -rest
                rest ^= low
                row[index[f ^ low]] = sign
                sign = -sign
            rows.append(row)
        if rows and by_size[k - 1]:
            ranks[k] = exactalg.rank(rows, len(by_size[k - 1]))
    dims = {}
    for k in range(len(by_size)):
        b = len(by_size[k]) - ranks[k] - ranks[k + 1]
        if b:
            dims[k - 1] = b
    return dims


def betti_via_dual(K: SimplicialComplex) -> BettiTable:
    """Betti table from links in the Alexander dual.

    The face ``sigma`` of the dual with complement ``I`` contributes
    ``dim H~_{|I|-s-2}(link sigma)`` to ``(|I| + s, |I| - s)``; the empty
    subset contributes the unit.
    """
    dual = alexander_dual(K)
    faces = dual.face_masks
    ground = K.ground_mask
    table: Table = {(0, 0): 1}
    for sigma in faces:
        size = (ground & ~sigma).bit_count()
        for i, h in _reduced_homology_dims(_link(faces, sigma)).items():
            s = size - 2 - i
            key = (size + s, size - s)
            table[key] = table.get(key, 0) + h
    return BettiTable(K.n, table)


# ---------------------------------------------------------------------------
# Hilbert series


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _binom_poly(sign: int, e: int) -> list[int]:
    """Coefficients of ``(1 + sign*t)^e``."""
    return [comb(e, k) * sign ** k for k in range(e + 1)]


@dataclass(frozen=True)
class HilbertSeries:
    """``h(S/I, t) = sum_i f_{i-1} t^i / (1 - t)^i`` for the degree-one grading."""

    f_vector: tuple[int, ...]

    @property
    def n_terms(self) -> int:
        return len(self.f_vector)

    def numerator(self) -> tuple[tuple[int, ...], int]:
        """``(coefficients of N(t), d)`` with ``h = N(t) / (1 - t)^d``."""
        d = self.n_terms - 1
        num = [0] * (d + 1)
        for i, f in enumerate(self.f_vector):
            term = _poly_mul([0] * i + [f], _binom_poly(-1, d - i))
            for k, c in enumerate(term):
                num[k] += c
        while len(num) > 1 and num[-1] == 0:
            num.pop()
        return tuple(num), d

    def simplified(self) -> tuple[tuple[int, ...], int]:
        """Cancel common factors ``(1 - t)`` between numerator and denominator."""
        num, d = self.numerator()
        num = list(num)
        while d and sum(num) == 0:
            # synthetic division by (1 - t)
            q = []
            acc = 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num, d = q, d - 1
        return tuple(num), d

    def expand(self, order: int, scale: int = 1, power: int = 1) -> TruncatedSeries:
        """Series of ``h(S/I, scale * t^power)`` up to ``t^order``."""
        num, d = self.numerator()
        N = [Fraction(0)] * (order + 1)
        for k, c in enumerate(num):
            if k * power <= order:
                N[k * power] += c * scale ** k
        den = [Fraction(0)] * (order + 1)
        for k, c in enumerate(_binom_poly(-1, d)):
            if k * power <= order:
                den[k * power] += c * scale ** k
        return TruncatedSeries(order, tuple(N)) / TruncatedSeries(order, tuple(den))

    def __str__(self) -> str:
        parts = []
        for i, f in enumerate(self.f_vector):
            if not f:
                continue
            if i == 0:
                parts.append(str(f))
                continue
            mon = "t" if i == 1 else f"t^{i}"
            den = "(1-t)" if i == 1 else f"(1-t)^{i}"
            coef = "" if f == 1 else str(f)
            parts.append(f"{coef}{mon}/{den}")
        return " + ".join(parts)


def hilbert_sr(K: SimplicialComplex) -> HilbertSeries:
    return HilbertSeries(K.f_vector)


def tor_hilbert(table: BettiTable) -> SparseBivariate:
    """``h(H, s, t) = sum table(q, p) t^p s^q``; keys are ``(exp_s, exp_t)``."""
    return SparseBivariate({(q, p): v for (q, p), v in table.entries.items()})


def weight_grading(table: BettiTable) -> dict[int, int]:
    """Dimensions of the weight-graded pieces, ``r = (p + q) / 2``."""
    out: dict[int, int] = {}
    for (q, p), v in table.entries.items():
        j = p + q
        if j % 2:
            raise ValueError(f"odd internal degree at (q={q}, p={p})")
        out[j // 2] = out.get(j // 2, 0) + v
    return dict(sorted(out.items()))


def render_table(table: BettiTable) -> str:
    """Text diagram: one row per ``q``, one column per ``p``, ``.`` for zero.

    Column width is the widest of the entries and the column total.
    """
    rows = table.max_q + 1
    cols = table.max_p + 1
    totals = [0] * cols
    for (q, p), v in table.entries.items():
        totals[p] += v
    widths = [max([len(str(totals[p]))] + [len(str(v)) for (q, pp), v in table.entries.items() if pp == p])
              for p in range(cols)]
    label = len(f"{rows - 1}:")
    lines = []
    for q in range(rows):
        cells = [(str(table[(q, p)]) if table[(q, p)] else ".").rjust(widths[p]) for p in range(cols)]
        lines.append(f"{q}:".rjust(label) + " " + " ".join(cells))
    return "\n".join(lines) + "\n"
