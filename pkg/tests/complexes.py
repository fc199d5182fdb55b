"""Complex generators for the test suite: isomorphism classes and random samples."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from momentangle.simplicial import SimplicialComplex, from_facets


def _perm_mask(p, m: int) -> int:
    out = 0
    for i, j in enumerate(p):
        if m >> i & 1:
            out |= 1 << j
    return out


@lru_cache(maxsize=None)
def _tables(n: int) -> np.ndarray:
    """``T[p, byte, value]``: image of a byte of the face-indicator word under permutation ``p``."""
    size = 1 << n
    nbytes = (size + 7) // 8
    perms = list(permutations(range(n)))
    T = np.zeros((len(perms), nbytes, 256), dtype=np.uint64)
    for a, p in enumerate(perms):
        image = [_perm_mask(p, m) for m in range(size)]
        for b in range(nbytes):
            for v in range(256):
                w = 0
                for bit in range(8):
                    if v >> bit & 1 and 8 * b + bit < size:
                        w |= 1 << image[8 * b + bit]
                T[a, b, v] = w
    return T


def _canonical(words: np.ndarray, n: int) -> np.ndarray:
    T = _tables(n)
    best = None
    for a in range(T.shape[0]):
        img = np.zeros_like(words)
        for b in range(T.shape[1]):
            img |= T[a, b][(words >> np.uint64(8 * b)) & np.uint64(255)]
        best = img if best is None else np.minimum(best, img)
    return best


def isomorphism_classes(n: int) -> list[int]:
    """One face-indicator word per isomorphism class of down-sets of the subsets of ``[n]``.

    Bit ``m`` of a word is set when the face with mask ``m`` is present.
    Generated layer by layer, adding one face whose boundary is present.
    """
    size = 1 << n
    layer = {0}
    out = [0]
    while layer:
        cands = set()
        for w in layer:
            for m in range(size):
                if w >> m & 1:
                    continue
                if all(w >> (m ^ (1 << i)) & 1 for i in range(n) if m >> i & 1):
                    cands.add(w | (1 << m))
        if not cands:
            break
        arr = np.array(sorted(cands), dtype=np.uint64)
        layer = {int(x) for x in np.unique(_canonical(arr, n))}
        out.extend(sorted(layer))
    return out


def word_to_complex(word: int, n: int) -> SimplicialComplex | None:
    """The complex with these faces, or ``None`` if some vertex is missing."""
    faces = [m for m in range(1 << n) if word >> m & 1]
    if not all(word >> (1 << i) & 1 for i in range(n)):
        return None
    return from_facets(n, [[i + 1 for i in range(n) if m >> i & 1] for m in faces])


def proper_complexes(n: int) -> list[SimplicialComplex]:
    """Isomorphism representatives on exactly ``[n]``: every vertex used, not the full simplex."""
    out = []
    for w in isomorphism_classes(n):
        K = word_to_complex(w, n)
        if K is not None and not K.is_full_simplex:
            out.append(K)
    return out


def random_complex(n: int, rng: random.Random, p_edge: float = 0.6, p_fill: float = 0.5) -> SimplicialComplex:
    """Random graph on ``[n]`` with each clique filled with probability ``p_fill``, smallest first."""
    faces = {(v,) for v in range(1, n + 1)}
    for e in combinations(range(1, n + 1), 2):
        if rng.random() < p_edge:
            faces.add(e)
    for k in range(3, n + 1):
        for c in combinations(range(1, n + 1), k):
            if all(f in faces for f in combinations(c, k - 1)) and rng.random() < p_fill:
                faces.add(c)
    return from_facets(n, faces)
