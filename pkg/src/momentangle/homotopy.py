"""Ranks of the rational homotopy groups of Z_K from power-series identities.

The Hilbert series of the universal enveloping algebra of the homotopy Lie
algebra factors as

    F(t) = prod_r (1 + t^(2r-1))^phi_(2r) / (1 - t^(2r))^phi_(2r+1),

so the ranks ``phi_r`` can be read off one degree at a time once ``F`` is
known.  ``F`` comes either from the f-vector (flag complexes) or from an
externally supplied Poincaré series of ``Tor^{S/I}(k, k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactalg import (DEFAULT_ORDER, SeriesError, SparseBivariate, TruncatedSeries,
                       series_pow_factor)
from .simplicial import SimplicialComplex, is_flag
from .srhomology import BettiTable, hilbert_sr, hochster_betti, tor_hilbert


@dataclass
class RankTable:
    N: int
    phi: dict[int, int]
    pipeline: str = "series"
    trail: list[tuple[int, int]] = field(default_factory=list, repr=False)

    def __getitem__(self, r: int) -> int:
        return self.phi.get(r, 0)

    def row(self, start: int = 3) -> list[int]:
        return [self[r] for r in range(start, self.N + 1)]

    def to_dict(self) -> dict:
        return {"N": self.N, "phi": {str(r): v for r, v in sorted(self.phi.items())},
                "pipeline": self.pipeline}

    def render(self) -> str:
        rs = range(2, self.N + 1)
        width = [max(len(str(r)), len(str(self[r]))) for r in rs]
        head = " ".join(str(r).rjust(w) for r, w in zip(rs, width))
        vals = " ".join(str(self[r]).rjust(w) for r, w in zip(rs, width))
        return f"r:   {head}\nphi: {vals}\n"


def peel(F: TruncatedSeries, N: int = DEFAULT_ORDER, pipeline: str = "series") -> RankTable:
    """Solve the product formula for ``phi_2 .. phi_N``.

    At step ``d`` the remainder is ``1 + e t^d + ...``; ``e`` is
    ``phi_(d+1)`` and its factor is divided out.  A negative or fractional
    ``e`` means the input is not such a product and raises ``SeriesError``.
    """
    if F.order < N - 1:
        raise ValueError(f"series known to order {F.order}, need {N - 1}")
    if F[0] != 1:
        raise SeriesError(f"constant term must be 1, got {F[0]}")
    order = N - 1
    rem = F.truncate(order)
    phi: dict[int, int] = {}
    trail = []
    for d in range(1, N):
        e = rem[d]
        if e.denominator != 1 or e < 0:
            raise SeriesError(f"coefficient {e} of t^{d} is not a nonnegative integer")
        e = int(e)
        trail.append((d, e))
        phi[d + 1] = e
        if e:
            if d % 2:
                rem = rem * series_pow_factor(d, -e, 1, order)
            else:
                rem = rem * series_pow_factor(d, e, -1, order)
    return RankTable(N, phi, pipeline, trail)


def euler_polynomial(K: SimplicialComplex) -> list[int]:
    """Coefficients of ``(1+t)^n h(S/I, -t) = sum_i f_(i-1) (-t)^i (1+t)^(n-i)``."""
    from math import comb

    n = K.n
    out = [0] * (n + 1)
    for i, f in enumerate(K.f_vector):
        for k in range(n - i + 1):
            out[i + k] += f * (-1) ** i * comb(n - i, k)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def flag_series(K: SimplicialComplex, N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``((1+t)^n h(S/I, -t))^-1`` truncated at ``t^N``."""
    return TruncatedSeries.from_poly(euler_polynomial(K), N).inverse()


def ranks_flag(K: SimplicialComplex, N: int = DEFAULT_ORDER) -> RankTable:
    if not is_flag(K):
        raise ValueError("complex is not flag; supply a Poincaré series for Tor^{S/I}(k,k)")
    return peel(flag_series(K, N), N, "flag")


def general_series(n: int, P: SparseBivariate, N: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``(1+t)^-n P(t, 1)``: the enveloping-algebra series from a Tor Poincaré series."""
    if P.value_at_origin() != 1:
        raise ValueError(f"Poincaré series must be 1 at the origin, got {P.value_at_origin()}")
    return series_pow_factor(1, -n, 1, N) * P.substitute(("t", "1"), N)


def ranks_general(K: SimplicialComplex | int, P: SparseBivariate, N: int = DEFAULT_ORDER) -> RankTable:
    n = K if isinstance(K, int) else K.n
    return peel(general_series(n, P, N), N, "general")


def koszul_dual_poincare(K: SimplicialComplex) -> SparseBivariate:
    """Poincaré series of ``Tor^{S/I}(k, k)`` for flag ``K`` (the Koszul case).

    ``P(s, t) = (1+st)^n / sum_i f_(i-1) (-st)^i (1+st)^(n-i)``.
    """
    if not is_flag(K):
        raise ValueError("the Koszul formula needs a flag complex")
    den = {(k, k): Fraction(c) for k, c in enumerate(euler_polynomial(K)) if c}
    return SparseBivariate.from_factors([({(0, 0): 1, (1, 1): 1}, K.n)], [(den, 1)])


def euler_identity_check(K: SimplicialComplex, N: int = DEFAULT_ORDER,
                         table: BettiTable | None = None) -> bool:
    """``(1-t^2)^n h(S/I, t^2) == h(H, t, -t)`` up to ``t^N``."""
    table = table or hochster_betti(K, jobs=1, with_dim=False)
    lhs = series_pow_factor(2, K.n, -1, N) * hilbert_sr(K).expand(N, power=2)
    rhs = tor_hilbert(table).substitute(("t", "-t"), N)
    return lhs == rhs
