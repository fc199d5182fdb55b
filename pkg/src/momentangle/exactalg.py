"""Exact rational linear algebra and truncated power series.

Everything here works over :class:`fractions.Fraction`; there is no
floating point anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Vector = list[Fraction]

DEFAULT_ORDER = 13


class SeriesError(ArithmeticError):
    pass


def to_rational(x) -> Fraction:
    """Exact value of an int, Fraction or ``"p/q"`` string; floats are refused."""
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _matrix(rows: Iterable[Sequence], ncols: int | None) -> tuple[list[list[Fraction]], int]:
    M = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        if not M:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(M[0])
    for r in M:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
    return M, ncols


def rref(rows: Iterable[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivot rule: in each column, among the remaining rows pick the entry with
    the smallest absolute numerator (earliest row on ties).
    """
    M, ncols = _matrix(rows, ncols)
    pivots: list[int] = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        best = None
        for i in range(r, nrows):
            x = M[i][c]
            if x and (best is None or abs(x.numerator) < abs(M[best][c].numerator)):
                best = i
        if best is None:
            continue
        M[r], M[best] = M[best], M[r]
        row = M[r]
        inv = 1 / row[c]
        if inv != 1:
            row = M[r] = [x * inv for x in row]
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f:
                    Mi = M[i]
                    M[i] = [a - f * b for a, b in zip(Mi, row)]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows: Iterable[Sequence], ncols: int | None = None) -> int:
    """Exact rank by sparse forward elimination (rows kept as ``{column: value}``)."""
    pivots: dict[int, dict[int, Fraction]] = {}
    for r in rows:
        if ncols is not None and len(r) != ncols:
            raise ValueError("ragged matrix")
        row = {j: Fraction(x) for j, x in enumerate(r) if x}
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                pivots[c] = row
                break
            f = row[c] / p[c]
            for j, x in p.items():
                y = row.get(j, 0) - f * x
                if y:
                    row[j] = y
                else:
                    row.pop(j, None)
    return len(pivots)


def rank_kernel(rows: Iterable[Sequence], ncols: int | None = None) -> tuple[int, list[Vector]]:
    """Exact rank and a kernel basis (one vector per free column)."""
    rows = list(rows)
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(rows[0])
    R, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    kernel = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[free]
        kernel.append(v)
    return len(pivots), kernel


def solve_preimage(rows: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> Vector | None:
    """Some ``x`` with ``M x = b``, or ``None`` when the system is inconsistent.

    Free variables are set to zero in the reduced echelon form.
    """
    rows = list(rows)
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(rows[0])
    if len(b) != len(rows):
        raise ValueError("right-hand side has the wrong length")
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def mat_vec(rows: Sequence[Sequence], v: Sequence) -> Vector:
    return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in rows]


# ---------------------------------------------------------------------------
# truncated power series


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in ``t`` known modulo ``t**(order + 1)``."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs[: self.order + 1])
        c = c + (Fraction(0),) * (self.order + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_poly(cls, coeffs: Iterable, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls(order, tuple(coeffs))

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls(order, (1,))

    def __getitem__(self, d: int) -> Fraction:
        return self.coeffs[d] if 0 <= d <= self.order else Fraction(0)

    def _check(self, other: "TruncatedSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        N = self._check(other)
        return TruncatedSeries(N, tuple(self[i] + other[i] for i in range(N + 1)))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            c = Fraction(other)
            return TruncatedSeries(self.order, tuple(c * x for x in self.coeffs))
        N = self._check(other)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (N + 1)
        for i in range(N + 1):
            ai = a[i]
            if ai:
                for j in range(N + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return TruncatedSeries(N, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise SeriesError("cannot invert a series with zero constant term")
        N = self.order
        out = [Fraction(0)] * (N + 1)
        out[0] = 1 / c0
        for k in range(1, N + 1):
            s = sum((self.coeffs[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
            out[k] = -s / c0
        return TruncatedSeries(N, tuple(out))

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self * other.inverse()

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncatedSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(order, self.coeffs[: order + 1])

    def __str__(self) -> str:
        terms = []
        for d, c in enumerate(self.coeffs):
            if c:
                mon = "" if d == 0 else ("t" if d == 1 else f"t^{d}")
                coef = str(c) if (not mon or abs(c) != 1) else ("-" if c < 0 else "")
                terms.append(f"{coef}{mon}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"{body} + O(t^{self.order + 1})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    return a.inverse()


def series_pow_factor(d: int, e: int, sign: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``(1 + sign * t**d) ** e`` for any integer ``e``, via the binomial series."""
    if d < 1:
        raise ValueError("d must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = [Fraction(0)] * (order + 1)
    k = 0
    while k * d <= order:
        # generalized binomial coefficient C(e, k)
        if e >= 0:
            c = comb(e, k)
        else:
            c = (-1) ** k * comb(-e + k - 1, k)
        out[k * d] = Fraction(c * sign ** k)
        k += 1
    return TruncatedSeries(order, tuple(out))


# ---------------------------------------------------------------------------
# bivariate polynomials and rational functions in (s, t)

Monomial = tuple[int, int]

SUBSTITUTIONS = {
    ("t", "1"): lambda a, b: (1, a),
    ("t", "-t"): lambda a, b: ((-1) ** b, a + b),
    ("-t", "t"): lambda a, b: ((-1) ** a, a + b),
}


def _clean(terms: Mapping[Monomial, object]) -> dict[Monomial, Fraction]:
    return {k: Fraction(v) for k, v in terms.items() if v}


def poly_mul(a: Mapping[Monomial, Fraction], b: Mapping[Monomial, Fraction]) -> dict[Monomial, Fraction]:
    out: dict[Monomial, Fraction] = {}
    for (s1, t1), c1 in a.items():
        for (s2, t2), c2 in b.items():
            k = (s1 + s2, t1 + t2)
            out[k] = out.get(k, 0) + c1 * c2
    return _clean(out)


def poly_pow(a: Mapping[Monomial, Fraction], e: int) -> dict[Monomial, Fraction]:
    out: dict[Monomial, Fraction] = {(0, 0): Fraction(1)}
    for _ in range(e):
        out = poly_mul(out, a)
    return out


@dataclass(frozen=True)
class SparseBivariate:
    """Rational function ``num(s, t) / den(s, t)`` with sparse numerator and denominator.

    Terms map ``(exp_s, exp_t)`` to a coefficient; a missing denominator means 1.
    """

    num: dict[Monomial, Fraction]
    den: dict[Monomial, Fraction] = field(default_factory=lambda: {(0, 0): Fraction(1)})

    def __post_init__(self):
        object.__setattr__(self, "num", _clean(self.num))
        object.__setattr__(self, "den", _clean(self.den))
        if not self.den:
            raise ZeroDivisionError("zero denominator")

    def __hash__(self):
        return hash((tuple(sorted(self.num.items())), tuple(sorted(self.den.items()))))

    @classmethod
    def from_factors(cls, num_factors: Iterable[tuple[Mapping, int]],
                     den_factors: Iterable[tuple[Mapping, int]] = ()) -> "SparseBivariate":
        """Build from ``[(poly, exponent), ...]`` lists; polynomials are expanded."""
        num: dict[Monomial, Fraction] = {(0, 0): Fraction(1)}
        for p, e in num_factors:
            num = poly_mul(num, poly_pow(_clean(p), e))
        den: dict[Monomial, Fraction] = {(0, 0): Fraction(1)}
        for p, e in den_factors:
            den = poly_mul(den, poly_pow(_clean(p), e))
        return cls(num, den)

    @property
    def is_polynomial(self) -> bool:
        return self.den == {(0, 0): 1}

    def value_at_origin(self) -> Fraction:
        d0 = self.den.get((0, 0), Fraction(0))
        if not d0:
            raise ZeroDivisionError("denominator vanishes at the origin")
        return self.num.get((0, 0), Fraction(0)) / d0

    def substitute(self, assignment: tuple[str, str], order: int = DEFAULT_ORDER) -> TruncatedSeries:
        return bivariate_substitute(self, assignment, order)

    def to_dict(self) -> dict:
        def enc(p):
            return [[a, b, str(c)] for (a, b), c in sorted(p.items())]
        return {"num": enc(self.num), "den": enc(self.den)}

    @classmethod
    def from_dict(cls, data: dict) -> "SparseBivariate":
        def dec(rows):
            out: dict[Monomial, Fraction] = {}
            for es, et, c in rows:
                if not (isinstance(es, int) and isinstance(et, int)) or es < 0 or et < 0:
                    raise ValueError(f"bad exponent pair {es!r}, {et!r}")
                out[(es, et)] = out.get((es, et), 0) + to_rational(c)
            return out
        if "num" not in data:
            raise ValueError("bivariate JSON requires 'num'")
        den = dec(data["den"]) if data.get("den") else {(0, 0): Fraction(1)}
        return cls(dec(data["num"]), den)


def _poly_substitute(p: Mapping[Monomial, Fraction], rule, order: int) -> TruncatedSeries:
    out = [Fraction(0)] * (order + 1)
    for (a, b), c in p.items():
        sign, d = rule(a, b)
        if d <= order:
            out[d] += sign * c
    return TruncatedSeries(order, tuple(out))


def bivariate_substitute(F: SparseBivariate, assignment: tuple[str, str],
                         order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Expand ``F`` after substituting ``(s, t) -> assignment`` up to ``t**order``.

    Supported assignments: ``("t", "1")``, ``("t", "-t")`` and ``("-t", "t")``.
    The denominator is expanded and then long-divided.
    """
    rule = SUBSTITUTIONS.get(tuple(assignment))
    if rule is None:
        raise ValueError(f"unsupported substitution {assignment!r}")
    num = _poly_substitute(F.num, rule, order)
    den = _poly_substitute(F.den, rule, order)
    if den[0] == 0:
        raise SeriesError("denominator vanishes at t = 0 after substitution")
    return num * den.inverse()
