"""Truncated arithmetic with the height-n Honda formal group law over F_p.

Only the congruence

    x +_F y = x + y - sum_{0<j<p} (binom(p, j)/p) x^(j p^(n-1)) y^((p-j) p^(n-1))   mod x^(p^n)

is used.  Polynomials are stored sparsely (degree -> coefficient), which keeps
``[i](x) = i x`` and its powers cheap even for large truncations.

Chern classes are stored unsigned: ``c_i = e_i(1, ..., p-1) x^i`` with
``e_i`` the elementary symmetric polynomial.  The signs ``(-1)^i`` coming
from ``prod (1 - [i](x) t)`` are units and do not affect divisibility or
ranks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping, NamedTuple

__all__ = [
    "TruncPoly",
    "TruncPoly2",
    "ChernVector",
    "honda_sum",
    "i_series",
    "regular_rep_chern",
    "elementary_symmetric",
    "stirling_divisibility",
    "StirlingReport",
    "chern_subring_rank",
]

MAX_TRUNCATION = 2**20


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _check_prime(p: int) -> None:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")


def _clean(terms: Mapping[int, int], p: int, M: int) -> dict[int, int]:
    return {d: c % p for d, c in terms.items() if d < M and c % p}


@dataclass(frozen=True)
class TruncPoly:
    """Element of ``F_p[x]/(x^M)``."""

    p: int
    M: int
    terms: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "terms", _clean(self.terms, self.p, self.M))

    @classmethod
    def zero(cls, p: int, M: int) -> TruncPoly:
        return cls(p, M, {})

    @classmethod
    def one(cls, p: int, M: int) -> TruncPoly:
        return cls(p, M, {0: 1})

    @classmethod
    def monomial(cls, p: int, M: int, degree: int, coeff: int = 1) -> TruncPoly:
        return cls(p, M, {degree: coeff})

    @classmethod
    def from_dense(cls, p: int, coeffs) -> TruncPoly:
        return cls(p, len(coeffs), dict(enumerate(coeffs)))

    def dense(self) -> list[int]:
        """Coefficient list indexed by degree ``< M``."""
        out = [0] * self.M
        for d, c in self.terms.items():
            out[d] = c
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return (self.p, self.M) == (other.p, other.M) and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.M, tuple(sorted(self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: TruncPoly) -> None:
        if (self.p, self.M) != (other.p, other.M):
            raise ValueError("incompatible truncated rings")

    def __add__(self, other: TruncPoly) -> TruncPoly:
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return TruncPoly(self.p, self.M, out)

    def __neg__(self) -> TruncPoly:
        return TruncPoly(self.p, self.M, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: TruncPoly) -> TruncPoly:
        return self + (-other)

    def __mul__(self, other: TruncPoly | int) -> TruncPoly:
        if isinstance(other, int):
            return TruncPoly(self.p, self.M, {d: c * other for d, c in self.terms.items()})
        self._check(other)
        out: dict[int, int] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = d1 + d2
                if d < self.M:
                    out[d] = out.get(d, 0) + c1 * c2
        return TruncPoly(self.p, self.M, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncPoly:
        result, base = TruncPoly.one(self.p, self.M), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def truncate(self, M: int) -> TruncPoly:
        return TruncPoly(self.p, M, self.terms)

    @property
    def degree(self) -> int:
        return max(self.terms, default=-1)

    @property
    def valuation(self) -> int | None:
        return min(self.terms, default=None)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*x^{d}" if d else str(c) for d, c in sorted(self.terms.items()))


@dataclass(frozen=True)
class TruncPoly2:
    """Element of ``F_p[x, y]/(x^Mx, y^My)``; ``terms`` maps ``(i, j)`` to the coefficient of ``x^i y^j``."""

    p: int
    Mx: int
    My: int
    terms: Mapping[tuple[int, int], int]

    def __post_init__(self):
        clean = {
            (i, j): c % self.p
            for (i, j), c in self.terms.items()
            if i < self.Mx and j < self.My and c % self.p
        }
        object.__setattr__(self, "terms", clean)

    def __eq__(self, other):
        if not isinstance(other, TruncPoly2):
            return NotImplemented
        return (self.p, self.Mx, self.My, self.terms) == (other.p, other.Mx, other.My, other.terms)

    def __hash__(self):
        return hash((self.p, self.Mx, self.My, tuple(sorted(self.terms.items()))))

    def coefficient(self, i: int, j: int) -> int:
        return self.terms.get((i, j), 0)

    def swap(self) -> TruncPoly2:
        return TruncPoly2(self.p, self.My, self.Mx, {(j, i): c for (i, j), c in self.terms.items()})

    def __call__(self, X: TruncPoly, Y: TruncPoly) -> TruncPoly:
        """Substitute univariate truncated series for ``x`` and ``y``."""
        X._check(Y)
        powx: dict[int, TruncPoly] = {}
        powy: dict[int, TruncPoly] = {}
        out = TruncPoly.zero(X.p, X.M)
        for (i, j), c in self.terms.items():
            if i not in powx:
                powx[i] = X**i
            if j not in powy:
                powy[j] = Y**j
            out = out + (powx[i] * powy[j]) * c
        return out

    def __str__(self) -> str:
        return " + ".join(f"{c}*x^{i}*y^{j}" for (i, j), c in sorted(self.terms.items())) or "0"


def honda_sum(p: int, n: int) -> TruncPoly2:
    """``x +_F y`` truncated at ``p^n`` in each variable."""
    _check_prime(p)
    if n < 1:
        raise ValueError("height must be >= 1")
    M, q = p**n, p ** (n - 1)
    terms = {(1, 0): 1, (0, 1): 1}
    for j in range(1, p):
        terms[(j * q, (p - j) * q)] = -(comb(p, j) // p)
    return TruncPoly2(p, M, M, terms)


def i_series(i: int, p: int, n: int) -> TruncPoly:
    """``[i]_F(x)`` in ``F_p[x]/(x^(p^n))`` via ``[k+1](x) = F([k](x), x)``."""
    if i < 0:
        raise ValueError("i must be >= 0")
    F = honda_sum(p, n)
    M = p**n
    x = TruncPoly.monomial(p, M, 1)
    out = TruncPoly.zero(p, M)
    for _ in range(i):
        out = F(out, x)
    return out


@dataclass(frozen=True)
class ChernVector:
    """Unsigned Chern classes ``c_1, ..., c_(p-1)`` of the regular representation of ``Z/p``."""

    p: int
    n: int
    classes: tuple[TruncPoly, ...]

    def c(self, i: int) -> TruncPoly:
        if not 1 <= i < self.p:
            raise IndexError(f"c_{i} is not stored")
        return self.classes[i - 1]

    @property
    def scalars(self) -> tuple[int, ...]:
        """Coefficient of ``x^i`` in ``c_i``."""
        return tuple(c.terms.get(i, 0) for i, c in enumerate(self.classes, start=1))

    def nonzero(self) -> list[TruncPoly]:
        return [c for c in self.classes if c]


def regular_rep_chern(p: int, n: int) -> ChernVector:
    """Expand ``prod_{0<i<p} (1 - [i]_F(x) t)`` and read off ``c_i`` (sign dropped)."""
    _check_prime(p)
    M = p**n
    if M > MAX_TRUNCATION:
        raise ValueError(f"p^n = {M} exceeds {MAX_TRUNCATION}")
    # coefficients of powers of t
    poly = [TruncPoly.one(p, M)]
    x = TruncPoly.monomial(p, M, 1)
    F = honda_sum(p, n)
    ix = TruncPoly.zero(p, M)
    for _ in range(1, p):
        ix = F(ix, x)
        nxt = poly + [TruncPoly.zero(p, M)]
        for k, c in enumerate(poly):
            nxt[k + 1] = nxt[k + 1] - c * ix
        poly = nxt
    return ChernVector(p, n, tuple(poly[i] * (-1) ** i for i in range(1, p)))


def elementary_symmetric(values) -> list[int]:
    """``[e_0, e_1, ..., e_k]`` of the given integers, from ``prod (1 + v T)``."""
    coeffs = [1]
    for v in values:
        coeffs = [a + v * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return coeffs


class StirlingReport(NamedTuple):
    ok: bool
    p: int
    table: tuple[tuple[int, int, int], ...]  # (i, e_i(1..p-1), e_i mod p)


def stirling_divisibility(p: int) -> StirlingReport:
    """``p | e_i(1..p-1)`` for ``1 <= i <= p-2`` and ``e_(p-1) = (p-1)! = -1 mod p``."""
    _check_prime(p)
    if p > 101:
        raise ValueError("p must be <= 101")
    e = elementary_symmetric(range(1, p))
    table = tuple((i, e[i], e[i] % p) for i in range(1, p))
    ok = all(r == 0 for i, _, r in table if i <= p - 2) and table[-1][2] == (p - 1) % p
    return StirlingReport(ok, p, table)


def chern_subring_rank(p: int, n: int) -> int:
    """Dimension over F_p of the unital subalgebra of ``F_p[x]/(x^(p^n - 1))`` generated by the Chern classes."""
    _check_prime(p)
    N = p**n - 1
    if p**n > 2**16:
        raise ValueError("p^n must be <= 2^16")
    gens = [c.truncate(N) for c in regular_rep_chern(p, n).classes]
    gens = [g for g in gens if g]
    echelon: dict[int, TruncPoly] = {}

    def reduce(f: TruncPoly) -> TruncPoly:
        while f:
            lead = f.valuation
            if lead not in echelon:
                return f
            b = echelon[lead]
            f = f - b * (f.terms[lead] * pow(b.terms[lead], -1, p))
        return f

    queue = [TruncPoly.one(p, N)] if N > 0 else []
    while queue:
        f = reduce(queue.pop())
        if not f:
            continue
        echelon[f.valuation] = f
        queue.extend(f * g for g in gens)
    return len(echelon)
