"""Exact integer linear algebra and finite abelian groups.

Everything here works with Python integers, so there is no overflow and no
floating point.  Matrices act on row vectors: a relation matrix ``M`` with
``c`` columns presents the group ``Z^c / rowspace(M)``.

Elements of a finite abelian group ``Z/n_1 + ... + Z/n_r`` are tuples of
residues.  The same tuple is read as the point ``(c_1/n_1, ..., c_r/n_r)`` of
``(Q/Z)^r`` when a subgroup has to be compared as a set of fractions, which is
how subgroups of ``(Q_p/Z_p)^h`` are realized: a subgroup of order ``p^k`` has
exponent dividing ``p^k`` and therefore lives in ``(Z/p^k)^h``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, prod
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import NotSurjective

__all__ = [
    "IntegerMatrix",
    "SmithDecomposition",
    "smith_normal_form",
    "hermite_normal_form",
    "FiniteAbelianGroup",
    "Subgroup",
    "Cokernel",
    "cokernel",
    "dual_of_surjection",
    "enumerate_subgroups",
    "subgroups_with_projection",
    "pushout",
]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


class IntegerMatrix:
    """Immutable integer matrix, stored row-major as a tuple of tuples."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        ent = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            if not ent:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(ent[0])
        for row in ent:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.entries = ent
        self.rows = len(ent)
        self.cols = cols

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls(((1 if i == j else 0 for j in range(n)) for i in range(n)), cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(((0,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def diagonal(cls, diag: Sequence[int], cols: int | None = None) -> IntegerMatrix:
        cols = len(diag) if cols is None else cols
        return cls(((d if i == j else 0 for j in range(cols)) for i, d in enumerate(diag)), cols=cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntegerMatrix({[list(r) for r in self.entries]!r}, cols={self.cols})"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> IntegerMatrix:
        return IntegerMatrix(zip(*self.entries), cols=self.rows) if self.rows else IntegerMatrix.zeros(self.cols, 0)

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntegerMatrix(
            ((sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries),
            cols=other.cols,
        )

    def vecmul(self, v: Sequence[int]) -> tuple[int, ...]:
        """Row vector times matrix."""
        return tuple(sum(v[i] * self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


class SmithDecomposition(NamedTuple):
    """``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    S: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.shape)))


def smith_normal_form(M: IntegerMatrix | Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with transformation matrices.

    Pivots are chosen as the nonzero entry of least absolute value in the
    remaining block.  Diagonal entries are nonnegative, each divides the next,
    and zeros come last.
    """
    if not isinstance(M, IntegerMatrix):
        M = IntegerMatrix(M)
    r, c = M.shape
    a = M.tolist()
    U = IntegerMatrix.identity(r).tolist()
    V = IntegerMatrix.identity(c).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        if a[t][t] == 0:
            break
    return SmithDecomposition(IntegerMatrix(a, cols=c), IntegerMatrix(U, cols=r), IntegerMatrix(V, cols=c))


def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows: pivots strictly move right, are positive, and
    the entries above each pivot lie in ``[0, pivot)``.  The result depends
    only on the lattice, so it is used as the canonical key for subgroups.
    """
    a = [list(r) for r in rows if any(r)]
    k = 0
    for col in range(ncols):
        if k == len(a):
            break
        while True:
            nz = [i for i in range(k, len(a)) if a[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][col]))
            a[k], a[piv] = a[piv], a[k]
            done = True
            for i in range(k + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // a[k][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[k])]
                    done = done and a[i][col] == 0
            if done:
                break
        if k < len(a) and a[k][col]:
            if a[k][col] < 0:
                a[k] = [-x for x in a[k]]
            p = a[k][col]
            for i in range(k):
                q = a[i][col] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[k])]
            k += 1
        a = a[:k] + [r for r in a[k:] if any(r)]
    return tuple(tuple(r) for r in a[:k])


def _solve_hnf(hnf: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...] | None:
    """Integer coefficients ``x`` with ``x @ hnf == v``, or None."""
    v = list(v)
    coeffs = []
    for row in hnf:
        col = next(j for j, x in enumerate(row) if x)
        if any(v[:col]):
            return None
        q, rem = divmod(v[col], row[col])
        if rem:
            return None
        coeffs.append(q)
        v = [x - q * y for x, y in zip(v, row)]
    return tuple(coeffs) if not any(v) else None


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/n_1 + ... + Z/n_r`` in invariant-factor form (``n_{i+1} | n_i``)."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if any(x < 2 for x in f):
            raise ValueError(f"invariant factors must be >= 2, got {f}")
        if any(f[i] % f[i + 1] for i in range(len(f) - 1)):
            raise ValueError(f"invariant factors must form a divisibility chain, got {f}")

    @classmethod
    def cyclic(cls, n: int) -> FiniteAbelianGroup:
        return cls((n,) if n > 1 else ())

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> FiniteAbelianGroup:
        """Invariant form of a direct sum of cyclic groups of the given orders."""
        orders = [o for o in orders if o != 1]
        if not orders:
            return cls()
        d = smith_normal_form(IntegerMatrix.diagonal(orders)).diagonal
        return cls(tuple(x for x in reversed(d) if x > 1))

    @classmethod
    def homocyclic(cls, n: int, rank: int) -> FiniteAbelianGroup:
        """``(Z/n)^rank``."""
        return cls((n,) * rank if n > 1 else ())

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[0] if self.invariant_factors else 1

    @property
    def prime(self) -> int | None:
        """The prime ``p`` if this is a nontrivial p-group, else None."""
        if not self.invariant_factors:
            return None
        e = self.exponent
        p = next(q for q in range(2, e + 1) if e % q == 0)
        while e % p == 0:
            e //= p
        return p if e == 1 else None

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.invariant_factors))

    def neg(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(-a % n for a, n in zip(x, self.invariant_factors))

    def scale(self, k: int, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(k * a % n for a, n in zip(x, self.invariant_factors))

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(a % n for a, n in zip(x, self.invariant_factors))

    def elements(self) -> list[tuple[int, ...]]:
        """All elements, in lexicographic order of residues."""
        return list(itertools.product(*(range(n) for n in self.invariant_factors)))

    def element_order(self, x: Sequence[int]) -> int:
        return reduce(_lcm, (n // gcd(a, n) for a, n in zip(x, self.invariant_factors)), 1)

    def to_fractions(self, x: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, n) for a, n in zip(x, self.invariant_factors))

    def relations(self) -> IntegerMatrix:
        return IntegerMatrix.diagonal(self.invariant_factors, cols=self.rank)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z/{n}" for n in self.invariant_factors)


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``ambient``, stored as the Hermite form of its preimage lattice.

    The preimage of the subgroup in ``Z^r`` is a full-rank lattice containing
    ``diag(n_i)``; its Hermite normal form is unique, so two Subgroup values
    are equal exactly when they are the same subgroup.
    """

    ambient: FiniteAbelianGroup
    lattice: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def generated_by(cls, ambient: FiniteAbelianGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
        rows = [tuple(g) for g in gens] + [tuple(r) for r in ambient.relations()]
        return cls(ambient, hermite_normal_form(rows, ambient.rank))

    @classmethod
    def whole(cls, ambient: FiniteAbelianGroup) -> Subgroup:
        return cls(ambient, hermite_normal_form(IntegerMatrix.identity(ambient.rank), ambient.rank))

    @classmethod
    def trivial(cls, ambient: FiniteAbelianGroup) -> Subgroup:
        return cls.generated_by(ambient, [])

    @property
    def index(self) -> int:
        return prod(row[i] for i, row in enumerate(self.lattice))

    @property
    def order(self) -> int:
        return self.ambient.order // self.index

    @property
    def generators(self) -> tuple[tuple[int, ...], ...]:
        """Echelon generator rows reduced into the ambient group, zero rows dropped."""
        gens = (self.ambient.reduce(r) for r in self.lattice)
        return tuple(g for g in gens if any(g))

    def __contains__(self, x: Sequence[int]) -> bool:
        return _solve_hnf(self.lattice, x) is not None

    def elements(self) -> list[tuple[int, ...]]:
        G = self.ambient
        seen = {G.zero()}
        frontier = [G.zero()]
        gens = self.generators
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = G.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def to_fractions(self) -> frozenset[tuple[Fraction, ...]]:
        """The subgroup as a set of points of ``(Q/Z)^r``."""
        return frozenset(self.ambient.to_fractions(x) for x in self.elements())

    def invariant_factors(self) -> tuple[int, ...]:
        """Invariant factors of the subgroup as an abstract group."""
        coords = [_solve_hnf(self.lattice, r) for r in self.ambient.relations()]
        if not coords:
            return ()
        return cokernel(IntegerMatrix(coords, cols=len(self.lattice))).torsion.invariant_factors

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return all(g in other for g in self.generators)

    def __str__(self) -> str:
        return f"<{', '.join(map(str, self.generators)) or '0'}> <= {self.ambient}"


class Cokernel(NamedTuple):
    """``Z^c / rowspace(M)`` together with the quotient map.

    ``project(x)`` sends an integer vector to its coordinates in
    ``torsion + Z^free_rank`` (torsion coordinates first).
    """

    torsion: FiniteAbelianGroup
    free_rank: int
    basis_change: IntegerMatrix
    columns: tuple[int, ...]

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return self.torsion.order if self.is_finite else None

    def project(self, x: Sequence[int]) -> tuple[int, ...]:
        y = self.basis_change.vecmul(x)
        coords = tuple(y[j] for j in self.columns)
        t = self.torsion.rank
        return self.torsion.reduce(coords[:t]) + coords[t:]


def cokernel(M: IntegerMatrix | Sequence[Sequence[int]], cols: int | None = None) -> Cokernel:
    """Invariant factors and free rank of ``Z^cols / rowspace(M)``."""
    if not isinstance(M, IntegerMatrix):
        M = IntegerMatrix(M, cols=cols)
    dec = smith_normal_form(M)
    diag = list(dec.diagonal) + [0] * (M.cols - min(M.shape))
    torsion_cols = [j for j in reversed(range(M.cols)) if diag[j] > 1]
    free_cols = [j for j in range(M.cols) if diag[j] == 0]
    torsion = FiniteAbelianGroup(tuple(diag[j] for j in torsion_cols))
    return Cokernel(torsion, len(free_cols), dec.V, tuple(torsion_cols + free_cols))


def _check_images(images: Sequence[Sequence[int]], A: FiniteAbelianGroup) -> list[tuple[int, ...]]:
    images = [A.reduce(x) for x in images]
    rows = images + [tuple(r) for r in A.relations()]
    if rows and cokernel(IntegerMatrix(rows, cols=A.rank)).torsion.order != 1:
        raise NotSurjective(f"images {images} do not generate {A}")
    return images


def dual_of_surjection(
    images: Sequence[Sequence[int]], A: FiniteAbelianGroup, exponent: int | None = None
) -> Subgroup:
    """Image of the Pontryagin dual ``A* -> (Q/Z)^h`` of a surjection ``Z^h -> A``.

    ``images[i]`` is the image of the i-th basis vector.  A character
    ``chi`` of ``A`` pulls back to the point ``(chi(f(e_1)), ..., chi(f(e_h)))``;
    the result is realized in ``(Z/exponent)^h`` (default: the exponent of
    ``A``), where residue ``c`` stands for ``c/exponent``.
    """
    images = _check_images(images, A)
    h = len(images)
    e = A.exponent if exponent is None else exponent
    if e % A.exponent:
        raise ValueError(f"exponent {e} is not a multiple of exp(A) = {A.exponent}")
    ambient = FiniteAbelianGroup.homocyclic(e, h)
    # the coordinate characters e_j* (value 1/n_j on the j-th generator) generate A*
    gens = [
        tuple(images[i][j] * (e // n) for i in range(h))
        for j, n in enumerate(A.invariant_factors)
    ]
    return Subgroup.generated_by(ambient, gens)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def enumerate_subgroups(G: FiniteAbelianGroup, order: int) -> list[Subgroup]:
    """All subgroups of ``G`` of the given order, in canonical form.

    Candidates are Hermite forms whose pivots divide the invariant factors;
    a candidate is kept when its lattice contains the relations of ``G``.
    """
    if order < 1 or G.order % order:
        return []
    r = G.rank
    index = G.order // order
    found = []
    for diag in itertools.product(*(_divisors(n) for n in G.invariant_factors)):
        if prod(diag) != index:
            continue
        slots = [(i, j) for j in range(r) for i in range(j)]
        for vals in itertools.product(*(range(diag[j]) for _, j in slots)):
            rows = [[0] * r for _ in range(r)]
            for i in range(r):
                rows[i][i] = diag[i]
            for (i, j), v in zip(slots, vals):
                rows[i][j] = v
            lattice = tuple(tuple(row) for row in rows)
            if all(_solve_hnf(lattice, rel) is not None for rel in G.relations()):
                found.append(Subgroup(G, lattice))
    return found


def subgroups_with_projection(m: int, h: int, A_star: Subgroup) -> list[Subgroup]:
    """Subgroups ``H`` of order ``m`` of ``Q/Z + (Q/Z)^h`` with ``pr(H) = A_star``.

    ``pr`` forgets the first coordinate.  The ambient is realized as
    ``(Z/E)^(1+h)`` with ``E = lcm(m, exp(A_star))``.
    """
    if A_star.ambient.rank != h and A_star.ambient.order > 1:
        raise ValueError("A_star must live in a rank-h ambient group")
    if m % A_star.order:
        return []
    exp_a = FiniteAbelianGroup.from_orders(A_star.invariant_factors()).exponent
    E = _lcm(m, exp_a)
    ambient = FiniteAbelianGroup.homocyclic(E, 1 + h)
    target = A_star.to_fractions()
    base = FiniteAbelianGroup.homocyclic(E, h)
    out = []
    for H in enumerate_subgroups(ambient, m):
        proj = Subgroup.generated_by(base, (g[1:] for g in H.generators))
        if proj.order == A_star.order and proj.to_fractions() == target:
            out.append(H)
    return out


def pushout(
    a: Sequence[Sequence[int]], A: FiniteAbelianGroup, g: Sequence[Sequence[int]], s: int
) -> Cokernel:
    """Pushout of ``A <-a- Z^r -g-> Z^s``, i.e. ``(Z^s + A) / <(g(e_i), -a(e_i))>``.

    Row ``i`` of ``a`` (resp. ``g``) is the image of the i-th basis vector of
    ``Z^r``.  Coordinates of ``Z^s + A`` are the ``s`` free ones followed by
    those of ``A``.
    """
    if len(a) != len(g):
        raise ValueError("the two legs must have the same source rank")
    q = A.rank
    rels = [tuple(gi) + tuple(-x for x in ai) for gi, ai in zip(g, a)]
    rels += [(0,) * s + tuple(row) for row in A.relations()]
    return cokernel(IntegerMatrix(rels, cols=s + q))
