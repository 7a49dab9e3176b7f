"""Class functions on wreath products ``A wr Sigma_n`` for finite abelian ``A``.

Conjugacy classes are labelled by the multiset of pairs (cycle length,
cycle sum), where the cycle sum of ``(v, sigma)`` over a cycle of ``sigma``
is the sum of the entries of ``v`` on that cycle.  All class-function values
are exact rationals: the transfer spans below are spanned by inductions of
indicator functions, so nothing needs complex numbers.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, prod
from typing import Iterator, Mapping, NamedTuple, Sequence

from .abelian import FiniteAbelianGroup, dual_of_surjection, pushout, _check_images
from .actions import WreathElement
from .errors import ResourceBound
from .exact import rank, rref

__all__ = [
    "ConjClassLabel",
    "WreathProduct",
    "YoungSubgroup",
    "ClassFunction",
    "label_of",
    "conjugacy_classes",
    "canonical_representative",
    "induce",
    "restrict",
    "inner_product",
    "transfer_ideal_span",
    "verify_height0",
    "Height0Report",
    "norm_pullback_bijectivity",
    "diagram_check",
    "DiagramReport",
]

MAX_GROUP_ORDER = 10**6

Elt = tuple[int, ...]


@dataclass(frozen=True, order=True)
class ConjClassLabel:
    """Sorted multiset of ``(cycle length, cycle sum)`` pairs.

    Pairs are ordered by length descending, then by the residues of the sum.
    """

    pairs: tuple[tuple[int, Elt], ...]

    def __post_init__(self):
        pairs = tuple(sorted(((int(l), tuple(a)) for l, a in self.pairs), key=lambda la: (-la[0], la[1])))
        object.__setattr__(self, "pairs", pairs)

    @property
    def n(self) -> int:
        return sum(l for l, _ in self.pairs)

    @property
    def cycle_type(self) -> tuple[int, ...]:
        return tuple(l for l, _ in self.pairs)

    def norm(self, A: FiniteAbelianGroup) -> Elt:
        """Image under ``N_A``: the sum of all entries of the vector."""
        total = A.zero()
        for _, a in self.pairs:
            total = A.add(total, a)
        return total

    def __add__(self, other: ConjClassLabel) -> ConjClassLabel:
        return ConjClassLabel(self.pairs + other.pairs)

    def __str__(self) -> str:
        return "{" + ", ".join(f"({l},{''.join(map(str, a)) or '0'})" for l, a in self.pairs) + "}"


def label_of(w: WreathElement) -> ConjClassLabel:
    A = w.base
    seen = set()
    pairs = []
    for i in range(w.n):
        if i in seen:
            continue
        length, s, j = 0, A.zero(), i
        while j not in seen:
            seen.add(j)
            s = A.add(s, w.vector[j])
            j = w.perm[j]
            length += 1
        pairs.append((length, s))
    return ConjClassLabel(tuple(pairs))


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _centralizer_order(label: ConjClassLabel, A: FiniteAbelianGroup) -> int:
    return prod((l * A.order) ** m * factorial(m) for (l, _), m in Counter(label.pairs).items())


class WreathProduct:
    """``A wr Sigma_n`` with its conjugacy classes."""

    def __init__(self, A: FiniteAbelianGroup, n: int, *, max_order: int = MAX_GROUP_ORDER):
        self.A = A
        self.n = n
        if self.order > max_order:
            raise ResourceBound(f"|{A} wr S{n}| = {self.order} exceeds {max_order}")

    def __eq__(self, other):
        return isinstance(other, WreathProduct) and (self.A, self.n) == (other.A, other.n)

    def __hash__(self):
        return hash((self.A, self.n))

    def __repr__(self):
        return f"WreathProduct({self.A}, {self.n})"

    @property
    def order(self) -> int:
        return self.A.order**self.n * factorial(self.n)

    @cached_property
    def classes(self) -> tuple[tuple[ConjClassLabel, int], ...]:
        """``(label, class size)`` for every conjugacy class, labels sorted."""
        A, out = self.A, []
        elems = A.elements()
        for lam in _partitions(self.n):
            groups = Counter(lam)
            choices = [
                list(itertools.combinations_with_replacement(elems, m)) for _, m in sorted(groups.items())
            ]
            for pick in itertools.product(*choices):
                pairs = [(l, a) for (l, _), sums in zip(sorted(groups.items()), pick) for a in sums]
                lab = ConjClassLabel(tuple(pairs))
                out.append((lab, self.order // _centralizer_order(lab, A)))
        return tuple(sorted(out))

    @cached_property
    def labels(self) -> tuple[ConjClassLabel, ...]:
        return tuple(lab for lab, _ in self.classes)

    @cached_property
    def class_size(self) -> dict[ConjClassLabel, int]:
        return dict(self.classes)

    def elements(self) -> Iterator[WreathElement]:
        A = self.A
        for perm in itertools.permutations(range(self.n)):
            for vec in itertools.product(A.elements(), repeat=self.n):
                yield WreathElement(A, vec, perm)

    def cycle_classes(self) -> list[ConjClassLabel]:
        """Classes whose permutation part is an ``n``-cycle."""
        return [lab for lab in self.labels if lab.cycle_type == (self.n,)]


class YoungSubgroup:
    """``A wr (Sigma_l x Sigma_m)``; classes are pairs of labels."""

    def __init__(self, A: FiniteAbelianGroup, l: int, m: int):
        self.A = A
        self.parts = (l, m)
        self.left = WreathProduct(A, l)
        self.right = WreathProduct(A, m)

    def __eq__(self, other):
        return isinstance(other, YoungSubgroup) and (self.A, self.parts) == (other.A, other.parts)

    def __hash__(self):
        return hash((self.A, self.parts))

    def __repr__(self):
        return f"YoungSubgroup({self.A}, {self.parts})"

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def order(self) -> int:
        return self.left.order * self.right.order

    @cached_property
    def classes(self) -> tuple[tuple[tuple[ConjClassLabel, ConjClassLabel], int], ...]:
        return tuple(
            ((a, b), sa * sb) for (a, sa), (b, sb) in itertools.product(self.left.classes, self.right.classes)
        )

    @cached_property
    def labels(self):
        return tuple(lab for lab, _ in self.classes)

    @cached_property
    def class_size(self):
        return dict(self.classes)

    def elements(self) -> Iterator[WreathElement]:
        """Elements as members of ``A wr Sigma_n`` preserving ``{0..l-1}`` and ``{l..n-1}``."""
        l = self.parts[0]
        for x, y in itertools.product(self.left.elements(), self.right.elements()):
            yield WreathElement(self.A, x.vector + y.vector, x.perm + tuple(l + j for j in y.perm))

    def fuse(self, lab) -> ConjClassLabel:
        """The ambient class containing a subgroup class."""
        return lab[0] + lab[1]


@dataclass(frozen=True)
class ClassFunction:
    """Exact rational class function; missing labels mean value 0."""

    group: WreathProduct | YoungSubgroup
    values: Mapping = field(default_factory=dict)

    def __post_init__(self):
        labels = set(self.group.labels)
        vals = {k: Fraction(v) for k, v in self.values.items() if v != 0}
        unknown = set(vals) - labels
        if unknown:
            raise ValueError(f"labels not in {self.group}: {sorted(map(str, unknown))[:3]}")
        object.__setattr__(self, "values", vals)

    def __call__(self, label) -> Fraction:
        return self.values.get(label, Fraction(0))

    def vector(self) -> list[Fraction]:
        return [self(lab) for lab in self.group.labels]

    @classmethod
    def from_vector(cls, group, vec: Sequence) -> ClassFunction:
        return cls(group, dict(zip(group.labels, vec)))

    @classmethod
    def indicator(cls, group, label) -> ClassFunction:
        return cls(group, {label: 1})

    def __add__(self, other: ClassFunction) -> ClassFunction:
        return ClassFunction.from_vector(self.group, [x + y for x, y in zip(self.vector(), other.vector())])

    def __mul__(self, other: ClassFunction) -> ClassFunction:
        return ClassFunction(self.group, {k: v * other(k) for k, v in self.values.items()})

    def scale(self, c) -> ClassFunction:
        return ClassFunction(self.group, {k: Fraction(c) * v for k, v in self.values.items()})

    def is_zero(self) -> bool:
        return not self.values


def conjugacy_classes(A: FiniteAbelianGroup, n: int) -> list[tuple[ConjClassLabel, int]]:
    """``(label, class size)`` for every class of ``A wr Sigma_n``."""
    return list(WreathProduct(A, n).classes)


def canonical_representative(A: FiniteAbelianGroup, label: ConjClassLabel) -> WreathElement:
    """``[a_1, ..., a_r] wr sigma`` with consecutive non-increasing cycles of ``sigma``.

    Each cycle ``(s, s+1, ..., s+l-1)`` carries its cycle sum at position ``s``
    and zeros elsewhere.
    """
    n = label.n
    perm = list(range(n))
    vec = [A.zero()] * n
    start = 0
    for l, a in label.pairs:
        for j in range(l):
            perm[start + j] = start + (j + 1) % l
        vec[start] = A.reduce(a)
        start += l
    return WreathElement(A, tuple(vec), tuple(perm))


def induce(f: ClassFunction, G: WreathProduct | None = None) -> ClassFunction:
    """Induction from ``A wr (Sigma_l x Sigma_m)`` to ``A wr Sigma_(l+m)``.

    Uses ``Ind f(g) = |C_G(g)| * sum_c f(c) / |C_H(c)|`` over the subgroup
    classes ``c`` fusing into the class of ``g``.
    """
    H = f.group
    G = G or WreathProduct(H.A, H.n)
    out: dict[ConjClassLabel, Fraction] = {}
    for c, size in H.classes:
        val = f(c)
        if val:
            lab = H.fuse(c)
            out[lab] = out.get(lab, Fraction(0)) + val * Fraction(size, H.order)
    return ClassFunction(G, {lab: v * Fraction(G.order, G.class_size[lab]) for lab, v in out.items()})


def restrict(g: ClassFunction, H: YoungSubgroup) -> ClassFunction:
    return ClassFunction(H, {c: g(H.fuse(c)) for c in H.labels})


def inner_product(f: ClassFunction, g: ClassFunction) -> Fraction:
    """``sum over classes of (size/|G|) f g``; bilinear, no conjugation."""
    grp = f.group
    return sum((Fraction(s, grp.order) * f(c) * g(c) for c, s in grp.classes), Fraction(0))


def transfer_ideal_span(A: FiniteAbelianGroup, n: int) -> list[ClassFunction]:
    """Basis (reduced echelon over Q) of the span of all transfers from Young subgroups."""
    G = WreathProduct(A, n)
    vectors = []
    for m in range(1, n):
        H = YoungSubgroup(A, m, n - m)
        for c in H.labels:
            vectors.append(induce(ClassFunction.indicator(H, c), G).vector())
    basis, _ = rref(vectors)
    return [ClassFunction.from_vector(G, row) for row in basis]


class Height0Report(NamedTuple):
    ok: bool
    span_dim: int
    vanishing_dim: int
    num_classes: int
    surviving: tuple[ConjClassLabel, ...]


def verify_height0(A: FiniteAbelianGroup, n: int) -> Height0Report:
    """Compare the transfer span with the functions vanishing on the ``n``-cycle classes."""
    G = WreathProduct(A, n)
    span = transfer_ideal_span(A, n)
    cycles = G.cycle_classes()
    contained = all(f(lab) == 0 for f in span for lab in cycles)
    vanishing_dim = len(G.labels) - len(cycles)
    return Height0Report(
        contained and len(span) == vanishing_dim, len(span), vanishing_dim, len(G.labels), tuple(cycles)
    )


def norm_pullback_bijectivity(A: FiniteAbelianGroup, n: int) -> bool:
    """Is ``Cl(A) -> Cl(A wr Sigma_n) -> functions on the n-cycle classes`` bijective?

    The first map is pullback along ``N_A``, the second restriction.
    """
    G = WreathProduct(A, n)
    cycles = G.cycle_classes()
    matrix = [[int(lab.norm(A) == b) for lab in cycles] for b in A.elements()]
    return len(cycles) == A.order and rank(matrix) == A.order


class DiagramRow(NamedTuple):
    a: Elt
    B: FiniteAbelianGroup
    via_pushout: frozenset
    via_pullback: frozenset
    ok: bool


class DiagramReport(NamedTuple):
    ok: bool
    rows: tuple[DiagramRow, ...]


def _pushout_dual(a: Elt, images: Sequence[Elt], A: FiniteAbelianGroup, l: int):
    h = len(images)
    a_leg = [a] + list(images)
    g_leg = [tuple(l if (i, j) == (0, 0) else int(i == j) for j in range(1 + h)) for i in range(1 + h)]
    B = pushout(a_leg, A, g_leg, 1 + h)
    gens = [B.project(tuple(int(i == j) for j in range(1 + h + A.rank))) for i in range(1 + h)]
    return B.torsion, dual_of_surjection(gens, B.torsion).to_fractions()


def _pullback_dual(a: Elt, images: Sequence[Elt], A: FiniteAbelianGroup, l: int) -> frozenset:
    def pair(chi, x):
        return sum((Fraction(c * xi, n) for c, xi, n in zip(chi, x, A.invariant_factors)), Fraction(0)) % 1

    pts = set()
    for chi in A.elements():
        rest = tuple(pair(chi, y) for y in images)
        for t in range(l):
            pts.add((((pair(chi, a) + t) / l) % 1,) + rest)
    return frozenset(pts)


def diagram_check(images: Sequence[Sequence[int]], A: FiniteAbelianGroup, l: int) -> DiagramReport:
    """Check the two descriptions of ``B*`` for every ``a`` in ``A``.

    ``images[i]`` is ``alpha(e_i)`` for a surjection ``alpha: Z^h -> A``.
    Route one forms the pushout ``B`` of ``Z + Z^h <-(x l + id)- Z + Z^h -(a + alpha)-> A``
    and dualizes the surjection ``Z + Z^h -> B``.  Route two pulls the image
    of ``A* -> Q/Z + (Q/Z)^h``, ``chi -> (chi(a), chi o alpha)``, back along
    ``x l + id``.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    images = _check_images(images, A)
    rows = []
    for a in A.elements():
        B, left = _pushout_dual(a, images, A, l)
        right = _pullback_dual(a, images, A, l)
        rows.append(DiagramRow(a, B, left, right, left == right and B.order == l * A.order))
    return DiagramReport(all(r.ok for r in rows), tuple(rows))
