import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strickland_lab.abelian import (
    FiniteAbelianGroup,
    IntegerMatrix,
    Subgroup,
    cokernel,
    dual_of_surjection,
    enumerate_subgroups,
    hermite_normal_form,
    pushout,
    smith_normal_form,
    subgroups_with_projection,
)
from strickland_lab.errors import NotSurjective


def matrices(max_dim=4, lo=-9, hi=9):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def check_smith(rows):
    M = IntegerMatrix(rows)
    S, U, V = smith_normal_form(M)
    assert (U @ M @ V).tolist() == S.tolist()
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    r, c = M.shape
    for i in range(r):
        for j in range(c):
            if i != j:
                assert S[i, j] == 0
    d = [S[i, i] for i in range(min(r, c))]
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert d[: len(nz)] == nz  # zeros last
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    return d


# --- Smith form ---------------------------------------------------------------


def test_smith_examples():
    assert check_smith([[2, 0], [0, 3]]) == [1, 6]
    assert check_smith([[1, 0], [0, 1]]) == [1, 1]
    dec = smith_normal_form([[2, 1]])
    assert dec.S.tolist() == [[1, 0]]


def test_smith_zero_and_degenerate():
    assert check_smith([[0, 0], [0, 0]]) == [0, 0]
    assert check_smith([[0]]) == [0]
    assert check_smith([[4, 6, 8]]) == [2]


@settings(max_examples=200, deadline=None)
@given(matrices(max_dim=4))
def test_smith_matches_determinantal_divisors(rows):
    assert check_smith(rows) == oracles.snf_diagonal(rows)


@settings(max_examples=200, deadline=None)
@given(matrices(max_dim=6))
def test_smith_identity_up_to_6x6(rows):
    check_smith(rows)


def test_det_bareiss_against_cofactor():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert IntegerMatrix(rows).det() == oracles._det(rows)


# --- Hermite form ---------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=3), st.randoms(use_true_random=False))
def test_hnf_is_a_lattice_invariant(rows, rnd):
    ncols = len(rows[0])
    # row operations by a random unimodular matrix do not change the lattice
    U = IntegerMatrix.identity(len(rows)).tolist()
    for _ in range(6):
        i, j = rnd.sample(range(len(rows)), 2) if len(rows) > 1 else (0, 0)
        if i != j:
            q = rnd.randint(-3, 3)
            U[i] = [a + q * b for a, b in zip(U[i], U[j])]
    mixed = (IntegerMatrix(U) @ IntegerMatrix(rows)).tolist()
    H = hermite_normal_form(rows, ncols)
    assert hermite_normal_form(mixed, ncols) == H
    assert hermite_normal_form(list(reversed(rows)), ncols) == H
    pivots = [next(j for j, x in enumerate(r) if x) for r in H]
    assert pivots == sorted(set(pivots))
    for k, (row, col) in enumerate(zip(H, pivots)):
        assert row[col] > 0
        assert all(0 <= H[i][col] < row[col] for i in range(k))


# --- groups and subgroups -------------------------------------------------------


def test_group_normalization():
    assert FiniteAbelianGroup.from_orders([2, 3]).invariant_factors == (6,)
    assert FiniteAbelianGroup.from_orders([2, 4]).invariant_factors == (4, 2)
    assert FiniteAbelianGroup.from_orders([1]).invariant_factors == ()
    with pytest.raises(ValueError):
        FiniteAbelianGroup((2, 4))
    G = FiniteAbelianGroup((4, 2))
    assert G.order == 8 and G.exponent == 4 and G.prime == 2
    assert FiniteAbelianGroup((6,)).prime is None


@pytest.mark.parametrize(
    "factors,order,count",
    [((2, 2), 2, 3), ((4, 4), 4, 7), ((8,), 8, 1)],
)
def test_enumerate_subgroups_examples(factors, order, count):
    assert len(enumerate_subgroups(FiniteAbelianGroup(factors), order)) == count


@pytest.mark.parametrize("factors", [(2, 2), (4, 2), (4, 4), (6, 2), (2, 2, 2), (9, 3), (12,), (8, 2)])
def test_enumerate_subgroups_against_closure(factors):
    G = FiniteAbelianGroup(factors)
    brute = oracles.all_subgroups(factors)
    for k in range(1, G.order + 1):
        ours = enumerate_subgroups(G, k)
        expected = {H for H in brute if len(H) == k}
        assert len(ours) == len(set(ours)) == len(expected)
        assert {frozenset(H.elements()) for H in ours} == expected
        for H in ours:
            assert H.order == k
            assert all(x in H for x in H.elements())


def test_klein_in_z4_squared():
    subs = enumerate_subgroups(FiniteAbelianGroup((4, 4)), 4)
    shapes = sorted(H.invariant_factors() for H in subs)
    assert shapes.count((4,)) == 6 and shapes.count((2, 2)) == 1


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from([(4,), (6,), (4, 2), (3, 3), (2, 2, 2)]),
    st.lists(st.lists(st.integers(0, 11), min_size=3, max_size=3), max_size=3),
)
def test_subgroup_generated_matches_closure(factors, raw):
    G = FiniteAbelianGroup(factors)
    gens = [G.reduce(g[: G.rank]) for g in raw]
    H = Subgroup.generated_by(G, gens)
    C = oracles.closure(factors, gens)
    assert set(H.elements()) == C
    assert H.order == len(C)
    profile = oracles.element_order_profile(H.invariant_factors() or (1,))
    sub_profile = {}
    for x in C:
        k = G.element_order(x)
        sub_profile[k] = sub_profile.get(k, 0) + 1
    assert profile == sub_profile
    for x in G.elements():
        assert (x in H) == (x in C)


# --- cokernels ------------------------------------------------------------------


def test_cokernel_examples():
    # Z/2 + Z modulo (1, -2), with the torsion relation written out
    assert cokernel([[2, 0], [1, -2]]).torsion.invariant_factors == (4,)
    ck = cokernel([], cols=2)
    assert ck.free_rank == 2 and ck.torsion.order == 1
    assert cokernel([[2, 0], [0, 2]]).torsion.invariant_factors == (2, 2)


@settings(max_examples=80, deadline=None)
@given(matrices(max_dim=3, lo=-6, hi=6))
def test_cokernel_against_coset_enumeration(rows):
    n = len(rows[0])
    if len(rows) < n:
        return
    D = abs(oracles._det(rows[:n]))
    if D == 0 or D > 60:
        return
    ck = cokernel(rows)
    assert ck.is_finite and D % ck.order == 0
    # D Z^n lies in the row lattice of the first n rows, so work inside (Z/D)^n
    orders = (D,) * n
    H = oracles.closure(orders, [tuple(x % D for x in r) for r in rows])
    expected = oracles.quotient_profile(orders, H)
    assert oracles.element_order_profile(ck.torsion.invariant_factors or (1,)) == expected


def test_cokernel_projection_is_a_homomorphism():
    ck = cokernel([[2, 0], [1, -2]])
    rng = random.Random(0)
    for _ in range(50):
        x = (rng.randint(-9, 9), rng.randint(-9, 9))
        y = (rng.randint(-9, 9), rng.randint(-9, 9))
        s = tuple(a + b for a, b in zip(x, y))
        assert ck.project(s) == ck.torsion.add(ck.project(x), ck.project(y))
    assert ck.project((2, 0)) == (0,) and ck.project((1, -2)) == (0,)
    assert ck.torsion.element_order(ck.project((0, 1))) == 4


# --- duals and pushouts -----------------------------------------------------------


def test_dual_examples():
    Z2, Z4 = FiniteAbelianGroup((2,)), FiniteAbelianGroup((4,))
    D = dual_of_surjection([(1,)], Z2)
    assert set(D.elements()) == {(0,), (1,)}
    D = dual_of_surjection([(1,), (1,)], Z2)
    assert set(D.elements()) == {(0, 0), (1, 1)}
    D = dual_of_surjection([(1,), (2,)], Z4)
    assert D == Subgroup.generated_by(FiniteAbelianGroup((4, 4)), [(1, 2)])


def test_dual_rejects_non_surjection():
    with pytest.raises(NotSurjective):
        dual_of_surjection([(2,)], FiniteAbelianGroup((4,)))
    with pytest.raises(ValueError):
        dual_of_surjection([(1,)], FiniteAbelianGroup((2,)), exponent=3)


def _characters(factors):
    """All characters of ``Z/n_1 + ...`` as fraction-valued functions."""
    from fractions import Fraction

    for vals in itertools.product(*(range(n) for n in factors)):
        yield lambda x, v=vals: sum(Fraction(a * c, n) for a, c, n in zip(x, v, factors)) % 1


@pytest.mark.parametrize(
    "factors,images",
    [((2,), [(1,), (0,)]), ((4,), [(1,), (2,)]), ((2, 2), [(1, 0), (0, 1), (1, 1)]), ((6,), [(2,), (3,)]), ((4, 2), [(1, 1), (0, 1)])],
)
def test_dual_against_character_enumeration(factors, images):
    from fractions import Fraction

    A = FiniteAbelianGroup(factors)
    D = dual_of_surjection(images, A)
    expected = {tuple(chi(x) for x in images) for chi in _characters(factors)}
    assert D.to_fractions() == frozenset(expected)
    assert D.order == A.order
    # realizing at a larger exponent gives the same points of (Q/Z)^h
    assert dual_of_surjection(images, A, exponent=2 * A.exponent).to_fractions() == D.to_fractions()
    assert all(all(isinstance(c, Fraction) for c in pt) for pt in D.to_fractions())


def test_pushout_examples():
    Z2 = FiniteAbelianGroup((2,))
    assert pushout([(1,)], Z2, [(2,)], 1).torsion.invariant_factors == (4,)
    assert pushout([(0,)], Z2, [(2,)], 1).torsion.invariant_factors == (2, 2)
    for l in (2, 3, 5):
        assert pushout([()], FiniteAbelianGroup(), [(l,)], 1).torsion.invariant_factors == (l,)


# --- projections ------------------------------------------------------------------


def test_projection_examples():
    base1 = FiniteAbelianGroup.homocyclic(2, 1)
    zero = Subgroup.trivial(base1)
    whole = Subgroup.whole(base1)
    assert len(subgroups_with_projection(2, 1, zero)) == 1
    assert len(subgroups_with_projection(2, 1, whole)) == 2
    assert len(subgroups_with_projection(4, 1, whole)) == 2


@pytest.mark.parametrize("m,h", [(2, 1), (4, 1), (6, 1), (2, 2), (3, 1)])
def test_projection_against_brute_force(m, h):
    orders = (m,) * (1 + h)
    brute = oracles.subgroups_of_order(orders, m)
    base = FiniteAbelianGroup.homocyclic(m, h)
    for k in range(1, m + 1):
        if m % k:
            continue
        for A_star in enumerate_subgroups(base, k):
            target = A_star.to_fractions()
            expected = [
                H for H in brute
                if oracles.as_fractions((m,) * h, {x[1:] for x in H}) == target
            ]
            got = subgroups_with_projection(m, h, A_star)
            assert len(got) == len(expected) == k
