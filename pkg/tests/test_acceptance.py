"""Acceptance criteria 1 to 9, each at tolerance zero with its time budget.

Every test prints one ``criterion N: PASS/FAIL`` line, visible in ``pytest -v``
output without ``-s``.
"""

import random
import time
from math import comb, factorial

import pytest

from strickland_lab import checks
from strickland_lab.abelian import FiniteAbelianGroup, IntegerMatrix, smith_normal_form
from strickland_lab.wreath import (
    ClassFunction,
    WreathProduct,
    YoungSubgroup,
    induce,
    inner_product,
    restrict,
)

PRIMES_TO_101 = [q for q in range(2, 102) if all(q % d for d in range(2, q))]
GROUPS_H1 = ["1", "2", "3", "4", "2,2"]


@pytest.fixture
def report(capsys):
    def emit(number, title, failures, elapsed, budget):
        ok = not failures and elapsed < budget
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            print(f"\ncriterion {number}: {status}  {title}  ({elapsed:.2f}s, budget {budget}s)", end="")
            for f in failures[:5]:
                print(f"\n    failed: {f}", end="")
        assert not failures, failures[:5]
        assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"

    return emit


def run_all(points):
    start = time.perf_counter()
    failures = []
    for name, params in points:
        r = checks.run_check(name, params)
        if not r.passed:
            failures.append((name, params, r.lhs, r.rhs))
    return failures, time.perf_counter() - start


def test_criterion_1_rank_identity(report):
    points = [("rank", dict(p=p, k=k, d=d)) for p in (2, 3) for k in (1, 2) for d in (1, 2, 3)]
    failures, elapsed = run_all(points)
    spot = {(2, 1, 2): 3, (2, 2, 2): 7}
    for (p, k, d), v in spot.items():
        r = checks.run_check("rank", dict(p=p, k=k, d=d))
        if r.lhs != v:
            failures.append(("spot", (p, k, d), r.lhs, v))
    report(1, "rank identity", failures, elapsed, 10)


def test_criterion_2_centralizers(report):
    points = [
        ("centralizers", dict(A=A, h=h, n=n))
        for A, order in (("1", 1), ("2", 2), ("3", 3))
        for h in (0, 1, 2)
        for n in range(1, 8 // order + 1)
    ]
    failures, elapsed = run_all(points)
    report(2, "centralizer orders", failures, elapsed, 60)


def test_criterion_3_transfer(report):
    points = [("transfer", dict(h=h, n=n)) for h in (1, 2) for n in range(1, 7)]
    failures, elapsed = run_all(points)
    report(3, "transfer survival", failures, elapsed, 30)


def test_criterion_4_height1(report):
    points = []
    for A in GROUPS_H1:
        order = checks.parse_group(A).order
        for n in (2, 3, 4):
            if order**n * factorial(n) <= 10**6:
                points += [("height0", dict(A=A, n=n)), ("norm", dict(A=A, n=n))]
    assert len(points) == 30
    failures, elapsed = run_all(points)
    report(4, "height-1 lemmas", failures, elapsed, 300)


def test_criterion_5_diagram(report):
    points = [("diagram", dict(A=A, h=h, l=l)) for A in ("2", "3", "4", "2,2") for h in (1, 2) for l in (2, 3, 4)]
    failures, elapsed = run_all(points)
    # every surjection was visited: Z^1 -> Z/2+Z/2 has none, the rest do
    rows = {(p["A"], p["h"], p["l"]): checks.run_check("diagram", p).rhs for _, p in points}
    if rows[("2,2", 1, 2)] != 0 or rows[("2,2", 2, 2)] != 6 * 4:
        failures.append(("surjection count", rows[("2,2", 1, 2)], rows[("2,2", 2, 2)]))
    report(5, "diagram commutativity", failures, elapsed, 60)


def test_criterion_6_fibers(report):
    points = [("fibers", dict(m=m, h=h)) for m in range(1, 9) for h in (0, 1, 2)]
    failures, elapsed = run_all(points)
    report(6, "fiber counts", failures, elapsed, 60)


def test_criterion_7_appendix(report):
    grid = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)]
    points = [("appendix", dict(p=p, n=n)) for p, n in grid]
    points += [("stirling", dict(p=p)) for p in PRIMES_TO_101]
    failures, elapsed = run_all(points)
    report(7, "appendix suite", failures, elapsed, 30)


def test_criterion_8_components(report):
    points = []
    for p in [q for q in range(2, 65) if all(q % d for d in range(2, q))]:
        for k in range(1, 7):
            for h in range(1, 7):
                if p ** (h * k) <= 64:
                    points += [("components", dict(m=m, k=k, h=h, p=p)) for m in range(1, 7)]
    failures, elapsed = run_all(points)
    if checks.run_check("components", dict(m=6, k=1, h=6, p=2)).rhs != comb(69, 6):
        failures.append("binomial")
    report(8, "component counts", failures, elapsed, 5)


def test_criterion_9_infrastructure(report):
    rng = random.Random(20240101)
    start = time.perf_counter()
    failures = []
    for trial in range(1000):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        M = IntegerMatrix([[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        S, U, V = smith_normal_form(M)
        d = [S[i, i] for i in range(min(r, c))]
        nz = [x for x in d if x]
        ok = (
            (U @ M @ V).tolist() == S.tolist()
            and abs(U.det()) == 1
            and abs(V.det()) == 1
            and all(S[i, j] == 0 for i in range(r) for j in range(c) if i != j)
            and d[: len(nz)] == nz
            and all(x > 0 for x in nz)
            and all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
        )
        if not ok:
            failures.append(("snf", M.tolist()))
    for A in GROUPS_H1:
        G0 = checks.parse_group(A)
        for n in (2, 3, 4):
            if G0.order**n * factorial(n) > 10**6:
                continue
            G = WreathProduct(G0, n)
            for _ in range(20):
                l = rng.randint(1, n - 1)
                H = YoungSubgroup(G0, l, n - l)
                f = ClassFunction.from_vector(H, [rng.randint(-5, 5) for _ in H.labels])
                g = ClassFunction.from_vector(G, [rng.randint(-5, 5) for _ in G.labels])
                if inner_product(induce(f, G), g) != inner_product(f, restrict(g, H)):
                    failures.append(("frobenius", A, n, l))
    elapsed = time.perf_counter() - start
    report(9, "SNF identity and Frobenius reciprocity", failures, elapsed, 60)


def test_default_grid_covers_acceptance_points():
    from strickland_lab.cli import load_grid

    tasks, _ = load_grid(None)
    shipped = {(n, tuple(sorted(p.items()))) for n, p in tasks}
    needed = [("rank", dict(p=p, k=k, d=d)) for p in (2, 3) for k in (1, 2) for d in (1, 2, 3)]
    needed += [("transfer", dict(h=h, n=n)) for h in (1, 2) for n in range(1, 7)]
    needed += [("diagram", dict(A=A, h=h, l=l)) for A in ("2", "3", "4", "2,2") for h in (1, 2) for l in (2, 3, 4)]
    needed += [("fibers", dict(m=m, h=h)) for m in range(1, 9) for h in (0, 1, 2)]
    needed += [("stirling", dict(p=p)) for p in PRIMES_TO_101]
    for name, params in needed:
        assert (name, tuple(sorted(params.items()))) in shipped, (name, params)
