"""Named verification checks over single parameter points.

Every check takes keyword parameters and returns a :class:`CheckReport`;
``pass`` is ``lhs == rhs``.  Group parameters are strings of invariant
factors: ``"1"`` is the trivial group, ``"4"`` is Z/4, ``"2,2"`` is Z/2 + Z/2.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from . import actions, divisors, honda, wreath
from .abelian import FiniteAbelianGroup, cokernel, IntegerMatrix
from .perms import centralizer_order, is_transitive

__all__ = ["CheckReport", "CHECKS", "run_check", "parse_group", "surjections"]


@dataclass
class CheckReport:
    check: str
    params: dict[str, Any]
    lhs: Any
    rhs: Any
    passed: bool
    elapsed_ms: int = 0
    detail: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "elapsed_ms": self.elapsed_ms,
        }


def parse_group(spec: str | int | list) -> FiniteAbelianGroup:
    if isinstance(spec, int):
        orders = [spec]
    elif isinstance(spec, str):
        orders = [int(x) for x in spec.replace("x", ",").split(",") if x.strip()]
    else:
        orders = [int(x) for x in spec]
    if not orders or any(o < 1 for o in orders):
        raise ValueError(f"bad group {spec!r}: orders must be positive integers")
    return FiniteAbelianGroup.from_orders(orders)


def surjections(A: FiniteAbelianGroup, h: int) -> list[tuple[tuple[int, ...], ...]]:
    """All ``h``-tuples of elements generating ``A``."""
    rels = [tuple(r) for r in A.relations()]
    out = []
    for imgs in itertools.product(A.elements(), repeat=h):
        rows = list(imgs) + rels
        if not rows or cokernel(IntegerMatrix(rows, cols=A.rank)).torsion.order == 1:
            out.append(imgs)
    return out


def check_rank(p: int, k: int, d: int) -> CheckReport:
    r = divisors.rank_identity_check(p, k, d)
    return CheckReport(
        "rank",
        {"p": p, "k": k, "d": d},
        r.lhs,
        r.rhs,
        r.ok,
        detail={"bijection_ok": r.bijection_ok, "oracle": r.oracle},
    )


def check_height0(A: str, n: int) -> CheckReport:
    G = parse_group(A)
    r = wreath.verify_height0(G, n)
    # dimension bookkeeping: span = #classes - |A|
    lhs = [r.span_dim, r.span_dim]
    rhs = [r.vanishing_dim, r.num_classes - G.order]
    return CheckReport("height0", {"A": A, "n": n}, lhs, rhs, r.ok and lhs == rhs)


def check_norm(A: str, n: int) -> CheckReport:
    G = parse_group(A)
    ok = wreath.norm_pullback_bijectivity(G, n)
    return CheckReport("norm", {"A": A, "n": n}, int(ok), 1, ok)


def check_diagram(A: str, h: int, l: int) -> CheckReport:
    G = parse_group(A)
    total = good = 0
    for alpha in surjections(G, h):
        rep = wreath.diagram_check(alpha, G, l)
        total += len(rep.rows)
        good += sum(r.ok for r in rep.rows)
    return CheckReport("diagram", {"A": A, "h": h, "l": l}, good, total, good == total)


def check_centralizers(A: str, h: int, n: int) -> CheckReport:
    """Centralizer orders from the type multiset against brute force in ``Sigma_(n|A|)``."""
    G = parse_group(A)
    classes = actions.enumerate_action_classes(G, h, n)
    diag = actions.diagonal_permutations(G, n)
    lhs, rhs, roundtrip = [], [], True
    for c in classes:
        gens = actions.to_permutations(c)
        lhs.append(actions.centralizer_shape(c).order)
        rhs.append(centralizer_order(gens + diag, n * G.order))
        roundtrip = roundtrip and actions.classify_permutations(gens, G, n) == c
    return CheckReport(
        "centralizers", {"A": A, "h": h, "n": n}, lhs, rhs, lhs == rhs and roundtrip,
        detail={"classes": len(classes), "roundtrip": roundtrip},
    )


def check_transfer(h: int, n: int) -> CheckReport:
    """``survives_transfer`` against exhaustive Young-subgroup search, with ``A`` trivial.

    Also requires both to agree with transitivity of the tuple.
    """
    one = FiniteAbelianGroup()
    lhs, rhs, trans = [], [], []
    for c in actions.enumerate_action_classes(one, h, n):
        gens = actions.to_permutations(c) or [tuple(range(n))]
        lhs.append(int(actions.survives_transfer(c)))
        rhs.append(int(not actions.young_factorizations(gens, n)))
        trans.append(int(is_transitive(gens, n)))
    return CheckReport("transfer", {"h": h, "n": n}, lhs, rhs, lhs == rhs == trans)


def check_appendix(p: int, n: int) -> CheckReport:
    """``[i](x) = ix`` for ``0 <= i < p``, ``[p](x) = 0``, Wilson/Stirling and the subring rank."""
    M = p**n
    x = honda.TruncPoly.monomial(p, M, 1)
    i_ok = sum(honda.i_series(i, p, n) == x * i for i in range(p))
    p_zero = int(not honda.i_series(p, p, n))
    chern = honda.regular_rep_chern(p, n)
    expected_scalars = [0] * (p - 2) + [p - 1]
    lhs = [honda.chern_subring_rank(p, n), i_ok, p_zero, list(chern.scalars)]
    rhs = [(p**n - 1) // (p - 1), p, 1, expected_scalars]
    return CheckReport("appendix", {"p": p, "n": n}, lhs, rhs, lhs == rhs)


def check_stirling(p: int) -> CheckReport:
    r = honda.stirling_divisibility(p)
    lhs = [res for _, _, res in r.table]
    rhs = [0] * (p - 2) + [(p - 1) % p]
    return CheckReport("stirling", {"p": p}, lhs, rhs, r.ok and lhs == rhs)


def check_fibers(m: int, h: int) -> CheckReport:
    r = divisors.fiber_partition_check(m, h)
    lhs = [f.count for f in r.fibers] + [sum(f.count for f in r.fibers)]
    rhs = [f.expected for f in r.fibers] + [r.total]
    return CheckReport("fibers", {"m": m, "h": h}, lhs, rhs, r.ok and lhs == rhs)


ENUMERATION_BUDGET = 5_000


def check_components(m: int, k: int, h: int, p: int) -> CheckReport:
    """Listed labels against ``C(m + p^(hk) - 1, m)``.

    Above ``ENUMERATION_BUDGET`` the labels are counted by the multiplicity
    recursion instead, and only a prefix of the lazy stream is validated.
    """
    rhs = divisors.component_count(m, k, h, p)
    if rhs <= ENUMERATION_BUDGET:
        labels = divisors.enumerate_components(m, k, h, p)
        lhs, sample = len(labels), labels
    else:
        lhs = divisors.multiset_count(m, (p**k) ** h)
        sample = list(itertools.islice(divisors.iter_components(m, k, h, p), 1000))
    valid = len(set(sample)) == len(sample) and all(c.m == m for c in sample)
    return CheckReport(
        "components", {"m": m, "k": k, "h": h, "p": p}, lhs, rhs, lhs == rhs and valid,
        detail={"explicit": rhs <= ENUMERATION_BUDGET},
    )


CHECKS: dict[str, Callable[..., CheckReport]] = {
    "rank": check_rank,
    "height0": check_height0,
    "norm": check_norm,
    "diagram": check_diagram,
    "centralizers": check_centralizers,
    "transfer": check_transfer,
    "appendix": check_appendix,
    "stirling": check_stirling,
    "fibers": check_fibers,
    "components": check_components,
}


def run_check(name: str, params: dict[str, Any]) -> CheckReport:
    start = time.perf_counter()
    report = CHECKS[name](**params)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report
