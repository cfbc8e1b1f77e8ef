"""Finite-coefficient comparisons between KN spaces and group cohomology.

Profinite homotopy types are only seen through their finite shadows here:
cohomology with ``Z/n`` coefficients and counts of ``Z/n``-torsors.  The
continuous cohomology of ``Zhat^r`` with finite coefficients equals the
cohomology of the discrete group ``Z^r``, which is what is computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod
from typing import Sequence

from .degen import DualGraph
from .intlin import (
    CellComplex,
    ChainComplex,
    IntegerMatrix,
    circle,
    cohomology_mod_n,
    mapping_torus_complex,
    product,
)
from .intlin.smith import divisibility_chain
from .knfiber import build_fiber, monodromy, plumbing_model, total_space_homology


@dataclass(frozen=True)
class CohomologyTable:
    """``H^i(-, Z/n)`` as cyclic orders per degree (each dividing ``n``).

    ``ranks[i]`` counts the full ``Z/n`` summands; for the log-point
    comparisons every summand is full and this is the rank over ``Z/n``.
    """

    modulus: int
    orders: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        object.__setattr__(self, "orders", tuple(tuple(o) for o in self.orders))

    @property
    def ranks(self) -> list[int]:
        return [sum(1 for o in deg if o == self.modulus) for deg in self.orders]

    def size(self, i: int) -> int:
        return prod(self.orders[i]) if i < len(self.orders) else 1

    def is_free(self) -> bool:
        return all(o == self.modulus for deg in self.orders for o in deg)

    def trimmed(self) -> CohomologyTable:
        orders = list(self.orders)
        while len(orders) > 1 and not orders[-1]:
            orders.pop()
        return CohomologyTable(self.modulus, tuple(orders))

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "ranks": self.ranks, "orders": [list(o) for o in self.orders]}


def compare_tables(a: CohomologyTable, b: CohomologyTable) -> bool:
    return a.modulus == b.modulus and a.trimmed().orders == b.trimmed().orders


def torus_complex(r: int) -> CellComplex:
    """``(S^1)^r`` with its product cell structure (a point for r = 0)."""
    X = CellComplex()
    X.add("p", 0)
    for i in range(r):
        X = product(X, circle(f"p{i}", f"c{i}"))
    return X


def torus_cohomology_mod_n(r: int, n: int) -> CohomologyTable:
    if r < 0:
        raise ValueError("r must be >= 0")
    return CohomologyTable(n, tuple(cohomology_mod_n(torus_complex(r).chain_complex(), n)))


def koszul_complex(r: int, action: Sequence[IntegerMatrix] | None = None) -> ChainComplex:
    """Chain complex whose ``Hom(-, Z/n)`` computes ``H^*(Z^r, M)``.

    ``M = (Z/n)^k`` with the i-th generator of ``Z^r`` acting by
    ``action[i]`` (integer lifts that must commute; identity by default).
    The cochain differential is
    ``(d phi)(i_0 < ... < i_p) = sum_j (-1)^j (A_{i_j} - 1) phi(... omit i_j ...)``,
    and its transpose is stored as the boundary of the chain complex.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if action is None:
        action = [IntegerMatrix.identity(1)] * r
    if len(action) != r:
        raise ValueError(f"need {r} action matrices, got {len(action)}")
    k = action[0].rows if action else 1
    for a, b in combinations(action, 2):
        if a @ b != b @ a:
            raise ValueError("action matrices do not commute")
    subsets = [list(combinations(range(r), p)) for p in range(r + 1)]
    index = [{S: i for i, S in enumerate(subs)} for subs in subsets]
    dims = tuple(len(subs) * k for subs in subsets)
    boundaries = []
    for p in range(r):
        # delta_p : C^p -> C^{p+1}, shape (dims[p+1], dims[p])
        rows = [[0] * dims[p] for _ in range(dims[p + 1])]
        for S in subsets[p + 1]:
            for j, i in enumerate(S):
                face = S[:j] + S[j + 1:]
                M = action[i] - IntegerMatrix.identity(k)
                sign = -1 if j % 2 else 1
                r0, c0 = index[p + 1][S] * k, index[p][face] * k
                for a in range(k):
                    for b in range(k):
                        rows[r0 + a][c0 + b] += sign * M[a, b]
        boundaries.append(IntegerMatrix.from_rows(rows, cols=dims[p]).T)
    return ChainComplex(dims, tuple(boundaries))


def group_cohomology_Zr_mod_n(r: int, n: int, action: Sequence[IntegerMatrix] | None = None) -> CohomologyTable:
    return CohomologyTable(n, tuple(cohomology_mod_n(koszul_complex(r, action), n)))


def compare_log_point(r: int, n: int) -> bool:
    """KN fiber of a rank-r log point against the Kummer-etale side ``B Zhat^r``."""
    return compare_tables(torus_cohomology_mod_n(r, n), group_cohomology_Zr_mod_n(r, n))


def universal_coefficients(groups, n: int) -> CohomologyTable:
    """``H^i(-, Z/n) = Hom(H_i, Z/n) + Ext(H_{i-1}, Z/n)`` from integral homology."""
    out = []
    for i in range(len(groups) + 1):
        orders = []
        if i < len(groups):
            orders += [n] * groups[i].rank + [gcd(t, n) for t in groups[i].torsion]
        if i >= 1:
            orders += [gcd(t, n) for t in groups[i - 1].torsion]
        out.append(tuple(divisibility_chain([o for o in orders if o > 1])))
    return CohomologyTable(n, tuple(out))


@dataclass(frozen=True)
class ConsistencyReport:
    graph: str
    modulus: int
    uct: CohomologyTable
    direct: CohomologyTable
    torsor_count: int
    expected_torsor_count: int

    @property
    def passed(self) -> bool:
        return compare_tables(self.uct, self.direct) and self.torsor_count == self.expected_torsor_count

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "modulus": self.modulus,
            "passed": self.passed,
            "uct": self.uct.to_json(),
            "direct": self.direct.to_json(),
            "torsors": {"H1": self.torsor_count, "Hom(H1(M), Z/n)": self.expected_torsor_count},
        }


def mapping_torus_mod_n_report(g: DualGraph, n: int) -> ConsistencyReport:
    f = build_fiber(g)
    H = total_space_homology(f, monodromy(f))
    uct = universal_coefficients(H.groups, n)
    _, C, tw = plumbing_model(g)
    direct = CohomologyTable(n, tuple(cohomology_mod_n(mapping_torus_complex(C, tw), n)))
    # Z/n-torsors over M up to iso: Hom(pi_1, Z/n) = Hom(H_1(M), Z/n)
    expected = n ** H[1].rank * prod(gcd(t, n) for t in H[1].torsion)
    return ConsistencyReport(g.name, n, uct, direct, direct.size(1), expected)


def mapping_torus_mod_n_consistency(g: DualGraph, n: int) -> bool:
    return mapping_torus_mod_n_report(g, n).passed
