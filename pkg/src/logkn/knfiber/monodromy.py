"""Monodromy of a semistable degeneration as a product of Dehn twists."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm

from ..intlin import IntegerMatrix, smith_normal_form
from .surface import FiberSurface


def twist_matrix(f: FiberSurface) -> IntegerMatrix:
    """``T(x) = x + sum_e <x, c_e> c_e`` (right-handed twists, one per node)."""
    n = f.rank
    T = IntegerMatrix.identity(n)
    for _, c in f.node_classes:
        if not any(c):
            continue
        col = IntegerMatrix.from_columns([c], rows=n)
        Jc = f.J.apply(list(c))
        T = T + col @ IntegerMatrix.from_rows([Jc], cols=n)
    return T


def nilpotency_index(N: IntegerMatrix) -> int:
    """Least k >= 1 with ``N^k = 0`` (0 for an empty matrix)."""
    if N.rows == 0:
        return 0
    P = N
    for k in range(1, N.rows + 2):
        if P.is_zero():
            return k
        P = P @ N
    raise ValueError("matrix is not nilpotent")


def _series(M: IntegerMatrix, coeff) -> IntegerMatrix:
    """``sum_{k>=0} coeff(k) M^k`` for nilpotent ``M``, coefficients rational.

    Powers stay integral; the sum is taken over a common denominator and
    must divide out exactly.
    """
    n = M.rows
    k_max = nilpotency_index(M)
    coeffs = [Fraction(coeff(k)) for k in range(max(k_max, 1))]
    denom = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    acc = IntegerMatrix.zeros(n, n)
    P = IntegerMatrix.identity(n)
    for c in coeffs:
        if c:
            acc = acc + P.scale(int(c * denom))
        P = P @ M
    if any(x % denom for x in acc.entries):
        raise ArithmeticError("series does not have an integral sum")
    return IntegerMatrix(n, n, tuple(x // denom for x in acc.entries))


def exp_nilpotent(N: IntegerMatrix) -> IntegerMatrix:
    """``sum_k N^k / k!``; must come out integral."""
    return _series(N, lambda k: Fraction(1, factorial(k)))


def log_unipotent(T: IntegerMatrix) -> IntegerMatrix:
    """``sum_k (-1)^{k+1} (T - I)^k / k``; must come out integral."""
    M = T - IntegerMatrix.identity(T.rows)
    return _series(M, lambda k: Fraction((-1) ** (k + 1), k) if k else 0)


@dataclass(frozen=True)
class MonodromyReport:
    T: IntegerMatrix
    N: IntegerMatrix
    rank_n: int
    nilpotency: int
    weights: tuple[int, int, int]
    symplectic: bool
    exp_log_consistent: bool

    def to_json(self) -> dict:
        return {
            "T": self.T.to_rows(),
            "rankN": self.rank_n,
            "weights": list(self.weights),
            "nilpotency": self.nilpotency,
            "symplectic": self.symplectic,
            "exp_log_consistent": self.exp_log_consistent,
        }

    def violations(self, f: FiberSurface) -> list[str]:
        """Every failed invariant of the report, as messages."""
        out = []
        if not (self.N @ self.N).is_zero():
            out.append("N^2 != 0")
        if self.rank_n != f.first_betti_graph:
            out.append(f"rank N = {self.rank_n} but b1(graph) = {f.first_betti_graph}")
        if not self.symplectic:
            out.append("T does not preserve the intersection form")
        if not self.exp_log_consistent:
            out.append("exp(log T) != T")
        if self.weights[0] + self.weights[1] + self.weights[2] != 2 * f.genus:
            out.append("weight dimensions do not sum to 2 g_F")
        return out


@lru_cache(maxsize=256)
def monodromy(f: FiberSurface) -> MonodromyReport:
    n = f.rank
    T = twist_matrix(f)
    N = T - IntegerMatrix.identity(n)
    rank_n = smith_normal_form(N).rank if n else 0
    symplectic = T.T @ f.J @ T == f.J
    try:
        L = log_unipotent(T)
        consistent = L == N and exp_nilpotent(L) == T
    except (ArithmeticError, ValueError):
        consistent = False
    b1 = f.first_betti_graph
    sum_g = sum(v.genus for v in f.graph.vertices)
    return MonodromyReport(
        T=T,
        N=N,
        rank_n=rank_n,
        nilpotency=nilpotency_index(N),
        weights=(b1, 2 * sum_g, b1),
        symplectic=symplectic,
        exp_log_consistent=consistent,
    )
