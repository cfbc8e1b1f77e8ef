"""Smith normal form over Z and the lattice helpers built on it.

Two independent code paths live here:

* :func:`smith_normal_form` tracks the unimodular transforms and is used
  wherever explicit bases are needed (kernels, lattice coordinates).
* :func:`invariant_factors` is a sparse elimination without transforms; the
  homology computations only need the diagonal, and the chain complexes of
  fiber surfaces are large enough that tracking ``U`` and ``V`` hurts.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .matrix import IntegerMatrix


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal.

    ``Uinv`` is the inverse of ``U``, tracked alongside it.
    """

    U: IntegerMatrix
    S: IntegerMatrix
    V: IntegerMatrix
    Uinv: IntegerMatrix

    @property
    def diagonal(self) -> list[int]:
        return self.S.diagonal_entries()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]


def _nearest_quotient(a: int, p: int) -> int:
    """q with |a - q p| <= |p| / 2."""
    q, r = divmod(a, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def smith_normal_form(A: IntegerMatrix) -> SmithDecomposition:
    m, n = A.shape
    S = A.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        S[dst] = [a + k * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]
        # (I + k e_dst e_src^T)^-1 = I - k e_dst e_src^T acts on columns of U^-1
        for r in Ui:
            r[src] -= k * r[dst]

    def add_col(dst, src, k):
        for r in S:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = S[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i0, j0 = best
        swap_rows(t, i0)
        swap_cols(t, j0)

        while True:
            # bring the smallest entry of row t / column t to the pivot, then
            # reduce with nearest-integer quotients to keep entries small
            best = (abs(S[t][t]), None, None)
            for i in range(t + 1, m):
                if S[i][t] and abs(S[i][t]) < best[0]:
                    best = (abs(S[i][t]), i, None)
            for j in range(t + 1, n):
                if S[t][j] and abs(S[t][j]) < best[0]:
                    best = (abs(S[t][j]), None, j)
            if best[1] is not None:
                swap_rows(t, best[1])
            elif best[2] is not None:
                swap_cols(t, best[2])
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -_nearest_quotient(S[i][t], p))
                    dirty = dirty or bool(S[i][t])
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -_nearest_quotient(S[t][j], p))
                    dirty = dirty or bool(S[t][j])
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)

        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
            for r in Ui:
                r[t] = -r[t]

    return SmithDecomposition(
        U=IntegerMatrix.from_rows(U, cols=m),
        S=IntegerMatrix.from_rows(S, cols=n),
        V=IntegerMatrix.from_rows(V, cols=n),
        Uinv=IntegerMatrix.from_rows(Ui, cols=m),
    )


def divisibility_chain(diag: Sequence[int]) -> list[int]:
    """Rewrite nonzero diagonal entries as invariant factors d1 | d2 | ...

    Uses diag(a, b) ~ diag(gcd, lcm) pairwise; zeros are dropped.
    """
    d = sorted(abs(x) for x in diag if x)
    k = len(d)
    for i in range(k):
        for j in range(i + 1, k):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return d


def invariant_factors(A: IntegerMatrix | Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of ``A`` in divisibility order.

    The rank of ``A`` is the length of the result.
    """
    rows = A.to_rows() if isinstance(A, IntegerMatrix) else A
    work = [{j: x for j, x in enumerate(r) if x} for r in rows]
    work = [r for r in work if r]
    diag: list[int] = []
    while work:
        best = None
        for ri, r in enumerate(work):
            for c, x in r.items():
                ax = abs(x)
                if best is None or ax < best[0]:
                    best = (ax, ri, c)
                    if ax == 1:
                        break
            if best is not None and best[0] == 1:
                break
        _, p, c = best
        prow = work[p]
        a = prow[c]
        dirty = False
        for ri, r in enumerate(work):
            if ri == p or c not in r:
                continue
            q = r[c] // a
            for j, x in prow.items():
                v = r.get(j, 0) - q * x
                if v:
                    r[j] = v
                else:
                    r.pop(j, None)
            if c in r:
                dirty = True
        if not dirty:
            # column c now holds only the pivot; column ops touch row p alone
            reduced = {c: a}
            for j, x in prow.items():
                if j != c and x % a:
                    reduced[j] = x % a
            if len(reduced) == 1:
                diag.append(abs(a))
                work.pop(p)
            else:
                work[p] = reduced
        work = [r for r in work if r]
    return divisibility_chain(diag)


def matrix_rank(A: IntegerMatrix) -> int:
    return len(invariant_factors(A))


def kernel_basis(A: IntegerMatrix) -> IntegerMatrix:
    """Columns form a Z-basis of ``{x : A x = 0}`` (a saturated sublattice)."""
    snf = smith_normal_form(A)
    r = snf.rank
    n = A.cols
    return snf.V.submatrix(range(n), range(r, n))


class Lattice:
    """The subgroup of Z^n generated by a list of integer vectors."""

    def __init__(self, ambient_rank: int, generators: Sequence[Sequence[int]]):
        self.ambient_rank = ambient_rank
        gens = [list(g) for g in generators]
        G = IntegerMatrix.from_columns(gens, rows=ambient_rank) if gens else IntegerMatrix.zeros(ambient_rank, 0)
        snf = smith_normal_form(G)
        self._U = snf.U
        self._d = snf.invariant_factors
        self.rank = len(self._d)
        Uinv = snf.Uinv
        self.basis = [
            [Uinv[i, k] * self._d[k] for i in range(ambient_rank)] for k in range(self.rank)
        ]

    def coordinates(self, x: Sequence[int]) -> list[int] | None:
        """Coordinates of ``x`` in :attr:`basis`, or None when ``x`` is outside."""
        y = self._U.apply(list(x))
        if any(y[self.rank:]):
            return None
        out = []
        for yi, d in zip(y, self._d):
            if yi % d:
                return None
            out.append(yi // d)
        return out

    def __contains__(self, x) -> bool:
        return self.coordinates(x) is not None

    def point(self, coords: Sequence[int]) -> list[int]:
        out = [0] * self.ambient_rank
        for c, b in zip(coords, self.basis):
            if c:
                for i in range(self.ambient_rank):
                    out[i] += c * b[i]
        return out
