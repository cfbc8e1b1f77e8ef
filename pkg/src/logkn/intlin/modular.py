"""Cohomology with Z/n coefficients computed by elimination over Z/n.

Nothing here goes through integral homology: cochain matrices are reduced
mod n first and every row/column operation is invertible over Z/n.  Over a
ring with zero divisors a pivot need not divide its neighbours, so pivots are
improved with 2x2 Bezout moves of determinant 1 until row and column clear.
"""

from __future__ import annotations

from math import gcd

from .chains import ChainComplex
from .matrix import IntegerMatrix
from .smith import divisibility_chain


def _bezout(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def diagonalize_mod(rows: list[list[int]], ncols: int, n: int, track: bool = False):
    """Diagonalize a matrix over Z/n in place.

    Returns ``(diag, qinv)`` where ``diag[t]`` is the entry left at ``(t, t)``
    and ``qinv`` (when ``track``) is the inverse of the accumulated column
    transform, so that ``y = qinv x`` are coordinates adapted to the diagonal.
    """
    a = [[x % n for x in r] for r in rows]
    m = len(a)
    qinv = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if track else None
    diag: list[int] = []

    def col_combo(t, j, s, u, v, w):
        # col_t, col_j <- s col_t + u col_j, v col_t + w col_j   (det = sw - uv = 1)
        for r in a:
            x, y = r[t], r[j]
            if x or y:
                r[t] = (s * x + u * y) % n
                r[j] = (v * x + w * y) % n
        if qinv is not None:
            # inverse transform acts on rows of qinv
            rt, rj = qinv[t], qinv[j]
            qinv[t] = [(w * x - v * y) % n for x, y in zip(rt, rj)]
            qinv[j] = [(-u * x + s * y) % n for x, y in zip(rt, rj)]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        if qinv is not None:
            qinv[i], qinv[j] = qinv[j], qinv[i]

    for t in range(min(m, ncols)):
        best = None
        for i in range(t, m):
            r = a[i]
            for j in range(t, ncols):
                x = r[j]
                if x:
                    g = gcd(x, n)
                    if best is None or g < best[0]:
                        best = (g, i, j)
        if best is None:
            break
        _, i0, j0 = best
        a[t], a[i0] = a[i0], a[t]
        swap_cols(t, j0)
        while True:
            clean = True
            for i in range(t + 1, m):
                b = a[i][t]
                if not b:
                    continue
                p = a[t][t]
                if b % p == 0:
                    q = b // p
                    a[i] = [(x - q * y) % n for x, y in zip(a[i], a[t])]
                else:
                    h, s, u = _bezout(p, b)
                    rt, ri = a[t], a[i]
                    a[t] = [(s * x + u * y) % n for x, y in zip(rt, ri)]
                    a[i] = [((-b // h) * x + (p // h) * y) % n for x, y in zip(rt, ri)]
                    clean = False
            for j in range(t + 1, ncols):
                b = a[t][j]
                if not b:
                    continue
                p = a[t][t]
                if b % p == 0:
                    col_combo(t, j, 1, 0, -(b // p), 1)
                else:
                    h, s, u = _bezout(p, b)
                    # new col_t = s col_t + u col_j ; new col_j = -(b/h) col_t + (p/h) col_j
                    col_combo(t, j, s, u, -(b // h), p // h)
                    clean = False
            if clean and not any(a[i][t] for i in range(t + 1, m)):
                break
        diag.append(a[t][t])
    return diag, qinv


def cokernel_mod(rows: list[list[int]], nrows: int, ncols: int, n: int) -> tuple[int, ...]:
    """Invariant factors of ``(Z/n)^nrows / image`` as a tuple of orders > 1."""
    diag, _ = diagonalize_mod(rows, ncols, n)
    orders = [gcd(d, n) for d in diag] + [n] * (nrows - len(diag))
    return tuple(divisibility_chain([o for o in orders if o > 1]))


def cohomology_mod_n(C: ChainComplex, n: int) -> list[tuple[int, ...]]:
    """``H^i(Hom(C, Z/n))`` for each degree, as cyclic orders d1 | d2 | ... (each dividing n)."""
    if n < 2:
        raise ValueError("modulus must be >= 2")
    out = []
    for i in range(C.top + 1):
        m_i = C.dims[i]
        # coboundary out of degree i is the transpose of d_{i+1}
        delta_out = C.boundary(i + 1).T.to_rows() if i + 1 <= C.top else []
        diag, qinv = diagonalize_mod(delta_out, m_i, n, track=True)
        orders = []
        scale = []
        for d in diag:
            g = gcd(d, n)
            orders.append(g)
            scale.append(n // g)
        orders += [n] * (m_i - len(diag))
        scale += [1] * (m_i - len(diag))
        relations = [[0] * 0 for _ in range(m_i)]
        if i >= 1:
            delta_in = C.boundary(i).T  # C^{i-1} -> C^i
            Q = IntegerMatrix.from_rows(qinv, cols=m_i) if m_i else IntegerMatrix.zeros(0, 0)
            Y = (Q @ delta_in).mod(n).to_rows() if m_i else []
            for j in range(m_i):
                row = []
                for y in Y[j]:
                    if y % scale[j]:
                        raise ArithmeticError("image of coboundary left the kernel")
                    row.append(y // scale[j])
                relations[j] = row
        ncols_rel = len(relations[0]) if relations else 0
        full = [
            [orders[j] if k == j else 0 for k in range(m_i)] + relations[j]
            for j in range(m_i)
        ]
        out.append(cokernel_mod(full, m_i, m_i + ncols_rel, n))
    return out
