"""Chain complexes of free abelian groups and their integral homology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import MalformedComplex, NotChainMap
from .matrix import IntegerMatrix, rational_rank
from .smith import invariant_factors, kernel_basis, smith_normal_form


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank plus Z/t for each torsion factor (factors >= 2, each dividing the next)."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        t = self.torsion
        if any(x < 2 for x in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion factors {t} do not form a divisibility chain")

    @classmethod
    def free(cls, rank: int) -> AbelianGroup:
        return cls(rank, ())

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HomologySummary:
    """Homology groups indexed by degree 0, 1, ..."""

    groups: tuple[AbelianGroup, ...]

    def __getitem__(self, n: int) -> AbelianGroup:
        if 0 <= n < len(self.groups):
            return self.groups[n]
        return AbelianGroup()

    def __len__(self) -> int:
        return len(self.groups)

    def __iter__(self):
        return iter(self.groups)

    @property
    def betti(self) -> list[int]:
        return [g.rank for g in self.groups]

    @property
    def torsion(self) -> list[tuple[int, ...]]:
        return [g.torsion for g in self.groups]

    def trimmed(self) -> HomologySummary:
        """Drop trailing trivial degrees."""
        groups = list(self.groups)
        while groups and groups[-1].is_trivial():
            groups.pop()
        return HomologySummary(tuple(groups))

    def same_as(self, other: HomologySummary) -> bool:
        return self.trimmed() == other.trimmed()

    def to_json(self) -> list[dict]:
        return [
            {"degree": n, "rank": g.rank, "torsion": list(g.torsion)}
            for n, g in enumerate(self.groups)
        ]

    def __str__(self) -> str:
        return "[" + ", ".join(str(g) for g in self.groups) + "]"


@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex ``C_top -> ... -> C_1 -> C_0``.

    ``dims[n]`` is the rank of ``C_n``; ``boundaries[n - 1]`` is the matrix of
    ``d_n : C_n -> C_{n-1}`` with shape ``(dims[n-1], dims[n])``.  The
    identity ``d_n d_{n+1} = 0`` is checked on construction.
    """

    dims: tuple[int, ...]
    boundaries: tuple[IntegerMatrix, ...] = field(default=())

    def __post_init__(self):
        if not self.dims:
            raise MalformedComplex("a chain complex needs at least C_0")
        if len(self.boundaries) != len(self.dims) - 1:
            raise MalformedComplex(
                f"{len(self.dims)} chain groups need {len(self.dims) - 1} boundary maps"
            )
        for n, d in enumerate(self.boundaries, start=1):
            if d.shape != (self.dims[n - 1], self.dims[n]):
                raise MalformedComplex(
                    f"d_{n} has shape {d.shape}, expected {(self.dims[n - 1], self.dims[n])}"
                )
        for n in range(1, len(self.boundaries)):
            if not (self.boundaries[n - 1] @ self.boundaries[n]).is_zero():
                raise MalformedComplex(f"d_{n} d_{n + 1} != 0")

    @classmethod
    def from_boundaries(cls, boundaries: Sequence[IntegerMatrix], dim0: int | None = None) -> ChainComplex:
        boundaries = tuple(boundaries)
        if not boundaries:
            return cls((dim0 if dim0 is not None else 0,), ())
        dims = [boundaries[0].rows] + [d.cols for d in boundaries]
        return cls(tuple(dims), boundaries)

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def boundary(self, n: int) -> IntegerMatrix:
        """``d_n``; zero maps outside the stored range."""
        if 1 <= n <= self.top:
            return self.boundaries[n - 1]
        rows = self.dims[n - 1] if 1 <= n <= self.top + 1 else 0
        cols = self.dims[n] if 0 <= n <= self.top else 0
        return IntegerMatrix.zeros(rows, cols)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * d for n, d in enumerate(self.dims))


@dataclass(frozen=True)
class ChainMap:
    """Degreewise matrices ``f_n : C_n -> D_n``."""

    components: tuple[IntegerMatrix, ...]

    def __getitem__(self, n: int) -> IntegerMatrix:
        return self.components[n]

    @classmethod
    def identity(cls, C: ChainComplex) -> ChainMap:
        return cls(tuple(IntegerMatrix.identity(d) for d in C.dims))


def check_chain_map(C: ChainComplex, D: ChainComplex, f: ChainMap) -> None:
    if len(f.components) != len(C.dims) or len(C.dims) != len(D.dims):
        raise NotChainMap("chain map has the wrong number of components")
    for n, fn in enumerate(f.components):
        if fn.shape != (D.dims[n], C.dims[n]):
            raise NotChainMap(f"component {n} has shape {fn.shape}")
    for n in range(1, C.top + 1):
        if f[n - 1] @ C.boundary(n) != D.boundary(n) @ f[n]:
            raise NotChainMap(f"f d != d f in degree {n}")


def homology(C: ChainComplex) -> HomologySummary:
    ranks = [0] + [None] * C.top + [0]
    factors: list[list[int]] = [[] for _ in range(C.top + 2)]
    for n in range(1, C.top + 1):
        inv = invariant_factors(C.boundary(n))
        ranks[n] = len(inv)
        factors[n] = inv
    groups = []
    for n in range(C.top + 1):
        rk_out = ranks[n] if n >= 1 else 0
        rk_in = ranks[n + 1] if n + 1 <= C.top else 0
        tors = tuple(x for x in factors[n + 1] if x > 1) if n + 1 <= C.top else ()
        groups.append(AbelianGroup(C.dims[n] - rk_out - rk_in, tors))
    return HomologySummary(tuple(groups))


def mapping_cone(C: ChainComplex, D: ChainComplex, f: ChainMap) -> ChainComplex:
    """Cone of ``f : C -> D`` with ``Cone_n = D_n + C_{n-1}``.

    ``d(y, x) = (d y + f x, -d x)``; its long exact sequence gives
    ``0 -> coker f_* |H_n -> H_n(Cone) -> ker f_* |H_{n-1} -> 0``.
    """
    check_chain_map(C, D, f)
    top = C.top + 1
    dims = [D.dims[n] if n <= D.top else 0 for n in range(top + 1)]
    dims = [dims[n] + (C.dims[n - 1] if n >= 1 else 0) for n in range(top + 1)]
    boundaries = []
    for n in range(1, top + 1):
        d_rows = D.dims[n - 1]
        c_rows = C.dims[n - 2] if n >= 2 else 0
        d_cols = D.dims[n] if n <= D.top else 0
        c_cols = C.dims[n - 1]
        dD = D.boundary(n).to_rows() if n <= D.top else [[] for _ in range(d_rows)]
        fn1 = f[n - 1].to_rows()
        dC = C.boundary(n - 1).to_rows() if n >= 2 else []
        rows = [a + b for a, b in zip(dD, fn1)]
        rows.extend([0] * d_cols + [-x for x in r] for r in dC)
        boundaries.append(IntegerMatrix.from_rows(rows, cols=d_cols + c_cols))
    return ChainComplex(tuple(dims), tuple(boundaries))


def mapping_torus_complex(C: ChainComplex, T: ChainMap) -> ChainComplex:
    """Algebraic mapping torus: the cone of ``id - T``."""
    check_chain_map(C, C, T)
    diff = ChainMap(tuple(IntegerMatrix.identity(d) - t for d, t in zip(C.dims, T.components)))
    return mapping_cone(C, C, diff)


def mapping_torus_homology(C: ChainComplex, T: ChainMap) -> HomologySummary:
    return homology(mapping_torus_complex(C, T))


# explicit bases --------------------------------------------------------------


class HomologyBasis:
    """Explicit free generators of ``H_n(C)`` and a coordinate map onto them.

    ``coordinates(z)`` returns the free-part coordinates of the class of the
    cycle ``z``; torsion components are discarded.
    """

    def __init__(self, C: ChainComplex, n: int):
        self.degree = n
        dn = C.boundary(n)
        dn1 = C.boundary(n + 1)
        self._K = kernel_basis(dn)
        k = self._K.cols
        snfK = smith_normal_form(self._K)
        self._ksnf = snfK
        # coordinates of boundaries in the cycle basis
        rel_cols = [self._cycle_coords(dn1.column(j)) for j in range(dn1.cols)]
        R = IntegerMatrix.from_columns(rel_cols, rows=k) if rel_cols else IntegerMatrix.zeros(k, 0)
        snfR = smith_normal_form(R)
        r = snfR.rank
        self._P = snfR.U.submatrix(range(r, k), range(k))
        self.torsion = tuple(d for d in snfR.invariant_factors if d > 1)
        Uinv = snfR.Uinv
        gens = []
        for j in range(r, k):
            coeffs = Uinv.column(j)
            gens.append(self._K.apply(coeffs))
        self.generators = gens
        self.rank = k - r

    def _cycle_coords(self, z: Sequence[int]) -> list[int]:
        # K = Vk columns of a saturated kernel: solve K y = z exactly
        snf = self._ksnf
        y = snf.U.apply(list(z))
        r = snf.rank
        if any(y[r:]):
            raise ValueError("vector is not a cycle")
        d = snf.invariant_factors
        w = []
        for yi, di in zip(y, d):
            if yi % di:
                raise ValueError("vector is not an integral cycle")
            w.append(yi // di)
        return snf.V.apply(w + [0] * (self._K.cols - len(w)))

    def coordinates(self, z: Sequence[int]) -> list[int]:
        return self._P.apply(self._cycle_coords(z))


def induced_map(C: ChainComplex, f: ChainMap, n: int, basis: HomologyBasis | None = None) -> IntegerMatrix:
    """Matrix of ``f_*`` on the free part of ``H_n`` in the basis' generators."""
    basis = basis or HomologyBasis(C, n)
    cols = [basis.coordinates(f[n].apply(g)) for g in basis.generators]
    return IntegerMatrix.from_columns(cols, rows=basis.rank) if cols else IntegerMatrix.zeros(0, 0)


def rational_induced_rank(C: ChainComplex, f: ChainMap, n: int) -> int:
    """Rank of ``f_*`` on ``H_n(C; Q)``."""
    Z = kernel_basis(C.boundary(n))
    B = C.boundary(n + 1)
    fZ = f[n] @ Z
    rows_fz = fZ.to_rows()
    rows_b = B.to_rows()
    combined = [a + b for a, b in zip(rows_fz, rows_b)]
    return rational_rank(combined) - rational_rank(rows_b)


def wang_betti(C: ChainComplex, T: ChainMap) -> list[int]:
    """Betti numbers of the mapping torus predicted by the Wang sequence.

    ``b_n(M) = corank(T_* - 1 | H_n) + nullity(T_* - 1 | H_{n-1})``.
    """
    H = homology(C)
    diff = ChainMap(tuple(IntegerMatrix.identity(d) - t for d, t in zip(C.dims, T.components)))
    rk = [rational_induced_rank(C, diff, n) for n in range(C.top + 1)]
    out = []
    for n in range(C.top + 2):
        coker = H[n].rank - rk[n] if n <= C.top else 0
        ker = H[n - 1].rank - rk[n - 1] if n >= 1 else 0
        out.append(coker + ker)
    return out
