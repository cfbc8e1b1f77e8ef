"""Named cell complexes: a thin layer over :class:`ChainComplex`.

Cells are referred to by hashable names and boundaries are written as
``{name: coefficient}`` chains, which keeps hand-built CW models readable.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Hashable, Iterable, Mapping

from ..errors import MalformedComplex
from .chains import ChainComplex, ChainMap
from .matrix import IntegerMatrix

Chain = Mapping[Hashable, int]


def add_chains(*terms: tuple[int, Chain]) -> dict:
    out: dict = defaultdict(int)
    for k, chain in terms:
        for c, x in chain.items():
            out[c] += k * x
    return {c: x for c, x in out.items() if x}


class CellComplex:
    def __init__(self):
        self._cells: dict[int, list] = defaultdict(list)
        self._where: dict = {}
        self._boundary: dict = {}

    def add(self, name: Hashable, dim: int, boundary: Chain | None = None) -> Hashable:
        if name in self._where:
            raise MalformedComplex(f"duplicate cell {name!r}")
        boundary = {c: x for c, x in (boundary or {}).items() if x}
        for c in boundary:
            if c not in self._where or self._where[c][0] != dim - 1:
                raise MalformedComplex(f"boundary of {name!r} uses {c!r}, not a {dim - 1}-cell")
        self._where[name] = (dim, len(self._cells[dim]))
        self._cells[dim].append(name)
        self._boundary[name] = boundary
        return name

    def __contains__(self, name) -> bool:
        return name in self._where

    @property
    def top(self) -> int:
        return max((d for d, cells in self._cells.items() if cells), default=0)

    def cells(self, dim: int) -> list:
        return list(self._cells.get(dim, []))

    def dim_of(self, name) -> int:
        return self._where[name][0]

    def boundary_of(self, name) -> dict:
        return dict(self._boundary[name])

    def index(self, name) -> int:
        return self._where[name][1]

    def vector(self, chain: Chain, dim: int) -> list[int]:
        v = [0] * len(self._cells.get(dim, []))
        for c, x in chain.items():
            d, i = self._where[c]
            if d != dim:
                raise ValueError(f"cell {c!r} has dimension {d}, expected {dim}")
            v[i] += x
        return v

    def chain(self, vec: Iterable[int], dim: int) -> dict:
        return {c: x for c, x in zip(self._cells.get(dim, []), vec) if x}

    def chain_complex(self) -> ChainComplex:
        top = self.top
        dims = tuple(len(self._cells.get(d, [])) for d in range(top + 1))
        bds = []
        for d in range(1, top + 1):
            rows = [[0] * dims[d] for _ in range(dims[d - 1])]
            for j, c in enumerate(self._cells.get(d, [])):
                for f, x in self._boundary[c].items():
                    rows[self._where[f][1]][j] += x
            bds.append(IntegerMatrix.from_rows(rows, cols=dims[d]))
        return ChainComplex(dims, tuple(bds))

    def chain_map(self, images: Mapping[Hashable, Chain]) -> ChainMap:
        """Cellular self-map; cells missing from ``images`` are fixed."""
        top = self.top
        comps = []
        for d in range(top + 1):
            cells = self._cells.get(d, [])
            cols = [self.vector(images.get(c, {c: 1}), d) for c in cells]
            comps.append(
                IntegerMatrix.from_columns(cols, rows=len(cells)) if cells else IntegerMatrix.zeros(0, 0)
            )
        return ChainMap(tuple(comps))

    def quotient(self, identify: Mapping[Hashable, Chain]) -> CellComplex:
        """Collapse each cell in ``identify`` onto the given chain of surviving cells.

        ``identify`` must be a chain-level map (it commutes with boundaries);
        the result is checked for ``d d = 0`` when converted to a chain complex.
        """
        out = CellComplex()
        for d in range(self.top + 1):
            for c in self._cells.get(d, []):
                if c in identify:
                    continue
                bd = add_chains(
                    *((x, identify.get(f, {f: 1})) for f, x in self._boundary[c].items())
                )
                out.add(c, d, bd)
        return out


def product(A: CellComplex, B: CellComplex) -> CellComplex:
    """Product CW structure, cells named ``(a, b)``.

    ``d(a x b) = da x b + (-1)^|a| a x db``.
    """
    out = CellComplex()
    cells = sorted(
        ((A.dim_of(a) + B.dim_of(b), a, b) for d in range(A.top + 1) for a in A.cells(d)
         for e in range(B.top + 1) for b in B.cells(e)),
        key=lambda t: t[0],
    )
    for dim, a, b in cells:
        da, db = A.dim_of(a), B.dim_of(b)
        bd = {}
        for f, x in A.boundary_of(a).items():
            bd[(f, b)] = bd.get((f, b), 0) + x
        sign = -1 if da % 2 else 1
        for g, y in B.boundary_of(b).items():
            bd[(a, g)] = bd.get((a, g), 0) + sign * y
        out.add((a, b), dim, bd)
    return out


def circle(vertex="p", edge="c") -> CellComplex:
    S = CellComplex()
    S.add(vertex, 0)
    S.add(edge, 1, {})
    return S


def interval(start="0", end="1", edge="I") -> CellComplex:
    X = CellComplex()
    X.add(start, 0)
    X.add(end, 0)
    X.add(edge, 1, {end: 1, start: -1})
    return X


def sphere(k: int, vertex="p", cell="e") -> CellComplex:
    """One 0-cell and one k-cell (k >= 1)."""
    if k < 1:
        raise ValueError("sphere dimension must be >= 1")
    X = CellComplex()
    X.add(vertex, 0)
    X.add(cell, k, {})
    return X
