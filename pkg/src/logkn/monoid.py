"""Fine saturated monoids as submonoids of Z^n, their charts and KN local models.

A monoid here is always ``P = N<g_1, ..., g_k>`` inside a lattice of rank at
most 4.  Saturation and exactness are decided by explicit enumeration,
which is exponential in the rank; the cap keeps every chart that shows up
for nodes and crossings of at most four branches well inside budget.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor

from .errors import EmptyMultiplicity, NotAHomomorphism, RankTooLarge
from .intlin import IntegerMatrix, Lattice, smith_normal_form

log = logging.getLogger(__name__)

MAX_RANK = 4
# integer functionals tried when looking for a grading that makes P pointed
_GRADING_SEARCH = 4
# half-width of the box (in lattice coordinates of P^gp) searched for
# exactness counterexamples
EXACTNESS_RADIUS = 4


def _check_rank(n: int) -> None:
    if n > MAX_RANK:
        raise RankTooLarge(f"ambient rank {n} exceeds the cap of {MAX_RANK}")


@dataclass(frozen=True)
class FsMonoid:
    """Submonoid of Z^rank generated by ``generators``.

    Zero vectors and duplicates are dropped; an empty generator list is the
    trivial monoid.
    """

    rank: int
    generators: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        seen = []
        for g in self.generators:
            g = tuple(int(x) for x in g)
            if len(g) != self.rank:
                raise ValueError(f"generator {g} does not live in Z^{self.rank}")
            if any(g) and g not in seen:
                seen.append(g)
        object.__setattr__(self, "generators", tuple(seen))

    @classmethod
    def free(cls, r: int) -> FsMonoid:
        """N^r with its standard basis."""
        return cls(r, tuple(tuple(int(i == j) for j in range(r)) for i in range(r)))

    @classmethod
    def parse(cls, text: str) -> FsMonoid:
        """Parse ``"1,0;1,1;1,2"`` (semicolon-separated integer tuples)."""
        parts = [p.strip() for p in text.split(";") if p.strip()]
        if not parts:
            raise ValueError("no generators given")
        gens = [tuple(int(x) for x in p.split(",")) for p in parts]
        rank = len(gens[0])
        if any(len(g) != rank for g in gens):
            raise ValueError("generators have different lengths")
        return cls(rank, tuple(gens))

    def is_trivial(self) -> bool:
        return not self.generators

    def lattice(self) -> Lattice:
        return _lattice(self)

    def contains(self, x) -> bool:
        return _member(self, tuple(int(v) for v in x))

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def __str__(self) -> str:
        return "<" + "; ".join(",".join(map(str, g)) for g in self.generators) + ">"


@lru_cache(maxsize=256)
def _lattice(P: FsMonoid) -> Lattice:
    return Lattice(P.rank, P.generators)


@lru_cache(maxsize=256)
def _grading(P: FsMonoid) -> tuple[int, ...] | None:
    """An integer functional positive on every generator, if a small one exists."""
    if not P.generators:
        return (0,) * P.rank
    for bound in range(1, _GRADING_SEARCH + 1):
        for ell in itertools.product(range(-bound, bound + 1), repeat=P.rank):
            if all(sum(a * b for a, b in zip(ell, g)) > 0 for g in P.generators):
                return ell
    return None


def _member(P: FsMonoid, x: tuple[int, ...]) -> bool:
    if not any(x):
        return True
    if x not in _lattice(P):
        return False
    ell = _grading(P)
    if ell is None:
        return _member_unpointed(P, x)
    degs = [sum(a * b for a, b in zip(ell, g)) for g in P.generators]
    gens = P.generators

    @lru_cache(maxsize=None)
    def reach(y: tuple[int, ...]) -> bool:
        if not any(y):
            return True
        level = sum(a * b for a, b in zip(ell, y))
        if level <= 0:
            return False
        for g, dg in zip(gens, degs):
            if dg <= level and reach(tuple(a - b for a, b in zip(y, g))):
                return True
        return False

    return reach(x)


def _member_unpointed(P: FsMonoid, x: tuple[int, ...]) -> bool:
    # P has units, so no grading bounds the coefficients.  Search sums of
    # generators inside a box of half-width |x| + 2 max|g| (desk-scale only).
    box = max(abs(v) for v in x) + 2 * max(max(abs(v) for v in g) for g in P.generators)
    zero = (0,) * P.rank
    seen = {zero}
    stack = [zero]
    while stack:
        y = stack.pop()
        for g in P.generators:
            z = tuple(a + b for a, b in zip(y, g))
            if z == x:
                return True
            if z not in seen and max(abs(v) for v in z) <= box:
                seen.add(z)
                stack.append(z)
    return False


@dataclass(frozen=True)
class GroupData:
    """Finitely generated abelian group Z^rank + torsion."""

    rank: int
    torsion: tuple[int, ...] = ()


def groupification(P: FsMonoid) -> GroupData:
    if not P.generators:
        return GroupData(0)
    G = IntegerMatrix.from_columns(P.generators, rows=P.rank)
    snf = smith_normal_form(G)
    # a subgroup of a lattice is free
    return GroupData(snf.rank)


def _independent_subsets(gens):
    k = len(gens)
    for size in range(1, k + 1):
        for idx in itertools.combinations(range(k), size):
            sub = [gens[i] for i in idx]
            M = IntegerMatrix.from_columns(sub)
            if smith_normal_form(M).rank == size:
                yield sub


def _parallelepiped_points(sub) -> list[tuple[int, ...]]:
    """Lattice points of Z^n in the half-open parallelepiped of independent ``sub``.

    With ``U G V = D`` the points of ``Z^n`` in the real span of ``sub``
    correspond to ``y = U x`` supported on the first ``s`` coordinates, and
    ``lambda = V (y / d)``; reducing ``lambda`` mod 1 enumerates each class of
    ``(Z^n cap span) / Z sub`` exactly once.
    """
    G = IntegerMatrix.from_columns(sub)
    snf = smith_normal_form(G)
    d = snf.invariant_factors
    s = len(sub)
    points = set()
    for y in itertools.product(*(range(di) for di in d)):
        mu = [Fraction(yi, di) for yi, di in zip(y, d)]
        lam = [sum(snf.V[i, j] * mu[j] for j in range(s)) for i in range(s)]
        lam = [li - floor(li) for li in lam]
        x = [sum(lam[j] * sub[j][i] for j in range(s)) for i in range(G.rows)]
        assert all(v.denominator == 1 for v in x)
        points.add(tuple(int(v) for v in x))
    return sorted(points)


def saturation_candidates(P: FsMonoid) -> list[tuple[int, ...]]:
    """Finite set C with ``P^gp cap cone(P) = P + C``.

    By Caratheodory every point of the cone lies in a simplicial subcone on
    linearly independent generators; subtracting integer parts of its
    coefficients lands in that subcone's fundamental parallelepiped.
    """
    _check_rank(P.rank)
    L = _lattice(P)
    out = set()
    for sub in _independent_subsets(list(P.generators)):
        for x in _parallelepiped_points(sub):
            if x in L:
                out.add(x)
    return sorted(out)


def is_saturated(P: FsMonoid) -> bool:
    _check_rank(P.rank)
    return all(P.contains(x) for x in saturation_candidates(P))


@dataclass(frozen=True)
class MonoidHom:
    """Homomorphism ``source -> target`` given by a lattice map.

    ``matrix`` has shape ``(target.rank, source.rank)``; every source
    generator must land in the target monoid.
    """

    source: FsMonoid
    target: FsMonoid
    matrix: IntegerMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.rank, self.source.rank):
            raise NotAHomomorphism(
                f"lattice map has shape {self.matrix.shape}, "
                f"expected {(self.target.rank, self.source.rank)}"
            )
        for g in self.source.generators:
            if not self.target.contains(self(g)):
                raise NotAHomomorphism(f"generator {g} maps outside the target monoid")

    def __call__(self, x) -> tuple[int, ...]:
        return tuple(self.matrix.apply(list(x)))


def is_exact(f: MonoidHom, radius: int = EXACTNESS_RADIUS) -> bool:
    """Exactness of ``f`` by searching ``{x in P^gp : f(x) in Q}`` for points outside P.

    The search covers lattice coordinates of ``P^gp`` in ``[-radius, radius]``.
    """
    _check_rank(f.source.rank)
    _check_rank(f.target.rank)
    return exactness_witness(f, radius) is None


def exactness_witness(f: MonoidHom, radius: int = EXACTNESS_RADIUS) -> tuple[int, ...] | None:
    L = _lattice(f.source)
    for coords in itertools.product(range(-radius, radius + 1), repeat=L.rank):
        x = tuple(L.point(coords))
        if f.target.contains(f(x)) and not f.source.contains(x):
            return x
    return None


def _gp_matrix(f: MonoidHom) -> IntegerMatrix:
    """``f^gp`` written in lattice bases of ``P^gp`` and ``Q^gp``."""
    LP, LQ = _lattice(f.source), _lattice(f.target)
    cols = []
    for b in LP.basis:
        c = LQ.coordinates(f(b))
        if c is None:
            raise NotAHomomorphism("image of P^gp is not inside Q^gp")
        cols.append(c)
    if not cols:
        return IntegerMatrix.zeros(LQ.rank, 0)
    return IntegerMatrix.from_columns(cols, rows=LQ.rank)


def cokernel_of_gp(f: MonoidHom) -> GroupData:
    M = _gp_matrix(f)
    snf = smith_normal_form(M)
    inv = snf.invariant_factors
    return GroupData(M.rows - len(inv), tuple(d for d in inv if d > 1))


def is_kummer(f: MonoidHom) -> bool:
    """``f^gp`` injective with finite cokernel."""
    M = _gp_matrix(f)
    r = smith_normal_form(M).rank
    return r == M.cols and r == M.rows


def good_model_chart(a) -> MonoidHom:
    """The chart ``N -> N^r, 1 -> (a_1, ..., a_r)`` of ``u - prod x_i^{a_i}``."""
    a = [int(x) for x in a]
    if not a or any(x < 1 for x in a):
        raise EmptyMultiplicity(f"multiplicities must be a nonempty list of positive integers, got {a}")
    return MonoidHom(FsMonoid.free(1), FsMonoid.free(len(a)), IntegerMatrix.from_columns([a]))


@dataclass(frozen=True)
class KNLocalModel:
    """``Hom(P, C-bar) = Hom(P, R_>=0) x Hom(P^gp, S^1)``.

    ``cone_dim`` is the dimension of the first factor, the second is a
    compact group with ``torus_rank`` circle factors and ``components``
    connected components.
    """

    cone_dim: int
    torus_rank: int
    torsion: tuple[int, ...] = ()
    components: int = 1
    saturated: bool = True
    warnings: tuple[str, ...] = field(default=())

    def describe(self) -> str:
        if self.cone_dim == 0 and self.torus_rank == 0:
            return "point"
        parts = []
        if self.cone_dim:
            parts.append(f"cone of dim {self.cone_dim}")
        if self.torus_rank:
            parts.append("S^1" if self.torus_rank == 1 else f"(S^1)^{self.torus_rank}")
        return " x ".join(parts)


def kn_local_model(P: FsMonoid) -> KNLocalModel:
    _check_rank(P.rank)
    gp = groupification(P)
    sat = is_saturated(P)
    warnings: tuple[str, ...] = ()
    if not sat:
        msg = f"monoid {P} is not saturated; Hom(P, S^1) = Hom(P^gp, S^1) still applies"
        log.warning(msg)
        warnings = (msg,)
    components = 1
    for t in gp.torsion:
        components *= t
    return KNLocalModel(
        cone_dim=gp.rank,
        torus_rank=gp.rank,
        torsion=gp.torsion,
        components=components,
        saturated=sat,
        warnings=warnings,
    )
