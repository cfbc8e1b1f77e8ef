"""Hand-built quotient models: the Tate curve gluing and the Hopf surface.

Both spaces are presented as ``S^1_tau x [0, inf] x Y`` with the two ends
identified by a map depending on ``tau``.  Reading off the fiber over the
base point of ``S^1_tau`` and the boundary of ``tau``-cells gives the fiber
homology and the monodromy without going through any dual graph.

Monodromy is read with the same convention as the algebraic mapping torus
(cone of ``1 - T``): if ``z`` is a fiber cycle and ``t x z`` its sweep around
the base circle, the fiber part of ``d(t x z)`` is ``z - T z``.
"""

from __future__ import annotations

from ..degen import tate_ngon
from ..errors import InvariantViolation
from ..intlin import (
    CellComplex,
    ChainMap,
    HomologyBasis,
    HomologySummary,
    IntegerMatrix,
    circle,
    homology,
    interval,
    mapping_torus_homology,
    product,
    sphere,
)
from .monodromy import monodromy
from .surface import build_fiber
from .total import total_space_homology


def _glued_cylinder(Y: CellComplex, gluing: dict) -> CellComplex:
    """``[0, 1] x Y`` with ``(1, y)`` identified with ``gluing.get(y, y)`` at 0."""
    I = interval("0", "1", "I")
    X = product(I, Y)
    ident = {}
    for d in range(Y.top + 1):
        for y in Y.cells(d):
            image = gluing.get(y, {y: 1})
            ident[("1", y)] = {("0", z): k for z, k in image.items()}
    return X.quotient(ident)


def hopf_surface() -> tuple[HomologySummary, HomologySummary]:
    """Fiber and total homology of the Hopf surface degeneration.

    The fiber over ``tau`` is ``[0, inf] x S^3`` with ``(0, x) ~ (inf, tau x)``.
    Multiplication by ``tau`` is isotopic to the identity of ``S^3`` and is
    the identity on the two-cell structure, so the fiber is ``S^1 x S^3``
    and the monodromy around ``tau`` is homotopic to the identity.
    """
    S3 = sphere(3, "p", "e")
    fiber = _glued_cylinder(S3, {})
    H_fiber = homology(fiber.chain_complex())
    H_product = homology(product(circle(), S3).chain_complex())
    if not H_fiber.same_as(H_product):
        raise InvariantViolation("glued cylinder over S^3 is not S^1 x S^3")
    C = fiber.chain_complex()
    H_total = mapping_torus_homology(C, ChainMap.identity(C))
    H_total_product = homology(product(circle("t0", "t"), fiber).chain_complex())
    if not H_total.same_as(H_total_product):
        raise InvariantViolation("identity mapping torus disagrees with the product model")
    return H_fiber, H_total


def tate_quotient() -> CellComplex:
    """``S^1_tau x [0, inf] x S^1_alpha`` with ``(tau, 0, alpha) ~ (tau, inf, tau alpha)``.

    Cells are ``((x, i), y)`` with ``x`` in ``{t0, t}``, ``i`` in ``{0, 1, I}``
    and ``y`` in ``{a0, g}``.  The gluing ``(tau, alpha) -> (tau, tau alpha)``
    of ``S^1 x S^1`` sends the cell ``t x a0`` to ``t x a0 + t0 x g`` and
    fixes the others.
    """
    X = product(product(circle("t0", "t"), interval("0", "1", "I")), circle("a0", "g"))
    ident = {}
    for x in ("t0", "t"):
        for y in ("a0", "g"):
            ident[((x, "1"), y)] = {((x, "0"), y): 1}
    ident[(("t", "1"), "a0")] = {(("t", "0"), "a0"): 1, (("t0", "0"), "g"): 1}
    return X.quotient(ident)


def _fiber_subcomplex(Q: CellComplex) -> CellComplex:
    F = CellComplex()
    for d in range(Q.top + 1):
        for c in Q.cells(d):
            if c[0][0] == "t0":
                F.add(c, d, Q.boundary_of(c))
    return F


def gluing_monodromy(Q: CellComplex) -> tuple[CellComplex, HomologyBasis, IntegerMatrix]:
    """Fiber over ``t0`` and the monodromy on its ``H_1`` read from ``d(t x z)``."""
    F = _fiber_subcomplex(Q)
    B = HomologyBasis(F.chain_complex(), 1)
    cols = []
    for gen in B.generators:
        z = F.chain(gen, 1)
        swept = {(("t", c[0][1]), c[1]): k for c, k in z.items()}
        bd: dict = {}
        for c, k in swept.items():
            for f, x in Q.boundary_of(c).items():
                bd[f] = bd.get(f, 0) + k * x
        rest = {c: x for c, x in bd.items() if x and c[0][0] != "t0"}
        if rest:
            raise InvariantViolation(f"sweep of a fiber cycle has non-fiber boundary {rest}")
        fiber_part = {c: x for c, x in bd.items() if x and c[0][0] == "t0"}
        Tz = [a - b for a, b in zip(F.vector(z, 1), F.vector(fiber_part, 1))]
        cols.append(B.coordinates(Tz))
    T = IntegerMatrix.from_columns(cols, rows=B.rank)
    return F, B, T


def tate_gluing_check() -> dict:
    """Compare the explicit Tate quotient with the dual-graph computation for n = 1."""
    Q = tate_quotient()
    F, B, T_glue = gluing_monodromy(Q)
    H_fiber = homology(F.chain_complex())
    H_total = homology(Q.chain_complex())

    f = build_fiber(tate_ngon(1))
    r = monodromy(f)
    H_graph = total_space_homology(f, r)
    # alpha is the radial loop [0, inf] x {a0}, beta the circle {0} x S^1_alpha
    explicit = [{(("t0", "I"), "a0"): 1}, {(("t0", "0"), "g"): 1}]
    P = IntegerMatrix.from_columns([B.coordinates(F.vector(z, 1)) for z in explicit], rows=B.rank)
    checks = {
        "connected": H_fiber[0].rank == 1 and H_total[0].rank == 1,
        "fiber_torus": H_fiber.same_as(homology(product(circle(), circle()).chain_complex())),
        "fiber_closed": H_fiber[2].rank == 1,
        "basis": P.is_unimodular(),
        "monodromy": P.is_unimodular() and T_glue @ P == P @ r.T,
        "transvection": (T_glue - IntegerMatrix.identity(2)).rank() == 1
        and ((T_glue - IntegerMatrix.identity(2)) @ (T_glue - IntegerMatrix.identity(2))).is_zero(),
        "total_homology": H_total.same_as(H_graph),
    }
    return {
        "passed": all(checks.values()),
        "checks": checks,
        "fiber_homology": H_fiber.to_json(),
        "total_homology": H_total.to_json(),
        "T_glue": T_glue.to_rows(),
        "T_graph": r.T.to_rows(),
        "basis_change": P.to_rows(),
    }
