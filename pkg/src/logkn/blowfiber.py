"""Fibers of the Kato-Nakayama map induced by a simple blowup.

Locally the center is ``{x_i = 0, i in I}`` and the divisor is
``{prod_{i in L} x_i = 0}``.  Over a point of the exceptional locus the
fiber is

    { r in R_{>=0}^L, z in C^{I \\ L} : sum r_i^2 + sum |z_i|^2 = 1 },

the unit sphere cut by a convex cone.  Contractibility is certified
structurally (the cone is an intersection of closed half-spaces through the
origin, and it is proper because L is nonempty) and by a sampled
star-shapedness test around the point ``r_1 = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import CenterNotInDivisor, EmptyModel

SPHERE_TOL = 1e-9
GRID_STEPS = 100


@dataclass(frozen=True)
class BlowupLocalData:
    size: int
    log_indices: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "log_indices", frozenset(self.log_indices))
        if self.size < 1:
            raise ValueError("the center needs at least one coordinate")
        if not self.log_indices <= set(range(self.size)):
            raise ValueError(f"log indices {sorted(self.log_indices)} not inside range({self.size})")


@dataclass(frozen=True)
class FiberModel:
    """Sphere in ``R^{n_log} x C^{n_complex}`` intersected with ``r >= 0``.

    Points are real vectors ``(r_1..r_nL, Re z_1, Im z_1, ...)``.
    """

    n_log: int
    n_complex: int

    @property
    def dimension(self) -> int:
        return self.n_log + 2 * self.n_complex - 1

    @property
    def ambient_dimension(self) -> int:
        return self.n_log + 2 * self.n_complex

    def halfspaces(self) -> list[np.ndarray]:
        """Inward normals ``a`` with the cone equal to ``{a . p >= 0}``."""
        out = []
        for i in range(self.n_log):
            a = np.zeros(self.ambient_dimension)
            a[i] = 1.0
            out.append(a)
        return out

    def center(self) -> np.ndarray:
        c = np.zeros(self.ambient_dimension)
        c[0] = 1.0
        return c

    def mask(self, points: np.ndarray, tol: float = SPHERE_TOL) -> np.ndarray:
        """Membership of each row of ``points`` (last axis = coordinates)."""
        points = np.asarray(points, dtype=float)
        on_sphere = np.abs(np.einsum("...i,...i->...", points, points) - 1.0) <= tol
        in_cone = np.ones(points.shape[:-1], dtype=bool)
        for a in self.halfspaces():
            in_cone &= points @ a >= -tol
        return on_sphere & in_cone

    def contains(self, p: np.ndarray, tol: float = SPHERE_TOL) -> bool:
        return bool(self.mask(np.asarray(p)[None, :], tol)[0])

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        p = rng.standard_normal(self.ambient_dimension)
        p[: self.n_log] = np.abs(p[: self.n_log])
        return p / np.linalg.norm(p)


def fiber_of_simple_blowup(data: BlowupLocalData) -> FiberModel:
    if not data.log_indices:
        raise CenterNotInDivisor("L is empty: the blowup center is not contained in the divisor")
    n_log = len(data.log_indices)
    return FiberModel(n_log=n_log, n_complex=data.size - n_log)


@dataclass
class ContractibilityCertificate:
    passed: bool
    cone_is_convex: bool
    cone_is_proper: bool
    samples: int
    violations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "cone_is_convex": self.cone_is_convex,
            "cone_is_proper": self.cone_is_proper,
            "samples": self.samples,
            "violations": self.violations[:5],
        }


def _structural_check(model: FiberModel) -> tuple[bool, bool]:
    normals = model.halfspaces()
    # an intersection of half-spaces {a.p >= 0} is a convex cone; it is
    # proper exactly when at least one nonzero normal is present
    convex = all(np.all(np.isfinite(a)) for a in normals)
    proper = any(np.linalg.norm(a) > 0 for a in normals)
    return convex, proper


def verify_contractibility(model: FiberModel, samples: int = 1000, seed: int = 0) -> ContractibilityCertificate:
    if model.ambient_dimension < 1:
        raise EmptyModel("fiber model has no coordinates")
    convex, proper = _structural_check(model)
    rng = np.random.default_rng(seed)
    c = model.center()
    violations: list[dict] = []
    if not model.contains(c):
        violations.append({"sample": -1, "t": 0.0, "point": c.tolist(), "reason": "center outside model"})
    ts = np.linspace(0.0, 1.0, GRID_STEPS + 1)[None, :, None]
    points = np.stack([model.sample(rng) for _ in range(samples)]) if samples else np.zeros((0, c.size))
    segments = (1.0 - ts) * c[None, None, :] + ts * points[:, None, :]
    norms = np.linalg.norm(segments, axis=-1, keepdims=True)
    degenerate = norms[..., 0] == 0.0
    segments = segments / np.where(norms == 0.0, 1.0, norms)
    ok = model.mask(segments) & ~degenerate
    for k in np.flatnonzero(~ok.all(axis=1)):
        j = int(np.argmin(ok[k]))
        violations.append({
            "sample": int(k),
            "t": float(ts[0, j, 0]),
            "point": segments[k, j].tolist(),
            "reason": "segment hits origin" if degenerate[k, j] else "left the model",
        })
    return ContractibilityCertificate(
        passed=convex and proper and not violations,
        cone_is_convex=convex,
        cone_is_proper=proper,
        samples=samples,
        violations=violations,
    )


def contractibility_suite(max_size: int = 4, samples: int = 1000, seed: int = 0) -> list[dict]:
    """Run the contractibility check for every ``1 <= |I| <= max_size`` and nonempty ``L``."""
    rows = []
    for size in range(1, max_size + 1):
        for k in range(1, size + 1):
            for L in combinations(range(size), k):
                model = fiber_of_simple_blowup(BlowupLocalData(size, frozenset(L)))
                cert = verify_contractibility(model, samples, seed)
                rows.append({
                    "I": size,
                    "L": list(L),
                    "dimension": model.dimension,
                    "expected_dimension": len(L) + 2 * (size - len(L)) - 1,
                    "passed": cert.passed,
                    "violations": len(cert.violations),
                })
    return rows
