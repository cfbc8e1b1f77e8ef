"""Nearby fibers, monodromy and total spaces of semistable curve degenerations."""

from .cwmodel import OracleComparison, PlumbingSurface, compare_with_oracle, plumbing_model
from .examples import hopf_surface, tate_gluing_check, tate_quotient
from .monodromy import MonodromyReport, exp_nilpotent, log_unipotent, monodromy, twist_matrix
from .surface import FiberSurface, build_fiber, label_str, spanning_tree
from .total import InvarianceReport, blowup_invariance, fiber_homology, total_space_homology

__all__ = [
    "FiberSurface",
    "InvarianceReport",
    "MonodromyReport",
    "OracleComparison",
    "PlumbingSurface",
    "blowup_invariance",
    "build_fiber",
    "compare_with_oracle",
    "exp_nilpotent",
    "fiber_homology",
    "hopf_surface",
    "label_str",
    "log_unipotent",
    "monodromy",
    "plumbing_model",
    "spanning_tree",
    "tate_gluing_check",
    "tate_quotient",
    "total_space_homology",
    "twist_matrix",
]
