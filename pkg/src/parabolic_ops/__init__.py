"""Standard invariant operators on parabolic geometries: classification,
Casimir data and universal Ricci-corrected formulae."""

from .lie_core import (
    CartanDatum,
    InvariantForm,
    LieError,
    Root,
    Weight,
    coroot_pairing,
    delta,
    invariant_form,
    parse_dynkin,
    positive_roots,
    reflect,
    weyl_orbit,
)
from .parabolic import GradingReport, ParabolicDatum, grading, parse_crossing
from .classifier import classify_pair, hasse_graph
from .symbolic import expand_Dk, render

__all__ = [
    "CartanDatum",
    "InvariantForm",
    "LieError",
    "Root",
    "Weight",
    "coroot_pairing",
    "delta",
    "invariant_form",
    "parse_dynkin",
    "positive_roots",
    "reflect",
    "weyl_orbit",
    "GradingReport",
    "ParabolicDatum",
    "grading",
    "parse_crossing",
    "classify_pair",
    "hasse_graph",
    "expand_Dk",
    "render",
]

__version__ = "0.1.0"
