"""Standard operators between p-dominant weights and their BGG Hasse graphs."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .lie_core import (
    InvariantForm,
    LieError,
    Root,
    Weight,
    coroot_pairing,
    delta,
    reflect,
    weyl_orbit,
    weyl_group_order,
)
from .module_theory import gamma_coefficient, psi_eigenvalue
from .parabolic import GradingReport, is_p_dominant

__all__ = [
    "Rejection",
    "OperatorDescriptor",
    "Classification",
    "HasseVertex",
    "HasseEdge",
    "HasseGraph",
    "classify_pair",
    "classify_all",
    "bruhat_length",
    "bgg_vertices",
    "bgg_edges",
    "hasse_graph",
    "telescoping_report",
    "TelescopingRecord",
]


class Rejection(str, enum.Enum):
    HEIGHT_NOT_ONE = "height-not-one"
    SHORT_ROOT = "short-root"
    K_NONPOSITIVE = "k-nonpositive"
    K_NONINTEGER = "k-noninteger"
    TARGET_NOT_DOMINANT = "target-not-dominant"


@dataclass(frozen=True)
class OperatorDescriptor:
    source: Weight
    target: Weight
    direction: Root
    order: int
    constructed: bool
    eigen_ladder: tuple[Fraction, ...]  # c_j = |alpha|^2 j (j - k) / 2, j = 1..k


@dataclass(frozen=True)
class Classification:
    """Result of :func:`classify_pair`: a descriptor or a rejection reason."""

    direction: Root
    descriptor: OperatorDescriptor | None = None
    reason: Rejection | None = None
    order: Fraction | None = None

    def __bool__(self) -> bool:
        return self.descriptor is not None


def _check_source(lam: Weight, report: GradingReport) -> None:
    if len(lam) != report.datum.rank:
        raise LieError(f"weight {lam} has wrong length for {report.datum.name}")
    if not is_p_dominant(lam, report):
        raise LieError(f"weight {lam} is not dominant for p")


def classify_pair(lam: Weight, alpha: Root, report: GradingReport,
                  form: InvariantForm | None = None) -> Classification:
    """Decide whether the construction yields an operator from ``lam`` in direction ``alpha``.

    The hypotheses are checked in a fixed order and the first failure is
    reported: height one, long root, positive integral order, dominant target.
    """
    form = form or report.form
    _check_source(lam, report)
    if report.height(alpha) != 1:
        return Classification(alpha, reason=Rejection.HEIGHT_NOT_ONE)
    if not alpha.is_long:
        return Classification(alpha, reason=Rejection.SHORT_ROOT)
    k = -coroot_pairing(lam + delta(report.datum), alpha, form)
    if k.denominator != 1:
        return Classification(alpha, reason=Rejection.K_NONINTEGER, order=k)
    if k <= 0:
        return Classification(alpha, reason=Rejection.K_NONPOSITIVE, order=k)
    k = int(k)
    mu = lam + report.datum.root_to_weight(alpha.coords) * k
    if not is_p_dominant(mu, report):
        return Classification(alpha, reason=Rejection.TARGET_NOT_DOMINANT, order=Fraction(k))
    ladder = tuple(gamma_coefficient(lam, alpha, j, form) for j in range(1, k + 1))
    desc = OperatorDescriptor(lam, mu, alpha, k, True, ladder)
    return Classification(alpha, descriptor=desc, order=Fraction(k))


def classify_all(lam: Weight, report: GradingReport,
                 form: InvariantForm | None = None) -> list[Classification]:
    return [classify_pair(lam, a, report, form) for a in report.datum.positive_roots]


# --------------------------------------------------------------------------
# Hasse graphs

@dataclass(frozen=True)
class HasseVertex:
    weight: Weight
    length: int


@dataclass(frozen=True)
class HasseEdge:
    source: int
    target: int
    label: Root
    order: int
    constructed: bool
    style: str  # "full" or "dotted"
    note: str | None = None


@dataclass(frozen=True)
class HasseGraph:
    report: GradingReport = field(repr=False, compare=False)
    seed: Weight
    vertices: tuple[HasseVertex, ...]
    edges: tuple[HasseEdge, ...]

    def level_sizes(self) -> list[int]:
        top = max(v.length for v in self.vertices)
        return [sum(1 for v in self.vertices if v.length == n) for n in range(top + 1)]


def bruhat_length(lam: Weight, report: GradingReport, form: InvariantForm | None = None) -> int:
    """#{beta > 0 : (lam + delta, beta^vee) < 0}."""
    form = form or report.form
    shifted = lam + delta(report.datum)
    return sum(1 for b in report.datum.positive_roots if coroot_pairing(shifted, b, form) < 0)


def bgg_vertices(seed: Weight, report: GradingReport, form: InvariantForm | None = None,
                 cap: int = 100_000) -> list[HasseVertex]:
    """p-dominant weights in the affine Weyl orbit of a g-dominant seed.

    Sorted by length, then by descending weight coordinates.
    """
    form = form or report.form
    datum = report.datum
    if len(seed) != datum.rank or not seed.is_integral or not seed.is_dominant:
        raise LieError(f"seed {seed} must be an integral g-dominant weight")
    d = delta(datum)
    verts = []
    for w in weyl_orbit(seed + d, datum, form, cap=cap):
        lam = w - d
        if is_p_dominant(lam, report):
            verts.append(HasseVertex(lam, bruhat_length(lam, report, form)))
    verts.sort(key=lambda v: (v.length, tuple(-x for x in v.weight.coords)))
    return verts


def _edge_for(lam: Weight, mu: Weight, report: GradingReport, form: InvariantForm) -> HasseEdge | None:
    d = delta(report.datum)
    for alpha in report.datum.positive_roots:
        if reflect(lam + d, alpha, form) == mu + d:
            # orient so the order is positive: the operator runs from the
            # weight with negative pairing against alpha^vee
            k = abs(int(coroot_pairing(lam + d, alpha, form)))
            constructed = alpha.is_long and report.height(alpha) == 1
            note = None
            if not constructed and k == 1 and report.height(alpha) == 1:
                note = "first-order"
            return HasseEdge(-1, -1, alpha, k, constructed,
                             "full" if constructed else "dotted", note)
    return None


def bgg_edges(vertices: list[HasseVertex], report: GradingReport,
              form: InvariantForm | None = None, seed: Weight | None = None) -> HasseGraph:
    form = form or report.form
    edges = []
    for i, v in enumerate(vertices):
        for j, u in enumerate(vertices):
            if u.length != v.length + 1:
                continue
            e = _edge_for(v.weight, u.weight, report, form)
            if e is not None:
                edges.append(HasseEdge(i, j, e.label, e.order, e.constructed, e.style, e.note))
    if seed is None:
        seed = next(v.weight for v in vertices if v.length == 0)
    return HasseGraph(report, seed, tuple(vertices), tuple(edges))


def hasse_graph(seed: Weight, report: GradingReport, form: InvariantForm | None = None,
                cap: int = 100_000) -> HasseGraph:
    verts = bgg_vertices(seed, report, form, cap=cap)
    expected = weyl_group_order(report.datum) // _levi_weyl_order(report)
    assert len(verts) == expected, f"{len(verts)} vertices, expected |W|/|W_levi| = {expected}"
    return bgg_edges(verts, report, form, seed=seed)


def _levi_weyl_order(report: GradingReport) -> int:
    # delta is regular for every parabolic subgroup, so its orbit size is |W_levi|
    return len(weyl_orbit(delta(report.datum), report.datum,
                          nodes=report.parabolic.uncrossed_index, max_rank=report.datum.rank))


# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TelescopingRecord:
    descriptor: OperatorDescriptor
    steps: tuple[Fraction, ...]  # Psi eigenvalue for lam+(j-1)alpha -> lam+j alpha
    total: Fraction


def telescoping_report(desc: OperatorDescriptor, form: InvariantForm) -> TelescopingRecord:
    a = form.datum.root_to_weight(desc.direction.coords)
    lam = desc.source
    steps = tuple(psi_eigenvalue(lam + a * (j - 1), lam + a * j, form)
                  for j in range(1, desc.order + 1))
    total = sum(steps, Fraction(0))
    assert total == 0, f"ladder for {lam} -> {desc.target} sums to {total}"
    running = Fraction(0)
    for j, s in enumerate(steps, 1):
        running += s
        assert running == desc.eigen_ladder[j - 1], "cumulative ladder disagrees with gamma coefficients"
    return TelescopingRecord(desc, steps, total)
