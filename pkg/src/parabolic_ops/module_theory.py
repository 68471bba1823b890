"""Casimir scalars, Psi eigenvalues and Levi tensor-product decompositions.

Levi modules are described by highest weights written in the fundamental
weight basis of the *whole* algebra. The central part of the Levi factor
acts through the crossed coordinates, which simple reflections of the Levi
Weyl group never touch, so characters of reductive Levi factors come for
free from the semisimple machinery.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .lie_core import InvariantForm, LieError, Root, Weight, coroot_pairing, delta, simple_reflection
from .parabolic import GradingReport, Levi

__all__ = [
    "MultiplicityError",
    "IsotypicComponent",
    "PsiSpectrum",
    "casimir_scalar",
    "psi_eigenvalue",
    "psi_spectrum",
    "levi_character",
    "weyl_dimension",
    "f_star_weights",
    "klimyk_decompose",
    "gamma_coefficient",
]


class MultiplicityError(LieError):
    """An f* x V decomposition produced a component of multiplicity > 1."""


@dataclass(frozen=True)
class IsotypicComponent:
    highest_weight: Weight
    multiplicity: int


@dataclass(frozen=True)
class PsiSpectrum:
    source: Weight
    component: int  # crossed node (1-based) labelling f*_i
    entries: tuple[tuple[IsotypicComponent, Fraction], ...]


def _as_levi(levi: Levi | GradingReport) -> Levi:
    return levi.levi if isinstance(levi, GradingReport) else levi


def casimir_scalar(lam: Weight, report: GradingReport | Levi, form: InvariantForm | None = None) -> Fraction:
    """(lambda, lambda + 2 delta_0): the Levi Casimir on V_lambda."""
    levi = _as_levi(report)
    form = form or levi.form
    return form.pair(lam, lam + levi.rho * 2)


def psi_eigenvalue(lam: Weight, mu: Weight, form: InvariantForm) -> Fraction:
    d = delta(form.datum)
    return (form.norm2(mu + d) - form.norm2(lam + d)) / 2


def weyl_dimension(lam: Weight, levi: Levi | GradingReport) -> int:
    levi = _as_levi(levi)
    form = levi.form
    shifted = lam + levi.rho
    dim = Fraction(1)
    for r in levi.positive_roots:
        dim *= form.pair_weight_root(shifted, r.coords) / form.pair_weight_root(levi.rho, r.coords)
    if dim.denominator != 1:
        raise LieError(f"non-integral Weyl dimension for {lam}")
    return int(dim)


_char_cache: dict = {}
_char_lock = threading.Lock()


def levi_character(lam: Weight, levi: Levi | GradingReport) -> dict[Weight, int]:
    """Weight multiplicities of the irreducible Levi module V_lam (Freudenthal)."""
    levi = _as_levi(levi)
    if not levi.is_dominant(lam):
        raise LieError(f"{lam} is not dominant for the Levi factor")
    key = (levi.datum.name, levi.nodes, lam)
    with _char_lock:
        if key in _char_cache:
            return dict(_char_cache[key])
    char = _freudenthal(lam, levi)
    with _char_lock:
        _char_cache[key] = char
    return dict(char)


def _freudenthal(lam: Weight, levi: Levi) -> dict[Weight, int]:
    form = levi.form
    rho = levi.rho
    roots = [(r, levi.datum.root_to_weight(r.coords)) for r in levi.positive_roots]
    simple = [levi.simple_root_weight(i) for i in levi.nodes]
    top = form.norm2(lam + rho)
    mult: dict[Weight, int] = {lam: 1}
    level = [lam]
    depth = 0
    while level:
        depth += 1
        candidates = sorted({w - a for w in level for a in simple})
        level = []
        for mu in candidates:
            num = Fraction(0)
            for r, rw in roots:
                # mu + k r stays within lam - Q+ only while k * height(r) <= depth
                for k in range(1, depth // r.height + 1):
                    nu = mu + rw * k
                    m = mult.get(nu)
                    if m:
                        num += m * form.pair_weight_root(nu, r.coords)
            den = top - form.norm2(mu + rho)
            if den == 0:
                assert num == 0, "Freudenthal numerator must vanish off the weight set"
                continue
            m = 2 * num / den
            assert m.denominator == 1 and m >= 0, f"bad Freudenthal multiplicity {m} at {mu}"
            if m:
                mult[mu] = int(m)
                level.append(mu)
    return mult


def f_star_weights(report: GradingReport, node: int) -> Counter:
    """Weights of f*_i as a Levi module with highest weight -beta_i.

    ``node`` is the 1-based crossed node carrying beta_i.
    """
    if node not in report.parabolic.crossed:
        raise LieError(f"node {node} is not crossed")
    datum = report.datum
    top = -datum.root_to_weight(datum.simple_root(node - 1).coords)
    return Counter(levi_character(top, report))


def _to_dominant(v: Weight, levi: Levi) -> tuple[Weight, int] | None:
    """Levi-dominant conjugate of ``v`` and the sign of the Weyl element used.

    Returns None when ``v`` lies on a wall (its stabilizer is nontrivial).
    """
    sign = 1
    while True:
        neg = next((i for i in levi.nodes if v.coords[i] < 0), None)
        if neg is None:
            break
        v = simple_reflection(v, neg, levi.datum)
        sign = -sign
    if any(v.coords[i] == 0 for i in levi.nodes):
        return None
    return v, sign


def klimyk_decompose(lam: Weight, module_weights: Mapping[Weight, int] | Iterable[Weight],
                     report: GradingReport | Levi, form: InvariantForm | None = None,
                     *, multiplicity_free: bool = False) -> list[IsotypicComponent]:
    """Decompose V_lam (x) M over the Levi factor with Klimyk's formula.

    ``module_weights`` is the full weight multiset of M. With
    ``multiplicity_free=True`` any multiplicity above 1 raises
    :class:`MultiplicityError`.
    """
    levi = _as_levi(report)
    if not levi.is_dominant(lam):
        raise LieError(f"{lam} is not dominant for the Levi factor")
    weights = module_weights if isinstance(module_weights, Mapping) else Counter(module_weights)
    rho = levi.rho
    total: Counter = Counter()
    for nu, m in weights.items():
        hit = _to_dominant(lam + nu + rho, levi)
        if hit is None:
            continue
        w, sign = hit
        total[w - rho] += sign * m
    out = []
    for hw in sorted(total):
        m = total[hw]
        if m < 0:
            raise LieError(f"negative Klimyk multiplicity at {hw}")
        if m == 0:
            continue
        if multiplicity_free and m > 1:
            raise MultiplicityError(f"component {hw} occurs with multiplicity {m}")
        out.append(IsotypicComponent(hw, m))
    return out


def psi_spectrum(lam: Weight, node: int, report: GradingReport,
                 form: InvariantForm | None = None) -> PsiSpectrum:
    """Psi eigenvalue on each isotypic component of f*_i (x) V_lam."""
    form = form or report.form
    if not report.levi.is_dominant(lam):
        raise LieError(f"{lam} is not dominant for the Levi factor")
    comps = klimyk_decompose(lam, f_star_weights(report, node), report, multiplicity_free=True)
    entries = tuple((c, psi_eigenvalue(lam, c.highest_weight, form)) for c in comps)
    return PsiSpectrum(lam, node, entries)


def gamma_coefficient(lam: Weight, alpha: Root, j: int, form: InvariantForm) -> Fraction:
    """c = (|lam + j alpha + delta|^2 - |lam + delta|^2)/2, checked against |alpha|^2 j (j-k)/2."""
    if j < 1:
        raise LieError("j must be >= 1")
    d = delta(form.datum)
    a = form.datum.root_to_weight(alpha.coords)
    k = -coroot_pairing(lam + d, alpha, form)
    c = (form.norm2(lam + a * j + d) - form.norm2(lam + d)) / 2
    closed = form.root_norm2(alpha) * j * (j - k) / 2
    assert c == closed, f"gamma coefficient mismatch: {c} != {closed}"
    return c
