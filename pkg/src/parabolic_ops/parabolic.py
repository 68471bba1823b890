"""Gradings induced by a crossed Dynkin diagram.

A crossed node set ``S_x`` gives each root a height: the sum of its
coordinates over the crossed nodes. Height 0 roots span the Levi factor,
height ``j`` roots span ``g_j``; height 1 roots make up ``f*``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .lie_core import (
    CartanDatum,
    InvariantForm,
    LieError,
    Root,
    Weight,
    half_sum,
    invariant_form,
)

__all__ = [
    "ParabolicDatum",
    "GradingReport",
    "Levi",
    "PDominantWeight",
    "parse_crossing",
    "grading",
    "f_star_roots",
    "delta0",
    "is_p_dominant",
    "geometric_weight",
]


@dataclass(frozen=True)
class ParabolicDatum:
    datum: CartanDatum
    crossed: tuple[int, ...]  # 1-based node indices

    def __post_init__(self):
        crossed = tuple(sorted(set(int(i) for i in self.crossed)))
        if not crossed:
            raise LieError("empty crossing: p = g is the trivial case")
        if crossed[0] < 1 or crossed[-1] > self.datum.rank:
            raise LieError(f"crossed nodes {crossed} out of range 1..{self.datum.rank}")
        object.__setattr__(self, "crossed", crossed)

    @property
    def crossed_index(self) -> tuple[int, ...]:
        return tuple(i - 1 for i in self.crossed)

    @property
    def uncrossed_index(self) -> tuple[int, ...]:
        c = set(self.crossed_index)
        return tuple(i for i in range(self.datum.rank) if i not in c)

    def height(self, root: Root | Iterable[int]) -> int:
        coords = root.coords if isinstance(root, Root) else tuple(root)
        return sum(coords[i] for i in self.crossed_index)


def parse_crossing(text: str, datum: CartanDatum) -> ParabolicDatum:
    """``"1,4"`` -> ParabolicDatum crossing nodes 1 and 4."""
    parts = [p.strip() for p in (text or "").split(",") if p.strip()]
    try:
        nodes = tuple(int(p) for p in parts)
    except ValueError:
        raise LieError(f"cannot parse crossing {text!r}; expected e.g. '1,4'") from None
    return ParabolicDatum(datum, nodes)


@dataclass(frozen=True)
class Levi:
    """The Levi factor seen through its simple nodes (0-based).

    ``Levi.full`` treats the whole algebra as its own Levi factor, which is
    handy for checking tensor-product machinery on ordinary irreps.
    """

    datum: CartanDatum
    form: InvariantForm
    nodes: tuple[int, ...]

    @classmethod
    def full(cls, datum: CartanDatum, form: InvariantForm | None = None) -> "Levi":
        return cls(datum, form or invariant_form(datum), tuple(range(datum.rank)))

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        others = [i for i in range(self.datum.rank) if i not in self.nodes]
        return tuple(r for r in self.datum.positive_roots if all(r.coords[i] == 0 for i in others))

    @cached_property
    def rho(self) -> Weight:
        return half_sum(self.datum, self.positive_roots)

    def simple_root_weight(self, i: int) -> Weight:
        return self.datum.root_to_weight(self.datum.simple_root(i).coords)

    def is_dominant(self, v: Weight) -> bool:
        return all(v.coords[i] >= 0 and v.coords[i].denominator == 1 for i in self.nodes)


@dataclass(frozen=True)
class GradingReport:
    parabolic: ParabolicDatum
    form: InvariantForm
    depth: int
    height_of: dict[tuple[int, ...], int] = field(repr=False)
    g_layers: dict[int, tuple[Root, ...]]
    f_star_roots: tuple[Root, ...]
    levi_roots: tuple[Root, ...]
    delta0: Weight

    @property
    def datum(self) -> CartanDatum:
        return self.parabolic.datum

    def grading_functional(self, v: Weight) -> Fraction:
        """Eigenvalue of the grading element on a weight."""
        coords = self.datum.weight_to_root_coords(v)
        return sum((coords[i] for i in self.parabolic.crossed_index), Fraction(0))

    def height(self, root: Root) -> int:
        return self.parabolic.height(root)

    @cached_property
    def levi(self) -> Levi:
        return Levi(self.datum, self.form, self.parabolic.uncrossed_index)

    @cached_property
    def f_star_components(self) -> dict[int, tuple[Root, ...]]:
        """Height-1 roots grouped by the crossed node (1-based) carrying them."""
        out: dict[int, tuple[Root, ...]] = {}
        for node in self.parabolic.crossed:
            out[node] = tuple(r for r in self.f_star_roots if r.coords[node - 1] == 1)
        return out

    def layer_dims(self) -> list[int]:
        return [len(self.g_layers[j]) for j in range(1, self.depth + 1)]


def grading(pd: ParabolicDatum, form: InvariantForm | None = None) -> GradingReport:
    datum = pd.datum
    form = form or invariant_form(datum)
    heights = {r.coords: pd.height(r) for r in datum.positive_roots}
    depth = max(heights.values())
    layers = {j: tuple(r for r in datum.positive_roots if heights[r.coords] == j)
              for j in range(1, depth + 1)}
    levi_roots = tuple(r for r in datum.positive_roots if heights[r.coords] == 0)
    return GradingReport(
        parabolic=pd,
        form=form,
        depth=depth,
        height_of=heights,
        g_layers=layers,
        f_star_roots=layers[1],
        levi_roots=levi_roots,
        delta0=half_sum(datum, levi_roots),
    )


def f_star_roots(report: GradingReport) -> list[Root]:
    return list(report.f_star_roots)


def delta0(report: GradingReport, form: InvariantForm | None = None) -> Weight:
    return report.delta0


def is_p_dominant(v: Weight, report: GradingReport) -> bool:
    if not v.is_integral:
        raise LieError(f"weight {v} is not integral")
    return all(v.coords[i] >= 0 for i in report.parabolic.uncrossed_index)


def geometric_weight(v: Weight, report: GradingReport) -> Fraction:
    return report.grading_functional(v)


@dataclass(frozen=True)
class PDominantWeight:
    weight: Weight
    report: GradingReport = field(repr=False, compare=False)

    def __post_init__(self):
        if not is_p_dominant(self.weight, self.report):
            raise LieError(f"weight {self.weight} is not dominant for p")
