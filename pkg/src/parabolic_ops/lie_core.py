"""Root systems, invariant forms, reflections and Weyl orbits.

Everything is exact: coordinates are ``int`` or :class:`fractions.Fraction`.

Conventions
-----------
* Cartan matrix entries are ``a_ij = 2(alpha_i, alpha_j) / (alpha_j, alpha_j)``,
  so row ``i`` of the matrix is the simple root ``alpha_i`` written in the
  fundamental-weight basis.
* Node numbering follows Bourbaki for A-F. For G2, node 1 is the *long*
  simple root and node 2 the short one.
* Positive roots are listed by height, then by descending coordinates, so
  the simple roots come first and in node order.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

__all__ = [
    "LieError",
    "DynkinParseError",
    "OrbitTooLarge",
    "CartanDatum",
    "Root",
    "Weight",
    "InvariantForm",
    "parse_dynkin",
    "cartan_matrix",
    "positive_roots",
    "invariant_form",
    "delta",
    "reflect",
    "coroot_pairing",
    "weyl_orbit",
    "weyl_group_order",
]

DEFAULT_MAX_RANK = 6


class LieError(ValueError):
    """Base class for invalid Lie-theoretic input."""


class DynkinParseError(LieError):
    pass


class OrbitTooLarge(LieError):
    """A Weyl orbit (or the rank) is beyond the configured cap."""


_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_EXCEPTIONAL = {("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)}


# --------------------------------------------------------------------------
# Cartan data

def _connect(m: list[list[int]], i: int, j: int, aij: int = -1, aji: int = -1) -> None:
    m[i][j] = aij
    m[j][i] = aji


def cartan_matrix(series: str, rank: int) -> tuple[tuple[int, ...], ...]:
    n = rank
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if series in "ABC":
        for i in range(n - 1):
            _connect(m, i, i + 1)
        if series == "B":
            # alpha_n short
            _connect(m, n - 2, n - 1, aij=-2, aji=-1)
        elif series == "C":
            # alpha_n long
            _connect(m, n - 2, n - 1, aij=-1, aji=-2)
    elif series == "D":
        for i in range(n - 2):
            _connect(m, i, i + 1)
        _connect(m, n - 3, n - 1)
    elif series == "E":
        _connect(m, 0, 2)
        _connect(m, 1, 3)
        for i in range(2, n - 1):
            _connect(m, i, i + 1)
    elif series == "F":
        _connect(m, 0, 1)
        _connect(m, 1, 2, aij=-2, aji=-1)
        _connect(m, 2, 3)
    elif series == "G":
        # alpha_1 long, alpha_2 short
        _connect(m, 0, 1, aij=-3, aji=-1)
    else:
        raise DynkinParseError(f"unknown series {series!r}")
    return tuple(tuple(row) for row in m)


def _check_series_rank(series: str, rank: int) -> None:
    if series in _MIN_RANK:
        if rank < _MIN_RANK[series]:
            raise DynkinParseError(
                f"{series}{rank}: rank must be >= {_MIN_RANK[series]} for series {series}")
    elif series in "EFG":
        if (series, rank) not in _EXCEPTIONAL:
            raise DynkinParseError(f"{series}{rank} is not a simple Lie algebra")
    else:
        raise DynkinParseError(f"unknown series {series!r}")


def _solve_exact(matrix: Sequence[Sequence], rhs: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan solve ``matrix @ X = rhs`` over the rationals."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(x) for x in rrow]
           for row, rrow in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _det(matrix: Sequence[Sequence[int]]) -> Fraction:
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


@dataclass(frozen=True)
class CartanDatum:
    series: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    node_labels: tuple[str, ...]

    def __post_init__(self):
        a = self.cartan_matrix
        if len(a) != self.rank or any(len(row) != self.rank for row in a):
            raise LieError("cartan matrix shape does not match rank")
        for i in range(self.rank):
            if a[i][i] != 2:
                raise LieError("cartan matrix diagonal must be 2")
            for j in range(self.rank):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise LieError("invalid off-diagonal cartan entries")

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    @cached_property
    def determinant(self) -> int:
        return int(_det(self.cartan_matrix))

    @cached_property
    def _inverse(self) -> list[list[Fraction]]:
        ident = [[int(i == j) for j in range(self.rank)] for i in range(self.rank)]
        return _solve_exact(self.cartan_matrix, ident)

    @cached_property
    def root_squared_lengths(self) -> tuple[Fraction, ...]:
        """(alpha_i, alpha_i) for each simple root, long roots normalized to 2."""
        a = self.cartan_matrix
        d: list[Fraction | None] = [None] * self.rank
        d[0] = Fraction(1)
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in range(self.rank):
                if a[i][j] != 0 and d[j] is None:
                    # a_ij d_j = a_ji d_i
                    d[j] = Fraction(a[j][i]) * d[i] / a[i][j]
                    queue.append(j)
        if any(x is None for x in d):
            raise LieError("Dynkin diagram is not connected")
        top = max(d)
        return tuple(2 * x / top for x in d)

    @cached_property
    def positive_roots(self) -> tuple["Root", ...]:
        return tuple(_positive_roots(self))

    @cached_property
    def highest_root(self) -> "Root":
        return self.positive_roots[-1]

    def simple_root(self, i: int) -> "Root":
        """Simple root for 0-based node ``i``."""
        return self.positive_roots[i]

    def root_to_weight(self, coords: Sequence) -> "Weight":
        """Simple-root coordinates -> fundamental-weight coordinates."""
        a = self.cartan_matrix
        return Weight(tuple(
            sum((Fraction(coords[i]) * a[i][j] for i in range(self.rank)), Fraction(0))
            for j in range(self.rank)))

    def weight_to_root_coords(self, w: "Weight") -> tuple[Fraction, ...]:
        """Fundamental-weight coordinates -> simple-root coordinates."""
        inv = self._inverse
        return tuple(
            sum((w.coords[i] * inv[i][j] for i in range(self.rank)), Fraction(0))
            for j in range(self.rank))

    def fundamental_weight(self, i: int) -> "Weight":
        return Weight(tuple(Fraction(int(j == i)) for j in range(self.rank)))

    def zero_weight(self) -> "Weight":
        return Weight((Fraction(0),) * self.rank)

    def is_root(self, coords: Sequence[int]) -> bool:
        c = tuple(int(x) for x in coords)
        if all(x <= 0 for x in c):
            c = tuple(-x for x in c)
        return c in self._root_index

    @cached_property
    def _root_index(self) -> dict[tuple[int, ...], int]:
        return {r.coords: n for n, r in enumerate(self.positive_roots)}

    def root_name(self, root: "Root") -> str:
        """Stable label: ``a<n>`` for the n-th positive root, ``-a<n>`` for negatives."""
        if root.coords in self._root_index:
            return f"a{self._root_index[root.coords] + 1}"
        neg = tuple(-x for x in root.coords)
        if neg in self._root_index:
            return f"-a{self._root_index[neg] + 1}"
        raise LieError(f"{root.coords} is not a root of {self.name}")

    def root_by_name(self, name: str) -> "Root":
        m = re.fullmatch(r"(-?)a(\d+)", name.strip())
        if not m or not 1 <= int(m.group(2)) <= len(self.positive_roots):
            raise LieError(f"unknown root label {name!r} for {self.name}")
        root = self.positive_roots[int(m.group(2)) - 1]
        return -root if m.group(1) else root


@dataclass(frozen=True)
class Root:
    coords: tuple[int, ...]
    length_class: str = "long"

    def __post_init__(self):
        if any(x > 0 for x in self.coords) and any(x < 0 for x in self.coords):
            raise LieError(f"mixed-sign root coordinates {self.coords}")

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    @property
    def is_long(self) -> bool:
        return self.length_class == "long"

    def __neg__(self) -> "Root":
        return Root(tuple(-x for x in self.coords), self.length_class)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.coords) + ")"


@dataclass(frozen=True, order=True)
class Weight:
    """A weight in fundamental-weight coordinates."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))

    @classmethod
    def of(cls, *coords) -> "Weight":
        return cls(tuple(coords))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-x for x in self.coords))

    def __mul__(self, c) -> "Weight":
        return Weight(tuple(x * c for x in self.coords))

    __rmul__ = __mul__

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.coords)

    @property
    def is_dominant(self) -> bool:
        return all(x >= 0 for x in self.coords)

    def to_list(self) -> list:
        """JSON-friendly coordinates (ints where possible, else 'p/q' strings)."""
        return [int(x) if x.denominator == 1 else str(x) for x in self.coords]

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.coords) + ")"


def _positive_roots(datum: CartanDatum) -> list[Root]:
    a = datum.cartan_matrix
    n = datum.rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layers = [simple]
    while layers[-1]:
        nxt = set()
        for beta in layers[-1]:
            for i in range(n):
                # alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                pairing = sum(beta[j] * a[j][i] for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= found
        found |= nxt
        layers.append(sorted(nxt))
    lengths = datum.root_squared_lengths
    top = max(lengths)

    def norm2(c):
        return sum(c[i] * c[j] * a[i][j] * lengths[j] / 2 for i in range(n) for j in range(n))

    roots = sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))
    return [Root(c, "long" if norm2(c) == top else "short") for c in roots]


def parse_dynkin(spec: str) -> CartanDatum:
    """Parse ``<letter><rank>`` (e.g. ``G2``, ``a4``) into a :class:`CartanDatum`."""
    m = re.fullmatch(r"\s*([A-Za-z])\s*_?\s*(\d+)\s*", spec or "")
    if not m:
        raise DynkinParseError(f"cannot parse Dynkin type {spec!r}; expected e.g. 'A2', 'G2'")
    series, rank = m.group(1).upper(), int(m.group(2))
    _check_series_rank(series, rank)
    return CartanDatum(
        series=series,
        rank=rank,
        cartan_matrix=cartan_matrix(series, rank),
        node_labels=tuple(f"alpha_{i + 1}" for i in range(rank)),
    )


def positive_roots(datum: CartanDatum) -> list[Root]:
    return list(datum.positive_roots)


# --------------------------------------------------------------------------
# Invariant form

@dataclass(frozen=True)
class InvariantForm:
    """Invariant bilinear form, stored as its Gram matrix on simple roots.

    With ``scale == 1`` long roots have squared length 2. Any nonzero
    rational scale is allowed, negative ones included.
    """

    datum: CartanDatum
    gram: tuple[tuple[Fraction, ...], ...]
    scale: Fraction

    def pair_roots(self, x: Sequence, y: Sequence) -> Fraction:
        g = self.gram
        n = self.datum.rank
        return sum((Fraction(x[i]) * g[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j]),
                   Fraction(0))

    def pair_weight_root(self, v: Weight, root_coords: Sequence) -> Fraction:
        # (omega_i, alpha_j) = delta_ij |alpha_j|^2 / 2
        g = self.gram
        return sum((v.coords[j] * Fraction(root_coords[j]) * g[j][j] / 2
                    for j in range(self.datum.rank) if root_coords[j]), Fraction(0))

    def pair(self, v: Weight, w: Weight) -> Fraction:
        return self.pair_weight_root(v, self.datum.weight_to_root_coords(w))

    def norm2(self, v: Weight) -> Fraction:
        return self.pair(v, v)

    def root_norm2(self, root: Root | Sequence) -> Fraction:
        c = root.coords if isinstance(root, Root) else root
        return self.pair_roots(c, c)

    @property
    def long_root_norm2(self) -> Fraction:
        return 2 * self.scale

    def rescaled(self, factor) -> "InvariantForm":
        return invariant_form(self.datum, self.scale * Fraction(factor))


def invariant_form(datum: CartanDatum, scale=1) -> InvariantForm:
    scale = Fraction(scale)
    if scale == 0:
        raise LieError("invariant form scale must be nonzero")
    a = datum.cartan_matrix
    d = datum.root_squared_lengths
    n = datum.rank
    gram = tuple(tuple(scale * a[i][j] * d[j] / 2 for j in range(n)) for i in range(n))
    return InvariantForm(datum, gram, scale)


def delta(datum: CartanDatum) -> Weight:
    """Half the sum of the positive roots, i.e. the sum of fundamental weights."""
    return Weight((Fraction(1),) * datum.rank)


def half_sum(datum: CartanDatum, roots: Iterable[Root]) -> Weight:
    total = [0] * datum.rank
    for r in roots:
        total = [t + c for t, c in zip(total, r.coords)]
    return datum.root_to_weight([Fraction(t, 2) for t in total])


def _require_root(alpha: Root, form: InvariantForm) -> None:
    if not form.datum.is_root(alpha.coords):
        raise LieError(f"{alpha.coords} is not a root of {form.datum.name}")


def coroot_pairing(v: Weight, alpha: Root, form: InvariantForm) -> Fraction:
    """(v, alpha^vee) = 2(v, alpha)/(alpha, alpha); independent of the scale."""
    _require_root(alpha, form)
    return 2 * form.pair_weight_root(v, alpha.coords) / form.root_norm2(alpha)


def reflect(v: Weight, alpha: Root, form: InvariantForm) -> Weight:
    """sigma_alpha(v) = v - (v, alpha^vee) alpha."""
    k = coroot_pairing(v, alpha, form)
    return v - form.datum.root_to_weight(alpha.coords) * k


def simple_reflection(v: Weight, i: int, datum: CartanDatum) -> Weight:
    """Reflection in the 0-based simple root ``i``; needs no form."""
    c = v.coords[i]
    if c == 0:
        return v
    row = datum.cartan_matrix[i]
    return Weight(tuple(x - c * row[j] for j, x in enumerate(v.coords)))


def weyl_orbit(v: Weight, datum: CartanDatum, form: InvariantForm | None = None,
               cap: int = 100_000, nodes: Iterable[int] | None = None,
               max_rank: int = DEFAULT_MAX_RANK) -> list[Weight]:
    """Orbit of ``v`` under the Weyl group (or the parabolic subgroup on ``nodes``).

    ``nodes`` are 0-based simple-root indices; the default is all of them.
    The result is sorted. ``form`` is accepted for signature symmetry; the
    orbit does not depend on it.
    """
    if datum.rank > max_rank:
        raise OrbitTooLarge(f"rank {datum.rank} exceeds Weyl enumeration bound {max_rank}")
    gens = list(range(datum.rank)) if nodes is None else list(nodes)
    seen = {v}
    queue = deque([v])
    while queue:
        w = queue.popleft()
        for i in gens:
            u = simple_reflection(w, i, datum)
            if u not in seen:
                seen.add(u)
                if len(seen) > cap:
                    raise OrbitTooLarge(f"Weyl orbit exceeds cap {cap}")
                queue.append(u)
    return sorted(seen)


def weyl_group_order(datum: CartanDatum) -> int:
    r = datum.rank
    s = datum.series
    if s == "A":
        return factorial(r + 1)
    if s in "BC":
        return 2 ** r * factorial(r)
    if s == "D":
        return 2 ** (r - 1) * factorial(r)
    return {("G", 2): 12, ("F", 4): 1152, ("E", 6): 51840,
            ("E", 7): 2903040, ("E", 8): 696729600}[(s, r)]
