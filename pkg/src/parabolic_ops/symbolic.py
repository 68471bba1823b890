"""Universal Ricci-corrected formulae as integer-weighted words in D and Gamma.

A term of order k is stored as the composition ``(a0, a1, ..., am)``, read as

    D^a0 ( G D^a1 ( G ... ( G D^am s ) ... ))

with ``sum(a) + 2 m == k``. Operators are built by the recurrence

    D_{k,j+1} = D o D_{k,j} + j (k - j) G (x) D_{k,j-1},
    D_{k,0} = s,  D_{k,1} = D s,

where prepending D bumps ``a0`` and tensoring with G prepends a zero.
"""

from __future__ import annotations

import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

__all__ = [
    "OrderCapExceeded",
    "FormulaTerm",
    "UniversalFormula",
    "expand_Dk",
    "partial_operator",
    "render",
    "parse_json",
    "parse_text",
    "linear_coefficient",
    "factorization_check",
    "FactorWitness",
    "summed_form",
    "summed_form_check",
    "leibniz_expand",
    "render_expanded",
]

DEFAULT_ORDER_CAP = 32
GAMMA_SEMANTICS = "G = -(1/2)|alpha|^2 r^D (G = r^D when -(1/2)|alpha_long|^2 = 1)"


class OrderCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class FormulaTerm:
    coefficient: int
    word: tuple[int, ...]

    @property
    def gamma_degree(self) -> int:
        return len(self.word) - 1

    @property
    def order(self) -> int:
        return sum(self.word) + 2 * self.gamma_degree


def _term_key(word: tuple[int, ...]):
    return (len(word), word[::-1])


@dataclass(frozen=True)
class UniversalFormula:
    order: int
    terms: tuple[FormulaTerm, ...]
    gamma_semantics: str = field(default=GAMMA_SEMANTICS, compare=False)

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return {t.word: t.coefficient for t in self.terms}

    def coefficient(self, word) -> int:
        return self.as_dict().get(tuple(word), 0)

    @classmethod
    def from_counter(cls, order: int, coeffs) -> "UniversalFormula":
        terms = tuple(FormulaTerm(c, w) for w, c in sorted(coeffs.items(), key=lambda kv: _term_key(kv[0]))
                      if c)
        return cls(order, terms)


def _check_cap(k: int, cap: int) -> None:
    if k < 0:
        raise ValueError("order must be nonnegative")
    if k > cap:
        raise OrderCapExceeded(f"order {k} exceeds cap {cap}")


@lru_cache(maxsize=None)
def _partial(k: int, j: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    if j == 0:
        return (((0,), 1),)
    if j == 1:
        return (((1,), 1),)
    out: Counter = Counter()
    for word, c in _partial(k, j - 1):
        out[(word[0] + 1,) + word[1:]] += c
    w = (j - 1) * (k - j + 1)
    if w:
        for word, c in _partial(k, j - 2):
            out[(0,) + word] += w * c
    return tuple(sorted(out.items()))


def partial_operator(k: int, j: int, cap: int = DEFAULT_ORDER_CAP) -> dict[tuple[int, ...], int]:
    """Terms of D_{k,j}, an operator of order j."""
    _check_cap(k, cap)
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    return dict(_partial(k, j))


def expand_Dk(k: int, cap: int = DEFAULT_ORDER_CAP) -> UniversalFormula:
    _check_cap(k, cap)
    return UniversalFormula.from_counter(k, dict(_partial(k, k)))


# --------------------------------------------------------------------------
# rendering

def _dpow(a: int, latex: bool) -> str:
    if a == 0:
        return ""
    if a == 1:
        return "D"
    return f"D^{{{a}}}" if latex else f"D^{a}"


def _gpow(n: int, latex: bool) -> str:
    g = r"\Gamma" if latex else "G"
    return g if n == 1 else (f"{g}^{{{n}}}" if latex else f"{g}^{n}")


def _word_text(word: tuple[int, ...], latex: bool = False) -> str:
    # innermost: D^am s
    a = word[-1]
    if a == 0:
        expr = "s"
    elif a == 1:
        expr = "Ds"
    else:
        expr = f"D^{{{a}}}s" if latex else f"D^{a} s"
    i = len(word) - 2
    while i >= 0:
        n = 1
        while i > 0 and word[i] == 0:
            n += 1
            i -= 1
        expr = f"{_gpow(n, latex)} {expr}"
        if word[i]:
            expr = f"{_dpow(word[i], latex)}({expr})"
        i -= 1
    return expr


def _with_coeff(c: int, body: str, latex: bool) -> str:
    if c == 1:
        return body
    return f"{c}{body}" if latex else f"{c} {body}"


def render(f: UniversalFormula, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps({"order": f.order,
                           "terms": [{"coeff": t.coefficient, "word": list(t.word)} for t in f.terms]},
                          sort_keys=True)
    if fmt == "text":
        return " + ".join(_with_coeff(t.coefficient, _word_text(t.word), False) for t in f.terms)
    if fmt == "latex":
        groups = defaultdict(list)
        for t in f.terms:
            groups[t.gamma_degree].append(_with_coeff(t.coefficient, _word_text(t.word, True), True))
        # D^k s shares the first line with the linear terms
        groups[1] = groups.pop(0) + groups.get(1, [])
        lines = [" + ".join(groups[g]) for g in sorted(groups)]
        head = rf"\mathcal{{D}}_{{{f.order}}}s &= {lines[0]}"
        return " \\\\\n".join([head] + [rf"&\quad + {ln}" for ln in lines[1:]])
    raise ValueError(f"unknown format {fmt!r}")


def parse_json(text: str) -> UniversalFormula:
    data = json.loads(text)
    coeffs = {tuple(int(x) for x in t["word"]): int(t["coeff"]) for t in data["terms"]}
    f = UniversalFormula.from_counter(int(data["order"]), coeffs)
    if any(t.order != f.order for t in f.terms):
        raise ValueError("term order does not match formula order")
    return f


_TOKEN = re.compile(r"\s*(D\^\d+|D|G\^\d+|G|s|\(|\))")


def _parse_word(text: str) -> tuple[int, ...]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse term {text!r} at {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    word = [0]
    for tok in tokens:
        if tok.startswith("D"):
            word[-1] += int(tok[2:]) if "^" in tok else 1
        elif tok.startswith("G"):
            for _ in range(int(tok[2:]) if "^" in tok else 1):
                word.append(0)
    return tuple(word)


def parse_text(text: str, order: int | None = None) -> UniversalFormula:
    """Inverse of ``render(f, "text")``; also reads the plain-text tables in the docs."""
    coeffs: Counter = Counter()
    for chunk in re.split(r"\s\+\s", text.strip()):
        m = re.fullmatch(r"\s*(\d+)?\s*(.*?)\s*", chunk)
        c = int(m.group(1)) if m.group(1) else 1
        coeffs[_parse_word(m.group(2))] += c
    words = list(coeffs)
    k = order if order is not None else sum(words[0]) + 2 * (len(words[0]) - 1)
    return UniversalFormula.from_counter(k, coeffs)


# --------------------------------------------------------------------------
# structural checks

def _inner_orders(word: tuple[int, ...]) -> list[int]:
    """Order of the operand each G multiplies, innermost G first."""
    out = []
    acc = word[-1]
    for i in range(len(word) - 2, -1, -1):
        out.append(acc)
        acc += 2 + word[i]
    return out


def linear_coefficient(k: int, inner: int) -> int:
    """Coefficient of D^(k-2-inner)(G D^inner s) in D_k."""
    return expand_Dk(k).coefficient((k - 2 - inner, inner))


@dataclass(frozen=True)
class FactorWitness:
    term: FormulaTerm
    factors: tuple[int, ...]

    @property
    def holds(self) -> bool:
        prod = 1
        for x in self.factors:
            prod *= x
        return prod == self.term.coefficient


def factorization_check(k: int, cap: int = DEFAULT_ORDER_CAP) -> list[FactorWitness]:
    """Split every multi-G term of D_k into linear terms and compare coefficients.

    Raises AssertionError if any coefficient is not the product of the
    linear coefficients with G in the same positions.
    """
    if k < 2:
        raise ValueError("factorization needs k >= 2")
    f = expand_Dk(k, cap)
    out = []
    for t in f.terms:
        if t.gamma_degree < 2:
            continue
        w = FactorWitness(t, tuple(linear_coefficient(k, o) for o in _inner_orders(t.word)))
        assert w.holds, f"factorization fails for {t}: {w.factors}"
        out.append(w)
    return out


def summed_form(k: int) -> list[tuple[tuple[int, ...], int]]:
    """Uncollapsed terms from summing over G-insertion positions.

    For l insertions there are m = k - l slots; slots ``i_1 < ... < i_l``
    (counted from the inside) carry G, the rest carry D. A G whose operand
    has order o gets the weight (o + 1)(k - o - 1).
    """
    out = []
    for n_g in range(k // 2 + 1):
        m = k - n_g
        for positions in combinations(range(1, m + 1), n_g):
            pos = set(positions)
            word = [0]
            weight = 1
            order = 0
            for slot in range(1, m + 1):
                if slot in pos:
                    weight *= (order + 1) * (k - order - 1)
                    order += 2
                    word.append(0)
                else:
                    order += 1
                    word[-1] += 1
            out.append((tuple(reversed(word)), weight))
    return out


def summed_form_check(k: int, cap: int = DEFAULT_ORDER_CAP) -> bool:
    _check_cap(k, cap)
    agg: Counter = Counter()
    for word, w in summed_form(k):
        agg[word] += w
    return UniversalFormula.from_counter(k, agg).as_dict() == expand_Dk(k, cap).as_dict()


# --------------------------------------------------------------------------
# product-rule expansion

def _leibniz_word(word: tuple[int, ...]) -> Counter:
    """Expand one nested word into factor words (p_1, ..., p_m, q).

    Each entry p_i means the factor (D^p_i G); q is the trailing D^q s.
    """
    acc: Counter = Counter({(word[-1],): 1})
    for a in reversed(word[:-1]):
        acc = Counter({(0,) + w: c for w, c in acc.items()})
        for _ in range(a):
            nxt: Counter = Counter()
            for w, c in acc.items():
                for slot in range(len(w)):
                    nxt[w[:slot] + (w[slot] + 1,) + w[slot + 1:]] += c
            acc = nxt
    return acc


def leibniz_expand(f: UniversalFormula) -> dict[tuple[int, ...], int]:
    out: Counter = Counter()
    for t in f.terms:
        for w, c in _leibniz_word(t.word).items():
            out[w] += c * t.coefficient
    return dict(sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0][::-1])))


def render_expanded(terms: dict[tuple[int, ...], int]) -> str:
    parts = []
    for w, c in terms.items():
        factors = []
        for p in w[:-1]:
            factors.append("G" if p == 0 else f"({_dpow(p, False)}G)")
        q = w[-1]
        factors.append("s" if q == 0 else ("Ds" if q == 1 else f"D^{q} s"))
        parts.append(_with_coeff(c, " ".join(factors), False))
    return " + ".join(parts)
