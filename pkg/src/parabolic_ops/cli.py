"""Command-line front end.

Usage::

    parabolic-ops roots    --algebra G2
    parabolic-ops grading  --algebra A4 --cross 1,4
    parabolic-ops classify --algebra A1 --cross 1 --weight -3 [--alpha a1]
    parabolic-ops hasse    --algebra G2 --cross 1,2 --weight 0,0 --format dot
    parabolic-ops expand   --order 4 [--format latex]
    parabolic-ops casimir  --algebra A2 --cross 1 --weight 0,1 [--target ..] [--alpha a1]

Algebra specs are ``<letter><rank>``: A_r (r>=1), B_r (r>=2), C_r (r>=3),
D_r (r>=4), E6-E8, F4, G2. Nodes are numbered 1..r in Bourbaki order; for
G2 node 1 is the long simple root. ``--cross`` takes comma-separated node
numbers; ``--weight`` takes comma-separated integer coordinates in the
fundamental-weight basis (``--weight -3,1`` works, as does ``--weight=-3,1``).
Roots are named ``a1, a2, ...`` in the order printed by ``roots``.

Defaults: ``--scale 1`` (long roots have squared length 2), ``--format
text``, ``--weyl-cap 100000``, ``--order-cap 32``. ``--config FILE`` reads
``key = value`` lines using the same names as the flags (``weyl-cap`` or
``weyl_cap``); explicit flags win.

Exit codes: 0 success, 1 internal assertion failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .classifier import Classification, HasseGraph, classify_all, classify_pair, hasse_graph
from .lie_core import (
    CartanDatum,
    LieError,
    Weight,
    coroot_pairing,
    delta,
    invariant_form,
    parse_dynkin,
)
from .module_theory import casimir_scalar, gamma_coefficient, psi_eigenvalue, psi_spectrum
from .parabolic import GradingReport, grading, parse_crossing
from .render import hasse_to_dot
from .symbolic import DEFAULT_ORDER_CAP, OrderCapExceeded, expand_Dk, render

FORMATS = ("text", "json", "dot", "latex")
_VALUE_FLAGS = {"--algebra", "--cross", "--weight", "--target", "--scale", "--alpha",
                "--order", "--format", "--weyl-cap", "--order-cap", "--config"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    algebra: str | None = None
    crossing: str | None = None
    weight: str | None = None
    target: str | None = None
    alpha: str | None = None
    order: int | None = None
    form_scale: Fraction = Fraction(1)
    output_format: str = "text"
    weyl_cap: int = 100_000
    order_cap: int = DEFAULT_ORDER_CAP


def _num(x: Fraction):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def parse_weight(text: str | None, datum: CartanDatum) -> Weight:
    if text is None:
        raise UsageError("--weight is required")
    try:
        coords = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"cannot parse weight {text!r}; expected comma-separated integers") from None
    if len(coords) != datum.rank:
        raise UsageError(f"weight {text!r} needs {datum.rank} coordinates for {datum.name}")
    return Weight(tuple(coords))


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="Dynkin type, e.g. G2, A4")
    common.add_argument("--cross", dest="crossing", help="crossed nodes, e.g. 1,4")
    common.add_argument("--weight", help="fundamental-basis integer coordinates, e.g. -3,1")
    common.add_argument("--scale", default=None, help="invariant form scale (rational, nonzero)")
    common.add_argument("--format", dest="output_format", choices=FORMATS, default=None)
    common.add_argument("--json", dest="as_json", action="store_true", help="shorthand for --format json")
    common.add_argument("--weyl-cap", type=int, default=None)
    common.add_argument("--order-cap", type=int, default=None)
    common.add_argument("--config", help="key=value file mirroring the flags")

    parser = argparse.ArgumentParser(prog="parabolic-ops", description=__doc__.split("\n")[0],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("roots", parents=[common], help="positive roots")
    sub.add_parser("grading", parents=[common], help="grading induced by a crossing")
    p = sub.add_parser("classify", parents=[common], help="standard operators from a weight")
    p.add_argument("--alpha", help="restrict to one root label (a1, a2, ...)")
    sub.add_parser("hasse", parents=[common], help="labelled BGG Hasse graph")
    p = sub.add_parser("expand", parents=[common], help="universal formula D_k")
    p.add_argument("--order", type=int, required=False)
    p = sub.add_parser("casimir", parents=[common], help="Casimir / Psi / Gamma eigenvalues")
    p.add_argument("--target", help="second weight for a single Psi eigenvalue")
    p.add_argument("--alpha", help="root label for the Gamma-coefficient ladder")
    return parser


def _normalize_argv(argv: list[str]) -> list[str]:
    # let values such as "-3,1" follow their flag
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def _read_config(path: str) -> dict[str, str]:
    cp = configparser.ConfigParser()
    try:
        with open(path) as fh:
            cp.read_string("[run]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from None
    known = {"algebra", "cross", "weight", "target", "alpha", "order", "scale", "format",
             "weyl_cap", "order_cap"}
    out = {}
    for key, val in cp["run"].items():
        key = key.replace("-", "_")
        if key not in known:
            raise UsageError(f"unknown config key {key!r}")
        out[key] = val.strip()
    return out


def make_config(ns: argparse.Namespace) -> RunConfig:
    conf = _read_config(ns.config) if ns.config else {}

    def pick(attr, key):
        val = getattr(ns, attr, None)
        return val if val is not None else conf.get(key)

    fmt = "json" if ns.as_json else (pick("output_format", "format") or "text")
    if fmt not in FORMATS:
        raise UsageError(f"unknown format {fmt!r}")
    try:
        scale = Fraction(pick("scale", "scale") or 1)
        order = pick("order", "order")
        order = int(order) if order is not None else None
        weyl_cap = int(pick("weyl_cap", "weyl_cap") or 100_000)
        order_cap = int(pick("order_cap", "order_cap") or DEFAULT_ORDER_CAP)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    if scale == 0:
        raise UsageError("--scale must be nonzero")
    return RunConfig(
        command=ns.command,
        algebra=pick("algebra", "algebra"),
        crossing=pick("crossing", "cross"),
        weight=pick("weight", "weight"),
        target=pick("target", "target"),
        alpha=pick("alpha", "alpha"),
        order=order,
        form_scale=scale,
        output_format=fmt,
        weyl_cap=weyl_cap,
        order_cap=order_cap,
    )


# --------------------------------------------------------------------------
# commands

def _datum(cfg: RunConfig) -> CartanDatum:
    if not cfg.algebra:
        raise UsageError("--algebra is required")
    return parse_dynkin(cfg.algebra)


def _report(cfg: RunConfig) -> GradingReport:
    datum = _datum(cfg)
    if cfg.crossing is None:
        raise UsageError("--cross is required")
    return grading(parse_crossing(cfg.crossing, datum), invariant_form(datum, cfg.form_scale))


def _check_format(cfg: RunConfig, allowed: tuple[str, ...]) -> None:
    if cfg.output_format not in allowed:
        raise UsageError(f"{cfg.command} supports --format {', '.join(allowed)}")


def _root_json(datum, root, form=None) -> dict:
    d = {"name": datum.root_name(root), "coords": list(root.coords), "height": root.height,
         "length": root.length_class}
    if form is not None:
        d["norm2"] = _num(form.root_norm2(root))
    return d


def cmd_roots(cfg: RunConfig) -> str:
    _check_format(cfg, ("text", "json"))
    datum = _datum(cfg)
    form = invariant_form(datum, cfg.form_scale)
    roots = datum.positive_roots
    if cfg.output_format == "json":
        return json.dumps({"algebra": datum.name, "cartan_matrix": [list(r) for r in datum.cartan_matrix],
                           "roots": [_root_json(datum, r, form) for r in roots]}, sort_keys=True)
    lines = [f"{datum.name}: {len(roots)} positive roots (simple-root coordinates)"]
    for r in roots:
        expr = " + ".join((f"{c}*alpha_{i + 1}" if c > 1 else f"alpha_{i + 1}")
                          for i, c in enumerate(r.coords) if c)
        lines.append(f"{datum.root_name(r):>4}  {str(r):<16} height {r.height:<2} {r.length_class:<5} "
                     f"|a|^2={form.root_norm2(r)}  = {expr}")
    return "\n".join(lines)


def cmd_grading(cfg: RunConfig) -> str:
    _check_format(cfg, ("text", "json"))
    rep = _report(cfg)
    datum = rep.datum
    names = lambda roots: [datum.root_name(r) for r in roots]  # noqa: E731
    if cfg.output_format == "json":
        return json.dumps({
            "algebra": datum.name,
            "crossed": list(rep.parabolic.crossed),
            "depth": rep.depth,
            "layer_dims": rep.layer_dims(),
            "layers": {str(j): [_root_json(datum, r) for r in rs] for j, rs in rep.g_layers.items()},
            "f_star_components": {str(n): names(rs) for n, rs in rep.f_star_components.items()},
            "levi_roots": [_root_json(datum, r) for r in rep.levi_roots],
            "delta0": rep.delta0.to_list(),
        }, sort_keys=True)
    lines = [f"{datum.name} crossed {{{','.join(map(str, rep.parabolic.crossed))}}}: depth {rep.depth}",
             f"layer dims: {rep.layer_dims()}"]
    for j, rs in rep.g_layers.items():
        lines.append(f"g_{j}: " + ", ".join(f"{datum.root_name(r)}{r}" for r in rs))
    for n, rs in rep.f_star_components.items():
        lines.append(f"f*_{n} (dim {len(rs)}): " + ", ".join(names(rs)))
    lines.append("levi roots: " + (", ".join(f"{datum.root_name(r)}{r}" for r in rep.levi_roots) or "none"))
    lines.append(f"delta0: {rep.delta0}")
    return "\n".join(lines)


def _classification_json(datum, c: Classification) -> dict:
    d = {"direction": datum.root_name(c.direction), "direction_coords": list(c.direction.coords),
         "exists": bool(c)}
    if c:
        desc = c.descriptor
        d.update(source=desc.source.to_list(), target=desc.target.to_list(), order=desc.order,
                 constructed=desc.constructed, eigen_ladder=[_num(x) for x in desc.eigen_ladder])
    else:
        d["reason"] = c.reason.value
        if c.order is not None:
            d["order"] = _num(c.order)
    return d


def cmd_classify(cfg: RunConfig) -> str:
    _check_format(cfg, ("text", "json"))
    rep = _report(cfg)
    datum = rep.datum
    lam = parse_weight(cfg.weight, datum)
    if cfg.alpha:
        results = [classify_pair(lam, datum.root_by_name(cfg.alpha), rep)]
    else:
        results = classify_all(lam, rep)
    if cfg.output_format == "json":
        return json.dumps({"algebra": datum.name, "crossed": list(rep.parabolic.crossed),
                           "source": lam.to_list(), "scale": _num(rep.form.scale),
                           "results": [_classification_json(datum, c) for c in results]}, sort_keys=True)
    lines = [f"source {lam} on {datum.name} crossed {{{','.join(map(str, rep.parabolic.crossed))}}}"]
    for c in results:
        name = f"{datum.root_name(c.direction)}{c.direction}"
        if c:
            d = c.descriptor
            ladder = ", ".join(str(x) for x in d.eigen_ladder)
            lines.append(f"{name}: order {d.order} operator {d.source} -> {d.target}  ladder [{ladder}]")
        else:
            lines.append(f"{name}: rejected ({c.reason.value})")
    return "\n".join(lines)


def hasse_json(g: HasseGraph) -> dict:
    datum = g.report.datum
    return {
        "algebra": datum.name,
        "crossed": list(g.report.parabolic.crossed),
        "seed": g.seed.to_list(),
        "vertices": [{"id": i, "weight": v.weight.to_list(), "length": v.length}
                     for i, v in enumerate(g.vertices)],
        "edges": [{"from": e.source, "to": e.target, "label": datum.root_name(e.label),
                   "label_coords": list(e.label.coords), "order": e.order,
                   "constructed": e.constructed, "style": e.style, "note": e.note} for e in g.edges],
    }


def cmd_hasse(cfg: RunConfig) -> str:
    _check_format(cfg, ("text", "json", "dot"))
    rep = _report(cfg)
    seed = parse_weight(cfg.weight if cfg.weight is not None else ",".join(["0"] * rep.datum.rank), rep.datum)
    g = hasse_graph(seed, rep, cap=cfg.weyl_cap)
    if cfg.output_format == "dot":
        return hasse_to_dot(g)
    if cfg.output_format == "json":
        return json.dumps(hasse_json(g), sort_keys=True)
    datum = rep.datum
    lines = [f"{len(g.vertices)} vertices, level sizes {g.level_sizes()}"]
    for i, v in enumerate(g.vertices):
        lines.append(f"  v{i}: {v.weight}  length {v.length}")
    for e in g.edges:
        mark = "==>" if e.constructed else "..>"
        extra = f" ({e.note})" if e.note else ""
        lines.append(f"  v{e.source} {mark} v{e.target}  {datum.root_name(e.label)} order {e.order}{extra}")
    return "\n".join(lines)


def cmd_expand(cfg: RunConfig) -> str:
    _check_format(cfg, ("text", "json", "latex"))
    if cfg.order is None:
        raise UsageError("--order is required")
    try:
        f = expand_Dk(cfg.order, cap=cfg.order_cap)
    except (OrderCapExceeded, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return render(f, cfg.output_format)


def cmd_casimir(cfg: RunConfig) -> str:
    _check_format(cfg, ("text", "json"))
    rep = _report(cfg)
    datum = rep.datum
    form = rep.form
    lam = parse_weight(cfg.weight, datum)
    out = {"algebra": datum.name, "crossed": list(rep.parabolic.crossed), "source": lam.to_list(),
           "scale": _num(form.scale), "casimir": _num(casimir_scalar(lam, rep, form)), "spectra": []}
    for node in rep.parabolic.crossed:
        sp = psi_spectrum(lam, node, rep, form)
        out["spectra"].append({"component": node, "entries": [
            {"highest_weight": c.highest_weight.to_list(), "multiplicity": c.multiplicity,
             "eigenvalue": _num(e)} for c, e in sp.entries]})
    if cfg.target:
        out["psi"] = _num(psi_eigenvalue(lam, parse_weight(cfg.target, datum), form))
    if cfg.alpha:
        alpha = datum.root_by_name(cfg.alpha)
        k = -coroot_pairing(lam + delta(datum), alpha, form)
        steps = int(k) if k.denominator == 1 and k > 0 else 0
        out["gamma"] = {"direction": cfg.alpha, "k": _num(k),
                        "ladder": [_num(gamma_coefficient(lam, alpha, j, form)) for j in range(1, steps + 1)]}
    if cfg.output_format == "json":
        return json.dumps(out, sort_keys=True)
    lines = [f"Casimir on V{lam}: {out['casimir']}"]
    for sp in out["spectra"]:
        lines.append(f"f*_{sp['component']} x V{lam}:")
        for e in sp["entries"]:
            hw = "(" + ",".join(map(str, e["highest_weight"])) + ")"
            lines.append(f"  {hw}  c = {e['eigenvalue']}")
    if "psi" in out:
        lines.append(f"psi({lam} -> {cfg.target}) = {out['psi']}")
    if "gamma" in out:
        g = out["gamma"]
        lines.append(f"gamma ladder along {g['direction']} (k = {g['k']}): {g['ladder']}")
    return "\n".join(lines)


COMMANDS = {
    "roots": cmd_roots,
    "grading": cmd_grading,
    "classify": cmd_classify,
    "hasse": cmd_hasse,
    "expand": cmd_expand,
    "casimir": cmd_casimir,
}


def run(argv: list[str] | None = None) -> tuple[int, str, str]:
    """Run a command and return ``(exit_code, stdout, stderr)`` without exiting."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        ns = parser.parse_args(_normalize_argv(argv))
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    try:
        cfg = make_config(ns)
        return 0, COMMANDS[cfg.command](cfg), ""
    except (UsageError, LieError) as exc:
        return 2, "", f"error: {exc}"
    except AssertionError as exc:
        return 1, "", f"internal check failed: {exc}"


def main(argv: list[str] | None = None) -> int:
    code, out, err = run(argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
