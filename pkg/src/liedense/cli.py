"""Command-line front end: every pipeline as a reproducible CSV or JSON table.

Exit codes: 0 on success, 2 on invalid input, 3 when a resource guard trips.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .demushkin import (
    CASES,
    demushkin_lie_dims,
    demushkin_w,
    enveloping_dims,
    fg_subalgebra_density_profile,
    make_presentation,
    quotient_dims_bruteforce,
)
from .density import (
    DensityReport,
    density_report,
    fg_density_report,
    greedy_construct,
    ideal_density_report,
)
from .errors import LiedenseError, ResourceError, ValidationError
from .hallbasis import Mode, closure, free_lie_basis, gradedify, parse_expr
from .propp import (
    DEFAULT_BIT_BUDGET,
    ProductSpec,
    SubgroupSelection,
    frattini_growth_free,
    normal_spectrum,
    product_hdim_estimate,
    zassenhaus_log_indices,
)
from .witt import (
    DimSeq,
    GenProfile,
    free_graded_lie_dims,
    restricted_dims,
    restricted_from_ordinary,
    witt_dims,
)

__all__ = ["main", "run", "build_parser", "Table"]


@dataclass
class Table:
    """Rows for CSV output plus extra fields that only JSON carries."""

    columns: list[str]
    rows: list[list[Any]]
    extra: dict[str, Any] = field(default_factory=dict)
    json_override: Any = None


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_csv(t: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(t.columns)
    for row in t.rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def render_json(t: Table) -> str:
    if t.json_override is not None:
        doc = t.json_override
    else:
        doc = {"columns": t.columns, "rows": [dict(zip(t.columns, row)) for row in t.rows], **t.extra}
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _q(x: Fraction) -> list[Any]:
    return [x.numerator, x.denominator, float(x)]


def _dims_table(seq: DimSeq, start: int = 1, name: str = "dim") -> Table:
    return Table(["n", name], [[n, v] for n, v in enumerate(seq, start=start)])


def _ratio_table(rep: DensityReport, index: str = "n") -> Table:
    rows = []
    for n in range(1, rep.horizon + 1):
        rows.append([n, rep.sub_dims[n], rep.amb_dims[n], *_q(rep.ratio(n))])
    return Table([index, "sub", "amb", "num", "den", "ratio_f64"], rows, {"report": rep.to_dict()})


def _read_gens(args: argparse.Namespace) -> list:
    gens = list(args.gen or [])
    if args.gens_file:
        try:
            data = json.loads(Path(args.gens_file).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read generator file: {exc}") from None
        if not isinstance(data, list) or not all(isinstance(g, str) for g in data):
            raise ValidationError("generator file must be a JSON array of expression strings")
        gens.extend(data)
    if not gens:
        raise ValidationError("no generators given; use --gen EXPR (repeatable) or --gens-file")
    return [parse_expr(g, p=args.p, d=args.d) for g in gens]


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise ValidationError("missing required flag(s): " + ", ".join("--" + m for m in missing))


# --------------------------------------------------------------------------
# handlers


def cmd_witt(args) -> Table:
    _need(args, "d", "max-n")
    return _dims_table(witt_dims(args.d, args.max_n))


def cmd_restricted(args) -> Table:
    _need(args, "d", "max-n")
    return _dims_table(restricted_dims(args.d, args.p, args.max_n))


def cmd_genwitt(args) -> Table:
    _need(args, "gens", "max-n")
    profile = GenProfile.parse(args.gens)
    w = free_graded_lie_dims(profile, args.max_n)
    c = restricted_from_ordinary(w, args.p)
    rows = [[n, w[n], c[n]] for n in range(1, args.max_n + 1)]
    return Table(["n", "dim", "restricted_dim"], rows, {"profile": str(profile), "p": args.p})


def cmd_demushkin_dims(args) -> Table:
    _need(args, "d", "max-n")
    w = demushkin_w(args.d, args.max_n)
    c = demushkin_lie_dims(args.d, args.p, args.max_n)
    return Table(["n", "dim", "w"], [[n, c[n], w[n]] for n in range(1, args.max_n + 1)])


def cmd_demushkin_enveloping(args) -> Table:
    _need(args, "d", "max-n")
    return Table(["n", "a_n"], [[n, a] for n, a in enumerate(enveloping_dims(args.d, args.max_n))])


_CATALOG_COLS = ["d", "p", "f", "case", "group_relator", "graded_relator"]


def cmd_demushkin_catalog(args) -> Table:
    _need(args, "d")
    f = args.f if args.f is not None else "inf"
    if args.case:
        pres = [make_presentation(args.d, args.p, f, args.case)]
    else:
        pres = []
        for case in CASES:
            try:
                pres.append(make_presentation(args.d, args.p, f, case))
            except ValidationError:
                continue
        if not pres:
            raise ValidationError(f"no case admits d={args.d}, p={args.p}, f={f}")
    docs = [p.to_dict() for p in pres]
    table = Table(_CATALOG_COLS, [[doc[c] for c in _CATALOG_COLS] for doc in docs])
    table.json_override = docs[0] if args.case else {"presentations": docs}
    return table


def cmd_demushkin_verify(args) -> Table:
    _need(args, "d", "case", "max-n")
    pres = make_presentation(args.d, args.p, args.f if args.f is not None else "inf", args.case)
    chk = quotient_dims_bruteforce(pres, args.max_n, force=args.force)
    rows = [[0, None, None, None, chk.assoc_dims[0], chk.expected_assoc[0]]]
    for n in range(1, args.max_n + 1):
        rows.append([n, chk.lie_dims[n], chk.expected_lie[n], chk.ideal_dims[n],
                     chk.assoc_dims[n], chk.expected_assoc[n]])
    cols = ["n", "quotient_dim", "formula_dim", "ideal_dim", "assoc_dim", "enveloping_dim"]
    return Table(cols, rows, {"presentation": pres.to_dict(), "lie_match": chk.lie_match,
                              "assoc_match": chk.assoc_match})


def cmd_oracle_lie_dims(args) -> Table:
    _need(args, "d", "max-n")
    restricted = (args.mode or "lie") == "restricted"
    oracle = free_lie_basis(args.d, args.p, args.max_n, restricted, force=args.force).dims
    formula = restricted_dims(args.d, args.p, args.max_n) if restricted else witt_dims(args.d, args.max_n)
    rows = [[n, oracle[n], formula[n], oracle[n] == formula[n]] for n in range(1, args.max_n + 1)]
    return Table(["n", "oracle", "formula", "match"], rows, {"mode": "restricted" if restricted else "lie"})


def cmd_oracle_closure(args) -> Table:
    _need(args, "d", "max-n")
    gens = _read_gens(args)
    mode = Mode(args.mode or "lie")
    dims = closure(gens, args.d, args.p, args.max_n, mode, force=args.force).dims
    t = _dims_table(dims)
    t.extra["mode"] = mode.value
    return t


def cmd_oracle_gradedify(args) -> Table:
    _need(args, "d", "max-n")
    gens = _read_gens(args)
    mode = args.mode or "lie"
    rep = gradedify(gens, args.d, args.p, args.max_n, mode, force=args.force)
    rows = []
    for n in range(1, args.max_n + 1):
        lie = rep.lie_dims[n] if rep.lie_dims is not None else None
        rows.append([n, rep.dims[n], lie, rep.certified(n)])
    return Table(["n", "dim", "lie_dim", "certified"], rows, {"trust_horizon": rep.trust_horizon, "mode": mode})


def cmd_density_greedy(args) -> Table:
    _need(args, "alpha", "d", "max-n")
    res = greedy_construct(args.alpha, args.d, args.p, args.max_n, args.mode or "lie", force=args.force)
    t = _ratio_table(res.report)
    steps = {s.k: s for s in res.trace.steps}
    t.columns += ["added", "inv_i", "checkpoint"]
    for row in t.rows:
        s = steps[row[0]]
        row += [" ".join(c.left_normed() for c in s.added), s.inv_i, s.checkpoint]
    t.extra["trace"] = res.trace.to_dict()
    return t


def cmd_density_ideal(args) -> Table:
    _need(args, "d", "max-n")
    gens = _read_gens(args)
    mode = args.mode or "lieIdeal"
    if mode not in ("lieIdeal", "restrictedIdeal"):
        raise ValidationError(f"density ideal needs --mode lieIdeal or restrictedIdeal, got {mode}")
    rep = ideal_density_report(gens, args.d, args.p, args.max_n, mode == "restrictedIdeal", force=args.force)
    return _ratio_table(rep)


def cmd_density_fg(args) -> Table:
    _need(args, "gens", "d", "max-n")
    profile = GenProfile.parse(args.gens)
    ambient = args.ambient or "free"
    if ambient == "demushkin":
        rep = fg_subalgebra_density_profile(profile, args.d, args.p, args.max_n)
    elif ambient == "restricted":
        rep = fg_density_report(profile, restricted_dims(args.d, args.p, args.max_n), p=args.p,
                                ambient_rate=float(args.d))
    else:
        rep = fg_density_report(profile, witt_dims(args.d, args.max_n), ambient_rate=float(args.d))
    return _ratio_table(rep)


def _int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValidationError(f"{flag} must be a comma-separated list of integers") from None


def cmd_density_report(args) -> Table:
    _need(args, "sub", "amb")
    rep = density_report(_int_list(args.sub, "--sub"), _int_list(args.amb, "--amb"),
                         alpha=None if args.alpha is None else Fraction(args.alpha))
    return _ratio_table(rep)


def _growth_table(g) -> Table:
    rows = [[r.level, r.d_i, r.log_index, r.saturated] for r in g.levels]
    est = [None if r.log_p_d_i is None else (r.log_p_d_i if r.log_p_d_i != float("inf") else "inf")
           for r in g.levels]
    extra = {"kind": g.kind, "p": g.p, "log_p_d_i": est}
    return Table(["level", "d_i", "log_index", "saturated"], rows, extra)


def cmd_frattini(args) -> Table:
    _need(args, "d", "levels")
    g = frattini_growth_free(args.d, args.p, args.levels, args.bit_budget)
    return _growth_table(g)


def cmd_zassenhaus(args) -> Table:
    _need(args, "d", "levels")
    if args.case:
        make_presentation(args.d, args.p, args.f if args.f is not None else "inf", args.case)
        dims = demushkin_lie_dims(args.d, args.p, args.levels)
    else:
        dims = restricted_dims(args.d, args.p, args.levels)
    return _growth_table(zassenhaus_log_indices(dims, args.levels, args.p))


def cmd_hdim_product(args) -> Table:
    _need(args, "factors", "select", "levels")
    spec = ProductSpec.parse(args.factors, args.p)
    sel = SubgroupSelection.parse(args.select)
    rep = product_hdim_estimate(spec, sel, args.kind, args.levels, args.bit_budget)
    rows = [[n, *_q(rep.ratio(n))] for n in range(1, rep.horizon + 1)]
    return Table(["level", "num", "den", "ratio_f64"], rows, {"flags": rep.flags})


def cmd_spectrum_normal(args) -> Table:
    _need(args, "factors")
    spec = ProductSpec.parse(args.factors, args.p)
    alphas = None
    if args.alphas:
        try:
            alphas = [Fraction(a.strip()) for a in args.alphas.split(",")]
        except (ValueError, ZeroDivisionError):
            raise ValidationError("--alphas must be comma-separated rationals like 1/2") from None
    values = normal_spectrum(spec, alphas)
    return Table(["num", "den", "value_f64"], [_q(v) for v in values])


# --------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, *flags: str) -> None:
    if "d" in flags:
        p.add_argument("--d", type=int, help="number of generators")
    p.add_argument("--p", type=int, default=2, help="prime (default 2)")
    if "max-n" in flags:
        p.add_argument("--max-n", type=int, help="largest degree")
    if "levels" in flags:
        p.add_argument("--levels", type=int, help="number of filtration levels")
    if "gen" in flags:
        p.add_argument("--gen", action="append", help="Lie expression generator (repeatable)")
        p.add_argument("--gens-file", help="JSON array of expression strings")
    if "force" in flags:
        p.add_argument("--force", action="store_true", help="skip the column-count guard")
    if "case" in flags:
        p.add_argument("--case", choices=CASES, help="Demushkin relator case")
        p.add_argument("--f", help="exponent f (integer or 'inf', default inf)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liedense", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"liedense {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(parent, name: str, func: Callable, help: str, *flags: str) -> argparse.ArgumentParser:
        sp = parent.add_parser(name, help=help)
        _common(sp, *flags)
        sp.set_defaults(func=func)
        return sp

    leaf(sub, "witt", cmd_witt, "free Lie algebra dimensions", "d", "max-n")
    leaf(sub, "restricted", cmd_restricted, "free restricted Lie algebra dimensions", "d", "max-n")
    sp = leaf(sub, "genwitt", cmd_genwitt, "free Lie algebra on graded generators", "max-n")
    sp.add_argument("--gens", help='generator profile "degree:count,..."')

    dem = sub.add_parser("demushkin", help="Demushkin group pipelines").add_subparsers(dest="action", required=True)
    leaf(dem, "dims", cmd_demushkin_dims, "graded restricted Lie dimensions", "d", "max-n")
    leaf(dem, "enveloping", cmd_demushkin_enveloping, "enveloping algebra dimensions", "d", "max-n")
    leaf(dem, "catalog", cmd_demushkin_catalog, "one-relator presentations", "d", "case")
    leaf(dem, "verify", cmd_demushkin_verify, "brute-force quotient check", "d", "max-n", "case", "force")

    orc = sub.add_parser("oracle", help="linear-algebra oracle").add_subparsers(dest="action", required=True)
    sp = leaf(orc, "lie-dims", cmd_oracle_lie_dims, "oracle dims of the free algebra", "d", "max-n", "force")
    sp.add_argument("--mode", choices=("lie", "restricted"))
    sp = leaf(orc, "closure", cmd_oracle_closure, "closure of generators", "d", "max-n", "gen", "force")
    sp.add_argument("--mode", choices=[m.value for m in Mode])
    sp = leaf(orc, "gradedify", cmd_oracle_gradedify, "leading-term dims", "d", "max-n", "gen", "force")
    sp.add_argument("--mode", choices=("lie", "restricted"))

    den = sub.add_parser("density", help="partial density ratios").add_subparsers(dest="action", required=True)
    sp = leaf(den, "greedy", cmd_density_greedy, "prescribed-density construction", "d", "max-n", "force")
    sp.add_argument("--alpha", help='target density, "a/b" or decimal')
    sp.add_argument("--mode", choices=("lie", "restricted"))
    sp = leaf(den, "ideal", cmd_density_ideal, "ideal generated by elements", "d", "max-n", "gen", "force")
    sp.add_argument("--mode", choices=("lieIdeal", "restrictedIdeal"))
    sp = leaf(den, "fg", cmd_density_fg, "finitely generated free subalgebra", "d", "max-n")
    sp.add_argument("--gens", help='generator profile "degree:count,..."')
    sp.add_argument("--ambient", choices=("free", "restricted", "demushkin"))
    sp = leaf(den, "report", cmd_density_report, "ratios of given dimension sequences")
    sp.add_argument("--sub", help="subalgebra dims, comma-separated")
    sp.add_argument("--amb", help="ambient dims, comma-separated")
    sp.add_argument("--alpha")

    sp = leaf(sub, "frattini", cmd_frattini, "Frattini series growth of a free pro-p group", "d", "levels")
    sp.add_argument("--bit-budget", type=int, default=DEFAULT_BIT_BUDGET)
    leaf(sub, "zassenhaus", cmd_zassenhaus, "Zassenhaus log-indices", "d", "levels", "case")

    hd = sub.add_parser("hdim", help="Hausdorff-dimension estimates").add_subparsers(dest="action", required=True)
    sp = leaf(hd, "product", cmd_hdim_product, "direct product of free or Demushkin factors", "levels")
    sp.add_argument("--factors", help='e.g. "3,3,2" or "free:3,demushkin:4:genericEven:inf"')
    sp.add_argument("--select", help='per-factor full/trivial, e.g. "1,0,0"')
    sp.add_argument("--kind", choices=("frattini", "zassenhaus"), default="frattini")
    sp.add_argument("--bit-budget", type=int, default=DEFAULT_BIT_BUDGET)

    sp_ = sub.add_parser("spectrum", help="normal Hausdorff spectra").add_subparsers(dest="action", required=True)
    sp = leaf(sp_, "normal", cmd_spectrum_normal, "subset sums of factor dimensions")
    sp.add_argument("--factors", help='e.g. "3,3,2"')
    sp.add_argument("--alphas", help='per-factor dimensions, e.g. "1/2,1/2,0"')
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        table = args.func(args)
        text = render_json(table) if args.format == "json" else render_csv(table)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8", newline="\n")
        else:
            sys.stdout.write(text)
    except ResourceError as exc:
        print(f"liedense: resource limit: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"liedense: error: {exc}", file=sys.stderr)
        return 2
    except LiedenseError as exc:
        print(f"liedense: internal check failed: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
