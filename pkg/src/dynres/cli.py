"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 mathematical rejection, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import BudgetExhausted, DynresError

PROFILES = {"small": 0.25, "default": 1.0, "large": 4.0}


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 20_000
    degree_bound: int = 60

    @classmethod
    def from_env(cls, max_pairs=None, degree_bound=None) -> "Budget":
        name = os.environ.get("DYNRES_BUDGET_PROFILE", "default")
        if name not in PROFILES:
            raise UsageError(f"DYNRES_BUDGET_PROFILE must be one of {sorted(PROFILES)}, got {name!r}")
        k = PROFILES[name]
        base = cls()
        return cls(int(base.max_pairs * k) if max_pairs is None else max_pairs,
                   int(base.degree_bound * k) if degree_bound is None else degree_bound)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(obj, as_json: bool, text: str) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


def _read_json(arg: str):
    """Inline JSON, a path to a JSON file, or '-' for stdin."""
    if arg == "-":
        return json.load(sys.stdin)
    s = arg.strip()
    if s.startswith("{") or s.startswith("["):
        try:
            return json.loads(s)
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON: {exc}") from None
    path = Path(arg)
    if not path.exists():
        raise UsageError(f"no such file: {arg}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON in {arg}: {exc}") from None


def _format_arg(text: str):
    from .lie_core import Format
    return Format.parse(text)


# ------------------------------------------------------------------ subcommands

def cmd_table(args, budget):
    from .weyl import TABLE_ROWS, table2
    grid = table2()
    width = max(TABLE_ROWS.values())
    lines = ["#(d,t)  " + " ".join(f"t={t:<4}" for t in range(1, width + 1))]
    for d, row in grid.items():
        lines.append(f"d={d:<5} " + " ".join(f"{v:<6}" for v in row))
    _emit({str(d): row for d, row in grid.items()}, args.json, "\n".join(lines))


def cmd_format(args, budget):
    from .errors import NonDynkinFormat
    from .lie_core import Format, classify_type, format_to_shape
    from .weyl import family_count, format_coset_table
    f = Format(*args.f)
    shape = format_to_shape(f)
    kind = classify_type(shape)
    info = {"format": list(f.as_tuple()), "diagram": shape.name(), "type": kind.name, "kind": kind.kind}
    if not kind.finite:
        _emit(info, args.json, f"{f} -> {shape.name()} = {kind.name}: {kind.kind} type, not Dynkin")
        raise NonDynkinFormat(f"{f} is of {kind.kind} type {kind.name}")
    lines = [f"{f} -> {shape.name()} = {kind.name} (Dynkin)"]
    if f.f0 == 1:
        info["double_cosets"] = len(format_coset_table(f))
        info["family_count"] = family_count(f)
        lines.append(f"double cosets: {info['double_cosets']}; families with these exact Betti numbers: "
                     f"{info['family_count']}")
    _emit(info, args.json, "\n".join(lines))


def cmd_cosets(args, budget):
    from .repdecomp import support_betti
    from .weyl import format_coset_table
    f = _format_arg(args.format)
    tab = format_coset_table(f)
    rows = []
    for k in range(len(tab)):
        word = tab.rep_labels(k)
        rows.append({"index": k, "representative": ",".join(word) or "e", "length": len(word),
                     "size": len(tab.cosets[k].members),
                     "betti": list(support_betti(f, tab.rep_word(k))) if k else None})
    text = "\n".join(f"[{r['index']}] len {r['length']:>2}  |W^P part| {r['size']:>4}  "
                     f"betti {str(tuple(r['betti'])) if r['betti'] else '-':<16}  {r['representative']}" for r in rows)
    _emit({"format": list(f.as_tuple()), "cosets": rows}, args.json, text)


def cmd_decompose(args, budget):
    from .repdecomp import z1_decomposition
    d = z1_decomposition(_format_arg(args.format))
    _emit(d.to_json(), args.json, d.render())


def cmd_betti(args, budget):
    from .betti_check import BettiTable, admissibility_report, component_generator_degrees
    t = BettiTable.from_json(_read_json(args.table))
    rep = admissibility_report(t)
    out = rep.to_json()
    if rep.dynkin:
        from .repdecomp import z1_decomposition
        layers = sorted({c.j for c in z1_decomposition(t.fmt).components})
        out["degrees"] = {str(j): component_generator_degrees(t, j) for j in layers}
    text = "\n".join([f"dynkin: {rep.dynkin} ({rep.diagram})",
                      f"degree-zero generator: {rep.degree_zero_generator}",
                      f"2 min(s1) < max(s3): {rep.inequality_2min_lt_max}",
                      f"parity: {rep.parity_ok}",
                      f"verdict: {rep.verdict()}"])
    _emit(out, args.json, text)


BUILTIN_COMPLEXES = ("koszul", "pfaffian", "nonperfect", "square")


def _load_complex(arg: str):
    from . import graded_res as gr
    if arg in BUILTIN_COMPLEXES:
        return {"koszul": gr.koszul_complex, "pfaffian": gr.pfaffian_complex,
                "nonperfect": gr.nonperfect_complex, "square": gr.square_ideal_complex}[arg]()
    try:
        return gr.GradedComplex.from_json(_read_json(arg))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DynresError):
            raise
        raise UsageError(f"malformed complex JSON: {exc}") from None


def _matrix_json(m):
    return [[str(x) for x in row] for row in m]


def cmd_res(args, budget):
    from . import graded_res as gr
    c = _load_complex(args.complex)
    if args.action == "validate":
        rep = gr.validate_complex(c, max_pairs=budget.max_pairs)
        text = "\n".join(f"{k}: {v}" for k, v in rep.to_json().items())
        _emit(rep.to_json(), args.json, text)
        return
    if args.action == "multipliers":
        m = gr.be_multipliers(c, budget.degree_bound)
        out = {"a1": m.a1.to_json(), "a2": m.a2.to_json(), "a3": m.a3.to_json()}
        names = c.names
        text = "\n".join([f"a1 = {m.a1.entries[0][0].to_str(names) if m.a1.rows == 1 else m.a1}",
                          "a2 = [" + ", ".join(e[0].to_str(names) for e in m.a2.entries) + "]",
                          "a3 = [" + ", ".join(e[0].to_str(names) for e in m.a3.entries) + "]"])
        _emit(out, args.json, text)
        return
    if args.action == "structure":
        m, s = gr.structure_maps(c, budget.degree_bound)
        out = {"w3_1": s.w3_1.to_json(), "w2_1": s.w2_1.to_json(), "a1": str(s.a1)}
        text = [f"a1 = {s.a1}", "w3_1 ="]
        text += ["  " + "  ".join(e.to_str(c.names) for e in row) for row in s.w3_1.entries]
        text.append("w2_1 =")
        text += ["  " + "  ".join(e.to_str(c.names) for e in row) for row in s.w2_1.entries]
        if c.fmt.f0 == 1 and c.is_minimal():
            m11 = gr.tor_m11(c, s)
            out["m11"] = _matrix_json(m11)
            text.append(f"m11 zero: {gr.m11_is_zero(m11)}")
        _emit(out, args.json, "\n".join(text))
        return
    if args.action == "classify":
        lab = gr.classify_family(c, max_pairs=budget.max_pairs)
        text = (f"Betti {lab.betti} on {lab.diagram}: "
                + (f"coset {','.join(lab.coset) or 'e'}" if lab.coset is not None else
                   "partial label, candidates " + "; ".join(",".join(w) for w in lab.candidates))
                + (f" ({lab.name})" if lab.name else "") + f"; m11 zero: {lab.m11_zero}")
        _emit(lab.to_json(), args.json, text)
        return
    raise UsageError(args.action)


def cmd_schubert(args, budget):
    from . import schubert as sc
    from .polyalg import ideal_codim
    chart = sc.patch_parametrization(_format_arg(args.format), args.sigma)
    if args.action == "ideal":
        out = chart.to_json()
        codim = ideal_codim(sc.schubert_ideal(chart, budget.max_pairs))
        out["codim"] = "inf" if codim == float("inf") else codim
        text = [f"sigma = {out['sigma']}; {chart.nvars} variables; codim {out['codim']}"]
        text += ["  " + g.to_str(chart.names) for g in chart.generators()]
        _emit(out, args.json, "\n".join(text))
        return
    c = sc.schubert_resolution(chart)
    text = [f"format {c.fmt}; twists s1={c.s[1]} s2={c.s[2]} s3={c.s[3]}; minimal: {c.is_minimal()}"]
    for k, d in enumerate(c.diffs, 1):
        text.append(f"d{k} =")
        text += ["  " + "  ".join(e.to_str(c.names) for e in row) for row in d.entries]
    _emit(c.to_json(), args.json, "\n".join(text))


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dynres", description="Perfect ideals of grade three with Dynkin Betti numbers.",
                epilog="Budgets: --max-pairs (Groebner S-pair cap, default 20000) and --degree-bound "
                       "(lifting degree cap, default 60), scaled by DYNRES_BUDGET_PROFILE in "
                       "{small, default, large}. Exceeding a budget exits with code 3.")
    p.add_argument("--max-pairs", type=int, default=None, help="Groebner S-pair budget")
    p.add_argument("--degree-bound", type=int, default=None, help="degree cap for graded lifting")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        q = sub.add_parser(name, help=help_)
        q.add_argument("--json", action="store_true", help="machine-readable output")
        q.set_defaults(func=func)
        return q

    add("table", cmd_table, "grid of double-coset counts #(d,t)")
    q = add("format", cmd_format, "diagram and counts for a format")
    q.add_argument("f", type=int, nargs=4, metavar="F")
    q = add("cosets", cmd_cosets, "double cosets W_{P_z1} \\ W / W_{P_x1}")
    q.add_argument("--format", required=True)
    q = add("decompose", cmd_decompose, "z1-graded decomposition of L(omega_x1)^dual")
    q.add_argument("--format", required=True)
    q = sub.add_parser("betti", help="graded Betti table checks")
    bsub = q.add_subparsers(dest="betti_cmd", required=True, parser_class=_Parser)
    q = bsub.add_parser("check", help="necessary conditions for a Betti table")
    q.add_argument("table", help="inline JSON, a file path, or -")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_betti)
    q = add("res", cmd_res, "operations on a length-three complex")
    q.add_argument("action", choices=["validate", "multipliers", "structure", "classify"])
    q.add_argument("complex", help="complex JSON (file, inline, or -) or one of " + ", ".join(BUILTIN_COMPLEXES))
    q = add("schubert", cmd_schubert, "Schubert charts, ideals and resolutions")
    q.add_argument("action", choices=["ideal", "resolution"])
    q.add_argument("--format", required=True)
    q.add_argument("--sigma", default="w0", help="w0, e, or a word such as s:z1,u,x1")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        budget = Budget.from_env(args.max_pairs, args.degree_bound)
        args.func(args, budget)
    except UsageError as exc:
        print(f"dynres: error: {exc}", file=sys.stderr)
        return 1
    except KeyError as exc:
        print(f"dynres: error: unknown name {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 1
    except BudgetExhausted as exc:
        print(f"dynres: budget exhausted: {exc}", file=sys.stderr)
        return exc.exit_code
    except DynresError as exc:
        print(f"dynres: rejected: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
