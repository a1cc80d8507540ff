"""Command-line front end.

Deterministic, exact output: every rational is serialized as "a/b" (or a
bare integer), never as a float.  Exit codes: 0 success, 1 verification
mismatch, 2 usage error, 3 data error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_DATA = 3


def _fmt(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else \
        f"{f.numerator}/{f.denominator}"


def emit(report: dict, fmt: str, stream=None) -> None:
    """Serialize a report with stable field ordering."""
    stream = stream or sys.stdout
    if fmt == "json":
        json.dump(report, stream, indent=1, sort_keys=False)
        stream.write("\n")
        return
    title = report.get("title", "")
    columns = report.get("columns", [])
    rows = report.get("rows", [])
    if fmt == "csv":
        if columns:
            stream.write(",".join(str(c) for c in columns) + "\n")
        for row in rows:
            stream.write(",".join(str(c) for c in row) + "\n")
        return
    if title:
        stream.write(title + "\n")
    for key, value in report.items():
        if key in ("title", "columns", "rows"):
            continue
        stream.write(f"{key}: {value}\n")
    if columns or rows:
        widths = [max([len(str(c))] + [len(str(r[i])) for r in rows])
                  for i, c in enumerate(columns)] if columns else None
        if columns:
            stream.write("  ".join(str(c).rjust(w)
                                   for c, w in zip(columns, widths)) + "\n")
        for row in rows:
            if widths:
                stream.write("  ".join(str(c).rjust(w)
                                       for c, w in zip(row, widths)) + "\n")
            else:
                stream.write("  ".join(str(c) for c in row) + "\n")


def _series_rows(s):
    rows = []
    for (q24, y2, z) in sorted(s.terms):
        c = s.terms[(q24, y2, z)]
        rows.append([_fmt(Fraction(q24, 24)), _fmt(Fraction(y2, 2)), _fmt(c)])
    return rows


def _rational_function_text(r):
    def poly_text(p):
        parts = []
        for k, c in enumerate(p.c):
            if not c:
                continue
            mon = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
            parts.append(f"{_fmt(c)}*{mon}" if k else _fmt(c))
        return " + ".join(parts) if parts else "0"

    return f"({poly_text(r.num)}) / ({poly_text(r.den)})"


def cmd_ellgenus(args):
    from .genus import elliptic_genus
    s = elliptic_genus(args.q_order * 24)
    return {"title": "K3 elliptic genus (chi_{-y} convention)",
            "q_order": args.q_order,
            "columns": ["q", "y", "coefficient"],
            "rows": _series_rows(s)}, EXIT_OK


def cmd_equivariant(args):
    from .genus import equivariant_elliptic_genus
    s = equivariant_elliptic_genus(args.cls, args.q_order * 24)
    return {"title": f"equivariant elliptic genus, class {args.cls}",
            "q_order": args.q_order,
            "columns": ["q", "y", "coefficient"],
            "rows": _series_rows(s)}, EXIT_OK


def cmd_symt(args):
    from .genus import chi_symt_series, rational_form
    series = chi_symt_series(args.cls, args.terms)
    report = {"title": f"chi(g; X, S_t T), class {args.cls}",
              "columns": ["n", "coefficient"],
              "rows": [[n, _fmt(c)] for n, c in enumerate(series)]}
    if args.rational:
        report["rational_form"] = _rational_function_text(rational_form(args.cls))
    return report, EXIT_OK


def cmd_n4_decompose(args):
    from .n4char import ch_vn_h_form, decompose_into_n4
    # the Ramond path flows there and back, which costs truncation margin
    t = (args.q_order + 2) * 24 if args.sector == "NS" \
        else (2 * args.q_order + 10) * 24
    s = ch_vn_h_form(args.n, t)
    if args.sector == "R":
        s = s.spectral_flow(+1)
    dec = decompose_into_n4(s, args.sector)
    cols = list(range(args.q_order))
    return {"title": f"N=4 decomposition of ch_V{args.n} ({args.sector})",
            "atypical": _fmt(dec.atypical),
            "columns": [f"h=1/4+{k}" for k in cols],
            "rows": [[_fmt(v) for v in dec.table_row(cols)]]}, EXIT_OK


def cmd_genus_decompose(args):
    from .genus import elliptic_genus
    from .n4char import genus_A_coefficients
    genus = elliptic_genus((2 * args.q_order + 6) * 24)
    dec = genus_A_coefficients(args.q_order, genus)
    status = EXIT_OK if dec.atypical == 24 else EXIT_MISMATCH
    return {"title": "elliptic genus into N=4 characters",
            "massless_multiplicity": _fmt(dec.atypical),
            "columns": ["n", "A_n"],
            "rows": [[n, _fmt(a)] for n, a in enumerate(dec.A)]}, status


def cmd_lattice_check(args):
    from .tables import (load_m23, load_m24, load_mukai, load_co0_restricted,
                         SYMPLECTIC_M23_LABELS, SYMPLECTIC_M24_LABELS)
    from .replattice import build_lattice_report, sufficiency_scan
    tables = [load_mukai(i) for i in range(1, 12)]
    rep = build_lattice_report(tables, load_m24(), load_m23(),
                               load_co0_restricted(),
                               SYMPLECTIC_M24_LABELS, SYMPLECTIC_M23_LABELS)
    rows = [[f"N_{i+1}/N", str(q)] for i, q in enumerate(rep.Ni_over_N)]
    four, triples = sufficiency_scan(list(rep.N_i), rep.N)
    ok = (rep.K_equals_N and rep.Kp_equals_N
          and str(rep.M_over_N) == "2 x 4 x 24 x 40320"
          and all(four.values()) and not triples)
    report = {"title": "order-lattice suite",
              "K_equals_N": str(rep.K_equals_N),
              "Kprime_equals_N": str(rep.Kp_equals_N),
              "index_N_over_Kdoubleprime": str(rep.Kdp_index_in_N),
              "M_over_N": str(rep.M_over_N),
              "sufficient_quadruples": str(sorted(four.items())),
              "triples_reaching_N": str(triples),
              "columns": ["quotient", "invariant factors"],
              "rows": rows}
    return report, EXIT_OK if ok else EXIT_MISMATCH


def cmd_m23_table(args):
    from .tables import load_m23
    from .genus import rational_form, SYMPLECTIC_CLASSES
    from .replattice import (chosen_rational_form, decompose_family,
                             expand_to_irreducible_columns)
    m23 = load_m23()
    forms = {lab: rational_form(lab) for lab in SYMPLECTIC_CLASSES}
    for lab in ("11AB", "14AB", "15AB", "23AB"):
        forms[lab] = chosen_rational_form(lab)
    family = {lab: [-c for c in rf.expand(args.t_order)]
              for lab, rf in forms.items()}
    dec = decompose_family(m23, family)
    cols = expand_to_irreducible_columns(m23, dec)
    rows = [[n] + [_fmt(cols[j][n]) for j in range(len(cols))]
            for n in range(args.t_order)]
    nonint = any(Fraction(c).denominator != 1 for col in cols for c in col)
    return {"title": "decomposition of -chi(X, S_t T) into M23 irreducibles",
            "columns": ["n"] + [f"chi{j+1}" for j in range(len(cols))],
            "rows": rows}, (EXIT_MISMATCH if nonint else EXIT_OK)


def cmd_moonshine_verify(args):
    from .genus import verify_moonshine_class
    from .mckay import f_series
    t = args.q_order * 24
    f = f_series(args.cls, t)
    report = verify_moonshine_class(args.cls, f, t)
    return {"title": "twining genus versus McKay-Thompson prediction",
            "class": args.cls,
            "agree": str(report.ok),
            "first_mismatch": "none" if report.ok
            else _fmt(Fraction(report.first_mismatch_q24, 24)),
            }, (EXIT_OK if report.ok else EXIT_MISMATCH)


def cmd_audit_integrality(args):
    from .mckay import twining_genus
    from .n4char import twining_to_symtraces, ramond_basis_character
    from .replattice import first_nonintegral
    t = (args.t_order + 2) * 24
    basis = [ramond_basis_character(n, t + 48) for n in range(args.t_order + 2)]
    horizon = min(b.trunc24 for b in basis) - 24
    rows = []
    for label in ("11A", "14AB", "15AB", "23AB"):
        tw = twining_genus(label, horizon)
        cs = twining_to_symtraces(tw, args.t_order, basis=basis)
        hit = first_nonintegral(cs)
        rows.append([label,
                     "none" if hit is None else f"t^{hit[0]}",
                     "" if hit is None else _fmt(hit[1]),
                     " ".join(_fmt(c) for c in cs)])
    return {"title": "integrality audit of twining-derived symmetric-power traces",
            "columns": ["class", "first non-integral", "value", "series"],
            "rows": rows}, EXIT_OK


def cmd_verify_all(args):
    from .acceptance import run_acceptance
    ok = run_acceptance(q_order=args.q_order, t_order=args.t_order,
                        stream=sys.stdout)
    return None, (EXIT_OK if ok else EXIT_MISMATCH)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="k3moonshine",
        description="Exact computations for K3 elliptic genera, N=4 "
                    "characters, and Mathieu-group character lattices")
    p.add_argument("--data-dir", help="character-table fixture directory "
                   "(also via K3MOONSHINE_DATA)")
    p.add_argument("--format", choices=("json", "csv", "text"),
                   default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name)
        for flag, opts in kwargs.items():
            sp.add_argument(flag, **opts)
        sp.set_defaults(func=fn)
        return sp

    add("ellgenus", cmd_ellgenus,
        **{"--q-order": dict(type=int, default=6, dest="q_order")})
    sp = add("equivariant", cmd_equivariant,
             **{"--q-order": dict(type=int, default=4, dest="q_order")})
    sp.add_argument("--class", dest="cls", required=True)
    sp = add("symt", cmd_symt,
             **{"--terms": dict(type=int, default=8)})
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--rational", action="store_true")
    add("n4-decompose", cmd_n4_decompose,
        **{"--n": dict(type=int, default=0),
           "--q-order": dict(type=int, default=6, dest="q_order"),
           "--sector": dict(choices=("NS", "R"), default="NS")})
    add("genus-decompose", cmd_genus_decompose,
        **{"--q-order": dict(type=int, default=5, dest="q_order")})
    add("lattice-check", cmd_lattice_check)
    add("m23-table", cmd_m23_table,
        **{"--t-order": dict(type=int, default=21, dest="t_order")})
    sp = add("moonshine-verify", cmd_moonshine_verify,
             **{"--q-order": dict(type=int, default=5, dest="q_order")})
    sp.add_argument("--class", dest="cls", required=True)
    add("audit-integrality", cmd_audit_integrality,
        **{"--t-order": dict(type=int, default=6, dest="t_order")})
    add("verify-all", cmd_verify_all,
        **{"--q-order": dict(type=int, default=6, dest="q_order"),
           "--t-order": dict(type=int, default=21, dest="t_order")})
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.data_dir:
        os.environ["K3MOONSHINE_DATA"] = args.data_dir
    try:
        report, status = args.func(args)
    except FileNotFoundError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except KeyError as exc:
        print(f"usage error: unknown key {exc}", file=sys.stderr)
        return EXIT_USAGE
    if report is not None:
        emit(report, args.format)
    return status


if __name__ == "__main__":
    sys.exit(main())
