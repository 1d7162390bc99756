"""Command-line front end: compile, verify and report.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
All behaviour is controlled by flags (no environment variables), and every
command is deterministic given identical flags and inputs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .artifact import CompiledArtifact, InputSpec, compile_input
from .errors import ArtifactFormatError, TriquantError
from .semantics import growth_report, run_equivalence_suite
from .serialize import (
    dumps_artifact,
    load_artifact,
    render_latex,
    render_text,
    save_artifact,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triquant",
        description=(
            "Lower a polynomial set representation (exists h1..hD with R = 0) "
            "to two three-quantifier forms, and verify the result."
        ),
    )
    parser.add_argument("--version", action="version", version="triquant %s" % __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compile", help="lower an input to form 1 and/or form 2")
    comp.add_argument("--set", dest="set_name", help="name for the compiled set")
    comp.add_argument("--delta", type=int, help="number of unknowns h1..h<delta>")
    comp.add_argument("--expr", help="polynomial R over a, h1..h<delta>")
    comp.add_argument(
        "--input",
        help="JSON file holding {set_name, delta, expression} or a previous artifact",
    )
    comp.add_argument("--form", choices=("1", "2", "both"), default="both")
    comp.add_argument(
        "--expand-w",
        choices=("auto", "never", "always"),
        default="auto",
        help="whether to expand the form-2 product polynomial W",
    )
    comp.add_argument("--emit", choices=("json", "latex", "text"), default="json")
    comp.add_argument("--out", help="output file (default: standard output)")
    comp.add_argument(
        "--stats",
        action="store_true",
        help="print the growth table (degrees, term counts, coefficient sizes) "
        "for the compiled set on standard error",
    )

    ver = sub.add_parser("verify", help="run the equivalence suite on an artifact")
    ver.add_argument("--artifact", required=True)
    ver.add_argument("--a-max", type=int, default=50)
    ver.add_argument("--h-bound", type=int, default=25)
    ver.add_argument("--bc-samples", type=int, default=8)
    ver.add_argument("--naive-cap", type=int, default=10**6)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--jobs", type=int, default=1)
    ver.add_argument("--verbose", action="store_true")
    ver.add_argument("--out", help="write the JSON report here (text goes to stdout)")

    rep = sub.add_parser("report", help="growth statistics for compiled artifacts")
    rep.add_argument("--artifact", nargs="*", default=[])
    rep.add_argument("--format", choices=("text", "csv", "json"), default="text")
    return parser


def _load_input_spec(path: str) -> InputSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ArtifactFormatError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ArtifactFormatError("invalid JSON in %s: %s" % (path, exc)) from exc
    if isinstance(doc, dict) and "input" in doc:
        doc = doc["input"]
    try:
        return InputSpec(str(doc["set_name"]), int(doc["delta"]), str(doc["expression"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ArtifactFormatError(
            "input file needs set_name, delta and expression fields"
        ) from exc


def _cmd_compile(args) -> int:
    if args.input:
        if args.set_name or args.delta is not None or args.expr:
            print("error: use either --input or --set/--delta/--expr", file=sys.stderr)
            return 2
        spec = _load_input_spec(args.input)
    else:
        if not (args.set_name and args.delta is not None and args.expr):
            print(
                "error: --set, --delta and --expr are all required without --input",
                file=sys.stderr,
            )
            return 2
        spec = InputSpec(args.set_name, args.delta, args.expr)
    art = compile_input(spec, forms=args.form, expand_w=args.expand_w)
    if args.emit == "json":
        payload = dumps_artifact(art)
    elif args.emit == "text":
        payload = render_text(art)
    else:
        payload = render_latex(art)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


def _cmd_verify(args) -> int:
    art = load_artifact(args.artifact)
    progress = None
    if args.verbose:

        def progress(a):
            print("checked a=%d" % a, file=sys.stderr)

    report = run_equivalence_suite(
        art,
        a_max=args.a_max,
        h_bound=args.h_bound,
        bc_samples=args.bc_samples,
        naive_cap=args.naive_cap,
        seed=args.seed,
        jobs=args.jobs,
        progress=progress,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(report.render_text())
    return 0 if report.passed else 1


_CSV_COLUMNS = [
    "set",
    "delta",
    "lambda",
    "nu",
    "epsilon",
    "w_deg_a",
    "w_deg_b",
    "w_deg_c",
    "w_deg_f",
    "w_terms",
    "w_max_coeff_digits",
    "f_deg",
    "f_terms",
    "f1_max_deg",
    "f1_max_terms",
    "f1_max_coeff_digits",
]


def _flatten_row(row: dict) -> dict:
    flat = {
        "set": row["set"],
        "delta": row["delta"],
        "lambda": row["lambda"],
        "nu": row["nu"],
        "epsilon": row.get("epsilon", ""),
    }
    form2 = row.get("form2")
    if form2:
        degrees = form2["W"]["degree_per_variable"]
        flat.update(
            w_deg_a=degrees["a"],
            w_deg_b=degrees["b"],
            w_deg_c=degrees["c"],
            w_deg_f=degrees["f"],
            w_terms=form2["W"]["terms"] if form2["W"]["terms"] is not None else "",
            w_max_coeff_digits=(
                form2["W"]["max_coeff_digits"]
                if form2["W"]["max_coeff_digits"] is not None
                else ""
            ),
            f_deg=form2["F"]["total_degree"],
            f_terms=form2["F"]["terms"],
        )
    else:
        flat.update(
            w_deg_a="", w_deg_b="", w_deg_c="", w_deg_f="",
            w_terms="", w_max_coeff_digits="", f_deg="", f_terms="",
        )
    form1 = row.get("form1")
    if form1:
        polys = [entry[key] for entry in form1 for key in ("P", "D", "Q")]
        flat.update(
            f1_max_deg=max(p["total_degree"] for p in polys),
            f1_max_terms=max(p["terms"] for p in polys),
            f1_max_coeff_digits=max(p["max_coeff_digits"] for p in polys),
        )
    else:
        flat.update(f1_max_deg="", f1_max_terms="", f1_max_coeff_digits="")
    return flat


def _render_report_text(data: dict) -> str:
    lines = []
    for row in data["sets"]:
        lines.append(
            "set %s: delta=%d lambda=%d nu=%d epsilon=%s"
            % (row["set"], row["delta"], row["lambda"], row["nu"], row.get("epsilon"))
        )
        for entry in row.get("form1", []):
            lines.append(
                "  form1 %-16s deg(P/D/Q) = %d/%d/%d  terms = %d/%d/%d  coeff digits <= %d"
                % (
                    entry["provenance"],
                    entry["P"]["total_degree"],
                    entry["D"]["total_degree"],
                    entry["Q"]["total_degree"],
                    entry["P"]["terms"],
                    entry["D"]["terms"],
                    entry["Q"]["terms"],
                    max(
                        entry[k]["max_coeff_digits"] for k in ("P", "D", "Q")
                    ),
                )
            )
        form2 = row.get("form2")
        if form2:
            w = form2["W"]
            deg = w["degree_per_variable"]
            lines.append(
                "  form2 F: degree %d, %d terms; W: deg a/b/c/f = %d/%d/%d/%d, %s"
                % (
                    form2["F"]["total_degree"],
                    form2["F"]["terms"],
                    deg["a"],
                    deg["b"],
                    deg["c"],
                    deg["f"],
                    (
                        "%d terms (expanded), coeff digits <= %d"
                        % (w["terms"], w["max_coeff_digits"])
                        if w["expanded"]
                        else "kept as %d factors" % w["factor_count"]
                    ),
                )
            )
    return "\n".join(lines) + ("\n" if lines else "")


def _cmd_report(args) -> int:
    artifacts = [load_artifact(path) for path in args.artifact]
    data = growth_report(artifacts)
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=_CSV_COLUMNS)
        writer.writeheader()
        for row in data["sets"]:
            writer.writerow(_flatten_row(row))
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(_render_report_text(data))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "compile":
            return _cmd_compile(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "report":
            return _cmd_report(args)
    except TriquantError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
