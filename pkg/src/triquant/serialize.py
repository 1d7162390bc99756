"""Artifact persistence and rendering.

The wire format for every polynomial is its canonical text, so files are
deterministic, diffable and exact: big integers travel as decimal strings
inside the canonical text (and as standalone decimal strings for scalar
constants such as nu and gamma).  Saving, loading and re-saving an
artifact is byte-identical.
"""

from __future__ import annotations

import json
from typing import Iterable

from .artifact import CompiledArtifact, InputSpec
from .encoding import (
    EncodingConstants,
    NormalizedRepresentation,
    normalize,
    validate_source,
    unknown_names,
)
from .errors import ArtifactFormatError, ParseError
from .form_one import Conjunct, FormOne
from .form_two import FormTwo, IntervalTriple
from .parser import parse_polynomial
from .poly import Polynomial

FORMAT_NAME = "triquant-artifact"
FORMAT_VERSION = 1

_ABC = ("a", "b", "c")
_ABCF = ("a", "b", "c", "f")


def _poly_text(p: Polynomial) -> str:
    return p.canonical_text()


def _parse_field(text: str, variables: Iterable[str], where: str) -> Polynomial:
    if not isinstance(text, str):
        raise ArtifactFormatError("%s: expected canonical polynomial text" % where)
    try:
        return parse_polynomial(text, variables=variables)
    except ParseError as exc:
        raise ArtifactFormatError("%s: %s" % (where, exc)) from exc


def artifact_to_dict(art: CompiledArtifact) -> dict:
    consts = art.constants
    doc: dict = {
        "format": FORMAT_NAME,
        "format_version": FORMAT_VERSION,
        "tool_version": art.tool_version,
        "input": {
            "set_name": art.input.set_name,
            "delta": art.input.delta,
            "expression": art.input.expression,
        },
        "constants": {
            "lambda": consts.lam,
            "scale": str(consts.norm.scale),
            "nu": str(consts.nu),
            "gamma": str(consts.gamma),
            "V": _poly_text(consts.V),
            "K": _poly_text(consts.K),
            "T": [_poly_text(t) for t in consts.T],
        },
    }
    if art.form1 is not None:
        doc["form1"] = {
            "epsilon": art.form1.epsilon,
            "conjuncts": [
                {
                    "provenance": c.provenance,
                    "P": _poly_text(c.P),
                    "D": _poly_text(c.D),
                    "Q": _poly_text(c.Q),
                }
                for c in art.form1.conjuncts
            ],
        }
    if art.form2 is not None:
        form2 = art.form2
        doc["form2"] = {
            "epsilon": form2.epsilon,
            "triples": [
                {
                    "provenance": t.provenance,
                    "g": _poly_text(t.g),
                    "s": _poly_text(t.s),
                    "t": _poly_text(t.t),
                }
                for t in form2.triples
            ],
            "F": _poly_text(form2.F),
            "W_factors": [_poly_text(p) for p in form2.w_factors],
            "W": _poly_text(form2.W) if form2.W is not None else None,
        }
    return doc


def artifact_from_dict(doc: dict) -> CompiledArtifact:
    try:
        if doc.get("format") != FORMAT_NAME:
            raise ArtifactFormatError("not a %s file" % FORMAT_NAME)
        inp = doc["input"]
        spec = InputSpec(str(inp["set_name"]), int(inp["delta"]), str(inp["expression"]))
        hs = unknown_names(spec.delta)
        R = _parse_field(spec.expression, ("a",) + hs, "input.expression")
        src = validate_source(spec.delta, R)
        norm = normalize(src)

        cblock = doc["constants"]
        consts = EncodingConstants(
            norm=norm,
            nu=int(cblock["nu"]),
            gamma=int(cblock["gamma"]),
            V=_parse_field(cblock["V"], ("k",), "constants.V"),
            K=_parse_field(cblock["K"], ("a", "c"), "constants.K"),
            T=tuple(
                _parse_field(t, ("a",) + hs, "constants.T[%d]" % i)
                for i, t in enumerate(cblock["T"])
            ),
        )
        if int(cblock["lambda"]) != consts.lam or int(cblock["scale"]) != norm.scale:
            raise ArtifactFormatError("constants block disagrees with the input polynomial")

        form1 = None
        if "form1" in doc:
            conjuncts = tuple(
                Conjunct(
                    str(c["provenance"]),
                    _parse_field(c["P"], _ABC, "form1.P"),
                    _parse_field(c["D"], _ABC, "form1.D"),
                    _parse_field(c["Q"], _ABC, "form1.Q"),
                )
                for c in doc["form1"]["conjuncts"]
            )
            form1 = FormOne(conjuncts)
        form2 = None
        if "form2" in doc:
            block = doc["form2"]
            triples = tuple(
                IntervalTriple(
                    str(t["provenance"]),
                    _parse_field(t["g"], _ABC, "form2.g"),
                    _parse_field(t["s"], _ABC, "form2.s"),
                    _parse_field(t["t"], _ABC, "form2.t"),
                )
                for t in block["triples"]
            )
            form2 = FormTwo(
                triples,
                _parse_field(block["F"], _ABC, "form2.F"),
                tuple(
                    _parse_field(p, _ABCF, "form2.W_factors[%d]" % i)
                    for i, p in enumerate(block["W_factors"])
                ),
                (
                    _parse_field(block["W"], _ABCF, "form2.W")
                    if block.get("W") is not None
                    else None
                ),
            )
        return CompiledArtifact(
            spec, consts, form1, form2, str(doc.get("tool_version", ""))
        )
    except ArtifactFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ArtifactFormatError("malformed artifact: %s" % exc) from exc


def dumps_artifact(art: CompiledArtifact) -> str:
    return json.dumps(artifact_to_dict(art), indent=2, sort_keys=True) + "\n"


def save_artifact(art: CompiledArtifact, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_artifact(art))


def load_artifact(path: str) -> CompiledArtifact:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ArtifactFormatError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ArtifactFormatError("invalid JSON in %s: %s" % (path, exc)) from exc
    return artifact_from_dict(doc)


# ---------------------------------------------------------------------------
# Human-readable renderings


def render_text(art: CompiledArtifact) -> str:
    consts = art.constants
    lines = [
        "set %s: delta=%d, lambda=%d, nu=%d, gamma=%d"
        % (art.input.set_name, consts.delta, consts.lam, consts.nu, consts.gamma),
        "R = %s" % art.input.expression,
        "V(k) = %s" % consts.V.canonical_text(),
        "K(a,c) = %s" % consts.K.canonical_text(),
    ]
    if art.form1 is not None:
        lines.append("")
        lines.append(
            "form 1: exists b exists c, conjunction of %d conditions exists d [P < D*d < Q]:"
            % art.form1.epsilon
        )
        for conj in art.form1.conjuncts:
            lines.append("  [%s]" % conj.provenance)
            lines.append("    P = %s" % conj.P.canonical_text())
            lines.append("    D = %s" % conj.D.canonical_text())
            lines.append("    Q = %s" % conj.Q.canonical_text())
    if art.form2 is not None:
        form2 = art.form2
        lines.append("")
        lines.append(
            "form 2: exists b exists c forall f [f <= F => W > 0], %d interval triples:"
            % form2.epsilon
        )
        for t in form2.triples:
            lines.append("  [%s]" % t.provenance)
            lines.append("    g = %s" % t.g.canonical_text())
            lines.append("    s = %s" % t.s.canonical_text())
            lines.append("    t = %s" % t.t.canonical_text())
        lines.append("  F = %s" % form2.F.canonical_text())
        if form2.W is not None:
            lines.append("  W = %s" % form2.W.canonical_text())
        else:
            lines.append(
                "  W = product of %d factors (not expanded; degree in f = %d):"
                % (len(form2.w_factors), form2.w_degree_in("f"))
            )
            for p in form2.w_factors:
                lines.append("    * %s" % p.canonical_text())
    return "\n".join(lines) + "\n"


def poly_to_latex(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    chunks: list[str] = []
    for exps, coeff in p._sorted_terms():
        factors = []
        for v, e in zip(p.variables, exps):
            name = v if len(v) == 1 else "%s_{%s}" % (v[0], v[1:])
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^{%d}" % (name, e))
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = " ".join(factors)
        else:
            body = " ".join([str(mag)] + factors)
        if not chunks:
            chunks.append(("-" if coeff < 0 else "") + body)
        else:
            chunks.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(chunks)


def render_latex(art: CompiledArtifact) -> str:
    lines = ["% set: " + art.input.set_name]
    if art.form1 is not None:
        rows = [
            "%s < \\left(%s\\right) d < %s"
            % (poly_to_latex(c.P), poly_to_latex(c.D), poly_to_latex(c.Q))
            for c in art.form1.conjuncts
        ]
        lines.append("\\[")
        lines.append(
            "\\exists b\\, \\exists c\\, \\bigwedge_{\\iota}\\exists d\\,"
            "\\bigl[ P_\\iota < D_\\iota d < Q_\\iota \\bigr]"
        )
        lines.append("\\]")
        lines.append("where the conditions are:")
        lines.append("\\begin{gather}")
        lines.append(" \\\\\n".join(rows))
        lines.append("\\end{gather}")
    if art.form2 is not None:
        lines.append("\\[")
        lines.append(
            "\\exists b\\, \\exists c\\, \\forall f\\,"
            "\\bigl[ f \\le F(a,b,c) \\Rightarrow W(a,b,c,f) > 0 \\bigr]"
        )
        lines.append("\\]")
        lines.append("with")
        lines.append("\\[ F = %s \\]" % poly_to_latex(art.form2.F))
        if art.form2.W is not None:
            lines.append("\\[ W = %s \\]" % poly_to_latex(art.form2.W))
        else:
            lines.append("\\[ W = \\prod_i W_i, \\text{ with factors } \\]")
            for p in art.form2.w_factors:
                lines.append("\\[ W_i = %s \\]" % poly_to_latex(p))
    return "\n".join(lines) + "\n"
