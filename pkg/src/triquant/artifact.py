"""Compiled-artifact bundle and the bundled example corpus."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import __version__
from .encoding import EncodingConstants, compile_constants
from .form_one import FormOne, compile_form1
from .form_two import FormTwo, compile_form2
from .parser import parse_polynomial


@dataclass(frozen=True)
class InputSpec:
    """A named input: delta unknowns and an expression over a, h1..h<delta>."""

    set_name: str
    delta: int
    expression: str


@dataclass(frozen=True)
class CompiledArtifact:
    """Everything the compiler derives from one input, ready to persist."""

    input: InputSpec
    constants: EncodingConstants
    form1: Optional[FormOne]
    form2: Optional[FormTwo]
    tool_version: str = __version__


def compile_input(
    spec: InputSpec,
    forms: str = "both",
    expand_w: str = "auto",
    spacing_variant: str = "derived",
) -> CompiledArtifact:
    """Parse, normalize and lower one input specification.

    ``forms`` selects which targets to build ("1", "2" or "both").  The
    input expression is re-rendered canonically so identical polynomials
    produce byte-identical artifacts regardless of input spelling.
    """
    R = parse_polynomial(spec.expression, delta=spec.delta)
    consts = compile_constants(spec.delta, R)
    canonical = InputSpec(spec.set_name, spec.delta, R.canonical_text())
    form1 = form2 = None
    if forms in ("1", "both"):
        form1 = compile_form1(consts, spacing_variant=spacing_variant)
    if forms in ("2", "both"):
        form2 = compile_form2(consts, expand=expand_w, spacing_variant=spacing_variant)
    if forms not in ("1", "2", "both"):
        raise ValueError("forms must be '1', '2' or 'both'")
    return CompiledArtifact(canonical, consts, form1, form2)


# Test corpus: covers delta in {1, 2}, lam in {1, 2}, and the b = 0 / c = 0
# edge cases (the degenerate full set accepts every a with h = 0).
BUNDLED: dict[str, InputSpec] = {
    "even": InputSpec("even", 1, "a - 2*h1"),
    "squares": InputSpec("squares", 1, "a - h1^2"),
    "composites": InputSpec("composites", 2, "(h1 + 2)*(h2 + 2) - a"),
    "full": InputSpec("full", 1, "h1"),
}


def bundled_artifact(name: str, **kwargs) -> CompiledArtifact:
    return compile_input(BUNDLED[name], **kwargs)
