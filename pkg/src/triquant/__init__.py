"""Lowering of existential Diophantine representations of integer sets into
two three-quantifier target forms, with exact symbolic verification tooling.

An input is a polynomial R over a, h1..h_delta; the set it represents is
``{a : exists h1..h_delta with R(a, h) = 0}``.  The compiler produces

* form 1: ``exists b, c`` followed by a conjunction of interval conditions
  ``exists d [P < D*d < Q]`` with P, D, Q polynomial in (a, b, c);
* form 2: ``exists b, c  forall f [f <= F(a,b,c)  =>  W(a,b,c,f) > 0]``.

The ``semantics`` module cross-checks both against brute-force ground
truth; the ``cli`` module exposes compile/verify/report commands.
"""

__version__ = "0.1.0"

from .backend import active_backend
from .errors import TriquantError
from .poly import Polynomial, PolyStats, arith
from .parser import parse_polynomial
from .encoding import (
    EncodingConstants,
    NormalizedRepresentation,
    SourceRepresentation,
    Witness,
    build_constants,
    centered_digit_vanishes,
    compile_constants,
    decode_witness,
    multinomial,
    normalize,
    pack_digits,
    packing_polynomial,
    position_code,
    validate_source,
    witness_encode,
)
from .form_one import (
    Conjunct,
    FormOne,
    check_membership_form1,
    compile_form1,
    eval_conjunct,
    eval_form1_inner,
)
from .form_two import (
    FormTwo,
    IntervalTriple,
    assemble_form2,
    build_triples,
    compare_interval_and_window,
    compile_form2,
    eval_form2_naive,
    eval_form2_structural,
    eval_triple_exists,
    gap_product,
    symbolic_form2,
    synthetic_form2,
)
from .artifact import BUNDLED, CompiledArtifact, InputSpec, bundled_artifact, compile_input

__all__ = [
    "__version__",
    "active_backend",
    "TriquantError",
    "Polynomial",
    "PolyStats",
    "arith",
    "parse_polynomial",
    "EncodingConstants",
    "NormalizedRepresentation",
    "SourceRepresentation",
    "Witness",
    "build_constants",
    "centered_digit_vanishes",
    "compile_constants",
    "decode_witness",
    "multinomial",
    "normalize",
    "pack_digits",
    "packing_polynomial",
    "position_code",
    "validate_source",
    "witness_encode",
    "Conjunct",
    "FormOne",
    "check_membership_form1",
    "compile_form1",
    "eval_conjunct",
    "eval_form1_inner",
    "FormTwo",
    "IntervalTriple",
    "assemble_form2",
    "build_triples",
    "compare_interval_and_window",
    "compile_form2",
    "eval_form2_naive",
    "eval_form2_structural",
    "eval_triple_exists",
    "gap_product",
    "symbolic_form2",
    "synthetic_form2",
    "BUNDLED",
    "CompiledArtifact",
    "InputSpec",
    "bundled_artifact",
    "compile_input",
]
