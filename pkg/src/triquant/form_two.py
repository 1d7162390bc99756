"""Second target form: one bounded-universal polynomial inequality.

The conjunction of interval conditions ``exists z [s_i < z*g_i < t_i]``
(arbitrary integer z this time) is folded into a single statement

    for all f:  f <= F(a, b, c)  implies  W(a, b, c, f) > 0

where F stacks disjoint windows of width 2*s_i**2 + 2*t_i**2 + 4 and W is
the product of shifted gap products, one pair of linear-in-f factors per
interval condition.  The full expansion of W explodes combinatorially for
larger inputs, so a compiled form always carries the expanded *factors*
(a faithful closed-form representation of W as their product) and carries
the fully expanded polynomial only when an operation budget allows it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .encoding import EncodingConstants
from .errors import CapExceededError, NonPositiveGError, TripleContractViolation
from .form_one import (
    PROV_DIGIT_WINDOW,
    PROV_DIVISIBILITY,
    PROV_MAGNITUDE,
    PROV_SPACING,
    spacing_divisor_exponent,
)
from .poly import Polynomial, PolyLike

# Expanding W is only attempted while the estimated number of coefficient
# multiplications stays under this budget.  The bundled small sets expand
# comfortably; the larger ones would need >1e10 operations and gigabytes.
DEFAULT_EXPAND_OPS_BUDGET = 100_000_000


@dataclass(frozen=True)
class IntervalTriple:
    """Data of one condition ``exists z [s < z*g < t]`` over (a, b, c)."""

    provenance: str
    g: Polynomial
    s: Polynomial
    t: Polynomial


@dataclass(frozen=True)
class FormTwo:
    """Bound polynomial F, product polynomial W, and the source triples.

    ``w_factors`` are the 2*epsilon expanded factors of W, each of degree
    one in f; their product IS W.  ``W`` holds the expanded product when it
    was computed, else None.
    """

    triples: tuple[IntervalTriple, ...]
    F: Polynomial
    w_factors: tuple[Polynomial, ...]
    W: Optional[Polynomial]

    @property
    def epsilon(self) -> int:
        return len(self.triples)

    def w_degree_in(self, var: str) -> int:
        # Degrees add across factors: integer coefficients form a domain,
        # so leading terms cannot cancel.
        return sum(f.degree_in(var) for f in self.w_factors)

    def w_value(self, point: Mapping[str, int]) -> int:
        value = 1
        for factor in self.w_factors:
            value *= factor.evaluate(point)
        return value


def gap_product(g, s, t, y):
    """The product ((y-1)*g - s) * (y*g - t); accepts ints or polynomials.

    Under the contracts g > 0 and t - s <= g its positivity at integer y
    is equivalent to ``(y-1)*g - s > 0  or  t - y*g > 0``.
    """
    return ((y - 1) * g - s) * (y * g - t)


def build_triples(
    consts: EncodingConstants, spacing_variant: str = "derived"
) -> list[IntervalTriple]:
    """Interval triples mirroring the form-1 conjuncts, with z unrestricted.

    At every nonnegative point each triple satisfies the contract
    ``g > 0`` and ``t - s <= g`` required by the window folding.
    """
    lam, nu, delta = consts.lam, consts.nu, consts.delta
    b = Polynomial.variable("b")
    c = Polynomial.variable("c")
    K = consts.K
    kpow: dict[int, Polynomial] = {}

    def K_to(e: int) -> Polynomial:
        p = kpow.get(e)
        if p is None:
            p = K**e
            kpow[e] = p
        return p

    VK = consts.V.substitute({"k": K})
    M = 2 * VK * (1 + Polynomial.variable("a") * K + b) ** lam

    triples = [
        IntervalTriple(PROV_DIGIT_WINDOW, 2 * K_to(nu + 1), M - K_to(nu), M + K_to(nu)),
        IntervalTriple(PROV_DIVISIBILITY, K_to(lam + 1), b - 1, b + 1),
    ]
    for i in range(1, delta):
        divisor = K_to(spacing_divisor_exponent(lam, i, spacing_variant))
        triples.append(
            IntervalTriple(
                PROV_SPACING % i, divisor, b - (c + 1) * K_to((lam + 1) ** i), b + 1
            )
        )
    top = (c + 1) * K_to((lam + 1) ** delta)
    triples.append(IntervalTriple(PROV_MAGNITUDE, 2 * top, b - top, top - b))
    return triples


def _expand_product(
    factors: Sequence[Polynomial], ops_budget: int
) -> Optional[Polynomial]:
    """Multiply factors smallest-first, or return None when too large.

    The go/no-go decision is made up front from size bounds alone (term
    counts capped by the dense bound from per-variable degrees), so nothing
    is computed and thrown away when the product is out of reach.
    """
    pending = sorted(factors, key=lambda p: p.term_count())
    degrees: dict[str, int] = {}
    acc_bound = 1
    total_ops = 0
    for factor in pending:
        total_ops += acc_bound * factor.term_count()
        if total_ops > ops_budget:
            return None
        for v in factor.variables:
            d = factor.degree_in(v)
            if d:
                degrees[v] = degrees.get(v, 0) + d
        dense_bound = 1
        for d in degrees.values():
            dense_bound *= d + 1
        acc_bound = min(acc_bound * factor.term_count(), dense_bound)
    acc = Polynomial.constant(1)
    for factor in pending:
        acc = acc * factor
    return acc


def assemble_form2(
    triples: Sequence[IntervalTriple],
    expand: str = "auto",
    ops_budget: int = DEFAULT_EXPAND_OPS_BUDGET,
) -> FormTwo:
    """Fold interval triples into (F, W).

    F is the cumulative window bound sum(2*s_i**2 + 2*t_i**2 + 4).  Each
    triple contributes two factors linear in f,

        (f - shift_i - 1) * g_i - s_i   and   (f - shift_i) * g_i - t_i,

    with shift_i = F_{i-1} + s_i**2 + t_i**2 + 2 placing the i-th window on
    the half-open span (F_{i-1}, F_i].  ``expand`` is one of ``auto``
    (expand W within the operation budget), ``never`` or ``always``.
    """
    if expand not in ("auto", "never", "always"):
        raise ValueError("expand must be auto, never or always")
    f = Polynomial.variable("f")
    prefix = Polynomial.zero()  # empty window sum
    factors: list[Polynomial] = []
    for triple in triples:
        s2 = triple.s * triple.s
        t2 = triple.t * triple.t
        shift = prefix + s2 + t2 + 2
        fg = f * triple.g
        shifted_g = shift * triple.g
        factors.append(fg - shifted_g - triple.g - triple.s)
        factors.append(fg - shifted_g - triple.t)
        prefix = prefix + 2 * s2 + 2 * t2 + 4
    expanded: Optional[Polynomial] = None
    if expand == "always":
        expanded = _expand_product(factors, ops_budget=1 << 62)
    elif expand == "auto":
        expanded = _expand_product(factors, ops_budget)
    return FormTwo(tuple(triples), prefix, tuple(factors), expanded)


def compile_form2(
    consts: EncodingConstants,
    expand: str = "auto",
    spacing_variant: str = "derived",
    ops_budget: int = DEFAULT_EXPAND_OPS_BUDGET,
) -> FormTwo:
    return assemble_form2(
        build_triples(consts, spacing_variant), expand=expand, ops_budget=ops_budget
    )


def synthetic_form2(
    values: Sequence[tuple[int, int, int]], expand: str = "auto"
) -> FormTwo:
    """Fold concrete integer triples (g, s, t); used by the window suites."""
    triples = [
        IntervalTriple(
            "synthetic_%d" % i,
            Polynomial.constant(g),
            Polynomial.constant(s),
            Polynomial.constant(t),
        )
        for i, (g, s, t) in enumerate(values, start=1)
    ]
    return assemble_form2(triples, expand=expand)


def symbolic_form2(epsilon: int, expand: str = "never") -> FormTwo:
    """Generic (F, W) over fresh variables g1.., s1.., t1..; W has 3e+1 vars."""
    triples = [
        IntervalTriple(
            "generic_%d" % i,
            Polynomial.variable("g%d" % i),
            Polynomial.variable("s%d" % i),
            Polynomial.variable("t%d" % i),
        )
        for i in range(1, epsilon + 1)
    ]
    return assemble_form2(triples, expand=expand)


def eval_triple_exists(g: int, s: int, t: int) -> bool:
    """True iff some integer z satisfies s < z*g < t (g must be positive)."""
    if g <= 0:
        raise NonPositiveGError("interval scale must be positive, got g=%d" % g)
    z = s // g + 1  # smallest integer with z*g > s
    return z * g < t


def triple_values(
    triple: IntervalTriple, point: Mapping[str, int]
) -> tuple[int, int, int]:
    return (
        triple.g.evaluate(point),
        triple.s.evaluate(point),
        triple.t.evaluate(point),
    )


def eval_form2_structural(form: FormTwo, a: int, b: int, c: int) -> bool:
    """Decide the conjunction triple-by-triple (no enumeration of f).

    Checks the gap contract at the point first; a violation means the
    compiler produced a malformed triple and is reported as such.
    """
    point = {"a": a, "b": b, "c": c}
    ok = True
    for triple in form.triples:
        g, s, t = triple_values(triple, point)
        if g <= 0 or t - s > g:
            raise TripleContractViolation(
                "triple %s violates g>0 / t-s<=g at a=%d b=%d c=%d (g=%d s=%d t=%d)"
                % (triple.provenance, a, b, c, g, s, t)
            )
        ok = eval_triple_exists(g, s, t) and ok
    return ok


def eval_form2_naive(form: FormTwo, a: int, b: int, c: int, cap: int) -> bool:
    """Enumerate f = 0..F(a,b,c) and test W > 0 pointwise.

    Only usable while F stays under ``cap``; raises CapExceededError
    otherwise so callers fall back to the structural evaluator.  Each
    factor is linear in f, so the sweep costs two big-integer operations
    per factor per value of f.
    """
    point = {"a": a, "b": b, "c": c}
    bound = form.F.evaluate(point)
    if bound > cap:
        raise CapExceededError("F(a,b,c) = %d exceeds cap %d" % (bound, cap))
    lines = []
    for factor in form.w_factors:
        partial = factor.evaluate_partial(point)
        lines.append(
            (partial.coefficient({}), partial.coefficient({"f": 1}))
        )
    for f in range(bound + 1):
        w = 1
        for base, slope in lines:
            w *= base + slope * f
        if w <= 0:
            return False
    return True


@dataclass(frozen=True)
class WindowCheck:
    """Both sides of the single-interval window equivalence."""

    exists_side: bool
    universal_side: bool

    @property
    def agree(self) -> bool:
        return self.exists_side == self.universal_side


def compare_interval_and_window(g: int, s: int, t: int) -> WindowCheck:
    """Exhaustively compare ``exists z [s < z*g < t]`` against the window test.

    The universal side checks, for every y with
    ``-s**2 - t**2 - 2 < y <= s**2 + t**2 + 2``, that
    ``(y-1)*g - s > 0  or  t - y*g > 0``.
    """
    if g <= 0:
        raise NonPositiveGError("interval scale must be positive, got g=%d" % g)
    exists_side = eval_triple_exists(g, s, t)
    radius = s * s + t * t + 2
    universal_side = all(
        (y - 1) * g - s > 0 or t - y * g > 0 for y in range(-radius + 1, radius + 1)
    )
    return WindowCheck(exists_side, universal_side)
