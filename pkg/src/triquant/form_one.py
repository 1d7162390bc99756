"""First target form: a conjunction of single-existential interval conditions.

Each conjunct is a triple (P, D, Q) of polynomials in (a, b, c); the
conjunct holds at a point when some nonnegative integer d satisfies
``P < D*d < Q``.  The compiled form has exactly delta + 2 conjuncts:

* ``digit_window``     -- the centered-digit membership window;
* ``divisibility``     -- the digits below the first packing position vanish;
* ``digit_spacing_i``  -- digits between packing positions i and i+1 vanish
                          and the digit at position i stays <= c
                          (one conjunct per i = 1..delta-1);
* ``magnitude``        -- b stays below (c+1) * K**((lam+1)**delta).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .encoding import EncodingConstants, unknown_names, witness_encode
from .errors import SoundnessViolationError
from .poly import Polynomial

PROV_DIGIT_WINDOW = "digit_window"
PROV_DIVISIBILITY = "divisibility"
PROV_SPACING = "digit_spacing_%d"
PROV_MAGNITUDE = "magnitude"


@dataclass(frozen=True)
class Conjunct:
    """One interval condition: exists d >= 0 with P < D*d < Q."""

    provenance: str
    P: Polynomial
    D: Polynomial
    Q: Polynomial


@dataclass(frozen=True)
class FormOne:
    conjuncts: tuple[Conjunct, ...]

    @property
    def epsilon(self) -> int:
        return len(self.conjuncts)


def spacing_divisor_exponent(lam: int, i: int, variant: str = "derived") -> int:
    """Exponent of K in the i-th spacing divisor.

    ``derived`` is the exponent obtained by eliminating the remainder
    variable from the two-quantifier digit-spacing condition; ``printed``
    is a deliberately faulty off-by-two variant kept so the verification
    suite can demonstrate it catches exactly this class of bug.
    """
    if variant == "derived":
        return (lam + 1) ** (i + 1)
    if variant == "printed":
        return (lam + 1) ** (i - 1)
    raise ValueError("unknown spacing divisor variant %r" % variant)


def compile_form1(consts: EncodingConstants, spacing_variant: str = "derived") -> FormOne:
    """Build the delta + 2 conjuncts over (a, b, c).

    The digit-window conjunct substitutes ``z = d - V(K)*(1+a*K+b)**lam``:
    sign normalization (see ``normalize``) keeps ``V(K)*(1+a*K+b)**lam``
    positive everywhere, so every integer z satisfying the window is >= the
    negated bound and d ranges over exactly the nonnegative integers.
    """
    lam, nu = consts.lam, consts.nu
    delta = consts.delta
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
    carrier = VK * (1 + Polynomial.variable("a") * K + b) ** lam
    A = 2 * carrier * (1 + K_to(nu + 1))

    conjuncts = [
        Conjunct(PROV_DIGIT_WINDOW, A - K_to(nu), 2 * K_to(nu + 1), A + K_to(nu)),
        Conjunct(PROV_DIVISIBILITY, b - 1, K_to(lam + 1), b + 1),
    ]
    for i in range(1, delta):
        divisor = K_to(spacing_divisor_exponent(lam, i, spacing_variant))
        low = b - (c + 1) * K_to((lam + 1) ** i)
        conjuncts.append(Conjunct(PROV_SPACING % i, low, divisor, b + 1))
    top = (c + 1) * K_to((lam + 1) ** delta)
    conjuncts.append(Conjunct(PROV_MAGNITUDE, b - 1, b, top))
    return FormOne(tuple(conjuncts))


def satisfying_d(P: int, D: int, Q: int) -> Optional[int]:
    """Smallest nonnegative integer d with P < D*d < Q, or None.

    Exact integer interval arithmetic over the three sign cases of D.
    With D = 0 the condition collapses to P < 0 < Q.
    """
    if D == 0:
        return 0 if P < 0 < Q else None
    if D < 0:
        # P < D*d < Q  <=>  -Q < (-D)*d < -P
        P, D, Q = -Q, -D, -P
    d = P // D + 1
    if d < 0:
        d = 0
    return d if P < D * d < Q else None


def eval_conjunct(P: int, D: int, Q: int) -> bool:
    """True iff some nonnegative integer d satisfies P < D*d < Q."""
    return satisfying_d(P, D, Q) is not None


def eval_form1_inner(form: FormOne, a: int, b: int, c: int) -> bool:
    """Evaluate the conjunction at concrete (a, b, c)."""
    point = {"a": a, "b": b, "c": c}
    return all(
        eval_conjunct(
            conj.P.evaluate(point), conj.D.evaluate(point), conj.Q.evaluate(point)
        )
        for conj in form.conjuncts
    )


def check_membership_form1(
    form: FormOne, consts: EncodingConstants, a: int, h_bound: int
) -> bool:
    """Witness-search membership: does some h-tuple <= h_bound solve R = 0?

    Every found solution's encoded witness must be accepted by the
    compiled form; a rejection is a compiler soundness bug and raises
    rather than being silently treated as non-membership.
    """
    src = consts.source
    names = unknown_names(src.delta)
    for h in product(range(h_bound + 1), repeat=src.delta):
        point = {"a": a}
        point.update(zip(names, h))
        if src.R.evaluate(point) != 0:
            continue
        w = witness_encode(consts, a, h)
        if not eval_form1_inner(form, w.a, w.b, w.c):
            raise SoundnessViolationError(
                "form-1 rejects encoded witness a=%d h=%r (b=%d c=%d)"
                % (a, h, w.b, w.c)
            )
        return True
    return False
