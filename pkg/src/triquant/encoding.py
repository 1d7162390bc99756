"""Digit-coding layer: normalization, derived constants, witnesses.

The lowering packs a tuple of unknowns ``h1..h_delta`` into one integer
``b`` whose base-``k`` digits sit at positions ``(lam+1)**1 .. (lam+1)**delta``.
This module derives everything both target forms need:

* the normalized coefficient tables (``rho``/``kappa``) that rewrite the
  input polynomial as a combination of the monomials appearing in
  ``(1 + a*k + <packed digits>)**lam``;
* the weight polynomial ``V`` and the carrier coefficients ``T_0..T_{2*nu}``
  with ``T_nu`` a scaled copy of the input polynomial;
* the dominating constant ``gamma`` and base polynomial ``K(a, c)`` that
  make every carrier coefficient a legal centered digit;
* witness packing/unpacking and the O(1) centered-digit membership test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .errors import (
    DegreeZeroError,
    IndexOverflowError,
    NoUnknownsError,
    UnknownVariableError,
)
from .poly import Polynomial


def unknown_names(delta: int) -> tuple[str, ...]:
    return tuple("h%d" % i for i in range(1, delta + 1))


@dataclass(frozen=True)
class SourceRepresentation:
    """Input triple: delta unknowns, total degree lam, polynomial R."""

    delta: int
    lam: int
    R: Polynomial


@dataclass(frozen=True)
class NormalizedRepresentation:
    """R rewritten as sum(rho[alpha] * kappa[alpha] * monomial(alpha)) == scale * R.

    ``scale`` is ``lam!`` up to sign; the sign is chosen so that the
    monomial with the smallest position code keeps a positive coefficient,
    which keeps the weight polynomial positive at every base value the
    pipeline ever uses (see ``build_constants``).
    """

    source: SourceRepresentation
    scale: int
    rho: dict[tuple[int, ...], int]
    kappa: dict[tuple[int, ...], int]


@dataclass(frozen=True)
class EncodingConstants:
    """Everything derived from a normalized representation.

    nu     -- digit position carrying the scaled input polynomial
    gamma  -- positive integer exceeding twice the coefficient mass of all T
    V      -- weight polynomial in k
    K      -- base polynomial in (a, c)
    T      -- carrier coefficients T_0..T_{2*nu} over (a, h1..h_delta)
    """

    norm: NormalizedRepresentation
    nu: int
    gamma: int
    V: Polynomial
    K: Polynomial
    T: tuple[Polynomial, ...]

    @property
    def source(self) -> SourceRepresentation:
        return self.norm.source

    @property
    def lam(self) -> int:
        return self.norm.source.lam

    @property
    def delta(self) -> int:
        return self.norm.source.delta

    def base_value(self, a: int, c: int) -> int:
        return self.K.evaluate({"a": a, "c": c})


@dataclass(frozen=True)
class Witness:
    """Encoded membership certificate: b packs h, c bounds it, k = K(a, c)."""

    a: int
    h: tuple[int, ...]
    b: int
    c: int
    k: int


def validate_source(delta: int, R: Polynomial) -> SourceRepresentation:
    """Check and wrap an input polynomial; degree and unknown count must be >= 1."""
    if delta < 1:
        raise NoUnknownsError("need at least one unknown, got delta=%d" % delta)
    allowed = {"a", *unknown_names(delta)}
    stray = [v for v in R.used_variables() if v not in allowed]
    if stray:
        raise UnknownVariableError(
            "variables %r not among a, h1..h%d" % (stray, delta), None
        )
    lam = R.total_degree()
    if lam < 1:
        raise DegreeZeroError(
            "constant polynomial (degree 0) does not define a usable representation"
        )
    aligned = R + Polynomial.zero(("a",) + unknown_names(delta))
    return SourceRepresentation(delta, lam, aligned)


def multinomial(alpha: Sequence[int], lam: int) -> int:
    """Multinomial coefficient lam! / (alpha_0! ... alpha_d! (lam - sum)!)."""
    s = sum(alpha)
    if s > lam:
        raise IndexOverflowError(
            "multi-index %r sums to %d > lam=%d" % (tuple(alpha), s, lam)
        )
    out = math.factorial(lam) // math.factorial(lam - s)
    for a in alpha:
        out //= math.factorial(a)
    return out


def position_code(l: Sequence[int], lam: int) -> int:
    """Digit position sum(l_i * (lam+1)**i); injective when all l_i <= lam."""
    base = lam + 1
    total = 0
    weight = 1
    for x in l:
        total += x * weight
        weight *= base
    return total


def normalize(src: SourceRepresentation) -> NormalizedRepresentation:
    """Rescale R by lam! (and a sign) into the rho/kappa table form.

    rho[alpha] = scale * coeff(alpha) / kappa[alpha] is always an exact
    integer because kappa[alpha] divides lam!.  The sign of ``scale`` is
    chosen so the rho entry at the smallest position code is positive.
    """
    lam = src.lam
    base_scale = math.factorial(lam)
    rho: dict[tuple[int, ...], int] = {}
    kappa: dict[tuple[int, ...], int] = {}
    for alpha, coeff in src.R.term_items():
        k = multinomial(alpha, lam)
        kappa[alpha] = k
        quotient, remainder = divmod(base_scale * coeff, k)
        assert remainder == 0  # kappa divides lam! by construction
        rho[alpha] = quotient
    scale = base_scale
    lead = min(rho, key=lambda a: position_code(a, lam))
    if rho[lead] < 0:
        scale = -scale
        rho = {a: -r for a, r in rho.items()}
    return NormalizedRepresentation(src, scale, rho, kappa)


def packing_polynomial(lam: int, delta: int) -> Polynomial:
    """Symbolic digit packer: sum of h_i * k**((lam+1)**i) over i = 1..delta."""
    out = Polynomial.zero(("k",) + unknown_names(delta))
    for i, name in enumerate(unknown_names(delta), start=1):
        out = out + Polynomial.variable(name) * Polynomial.variable("k") ** ((lam + 1) ** i)
    return out


def pack_digits(h: Sequence[int], k: int, lam: int) -> int:
    """Numeric digit packer: sum of h_i * k**((lam+1)**i)."""
    total = 0
    for i, x in enumerate(h, start=1):
        total += x * k ** ((lam + 1) ** i)
    return total


def build_constants(norm: NormalizedRepresentation) -> EncodingConstants:
    """Expand the carrier identity and derive nu, gamma, V, K and T.

    Expands ``V(k) * (1 + a*k + <packed digits>)**lam`` and collects the
    coefficient of each power of k.  Asserts the structural facts the rest
    of the pipeline relies on: the k-degree stays <= 2*nu, every carrier
    coefficient has degree <= lam, and the nu-th one equals scale * R.
    """
    src = norm.source
    lam, delta = src.lam, src.delta
    nu = lam * (lam + 1) ** delta

    k = Polynomial.variable("k")
    v_poly = Polynomial.zero(("k",))
    for alpha, r in sorted(norm.rho.items()):
        v_poly = v_poly + Polynomial.constant(r) * k ** (nu - position_code(alpha, lam))

    base = 1 + Polynomial.variable("a") * k + packing_polynomial(lam, delta)
    expansion = v_poly * base**lam
    assert expansion.degree_in("k") <= 2 * nu

    coeffs = expansion.coefficients_in("k")
    coeffs += [Polynomial.zero()] * (2 * nu + 1 - len(coeffs))
    T = tuple(coeffs)
    assert all(t.total_degree() <= lam for t in T)
    assert T[nu] == src.R * norm.scale

    mass = sum(t.stats().abs_coefficient_sum for t in T)
    gamma = 2 * mass + 1
    K = Polynomial.constant(gamma) * (2 + Polynomial.variable("a") + Polynomial.variable("c")) ** lam
    return EncodingConstants(norm, nu, gamma, v_poly, K, T)


def compile_constants(delta: int, R: Polynomial) -> EncodingConstants:
    """Convenience: validate, normalize and derive in one call."""
    return build_constants(normalize(validate_source(delta, R)))


def witness_encode(consts: EncodingConstants, a: int, h: Sequence[int]) -> Witness:
    """Pack a solution tuple into (b, c) with the smallest admissible c."""
    h = tuple(h)
    c = max(h) if h else 0
    k = consts.base_value(a, c)
    b = pack_digits(h, k, consts.lam)
    point = {"a": a}
    point.update(zip(unknown_names(consts.delta), h))
    # Base dominance contract: every carrier value is a legal centered digit.
    assert all(k > 2 * abs(t.evaluate(point)) for t in consts.T)
    return Witness(a, h, b, c, k)


def decode_witness(
    consts: EncodingConstants, a: int, b: int, c: int
) -> Optional[tuple[int, ...]]:
    """Recover h from (b, c), or None if b is not a clean digit packing.

    Expands b in base k = K(a, c) and accepts iff the nonzero digits sit
    exactly at positions (lam+1)**1 .. (lam+1)**delta and none exceeds c.
    """
    lam, delta = consts.lam, consts.delta
    k = consts.base_value(a, c)
    positions = {(lam + 1) ** i: i - 1 for i in range(1, delta + 1)}
    top = (lam + 1) ** delta
    h = [0] * delta
    value = b
    pos = 0
    while value:
        if pos > top:
            return None
        value, digit = divmod(value, k)
        if digit == 0:
            pos += 1
            continue
        slot = positions.get(pos)
        if slot is None or digit > c:
            return None
        h[slot] = digit
        pos += 1
    return tuple(h)


def centered_digit_vanishes(consts: EncodingConstants, a: int, b: int, c: int) -> bool:
    """Decide whether the nu-th centered digit of V(k)*(1+a*k+b)**lam is zero.

    Equivalent to the existence of an integer z with
    ``-k**nu < 2*(V(k)*(1+a*k+b)**lam - z*k**(nu+1)) < k**nu``; at most one
    z can satisfy the window, so testing the two integers around the exact
    quotient decides it in O(1) big-integer operations.
    """
    k = consts.base_value(a, c)
    m = consts.V.evaluate({"k": k}) * (1 + a * k + b) ** consts.lam
    q = k ** (consts.nu + 1)
    window = k**consts.nu
    floor = m // q
    for z in (floor, floor + 1):
        r = 2 * (m - z * q)
        if -window < r < window:
            return True
    return False
