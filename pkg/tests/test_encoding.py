"""Digit-coding layer: normalization tables, derived constants, witnesses."""

from itertools import product

import pytest

from triquant.encoding import (
    build_constants,
    centered_digit_vanishes,
    compile_constants,
    decode_witness,
    multinomial,
    normalize,
    pack_digits,
    packing_polynomial,
    position_code,
    unknown_names,
    validate_source,
    witness_encode,
)
from triquant.errors import (
    DegreeZeroError,
    IndexOverflowError,
    NoUnknownsError,
    UnknownVariableError,
)
from triquant.parser import parse_polynomial
from triquant.poly import Polynomial


def consts_for(expr, delta):
    return compile_constants(delta, parse_polynomial(expr, delta=delta))


# -- validate_source --------------------------------------------------------


def test_validate_accepts_and_measures_degree():
    src = validate_source(1, parse_polynomial("a - 2*h1", delta=1))
    assert src.lam == 1 and src.delta == 1
    src = validate_source(2, parse_polynomial("(h1+2)*(h2+2) - a", delta=2))
    assert src.lam == 2


def test_validate_rejects_constants_and_no_unknowns():
    with pytest.raises(DegreeZeroError):
        validate_source(1, Polynomial.constant(5))
    with pytest.raises(DegreeZeroError):
        validate_source(1, Polynomial.zero())
    with pytest.raises(NoUnknownsError):
        validate_source(0, Polynomial.variable("a"))
    with pytest.raises(UnknownVariableError):
        validate_source(1, Polynomial.variable("h2"))


# -- multinomial and position codes ----------------------------------------


def test_multinomial_values():
    assert multinomial((1, 1), 2) == 2
    assert multinomial((0, 2), 2) == 1
    assert multinomial((1, 1), 3) == 6
    assert multinomial((0, 0), 3) == 1
    with pytest.raises(IndexOverflowError):
        multinomial((2, 2), 3)


def test_position_code_values():
    assert position_code((1, 0), 1) == 1
    assert position_code((1, 2), 2) == 7
    assert position_code((), 3) == 0


@pytest.mark.parametrize("lam", [1, 2, 3])
@pytest.mark.parametrize("delta", [1, 2, 3])
def test_position_code_injective(lam, delta):
    codes = {
        position_code(l, lam)
        for l in product(range(lam + 1), repeat=delta + 1)
    }
    assert len(codes) == (lam + 1) ** (delta + 1)


def test_position_code_enumeration_lambda2():
    codes = sorted(
        position_code(l, 2) for l in product(range(3), repeat=2)
    )
    assert codes == list(range(9))


# -- normalization ----------------------------------------------------------


def reconstruction(norm):
    src = norm.source
    names = ("a",) + unknown_names(src.delta)
    total = Polynomial.zero(names)
    for alpha, r in norm.rho.items():
        mono = Polynomial(names, {alpha: 1})
        total = total + r * norm.kappa[alpha] * mono
    return total


def test_normalize_even():
    norm = normalize(validate_source(1, parse_polynomial("a - 2*h1", delta=1)))
    assert norm.scale == 1
    assert norm.rho == {(1, 0): 1, (0, 1): -2}
    assert reconstruction(norm) == norm.source.R * norm.scale


def test_normalize_squares():
    norm = normalize(validate_source(1, parse_polynomial("a - h1^2", delta=1)))
    assert norm.scale == 2
    assert norm.rho[(1, 0)] == 1 and norm.kappa[(1, 0)] == 2
    assert norm.rho[(0, 2)] == -2 and norm.kappa[(0, 2)] == 1
    assert reconstruction(norm) == norm.source.R * norm.scale


def test_normalize_trivial_set():
    norm = normalize(validate_source(1, parse_polynomial("h1", delta=1)))
    assert norm.scale == 1
    assert norm.rho == {(0, 1): 1}


def test_normalize_flips_sign_when_lead_negative():
    # 2*h1 - a has a negative coefficient at the smallest position code, so
    # the scale flips; the zero set is unchanged.
    norm = normalize(validate_source(1, parse_polynomial("2*h1 - a", delta=1)))
    assert norm.scale == -1
    assert norm.rho == {(1, 0): 1, (0, 1): -2}
    assert reconstruction(norm) == norm.source.R * norm.scale


@pytest.mark.parametrize(
    "expr,delta",
    [
        ("a - 2*h1", 1),
        ("a - h1^2", 1),
        ("(h1+2)*(h2+2) - a", 2),
        ("h1", 1),
        ("3*a^2 - h1*h2 + 7*h2 - 5", 2),
    ],
)
def test_normalize_reconstruction(expr, delta):
    norm = normalize(validate_source(delta, parse_polynomial(expr, delta=delta)))
    assert abs(norm.scale) == [1, 2, 6][norm.source.lam - 1]
    assert reconstruction(norm) == norm.source.R * norm.scale


# -- derived constants -------------------------------------------------------


def test_constants_even():
    consts = consts_for("a - 2*h1", 1)
    assert consts.nu == 2
    assert consts.V == parse_polynomial("k - 2", variables=("k",))
    assert consts.gamma == 19
    assert consts.K == parse_polynomial("19*a + 19*c + 38", variables=("a", "c"))
    a, h1 = Polynomial.variable("a"), Polynomial.variable("h1")
    assert list(consts.T) == [
        Polynomial.constant(-2),
        1 - 2 * a,
        a - 2 * h1,
        h1,
        Polynomial.zero(),
    ]


def test_constants_squares():
    consts = consts_for("a - h1^2", 1)
    assert consts.nu == 6
    assert consts.V == parse_polynomial("k^5 - 2", variables=("k",))
    assert len(consts.T) == 13
    assert consts.T[6] == 2 * (
        Polynomial.variable("a") - Polynomial.variable("h1") ** 2
    )


def test_constants_full_set():
    consts = consts_for("h1", 1)
    assert consts.nu == 2
    assert consts.V == Polynomial.constant(1)
    a, h1 = Polynomial.variable("a"), Polynomial.variable("h1")
    assert list(consts.T) == [
        Polynomial.constant(1),
        a,
        h1,
        Polynomial.zero(),
        Polynomial.zero(),
    ]
    assert consts.gamma == 7


def test_constants_composites():
    consts = consts_for("(h1+2)*(h2+2) - a", 2)
    assert consts.nu == 18
    assert consts.V == parse_polynomial(
        "8*k^18 - k^17 + 2*k^15 + 2*k^9 + k^6", variables=("k",)
    )
    assert consts.gamma == 449
    assert consts.T[18] == 2 * consts.source.R


def test_gamma_dominates_coefficient_mass():
    for expr, delta in [("a - 2*h1", 1), ("(h1+2)*(h2+2) - a", 2)]:
        consts = consts_for(expr, delta)
        mass = sum(t.stats().abs_coefficient_sum for t in consts.T)
        assert consts.gamma > 2 * mass
        # no cancellation happens in the carrier expansion, so the mass
        # factors exactly as (sum |rho|) * (delta + 2)**lam
        rho_mass = sum(abs(r) for r in consts.norm.rho.values())
        assert mass == rho_mass * (consts.delta + 2) ** consts.lam


# -- expansion identities ----------------------------------------------------


@pytest.mark.parametrize("lam", [1, 2, 3])
@pytest.mark.parametrize("delta", [1, 2, 3])
def test_packed_base_expansion_structure(lam, delta):
    """Expanding (1 + a*k + packed)**lam puts multinomial(alpha) at position
    code N(alpha) for each multi-index alpha, with no collisions."""
    names = ("a",) + unknown_names(delta)
    base = (
        1
        + Polynomial.variable("a") * Polynomial.variable("k")
        + packing_polynomial(lam, delta)
    )
    expansion = base**lam
    k_index = expansion.variables.index("k")
    seen = set()
    for exps, coeff in expansion.term_items():
        alpha = tuple(
            exps[expansion.variables.index(v)] for v in names
        )
        assert sum(alpha) <= lam
        assert exps[k_index] == position_code(alpha, lam)
        assert coeff == multinomial(alpha, lam)
        seen.add(alpha)
    assert len(seen) == expansion.term_count()
    # every multi-index with sum <= lam shows up
    expected = sum(
        1
        for alpha in product(range(lam + 1), repeat=delta + 1)
        if sum(alpha) <= lam
    )
    assert len(seen) == expected


@pytest.mark.parametrize(
    "expr,delta",
    [("a - 2*h1", 1), ("a - h1^2", 1), ("(h1+2)*(h2+2) - a", 2), ("h1", 1)],
)
def test_carrier_identity_and_center(expr, delta):
    """sum T_i * k^i equals V(k) * (1 + a*k + packed)**lam symbolically, and
    the center coefficient is the scaled input."""
    consts = consts_for(expr, delta)
    lam = consts.lam
    k = Polynomial.variable("k")
    base = 1 + Polynomial.variable("a") * k + packing_polynomial(lam, delta)
    rhs = consts.V * base**lam
    lhs = Polynomial.zero()
    for i, t in enumerate(consts.T):
        lhs = lhs + t * k**i
    assert lhs == rhs
    assert consts.T[consts.nu] == consts.source.R * consts.norm.scale
    assert all(t.total_degree() <= lam for t in consts.T)


# -- digit packing -----------------------------------------------------------


def test_pack_digits_values():
    assert pack_digits((3, 5), 10, 1) == 50300
    assert pack_digits((2,), 10, 2) == 2000
    assert pack_digits((0, 0, 0), 99, 3) == 0


def test_witness_encode_even():
    consts = consts_for("a - 2*h1", 1)
    w = witness_encode(consts, 4, (2,))
    assert (w.c, w.k, w.b) == (2, 152, 46208)
    w = witness_encode(consts, 3, (1,))
    assert (w.c, w.k, w.b) == (1, 114, 12996)
    w = witness_encode(consts, 0, (0,))
    assert (w.c, w.b) == (0, 0)


def test_decode_witness_even():
    consts = consts_for("a - 2*h1", 1)
    assert decode_witness(consts, 4, 46208, 2) == (2,)
    assert decode_witness(consts, 4, 46209, 2) is None  # stray units digit
    assert decode_witness(consts, 4, 0, 0) == (0,)


def test_decode_rejects_digit_above_c():
    consts = consts_for("a - 2*h1", 1)
    k = consts.base_value(5, 1)
    assert decode_witness(consts, 5, 2 * k**2, 1) is None  # digit 2 > c = 1


def test_decode_rejects_stray_high_digit():
    consts = consts_for("a - 2*h1", 1)
    k = consts.base_value(5, 2)
    b = 2 * k**2 + k**3
    assert decode_witness(consts, 5, b, 2) is None


@pytest.mark.parametrize(
    "expr,delta",
    [("a - 2*h1", 1), ("(h1+2)*(h2+2) - a", 2)],
)
def test_encode_decode_round_trip(expr, delta):
    consts = consts_for(expr, delta)
    for h in product(range(4), repeat=delta):
        for a in (0, 1, 7):
            w = witness_encode(consts, a, h)
            assert decode_witness(consts, a, w.b, w.c) == h


# -- centered digit test -----------------------------------------------------


def test_centered_digit_examples():
    consts = consts_for("a - 2*h1", 1)
    assert centered_digit_vanishes(consts, 4, 46208, 2) is True
    assert centered_digit_vanishes(consts, 3, 12996, 1) is False
    full = consts_for("h1", 1)
    w = witness_encode(full, 11, (0,))
    assert centered_digit_vanishes(full, 11, w.b, w.c) is True


@pytest.mark.parametrize(
    "expr,delta",
    [("a - 2*h1", 1), ("a - h1^2", 1), ("(h1+2)*(h2+2) - a", 2), ("h1", 1)],
)
def test_centered_digit_matches_residual(expr, delta):
    """At every encoded point the digit test agrees with R(a, h) = 0."""
    consts = consts_for(expr, delta)
    names = unknown_names(delta)
    for a in range(0, 13):
        for h in product(range(5), repeat=delta):
            w = witness_encode(consts, a, h)
            point = {"a": a}
            point.update(zip(names, h))
            solves = consts.source.R.evaluate(point) == 0
            assert centered_digit_vanishes(consts, a, w.b, w.c) == solves


def test_low_carrier_values_fit_under_center():
    """|2 * sum_{i<nu} T_i(a,h) * k^i| < k**nu at encoded witnesses."""
    consts = consts_for("(h1+2)*(h2+2) - a", 2)
    names = unknown_names(2)
    for a, h1, h2 in [(0, 0, 0), (5, 1, 2), (14, 3, 4), (30, 10, 9)]:
        w = witness_encode(consts, a, (h1, h2))
        point = {"a": a, "h1": h1, "h2": h2}
        low = sum(
            t.evaluate(point) * w.k**i for i, t in enumerate(consts.T[: consts.nu])
        )
        assert abs(2 * low) < w.k**consts.nu
