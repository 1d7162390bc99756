"""Exact sparse multivariate polynomials over arbitrary-precision integers.

A :class:`Polynomial` holds an ordered tuple of variable names and a map
from exponent tuples to nonzero integer coefficients.  Everything is exact:
no floats, no modular shortcuts, no rounding.  Instances are immutable
after construction and all operations are pure functions, so values can be
shared freely across threads and worker processes.

Canonical form
--------------
* variables are kept in natural order (``a < b < h1 < h2 < h10 < k``);
* zero coefficients are never stored (the zero polynomial has no terms);
* the text rendering lists terms in graded-lexicographic order, highest
  first, with explicit ``*`` and ``^`` so it round-trips through the
  expression parser unchanged.

Two polynomials are equal iff they agree after aligning their variable
sets by name; a variable that only ever appears with exponent zero does
not affect equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from . import backend
from .errors import UnboundVariableError

PolyLike = Union["Polynomial", int]

_NAME_RE = re.compile(r"^([A-Za-z_]+?)(\d*)$")


def natural_key(name: str):
    """Sort key putting ``h2`` before ``h10``: (alpha prefix, numeric suffix)."""
    m = _NAME_RE.match(name)
    if m is None:
        return (name, -1)
    prefix, digits = m.groups()
    return (prefix, int(digits) if digits else -1)


def _sorted_vars(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=natural_key))


@dataclass(frozen=True)
class PolyStats:
    """Size summary of a polynomial (degree, terms, coefficient mass)."""

    degree_per_variable: dict[str, int]
    total_degree: int
    term_count: int
    abs_coefficient_sum: int
    max_abs_coefficient: int


class Polynomial:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("variables", "_terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple[int, ...], int]):
        vars_in = tuple(variables)
        ordered = _sorted_vars(vars_in)
        if len(ordered) != len(vars_in):
            raise ValueError("duplicate variable names: %r" % (vars_in,))
        if ordered != vars_in:
            perm = [vars_in.index(v) for v in ordered]
            terms = {tuple(e[i] for i in perm): c for e, c in terms.items()}
        clean: dict[tuple[int, ...], int] = {}
        nv = len(ordered)
        for exps, coeff in terms.items():
            if len(exps) != nv:
                raise ValueError("exponent tuple %r does not match %d variables" % (exps, nv))
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in %r" % (exps,))
            if coeff:
                clean[tuple(exps)] = int(coeff)
        object.__setattr__(self, "variables", ordered)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        # __slots__ plus the immutability guard break default pickling;
        # rebuild through the constructor instead.
        return (Polynomial, (self.variables, self._terms))

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str] = ()) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, value: int, variables: Iterable[str] = ()) -> "Polynomial":
        variables = tuple(variables)
        if value == 0:
            return cls(variables, {})
        return cls(variables, {(0,) * len(variables): int(value)})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls((name,), {(1,): 1})

    # -- introspection ------------------------------------------------

    def term_items(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Iterate ``(exponent_tuple, coefficient)`` pairs (unspecified order)."""
        return iter(self._terms.items())

    def term_count(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, monomial: Mapping[str, int]) -> int:
        """Coefficient of the monomial given as ``{variable: exponent}``."""
        exps = [0] * len(self.variables)
        for name, e in monomial.items():
            exps[self.variables.index(name)] = e
        return self._terms.get(tuple(exps), 0)

    def constant_term(self) -> int:
        return self._terms.get((0,) * len(self.variables), 0)

    def total_degree(self) -> int:
        """Largest exponent sum over the terms; 0 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=0)

    def degree_in(self, var: str) -> int:
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max((e[i] for e in self._terms), default=0)

    def used_variables(self) -> tuple[str, ...]:
        """Variables that occur with a positive exponent in some term."""
        used = [False] * len(self.variables)
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def stats(self) -> PolyStats:
        per_var = {v: 0 for v in self.variables}
        total = 0
        abs_sum = 0
        max_abs = 0
        for exps, coeff in self._terms.items():
            total = max(total, sum(exps))
            a = -coeff if coeff < 0 else coeff
            abs_sum += a
            if a > max_abs:
                max_abs = a
            for v, e in zip(self.variables, exps):
                if e > per_var[v]:
                    per_var[v] = e
        return PolyStats(per_var, total, len(self._terms), abs_sum, max_abs)

    # -- alignment ----------------------------------------------------

    def _projected(self, variables: tuple[str, ...]) -> dict[tuple[int, ...], int]:
        """Term map of self re-indexed onto a superset variable tuple."""
        if variables == self.variables:
            return self._terms
        pos = {v: i for i, v in enumerate(variables)}
        idx = [pos[v] for v in self.variables]
        nv = len(variables)
        out: dict[tuple[int, ...], int] = {}
        for exps, coeff in self._terms.items():
            e = [0] * nv
            for i, x in zip(idx, exps):
                e[i] = x
            out[tuple(e)] = coeff
        return out

    @staticmethod
    def _coerce(value: PolyLike) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, int):
            return Polynomial.constant(value)
        raise TypeError("cannot treat %r as a polynomial" % (value,))

    def _align(self, other: PolyLike):
        other = self._coerce(other)
        if self.variables == other.variables:
            return self.variables, self._terms, other._terms
        union = _sorted_vars(self.variables + other.variables)
        return union, self._projected(union), other._projected(union)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: PolyLike) -> "Polynomial":
        variables, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            cur = out.get(e, 0) + c
            if cur:
                out[e] = cur
            else:
                out.pop(e, None)
        return Polynomial(variables, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: PolyLike) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: PolyLike) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: PolyLike) -> "Polynomial":
        variables, a, b = self._align(other)
        return Polynomial(variables, backend.mul_terms(a, b, len(variables)))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1, self.variables)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (Polynomial, int)):
            _, a, b = self._align(other)
            return a == b
        return NotImplemented

    __hash__ = None  # mutable dict inside; identity-free value semantics

    # -- evaluation and substitution -----------------------------------

    def evaluate(self, point: Mapping[str, int]) -> int:
        """Exact value at an integer point binding every variable in use."""
        values = []
        for v in self.variables:
            x = point.get(v)
            if x is None:
                if self.degree_in(v) == 0:
                    x = 0  # carried but unused variable
                else:
                    raise UnboundVariableError("no value for variable %r" % v)
            values.append(x)
        return backend.eval_terms(self._terms, tuple(values))

    def evaluate_partial(self, point: Mapping[str, int]) -> "Polynomial":
        """Substitute integers for a subset of variables, keeping the rest."""
        bound = [v for v in self.variables if v in point]
        if not bound:
            return self
        keep = [i for i, v in enumerate(self.variables) if v not in point]
        values = {i: point[v] for i, v in enumerate(self.variables) if v in point}
        caches: dict[int, dict[int, int]] = {i: {} for i in values}
        out: dict[tuple[int, ...], int] = {}
        for exps, coeff in self._terms.items():
            acc = coeff
            for i, x in values.items():
                e = exps[i]
                if e:
                    cache = caches[i]
                    p = cache.get(e)
                    if p is None:
                        p = x**e
                        cache[e] = p
                    acc *= p
            if not acc:
                continue
            key = tuple(exps[i] for i in keep)
            cur = out.get(key, 0) + acc
            if cur:
                out[key] = cur
            else:
                out.pop(key, None)
        return Polynomial(tuple(self.variables[i] for i in keep), out)

    def substitute(self, bindings: Mapping[str, PolyLike]) -> "Polynomial":
        """Simultaneous substitution; unbound variables pass through."""
        live = {k: self._coerce(v) for k, v in bindings.items() if k in self.variables}
        if not live:
            return self
        caches: dict[str, dict[int, Polynomial]] = {v: {} for v in live}

        def power(name: str, e: int) -> Polynomial:
            cache = caches[name]
            p = cache.get(e)
            if p is None:
                p = live[name] ** e
                cache[e] = p
            return p

        total = Polynomial.zero()
        for exps, coeff in self._terms.items():
            term = Polynomial.constant(coeff)
            for v, e in zip(self.variables, exps):
                if e == 0:
                    continue
                if v in live:
                    term = term * power(v, e)
                else:
                    term = term * Polynomial((v,), {(e,): 1})
            total = total + term
        return total

    def coefficients_in(self, var: str) -> list["Polynomial"]:
        """Coefficients c_0..c_n with ``self = sum c_i * var**i`` exactly.

        The returned polynomials do not contain ``var``.
        """
        if var not in self.variables:
            return [self]
        i = self.variables.index(var)
        rest = tuple(v for j, v in enumerate(self.variables) if j != i)
        n = self.degree_in(var)
        buckets: list[dict[tuple[int, ...], int]] = [dict() for _ in range(n + 1)]
        for exps, coeff in self._terms.items():
            key = tuple(e for j, e in enumerate(exps) if j != i)
            buckets[exps[i]][key] = coeff
        return [Polynomial(rest, bucket) for bucket in buckets]

    # -- rendering ----------------------------------------------------

    def _sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def canonical_text(self) -> str:
        """Graded-lex text form; parses back to an equal polynomial."""
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for exps, coeff in self._sorted_terms():
            factors = []
            for v, e in zip(self.variables, exps):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append("%s^%d" % (v, e))
            mag = -coeff if coeff < 0 else coeff
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not chunks:
                chunks.append("-" + body if coeff < 0 else body)
            else:
                chunks.append(("- " if coeff < 0 else "+ ") + body)
        return " ".join(chunks)

    def __str__(self) -> str:
        return self.canonical_text()

    def __repr__(self) -> str:
        return "Polynomial(%r)" % self.canonical_text()


def sum_polynomials(polys: Iterable[PolyLike]) -> Polynomial:
    """Sum many polynomials in one merge (linear in the total term count).

    Folding a long list with ``+`` would copy the accumulator per step;
    the parser and emitters use this instead.
    """
    items = [Polynomial._coerce(p) for p in polys]
    if not items:
        return Polynomial.zero()
    union = _sorted_vars(v for p in items for v in p.variables)
    out: dict[tuple[int, ...], int] = {}
    for p in items:
        for exps, coeff in p._projected(union).items():
            cur = out.get(exps, 0) + coeff
            if cur:
                out[exps] = cur
            else:
                out.pop(exps, None)
    return Polynomial(union, out)


def arith(op: str, lhs: Polynomial, rhs: PolyLike) -> Polynomial:
    """Dispatch helper covering the four ring operations by name."""
    if op == "add":
        return lhs + rhs
    if op == "subtract":
        return lhs - rhs
    if op == "multiply":
        return lhs * rhs
    if op == "power":
        if not isinstance(rhs, int):
            raise ValueError("power expects a nonnegative integer exponent")
        return lhs**rhs
    raise ValueError("unknown operation %r" % op)
