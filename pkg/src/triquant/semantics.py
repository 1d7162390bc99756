"""Ground-truth oracles and end-to-end equivalence suites.

The suite ties three routes together for each tested value of a:

* brute-force search for a solution tuple h (the oracle);
* the form-1 conjunction evaluated at encoded witnesses and at sampled,
  perturbed and random (b, c) pairs;
* the form-2 triple conjunction (structural route) plus, where the bound
  F stays small enough, the literal enumeration of f (naive route).

Soundness failures (a genuine solution whose witness a form rejects),
completeness failures (a form accepting a point that does not decode to a
solution) and evaluator disagreements are returned as data, never raised.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional

from .artifact import CompiledArtifact
from .encoding import SourceRepresentation, decode_witness, unknown_names, witness_encode
from .errors import TripleContractViolation, TriquantError
from .form_one import eval_conjunct
from .form_two import eval_form2_naive, eval_triple_exists


def oracle_membership(src: SourceRepresentation, a: int, h_bound: int) -> bool:
    """True iff some tuple h with entries <= h_bound satisfies R(a, h) = 0."""
    return bool(_solutions(src, a, h_bound, first_only=True))


def _solutions(
    src: SourceRepresentation, a: int, h_bound: int, first_only: bool = False
) -> list[tuple[int, ...]]:
    names = unknown_names(src.delta)
    out = []
    for h in product(range(h_bound + 1), repeat=src.delta):
        point = {"a": a}
        point.update(zip(names, h))
        if src.R.evaluate(point) == 0:
            out.append(h)
            if first_only:
                break
    return out


@dataclass
class VerificationReport:
    """Outcome of one equivalence run; a pass has all failure lists empty."""

    set_name: str
    a_max: int
    h_bound: int
    bc_samples: int
    naive_cap: int
    seed: int
    soundness_failures: list[dict] = field(default_factory=list)
    completeness_failures: list[dict] = field(default_factory=list)
    evaluator_disagreements: list[dict] = field(default_factory=list)
    points_checked: int = 0
    witnesses_checked: int = 0
    naive_checks: int = 0
    growth: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not (
            self.soundness_failures
            or self.completeness_failures
            or self.evaluator_disagreements
        )

    def to_json_dict(self) -> dict:
        return {
            "set_name": self.set_name,
            "a_max": self.a_max,
            "h_bound": self.h_bound,
            "bc_samples": self.bc_samples,
            "naive_cap": self.naive_cap,
            "seed": self.seed,
            "passed": self.passed,
            "soundness_failures": self.soundness_failures,
            "completeness_failures": self.completeness_failures,
            "evaluator_disagreements": self.evaluator_disagreements,
            "points_checked": self.points_checked,
            "witnesses_checked": self.witnesses_checked,
            "naive_checks": self.naive_checks,
            "growth": self.growth,
        }

    def render_text(self) -> str:
        lines = [
            "set %s: a <= %d, h_bound %d, %d random (b,c) per a, naive cap %d, seed %d"
            % (
                self.set_name,
                self.a_max,
                self.h_bound,
                self.bc_samples,
                self.naive_cap,
                self.seed,
            ),
            "points checked: %d (witnesses %d, naive sweeps %d)"
            % (self.points_checked, self.witnesses_checked, self.naive_checks),
        ]
        for label, bucket in (
            ("soundness", self.soundness_failures),
            ("completeness", self.completeness_failures),
            ("evaluator agreement", self.evaluator_disagreements),
        ):
            if bucket:
                lines.append("%s failures: %d" % (label, len(bucket)))
                for entry in bucket[:10]:
                    lines.append("  %r" % (entry,))
            else:
                lines.append("%s: ok" % label)
        lines.append("result: %s" % ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def _counterexample(kind: str, a: int, b: int, c: int, **extra) -> dict:
    entry = {"kind": kind, "a": a, "b": str(b), "c": c}
    entry.update(extra)
    return entry


class _PointEvaluator:
    """Form evaluators partially evaluated at a fixed a (hot path helper)."""

    def __init__(self, art: CompiledArtifact, a: int):
        self.art = art
        self.a = a
        bind = {"a": a}
        self.conjuncts = None
        if art.form1 is not None:
            self.conjuncts = [
                (
                    conj.P.evaluate_partial(bind),
                    conj.D.evaluate_partial(bind),
                    conj.Q.evaluate_partial(bind),
                )
                for conj in art.form1.conjuncts
            ]
        self.triples = None
        if art.form2 is not None:
            self.triples = [
                (
                    triple.provenance,
                    triple.g.evaluate_partial(bind),
                    triple.s.evaluate_partial(bind),
                    triple.t.evaluate_partial(bind),
                )
                for triple in art.form2.triples
            ]
            self.F = art.form2.F.evaluate_partial(bind)

    def form1_inner(self, b: int, c: int) -> Optional[bool]:
        if self.conjuncts is None:
            return None
        point = {"b": b, "c": c}
        return all(
            eval_conjunct(P.evaluate(point), D.evaluate(point), Q.evaluate(point))
            for P, D, Q in self.conjuncts
        )

    def form2_structural(self, b: int, c: int) -> Optional[bool]:
        if self.triples is None:
            return None
        point = {"b": b, "c": c}
        ok = True
        for provenance, g, s, t in self.triples:
            gv, sv, tv = g.evaluate(point), s.evaluate(point), t.evaluate(point)
            if gv <= 0 or tv - sv > gv:
                raise TripleContractViolation(
                    "triple %s violates its contract at a=%d b=%d c=%d"
                    % (provenance, self.a, b, c)
                )
            ok = eval_triple_exists(gv, sv, tv) and ok
        return ok

    def bound_value(self, b: int, c: int) -> Optional[int]:
        if self.triples is None:
            return None
        return self.F.evaluate({"b": b, "c": c})


def _candidate_points(
    art: CompiledArtifact, a: int, witnesses, h_bound: int, bc_samples: int, rng
) -> list[tuple[int, int]]:
    consts = art.constants
    top_position = (consts.lam + 1) ** consts.delta
    seen: set[tuple[int, int]] = set()
    points: list[tuple[int, int]] = []

    def push(b: int, c: int):
        if b < 0 or c < 0:
            return
        key = (b, c)
        if key not in seen:
            seen.add(key)
            points.append(key)

    for w in witnesses:
        push(w.b, w.c)
        push(w.b, w.c + 1)
        push(w.b + 1, w.c)
        push(w.b - 1, w.c)
        # Injected digits at every position up to the top packing slot:
        # exactly where digit-spacing bugs hide.
        for p in range(1, top_position + 1):
            step = w.k**p
            push(w.b + step, w.c)
            push(w.b - step, w.c)
    for _ in range(bc_samples):
        c = rng.randint(0, h_bound)
        k = consts.base_value(a, c)
        b = rng.randrange((c + 1) * k**top_position)
        push(b, c)
    return points


def _check_one_a(
    art: CompiledArtifact,
    a: int,
    h_bound: int,
    bc_samples: int,
    naive_cap: int,
    seed: int,
) -> dict:
    consts = art.constants
    src = consts.source
    rng = random.Random("%d|%s|%d" % (seed, art.input.set_name, a))
    ev = _PointEvaluator(art, a)
    out = {
        "a": a,
        "soundness": [],
        "completeness": [],
        "disagreements": [],
        "points": 0,
        "witnesses": 0,
        "naive": 0,
    }

    solutions = _solutions(src, a, h_bound)
    witnesses = [witness_encode(consts, a, h) for h in solutions]

    witness_acc1: list[Optional[bool]] = []
    witness_acc2: list[Optional[bool]] = []
    for w in witnesses:
        out["witnesses"] += 1
        try:
            acc1 = ev.form1_inner(w.b, w.c)
        except TriquantError as exc:
            acc1 = None
            out["soundness"].append(
                _counterexample("form1_error", a, w.b, w.c, h=list(w.h), error=str(exc))
            )
        if acc1 is False:
            out["soundness"].append(
                _counterexample("form1_rejects_witness", a, w.b, w.c, h=list(w.h))
            )
        try:
            acc2 = ev.form2_structural(w.b, w.c)
        except TriquantError as exc:
            acc2 = None
            out["soundness"].append(
                _counterexample("form2_error", a, w.b, w.c, h=list(w.h), error=str(exc))
            )
        if acc2 is False:
            out["soundness"].append(
                _counterexample("form2_rejects_witness", a, w.b, w.c, h=list(w.h))
            )
        witness_acc1.append(acc1)
        witness_acc2.append(acc2)

    for b, c in _candidate_points(art, a, witnesses, h_bound, bc_samples, rng):
        out["points"] += 1
        try:
            acc1 = ev.form1_inner(b, c)
        except TriquantError as exc:
            acc1 = None
            out["completeness"].append(
                _counterexample("form1_error", a, b, c, error=str(exc))
            )
        try:
            acc2 = ev.form2_structural(b, c)
        except TriquantError as exc:
            acc2 = None
            out["completeness"].append(
                _counterexample("form2_contract_violation", a, b, c, error=str(exc))
            )
        if acc1 is not None and acc2 is not None and acc1 != acc2:
            out["disagreements"].append(
                _counterexample(
                    "form1_vs_form2", a, b, c, form1=acc1, form2=acc2
                )
            )
        for form_tag, accepted in (("1", acc1), ("2", acc2)):
            if not accepted:
                continue
            decoded = decode_witness(consts, a, b, c)
            if decoded is None:
                out["completeness"].append(
                    _counterexample("decode_failed", a, b, c, form=form_tag)
                )
                continue
            point = {"a": a}
            point.update(zip(unknown_names(src.delta), decoded))
            if src.R.evaluate(point) != 0:
                out["completeness"].append(
                    _counterexample(
                        "residual_nonzero", a, b, c, form=form_tag, h=list(decoded)
                    )
                )
        if ev.triples is not None and acc2 is not None:
            bound = ev.bound_value(b, c)
            if bound <= naive_cap:
                out["naive"] += 1
                naive = eval_form2_naive(art.form2, a, b, c, naive_cap)
                if naive != acc2:
                    out["disagreements"].append(
                        _counterexample(
                            "naive_vs_structural", a, b, c, naive=naive, structural=acc2
                        )
                    )

    # Membership routes must coincide with the oracle (witness-search mode:
    # no solutions means no accepted witnesses, so only the accept side can
    # disagree, and the per-witness results above already hold it).
    oracle = bool(solutions)
    member1 = member2 = None
    if ev.conjuncts is not None:
        member1 = any(acc is True for acc in witness_acc1)
    if ev.triples is not None:
        member2 = any(acc is True for acc in witness_acc2)
    for tag, member in (("form1", member1), ("form2", member2)):
        if member is not None and member != oracle:
            out["soundness"].append(
                _counterexample("%s_membership_mismatch" % tag, a, -1, -1, oracle=oracle)
            )
    return out


def run_equivalence_suite(
    art: CompiledArtifact,
    a_max: int = 50,
    h_bound: int = 25,
    bc_samples: int = 8,
    naive_cap: int = 10**6,
    seed: int = 0,
    jobs: int = 1,
    progress=None,
) -> VerificationReport:
    """Cross-check both compiled forms against the brute-force oracle.

    Work is independent per value of a; ``jobs > 1`` fans it out over
    processes.  Results are assembled in a-order, and every random draw is
    derived from (seed, set name, a), so reports are byte-identical
    regardless of job count.
    """
    report = VerificationReport(
        art.input.set_name, a_max, h_bound, bc_samples, naive_cap, seed
    )
    a_values = list(range(a_max + 1))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(
                pool.map(
                    _check_one_a,
                    [art] * len(a_values),
                    a_values,
                    [h_bound] * len(a_values),
                    [bc_samples] * len(a_values),
                    [naive_cap] * len(a_values),
                    [seed] * len(a_values),
                    chunksize=max(1, len(a_values) // (4 * jobs)),
                )
            )
    else:
        rows = []
        for a in a_values:
            rows.append(_check_one_a(art, a, h_bound, bc_samples, naive_cap, seed))
            if progress is not None:
                progress(a)
    for row in sorted(rows, key=lambda r: r["a"]):
        report.soundness_failures.extend(row["soundness"])
        report.completeness_failures.extend(row["completeness"])
        report.evaluator_disagreements.extend(row["disagreements"])
        report.points_checked += row["points"]
        report.witnesses_checked += row["witnesses"]
        report.naive_checks += row["naive"]
    report.growth = growth_report([art])["sets"][0]
    return report


def _poly_growth(p) -> dict:
    st = p.stats()
    return {
        "total_degree": st.total_degree,
        "degree_per_variable": {
            v: d for v, d in sorted(st.degree_per_variable.items()) if d
        },
        "terms": st.term_count,
        "max_coeff_digits": len(str(st.max_abs_coefficient)),
    }


def growth_report(artifacts: Iterable[CompiledArtifact]) -> dict:
    """Degree/term/coefficient blow-up statistics, one row per artifact.

    W statistics come from its factor list: per-variable degrees are exact
    (degrees add over a product); term count and coefficient size are only
    reported when the expanded product is available.
    """
    rows = []
    for art in artifacts:
        consts = art.constants
        row = {
            "set": art.input.set_name,
            "delta": consts.delta,
            "lambda": consts.lam,
            "nu": consts.nu,
            "gamma_digits": len(str(consts.gamma)),
        }
        if art.form1 is not None:
            row["epsilon"] = art.form1.epsilon
            row["form1"] = [
                {
                    "provenance": conj.provenance,
                    "P": _poly_growth(conj.P),
                    "D": _poly_growth(conj.D),
                    "Q": _poly_growth(conj.Q),
                }
                for conj in art.form1.conjuncts
            ]
        if art.form2 is not None:
            form2 = art.form2
            row.setdefault("epsilon", form2.epsilon)
            w_stats = {
                "degree_per_variable": {
                    v: form2.w_degree_in(v) for v in ("a", "b", "c", "f")
                },
                "factor_count": len(form2.w_factors),
                "expanded": form2.W is not None,
                "terms": form2.W.term_count() if form2.W is not None else None,
                "max_coeff_digits": (
                    len(str(form2.W.stats().max_abs_coefficient))
                    if form2.W is not None
                    else None
                ),
            }
            row["form2"] = {
                "triples": [
                    {
                        "provenance": t.provenance,
                        "g": _poly_growth(t.g),
                        "s": _poly_growth(t.s),
                        "t": _poly_growth(t.t),
                    }
                    for t in form2.triples
                ],
                "F": _poly_growth(form2.F),
                "W": w_stats,
            }
        rows.append(row)
    return {"sets": rows}
