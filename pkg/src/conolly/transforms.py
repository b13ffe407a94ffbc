"""Constructions that turn known solutions into new ones."""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import NamedTuple, Optional, Sequence

from .engine import Death, evaluate
from .notation import RecursionSpec, RecursionTerm

__all__ = [
    "WeaveInput",
    "weave_fixed_order",
    "satisfies",
    "interleave_order_multiplying",
    "interleaving",
    "perturb",
    "Perturbed",
    "InterleaveReport",
    "check_interleaving",
    "shift_alpha_zero",
]


@dataclass(frozen=True)
class WeaveInput:
    spec: RecursionSpec
    inits: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "inits", tuple(tuple(x) for x in self.inits))
        if len(self.inits) < 2:
            raise ValueError("weaving needs at least two initial-condition vectors")
        if len({len(x) for x in self.inits}) != 1:
            raise ValueError("all initial-condition vectors must have the same length")


def _scale(spec: RecursionSpec, m: int, initial: Sequence[int] = ()) -> RecursionSpec:
    terms = tuple(RecursionTerm(m * t.shift, tuple(m * a for a in t.offsets)) for t in spec.terms)
    return RecursionSpec(terms, tuple(initial), spec.relaxed)


def satisfies(spec: RecursionSpec, values: Sequence[int], start: Optional[int] = None) -> Optional[int]:
    """Check ``values`` against the defining equation by direct substitution.

    Every n from ``start`` (default: one past the initial conditions) to
    ``len(values)`` is checked. Returns the first failing n, or None.
    """
    first = len(spec.initial) + 1 if start is None else start
    for n in range(first, len(values) + 1):
        total = 0
        for term in spec.terms:
            arg = n - term.shift
            for a in term.offsets:
                if not 1 <= n - a < n:
                    return n
                arg -= values[n - a - 1]
            if not 1 <= arg < n:
                return n
            total += values[arg - 1]
        if total != values[n - 1]:
            return n
    return None


def weave_fixed_order(inp: WeaveInput, horizon: int) -> tuple[RecursionSpec, list[int]]:
    """Weave m solutions of one recursion into a solution of the m-fold
    scaled recursion: C(m(n-1) + q) = m * X_q(n).

    The woven sequence is re-checked against the scaled recursion by
    substitution before it is returned.
    """
    m = len(inp.inits)
    per = ceil(horizon / m)
    sols = []
    for init in inp.inits:
        res = evaluate(inp.spec.with_initial(init), per)
        if not res.alive:
            raise ValueError(f"solution with initial conditions {list(init)} dies: {res.death}")
        sols.append(res.values)
    woven = [m * sols[q][n] for n in range(per) for q in range(m)][:horizon]
    r = len(inp.inits[0])
    seed = woven[: m * r]
    if len(seed) < m * r:
        seed = [m * sols[q][n] for n in range(r) for q in range(m)]
    doubled = _scale(inp.spec, m, seed)
    bad = satisfies(doubled, woven)
    if bad is not None:
        raise AssertionError(f"woven sequence fails the scaled recursion at n={bad}")
    return doubled, woven


def _require_order_one(spec: RecursionSpec) -> None:
    if spec.order != (1,) * spec.arity:
        raise ValueError(f"expected an order-1 recursion, got order {spec.order}")


def interleaving(values: Sequence[int], m: int) -> list[int]:
    """Each term repeated m times."""
    return [v for v in values for _ in range(m)]


def interleave_order_multiplying(spec: RecursionSpec, m: int) -> RecursionSpec:
    """<s;a:t;b>[xi] -> <ms;(ma)^m : mt;(mb)^m>[xi^m], whose solution is the
    m-interleaving of the original one."""
    if m < 2:
        raise ValueError("m must be at least 2")
    _require_order_one(spec)
    terms = tuple(RecursionTerm(m * t.shift, (m * t.offsets[0],) * m) for t in spec.terms)
    return RecursionSpec(terms, tuple(interleaving(spec.initial, m)), spec.relaxed)


@dataclass(frozen=True)
class InterleaveReport:
    alive: bool
    death: Optional[Death]
    is_interleaving: bool
    checked: int

    def as_dict(self) -> dict:
        return {"alive": self.alive, "death": self.death.as_dict() if self.death else None,
                "is_interleaving": self.is_interleaving, "checked": self.checked}


class Perturbed(NamedTuple):
    spec: RecursionSpec
    report: Optional[InterleaveReport]


def check_interleaving(base: RecursionSpec, derived: RecursionSpec, m: int,
                       horizon: int) -> InterleaveReport:
    """Evaluate ``derived`` to m*horizon terms and compare with the
    m-interleaving of ``base``."""
    b = evaluate(base, horizon)
    d = evaluate(derived, m * horizon)
    expect = interleaving(b.values, m)
    n = min(len(expect), len(d.values))
    ok = b.alive and d.alive and d.values == expect
    return InterleaveReport(d.alive, d.death, ok, n)


def perturb(spec: RecursionSpec, m: int, alphas: Sequence[int], betas: Sequence[int],
            horizon: Optional[int] = 1000) -> Perturbed:
    """<ms; ma-alpha_1..ma-alpha_m : mt; mb-beta_1..mb-beta_m>[xi^m].

    Requires i-m <= alpha_i < i and i-m <= beta_i < i. Well-definedness is
    not decided here: when ``horizon`` is given the result is evaluated and
    compared with the m-interleaving, which is only evidence.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if spec.arity != 2:
        raise ValueError("perturbation is defined for 2-ary recursions")
    _require_order_one(spec)
    if len(alphas) != m or len(betas) != m:
        raise ValueError(f"need exactly {m} alphas and {m} betas")
    for name, seq in (("alpha", alphas), ("beta", betas)):
        for i, v in enumerate(seq, start=1):
            if not i - m <= v < i:
                raise ValueError(f"{name}_{i}={v} violates {i - m} <= {name}_{i} < {i}")
    (s, (a,)), (t, (b,)) = ((x.shift, x.offsets) for x in spec.terms)
    terms = (RecursionTerm(m * s, tuple(sorted(m * a - v for v in alphas))),
             RecursionTerm(m * t, tuple(sorted(m * b - v for v in betas))))
    out = RecursionSpec(terms, tuple(interleaving(spec.initial, m)), spec.relaxed)
    report = None
    if horizon and spec.initial:
        report = check_interleaving(spec, out, m, horizon)
    return Perturbed(out, report)


def shift_alpha_zero(spec: RecursionSpec, alpha: int, verify: bool = True) -> RecursionSpec:
    """Shift every s_i by p_i and every offset by alpha.

    If ceil(n/alpha) solves ``spec`` it also solves the result, which gets
    c + alpha ceiling initial conditions (none if ``spec`` had none).
    """
    if alpha < 1:
        raise ValueError("alpha must be positive")
    if verify:
        _require_ceiling_solution(spec, alpha)
    terms = tuple(RecursionTerm(t.shift + t.order, tuple(a + alpha for a in t.offsets))
                  for t in spec.terms)
    c = len(spec.initial)
    initial = [-((-n) // alpha) for n in range(1, c + alpha + 1)] if c else []
    return RecursionSpec(terms, tuple(initial), spec.relaxed)


def _require_ceiling_solution(spec: RecursionSpec, alpha: int) -> None:
    from .ceiling import check_conditions, ceiling_sequence

    if spec.arity == 2 and spec.uniform_order and alpha == 2 * spec.order[0]:
        verdict = check_conditions(spec, spec.order[0])
        if not verdict.satisfied:
            raise ValueError(f"ceil(n/{alpha}) does not satisfy {spec}: {verdict.failed.describe()}")
        return
    if not spec.initial:
        raise ValueError("cannot confirm an (alpha,0)-Conolly solution without initial conditions")
    horizon = 1000
    res = evaluate(spec, horizon)
    if not res.alive or res.values != ceiling_sequence(alpha, horizon):
        raise ValueError(f"{spec} does not generate ceil(n/{alpha})")
