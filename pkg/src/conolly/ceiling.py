"""When is ceil(n/2p) a solution of a 2-ary order-p recursion?

``check_conditions`` decides it from the parameters' quotients and
remainders mod 2p. ``formal_satisfy_oracle`` decides the same question by
direct substitution. The two never share code.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import kernel
from .engine import evaluate, spec_arrays
from .notation import RecursionSpec

__all__ = [
    "QuoRem",
    "Failure",
    "CeilingVerdict",
    "quorem",
    "ceil_div",
    "ceiling_sequence",
    "check_conditions",
    "formal_satisfy_oracle",
    "default_window",
    "check_p1",
    "check_p2_kappa",
    "min_initial_conditions",
    "p1_initial_bound",
    "seeded_ceiling_spec",
    "smallest_working_seed",
]


@dataclass(frozen=True)
class QuoRem:
    quo: int
    rem: int
    modulus: int


def quorem(z: int, p: int) -> QuoRem:
    """z = 2p*quo + rem with 0 <= rem < 2p, for any sign of z."""
    q, r = divmod(z, 2 * p)
    return QuoRem(q, r, 2 * p)


def ceil_div(x: int, q: int) -> int:
    return -((-x) // q)


def ceiling_sequence(q: int, horizon: int) -> list[int]:
    return [ceil_div(n, q) for n in range(1, horizon + 1)]


@dataclass(frozen=True)
class Failure:
    condition: int           # 1, 2 or 3
    witness_j: Optional[int] = None
    side: Optional[str] = None  # "low" (rem <= j) or "high" (rem >= 2p - j)

    def describe(self) -> str:
        if self.condition == 3:
            return "condition 3: no integer d"
        return f"condition {self.condition}: j={self.witness_j} ({self.side})"


@dataclass(frozen=True)
class CeilingVerdict:
    satisfied: bool
    failed: Optional[Failure] = None
    d: Optional[int] = None
    swapped: bool = False

    def as_dict(self) -> dict:
        return {"satisfied": self.satisfied,
                "failed": self.failed.describe() if self.failed else None,
                "d": self.d, "swapped": self.swapped}


def _two_terms(spec: RecursionSpec, p: int):
    if spec.arity != 2:
        raise ValueError(f"expected a 2-ary recursion, got arity {spec.arity}")
    if spec.order != (p, p):
        raise ValueError(f"expected order ({p}, {p}), got {spec.order}")
    return spec.terms


def _remainder_failure(offsets, p: int) -> Optional[tuple[int, str]]:
    rems = [a % (2 * p) for a in offsets]
    for j in range(p):
        if sum(r <= j for r in rems) > j:
            return j, "low"
        if sum(r >= 2 * p - j for r in rems) > j:
            return j, "high"
    return None


def check_conditions(spec: RecursionSpec, p: int) -> CeilingVerdict:
    """Evaluate the three remainder/quotient conditions for ceil(n/2p).

    Parameters may be any integers. Condition 3 is tried in both term
    orders; ``swapped`` records that the second term carried the ``2pd``.
    """
    first, second = _two_terms(spec, p)
    for cond, term in ((1, first), (2, second)):
        bad = _remainder_failure(term.offsets, p)
        if bad:
            return CeilingVerdict(False, Failure(cond, *bad))
    x = -first.shift + sum(a // (2 * p) for a in first.offsets)
    y = -second.shift + sum(b // (2 * p) for b in second.offsets)
    if x % (2 * p) == 0 and y == -x - p:
        return CeilingVerdict(True, d=x // (2 * p))
    if y % (2 * p) == 0 and x == -y - p:
        return CeilingVerdict(True, d=y // (2 * p), swapped=True)
    return CeilingVerdict(False, Failure(3))


def default_window(spec: RecursionSpec, p: int) -> int:
    params = [abs(t.shift) for t in spec.terms] + [abs(a) for t in spec.terms for a in t.offsets]
    return 4 * p + max(params)


def formal_satisfy_oracle(spec: RecursionSpec, p: int, window: Optional[int] = None) -> bool:
    """Substitute ceil(n/2p) into the recursion for every n in [-W, W]."""
    _two_terms(spec, p)
    w = default_window(spec, p) if window is None else window
    shifts, offsets = spec_arrays(spec)
    return kernel.formal_satisfy(shifts, offsets, 2 * p, -w, w) is None


def check_p1(spec: RecursionSpec) -> bool:
    """Order 1: a and b odd and 2(s + t) = a + b."""
    (s, (a,)), (t, (b,)) = ((x.shift, x.offsets) for x in _two_terms(spec, 1))
    return a % 2 == 1 and b % 2 == 1 and 2 * (s + t) == a + b


def check_p2_kappa(spec: RecursionSpec) -> Optional[int]:
    """Order 2: the odd kappa with a+b near 4(s+kappa), c+d near 4(t-kappa)
    and no offset divisible by 4, or None."""
    (s, (a, b)), (t, (c, d)) = ((x.shift, x.offsets) for x in _two_terms(spec, 2))
    if any(v % 4 == 0 for v in (a, b, c, d)):
        return None
    # a+b-1..a+b+1 holds at most one multiple of 4
    for e in (-1, 0, 1):
        if (a + b + e) % 4 == 0:
            kappa = (a + b + e) // 4 - s
            break
    else:
        return None
    if kappa % 2 == 0:
        return None
    if abs(c + d - 4 * (t - kappa)) > 1:
        return None
    return kappa


def min_initial_conditions(spec: RecursionSpec, p: int) -> int:
    """c = max{2p+2s, 2p+2t, a_i, b_i}; seeding c ceiling values makes the
    recursion generate ceil(n/2p) forever."""
    verdict = check_conditions(spec, p)
    if not verdict.satisfied:
        raise ValueError(f"conditions not satisfied ({verdict.failed.describe()})")
    if spec.relaxed and (any(t.shift < 0 for t in spec.terms)
                         or any(a < 1 for t in spec.terms for a in t.offsets)):
        raise ValueError("seed bound only holds for nonnegative shifts and positive offsets")
    s, t = spec.terms[0].shift, spec.terms[1].shift
    return max([2 * p + 2 * s, 2 * p + 2 * t] + [a for x in spec.terms for a in x.offsets])


def p1_initial_bound(spec: RecursionSpec) -> int:
    """Order-1 seed bound max{a, b, s + (a+1)/2, t + (b+1)/2}."""
    if not check_p1(spec):
        raise ValueError("order-1 conditions not satisfied")
    (s, (a,)), (t, (b,)) = ((x.shift, x.offsets) for x in spec.terms)
    return max(a, b, s + (a + 1) // 2, t + (b + 1) // 2)


def seeded_ceiling_spec(spec: RecursionSpec, p: int, c: Optional[int] = None) -> RecursionSpec:
    if c is None:
        c = min_initial_conditions(spec, p)
    return spec.with_initial(ceiling_sequence(2 * p, c))


def smallest_working_seed(spec: RecursionSpec, p: int, horizon: int = 2000) -> Optional[int]:
    """Fewest ceiling seeds that reproduce ceil(n/2p) up to ``horizon``.

    Empirical: shows how loose the proven seed bounds are.
    """
    target = ceiling_sequence(2 * p, horizon)
    for c in range(1, horizon + 1):
        result = evaluate(spec.with_initial(target[:c]), horizon)
        if result.alive and result.values == target:
            return c
    return None
