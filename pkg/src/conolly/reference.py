"""Definitional (alpha, beta)-Conolly sequences and the canonical recursions."""
from __future__ import annotations

from dataclasses import dataclass

from .analysis import ruler
from .notation import RecursionSpec, RecursionTerm

__all__ = [
    "AdmissiblePair",
    "definitional_sequence",
    "admissible_pairs",
    "all_table_pairs",
    "canonical_recursion",
    "canonical_seed_length",
]


@dataclass(frozen=True)
class AdmissiblePair:
    alpha: int
    beta: int
    order_p: int

    def __post_init__(self):
        if self.alpha + 2 * self.beta != 2 * self.order_p:
            raise ValueError("alpha + 2 beta must equal 2p")
        _check_pair(self.alpha, self.beta)

    def __iter__(self):
        yield self.alpha
        yield self.beta


def _check_pair(alpha: int, beta: int) -> None:
    if beta < 0 or alpha + beta <= 0:
        raise ValueError(f"({alpha},{beta}) needs beta >= 0 and alpha + beta > 0")


def definitional_sequence(alpha: int, beta: int, horizon: int) -> list[int]:
    """The slow sequence in which m occupies exactly alpha + beta*ruler(m) slots.

    Built by slot enumeration only; other routes are checked against it.
    """
    _check_pair(alpha, beta)
    out: list[int] = []
    m = 1
    while len(out) < horizon:
        out.extend([m] * (alpha + beta * ruler(m)))
        m += 1
    del out[horizon:]
    return out


def admissible_pairs(p: int) -> list[AdmissiblePair]:
    """The 2p pairs (2p - 2beta, beta), beta = 0..2p-1."""
    if p < 1:
        raise ValueError("order must be positive")
    return [AdmissiblePair(2 * p - 2 * b, b, p) for b in range(2 * p)]


def all_table_pairs(max_order: int = 4) -> list[AdmissiblePair]:
    return [pair for p in range(1, max_order + 1) for pair in admissible_pairs(p)]


def canonical_seed_length(alpha: int, beta: int) -> int:
    """4*alpha + 5*beta (the last label of the fourth leaf), but never fewer
    than the largest offset + 1."""
    p = alpha // 2 + beta
    gamma = alpha + beta
    return max(4 * alpha + 5 * beta, gamma + 2 * p)


def canonical_recursion(alpha: int, beta: int, seeded: bool = True) -> RecursionSpec:
    """<0;1,3,..,2p-1 : g;g+1,g+3,..,g+2p-1> with g = alpha + beta.

    Seeded with the first :func:`canonical_seed_length` definitional terms.
    """
    _check_pair(alpha, beta)
    if alpha % 2:
        raise ValueError("alpha must be even for a 2-ary Conolly-like recursion")
    p = alpha // 2 + beta
    gamma = alpha + beta
    odd = tuple(range(1, 2 * p, 2))
    terms = (RecursionTerm(0, odd), RecursionTerm(gamma, tuple(gamma + a for a in odd)))
    initial = definitional_sequence(alpha, beta, canonical_seed_length(alpha, beta)) if seeded else ()
    return RecursionSpec(terms, tuple(initial))
