"""Forward evaluation of nested recursions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import kernel
from .notation import RecursionSpec

__all__ = ["Death", "EvalResult", "evaluate", "spec_arrays"]


@dataclass(frozen=True)
class Death:
    """First index whose right-hand side cannot be computed.

    ``argument`` is the offending index: either an inner ``n - a_ij`` or the
    outer ``n - s_i - sum(...)``. It is always ``<= 0`` or ``>= index``.
    """

    index: int
    term: int
    argument: int

    def as_dict(self) -> dict:
        return {"index": self.index, "term": self.term, "argument": self.argument}


@dataclass(frozen=True)
class EvalResult:
    values: list[int]
    death: Optional[Death]
    horizon: int

    @property
    def alive(self) -> bool:
        return self.death is None

    def __getitem__(self, n: int) -> int:
        """1-based access, ``result[1]`` is A(1)."""
        if n < 1:
            raise IndexError(n)
        return self.values[n - 1]

    def __len__(self) -> int:
        return len(self.values)


def spec_arrays(spec: RecursionSpec) -> tuple[list[int], list[list[int]]]:
    return [t.shift for t in spec.terms], [list(t.offsets) for t in spec.terms]


def evaluate(spec: RecursionSpec, horizon: int) -> EvalResult:
    """Compute A(1..horizon) from the spec's initial conditions.

    Any argument outside ``[1, n-1]`` (nonpositive, or a reference to a term
    not yet computed) stops evaluation with a :class:`Death` record. Values
    beyond the signed 64-bit range raise ``OverflowError``.
    """
    if horizon < 1:
        raise ValueError("horizon must be positive")
    if not spec.initial:
        raise ValueError("evaluation needs at least one initial condition")
    shifts, offsets = spec_arrays(spec)
    values, death = kernel.evaluate(shifts, offsets, list(spec.initial), horizon)
    return EvalResult(values, Death(*death) if death else None, horizon)
