"""Classification of integer sequences: slowness, frequencies, Conolly fits."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

__all__ = [
    "ConollySignature",
    "FrequencyProfile",
    "RatioReport",
    "ruler",
    "is_slow",
    "frequency",
    "fit_conolly",
    "ratio_estimate",
    "gf_coefficients",
]


def ruler(m: int) -> int:
    """One plus the 2-adic valuation of ``m``."""
    if m < 1:
        raise ValueError("ruler is defined for m >= 1")
    return (m & -m).bit_length()


def is_slow(values: Sequence[int]) -> bool:
    """True iff every successive difference is 0 or 1."""
    if not values:
        raise ValueError("empty sequence")
    return all(b - a in (0, 1) for a, b in zip(values, values[1:]))


def increasing_trend(values: Sequence[int]) -> bool:
    """Whether the last value exceeds the first; a hint, not a limit claim."""
    return len(values) > 1 and values[-1] > values[0]


@dataclass(frozen=True)
class FrequencyProfile:
    """Occurrence counts phi(m) for ``1 <= m <= complete_upto``.

    The last value of the sequence is excluded: more copies of it may follow.
    """

    counts: dict[int, int]
    complete_upto: int

    def __getitem__(self, m: int) -> int:
        return self.counts[m]

    def as_list(self) -> list[int]:
        return [self.counts[m] for m in range(1, self.complete_upto + 1)]


def frequency(values: Sequence[int]) -> FrequencyProfile:
    if not values:
        raise ValueError("empty sequence")
    if any(b < a for a, b in zip(values, values[1:])):
        raise ValueError("frequency needs a nondecreasing sequence")
    upto = max(values[-1] - 1, 0)
    counts = dict.fromkeys(range(1, upto + 1), 0)
    for v in values:
        if 1 <= v <= upto:
            counts[v] += 1
    return FrequencyProfile(counts, upto)


@dataclass(frozen=True)
class ConollySignature:
    alpha: int
    beta: int
    excluded: bool = field(default=False, compare=False)

    @property
    def order_p(self) -> Fraction:
        return Fraction(self.alpha, 2) + self.beta

    @property
    def slope(self) -> Fraction:
        return Fraction(1, self.alpha + 2 * self.beta)

    @property
    def admissible(self) -> bool:
        return self.beta >= 0 and self.alpha + self.beta > 0

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta,
                "order_p": str(self.order_p), "slope": str(self.slope),
                "excluded": self.excluded}


def fit_conolly(profile: FrequencyProfile) -> Optional[ConollySignature]:
    """Return (alpha, beta) with phi(m) = alpha + beta*ruler(m) on every
    complete m, or None.

    beta comes from phi(2) - phi(1) and alpha from phi(1); the fit is then
    checked on the whole profile. A fit with -alpha == beta > 0 is returned
    with ``excluded=True`` and a warning.
    """
    if profile.complete_upto < 4:
        raise ValueError("need frequencies for at least m = 1..4 to fit")
    phi = profile.counts
    beta = phi[2] - phi[1]
    alpha = phi[1] - beta
    for m in range(1, profile.complete_upto + 1):
        if phi[m] != alpha + beta * ruler(m):
            return None
    excluded = -alpha == beta > 0
    if excluded:
        warnings.warn(f"fit ({alpha},{beta}) has -alpha == beta > 0", stacklevel=2)
    return ConollySignature(alpha, beta, excluded)


@dataclass(frozen=True)
class RatioReport:
    ratio: Fraction
    checkpoints: list[tuple[int, Fraction]]

    def as_dict(self) -> dict:
        return {"ratio": float(self.ratio),
                "checkpoints": [[n, float(r)] for n, r in self.checkpoints]}


def ratio_estimate(values: Sequence[int], modulus: int = 1, residue: int = 0,
                   min_length: int = 1000) -> RatioReport:
    """A(N)/N at the horizon plus A(n)/n at the dyadic checkpoints N/2^k.

    With ``modulus > 1`` only indices n = residue (mod modulus) are used,
    so interleaved subsequences can be estimated separately. No limit is
    asserted.
    """
    if len(values) < min_length:
        raise ValueError(f"ratio estimate needs at least {min_length} terms")

    def last_index(upto: int) -> int:
        n = upto - (upto - residue) % modulus
        return n if n >= 1 else 0

    n = last_index(len(values))
    if n == 0:
        raise ValueError("no index in the requested residue class")
    ratio = Fraction(values[n - 1], n)
    checkpoints = []
    span = len(values)
    while span >= max(modulus, 16):
        m = last_index(span)
        if m:
            checkpoints.append((m, Fraction(values[m - 1], m)))
        span //= 2
    return RatioReport(ratio, checkpoints)


def gf_coefficients(sig: ConollySignature, degree: int) -> list[int]:
    """Coefficients of z^1..z^degree in z/(1-z) * prod_{n>=0} (1 + z^e_n),
    e_n = 2^n*alpha + (2^(n+1) - 1)*beta.
    """
    if not sig.admissible:
        raise ValueError(f"({sig.alpha},{sig.beta}) is not an admissible pair")
    if degree < 1:
        raise ValueError("degree must be positive")
    # product truncated at degree-1 because of the leading factor z
    top = degree - 1
    poly = [0] * (top + 1)
    poly[0] = 1
    n = 0
    while True:
        e = (1 << n) * sig.alpha + ((1 << (n + 1)) - 1) * sig.beta
        if e > top:
            break
        for i in range(top, e - 1, -1):
            poly[i] += poly[i - e]
        n += 1
    out = []
    running = 0
    for c in poly:
        running += c
        out.append(running)
    return out
