"""Pure-Python kernels; same contract as the compiled ``_ckernel``."""
from __future__ import annotations

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)


def _check(value: int, n: int) -> int:
    if value > INT64_MAX or value < INT64_MIN:
        raise OverflowError(f"value at n={n} leaves the signed 64-bit range")
    return value


def evaluate(shifts, offsets, initial, horizon):
    """Run the recursion forward from ``initial`` up to index ``horizon``.

    Returns ``(values, death)`` where ``values[i]`` is A(i+1) and ``death``
    is ``None`` or ``(n, term_index, argument)`` for the first argument that
    falls outside ``[1, n-1]``.
    """
    k = len(shifts)
    vals = [0]  # 1-based; slot 0 unused
    vals.extend(initial[:horizon])
    for n in range(len(initial) + 1, horizon + 1):
        total = 0
        for i in range(k):
            arg = n - shifts[i]
            for a in offsets[i]:
                inner = n - a
                if inner < 1 or inner >= n:
                    return vals[1:], (n, i, inner)
                arg -= vals[inner]
            if arg < 1 or arg >= n:
                return vals[1:], (n, i, arg)
            total += vals[arg]
        vals.append(_check(total, n))
    return vals[1:], None


def prepare_target(target):
    """Identity here; the compiled kernel copies into a C buffer once."""
    return list(target)


def match_prefix(shifts, offsets, target, seed_len, compare_len):
    """Seed with ``target[:seed_len]`` and count how many leading terms agree.

    Stops at the first mismatch or death; a full match returns ``compare_len``.
    """
    if len(target) < compare_len:
        raise ValueError("target shorter than compare_len")
    k = len(shifts)
    vals = [0]
    vals.extend(target[:seed_len])
    for n in range(seed_len + 1, compare_len + 1):
        total = 0
        for i in range(k):
            arg = n - shifts[i]
            for a in offsets[i]:
                inner = n - a
                if inner < 1 or inner >= n:
                    return n - 1
                arg -= vals[inner]
            if arg < 1 or arg >= n:
                return n - 1
            total += vals[arg]
        if total != target[n - 1]:
            return n - 1
        vals.append(total)
    return compare_len


def _ceil_div(x: int, q: int) -> int:
    return -((-x) // q)


def formal_satisfy(shifts, offsets, q, lo, hi):
    """First n in [lo, hi] where ceil(n/q) fails the recursion, else None.

    Arguments are evaluated with the mathematical ceiling on all integers;
    no positivity is required.
    """
    k = len(shifts)
    for n in range(lo, hi + 1):
        total = 0
        for i in range(k):
            arg = n - shifts[i]
            for a in offsets[i]:
                arg -= _ceil_div(n - a, q)
            total += _ceil_div(arg, q)
        if total != _ceil_div(n, q):
            return n
    return None
