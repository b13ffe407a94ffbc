"""Exhaustive search for 2-ary recursions whose solution is a target
(alpha, beta)-Conolly sequence.

Each candidate is seeded with the first ``seed_len`` target terms and run
forward to ``compare_len``; it is a hit iff it stays alive and matches
throughout. Offsets within a term are taken nondecreasing, since their
order does not change the recursion.
"""
from __future__ import annotations

import configparser
import itertools
import logging
import re
from dataclasses import dataclass, field, replace
from multiprocessing import Pool
from typing import Iterator

from . import kernel
from .analysis import ConollySignature
from .ceiling import check_conditions
from .notation import RecursionSpec, RecursionTerm
from .reference import definitional_sequence

__all__ = ["SearchConfig", "SearchHit", "enumerate_box", "run_search", "parse_box", "load_config"]

log = logging.getLogger(__name__)

Range = tuple[int, int]


@dataclass(frozen=True)
class SearchConfig:
    order: int
    alpha: int
    beta: int
    s_range: Range = (0, 0)
    t_range: Range = (0, 10)
    a_range: Range = (1, 12)
    b_range: Range = (1, 30)
    seed_len: int = 20
    compare_len: int = 1000
    dedup: bool = True
    log_deaths: bool = False

    def __post_init__(self):
        for name in ("s_range", "t_range", "a_range", "b_range"):
            lo, hi = getattr(self, name)
            object.__setattr__(self, name, (int(lo), int(hi)))
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.alpha + 2 * self.beta != 2 * self.order:
            raise ValueError(f"({self.alpha},{self.beta}) is not admissible for order {self.order}")
        if self.beta < 0 or self.alpha + self.beta <= 0:
            raise ValueError(f"({self.alpha},{self.beta}) is not an admissible pair")
        if not 1 <= self.seed_len <= self.compare_len:
            raise ValueError("need 1 <= seed_len <= compare_len")
        if min(self.s_range[0], self.t_range[0]) < 0 or min(self.a_range[0], self.b_range[0]) < 1:
            raise ValueError("shifts must be >= 0 and offsets >= 1")

    @property
    def signature(self) -> ConollySignature:
        return ConollySignature(self.alpha, self.beta)


@dataclass(frozen=True, order=True)
class SearchHit:
    key: tuple = field(repr=False)
    spec: RecursionSpec = field(compare=False)
    matched_len: int = field(compare=False)
    signature: ConollySignature = field(compare=False)

    def row(self) -> dict:
        return {"spec": str(self.spec), "matched_len": self.matched_len,
                "alpha": self.signature.alpha, "beta": self.signature.beta}


def _tuples(rng: Range, size: int) -> list[tuple[int, ...]]:
    lo, hi = rng
    return list(itertools.combinations_with_replacement(range(lo, hi + 1), size))


def _raw_box(config: SearchConfig, t_values=None) -> Iterator[tuple[int, tuple, int, tuple]]:
    p = config.order
    a_tuples = _tuples(config.a_range, p)
    b_tuples = _tuples(config.b_range, p)
    ts = range(config.t_range[0], config.t_range[1] + 1) if t_values is None else t_values
    for s in range(config.s_range[0], config.s_range[1] + 1):
        for t in ts:
            for a in a_tuples:
                for b in b_tuples:
                    if config.dedup and s == t and a > b:
                        continue
                    yield s, a, t, b


def enumerate_box(config: SearchConfig) -> Iterator[RecursionSpec]:
    """Every unseeded candidate in the box, in lexicographic order of
    (s, t, a-tuple, b-tuple)."""
    for s, a, t, b in _raw_box(config):
        yield RecursionSpec((RecursionTerm(s, a), RecursionTerm(t, b)))


def _scan(args) -> tuple[list[tuple], int, int]:
    config, t_values = args
    target = kernel.prepare_target(
        definitional_sequence(config.alpha, config.beta, config.compare_len))
    hits, seen, deaths = [], 0, 0
    ceiling_route = config.beta == 0
    for s, a, t, b in _raw_box(config, t_values):
        seen += 1
        if ceiling_route:
            spec = RecursionSpec((RecursionTerm(s, a), RecursionTerm(t, b)))
            if not check_conditions(spec, config.order).satisfied:
                continue
        got = kernel.match_prefix([s, t], [list(a), list(b)], target,
                                  config.seed_len, config.compare_len)
        if got == config.compare_len:
            hits.append((s, a, t, b))
        elif config.log_deaths:
            deaths += 1
    return hits, seen, deaths


def run_search(config: SearchConfig, jobs: int = 1) -> list[SearchHit]:
    """All hits in the box, sorted by (s, t, a-tuple, b-tuple).

    With ``beta == 0`` candidates are first filtered by the ceiling
    conditions, which every hit must satisfy, then confirmed by evaluation.
    """
    ts = list(range(config.t_range[0], config.t_range[1] + 1))
    chunks = [(config, [t]) for t in ts]
    if jobs > 1 and len(chunks) > 1:
        with Pool(min(jobs, len(chunks))) as pool:
            parts = pool.map(_scan, chunks)
    else:
        parts = [_scan(c) for c in chunks]
    raw = sorted(h for part in parts for h in part[0])
    seen = sum(part[1] for part in parts)
    log.info("scanned %d candidates, %d hits", seen, len(raw))
    if config.log_deaths:
        log.info("%d candidates died or mismatched", sum(part[2] for part in parts))
    seed = tuple(definitional_sequence(config.alpha, config.beta, config.seed_len))
    out = []
    for s, a, t, b in raw:
        spec = RecursionSpec((RecursionTerm(s, a), RecursionTerm(t, b)), seed)
        out.append(SearchHit((s, t, a, b), spec, config.compare_len, config.signature))
    return sorted(out)


_RANGE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+))?\s*$")


def _parse_range(text: str) -> Range:
    m = _RANGE.match(text)
    if not m:
        raise ValueError(f"bad range {text!r}; use LO..HI or a single integer")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def parse_box(text: str) -> dict[str, Range]:
    """"s=0..0,t=0..10,a=1..12,b=1..30" -> {"s_range": (0, 0), ...}."""
    out = {}
    for part in filter(None, (x.strip() for x in text.split(","))):
        name, _, rng = part.partition("=")
        name = name.strip()
        if name not in ("s", "t", "a", "b") or not rng:
            raise ValueError(f"bad box entry {part!r}; keys are s, t, a, b")
        out[f"{name}_range"] = _parse_range(rng)
    return out


def load_config(path: str, **overrides) -> SearchConfig:
    """Read a ``[search]`` section of key = value lines.

    Keys: order, alpha, beta, s, t, a, b (ranges LO..HI), seed_len,
    compare_len, dedup.
    """
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise FileNotFoundError(path)
    sec = parser["search"]
    kw: dict = {k: sec.getint(k) for k in ("order", "alpha", "beta")}
    for key in ("s", "t", "a", "b"):
        if key in sec:
            kw[f"{key}_range"] = _parse_range(sec[key])
    for key in ("seed_len", "compare_len"):
        if key in sec:
            kw[key] = sec.getint(key)
    if "dedup" in sec:
        kw["dedup"] = sec.getboolean("dedup")
    kw.update({k: v for k, v in overrides.items() if v is not None})
    return SearchConfig(**kw)


def with_overrides(config: SearchConfig, **kw) -> SearchConfig:
    return replace(config, **{k: v for k, v in kw.items() if v is not None})
