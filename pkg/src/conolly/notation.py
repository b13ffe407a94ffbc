"""Angle-bracket notation for nested recursions.

A recursion

    R(n) = sum_i R(n - s_i - sum_j R(n - a_ij))

with initial conditions xi_1..xi_c is written ``<s_1;a_11,a_12:s_2;a_21>[xi_1,xi_2]``.
Whitespace is ignored; the bracketed initial conditions are optional.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "RecursionTerm",
    "RecursionSpec",
    "SpecSyntaxError",
    "parse",
    "format_spec",
]


class SpecSyntaxError(ValueError):
    """Raised when a recursion literal does not match the grammar."""

    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")


@dataclass(frozen=True)
class RecursionTerm:
    """One summand ``R(n - shift - sum R(n - offset))``."""

    shift: int
    offsets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "offsets", tuple(self.offsets))
        if not self.offsets:
            raise ValueError("a term needs at least one offset")

    @property
    def order(self) -> int:
        return len(self.offsets)

    def validate(self, relaxed: bool = False) -> None:
        if relaxed:
            return
        if self.shift < 0:
            raise ValueError(f"negative shift {self.shift} requires relaxed mode")
        bad = [a for a in self.offsets if a < 1]
        if bad:
            raise ValueError(f"offsets must be >= 1 outside relaxed mode, got {bad}")


@dataclass(frozen=True)
class RecursionSpec:
    terms: tuple[RecursionTerm, ...]
    initial: tuple[int, ...] = ()
    relaxed: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "initial", tuple(int(x) for x in self.initial))
        if not self.terms:
            raise ValueError("a recursion needs at least one term")
        for term in self.terms:
            term.validate(self.relaxed)
        if not self.relaxed and any(x < 0 for x in self.initial):
            raise ValueError("negative initial conditions require relaxed mode")

    @classmethod
    def from_lists(cls, terms: Iterable[tuple[int, Sequence[int]]],
                   initial: Sequence[int] = (), relaxed: bool = False) -> "RecursionSpec":
        return cls(tuple(RecursionTerm(s, tuple(a)) for s, a in terms),
                   tuple(initial), relaxed)

    @property
    def arity(self) -> int:
        return len(self.terms)

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(t.order for t in self.terms)

    @property
    def uniform_order(self) -> bool:
        return len(set(self.order)) == 1

    @property
    def max_offset(self) -> int:
        return max(max(t.offsets) for t in self.terms)

    def with_initial(self, initial: Sequence[int]) -> "RecursionSpec":
        return RecursionSpec(self.terms, tuple(initial), self.relaxed)

    def without_initial(self) -> "RecursionSpec":
        return RecursionSpec(self.terms, (), self.relaxed)

    def key(self) -> tuple:
        """Sort key giving canonical lexicographic order."""
        return tuple((t.shift, t.offsets) for t in self.terms), self.initial

    def __str__(self) -> str:
        return format_spec(self)


_TOKEN = re.compile(r"\s*(?:(?P<int>[+-]?\d+)|(?P<punct>[<>;:,\[\]])|(?P<bad>\S+?(?=[\s<>;:,\[\]]|$)))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            # only trailing whitespace remains
            if text[pos:].strip() == "":
                break
            raise SpecSyntaxError("unexpected character", pos, text)
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.group("punct") is not None:
            tokens.append((m.group("punct"), None, m.start("punct")))
        else:
            raise SpecSyntaxError(f"non-integer token {m.group('bad')!r}", m.start("bad"), text)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def _offset(self) -> int:
        if self.i < len(self.tokens):
            return self.tokens[self.i][2]
        return max(len(self.text) - 1, 0)

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def expect(self, kind: str):
        if self.peek() != kind:
            got = self.peek() or "end of input"
            raise SpecSyntaxError(f"expected {kind!r}, got {got!r}", self._offset(), self.text)
        tok = self.tokens[self.i]
        self.i += 1
        return tok[1]

    def int_list(self, what: str) -> list[int]:
        if self.peek() != "int":
            raise SpecSyntaxError(f"empty {what} list", self._offset(), self.text)
        values = [self.expect("int")]
        while self.peek() == ",":
            self.i += 1
            values.append(self.expect("int"))
        return values

    def term(self) -> tuple[int, list[int], int]:
        start = self._offset()
        shift = self.expect("int")
        self.expect(";")
        return shift, self.int_list("offset"), start

    def spec(self, relaxed: bool) -> RecursionSpec:
        self.expect("<")
        raw = [self.term()]
        while self.peek() == ":":
            self.i += 1
            raw.append(self.term())
        self.expect(">")
        initial: list[int] = []
        if self.peek() == "[":
            init_start = self._offset()
            self.i += 1
            initial = self.int_list("initial condition")
            self.expect("]")
        else:
            init_start = 0
        if self.i != len(self.tokens):
            raise SpecSyntaxError("trailing input", self._offset(), self.text)
        terms = []
        for shift, offsets, start in raw:
            term = RecursionTerm(shift, tuple(offsets))
            try:
                term.validate(relaxed)
            except ValueError as exc:
                raise SpecSyntaxError(str(exc), start, self.text) from None
            terms.append(term)
        if not relaxed and any(x < 0 for x in initial):
            raise SpecSyntaxError("negative initial condition requires relaxed mode",
                                  init_start, self.text)
        return RecursionSpec(tuple(terms), tuple(initial), relaxed)


def parse(text: str, relaxed: bool = False) -> RecursionSpec:
    """Parse ``<s;a,..:t;b,..>[x,..]`` into a :class:`RecursionSpec`.

    Raises :class:`SpecSyntaxError` (a ``ValueError``) whose ``offset``
    points at the offending character.
    """
    return _Parser(text).spec(relaxed)


def format_spec(spec: RecursionSpec) -> str:
    """Canonical, space-free text form; ``parse(format_spec(s)) == s``."""
    body = ":".join(f"{t.shift};" + ",".join(map(str, t.offsets)) for t in spec.terms)
    out = f"<{body}>"
    if spec.initial:
        out += "[" + ",".join(map(str, spec.initial)) + "]"
    return out
