"""Tiny cursor used by the hand-written grammars."""

from __future__ import annotations

import re

from .errors import ParseError

_INT = re.compile(r"[+-]?\d+")
_NAT = re.compile(r"\d+")


class Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self, literal: str) -> bool:
        return self.text.startswith(literal, self.pos)

    def accept(self, literal: str) -> bool:
        if self.peek(literal):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str) -> None:
        if not self.accept(literal):
            self.fail([repr(literal)])

    def integer(self, signed: bool = True) -> int:
        m = (_INT if signed else _NAT).match(self.text, self.pos)
        if not m:
            self.fail(["INT" if signed else "NAT"])
        self.pos = m.end()
        return int(m.group())

    def bits(self) -> str:
        m = re.compile(r"[01]*").match(self.text, self.pos)
        self.pos = m.end()
        return m.group()

    def until(self, stops: str) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stops:
            self.pos += 1
        return self.text[start:self.pos]

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def end(self) -> None:
        if not self.at_end():
            self.fail([])

    def fail(self, expected):
        raise ParseError(self.text, self.pos, expected)
