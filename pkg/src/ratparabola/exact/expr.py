"""Text form of tower elements.

Grammar::

    element  := rational
              | "(" element " + " element "*sqrt(" element ")" ")"
              | "sqrt(" element ")"
    rational := ["-"] digits ["/" digits]

``format_element`` always emits the parenthesised ``(lo + hi*sqrt(theta))``
form with reduced rationals; ``sqrt(...)`` is accepted on input only.
Radicands pass through :func:`adjoin_sqrt`, so perfect squares collapse and
rational radicands lose their square factors (``sqrt(8)`` reads as
``(0 + 2*sqrt(2))``).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import ParseError
from . import raw as R
from .tower import QQ, FieldTower, TowerElement, adjoin_sqrt


def format_raw(a: R.Raw, tower: FieldTower) -> str:
    if type(a) is not R.Ext:
        return str(a)
    return f"({format_raw(a.lo, tower)} + {format_raw(a.hi, tower)}*sqrt({_radicand_text(tower, a.level)}))"


def _radicand_text(tower: FieldTower, level: int) -> str:
    text = tower._text.get(level)
    if text is None:
        text = format_raw(tower.radicands[level], tower)
        tower._text[level] = text
    return text


def format_element(alpha: TowerElement) -> str:
    return format_raw(alpha.raw, alpha.tower)


# -- parsing -----------------------------------------------------------------


@dataclass(frozen=True)
class _Rat:
    value: Fraction


@dataclass(frozen=True)
class _Ext:
    lo: "_Node"
    hi: "_Node"
    rad: "_Node"
    pos: int


@dataclass(frozen=True)
class _Sqrt:
    rad: "_Node"
    pos: int


_Node = Union[_Rat, _Ext, _Sqrt]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, message: str, at: int | None = None) -> ParseError:
        pos = self.i if at is None else at
        return ParseError(message, len(self.text[:pos].encode("utf-8")))

    def skip_ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i] in " \t\r\n":
            self.i += 1

    def expect(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.i):
            found = self.text[self.i : self.i + len(token)] or "end of input"
            raise self.error(f"expected {token!r}, found {found!r}")
        self.i += len(token)

    def digits(self) -> str:
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isascii() and self.text[self.i].isdigit():
            self.i += 1
        if start == self.i:
            raise self.error("expected digits")
        return self.text[start : self.i]

    def element(self) -> _Node:
        self.skip_ws()
        start = self.i
        if self.text.startswith("sqrt(", self.i):
            self.i += len("sqrt(")
            rad = self.element()
            self.expect(")")
            return _Sqrt(rad, start)
        if self.text.startswith("(", self.i):
            self.i += 1
            lo = self.element()
            self.expect("+")
            hi = self.element()
            self.expect("*")
            self.expect("sqrt(")
            sqrt_pos = self.i
            rad = self.element()
            self.expect(")")
            self.expect(")")
            return _Ext(lo, hi, rad, sqrt_pos)
        if self.i < len(self.text) and (self.text[self.i] == "-" or self.text[self.i].isdigit()):
            negative = self.text[self.i] == "-"
            if negative:
                self.i += 1
            num = int(self.digits())
            den = 1
            if self.text.startswith("/", self.i):
                self.i += 1
                den_pos = self.i
                den = int(self.digits())
                if den == 0:
                    raise self.error("zero denominator", den_pos)
            return _Rat(Fraction(-num if negative else num, den))
        found = self.text[self.i : self.i + 1] or "end of input"
        raise self.error(f"expected an element, found {found!r}")


def _key(node: _Node) -> str:
    if isinstance(node, _Rat):
        return str(node.value)
    if isinstance(node, _Sqrt):
        return f"sqrt({_key(node.rad)})"
    return f"({_key(node.lo)} + {_key(node.hi)}*sqrt({_key(node.rad)}))"


def _symbol_order(root: _Node) -> list[tuple[str, _Node, int]]:
    """Order the distinct radicands so that each comes after everything it encloses.

    Within those constraints radicands are taken by first appearance, which
    reproduces the level order of text emitted by :func:`format_element`.
    """
    first: dict[str, int] = {}
    radicand: dict[str, _Node] = {}
    hard: dict[str, set[str]] = {}
    soft: dict[str, set[str]] = {}

    def visit(node: _Node) -> set[str]:
        if isinstance(node, _Rat):
            return set()
        if isinstance(node, _Sqrt):
            inner = visit(node.rad)
            below = set()
        else:
            below = visit(node.lo) | visit(node.hi)
            inner = visit(node.rad)
        k = _key(node.rad)
        first.setdefault(k, node.pos)
        radicand.setdefault(k, node.rad)
        hard.setdefault(k, set()).update(inner - {k})
        soft.setdefault(k, set()).update(below - {k})
        return below | inner | {k}

    visit(root)
    placed: list[str] = []
    done: set[str] = set()
    pending = set(first)
    while pending:
        ready = [k for k in pending if (hard[k] | soft[k]) <= done]
        if not ready:
            # inconsistent level order in non-canonical input: drop soft edges
            ready = [k for k in pending if hard[k] <= done]
        k = heapq.nsmallest(1, ready, key=lambda s: first[s])[0]
        placed.append(k)
        done.add(k)
        pending.discard(k)
    return [(k, radicand[k], first[k]) for k in placed]


def _evaluate(node: _Node, tower: FieldTower, roots: dict[str, TowerElement]) -> TowerElement:
    if isinstance(node, _Rat):
        return TowerElement(tower, node.value)
    root = roots[_key(node.rad)]
    if isinstance(node, _Sqrt):
        return TowerElement(tower, root.raw)
    lo = _evaluate(node.lo, tower, roots)
    hi = _evaluate(node.hi, tower, roots)
    return lo + hi * TowerElement(tower, root.raw)


def parse_element(text: str) -> TowerElement:
    """Parse the textual grammar into a canonical element.

    Raises :class:`ParseError` carrying the byte offset of the problem.
    """
    p = _Parser(text)
    node = p.element()
    p.skip_ws()
    if p.i != len(text):
        raise p.error("trailing characters")
    tower = QQ
    roots: dict[str, TowerElement] = {}
    for key, rad, pos in _symbol_order(node):
        theta = _evaluate(rad, tower, roots)
        try:
            tower, root = adjoin_sqrt(tower, theta)
        except ValueError as exc:
            raise p.error(f"bad radicand {key}: {exc}", pos) from None
        roots[key] = root
    # every root lives in a prefix of the final tower
    return _evaluate(node, tower, roots)
