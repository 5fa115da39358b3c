"""Real quadratic towers Q(sqrt(t1))(sqrt(t2))... and their elements.

Every radicand is positive and a non-square in the field below it.  With that
invariant each element has exactly one representation, so equality and
rationality are structural checks, and every symbol denotes the positive real
square root of its radicand.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Union

from ..errors import TowerMismatchError
from . import raw as R
from .interval import Interval, eval_scaled
from .rational import RationalLike, squarefree_split, to_fraction

_LOG2_10 = math.log2(10)


class FieldTower:
    """An immutable chain of adjoined square roots.

    Construct towers with :func:`adjoin_sqrt` (or :meth:`build`), which
    enforces the positivity and non-square invariants.
    """

    __slots__ = ("radicands", "parent", "_hash", "_cache", "_text")

    def __init__(self, parent: Optional["FieldTower"] = None, radicand: Optional[R.Raw] = None):
        if parent is None:
            self.radicands: tuple[R.Raw, ...] = ()
        else:
            self.radicands = parent.radicands + (radicand,)
        self.parent = parent
        self._hash: Optional[int] = None
        # (level, bits) -> scaled interval of the symbol; a pure memo
        self._cache: dict = {}
        self._text: dict[int, str] = {}

    @classmethod
    def build(cls, *radicands: RationalLike) -> "FieldTower":
        """Tower over Q adjoining each rational radicand in turn.

        Raises if a radicand is already a square in the field built so far,
        since it would not produce a new level.
        """
        tower = QQ
        for theta in radicands:
            new, _ = adjoin_sqrt(tower, theta)
            if new is tower:
                raise ValueError(f"sqrt({theta}) already lies in the tower")
            tower = new
        return tower

    @property
    def depth(self) -> int:
        return len(self.radicands)

    def ancestor(self, depth: int) -> "FieldTower":
        t = self
        while t.depth > depth:
            t = t.parent  # type: ignore[assignment]
        return t

    def is_prefix_of(self, other: "FieldTower") -> bool:
        if self.depth > other.depth:
            return False
        anc = other.ancestor(self.depth)
        return anc is self or anc.radicands == self.radicands

    def symbol(self, level: int) -> "TowerElement":
        return TowerElement(self, R.symbol(level))

    def radicand(self, level: int) -> "TowerElement":
        return TowerElement(self.ancestor(level), self.radicands[level])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldTower):
            return NotImplemented
        return self is other or self.radicands == other.radicands

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.radicands)
        return self._hash

    def __repr__(self) -> str:
        from .expr import format_raw

        return "FieldTower([" + ", ".join(format_raw(t, self) for t in self.radicands) + "])"


QQ = FieldTower()

Coercible = Union["TowerElement", int, Fraction]


class TowerElement:
    """An exact element of a :class:`FieldTower`.

    Supports ``+ - * /`` and comparisons with other elements of the same
    tower (or a prefix of it) and with ints and Fractions.
    """

    __slots__ = ("tower", "raw")

    def __init__(self, tower: FieldTower, raw: R.Raw):
        self.tower = tower
        self.raw = raw

    @classmethod
    def rational(cls, q: RationalLike) -> "TowerElement":
        return cls(QQ, to_fraction(q))

    @property
    def level(self) -> int:
        return R.level_of(self.raw)

    @property
    def lo(self) -> "TowerElement":
        if type(self.raw) is not R.Ext:
            return self
        return TowerElement(self.tower, self.raw.lo)

    @property
    def hi(self) -> "TowerElement":
        if type(self.raw) is not R.Ext:
            return TowerElement(self.tower, R.ZERO)
        return TowerElement(self.tower, self.raw.hi)

    def _operands(self, other: object) -> Optional[tuple[FieldTower, R.Raw, R.Raw]]:
        if isinstance(other, TowerElement):
            ta, tb = self.tower, other.tower
            if ta is tb or type(other.raw) is not R.Ext:
                return ta, self.raw, other.raw
            if type(self.raw) is not R.Ext:
                return tb, self.raw, other.raw
            if ta.is_prefix_of(tb):
                return tb, self.raw, other.raw
            if tb.is_prefix_of(ta):
                return ta, self.raw, other.raw
            raise TowerMismatchError(
                f"towers of depth {ta.depth} and {tb.depth} are unrelated; unify() them first"
            )
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.tower, self.raw, Fraction(other)
        return None

    def __add__(self, other: Coercible) -> "TowerElement":
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        t, a, b = ops
        return TowerElement(t, R.add(a, b))

    __radd__ = __add__

    def __sub__(self, other: Coercible) -> "TowerElement":
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        t, a, b = ops
        return TowerElement(t, R.sub(a, b))

    def __rsub__(self, other: Coercible) -> "TowerElement":
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        t, a, b = ops
        return TowerElement(t, R.sub(b, a))

    def __mul__(self, other: Coercible) -> "TowerElement":
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        t, a, b = ops
        return TowerElement(t, R.mul(a, b, t.radicands))

    __rmul__ = __mul__

    def __truediv__(self, other: Coercible) -> "TowerElement":
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        t, a, b = ops
        return TowerElement(t, R.div(a, b, t.radicands))

    def __rtruediv__(self, other: Coercible) -> "TowerElement":
        ops = self._operands(other)
        if ops is None:
            return NotImplemented
        t, a, b = ops
        return TowerElement(t, R.div(b, a, t.radicands))

    def __pow__(self, e: int) -> "TowerElement":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (1 / self) ** (-e)
        result = TowerElement(self.tower, R.ONE)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __neg__(self) -> "TowerElement":
        return TowerElement(self.tower, R.neg(self.raw))

    def __pos__(self) -> "TowerElement":
        return self

    def __abs__(self) -> "TowerElement":
        return -self if self.sign() < 0 else self

    def inverse(self) -> "TowerElement":
        return 1 / self

    def conjugate(self) -> "TowerElement":
        """Flip the sign of the top-level square root."""
        if type(self.raw) is not R.Ext:
            return self
        return TowerElement(self.tower, R.conjugate(self.raw))

    def is_zero(self) -> bool:
        return type(self.raw) is not R.Ext and not self.raw

    def is_rational(self) -> Optional[Fraction]:
        return is_rational(self)

    def sign(self) -> int:
        return sign(self)

    def numeric(self, digits: int = 50) -> Interval:
        return numeric_eval(self, digits)

    def __eq__(self, other: object) -> bool:
        try:
            ops = self._operands(other)
        except TowerMismatchError:
            assert isinstance(other, TowerElement)
            _, (a, b) = unify(self, other)
            return a.raw == b.raw
        if ops is None:
            return NotImplemented
        return ops[1] == ops[2]

    def __hash__(self) -> int:
        # equal values in different towers must hash alike; only rationals
        # have a tower-independent form
        if type(self.raw) is not R.Ext:
            return hash(self.raw)
        return hash("irrational-tower-element")

    def _cmp(self, other: object) -> int:
        try:
            diff = self - other  # type: ignore[operator]
        except TowerMismatchError:
            a, b = unify(self, other)[1]  # type: ignore[arg-type]
            diff = a - b
        if diff is NotImplemented:
            raise TypeError(f"cannot compare with {type(other).__name__}")
        return diff.sign()

    def __lt__(self, other: Coercible) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: Coercible) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: Coercible) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: Coercible) -> bool:
        return self._cmp(other) >= 0

    def __str__(self) -> str:
        from .expr import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"TowerElement({self})"


def as_element(x: Union[TowerElement, RationalLike]) -> TowerElement:
    if isinstance(x, TowerElement):
        return x
    return TowerElement.rational(x)


def field_arith(a: Coercible, b: Coercible, op: str) -> TowerElement:
    """Functional form of ``a <op> b`` for op in add, sub, mul, div."""
    a, b = as_element(a), as_element(b)  # type: ignore[arg-type]
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_rational(alpha: TowerElement) -> Optional[Fraction]:
    r = alpha.raw
    return r if type(r) is not R.Ext else None


def numeric_eval(alpha: TowerElement, digits: int = 50) -> Interval:
    """Enclosing interval of width at most ``10**-digits``.

    Rational elements come back as an exact zero-width interval.
    """
    if digits < 1:
        raise ValueError("precision must be at least one digit")
    r = alpha.raw
    if type(r) is not R.Ext:
        return Interval.point(r)
    target = Fraction(1, 10 ** digits)
    bits = int(digits * _LOG2_10) + 16
    tower = alpha.tower
    while True:
        iv = Interval.from_scaled(eval_scaled(r, tower.radicands, bits, tower._cache), bits)
        if iv.width <= target:
            return iv
        bits *= 2


def sign(alpha: TowerElement) -> int:
    r = alpha.raw
    if type(r) is not R.Ext:
        return (r > 0) - (r < 0)
    tower = alpha.tower
    bits = 64
    while True:
        lo, hi = eval_scaled(r, tower.radicands, bits, tower._cache)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        # a nonzero canonical element is nonzero, so refinement terminates
        bits *= 2


def _coerce_into(tower: FieldTower, x: Union[TowerElement, RationalLike]) -> R.Raw:
    e = as_element(x)
    if type(e.raw) is not R.Ext:
        return e.raw
    if e.tower.is_prefix_of(tower):
        return e.raw
    raise TowerMismatchError("element does not belong to the given tower")


def sqrt_in_field(alpha: Union[TowerElement, RationalLike], tower: Optional[FieldTower] = None) -> Optional[TowerElement]:
    """The nonnegative square root of ``alpha`` if it lies in ``tower``."""
    if tower is None:
        tower = as_element(alpha).tower
    a = _coerce_into(tower, alpha)
    s = sign(TowerElement(tower, a))
    if s < 0:
        return None
    if s == 0:
        return TowerElement(tower, R.ZERO)
    root = R.sqrt(a, tower.depth, tower.radicands)
    if root is None:
        return None
    elem = TowerElement(tower, root)
    return -elem if elem.sign() < 0 else elem


def adjoin_sqrt(
    tower: FieldTower, theta: Union[TowerElement, RationalLike]
) -> tuple[FieldTower, TowerElement]:
    """Return ``(tower', sqrt(theta))`` with the positive root.

    If the root already lies in ``tower`` it is returned with the tower
    unchanged.  Rational radicands are stored with square factors removed,
    so ``adjoin_sqrt(QQ, 12)`` yields tower ``[3]`` and element ``2*sqrt(3)``.
    """
    a = _coerce_into(tower, theta)
    if sign(TowerElement(tower, a)) <= 0:
        raise ValueError("only positive radicands can be adjoined (real towers)")
    root = sqrt_in_field(TowerElement(tower, a), tower)
    if root is not None:
        return tower, root
    level = tower.depth
    if type(a) is not R.Ext:
        core, coeff = squarefree_split(a)
        new = FieldTower(tower, Fraction(core))
        return new, TowerElement(new, R.Ext(level, R.ZERO, coeff))
    new = FieldTower(tower, a)
    return new, TowerElement(new, R.symbol(level))


def merge_towers(a: FieldTower, b: FieldTower) -> tuple[FieldTower, Optional[list[R.Raw]]]:
    """Smallest extension of ``a`` containing ``b``.

    Returns the merged tower (``a`` with new symbols appended) and the image
    of each symbol of ``b`` in it, or None when ``b``'s own levels can be
    reused unchanged.
    """
    if b.is_prefix_of(a):
        return a, None
    if a.is_prefix_of(b):
        return b, None
    common = 0
    while common < min(a.depth, b.depth) and a.radicands[common] == b.radicands[common]:
        common += 1
    images: list[R.Raw] = [R.symbol(k) for k in range(common)]
    merged = a
    for k in range(common, b.depth):
        theta = R.embed(b.radicands[k], images, merged.radicands)
        merged, root = adjoin_sqrt(merged, TowerElement(merged, theta))
        images.append(root.raw)
    return merged, images


def unify(*elements: Union[TowerElement, RationalLike]) -> tuple[FieldTower, list[TowerElement]]:
    """Re-express all elements in one common tower."""
    elems = [as_element(e) for e in elements]
    tower = QQ
    maps: list[Optional[list[R.Raw]]] = []
    for e in elems:
        if type(e.raw) is not R.Ext:
            maps.append(None)
            continue
        tower, images = merge_towers(tower, e.tower)
        maps.append(images)
    out = []
    for e, images in zip(elems, maps):
        if images is None:
            out.append(TowerElement(tower, e.raw))
        else:
            out.append(TowerElement(tower, R.embed(e.raw, images, tower.radicands)))
    return tower, out


def sqrt_element(theta: Union[TowerElement, RationalLike]) -> TowerElement:
    """Convenience: positive square root, adjoining it to theta's tower if needed."""
    t = as_element(theta)
    return adjoin_sqrt(t.tower, t)[1]

