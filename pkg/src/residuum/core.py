"""Partially ordered residuated monoids: the abstract contract and brute-force oracles.

An algebra is a :class:`PreferenceAlgebra` subclass.  Instances supply closed
forms for the order, the monoidal combination, finite joins, the residual and
the collapsing predicate; the oracles in this module recompute the latter two
by exhaustive search so the closed forms can be certified on finite carriers.
"""
from __future__ import annotations

import abc
import enum
import itertools
from typing import Any, Hashable, Iterable, Optional, Sequence

from .errors import DomainError, UnsupportedOperation

Value = Hashable


class Order(enum.Enum):
    LT = "lt"
    EQ = "eq"
    GT = "gt"
    INCOMPARABLE = "incomparable"

    def flip(self) -> "Order":
        return _FLIP[self]

    @property
    def is_leq(self) -> bool:
        return self is Order.LT or self is Order.EQ


_FLIP = {
    Order.LT: Order.GT,
    Order.GT: Order.LT,
    Order.EQ: Order.EQ,
    Order.INCOMPARABLE: Order.INCOMPARABLE,
}


class PreferenceAlgebra(abc.ABC):
    """A partially ordered monoid with bottom, optional top and (usually) a residual.

    Subclasses set ``identity``, ``bottom`` and ``top`` (``None`` when absent)
    and implement the abstract methods.  The flags describe which laws the
    instance claims; the law harness checks claimed laws and reports the rest
    for information only.
    """

    identity: Value
    bottom: Value
    top: Optional[Value] = None

    residuated: bool = True
    zero_bottom: bool = True
    distributive: bool = True

    # --- carrier -------------------------------------------------------
    @abc.abstractmethod
    def contains(self, a: Any) -> bool:
        ...

    def elements(self) -> Optional[tuple]:
        """The whole carrier in a fixed order, or ``None`` when it is infinite."""
        return None

    @property
    def is_finite(self) -> bool:
        return self.elements() is not None

    def sample(self, rng) -> Value:
        elems = self.elements()
        if elems is None:
            raise UnsupportedOperation(f"{self.name}: no sampler for an infinite carrier")
        return rng.choice(elems)

    # --- order ---------------------------------------------------------
    @abc.abstractmethod
    def leq(self, a: Value, b: Value) -> bool:
        ...

    def compare(self, a: Value, b: Value) -> Order:
        if a == b:
            return Order.EQ
        if self.leq(a, b):
            return Order.LT
        if self.leq(b, a):
            return Order.GT
        return Order.INCOMPARABLE

    def lt(self, a: Value, b: Value) -> bool:
        return a != b and self.leq(a, b)

    @abc.abstractmethod
    def join2(self, a: Value, b: Value) -> Value:
        ...

    def join(self, values: Iterable[Value]) -> Value:
        out = self.bottom
        for v in values:
            out = self.join2(out, v)
        return out

    # --- monoid --------------------------------------------------------
    @abc.abstractmethod
    def combine(self, a: Value, b: Value) -> Value:
        ...

    def combine_all(self, values: Iterable[Value]) -> Value:
        out = self.identity
        for v in values:
            out = self.combine(out, v)
        return out

    def residual(self, a: Value, b: Value) -> Value:
        raise UnsupportedOperation(f"{self.name} is not residuated")

    # --- collapsing elements --------------------------------------------
    @abc.abstractmethod
    def is_collapsing(self, a: Value) -> bool:
        ...

    def weakly_collapsing(self, a: Value) -> Optional[bool]:
        """Closed-form membership in C'(A), or ``None`` if the instance has none."""
        return None

    # --- serialisation ---------------------------------------------------
    @property
    @abc.abstractmethod
    def spec(self) -> dict:
        ...

    @abc.abstractmethod
    def decode(self, literal: Any) -> Value:
        ...

    @abc.abstractmethod
    def encode(self, a: Value) -> Any:
        ...

    @property
    def name(self) -> str:
        return self.spec["kind"]

    def check(self, a: Any) -> Value:
        if not self.contains(a):
            raise DomainError(f"{a!r} is not an element of {self.name}")
        return a

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, PreferenceAlgebra) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(repr(self.spec))


EXHAUSTIVE = "exhaustive"


def _require_finite(alg: PreferenceAlgebra) -> tuple:
    elems = alg.elements()
    if elems is None:
        raise UnsupportedOperation(f"{alg.name}: carrier is not finitely enumerable")
    return elems


def leq(alg: PreferenceAlgebra, a, b) -> bool:
    return alg.leq(alg.check(a), alg.check(b))


def compare(alg: PreferenceAlgebra, a, b) -> Order:
    return alg.compare(alg.check(a), alg.check(b))


def residual(alg: PreferenceAlgebra, a, b):
    return alg.residual(alg.check(a), alg.check(b))


def is_collapsing(alg: PreferenceAlgebra, a) -> bool:
    return alg.is_collapsing(alg.check(a))


def brute_force_residual(alg: PreferenceAlgebra, a, b):
    """Join of every ``c`` with ``b * c <= a``, found by enumerating the carrier."""
    elems = _require_finite(alg)
    alg.check(a)
    alg.check(b)
    return alg.join(c for c in elems if alg.leq(alg.combine(b, c), a))


def collapsing_witness(alg: PreferenceAlgebra, a, elems: Sequence) -> Optional[tuple]:
    seen = {}
    for x in elems:
        y = alg.combine(x, a)
        if y in seen:
            return seen[y], x
        seen[y] = x
    return None


def weak_collapsing_witness(alg: PreferenceAlgebra, a, elems: Sequence) -> Optional[tuple]:
    for x, y in itertools.permutations(elems, 2):
        if alg.lt(x, y) and alg.combine(x, a) == alg.combine(y, a):
            return x, y
    return None


def collapsing_oracle(alg: PreferenceAlgebra) -> frozenset:
    """C(A) computed by exhaustive search for two distinct elements identified by ``a``."""
    elems = _require_finite(alg)
    return frozenset(a for a in elems if collapsing_witness(alg, a, elems) is not None)


def weakly_collapsing_oracle(alg: PreferenceAlgebra) -> frozenset:
    """C'(A): elements identifying some strictly ordered pair."""
    elems = _require_finite(alg)
    return frozenset(a for a in elems if weak_collapsing_witness(alg, a, elems) is not None)


def is_weakly_collapsing(alg: PreferenceAlgebra, a) -> bool:
    alg.check(a)
    closed = alg.weakly_collapsing(a)
    if closed is not None:
        return closed
    elems = alg.elements()
    if elems is None:
        raise UnsupportedOperation(f"{alg.name}: no closed form for C'(A) on an infinite carrier")
    return weak_collapsing_witness(alg, a, elems) is not None


def maximal(alg: PreferenceAlgebra, values: Iterable) -> list:
    """Values not strictly below another one, duplicates removed, first-seen order kept."""
    uniq = list(dict.fromkeys(values))
    return [v for v in uniq if not any(alg.lt(v, w) for w in uniq)]
