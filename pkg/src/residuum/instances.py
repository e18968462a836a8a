"""Concrete preference algebras and the JSON spec format that names them.

Orientation conventions: tropical and chain costs use the reversed numeric
order, so *smaller* numbers are *better* (``leq(5, 3)`` holds), the bottom is
the worst cost and the join of a set is its numeric minimum.
"""
from __future__ import annotations

import itertools
import math

from .core import PreferenceAlgebra
from .errors import ConstructionError, DomainError, UnsupportedOperation

INF = math.inf
NEG_INF = -math.inf


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


class Tropical(PreferenceAlgebra):
    """Natural numbers with infinity, ordered by ``>=``, combined by addition."""

    identity = 0
    bottom = INF
    top = 0

    def contains(self, a):
        return (_is_int(a) and a >= 0) or a == INF

    def sample(self, rng):
        return INF if rng.random() < 0.1 else rng.randint(0, 12)

    def leq(self, a, b):
        return a >= b

    def join2(self, a, b):
        return min(a, b)

    def combine(self, a, b):
        if a == INF or b == INF:
            return INF
        return a + b

    def residual(self, a, b):
        if b == INF:
            return 0
        if a == INF:
            return INF
        return max(a - b, 0)

    def is_collapsing(self, a):
        return a == INF

    def weakly_collapsing(self, a):
        return a == INF

    @property
    def spec(self):
        return {"kind": "tropical"}

    def decode(self, literal):
        if literal == "inf":
            return INF
        if _is_int(literal) and literal >= 0:
            return literal
        raise DomainError(f"tropical literal must be a non-negative integer or 'inf', got {literal!r}")

    def encode(self, a):
        return "inf" if a == INF else a


class ExtendedInt(PreferenceAlgebra):
    """Integers with both infinities, natural order; ``+inf + -inf = -inf``."""

    identity = 0
    bottom = NEG_INF
    top = INF

    def contains(self, a):
        return _is_int(a) or a == INF or a == NEG_INF

    def sample(self, rng):
        r = rng.random()
        if r < 0.08:
            return INF
        if r < 0.16:
            return NEG_INF
        return rng.randint(-10, 10)

    def leq(self, a, b):
        return a <= b

    def join2(self, a, b):
        return max(a, b)

    def combine(self, a, b):
        if a == NEG_INF or b == NEG_INF:
            return NEG_INF
        if a == INF or b == INF:
            return INF
        return a + b

    def residual(self, a, b):
        if b == NEG_INF or a == INF:
            return INF
        if b == INF or a == NEG_INF:
            return NEG_INF
        return a - b

    def is_collapsing(self, a):
        return a == INF or a == NEG_INF

    def weakly_collapsing(self, a):
        return self.is_collapsing(a)

    @property
    def spec(self):
        return {"kind": "extended-int"}

    def decode(self, literal):
        if literal == "inf":
            return INF
        if literal == "-inf":
            return NEG_INF
        if _is_int(literal):
            return literal
        raise DomainError(f"extended-int literal must be an integer, 'inf' or '-inf', got {literal!r}")

    def encode(self, a):
        if a == INF:
            return "inf"
        if a == NEG_INF:
            return "-inf"
        return a


class Chain(PreferenceAlgebra):
    """``0..n`` with addition truncated at ``n``; reversed order, so ``n`` is the bottom.

    ``Chain(0)`` is the one-element algebra.
    """

    identity = 0
    top = 0

    def __init__(self, n: int):
        if not _is_int(n) or n < 0:
            raise ConstructionError(f"chain length must be a non-negative integer, got {n!r}")
        self.n = n
        self.bottom = n
        self._elements = tuple(range(n + 1))

    def contains(self, a):
        return _is_int(a) and 0 <= a <= self.n

    def elements(self):
        return self._elements

    def leq(self, a, b):
        return a >= b

    def join2(self, a, b):
        return min(a, b)

    def combine(self, a, b):
        return min(a + b, self.n)

    def residual(self, a, b):
        return max(a - b, 0)

    def is_collapsing(self, a):
        return a > 0

    def weakly_collapsing(self, a):
        return a > 0

    @property
    def spec(self):
        return {"kind": "chain", "n": self.n}

    def decode(self, literal):
        if self.contains(literal):
            return literal
        raise DomainError(f"chain({self.n}) literal must be an integer in 0..{self.n}, got {literal!r}")

    def encode(self, a):
        return a


class PowerSet(PreferenceAlgebra):
    """Subsets of a finite universe under inclusion, combined by union.

    The empty set is both identity and bottom, so the bottom does not
    annihilate and the adjunction fails whenever ``b`` is not below ``a``:
    the instance is not residuated.  :meth:`residual` still returns the join
    of the sub-solution set, which is ``a`` when ``b <= a`` and ``{}``
    otherwise.
    """

    residuated = False
    zero_bottom = False

    def __init__(self, universe):
        names = list(universe)
        if len(set(names)) != len(names) or not all(isinstance(x, str) for x in names):
            raise ConstructionError("powerset universe must be a list of distinct names")
        self.universe = tuple(names)
        self._rank = {x: i for i, x in enumerate(names)}
        self.identity = frozenset()
        self.bottom = frozenset()
        self.top = frozenset(names)
        self._elements = tuple(
            frozenset(c)
            for r in range(len(names) + 1)
            for c in itertools.combinations(names, r)
        )

    def contains(self, a):
        return isinstance(a, frozenset) and a <= self.top

    def elements(self):
        return self._elements

    def leq(self, a, b):
        return a <= b

    def join2(self, a, b):
        return a | b

    def combine(self, a, b):
        return a | b

    def residual(self, a, b):
        return a if b <= a else frozenset()

    def is_collapsing(self, a):
        return bool(a)

    def weakly_collapsing(self, a):
        return bool(a)

    @property
    def spec(self):
        return {"kind": "powerset", "universe": list(self.universe)}

    def decode(self, literal):
        if isinstance(literal, list) and all(x in self._rank for x in literal):
            return frozenset(literal)
        raise DomainError(f"powerset literal must be a list of names from {list(self.universe)}, got {literal!r}")

    def encode(self, a):
        return sorted(a, key=self._rank.__getitem__)


BOT = "bot"
TOP = "top"


class FlatCapped(PreferenceAlgebra):
    """``[0..n]`` with incomparable numbers lifted by ``bot``/``top``; capped addition.

    Not residuated and not distributive: a negative control separating C(A)
    from C'(A).
    """

    identity = 0
    bottom = BOT
    top = TOP
    residuated = False
    distributive = False

    def __init__(self, n: int):
        if not _is_int(n) or n < 1:
            raise ConstructionError(f"flat-capped bound must be a positive integer, got {n!r}")
        self.n = n
        self._elements = (BOT,) + tuple(range(n + 1)) + (TOP,)

    def contains(self, a):
        return a == BOT or a == TOP or (_is_int(a) and 0 <= a <= self.n)

    def elements(self):
        return self._elements

    def leq(self, a, b):
        return a == b or a == BOT or b == TOP

    def join2(self, a, b):
        if self.leq(a, b):
            return b
        if self.leq(b, a):
            return a
        return TOP

    def combine(self, a, b):
        if a == BOT or b == BOT:
            return BOT
        if a == TOP or b == TOP:
            return TOP
        return min(a + b, self.n)

    def is_collapsing(self, a):
        return a != 0

    def weakly_collapsing(self, a):
        return a == BOT or a == TOP

    @property
    def spec(self):
        return {"kind": "flat-capped", "n": self.n}

    def decode(self, literal):
        if self.contains(literal):
            return literal
        raise DomainError(f"flat-capped literal must be 0..{self.n}, 'bot' or 'top', got {literal!r}")

    def encode(self, a):
        return a


class Product(PreferenceAlgebra):
    """Cartesian product; every operation is componentwise."""

    def __init__(self, left: PreferenceAlgebra, right: PreferenceAlgebra):
        self.left = left
        self.right = right
        self.identity = (left.identity, right.identity)
        self.bottom = (left.bottom, right.bottom)
        self.top = None if left.top is None or right.top is None else (left.top, right.top)
        self.residuated = left.residuated and right.residuated
        self.zero_bottom = left.zero_bottom and right.zero_bottom
        self.distributive = left.distributive and right.distributive
        le, re = left.elements(), right.elements()
        self._elements = None if le is None or re is None else tuple(itertools.product(le, re))

    def contains(self, a):
        return isinstance(a, tuple) and len(a) == 2 and self.left.contains(a[0]) and self.right.contains(a[1])

    def elements(self):
        return self._elements

    def sample(self, rng):
        return (self.left.sample(rng), self.right.sample(rng))

    def leq(self, a, b):
        return self.left.leq(a[0], b[0]) and self.right.leq(a[1], b[1])

    def join2(self, a, b):
        return (self.left.join2(a[0], b[0]), self.right.join2(a[1], b[1]))

    def combine(self, a, b):
        return (self.left.combine(a[0], b[0]), self.right.combine(a[1], b[1]))

    def residual(self, a, b):
        return (self.left.residual(a[0], b[0]), self.right.residual(a[1], b[1]))

    def is_collapsing(self, a):
        return self.left.is_collapsing(a[0]) or self.right.is_collapsing(a[1])

    @property
    def spec(self):
        return {"kind": "product", "left": self.left.spec, "right": self.right.spec}

    def decode(self, literal):
        if not isinstance(literal, list) or len(literal) != 2:
            raise DomainError(f"product literal must be a two-element array, got {literal!r}")
        return (self.left.decode(literal[0]), self.right.decode(literal[1]))

    def encode(self, a):
        return [self.left.encode(a[0]), self.right.encode(a[1])]


def make_algebra(spec) -> PreferenceAlgebra:
    """Build an algebra from its JSON spec (a dict, already parsed)."""
    if isinstance(spec, PreferenceAlgebra):
        return spec
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConstructionError(f"algebra spec must be an object with a 'kind', got {spec!r}")
    kind = spec["kind"]
    try:
        if kind == "tropical":
            return Tropical()
        if kind == "extended-int":
            return ExtendedInt()
        if kind == "chain":
            return Chain(spec["n"])
        if kind == "powerset":
            return PowerSet(spec["universe"])
        if kind == "flat-capped":
            return FlatCapped(spec["n"])
        if kind == "product":
            return Product(make_algebra(spec["left"]), make_algebra(spec["right"]))
        if kind == "lex":
            from .lex import LexAlgebra

            return LexAlgebra(make_algebra(spec["base"]), spec["k"])
        if kind == "lex-omega":
            from .lex import LexOmegaAlgebra

            return LexOmegaAlgebra(make_algebra(spec["base"]))
    except KeyError as exc:
        raise ConstructionError(f"algebra spec {kind!r} is missing field {exc.args[0]!r}") from None
    except UnsupportedOperation as exc:
        raise ConstructionError(str(exc)) from None
    raise ConstructionError(f"unknown algebra kind {kind!r}")
