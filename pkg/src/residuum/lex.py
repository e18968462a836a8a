"""Lexicographic monoids of tuples over a residuated base.

:class:`LexAlgebra` holds the length-``k`` tuples whose components are cancellative up
to (and excluding) the first collapsing one, after which everything is the
bottom.  The order is lexicographic, combination is pointwise, and the
residual is the three-way case split driven by :func:`gamma` and
:func:`delta`.

Infinite tuples are supported for the eventually-constant fragment: an
:class:`OmegaTuple` is a finite prefix followed by one of the constants
bottom, identity or top repeated forever.
"""
from __future__ import annotations

import enum
import itertools
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import Order, PreferenceAlgebra
from .errors import ArityMismatch, ConstructionError, DomainError, InvalidLexTuple, UnsupportedOperation


@dataclass(frozen=True)
class LexTuple:
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def k(self) -> int:
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __repr__(self):
        return f"Lex{list(self.components)}"


def _invalid_index(alg: PreferenceAlgebra, components) -> Optional[int]:
    """Index of the first component breaking the lex shape, or ``None``."""
    collapsed = False
    for i, c in enumerate(components):
        if not alg.contains(c):
            return i
        if collapsed and c != alg.bottom:
            return i
        if not collapsed and alg.is_collapsing(c):
            collapsed = True
    return None


def lex_make(alg: PreferenceAlgebra, components) -> LexTuple:
    components = tuple(components)
    if not components:
        raise InvalidLexTuple(0, "a lexicographic tuple needs at least one component")
    bad = _invalid_index(alg, components)
    if bad is not None:
        raise InvalidLexTuple(bad)
    return LexTuple(components)


def _same_arity(a: LexTuple, b: LexTuple) -> int:
    if len(a) != len(b):
        raise ArityMismatch(f"arity {len(a)} vs {len(b)}")
    return len(a)


def lex_compare(alg: PreferenceAlgebra, a: LexTuple, b: LexTuple) -> Order:
    _same_arity(a, b)
    for x, y in zip(a, b):
        if x != y:
            return alg.compare(x, y)
    return Order.EQ


def lex_combine(alg: PreferenceAlgebra, a: LexTuple, b: LexTuple) -> LexTuple:
    _same_arity(a, b)
    return LexTuple(alg.combine(x, y) for x, y in zip(a, b))


def lex_join(alg: PreferenceAlgebra, tuples: Iterable[LexTuple], k: Optional[int] = None) -> LexTuple:
    """Least upper bound, built component by component.

    Component ``i`` joins the ``i``-th entries of the tuples that agree with the
    join computed so far; when none agrees the component is ``join({}) = bottom``.
    """
    tuples = list(tuples)
    if not tuples:
        if k is None:
            raise ArityMismatch("the join of no tuples needs an explicit arity")
        return LexTuple((alg.bottom,) * k)
    arity = len(tuples[0])
    if k is not None and k != arity or any(len(t) != arity for t in tuples):
        raise ArityMismatch("all tuples in a join must share one arity")
    out = []
    live = tuples
    for i in range(arity):
        comp = alg.join(t[i] for t in live)
        out.append(comp)
        live = [t for t in live if t[i] == comp]
    return LexTuple(out)


def gamma(alg: PreferenceAlgebra, a, b) -> int:
    """1-based index of the first collapsing componentwise residual; ``k + 1`` if none."""
    k = _same_arity(a, b)
    for i in range(k):
        if alg.is_collapsing(alg.residual(a[i], b[i])):
            return i + 1
    return k + 1


def delta(alg: PreferenceAlgebra, a, b) -> int:
    """1-based index of the first ``i`` with ``(a_i - b_i) * b_i`` strictly below ``a_i``."""
    k = _same_arity(a, b)
    for i in range(k):
        back = alg.combine(alg.residual(a[i], b[i]), b[i])
        if alg.compare(back, a[i]) is Order.LT:
            return i + 1
    return k + 1


def lex_top(alg: PreferenceAlgebra, k: int) -> LexTuple:
    if alg.top is None:
        raise UnsupportedOperation(f"{alg.name} has no top element")
    if k <= 0:
        return LexTuple(())
    if not alg.is_collapsing(alg.top):
        return LexTuple((alg.top,) * k)
    return LexTuple((alg.top,) + (alg.bottom,) * (k - 1))


def lex_residual(alg: PreferenceAlgebra, a: LexTuple, b: LexTuple) -> LexTuple:
    k = _same_arity(a, b)
    g = gamma(alg, a, b)
    d = delta(alg, a, b)
    if g == d == k + 1:
        return LexTuple(alg.residual(x, y) for x, y in zip(a, b))
    if g != k + 1 and g <= d:
        head = [alg.residual(a[i], b[i]) for i in range(g)]
        return LexTuple(head + [alg.bottom] * (k - g))
    head = [alg.residual(a[i], b[i]) for i in range(d)]
    return LexTuple(head + list(lex_top(alg, k - d)))


class DegenerateLexWarning(UserWarning):
    """The base has a residual, but the lexicographic residual built on it is not a true residual."""


def _require_lex_base(base: PreferenceAlgebra, what: str) -> bool:
    """Reject bases without a residual; warn on degenerate ones.  Returns whether the result is residuated."""
    try:
        base.residual(base.identity, base.identity)
    except UnsupportedOperation:
        raise ConstructionError(f"{what} needs a base with a residual, {base.name} has none") from None
    if base.residuated and base.zero_bottom:
        return True
    problems = []
    if not base.residuated:
        problems.append("its residual violates the adjunction")
    if not base.zero_bottom:
        problems.append("its bottom does not annihilate")
    warnings.warn(f"{what} over {base.name}: " + " and ".join(problems), DegenerateLexWarning, stacklevel=3)
    return False


class LexAlgebra(PreferenceAlgebra):
    def __init__(self, base: PreferenceAlgebra, k: int):
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise ConstructionError(f"lex arity must be a positive integer, got {k!r}")
        self.residuated = _require_lex_base(base, "lex")
        self.zero_bottom = base.zero_bottom
        self.base = base
        self.k = k
        self.identity = LexTuple((base.identity,) * k)
        self.bottom = LexTuple((base.bottom,) * k)
        self.top = None if base.top is None else lex_top(base, k)
        self.distributive = base.distributive
        self._elements = None

    def contains(self, a):
        return isinstance(a, LexTuple) and len(a) == self.k and _invalid_index(self.base, a) is None

    def elements(self):
        if self._elements is None:
            base = self.base.elements()
            if base is None:
                return None
            self._elements = tuple(
                LexTuple(c)
                for c in itertools.product(base, repeat=self.k)
                if _invalid_index(self.base, c) is None
            )
        return self._elements

    def sample(self, rng):
        comps = []
        for _ in range(self.k):
            if comps and self.base.is_collapsing(comps[-1]):
                comps.append(self.base.bottom)
            else:
                comps.append(self.base.sample(rng))
        return LexTuple(comps)

    def leq(self, a, b):
        return lex_compare(self.base, a, b).is_leq

    def compare(self, a, b):
        return lex_compare(self.base, a, b)

    def join2(self, a, b):
        return lex_join(self.base, (a, b))

    def join(self, values):
        return lex_join(self.base, values, self.k)

    def combine(self, a, b):
        return lex_combine(self.base, a, b)

    def residual(self, a, b):
        return lex_residual(self.base, a, b)

    def is_collapsing(self, a):
        return any(self.base.is_collapsing(c) for c in a)

    @property
    def spec(self):
        return {"kind": "lex", "base": self.base.spec, "k": self.k}

    def decode(self, literal):
        if not isinstance(literal, list) or len(literal) != self.k:
            raise DomainError(f"lex literal must be an array of {self.k} base literals, got {literal!r}")
        return lex_make(self.base, [self.base.decode(x) for x in literal])

    def encode(self, a):
        return [self.base.encode(c) for c in a]


# ---------------------------------------------------------------------------
# eventually-constant infinite tuples


class Tail(enum.Enum):
    BOT = "bot"
    ONE = "one"
    TOP = "top"


_TAIL_PRIORITY = (Tail.BOT, Tail.ONE, Tail.TOP)


@dataclass(frozen=True)
class OmegaTuple:
    prefix: tuple
    tail: Tail

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))

    def __repr__(self):
        return f"Omega({list(self.prefix)}, {self.tail.value})"


def tail_value(alg: PreferenceAlgebra, tail: Tail):
    if tail is Tail.BOT:
        return alg.bottom
    if tail is Tail.ONE:
        return alg.identity
    if alg.top is None:
        raise UnsupportedOperation(f"{alg.name} has no top element")
    return alg.top


def _tail_of(alg: PreferenceAlgebra, value) -> Tail:
    for t in _TAIL_PRIORITY:
        if t is Tail.TOP and alg.top is None:
            continue
        if tail_value(alg, t) == value:
            return t
    raise UnsupportedOperation(f"{value!r} is not a representable tail constant of {alg.name}")


def _canonical(alg: PreferenceAlgebra, prefix, tail: Tail) -> OmegaTuple:
    tail = _tail_of(alg, tail_value(alg, tail))
    tv = tail_value(alg, tail)
    prefix = list(prefix)
    while prefix and prefix[-1] == tv:
        prefix.pop()
    return OmegaTuple(tuple(prefix), tail)


def _omega_invalid_index(alg: PreferenceAlgebra, a: OmegaTuple) -> Optional[int]:
    for i, c in enumerate(a.prefix):
        if not alg.contains(c):
            return i
    tv = tail_value(alg, a.tail)
    if not alg.is_collapsing(tv):
        for i, c in enumerate(a.prefix):
            if alg.is_collapsing(c):
                return i
        return None
    if tv != alg.bottom:
        return len(a.prefix)
    for i, c in enumerate(a.prefix[:-1]):
        if alg.is_collapsing(c):
            return i + 1
    return None


def omega_make(alg: PreferenceAlgebra, prefix, tail) -> OmegaTuple:
    tail = Tail(tail) if not isinstance(tail, Tail) else tail
    if tail is Tail.TOP and alg.top is None:
        raise UnsupportedOperation(f"{alg.name} has no top element")
    a = _canonical(alg, prefix, tail)
    bad = _omega_invalid_index(alg, a)
    if bad is not None:
        raise InvalidLexTuple(bad)
    return a


def _at(alg: PreferenceAlgebra, a: OmegaTuple, i: int):
    return a.prefix[i] if i < len(a.prefix) else tail_value(alg, a.tail)


def _span(a: OmegaTuple, b: OmegaTuple) -> int:
    return max(len(a.prefix), len(b.prefix))


def omega_compare(alg: PreferenceAlgebra, a: OmegaTuple, b: OmegaTuple) -> Order:
    for i in range(_span(a, b) + 1):
        x, y = _at(alg, a, i), _at(alg, b, i)
        if x != y:
            return alg.compare(x, y)
    return Order.EQ


def omega_combine(alg: PreferenceAlgebra, a: OmegaTuple, b: OmegaTuple) -> OmegaTuple:
    n = _span(a, b)
    prefix = [alg.combine(_at(alg, a, i), _at(alg, b, i)) for i in range(n)]
    tail = _tail_of(alg, alg.combine(tail_value(alg, a.tail), tail_value(alg, b.tail)))
    return _canonical(alg, prefix, tail)


def omega_gamma(alg: PreferenceAlgebra, a: OmegaTuple, b: OmegaTuple) -> Optional[int]:
    """As :func:`gamma`; ``None`` stands for the infinite index."""
    for i in range(_span(a, b) + 1):
        if alg.is_collapsing(alg.residual(_at(alg, a, i), _at(alg, b, i))):
            return i + 1
    return None


def omega_delta(alg: PreferenceAlgebra, a: OmegaTuple, b: OmegaTuple) -> Optional[int]:
    for i in range(_span(a, b) + 1):
        x, y = _at(alg, a, i), _at(alg, b, i)
        if alg.compare(alg.combine(alg.residual(x, y), y), x) is Order.LT:
            return i + 1
    return None


def omega_top(alg: PreferenceAlgebra) -> OmegaTuple:
    if alg.top is None:
        raise UnsupportedOperation(f"{alg.name} has no top element")
    if not alg.is_collapsing(alg.top):
        return _canonical(alg, (), Tail.TOP)
    return _canonical(alg, (alg.top,), Tail.BOT)


def omega_residual(alg: PreferenceAlgebra, a: OmegaTuple, b: OmegaTuple) -> OmegaTuple:
    g = omega_gamma(alg, a, b)
    d = omega_delta(alg, a, b)

    def head(n):
        return [alg.residual(_at(alg, a, i), _at(alg, b, i)) for i in range(n)]

    if g is None and d is None:
        tail = _tail_of(alg, alg.residual(tail_value(alg, a.tail), tail_value(alg, b.tail)))
        return _canonical(alg, head(_span(a, b)), tail)
    if g is not None and (d is None or g <= d):
        return _canonical(alg, head(g), Tail.BOT)
    top = omega_top(alg)
    return _canonical(alg, head(d) + list(top.prefix), top.tail)


def omega_join(alg: PreferenceAlgebra, tuples: Iterable[OmegaTuple]) -> OmegaTuple:
    tuples = list(tuples)
    if not tuples:
        return OmegaTuple((), Tail.BOT)
    n = max(len(t.prefix) for t in tuples)
    out = []
    live = tuples
    for i in range(n):
        comp = alg.join(_at(alg, t, i) for t in live)
        out.append(comp)
        live = [t for t in live if _at(alg, t, i) == comp]
    comp = alg.join(tail_value(alg, t.tail) for t in live)
    if any(tail_value(alg, t.tail) == comp for t in live):
        return _canonical(alg, out, _tail_of(alg, comp))
    return _canonical(alg, out + [comp], Tail.BOT)


def omega_truncate(alg: PreferenceAlgebra, a: OmegaTuple, k: int) -> LexTuple:
    return LexTuple(_at(alg, a, i) for i in range(k))


def omega_elements(alg: PreferenceAlgebra, max_prefix: int, tails=tuple(Tail)) -> list:
    """Every valid canonical tuple whose prefix is at most ``max_prefix`` long (finite base)."""
    base = alg.elements()
    if base is None:
        raise UnsupportedOperation(f"{alg.name}: carrier is not finitely enumerable")
    seen = {}
    for tail in tails:
        if tail is Tail.TOP and alg.top is None:
            continue
        for n in range(max_prefix + 1):
            for prefix in itertools.product(base, repeat=n):
                try:
                    t = omega_make(alg, prefix, tail)
                except (InvalidLexTuple, UnsupportedOperation):
                    continue
                seen.setdefault(t, None)
    return list(seen)


class LexOmegaAlgebra(PreferenceAlgebra):
    """Eventually-constant streams over a residuated base; infinite carrier."""

    def __init__(self, base: PreferenceAlgebra):
        self.residuated = _require_lex_base(base, "lex-omega")
        self.zero_bottom = base.zero_bottom
        self.base = base
        self.identity = OmegaTuple((), _tail_of(base, base.identity))
        self.bottom = OmegaTuple((), Tail.BOT)
        self.top = None if base.top is None else omega_top(base)
        self.distributive = base.distributive

    def contains(self, a):
        if not isinstance(a, OmegaTuple):
            return False
        try:
            return _canonical(self.base, a.prefix, a.tail) == a and _omega_invalid_index(self.base, a) is None
        except UnsupportedOperation:
            return False

    def _cancellative_sample(self, rng):
        for _ in range(100):
            x = self.base.sample(rng)
            if not self.base.is_collapsing(x):
                return x
        return self.base.identity

    def sample(self, rng):
        n = rng.randint(0, 3)
        tails = [Tail.BOT, Tail.ONE]
        if self.base.top is not None and not self.base.is_collapsing(self.base.top):
            tails.append(Tail.TOP)
        tail = rng.choice(tails)
        prefix = [self._cancellative_sample(rng) for _ in range(n)]
        if tail is Tail.BOT and prefix:
            prefix[-1] = self.base.sample(rng)
        return _canonical(self.base, prefix, tail)

    def leq(self, a, b):
        return omega_compare(self.base, a, b).is_leq

    def compare(self, a, b):
        return omega_compare(self.base, a, b)

    def join2(self, a, b):
        return omega_join(self.base, (a, b))

    def join(self, values):
        return omega_join(self.base, values)

    def combine(self, a, b):
        return omega_combine(self.base, a, b)

    def residual(self, a, b):
        return omega_residual(self.base, a, b)

    def is_collapsing(self, a):
        return any(self.base.is_collapsing(c) for c in a.prefix) or self.base.is_collapsing(
            tail_value(self.base, a.tail)
        )

    @property
    def spec(self):
        return {"kind": "lex-omega", "base": self.base.spec}

    def decode(self, literal):
        if not isinstance(literal, dict) or set(literal) != {"prefix", "tail"}:
            raise DomainError(f"lex-omega literal must be {{'prefix': [...], 'tail': ...}}, got {literal!r}")
        try:
            tail = Tail(literal["tail"])
        except ValueError:
            raise DomainError(f"unknown tail constant {literal['tail']!r}") from None
        return omega_make(self.base, [self.base.decode(x) for x in literal["prefix"]], tail)

    def encode(self, a):
        return {"prefix": [self.base.encode(c) for c in a.prefix], "tail": a.tail.value}
