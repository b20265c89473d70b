"""Monomials as exponent tuples and finite monomial order ideals."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Monomial = tuple[int, ...]


def degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lower_shadow(m: Monomial) -> list[Monomial]:
    """Monomials ``m / y_j`` for every variable ``y_j`` dividing ``m``."""
    out = []
    for j, e in enumerate(m):
        if e:
            out.append(m[:j] + (e - 1,) + m[j + 1 :])
    return out


def divisors(m: Monomial) -> set[Monomial]:
    out = {m}
    frontier = [m]
    while frontier:
        nxt = []
        for x in frontier:
            for y in lower_shadow(x):
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


@lru_cache(maxsize=None)
def monomials_of_degree(r: int, d: int) -> tuple[Monomial, ...]:
    """All degree-``d`` monomials in ``r`` variables, lex-descending (y1 > y2 > ...)."""
    if r == 0:
        return ((),) if d == 0 else ()
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(r - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


def embed(m: Monomial, r: int) -> Monomial:
    """Pad ``m`` with zero exponents up to ``r`` variables."""
    return tuple(m) + (0,) * (r - len(m))


def format_monomial(m: Monomial) -> str:
    parts = []
    for j, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"y{j}")
        elif e > 1:
            parts.append(f"y{j}^{e}")
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class OrderIdeal:
    """Finite set of monomials in ``r`` variables closed under divisibility."""

    r: int
    monomials: frozenset[Monomial]

    def __post_init__(self) -> None:
        if any(len(m) != self.r for m in self.monomials):
            raise ValueError("monomial length does not match the variable count")
        if (0,) * self.r not in self.monomials:
            raise ValueError("an order ideal must contain 1")
        for m in self.monomials:
            for d in lower_shadow(m):
                if d not in self.monomials:
                    raise ValueError(f"not closed under divisibility: {m} without {d}")

    @cached_property
    def maxima(self) -> list[Monomial]:
        mons = self.monomials
        out = []
        for m in mons:
            if not any(m[:j] + (e + 1,) + m[j + 1 :] in mons for j, e in enumerate(m)):
                out.append(m)
        return sorted(out, key=lambda m: (-degree(m), tuple(-x for x in m)))

    @property
    def socle_degree(self) -> int:
        return max(degree(m) for m in self.monomials)

    @property
    def is_pure(self) -> bool:
        return len({degree(m) for m in self.maxima}) == 1

    def rank_vector(self) -> list[int]:
        return rank_vector(self)

    def to_json(self) -> dict:
        return {"r": self.r, "maxima": [list(m) for m in self.maxima]}

    @classmethod
    def from_json(cls, data: dict) -> OrderIdeal:
        return downward_closure(int(data["r"]), [tuple(m) for m in data["maxima"]])


def downward_closure(r: int, maxima: Iterable[Sequence[int]]) -> OrderIdeal:
    """Smallest order ideal in ``r`` variables containing ``maxima``."""
    gens = [tuple(m) for m in maxima]
    if not gens:
        raise ValueError("need at least one monomial")
    out: set[Monomial] = set()
    for g in gens:
        if len(g) != r or any(e < 0 for e in g):
            raise ValueError(f"bad exponent vector {g!r} for r={r}")
        if g not in out:
            out |= divisors(g)
    return OrderIdeal(r, frozenset(out))


def rank_vector(x: OrderIdeal) -> list[int]:
    counts = [0] * (x.socle_degree + 1)
    for m in x.monomials:
        counts[degree(m)] += 1
    return counts


def lex_segment_ideal(h: Sequence[int]) -> OrderIdeal:
    """Per degree ``i``, the last ``h_i`` monomials of lex order in ``h_1`` variables.

    Raises ``ValueError`` when the result is not an order ideal with rank
    vector ``h``, which happens exactly when ``h`` is not an O-sequence.
    """
    if not lex_segment_holds(h):
        raise ValueError(f"{list(h)} is not an O-sequence")
    r = h[1] if len(h) > 1 else 0
    chosen: set[Monomial] = set()
    for i, count in enumerate(h):
        if count:
            layer = monomials_of_degree(r, i)
            chosen.update(layer[len(layer) - count :])
    return OrderIdeal(r, frozenset(chosen))


def lex_segment_holds(h: Sequence[int]) -> bool:
    """Constructive O-sequence test: build the lex-last sets and check closure."""
    if not h or h[0] != 1 or any(x < 0 for x in h):
        return False
    r = h[1] if len(h) > 1 else 0
    prev: set[Monomial] = {(0,) * r}
    for i in range(1, len(h)):
        layer = monomials_of_degree(r, i)
        if h[i] > len(layer):
            return False
        current = set(layer[len(layer) - h[i] :]) if h[i] else set()
        for m in current:
            if any(d not in prev for d in lower_shadow(m)):
                return False
        prev = current
    return True
