"""Simplicial complexes over a labelled ground set, with matroid tools.

A complex is stored by its facets as int bitmasks over the ground set
``{1..n}``.  Ground elements that lie in no facet are *loops*: they stay in
the ground set (links and deletions keep the original ground set) but are
not vertices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Sequence

from .bits import (
    MAX_GROUND,
    elements_of,
    full_mask,
    iter_bits,
    mask_of,
    popcount,
    submasks,
)

GroundPartition = list[list[int]]


class ComplexError(ValueError):
    """Raised for malformed complexes or violated operation preconditions."""


def _maximal(masks: Iterable[int]) -> tuple[int, ...]:
    kept: list[int] = []
    for m in sorted(set(masks), key=popcount, reverse=True):
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return tuple(sorted(kept, key=elements_of))


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex on ground set ``{1..n}`` given by its facets (bitmasks)."""

    n: int
    facets: tuple[int, ...]

    @classmethod
    def _make(cls, n: int, masks: Iterable[int]) -> SimplicialComplex:
        return cls(n, _maximal(masks))

    @property
    def vertices(self) -> int:
        v = 0
        for f in self.facets:
            v |= f
        return v

    @property
    def loops(self) -> int:
        return full_mask(self.n) & ~self.vertices

    @property
    def rank(self) -> int:
        """Size of the largest facet (``dim + 1``)."""
        return max(popcount(f) for f in self.facets)

    @property
    def dim(self) -> int:
        return self.rank - 1

    @cached_property
    def faces(self) -> frozenset[int]:
        out: set[int] = set()
        for f in self.facets:
            if f in out:
                continue
            out.update(submasks(f))
        return frozenset(out)

    def facet_lists(self) -> list[list[int]]:
        return [elements_of(f) for f in self.facets]

    def __repr__(self) -> str:
        return f"SimplicialComplex(n={self.n}, facets={self.facet_lists()})"


def _check_ground(n: int) -> None:
    if n < 0:
        raise ComplexError("ground size must be nonnegative")
    if n > MAX_GROUND:
        raise ComplexError(f"ground size {n} exceeds the {MAX_GROUND}-element cap")


def _subset_mask(n: int, subset: Iterable[int]) -> int:
    elems = list(subset)
    for e in elems:
        if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
            raise ComplexError(f"element {e!r} out of range 1..{n}")
    return mask_of(elems)


def from_facets(n: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Complex generated by ``facets``; non-maximal inputs are dropped."""
    _check_ground(n)
    masks = [_subset_mask(n, f) for f in facets]
    if not masks:
        raise ComplexError("empty complex family")
    return SimplicialComplex._make(n, masks)


def _independent_sets(n: int, circuit_masks: Sequence[int]) -> list[int]:
    found: list[int] = []

    def grow(current: int, start: int) -> None:
        found.append(current)
        for i in range(start, n):
            cand = current | (1 << i)
            if any(c & ~cand == 0 for c in circuit_masks if c >> i & 1):
                continue
            grow(cand, i + 1)

    grow(0, 0)
    return found


def from_circuits(n: int, circuits_: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Complex whose minimal non-faces are exactly ``circuits_``."""
    _check_ground(n)
    masks = [_subset_mask(n, c) for c in circuits_]
    if 0 in masks:
        raise ComplexError("the empty set cannot be a circuit")
    for a, b in itertools.combinations(masks, 2):
        if a & ~b == 0 or b & ~a == 0:
            raise ComplexError("circuits must form an antichain")
    return SimplicialComplex._make(n, _independent_sets(n, masks))


def circuits(c: SimplicialComplex) -> list[int]:
    """Inclusion-minimal non-faces, as bitmasks (loops appear as singletons)."""
    return list(_circuits(c))


@lru_cache(maxsize=4096)
def _circuits(c: SimplicialComplex) -> tuple[int, ...]:
    faces = c.faces
    out: set[int] = set()
    for face in faces:
        for i in range(c.n):
            bit = 1 << i
            if face & bit:
                continue
            cand = face | bit
            if cand in faces or cand in out:
                continue
            if all((cand ^ b) in faces for b in iter_bits(cand)):
                out.add(cand)
    return tuple(sorted(out, key=lambda m: (popcount(m), elements_of(m))))


def circuit_lists(c: SimplicialComplex) -> list[list[int]]:
    return [elements_of(m) for m in circuits(c)]


def f_vector(c: SimplicialComplex) -> list[int]:
    """Entry ``j`` counts faces with ``j`` elements (entry 0 is f_{-1} = 1)."""
    counts = [0] * (c.rank + 1)
    for face in c.faces:
        counts[popcount(face)] += 1
    return counts


def h_from_f(f: Sequence[int]) -> list[int]:
    d = len(f) - 1
    return [
        sum((-1) ** (j - i) * comb(d - i, j - i) * f[i] for i in range(j + 1))
        for j in range(d + 1)
    ]


def f_from_h(h: Sequence[int]) -> list[int]:
    d = len(h) - 1
    return [sum(comb(d - i, j - i) * h[i] for i in range(j + 1)) for j in range(d + 1)]


def h_vector(c: SimplicialComplex) -> list[int]:
    """h-vector of length ``rank + 1``, trailing zeros kept (cones)."""
    return h_from_f(f_vector(c))


def nonzero_part(h: Sequence[int]) -> list[int]:
    out = list(h)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def is_pure(c: SimplicialComplex) -> bool:
    return len({popcount(f) for f in c.facets}) == 1


@lru_cache(maxsize=4096)
def is_matroid(c: SimplicialComplex) -> bool:
    """Basis-exchange test on the facets."""
    if not is_pure(c):
        return False
    bases = set(c.facets)
    for b1 in c.facets:
        for b2 in c.facets:
            if b1 == b2:
                continue
            only2 = b2 & ~b1
            for x in iter_bits(b1 & ~b2):
                base = b1 ^ x
                if not any((base | y) in bases for y in iter_bits(only2)):
                    return False
    return True


def restriction_purity(c: SimplicialComplex) -> bool:
    """Matroid test straight from the definition: every restriction is pure.

    Exponential in ``n``; meant as a test oracle.
    """
    faces = c.faces
    vertices = c.vertices
    ground_bits = list(iter_bits(vertices))
    extend = {}
    for face in faces:
        e = 0
        for b in ground_bits:
            if not face & b and (face | b) in faces:
                e |= b
        extend[face] = e
    for w in submasks(vertices):
        size = None
        for face, e in extend.items():
            if face & ~w or e & w:
                continue
            k = popcount(face)
            if size is None:
                size = k
            elif size != k:
                return False
    return True


def circuit_exchange_holds(c: SimplicialComplex) -> bool:
    """For circuits M != N sharing v, (M | N) - v must contain a circuit."""
    cs = circuits(c)
    faces = c.faces
    for m, n_ in itertools.combinations(cs, 2):
        common = m & n_
        for v in iter_bits(common):
            if ((m | n_) ^ v) in faces:
                return False
    return True


def _element_bit(c: SimplicialComplex, v: int) -> int:
    if not isinstance(v, int) or not 1 <= v <= c.n:
        raise ComplexError(f"element {v!r} out of range 1..{c.n}")
    return 1 << (v - 1)


def deletion(c: SimplicialComplex, v: int) -> SimplicialComplex:
    """Restriction to the ground set minus ``v``; ``v`` becomes a loop.

    Deleting a coloop lowers the dimension; callers that care should test
    ``v in coloops(c)`` first.
    """
    bit = _element_bit(c, v)
    return SimplicialComplex._make(c.n, (f & ~bit for f in c.facets))


def link(c: SimplicialComplex, v: int) -> SimplicialComplex:
    bit = _element_bit(c, v)
    if not c.vertices & bit:
        raise ComplexError("link of a loop")
    return SimplicialComplex._make(c.n, (f & ~bit for f in c.facets if f & bit))


def coloop_mask(c: SimplicialComplex) -> int:
    common = full_mask(c.n)
    for f in c.facets:
        common &= f
    return common


def coloops(c: SimplicialComplex) -> list[int]:
    return elements_of(coloop_mask(c))


def is_cone(c: SimplicialComplex) -> bool:
    return coloop_mask(c) != 0


def restriction(c: SimplicialComplex, keep: Iterable[int]) -> SimplicialComplex:
    w = _subset_mask(c.n, keep)
    return SimplicialComplex._make(c.n, (f & w for f in c.facets))


def skeleton(c: SimplicialComplex, i: int) -> SimplicialComplex:
    """Faces of dimension at most ``i``."""
    if not -1 <= i <= c.dim:
        raise ComplexError(f"skeleton dimension {i} outside -1..{c.dim}")
    k = i + 1
    masks: set[int] = set()
    for f in c.facets:
        if popcount(f) <= k:
            masks.add(f)
        else:
            for combo in itertools.combinations(list(iter_bits(f)), k):
                masks.add(sum(combo))
    return SimplicialComplex._make(c.n, masks)


def series_classes(c: SimplicialComplex) -> GroundPartition:
    """Vertices grouped by the set of circuits containing them."""
    cs = circuits(c)
    groups: dict[tuple[int, ...], list[int]] = {}
    for v in elements_of(c.vertices):
        bit = 1 << (v - 1)
        key = tuple(i for i, m in enumerate(cs) if m & bit)
        groups.setdefault(key, []).append(v)
    return sorted(groups.values())


def parallel_classes(c: SimplicialComplex) -> GroundPartition:
    """Vertex classes of the equivalence generated by 2-element circuits."""
    parent = {v: v for v in elements_of(c.vertices)}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in circuits(c):
        if popcount(m) == 2:
            a, b = elements_of(m)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    blocks: dict[int, list[int]] = {}
    for v in parent:
        blocks.setdefault(find(v), []).append(v)
    return sorted(blocks.values())


def init_degree(c: SimplicialComplex) -> int | None:
    """Smallest size of a circuit that is not a loop (None if there is none)."""
    sizes = [popcount(m) for m in circuits(c) if popcount(m) > 1]
    return min(sizes) if sizes else None


def is_complete_intersection(c: SimplicialComplex) -> bool:
    seen = 0
    for m in circuits(c):
        if seen & m:
            return False
        seen |= m
    return True


def ci_degrees(c: SimplicialComplex) -> list[int]:
    """Sizes of the non-loop circuits of a complete intersection."""
    if not is_complete_intersection(c):
        raise ComplexError("not a complete intersection")
    return [popcount(m) for m in circuits(c) if popcount(m) > 1]


@lru_cache(maxsize=None)
def _tutte_x1(bases: frozenset[int], ground: int) -> tuple[int, ...]:
    # Coefficients of T(x, 1), index = power of x.
    if ground == 0:
        return (1,)
    e = ground & -ground
    rest = ground ^ e
    with_e = [b for b in bases if b & e]
    if len(with_e) == len(bases):
        sub = _tutte_x1(frozenset(b ^ e for b in bases), rest)
        return (0,) + sub
    if not with_e:
        return _tutte_x1(bases, rest)
    dele = _tutte_x1(frozenset(b for b in bases if not b & e), rest)
    cont = _tutte_x1(frozenset(b ^ e for b in with_e), rest)
    size = max(len(dele), len(cont))
    return tuple(
        (dele[i] if i < len(dele) else 0) + (cont[i] if i < len(cont) else 0)
        for i in range(size)
    )


def tutte_h(c: SimplicialComplex) -> list[int]:
    """(h_0..h_d) read off T(x, 1) computed by deletion-contraction."""
    if not is_matroid(c):
        raise ComplexError("tutte_h needs a matroid")
    d = c.rank
    poly = _tutte_x1(frozenset(c.facets), full_mask(c.n))
    poly = poly + (0,) * (d + 1 - len(poly))
    return [poly[d - i] for i in range(d + 1)]


def join(c1: SimplicialComplex, c2: SimplicialComplex) -> SimplicialComplex:
    """Join; the ground set of ``c2`` is shifted past that of ``c1``."""
    n = c1.n + c2.n
    _check_ground(n)
    return SimplicialComplex._make(n, (a | (b << c1.n) for a in c1.facets for b in c2.facets))


def cone(c: SimplicialComplex) -> SimplicialComplex:
    """Cone with the new apex ``n + 1``."""
    return join(c, SimplicialComplex(1, (1,)))


def simplex_boundary(k: int) -> SimplicialComplex:
    """Boundary of the simplex on ``{1..k}``."""
    return from_facets(k, itertools.combinations(range(1, k + 1), k - 1))


def full_simplex(k: int) -> SimplicialComplex:
    return SimplicialComplex(k, (full_mask(k),))


def relabel(c: SimplicialComplex, perm: Sequence[int]) -> SimplicialComplex:
    """Send element ``i`` to ``perm[i - 1]`` (1-based images)."""
    def image(m: int) -> int:
        return mask_of(perm[e - 1] for e in elements_of(m))

    return SimplicialComplex._make(c.n, (image(f) for f in c.facets))
