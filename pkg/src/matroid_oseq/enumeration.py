"""Exhaustive generation of loopless matroids on a small labelled ground set.

Every loopless matroid M on {1..n} arises exactly once from M \\ n: either n
is a coloop (M is M \\ n plus a coloop) or n is a proper single-element
extension of M \\ n.  Proper extensions are in bijection with the linear
subclasses of hyperplanes of M \\ n (Crapo), so labelled generation needs
no deduplication.  The up-to-isomorphism mode extends one representative
per class and keeps the lexicographically least relabelling.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

import numpy as np

from .bits import iter_bits, popcount
from .complexes import ComplexError, SimplicialComplex

DEFAULT_MAX_N = 8

Bases = tuple[int, ...]


def _rank_of(bases: Bases, s: int) -> int:
    return max(popcount(s & b) for b in bases)


def _closure(bases: Bases, s: int, n: int) -> int:
    r = _rank_of(bases, s)
    out = s
    for i in range(n):
        bit = 1 << i
        if not s & bit and _rank_of(bases, s | bit) == r:
            out |= bit
    return out


def _linear_subclasses(hyperplanes: list[int], bases: Bases, k: int) -> Iterator[int]:
    """Yield linear subclasses as bitmasks over hyperplane indices."""
    m = len(hyperplanes)
    forced: list[list[int]] = [[] for _ in range(m)]
    for i, j in itertools.combinations(range(m), 2):
        meet = hyperplanes[i] & hyperplanes[j]
        if _rank_of(bases, meet) == k - 2:
            fm = 0
            for t, h in enumerate(hyperplanes):
                if meet & ~h == 0:
                    fm |= 1 << t
            forced[i].append((j, fm))
            forced[j].append((i, fm))

    def close(included: int, new: int) -> int:
        stack = [new]
        while stack:
            i = stack.pop()
            for j, fm in forced[i]:
                if included >> j & 1:
                    extra = fm & ~included
                    if extra:
                        included |= extra
                        stack.extend(t for t in range(m) if extra >> t & 1)
        return included

    def walk(i: int, included: int, excluded: int) -> Iterator[int]:
        if i == m:
            yield included
            return
        if included >> i & 1:
            yield from walk(i + 1, included, excluded)
            return
        yield from walk(i + 1, included, excluded | (1 << i))
        grown = close(included | (1 << i), i)
        if not grown & excluded:
            yield from walk(i + 1, grown, excluded)

    yield from walk(0, 0, 0)


def _extensions(bases: Bases, n_old: int, k: int) -> Iterator[Bases]:
    """Proper single-element extensions of a rank-k matroid by element n_old+1."""
    e = 1 << n_old
    if k == 0:
        return
    hyper_index: dict[int, int] = {}
    hyperplanes: list[int] = []
    indep: list[tuple[int, int]] = []
    seen: set[int] = set()
    for b in bases:
        for x in iter_bits(b):
            s = b ^ x
            if s in seen:
                continue
            seen.add(s)
            h = _closure(bases, s, n_old)
            if h not in hyper_index:
                hyper_index[h] = len(hyperplanes)
                hyperplanes.append(h)
            indep.append((s, hyper_index[h]))
    everything = (1 << len(hyperplanes)) - 1
    for sub in _linear_subclasses(hyperplanes, bases, k):
        if sub == everything:
            continue  # the new element would be a loop
        new = [s | e for s, t in indep if not sub >> t & 1]
        yield tuple(sorted(bases + tuple(new)))


def _coloop_extension(bases: Bases, n_old: int) -> Bases:
    e = 1 << n_old
    return tuple(sorted(b | e for b in bases))


@lru_cache(maxsize=None)
def _labelled(n: int, k: int) -> tuple[Bases, ...]:
    return tuple(_labelled_stream(n, k))


def _labelled_stream(n: int, k: int) -> Iterator[Bases]:
    if k < 0 or k > n:
        return
    if n == 0:
        yield (0,)
        return
    for bases in _labelled(n - 1, k):
        yield from _extensions(bases, n - 1, k)
    for bases in _labelled(n - 1, k - 1):
        yield _coloop_extension(bases, n - 1)


# -- canonical forms under relabelling ------------------------------------


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    # image[p, mask] = mask with element i sent to perms[p, i]
    masks = np.arange(1 << n, dtype=np.int64)
    image = np.zeros((len(perms), 1 << n), dtype=np.int32)
    for i in range(n):
        has = (masks >> i) & 1
        image |= (has[None, :] << perms[:, i][:, None]).astype(np.int32)
    return perms, image


def _element_invariants(bases: Bases, n: int) -> list[tuple]:
    inv = []
    for i in range(n):
        bit = 1 << i
        deg = sum(1 for b in bases if b & bit)
        pair = sorted(sum(1 for b in bases if b & bit and b & (1 << j)) for j in range(n) if j != i)
        inv.append((deg, tuple(pair)))
    return inv


def canonical_bases(bases: Bases, n: int) -> Bases:
    """Least relabelling of a basis family, compared as sorted mask tuples.

    Only relabellings that sort the elements by an isomorphism invariant are
    tried, which keeps the form canonical while pruning most permutations.
    """
    if n == 0:
        return bases
    perms, image = _perm_tables(n)
    inv = _element_invariants(bases, n)
    keys = sorted(set(inv))
    rank_of = np.array([keys.index(x) for x in inv], dtype=np.int64)
    # perms[p, i] is the new position of element i; keep those that list
    # elements in nondecreasing invariant order.
    pos_key = np.empty_like(perms)
    np.put_along_axis(pos_key, perms, np.broadcast_to(rank_of, perms.shape), axis=1)
    ok = np.all(pos_key[:, :-1] <= pos_key[:, 1:], axis=1)
    imgs = np.sort(image[ok][:, np.array(bases, dtype=np.int64)], axis=1)
    best = np.lexsort(imgs.T[::-1])[0]
    return tuple(int(x) for x in imgs[best])


@lru_cache(maxsize=None)
def _iso_classes(n: int, k: int) -> tuple[Bases, ...]:
    if k < 0 or k > n:
        return ()
    if n == 0:
        return ((0,),)
    seen: set[Bases] = set()
    out: list[Bases] = []
    candidates = itertools.chain(
        (ext for b in _iso_classes(n - 1, k) for ext in _extensions(b, n - 1, k)),
        (_coloop_extension(b, n - 1) for b in _iso_classes(n - 1, k - 1)),
    )
    for cand in candidates:
        form = canonical_bases(cand, n)
        if form not in seen:
            seen.add(form)
            out.append(form)
    return tuple(out)


def enumerate_matroids(
    n: int,
    rank: int,
    *,
    up_to_isomorphism: bool = False,
    max_n: int = DEFAULT_MAX_N,
) -> Iterator[SimplicialComplex]:
    """Yield every loopless matroid of the given rank on ``{1..n}`` once.

    With ``up_to_isomorphism`` one canonical representative per isomorphism
    class is produced instead.
    """
    if n > max_n:
        raise ComplexError(
            f"n={n} exceeds the enumeration cap {max_n}; raise max_n explicitly if you "
            "can afford the search (labelled counts grow super-exponentially)"
        )
    if n < 0 or rank < 0:
        raise ComplexError("n and rank must be nonnegative")
    if rank > n:
        return
    if up_to_isomorphism:
        source: Iterator[Bases] = iter(_iso_classes(n, rank))
    elif n <= 7:
        source = iter(_labelled(n, rank))
    else:
        source = _labelled_stream(n, rank)
    for bases in source:
        yield SimplicialComplex(n, tuple(sorted(bases, key=_sort_key)))


def _sort_key(m: int) -> list[int]:
    return [i + 1 for i in range(m.bit_length()) if m >> i & 1]
