"""Exhaustive search for pure order ideals with a prescribed rank vector.

A pure order ideal X of socle degree e in r variables is fixed by its layers
X_1, ..., X_e where X_1 is every variable and X_{i-1} is exactly the set of
divisors ``m / y_j`` of X_i.  The search picks X_2, ..., X_{e-1} one layer at a
time by orderly generation (a chosen layer is kept only if its sorted index
tuple is least in its orbit under the permutations of the variables that fix
the previous layer), then settles the top layer as a set-cover problem: the
sizes of top layers that work over a fixed X_{e-1} form the interval
[minimum cover, number of candidates].
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .bits import iter_bits, popcount
from .orderideals import Monomial, lower_shadow

DEFAULT_CAP = 2_000_000
SYMMETRY_LIMIT = 8  # beyond this many variables the search runs unsymmetrised
PREFILTER = 32


class SearchCapExceeded(RuntimeError):
    """The node budget ran out before the search finished."""


class Budget:
    def __init__(self, cap: int = DEFAULT_CAP) -> None:
        self.cap = cap
        self.used = 0

    def tick(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.cap:
            raise SearchCapExceeded(f"node cap {self.cap} exceeded")


@lru_cache(maxsize=None)
def symmetric_group(r: int) -> np.ndarray:
    """All variable permutations; transpositions come first (cheap rejections)."""
    if r > SYMMETRY_LIMIT:
        return np.arange(r, dtype=np.int64).reshape(1, r)
    ident = tuple(range(r))
    swaps = []
    for i, j in itertools.combinations(range(r), 2):
        p = list(ident)
        p[i], p[j] = j, i
        swaps.append(tuple(p))
    front = set(swaps) | {ident}
    rest = [p for p in itertools.permutations(range(r)) if p not in front]
    return np.array([ident] + swaps + rest, dtype=np.int64).reshape(-1, r)


def universe_action(var_perms: np.ndarray, universe: Sequence[Monomial]) -> np.ndarray:
    """Index action on ``universe`` of each variable permutation (rows).

    ``var_perms[g, j]`` is the image of variable ``j``.  Every permutation
    must map ``universe`` onto itself.
    """
    g, r = var_perms.shape
    if not universe:
        return np.zeros((g, 0), dtype=np.int64)
    exps = np.array(universe, dtype=np.int64)
    inv = np.argsort(var_perms, axis=1)
    base = int(exps.max()) + 1 if exps.size else 1
    weights = base ** np.arange(r, dtype=np.int64)
    codes = exps @ weights
    order = np.argsort(codes)
    sorted_codes = codes[order]
    images = exps[:, inv]  # (N, G, r): new[k] = old[inv[k]]
    img_codes = images @ weights  # (N, G)
    pos = np.searchsorted(sorted_codes, img_codes)
    pos = np.clip(pos, 0, len(sorted_codes) - 1)
    if not np.all(sorted_codes[pos] == img_codes):
        raise ValueError("permutation does not preserve the universe")
    return order[pos].T.copy()


def is_canonical(chosen: Sequence[int], action: np.ndarray) -> bool:
    """True iff ``sorted(chosen)`` is lexicographically least in its orbit."""
    if action.shape[0] <= 1:
        return True
    s = np.asarray(chosen, dtype=np.int64)
    head = action[:PREFILTER]
    if not _least(head, s):
        return False
    return action.shape[0] <= PREFILTER or _least(action[PREFILTER:], s)


def _least(rows: np.ndarray, s: np.ndarray) -> bool:
    imgs = np.sort(rows[:, s], axis=1)
    diff = imgs - s
    first = (diff != 0).argmax(axis=1)
    return not np.any(diff[np.arange(len(diff)), first] < 0)


def stabilizer(var_perms: np.ndarray, action: np.ndarray, chosen: Sequence[int]) -> np.ndarray:
    if var_perms.shape[0] <= 1:
        return var_perms
    s = np.sort(np.asarray(chosen, dtype=np.int64))
    keep = np.all(np.sort(action[:, s], axis=1) == s, axis=1)
    return var_perms[keep]


def candidates(prev: Sequence[Monomial]) -> list[Monomial]:
    """Monomials one degree up all of whose divisors by a variable lie in ``prev``."""
    prev_set = set(prev)
    r = len(prev[0])
    seen: set[Monomial] = set()
    for m in prev:
        for j in range(r):
            up = m[:j] + (m[j] + 1,) + m[j + 1 :]
            if up not in seen and all(d in prev_set for d in lower_shadow(up)):
                seen.add(up)
    return sorted(seen, reverse=True)


def _cover_masks(universe: Sequence[Monomial], prev: Sequence[Monomial]) -> list[int]:
    index = {m: i for i, m in enumerate(prev)}
    return [sum(1 << index[d] for d in set(lower_shadow(u))) for u in universe]


def _orderly(
    cover: list[int],
    full: int,
    action: np.ndarray,
    budget: Budget,
    size: int | None,
) -> Iterator[list[int]]:
    """Canonical index sets whose covers union to ``full``.

    With ``size`` given only sets of that size are produced; otherwise every
    covering size is.
    """
    n = len(cover)
    maxcov = max((popcount(c) for c in cover), default=0)

    def walk(chosen: list[int], start: int, covered: int) -> Iterator[list[int]]:
        if covered == full and (size is None or len(chosen) == size):
            yield chosen
        if size is not None and len(chosen) == size:
            return
        room = (size if size is not None else n) - len(chosen)
        missing = popcount(full & ~covered)
        if missing > room * maxcov:
            return
        last = n - (size - len(chosen)) + 1 if size is not None else n
        for idx in range(start, last):
            nxt = chosen + [idx]
            if not is_canonical(nxt, action):
                continue
            budget.tick()
            yield from walk(nxt, idx + 1, covered | cover[idx])

    yield from walk([], 0, 0)


def _cover_within(cover: list[int], full: int, limit: int, budget: Budget) -> list[int] | None:
    """Some set of at most ``limit`` indices whose covers union to ``full``."""
    if full == 0:
        return []
    maxcov = max((popcount(c) for c in cover), default=0)
    if maxcov == 0:
        return None
    holders: dict[int, list[int]] = {}
    for i, c in enumerate(cover):
        for b in iter_bits(c):
            holders.setdefault(b, []).append(i)
    dead: set[tuple[int, int]] = set()

    def rec(covered: int, left: int) -> list[int] | None:
        if covered == full:
            return []
        missing = full & ~covered
        if left == 0 or popcount(missing) > left * maxcov or (covered, left) in dead:
            return None
        budget.tick()
        pivot = min(iter_bits(missing), key=lambda b: len(holders.get(b, ())))
        options = holders.get(pivot)
        if not options:
            dead.add((covered, left))
            return None
        for i in sorted(options, key=lambda i: -popcount(cover[i] & missing)):
            found = rec(covered | cover[i], left - 1)
            if found is not None:
                return [i] + found
        dead.add((covered, left))
        return None

    return rec(0, limit)


def _top_layer(prev: list[Monomial], target: int, budget: Budget) -> list[Monomial] | None:
    universe = candidates(prev)
    if target > len(universe):
        return None
    cover = _cover_masks(universe, prev)
    full = (1 << len(prev)) - 1
    picked = _cover_within(cover, full, target, budget)
    if picked is None:
        return None
    rest = [i for i in range(len(universe)) if i not in set(picked)]
    chosen = sorted(picked + rest[: target - len(picked)])
    return [universe[i] for i in chosen]


def _variables(r: int) -> list[Monomial]:
    return [tuple(1 if k == j else 0 for k in range(r)) for j in range(r)]


def find_pure_maxima(h: Sequence[int], budget: Budget | None = None) -> list[Monomial] | None:
    """Maximal monomials of a pure order ideal with rank vector ``h``, or None.

    ``h`` must start with 1 and end with a nonzero entry.  Raises
    :class:`SearchCapExceeded` when the budget runs out.
    """
    budget = budget or Budget()
    h = list(h)
    if not h or h[0] != 1 or h[-1] <= 0 or any(x <= 0 for x in h):
        return None
    e = len(h) - 1
    if e == 0:
        return [()]
    r = h[1]
    layer1 = _variables(r)
    if e == 1:
        return layer1

    def solve(i: int, prev: list[Monomial], var_perms: np.ndarray) -> list[Monomial] | None:
        if i == e:
            return _top_layer(prev, h[e], budget)
        universe = candidates(prev)
        if h[i] > len(universe):
            return None
        cover = _cover_masks(universe, prev)
        action = universe_action(var_perms, universe) if var_perms.shape[0] > 1 else var_perms[:, :0]
        full = (1 << len(prev)) - 1
        for chosen in _orderly(cover, full, action, budget, h[i]):
            layer = [universe[k] for k in chosen]
            stab = stabilizer(var_perms, action, chosen)
            found = solve(i + 1, layer, stab)
            if found is not None:
                return found
        return None

    return solve(2, layer1, symmetric_group(r))


def _min_cover(cover: list[int], full: int, budget: Budget) -> list[int] | None:
    maxcov = max((popcount(c) for c in cover), default=0)
    if full == 0:
        return []
    if maxcov == 0:
        return None
    union = 0
    for c in cover:
        union |= c
    if union & full != full:
        return None
    k = -(-popcount(full) // maxcov)
    while True:
        found = _cover_within(cover, full, k, budget)
        if found is not None:
            return found
        k += 1


@lru_cache(maxsize=None)
def pure_table(r: int, e: int, cap: int = DEFAULT_CAP) -> dict[tuple[int, ...], tuple[Monomial, ...]]:
    """Every pure O-sequence with ``h_1 = r`` and socle degree ``e``, with maxima.

    Walks every orbit of admissible lower layers, so the table is exhaustive.
    """
    if r < 1 or e < 1:
        raise ValueError("pure_table needs r >= 1 and e >= 1")
    budget = Budget(cap)
    layer1 = _variables(r)
    if e == 1:
        return {(1, r): tuple(layer1)}
    table: dict[tuple[int, ...], tuple[Monomial, ...]] = {}

    def walk(i: int, prefix: tuple[int, ...], prev: list[Monomial], var_perms: np.ndarray) -> None:
        universe = candidates(prev)
        cover = _cover_masks(universe, prev)
        full = (1 << len(prev)) - 1
        if i == e:
            picked = _min_cover(cover, full, budget)
            if picked is None:
                return
            rest = [k for k in range(len(universe)) if k not in set(picked)]
            for extra in range(len(rest) + 1):
                key = prefix + (len(picked) + extra,)
                if key not in table:
                    table[key] = tuple(universe[k] for k in sorted(picked + rest[:extra]))
            return
        action = universe_action(var_perms, universe) if var_perms.shape[0] > 1 else var_perms[:, :0]
        for chosen in _orderly(cover, full, action, budget, None):
            layer = [universe[k] for k in chosen]
            walk(i + 1, prefix + (len(chosen),), layer, stabilizer(var_perms, action, chosen))

    walk(2, (1, r), layer1, symmetric_group(r))
    return dict(sorted(table.items()))
