"""O-sequences, pure O-sequences and the properties used to certify them."""
from __future__ import annotations

from functools import lru_cache
from math import ceil, comb
from typing import Sequence

from .orderideals import downward_closure
from .search import DEFAULT_CAP, Budget, SearchCapExceeded, find_pure_maxima
from .verdict import Verdict


def macaulay_representation(value: int, i: int) -> list[tuple[int, int]]:
    """Greedy ``i``-th Macaulay representation as (a_k, k) pairs, k descending."""
    rep = []
    k = i
    while value > 0 and k >= 1:
        a = k
        while comb(a + 1, k) <= value:
            a += 1
        rep.append((a, k))
        value -= comb(a, k)
        k -= 1
    return rep


def macaulay_next_bound(value: int, i: int) -> int:
    """Largest possible next entry after ``value`` in degree ``i`` (value^<i>)."""
    if i < 1:
        raise ValueError("Macaulay bound needs i >= 1")
    return sum(comb(a + 1, k + 1) for a, k in macaulay_representation(value, i))


def is_O_sequence(h: Sequence[int]) -> bool:
    if not h or h[0] != 1 or any(x < 0 for x in h):
        return False
    return all(h[i + 1] <= macaulay_next_bound(h[i], i) for i in range(1, len(h) - 1))


def first_difference(h: Sequence[int]) -> list[int]:
    return [h[0]] + [h[i] - h[i - 1] for i in range(1, len(h))]


def is_differentiable(h: Sequence[int]) -> bool:
    return is_O_sequence(first_difference(h))


def is_flawless(h: Sequence[int]) -> bool:
    e = len(h) - 1
    return all(h[i] <= h[e - i] for i in range(e // 2 + 1))


def first_half(h: Sequence[int]) -> list[int]:
    e = len(h) - 1
    return list(h[: ceil(e / 2) + 1])


def nondecreasing_prefix(h: Sequence[int]) -> list[int]:
    """Longest prefix on which ``h`` does not decrease."""
    p = 0
    while p + 1 < len(h) and h[p + 1] >= h[p]:
        p += 1
    return list(h[: p + 1])


def strip_zeros(h: Sequence[int]) -> list[int]:
    out = list(h)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def shifted_sum(h: Sequence[int], h2: Sequence[int]) -> list[int]:
    """(h_0, h_1 + h2_0, ..., h_e + h2_{e-1}); ``h2`` must be one entry shorter."""
    if len(h2) != len(h) - 1 or not h2:
        raise ValueError(
            f"shifted sum needs socle degrees e and e-1, got lengths {len(h)} and {len(h2)}"
        )
    return [h[0]] + [h[i] + h2[i - 1] for i in range(1, len(h))]


def e2_closed_form(h: Sequence[int]) -> bool:
    """(1, m, a) is pure iff ceil(m/2) <= a <= C(m+1, 2)."""
    _, m, a = h
    return ceil(m / 2) <= a <= comb(m + 1, 2)


def rrrt_closed_form(h: Sequence[int]) -> bool:
    """(1, r, r, t) with t >= 1 is pure iff ceil(r/3) <= t <= r."""
    _, r, r2, t = h
    if r != r2:
        raise ValueError("closed form only covers (1, r, r, t)")
    return ceil(r / 3) <= t <= r


def max_differentiable_last(prefix: Sequence[int]) -> int | None:
    """Largest x making ``prefix + (x,)`` differentiable (None if impossible)."""
    if len(prefix) < 2 or not is_differentiable(prefix):
        return None
    delta = first_difference(prefix)
    return prefix[-1] + macaulay_next_bound(delta[-1], len(prefix) - 1)


def least_differentiable_middle(r: int, top: int) -> int | None:
    """Least a with (1, r, a, top) a differentiable O-sequence."""
    for a in range(r, top + 1):
        if is_differentiable((1, r, a, top)):
            return a
    return None


def pure_witness_search(h: Sequence[int], cap: int = DEFAULT_CAP) -> Verdict:
    """Exhaustive witness search; outcome None means the node cap was hit."""
    h = strip_zeros(h)
    budget = Budget(cap)
    try:
        maxima = find_pure_maxima(h, budget)
    except SearchCapExceeded:
        return Verdict(None, "search", details={"nodes": budget.used, "cap": cap})
    if maxima is None:
        return Verdict(False, "search", details={"nodes": budget.used})
    r = h[1] if len(h) > 1 else 0
    witness = downward_closure(r, maxima)
    return Verdict(True, "search", witness=witness, details={"nodes": budget.used})


def is_pure_O_sequence(h: Sequence[int], cap: int = DEFAULT_CAP) -> Verdict:
    """Decide purity: necessary filters, then closed forms, then search.

    Trailing zeros are ignored.  Every pure verdict carries a witness unless
    the search budget ran out while building one.
    """
    return _purity(tuple(strip_zeros(h)), cap)


@lru_cache(maxsize=None)
def _purity(h: tuple[int, ...], cap: int) -> Verdict:
    e = len(h) - 1
    if not is_O_sequence(h):
        return Verdict(False, "not_o_sequence")
    if e <= 1:
        return _attach_witness(h, "socle_degree_le_1", cap)
    if not is_flawless(h):
        return Verdict(False, "not_flawless")
    if not is_differentiable(first_half(h)):
        return Verdict(False, "first_half_not_differentiable")
    if e == 2:
        if not e2_closed_form(h):
            return Verdict(False, "closed_form_e2")
        return _attach_witness(h, "closed_form_e2", cap)
    if e == 3 and h[1] == h[2]:
        if not rrrt_closed_form(h):
            return Verdict(False, "closed_form_rrrt")
        return _attach_witness(h, "closed_form_rrrt", cap)
    if is_differentiable(h):
        return _attach_witness(h, "differentiable", cap)
    return pure_witness_search(h, cap)


def _attach_witness(h: tuple[int, ...], method: str, cap: int) -> Verdict:
    found = pure_witness_search(h, cap)
    if found.outcome is False:
        raise RuntimeError(f"{method} says {list(h)} is pure but exhaustive search found no witness")
    return Verdict(True, method, witness=found.witness, details=dict(found.details))


def icp_interval_test(low: Sequence[int], high: Sequence[int], i: int, cap: int = DEFAULT_CAP) -> Verdict:
    """Check every sequence strictly between ``low`` and ``high`` at index ``i``."""
    low, high = list(low), list(high)
    if len(low) != len(high) or not 0 <= i < len(low):
        raise ValueError("sequences must have equal length and i must index them")
    if any(a != b for k, (a, b) in enumerate(zip(low, high)) if k != i) or low[i] > high[i]:
        raise ValueError("low and high must differ only at index i, with low_i <= high_i")
    for end in (low, high):
        if not is_pure_O_sequence(end, cap).passed:
            raise ValueError(f"endpoint {end} is not certified pure")
    undecided = []
    for beta in range(low[i] + 1, high[i]):
        mid = list(low)
        mid[i] = beta
        v = is_pure_O_sequence(mid, cap)
        if v.outcome is False:
            return Verdict(
                False,
                "icp_interval",
                counterexample={"low": low, "high": high, "index": i, "sequence": mid,
                                "decided_by": v.decided_by},
            )
        if v.outcome is None:
            undecided.append(mid)
    if undecided:
        return Verdict(None, "icp_interval", details={"undecided": undecided})
    return Verdict(True, "icp_interval", details={"checked": max(0, high[i] - low[i] - 1)})
