"""Small-set helpers on int bitmasks.

Element ``i`` (1-based) of a ground set lives at bit ``i - 1``.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator

MAX_GROUND = 64


def mask_of(elements: Iterable[int]) -> int:
    value = 0
    for e in elements:
        value |= 1 << (e - 1)
    return value


def elements_of(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the single-bit masks contained in ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def full_mask(n: int) -> int:
    return (1 << n) - 1


def lowest_element(mask: int) -> int:
    return (mask & -mask).bit_length()
