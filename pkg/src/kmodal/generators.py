"""Extremal permutation families built from descending blocks.

Both families concatenate contiguous strictly decreasing blocks in which
every element of a later block exceeds every element of an earlier one.
`strong_make` caps inc-first k-modal length at kt; `perm_make` caps
k-modal length (either first direction) at (2k+1)t.
"""
from __future__ import annotations

from enum import Enum

from .core import KmodalError, Permutation, make_permutation


class InvalidParams(KmodalError, ValueError):
    """Generator parameters out of range."""


class Family(Enum):
    STRONG = "strong"
    PERM = "perm"


def _check_params(k: int, t: int) -> None:
    if k < 1 or t < 1:
        raise InvalidParams(f"need k >= 1 and t >= 1, got k={k}, t={t}")


def _blocks(lengths: list[int]) -> Permutation:
    if not lengths:
        # k=1, t=1 yields zero blocks; an empty output cannot validate
        raise InvalidParams("parameters produce an empty permutation")
    values: list[int] = []
    count = 1
    for length in lengths:
        values.extend(reversed(range(count, count + length)))
        count += length
    return make_permutation(values)


def strong_block_lengths(k: int, t: int) -> list[int]:
    """Descending-block profile of strong_make."""
    _check_params(k, t)
    lengths = [t] * (t * (k // 2))
    if k % 2 == 1:
        # the appended triangle: blocks t-1, t-2, ..., 1
        lengths.extend(i for i in reversed(range(t)) if i > 0)
    return lengths


def perm_block_lengths(k: int, t: int) -> list[int]:
    """Descending-block profile of perm_make: t..2t-1, (k-1)t times 2t, 2t-1..t."""
    _check_params(k, t)
    lengths = [t + i for i in range(t)]
    lengths.extend([2 * t] * ((k - 1) * t))
    lengths.extend(t + i for i in reversed(range(t)))
    return lengths


def strong_make(k: int, t: int) -> Permutation:
    """For even k: kt/2 descending blocks of length t; for odd k the
    (k-1)t/2 blocks are followed by a triangle of blocks t-1 down to 1."""
    return _blocks(strong_block_lengths(k, t))


def perm_make(k: int, t: int) -> Permutation:
    """Descending blocks of lengths t, ..., 2t-1, then (k-1)t blocks of
    length 2t, then 2t-1, ..., t back down (size (2k+1)t^2 - t)."""
    return _blocks(perm_block_lengths(k, t))


def predicted_size(family: Family, k: int, t: int) -> int:
    """Closed-form length of the generated permutation."""
    _check_params(k, t)
    if family is Family.STRONG:
        if k % 2 == 0:
            return k * t * t // 2
        return (k - 1) * t * t // 2 + t * (t - 1) // 2
    return (2 * k + 1) * t * t - t


def generate(family: Family, k: int, t: int) -> Permutation:
    if family is Family.STRONG:
        return strong_make(k, t)
    return perm_make(k, t)
