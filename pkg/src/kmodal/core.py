"""Permutation and modality fundamentals.

Positions are 1-based throughout, matching the usual combinatorial
convention for permutations of [n].  All objects are immutable; every
operation here is a pure function.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence


class KmodalError(Exception):
    """Base class for all package errors."""


class NotAPermutation(KmodalError, ValueError):
    """Input is not a permutation of 1..n."""


class InvalidPositions(KmodalError, ValueError):
    """Position list is out of range or not strictly increasing."""


class DuplicateValues(KmodalError, ValueError):
    """Sequence contains repeated values where distinctness is required."""


class EmptyPermutation(KmodalError, ValueError):
    """Operation requires a nonempty permutation."""


class TooLarge(KmodalError, ValueError):
    """Input exceeds the guard size of an exhaustive operation."""


class Direction(Enum):
    INC = "inc"
    DEC = "dec"

    def flipped(self) -> "Direction":
        return Direction.DEC if self is Direction.INC else Direction.INC


class FirstDirection(Enum):
    """First direction of a sequence: Inc, Dec, or Both (length <= 1)."""

    INC = "inc"
    DEC = "dec"
    BOTH = "both"


@dataclass(frozen=True)
class Permutation:
    """A bijective sequence on {1..n}, stored as a tuple of values."""

    values: tuple[int, ...]

    def __post_init__(self):
        n = len(self.values)
        seen = [False] * (n + 1)
        for v in self.values:
            if not isinstance(v, int) or v < 1 or v > n or seen[v]:
                raise NotAPermutation(
                    f"not a permutation of 1..{n}: {self.values!r}"
                )
            seen[v] = True

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, pos: int) -> int:
        """Value at 1-based position `pos`."""
        if not 1 <= pos <= len(self.values):
            raise InvalidPositions(f"position {pos} out of range 1..{len(self.values)}")
        return self.values[pos - 1]


@dataclass(frozen=True)
class ModalityProfile:
    """Minimal direction-change counts of a distinct-valued sequence.

    `min_changes` is the plain alternation count of consecutive
    differences; the inc-first / dec-first counts add one change when
    the sequence starts the "wrong" way (the leading element then forms
    a trivial one-point first part).
    """

    min_changes: int
    min_changes_inc_first: int
    min_changes_dec_first: int
    first_direction: FirstDirection


@dataclass(frozen=True)
class Witness:
    """A concrete subsequence (1-based indices) with its modality profile."""

    indices: tuple[int, ...]
    values: tuple[int, ...]
    profile: ModalityProfile

    def __post_init__(self):
        if list(self.indices) != sorted(set(self.indices)):
            raise InvalidPositions("witness indices must be strictly increasing")
        if len(self.indices) != len(self.values):
            raise InvalidPositions("witness indices/values length mismatch")

    @property
    def length(self) -> int:
        return len(self.indices)


def make_permutation(values: Iterable[int], allow_empty: bool = False) -> Permutation:
    """Validate `values` as a permutation of 1..n.

    Raises NotAPermutation on duplicates, out-of-range entries, or an
    empty input unless `allow_empty` is set.
    """
    vals = tuple(int(v) for v in values)
    if not vals and not allow_empty:
        raise NotAPermutation("empty permutation not allowed")
    return Permutation(vals)


def flip(p: Permutation) -> Permutation:
    """Map each value a_i to n+1-a_i.  An involution."""
    n = p.n
    return Permutation(tuple(n + 1 - v for v in p.values))


def restrict(p: Permutation, positions: Sequence[int]) -> Permutation:
    """Order-preserving relabeling of the subsequence at `positions`.

    The output is a permutation of 1..len(positions) with the same
    pairwise comparisons as the original subsequence.
    """
    positions = tuple(positions)
    if list(positions) != sorted(set(positions)):
        raise InvalidPositions("positions must be strictly increasing")
    if positions and not (1 <= positions[0] and positions[-1] <= p.n):
        raise InvalidPositions(f"positions out of range 1..{p.n}")
    sub = [p.values[i - 1] for i in positions]
    rank = {v: r for r, v in enumerate(sorted(sub), start=1)}
    return Permutation(tuple(rank[v] for v in sub))


def modality(values: Sequence[int]) -> ModalityProfile:
    """Classify a distinct-valued sequence's modality.

    Since values are distinct, the sign pattern of consecutive
    differences is unambiguous and the minimal number of direction
    changes equals the alternation count; no search is needed.
    """
    vals = list(values)
    if len(set(vals)) != len(vals):
        raise DuplicateValues(f"values are not pairwise distinct: {vals!r}")
    if len(vals) <= 1:
        return ModalityProfile(0, 0, 0, FirstDirection.BOTH)

    signs = [1 if b > a else -1 for a, b in zip(vals, vals[1:])]
    alternations = sum(1 for s, t in zip(signs, signs[1:]) if s != t)
    inc_first = alternations + (1 if signs[0] < 0 else 0)
    dec_first = alternations + (1 if signs[0] > 0 else 0)
    first = FirstDirection.INC if signs[0] > 0 else FirstDirection.DEC
    return ModalityProfile(alternations, inc_first, dec_first, first)


def witness_from_indices(p: Permutation, indices: Sequence[int]) -> Witness:
    """Build a Witness for the subsequence of `p` at 1-based `indices`."""
    idx = tuple(indices)
    if idx and not (1 <= idx[0] and idx[-1] <= p.n):
        raise InvalidPositions(f"indices out of range 1..{p.n}")
    vals = tuple(p.values[i - 1] for i in idx)
    return Witness(idx, vals, modality(vals))


def parse_permutation(text: str) -> Permutation:
    """Parse the one-line text format: whitespace- or comma-separated integers."""
    tokens = text.replace(",", " ").split()
    try:
        vals = [int(t) for t in tokens]
    except ValueError as exc:
        raise NotAPermutation(f"unparseable permutation text: {text!r}") from exc
    return make_permutation(vals)


def format_permutation(p: Permutation) -> str:
    return " ".join(str(v) for v in p.values)
