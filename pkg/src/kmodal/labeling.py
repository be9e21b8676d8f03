"""Per-element label pairs (x, y) and injectivity of the pair map.

Monotone (budget-0) labels are computed here with a small Fenwick
prefix-max over values, independently of the solver DP; k-modal ending
labels are re-exported from the solver so there is a single source of
truth for the heavy case.  Starting-at labels come from the
position-reversed permutation: reversing a subsequence flips the
direction of every part and swaps first/last, so a first-direction-d
subsequence starting at position i corresponds to a subsequence ending
at position n+1-i whose last part has direction flipped(d).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import Direction, Permutation
from . import solver


class Anchor(Enum):
    ENDING_AT = "ending"
    STARTING_AT = "starting"


@dataclass(frozen=True)
class AxisSpec:
    direction_first: Direction
    modal_budget: int
    anchor: Anchor


@dataclass(frozen=True)
class LabelScheme:
    x_spec: AxisSpec
    y_spec: AxisSpec


@dataclass(frozen=True)
class LabelSet:
    scheme: LabelScheme
    pairs: tuple[tuple[int, int], ...]


def theorem1_scheme(k: int) -> LabelScheme:
    """x = plain increasing ending label, y = dec-first k-modal starting label."""
    return LabelScheme(
        AxisSpec(Direction.INC, 0, Anchor.ENDING_AT),
        AxisSpec(Direction.DEC, k, Anchor.STARTING_AT),
    )


def theorem2_scheme(k: int) -> LabelScheme:
    """Both ending labels: inc-first and dec-first k-modal."""
    return LabelScheme(
        AxisSpec(Direction.INC, k, Anchor.ENDING_AT),
        AxisSpec(Direction.DEC, k, Anchor.ENDING_AT),
    )


def theorem3_scheme(k: int) -> LabelScheme:
    """Combined labels; coincides with the ending/ending scheme at budget k."""
    return theorem2_scheme(k)


def _monotone_ending_labels(values: tuple[int, ...], dir: Direction) -> list[int]:
    """Longest monotone subsequence ending at each position, Fenwick prefix-max."""
    n = len(values)
    tree = [0] * (n + 1)

    def query(idx: int) -> int:
        best = 0
        while idx > 0:
            if tree[idx] > best:
                best = tree[idx]
            idx -= idx & (-idx)
        return best

    def update(idx: int, val: int) -> None:
        while idx <= n:
            if val > tree[idx]:
                tree[idx] = val
            idx += idx & (-idx)

    labels = [0] * n
    for i, v in enumerate(values):
        coord = v if dir is Direction.INC else n + 1 - v
        labels[i] = query(coord - 1) + 1
        update(coord, labels[i])
    return labels


def directional_labels(p: Permutation, dir: Direction, anchor: Anchor) -> list[int]:
    """Length of the longest `dir` monotone subsequence anchored at each position."""
    if anchor is Anchor.ENDING_AT:
        return _monotone_ending_labels(p.values, dir)
    # starting-at: reverse positions; monotone direction flips under reversal
    rev = _monotone_ending_labels(tuple(reversed(p.values)), dir.flipped())
    return list(reversed(rev))


def kmodal_ending_labels(p: Permutation, k: int, first: Direction) -> list[int]:
    """Longest first-direction-`first` k-modal subsequence ending at each position."""
    return [int(v) for v in solver.kmodal_ending_label_array(p, k, first)]


def kmodal_starting_labels(p: Permutation, k: int, first: Direction) -> list[int]:
    """Longest first-direction-`first` k-modal subsequence starting at each position."""
    rev = Permutation(tuple(reversed(p.values)))
    target_d = 0 if first.flipped() is Direction.INC else 1
    best = np.zeros(p.n, np.int64)
    for dp_first in (Direction.INC, Direction.DEC):
        L = solver.state_labels(rev, k, dp_first)
        # states of the flipped-value DP describe flipped part directions
        d = target_d if dp_first is Direction.INC else 1 - target_d
        layer = L[:, d, :].max(axis=0)
        np.maximum(best, layer, out=best)
    return [int(v) for v in reversed(best)]


def _axis_labels(p: Permutation, spec: AxisSpec) -> list[int]:
    if spec.anchor is Anchor.ENDING_AT:
        if spec.modal_budget == 0:
            return directional_labels(p, spec.direction_first, Anchor.ENDING_AT)
        return kmodal_ending_labels(p, spec.modal_budget, spec.direction_first)
    if spec.modal_budget == 0:
        return directional_labels(p, spec.direction_first, Anchor.STARTING_AT)
    return kmodal_starting_labels(p, spec.modal_budget, spec.direction_first)


def label_pairs(p: Permutation, scheme: LabelScheme) -> LabelSet:
    xs = _axis_labels(p, scheme.x_spec)
    ys = _axis_labels(p, scheme.y_spec)
    return LabelSet(scheme, tuple(zip(xs, ys)))


def injectivity_check(ls: LabelSet) -> tuple[int, int] | None:
    """None if all pairs are distinct, else the lexicographically first
    colliding (i, j) position pair (1-based, i < j)."""
    first_seen: dict[tuple[int, int], int] = {}
    collisions: list[tuple[int, int]] = []
    for j, pair in enumerate(ls.pairs, start=1):
        if pair in first_seen:
            collisions.append((first_seen[pair], j))
        else:
            first_seen[pair] = j
    return min(collisions) if collisions else None
