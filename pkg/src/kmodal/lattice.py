"""Lattice combinatorics on [N]^2: the condition, triangle T, and shifting.

For a point set S and a grid cell (a, b):
  A(a,b) = points of S with x = a and y <= b
  B(a,b) = points of S with y = b and x <= a
The condition is triggered at (a, b) when |A(a,b)| > N+1-a and
|B(a,b)| > N+1-b simultaneously.  The triangle T = {x + y <= N+1} is
the extremal condition-free configuration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import KmodalError, TooLarge

MAXFREE_GUARD_N = 5

Point = tuple[int, int]


class InvalidPointSet(KmodalError, ValueError):
    """Points outside [N]^2 or duplicated."""


class ConditionTriggered(KmodalError, ValueError):
    """Operation requires a condition-free point set."""


@dataclass(frozen=True)
class LatticePointSet:
    N: int
    points: frozenset[Point]

    def __post_init__(self):
        if self.N < 1:
            raise InvalidPointSet(f"grid side must be positive, got {self.N}")
        for x, y in self.points:
            if not (1 <= x <= self.N and 1 <= y <= self.N):
                raise InvalidPointSet(f"point ({x},{y}) outside [{self.N}]^2")

    @classmethod
    def of(cls, N: int, points: Iterable[Point]) -> "LatticePointSet":
        return cls(N, frozenset((int(x), int(y)) for x, y in points))


@dataclass(frozen=True)
class ConditionScan:
    """First (lexicographic) trigger cell, or maxima scanned when clean."""

    triggered_at: Point | None
    a_count: int
    b_count: int

    @property
    def triggered(self) -> bool:
        return self.triggered_at is not None


@dataclass(frozen=True)
class ShiftTrace:
    C: frozenset[Point]
    step1_moves: tuple[tuple[Point, Point], ...]
    step2_moves: tuple[tuple[Point, Point], ...]
    result: LatticePointSet | None
    success: bool
    failed_point: Point | None = None

    def moves(self) -> tuple[tuple[Point, Point], ...]:
        return self.step1_moves + self.step2_moves


def _count_grids(s: LatticePointSet) -> tuple[list[list[int]], list[list[int]]]:
    """acount[a][b] = |A(a,b)|, bcount[b][a] = |B(a,b)| (1-based, cumulative)."""
    N = s.N
    acount = [[0] * (N + 1) for _ in range(N + 1)]
    bcount = [[0] * (N + 1) for _ in range(N + 1)]
    for x, y in s.points:
        acount[x][y] += 1
        bcount[y][x] += 1
    for a in range(1, N + 1):
        for b in range(2, N + 1):
            acount[a][b] += acount[a][b - 1]
    for b in range(1, N + 1):
        for a in range(2, N + 1):
            bcount[b][a] += bcount[b][a - 1]
    return acount, bcount


def condition_scan(s: LatticePointSet) -> ConditionScan:
    """Lexicographically smallest trigger cell of the condition, if any."""
    N = s.N
    acount, bcount = _count_grids(s)
    max_a = 0
    max_b = 0
    for a in range(1, N + 1):
        for b in range(1, N + 1):
            ca = acount[a][b]
            cb = bcount[b][a]
            if ca > max_a:
                max_a = ca
            if cb > max_b:
                max_b = cb
            if ca > N + 1 - a and cb > N + 1 - b:
                return ConditionScan((a, b), ca, cb)
    return ConditionScan(None, max_a, max_b)


def triangle_points(N: int) -> LatticePointSet:
    """T = {(x, y) in [N]^2 : x + y <= N+1}; |T| = N(N+1)/2."""
    if N < 1:
        raise InvalidPointSet(f"N must be positive, got {N}")
    pts = {(x, y) for x in range(1, N + 1) for y in range(1, N + 2 - x)}
    return LatticePointSet.of(N, pts)


def max_condition_free(N: int) -> tuple[int, LatticePointSet]:
    """Maximum size of a condition-free subset of [N]^2, with one maximizer.

    Depth-first subset search; a triggered partial set prunes all its
    supersets (the condition is monotone under point insertion).  Cells
    are ordered triangle-first so the N(N+1)/2 incumbent is found
    immediately and the count bound prunes aggressively.
    """
    if N < 1:
        raise InvalidPointSet(f"N must be positive, got {N}")
    if N > MAXFREE_GUARD_N:
        raise TooLarge(f"exhaustive search limited to N <= {MAXFREE_GUARD_N}")

    cells = sorted(
        ((x, y) for x in range(1, N + 1) for y in range(1, N + 1)),
        key=lambda p: (p[0] + p[1], p),
    )
    acount = [[0] * (N + 1) for _ in range(N + 1)]  # acount[a][b] cumulative in b
    bcount = [[0] * (N + 1) for _ in range(N + 1)]
    chosen: list[Point] = []
    best_size = 0
    best_set: list[Point] = []

    def add_point(x: int, y: int) -> bool:
        """Insert and report whether the condition becomes triggered."""
        for b in range(y, N + 1):
            acount[x][b] += 1
        for a in range(x, N + 1):
            bcount[y][a] += 1
        # only cells whose counts changed can newly trigger
        for b in range(y, N + 1):
            if acount[x][b] > N + 1 - x and bcount[b][x] > N + 1 - b:
                return True
        for a in range(x, N + 1):
            if bcount[y][a] > N + 1 - y and acount[a][y] > N + 1 - a:
                return True
        return False

    def remove_point(x: int, y: int) -> None:
        for b in range(y, N + 1):
            acount[x][b] -= 1
        for a in range(x, N + 1):
            bcount[y][a] -= 1

    def dfs(idx: int) -> None:
        nonlocal best_size, best_set
        if len(chosen) > best_size:
            best_size = len(chosen)
            best_set = list(chosen)
        if idx == len(cells) or len(chosen) + len(cells) - idx <= best_size:
            return
        x, y = cells[idx]
        triggered = add_point(x, y)
        if not triggered:
            chosen.append((x, y))
            dfs(idx + 1)
            chosen.pop()
        remove_point(x, y)
        dfs(idx + 1)

    dfs(0)
    return best_size, LatticePointSet.of(N, best_set)


def shift_into_triangle(s: LatticePointSet) -> ShiftTrace:
    """Literal two-step shifting procedure.

    Step 1 takes every point dominated-covered by some member of C
    (the points whose |A| count overflows) and relocates it to the
    leftmost unoccupied cell of its own row inside T, never moving
    rightward; Step 2 drops every remaining point to the lowest
    unoccupied cell of its own column inside T.  Points already inside T
    whose cell is free stay put.  Processing is row-major.  A point with
    no admissible target yields a failure trace naming it; this reports
    that the literal reading broke, not that the cardinality claim is
    false.
    """
    scan = condition_scan(s)
    if scan.triggered:
        raise ConditionTriggered(
            f"input triggers the condition at {scan.triggered_at}"
        )
    N = s.N
    acount, _ = _count_grids(s)
    C = frozenset(p for p in s.points if acount[p[0]][p[1]] > N + 1 - p[0])

    step1 = sorted(
        (p for p in s.points if any(p[0] <= a and p[1] >= b for a, b in C)),
        key=lambda p: (p[1], p[0]),
    )
    step2 = sorted((p for p in s.points if p not in set(step1)), key=lambda p: (p[1], p[0]))

    occupied: set[Point] = set()
    moves1: list[tuple[Point, Point]] = []
    moves2: list[tuple[Point, Point]] = []

    def inside_t(x: int, y: int) -> bool:
        return x + y <= N + 1

    for x, y in step1:
        if inside_t(x, y) and (x, y) not in occupied:
            occupied.add((x, y))
            moves1.append(((x, y), (x, y)))
            continue
        target = None
        for xx in range(1, min(x, N + 1 - y) + 1):
            if (xx, y) not in occupied:
                target = (xx, y)
                break
        if target is None:
            return ShiftTrace(C, tuple(moves1), tuple(moves2), None, False, (x, y))
        occupied.add(target)
        moves1.append(((x, y), target))

    for x, y in step2:
        if inside_t(x, y) and (x, y) not in occupied:
            occupied.add((x, y))
            moves2.append(((x, y), (x, y)))
            continue
        target = None
        for yy in range(1, min(y, N + 1 - x) + 1):
            if (x, yy) not in occupied:
                target = (x, yy)
                break
        if target is None:
            return ShiftTrace(C, tuple(moves1), tuple(moves2), None, False, (x, y))
        occupied.add(target)
        moves2.append(((x, y), target))

    result = LatticePointSet.of(N, occupied)
    return ShiftTrace(C, tuple(moves1), tuple(moves2), result, True)
