"""Exact longest k-modal subsequence computation.

The workhorse is a layered dynamic program over states
(position i, change count c <= k, last part direction d) for the
inc-first orientation; the dec-first orientation is obtained by running
the same DP on the value-flipped permutation (indices are preserved
under the flip, so witnesses carry over directly).

Per (c, d) layer the DP keeps two Fenwick prefix-maximum trees keyed by
value (one forward, one on flipped values), giving O(n k log n) time.
Brute-force oracles that enumerate all 2^n subsequences live alongside
for verification at desk scale.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from numba import njit

from .core import (
    Direction,
    EmptyPermutation,
    Permutation,
    TooLarge,
    Witness,
    flip,
    witness_from_indices,
)

BRUTE_MAX_N = 20
BRUTE_JOINT_MAX_N = 16


class SolveMode(Enum):
    INC_FIRST = "inc"
    DEC_FIRST = "dec"
    ANY = "any"


@dataclass(frozen=True)
class JointAnchor:
    """A position with achievable inc-first and dec-first ending lengths."""

    position: int
    inc_len: int
    dec_len: int

    @property
    def joint_len(self) -> int:
        return min(self.inc_len, self.dec_len)


# ---------------------------------------------------------------------------
# Fenwick prefix-max trees (value-indexed, argmax position carried along)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _fen_update(flen, fpos, idx, length, pos):
    size = flen.shape[0] - 1
    while idx <= size:
        if length > flen[idx] or (
            length == flen[idx] and length > 0 and (fpos[idx] == -1 or pos < fpos[idx])
        ):
            flen[idx] = length
            fpos[idx] = pos
        idx += idx & (-idx)


@njit(cache=True)
def _fen_query(flen, fpos, idx):
    # max length over value coordinates 1..idx; smallest position on ties
    best_l = 0
    best_p = -1
    while idx > 0:
        l = flen[idx]
        if l > best_l or (l == best_l and l > 0 and (best_p == -1 or fpos[idx] < best_p)):
            best_l = l
            best_p = fpos[idx]
        idx -= idx & (-idx)
    return best_l, best_p


# ---------------------------------------------------------------------------
# Core DP kernel (inc-first orientation)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _dp_full(values, k):
    """Inc-first k-modal DP with parent links.

    Returns L, ppos, pc, pd, each of shape (k+1, 2, n).
    L[c, d, i] is the longest inc-first subsequence ending at i with at
    most c direction changes whose last part has direction d
    (0 = increasing, 1 = decreasing).  L[0, 1, i] = 0 is the one invalid
    corner: a fresh element can only open an increasing first part.
    A state may also re-declare a trivial one-point last part of the
    opposite direction at the cost of one change (the closure step).
    """
    n = values.shape[0]
    K = k + 1
    L = np.zeros((K, 2, n), np.int32)
    ppos = np.full((K, 2, n), -1, np.int32)
    pc = np.full((K, 2, n), -1, np.int8)
    pd = np.full((K, 2, n), -1, np.int8)
    # fenwicks: [c, d, orient, coord]; orient 0 keyed by value, 1 by n+1-value
    flen = np.zeros((K, 2, 2, n + 1), np.int32)
    fpos = np.full((K, 2, 2, n + 1), -1, np.int32)

    for i in range(n):
        v = values[i]
        vr = n + 1 - v
        for c in range(K):
            # last direction increasing: predecessors with smaller value
            bl = 0
            bp = -1
            bc = -1
            bd = -1
            if v > 1:
                l1, p1 = _fen_query(flen[c, 0, 0], fpos[c, 0, 0], v - 1)
                if l1 > 0:
                    bl, bp, bc, bd = l1, p1, c, 0
                if c > 0:
                    l2, p2 = _fen_query(flen[c - 1, 1, 0], fpos[c - 1, 1, 0], v - 1)
                    if l2 > bl or (l2 == bl and l2 > 0 and p2 < bp):
                        bl, bp, bc, bd = l2, p2, c - 1, 1
            if bl > 0:
                L[c, 0, i] = bl + 1
                ppos[c, 0, i] = bp
                pc[c, 0, i] = bc
                pd[c, 0, i] = bd
            else:
                L[c, 0, i] = 1  # fresh singleton, trivially increasing

            # last direction decreasing: predecessors with larger value
            bl = 0
            bp = -1
            bc = -1
            bd = -1
            if vr > 1:
                l1, p1 = _fen_query(flen[c, 1, 1], fpos[c, 1, 1], vr - 1)
                if l1 > 0:
                    bl, bp, bc, bd = l1, p1, c, 1
                if c > 0:
                    l2, p2 = _fen_query(flen[c - 1, 0, 1], fpos[c - 1, 0, 1], vr - 1)
                    if l2 > bl or (l2 == bl and l2 > 0 and p2 < bp):
                        bl, bp, bc, bd = l2, p2, c - 1, 0
            if bl > 0:
                L[c, 1, i] = bl + 1
                ppos[c, 1, i] = bp
                pc[c, 1, i] = bc
                pd[c, 1, i] = bd
            # else: stays 0, a singleton cannot commit to a decreasing
            # last part without spending a change (handled by closure)

        # closure: budget monotonicity and trivial last-part re-declaration
        for c in range(1, K):
            for d in range(2):
                for o in range(2):
                    src = d if o == 0 else 1 - d
                    if L[c - 1, src, i] > L[c, d, i]:
                        L[c, d, i] = L[c - 1, src, i]
                        ppos[c, d, i] = ppos[c - 1, src, i]
                        pc[c, d, i] = pc[c - 1, src, i]
                        pd[c, d, i] = pd[c - 1, src, i]

        for c in range(K):
            for d in range(2):
                l = L[c, d, i]
                if l > 0:
                    _fen_update(flen[c, d, 0], fpos[c, d, 0], v, l, i)
                    _fen_update(flen[c, d, 1], fpos[c, d, 1], vr, l, i)

    return L, ppos, pc, pd


@njit(cache=True)
def _best_labels(L):
    K, _, n = L.shape
    out = np.zeros(n, np.int32)
    for i in range(n):
        b = 0
        for c in range(K):
            for d in range(2):
                if L[c, d, i] > b:
                    b = L[c, d, i]
        out[i] = b
    return out


@njit(cache=True)
def _flip_values(values):
    n = values.shape[0]
    out = np.empty(n, values.dtype)
    for i in range(n):
        out[i] = n + 1 - values[i]
    return out


@njit(cache=True)
def _batch_lengths(perms, k):
    """Max inc-first / dec-first k-modal lengths for each row of `perms`."""
    m, n = perms.shape
    inc = np.zeros(m, np.int32)
    dec = np.zeros(m, np.int32)
    for r in range(m):
        vals = perms[r].copy()
        Li, _, _, _ = _dp_full(vals, k)
        li = _best_labels(Li)
        Ld, _, _, _ = _dp_full(_flip_values(vals), k)
        ld = _best_labels(Ld)
        bi = 0
        bd = 0
        for i in range(n):
            if li[i] > bi:
                bi = li[i]
            if ld[i] > bd:
                bd = ld[i]
        inc[r] = bi
        dec[r] = bd
    return inc, dec


@njit(cache=True)
def _batch_minima(perms, k):
    """Minima over rows of: max inc label, max-min joint label, overall max.

    Returns (t1_min, t1_arg, t2_min, t2_arg, t3_min, t3_arg).
    """
    m, n = perms.shape
    t1_min = n + 1
    t2_min = n + 1
    t3_min = n + 1
    t1_arg = -1
    t2_arg = -1
    t3_arg = -1
    for r in range(m):
        vals = perms[r].copy()
        Li, _, _, _ = _dp_full(vals, k)
        li = _best_labels(Li)
        Ld, _, _, _ = _dp_full(_flip_values(vals), k)
        ld = _best_labels(Ld)
        t1 = 0
        t2 = 0
        t3 = 0
        for i in range(n):
            if li[i] > t1:
                t1 = li[i]
            if ld[i] > t3:
                t3 = ld[i]
            joint = li[i] if li[i] < ld[i] else ld[i]
            if joint > t2:
                t2 = joint
        if t1 > t3:
            t3 = t1
        if t1 < t1_min:
            t1_min = t1
            t1_arg = r
        if t2 < t2_min:
            t2_min = t2
            t2_arg = r
        if t3 < t3_min:
            t3_min = t3
            t3_arg = r
    return t1_min, t1_arg, t2_min, t2_arg, t3_min, t3_arg


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def _values_array(p: Permutation) -> np.ndarray:
    return np.asarray(p.values, dtype=np.int64)


def _effective_k(p: Permutation, k: int) -> int:
    # more than n-1 changes can never be used
    return min(k, max(p.n - 1, 0))


def state_labels(p: Permutation, k: int, first: Direction) -> np.ndarray:
    """Full DP table L[c, d, i] for the given first direction."""
    if p.n == 0:
        raise EmptyPermutation("state_labels requires a nonempty permutation")
    vals = _values_array(p)
    if first is Direction.DEC:
        vals = _flip_values(vals)
    L, _, _, _ = _dp_full(vals, _effective_k(p, k))
    return L


def kmodal_ending_label_array(p: Permutation, k: int, first: Direction) -> np.ndarray:
    """Per-position longest `first`-direction k-modal subsequence ending there."""
    return _best_labels(state_labels(p, k, first))


def _reconstruct(L, ppos, pc, pd) -> list[int]:
    K, _, n = L.shape
    best_len = 0
    bi = bc = bd = -1
    for i in range(n):
        for c in range(K):
            for d in range(2):
                if L[c, d, i] > best_len:
                    best_len = L[c, d, i]
                    bi, bc, bd = i, c, d
    chain = []
    i, c, d = bi, bc, bd
    while i != -1:
        chain.append(i)
        i, c, d = int(ppos[c, d, i]), int(pc[c, d, i]), int(pd[c, d, i])
    chain.reverse()
    return [i + 1 for i in chain]  # to 1-based


def _solve_one_direction(p: Permutation, k: int, first: Direction) -> Witness:
    vals = _values_array(p)
    if first is Direction.DEC:
        vals = _flip_values(vals)
    L, ppos, pc, pd = _dp_full(vals, _effective_k(p, k))
    indices = _reconstruct(L, ppos, pc, pd)
    return witness_from_indices(p, indices)


def longest_kmodal(p: Permutation, k: int, mode: SolveMode) -> Witness:
    """Maximum-length k-modal witness under `mode`.

    Mode Any returns the longer of the inc-first and dec-first optima
    (inc-first on ties).
    """
    if p.n == 0:
        raise EmptyPermutation("longest_kmodal requires a nonempty permutation")
    if k < 0:
        raise ValueError("k must be nonnegative")
    if mode is SolveMode.INC_FIRST:
        return _solve_one_direction(p, k, Direction.INC)
    if mode is SolveMode.DEC_FIRST:
        return _solve_one_direction(p, k, Direction.DEC)
    wi = _solve_one_direction(p, k, Direction.INC)
    wd = _solve_one_direction(p, k, Direction.DEC)
    return wi if wi.length >= wd.length else wd


def best_joint_anchor(p: Permutation, k: int) -> JointAnchor:
    """Position maximizing min(inc-first, dec-first) k-modal ending labels."""
    if p.n == 0:
        raise EmptyPermutation("best_joint_anchor requires a nonempty permutation")
    inc = kmodal_ending_label_array(p, k, Direction.INC)
    dec = kmodal_ending_label_array(p, k, Direction.DEC)
    joint = np.minimum(inc, dec)
    pos = int(np.argmax(joint))
    return JointAnchor(pos + 1, int(inc[pos]), int(dec[pos]))


# ---------------------------------------------------------------------------
# Brute-force oracles (independent of the DP path)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=32)
def _mask_indices(n: int) -> list[tuple[int, ...]]:
    out = [()] * (1 << n)
    for mask in range(1, 1 << n):
        out[mask] = tuple(i for i in range(n) if mask >> i & 1)
    return out


def _subseq_change_counts(vals: list[int]) -> tuple[int, int]:
    """(inc-first, dec-first) minimal change counts of a distinct sequence."""
    if len(vals) <= 1:
        return 0, 0
    prev_sign = 1 if vals[1] > vals[0] else -1
    alternations = 0
    for a, b in zip(vals[1:], vals[2:]):
        sign = 1 if b > a else -1
        if sign != prev_sign:
            alternations += 1
        prev_sign = sign
    first_sign = 1 if vals[1] > vals[0] else -1
    inc_first = alternations + (1 if first_sign < 0 else 0)
    dec_first = alternations + (1 if first_sign > 0 else 0)
    return inc_first, dec_first


def brute_mode_table(p: Permutation, kmax: int) -> dict[SolveMode, list[int]]:
    """For each mode, best[k] for k in 0..kmax, by full 2^n enumeration."""
    n = p.n
    vals = p.values
    inc_best = [0] * (kmax + 1)
    dec_best = [0] * (kmax + 1)
    for idx in _mask_indices(n)[1:]:
        sub = [vals[i] for i in idx]
        inc_c, dec_c = _subseq_change_counts(sub)
        m = len(sub)
        if inc_c <= kmax and m > inc_best[inc_c]:
            inc_best[inc_c] = m
        if dec_c <= kmax and m > dec_best[dec_c]:
            dec_best[dec_c] = m
    for k in range(1, kmax + 1):  # best at <= k changes
        inc_best[k] = max(inc_best[k], inc_best[k - 1])
        dec_best[k] = max(dec_best[k], dec_best[k - 1])
    any_best = [max(a, b) for a, b in zip(inc_best, dec_best)]
    return {
        SolveMode.INC_FIRST: inc_best,
        SolveMode.DEC_FIRST: dec_best,
        SolveMode.ANY: any_best,
    }


def brute_longest_kmodal(p: Permutation, k: int, mode: SolveMode) -> int:
    """Exact maximum length by enumerating all 2^n subsequences."""
    if p.n > BRUTE_MAX_N:
        raise TooLarge(f"brute oracle limited to n <= {BRUTE_MAX_N}, got {p.n}")
    if p.n == 0:
        raise EmptyPermutation("brute_longest_kmodal requires a nonempty permutation")
    kk = min(k, p.n)
    return brute_mode_table(p, kk)[mode][kk]


def brute_ending_label_arrays(p: Permutation, k: int) -> tuple[list[int], list[int]]:
    """(inc-first, dec-first) k-modal ending labels per position, brute force."""
    if p.n > BRUTE_JOINT_MAX_N:
        raise TooLarge(f"brute oracle limited to n <= {BRUTE_JOINT_MAX_N}, got {p.n}")
    n = p.n
    vals = p.values
    inc = [0] * n
    dec = [0] * n
    for idx in _mask_indices(n)[1:]:
        sub = [vals[i] for i in idx]
        inc_c, dec_c = _subseq_change_counts(sub)
        last = idx[-1]
        m = len(sub)
        if inc_c <= k and m > inc[last]:
            inc[last] = m
        if dec_c <= k and m > dec[last]:
            dec[last] = m
    return inc, dec


def brute_best_joint(p: Permutation, k: int) -> JointAnchor:
    """Exact maximizer of min(inc-first, dec-first) ending labels."""
    if p.n == 0:
        raise EmptyPermutation("brute_best_joint requires a nonempty permutation")
    inc, dec = brute_ending_label_arrays(p, k)
    best = -1
    pos = 0
    for i in range(p.n):
        joint = min(inc[i], dec[i])
        if joint > best:
            best = joint
            pos = i
    return JointAnchor(pos + 1, inc[pos], dec[pos])
