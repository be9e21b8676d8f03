"""Theorem checkers, exhaustive minima, tightness reports, and sweeps.

The three checks:
  T1: longest inc-first k-modal length against sqrt(2kn)
  T2: best joint anchor min(inc, dec) ending length against sqrt(2kn)
  T3: longest k-modal length, either first direction, against sqrt((2k+1)n)

The integer `slack` parameter operationalizes the theorems'
"up to some constants": a check passes when
achieved >= ceil(target) - slack.
"""
from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import KmodalError, Permutation, TooLarge, Witness, make_permutation
from .generators import Family, generate
from .solver import (
    JointAnchor,
    SolveMode,
    _batch_minima,
    best_joint_anchor,
    longest_kmodal,
)

MINIMIZE_GUARD_N = 9
DEFAULT_SLACK = 1
_CEIL_EPS = 1e-9


class ConfigError(KmodalError, ValueError):
    """Malformed sweep configuration."""


class Theorem(Enum):
    T1 = "t1"
    T2 = "t2"
    T3 = "t3"


@dataclass(frozen=True)
class BoundReport:
    theorem: Theorem
    n: int
    k: int
    achieved_N: int
    target: float
    slack: int
    passed: bool
    witness: Witness | JointAnchor


@dataclass(frozen=True)
class TightnessReport:
    family: Family
    k: int
    t: int
    n: int
    achieved_N: int
    paper_cap: int
    ratio: float
    passed: bool


def bound_target(theorem: Theorem, n: int, k: int) -> float:
    if theorem is Theorem.T3:
        return math.sqrt((2 * k + 1) * n)
    return math.sqrt(2 * k * n)


def ceil_target(target: float) -> int:
    # epsilon guard against representation error at perfect squares
    return math.ceil(target - _CEIL_EPS)


def check_theorem(
    p: Permutation, k: int, theorem: Theorem, slack: int = DEFAULT_SLACK
) -> BoundReport:
    if k < 1:
        raise ValueError("theorem checks require k >= 1")
    witness: Witness | JointAnchor
    if theorem is Theorem.T1:
        witness = longest_kmodal(p, k, SolveMode.INC_FIRST)
        achieved = witness.length
    elif theorem is Theorem.T2:
        witness = best_joint_anchor(p, k)
        achieved = witness.joint_len
    else:
        witness = longest_kmodal(p, k, SolveMode.ANY)
        achieved = witness.length
    target = bound_target(theorem, p.n, k)
    passed = achieved >= ceil_target(target) - slack
    return BoundReport(theorem, p.n, k, achieved, target, slack, passed, witness)


def _all_perms_array(n: int) -> np.ndarray:
    arr = np.empty((math.factorial(n), n), dtype=np.int64)
    for r, perm in enumerate(itertools.permutations(range(1, n + 1))):
        arr[r] = perm
    return arr


def min_over_all_perms(n: int, k: int, theorem: Theorem) -> tuple[int, Permutation]:
    """Exact minimum of achieved_N over all n! permutations, with an argmin."""
    if n > MINIMIZE_GUARD_N:
        raise TooLarge(f"minimize limited to n <= {MINIMIZE_GUARD_N}, got {n}")
    if n < 1:
        raise ValueError("n must be positive")
    perms = _all_perms_array(n)
    kk = min(k, n - 1) if n > 1 else 0
    t1m, t1a, t2m, t2a, t3m, t3a = _batch_minima(perms, kk)
    picks = {Theorem.T1: (t1m, t1a), Theorem.T2: (t2m, t2a), Theorem.T3: (t3m, t3a)}
    value, arg = picks[theorem]
    return int(value), make_permutation(perms[arg].tolist())


def minima_table(n: int, k: int) -> dict[Theorem, tuple[int, Permutation]]:
    """All three minima in one exhaustive pass."""
    if n > MINIMIZE_GUARD_N:
        raise TooLarge(f"minimize limited to n <= {MINIMIZE_GUARD_N}, got {n}")
    perms = _all_perms_array(n)
    kk = min(k, n - 1) if n > 1 else 0
    t1m, t1a, t2m, t2a, t3m, t3a = _batch_minima(perms, kk)
    return {
        Theorem.T1: (int(t1m), make_permutation(perms[t1a].tolist())),
        Theorem.T2: (int(t2m), make_permutation(perms[t2a].tolist())),
        Theorem.T3: (int(t3m), make_permutation(perms[t3a].tolist())),
    }


def tightness_report(family: Family, k: int, t: int) -> TightnessReport:
    p = generate(family, k, t)
    if family is Family.STRONG:
        achieved = longest_kmodal(p, k, SolveMode.INC_FIRST).length
        cap = k * t
        coeff = 2 * k
    else:
        achieved = longest_kmodal(p, k, SolveMode.ANY).length
        cap = (2 * k + 1) * t
        coeff = 2 * k + 1
    ratio = achieved / math.sqrt(coeff * p.n)
    return TightnessReport(family, k, t, p.n, achieved, cap, ratio, achieved <= cap)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

CSV_HEADER = "theorem,family,seed,n,k,t,mode,achieved_N,target,slack,pass"

_MODE_NAME = {Theorem.T1: "inc", Theorem.T2: "joint", Theorem.T3: "any"}


@dataclass(frozen=True)
class SweepConfig:
    """Either a random sweep over (k, n) cells or a family sweep over (k, t).

    Per-sample randomness derives only from (base_seed, cell index,
    sample index), so serial and parallel execution agree byte for byte.
    """

    theorems: tuple[Theorem, ...] = (Theorem.T1, Theorem.T2, Theorem.T3)
    k_values: tuple[int, ...] = ()
    n_values: tuple[int, ...] | None = None
    family: Family | None = None
    t_values: tuple[int, ...] | None = None
    samples: int = 1
    base_seed: int = 0
    slack: int = DEFAULT_SLACK

    def validate(self) -> None:
        if not self.k_values or any(k < 1 for k in self.k_values):
            raise ConfigError("k_values must be a nonempty tuple of k >= 1")
        random_sweep = self.n_values is not None
        family_sweep = self.family is not None or self.t_values is not None
        if random_sweep == family_sweep:
            raise ConfigError("exactly one of n_values or (family, t_values) required")
        if random_sweep:
            if not self.n_values or any(n < 1 for n in self.n_values):
                raise ConfigError("n_values must be a nonempty tuple of n >= 1")
            if not self.theorems:
                raise ConfigError("at least one theorem required")
            if self.samples < 1:
                raise ConfigError("samples must be >= 1")
        else:
            if self.family is None or not self.t_values or any(t < 1 for t in self.t_values):
                raise ConfigError("family sweeps need a family and t_values >= 1")


def _sample_seed(base_seed: int, cell_index: int, sample_index: int) -> int:
    ss = np.random.SeedSequence((base_seed, cell_index, sample_index))
    return int(ss.generate_state(1)[0])


def _random_permutation(seed: int, n: int) -> Permutation:
    rng = np.random.default_rng(seed)
    vals = rng.permutation(n) + 1
    return make_permutation(vals.tolist())


def _random_cell_rows(cfg: SweepConfig, cell_index: int, cell) -> list[str]:
    theorem, k, n = cell
    rows = []
    for s in range(cfg.samples):
        seed = _sample_seed(cfg.base_seed, cell_index, s)
        p = _random_permutation(seed, n)
        report = check_theorem(p, k, theorem, cfg.slack)
        rows.append(
            f"{theorem.value},,{seed},{n},{k},,{_MODE_NAME[theorem]},"
            f"{report.achieved_N},{report.target:.6f},{cfg.slack},"
            f"{str(report.passed).lower()}"
        )
    return rows


def _family_cell_rows(cfg: SweepConfig, cell_index: int, cell) -> list[str]:
    k, t = cell
    report = tightness_report(cfg.family, k, t)
    mode = "inc" if cfg.family is Family.STRONG else "any"
    return [
        f",{cfg.family.value},,{report.n},{k},{t},{mode},"
        f"{report.achieved_N},{report.paper_cap:.6f},,"
        f"{str(report.passed).lower()}"
    ]


def _worker_count() -> int:
    raw = os.environ.get("KMODAL_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def sweep(cfg: SweepConfig, parallel: bool = False) -> list[str]:
    """CSV rows (header first), ordered by (cell index, sample index)."""
    cfg.validate()
    if cfg.n_values is not None:
        cells = list(itertools.product(cfg.theorems, cfg.k_values, cfg.n_values))
        runner = _random_cell_rows
    else:
        cells = list(itertools.product(cfg.k_values, cfg.t_values))
        runner = _family_cell_rows

    rows = [CSV_HEADER]
    if parallel:
        with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
            futures = [
                pool.submit(runner, cfg, idx, cell) for idx, cell in enumerate(cells)
            ]
            for fut in futures:
                rows.extend(fut.result())
    else:
        for idx, cell in enumerate(cells):
            rows.extend(runner(cfg, idx, cell))
    return rows
