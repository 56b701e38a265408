"""Timing harness comparing the recurrence pipeline with the dense baseline."""

from __future__ import annotations

import gc
import random
import statistics
import time
from dataclasses import dataclass, field
from functools import partial

from .fastalg import eval_layout, fast_charpoly, make_plan
from .ff import FieldCtx, make_field
from .linmap import LinearizedPoly, charpoly_direct


@dataclass(frozen=True)
class BenchRecord:
    p: int
    e: int
    m: int
    r: int
    l: int
    n: int
    algo: str
    order: int | None
    s: int | None
    wall_ns: int | None  # None: skipped or over the cap


@dataclass
class BenchGrid:
    primes: list = field(default_factory=lambda: [2])
    exps: list = field(default_factory=lambda: [1])
    ms: list = field(default_factory=lambda: [1])
    rs: list = field(default_factory=lambda: [2])
    ells: list = field(default_factory=lambda: [2**k for k in range(7, 14)])
    seed: int = 0
    cap: float = 30.0
    repeat: int = 3
    parallel: bool = False
    algos: tuple = ("fast", "baseline")


def random_linearized(rng: random.Random, F: FieldCtx, m: int, r: int) -> LinearizedPoly:
    """Uniform t_0..t_{r-1}, nonzero t_r."""
    Q = F.order**m
    t = [rng.randrange(Q) for _ in range(r)] + [rng.randrange(1, Q)]
    return LinearizedPoly(F, m, t)


def time_call(fn, repeat: int = 3, cap: float | None = None) -> int | None:
    """Median wall time in ns over ``repeat`` runs after one discarded warm-up.

    The garbage collector is paused while timing, as ``timeit`` does. Returns
    None when the warm-up alone exceeds ``cap`` seconds.
    """
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = time.perf_counter_ns()
        fn()
        if cap is not None and time.perf_counter_ns() - t0 > cap * 1e9:
            return None
        runs = []
        for _ in range(repeat):
            t0 = time.perf_counter_ns()
            fn()
            runs.append(time.perf_counter_ns() - t0)
    finally:
        if was_enabled:
            gc.enable()
    return int(statistics.median(runs))


def time_interleaved(fns: dict, rounds: int = 7) -> dict:
    """Median wall time in ns per key, timing every function once per round.

    Interleaving spreads slow phases of the machine over all keys instead of
    letting them land on whichever size happened to be running.
    """
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    runs: dict = {k: [] for k in fns}
    try:
        for fn in fns.values():
            fn()
        for _ in range(rounds):
            for k, fn in fns.items():
                t0 = time.perf_counter_ns()
                fn()
                runs[k].append(time.perf_counter_ns() - t0)
    finally:
        if was_enabled:
            gc.enable()
    return {k: int(statistics.median(v)) for k, v in runs.items()}


def run_bench(grid: BenchGrid) -> list[BenchRecord]:
    out = []
    for p in grid.primes:
        for e in grid.exps:
            F = make_field(p, e)
            for m in grid.ms:
                for r in grid.rs:
                    rng = random.Random(f"{grid.seed}:{p}:{e}:{m}:{r}")
                    L = random_linearized(rng, F, m, r)
                    out += _run_cell(grid, F, L)
    return out


def _run_cell(grid: BenchGrid, F: FieldCtx, L: LinearizedPoly) -> list[BenchRecord]:
    p, e, m, r = F.p, F.prime_degree, L.m, L.r
    order = make_plan(L).recurrence.order
    last = {}  # algo -> (n, ns) of the largest completed run
    recs = []
    for ell in sorted(grid.ells):
        n = m * ell
        for algo in grid.algos:
            if algo == "fast":
                fn = partial(fast_charpoly, L, ell, parallel=grid.parallel)
                passthrough = ell <= 2 ** (r + 1)
                rec_order = None if passthrough else order
                s = None if passthrough else eval_layout(F, n).s
                growth = 1
            else:
                fn = partial(charpoly_direct, L, ell)
                rec_order, s, growth = None, None, 3
            ns = None
            prev = last.get(algo)
            if prev is not False:
                # skip cells the previous size says cannot finish under the cap
                if prev and prev[1] * (n / prev[0]) ** growth > grid.cap * 1e9:
                    last[algo] = False
                else:
                    ns = time_call(fn, grid.repeat, grid.cap)
                    last[algo] = (n, ns) if ns is not None else False
            recs.append(BenchRecord(p, e, m, r, ell, n, algo, rec_order, s, ns))
    return recs
