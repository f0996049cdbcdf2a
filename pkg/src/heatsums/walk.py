"""Monte Carlo random walks on the untwisted torus.

Walks run in batches.  Batch b draws from a generator seeded with
SeedSequence([seed, b]), so the result depends only on the seed and the batch
size, never on how many threads ran the batches.  HEATSUMS_THREADS caps the
worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .model import LatticeVector, TorusSpec
from .torus import evolve_delta

DEFAULT_BATCH = 100_000


@dataclass(frozen=True)
class SimConfig:
    spec: TorusSpec
    walks: int
    n: int
    seed: int = 0
    start: LatticeVector = ()
    batch_size: int = DEFAULT_BATCH

    def __post_init__(self):
        if not self.spec.beta_is_zero():
            raise ValueError("simulation needs an untwisted spec (beta = 0)")
        if self.walks < 1:
            raise ValueError("walks must be positive")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")
        if not self.start:
            object.__setattr__(self, "start", (0,) * self.spec.d)
        elif len(self.start) != self.spec.d:
            raise ValueError("start must have length d")


@dataclass
class Empirical:
    """Endpoint counts over G_m in row-major residue order."""

    spec: TorusSpec
    counts: np.ndarray
    walks: int

    def frequency(self, x: Sequence[int]) -> float:
        idx = np.ravel_multi_index(tuple(int(c) % mj for c, mj in zip(x, self.spec.m)), self.spec.m)
        return self.counts[idx] / self.walks

    def frequencies(self) -> np.ndarray:
        return self.counts / self.walks

    def to_json(self) -> dict:
        return {
            "walks": self.walks,
            "counts": {",".join(map(str, r)): int(c) for r, c in zip(self.spec.residues(), self.counts)},
        }


def thread_count() -> int:
    raw = os.environ.get("HEATSUMS_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def _run_batch(config: SimConfig, batch: int, size: int, offsets: np.ndarray, cdf: np.ndarray) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([config.seed, batch]))
    m = np.asarray(config.spec.m, dtype=np.int64)
    pos = np.tile(np.asarray(config.start, dtype=np.int64) % m, (size, 1))
    for _ in range(config.n):
        choice = np.searchsorted(cdf, rng.random(size), side="right")
        pos += offsets[choice]
        pos %= m
    flat = np.ravel_multi_index(tuple(pos.T), config.spec.m)
    return np.bincount(flat, minlength=config.spec.M)


def simulate(config: SimConfig) -> Empirical:
    spec = config.spec
    offsets = np.asarray(spec.steps.offsets, dtype=np.int64)
    cdf = np.cumsum([float(w) for w in spec.steps.weights])
    cdf[-1] = 1.0
    cdf = cdf[:-1]  # searchsorted over the interior cut points
    sizes = []
    left = config.walks
    while left:
        sizes.append(min(left, config.batch_size))
        left -= sizes[-1]
    workers = min(thread_count(), len(sizes))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda b: _run_batch(config, b, sizes[b], offsets, cdf), range(len(sizes))))
    else:
        parts = [_run_batch(config, b, s, offsets, cdf) for b, s in enumerate(sizes)]
    return Empirical(spec, np.sum(parts, axis=0), config.walks)


@dataclass
class CellReport:
    residue: LatticeVector
    exact: Fraction
    empirical: float
    deviation: float
    bound: float

    @property
    def flagged(self) -> bool:
        return self.deviation > self.bound


@dataclass
class ComparisonReport:
    walks: int
    sigmas: float
    cells: list[CellReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(c.flagged for c in self.cells)

    def to_json(self) -> dict:
        return {
            "walks": self.walks,
            "sigmas": self.sigmas,
            "pass": self.ok,
            "cells": [
                {
                    "residue": list(c.residue),
                    "exact": str(c.exact),
                    "empirical": c.empirical,
                    "deviation": c.deviation,
                    "bound": c.bound,
                    "flagged": c.flagged,
                }
                for c in self.cells
            ],
        }


def compare_to_exact(config: SimConfig, sigmas: float = 4.0) -> ComparisonReport:
    """|empirical - exact| per residue against sigmas * sqrt(p(1-p)/walks)."""
    emp = simulate(config)
    state = evolve_delta(config.spec, config.start, config.n)
    report = ComparisonReport(config.walks, sigmas)
    freqs = emp.frequencies()
    for i, (r, value) in enumerate(state.items()):
        p = value.to_rational()
        bound = sigmas * math.sqrt(float(p) * (1 - float(p)) / config.walks)
        dev = abs(float(freqs[i]) - float(p))
        # exact zeros and ones must be hit exactly; allow only rounding noise
        report.cells.append(CellReport(r, p, float(freqs[i]), dev, max(bound, 1e-12)))
    return report
