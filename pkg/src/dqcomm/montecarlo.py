"""Sampled QBER and yield, used to cross-check the exact engine."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .channel import trial_codes
from .pauli import from_int
from .schemes import SchemeSpec, evaluate


@dataclass(frozen=True)
class McEstimate:
    scheme: str
    p: float
    trials: int
    retained: int
    successes: int
    qber_hat: Optional[float]
    yield_hat: float
    stderr: Optional[float]
    seed: int

    @property
    def undefined(self) -> bool:
        """Detection run in which nothing was retained."""
        return self.qber_hat is None

    def to_json(self) -> dict:
        return asdict(self)


def _tally(m: int, p: float, seed: int, start: int, stop: int) -> np.ndarray:
    return np.bincount(trial_codes(m, p, seed, start, stop), minlength=1 << (2 * m))


def pattern_counts(m: int, p: float, trials: int, seed: int, workers: int = 1) -> np.ndarray:
    """How often each packed pattern occurs in ``trials`` draws.

    The split across workers does not change the result.
    """
    if workers <= 1:
        return _tally(m, p, seed, 0, trials)
    edges = np.linspace(0, trials, workers + 1).astype(int)
    with ProcessPoolExecutor(workers) as pool:
        parts = pool.map(
            _tally, [m] * workers, [p] * workers, [seed] * workers, edges[:-1], edges[1:]
        )
        return sum(parts)


def estimate(s: SchemeSpec, p: float, trials: int, seed: int, workers: int = 1) -> McEstimate:
    if trials < 1:
        raise ValueError("need at least one trial")
    if not 0 <= p <= 1:
        raise ValueError(f"depolarizing probability must be in [0, 1], got {p}")
    counts = pattern_counts(s.m, float(p), trials, seed, workers)
    retained = successes = 0
    # each distinct pattern is evaluated once
    for code in np.flatnonzero(counts):
        out = evaluate(s, from_int(int(code), s.m))
        n = int(counts[code])
        if out.decision != "discard":
            retained += n
        if out.success:
            successes += n
    rate = Fraction(s.k, s.n)
    if s.mode == "detect":
        base = retained
        yield_hat = float(rate * Fraction(retained, trials))
    else:
        base = trials
        yield_hat = float(rate)
    if base == 0:
        qber, err = None, None
    else:
        qber = 1 - successes / base
        err = math.sqrt(qber * (1 - qber) / base)
    return McEstimate(s.name, float(p), trials, retained, successes, qber, yield_hat, err, seed)
