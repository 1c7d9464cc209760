"""Independent depolarizing noise on the channel-touched qubits."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .pauli import PauliString, parse_label, weight
from .poly import Polynomial

MAX_ENUMERATION_SITES = 16
# trials per independently keyed random block
BLOCK_SIZE = 1 << 16

ONE_MINUS_P = Polynomial([1, -1])
P_THIRD = Polynomial([0, Fraction(1, 3)])


class CapacityError(ValueError):
    """Raised when an exhaustive enumeration would be too large."""


@dataclass(frozen=True)
class ChannelSpec:
    """Depolarizing probability ``p`` shared by ``m`` independent sites."""

    p: float | Fraction
    m: int

    def __post_init__(self) -> None:
        if not 0 <= self.p <= 1:
            raise ValueError(f"depolarizing probability must be in [0, 1], got {self.p}")
        if self.m < 0:
            raise ValueError("site count must be nonnegative")


@functools.lru_cache(maxsize=None)
def weight_probability(w: int, m: int) -> Polynomial:
    """``(1-p)**(m-w) * (p/3)**w``."""
    return ONE_MINUS_P ** (m - w) * P_THIRD**w


def pattern_probability(pattern: PauliString) -> Polynomial:
    return weight_probability(weight(pattern), pattern.length)


def check_capacity(m: int) -> None:
    if m > MAX_ENUMERATION_SITES:
        raise CapacityError(f"refusing to enumerate 4**{m} patterns")


def enumerate_patterns(m: int) -> Iterator[PauliString]:
    """All ``4**m`` patterns, sites ordered I < X < Y < Z, site 0 slowest."""
    check_capacity(m)
    for labels in itertools.product("IXYZ", repeat=m):
        yield parse_label("".join(labels))


def sample_codes(m: int, p: float, rng: np.random.Generator, size: int) -> np.ndarray:
    """``size`` packed patterns (``x | z << m``) drawn from the channel."""
    u = rng.random((size, m))
    keep = 1.0 - p
    # 0 = I, 1 = X, 2 = Y, 3 = Z
    if p > 0:
        kind = np.where(u < keep, 0, 1 + np.minimum((u - keep) * 3.0 / p, 2.0).astype(np.int64))
    else:
        kind = np.zeros((size, m), dtype=np.int64)
    xbits = ((kind == 1) | (kind == 2)).astype(np.int64)
    zbits = ((kind == 2) | (kind == 3)).astype(np.int64)
    shifts = np.arange(m, dtype=np.int64)
    return (xbits << shifts).sum(axis=1) | ((zbits << (shifts + m)).sum(axis=1))


def block_stream(seed: int, block: int) -> np.random.Generator:
    """Counter-based generator for one block of trials."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))


def sample_pattern(spec: ChannelSpec, rng: np.random.Generator) -> PauliString:
    code = int(sample_codes(spec.m, float(spec.p), rng, 1)[0])
    mask = (1 << spec.m) - 1
    return PauliString(spec.m, code & mask, (code >> spec.m) & mask)


def trial_codes(m: int, p: float, seed: int, start: int, stop: int) -> np.ndarray:
    """Patterns for trials ``start..stop-1``; each trial's draw depends only
    on ``(seed, trial index)``, so any split of the range gives the same
    concatenated result."""
    out = []
    first, last = start // BLOCK_SIZE, (stop - 1) // BLOCK_SIZE if stop > start else -1
    for block in range(first, last + 1):
        codes = sample_codes(m, p, block_stream(seed, block), BLOCK_SIZE)
        lo = max(start - block * BLOCK_SIZE, 0)
        hi = min(stop - block * BLOCK_SIZE, BLOCK_SIZE)
        out.append(codes[lo:hi])
    return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)
