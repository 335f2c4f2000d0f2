"""Seeded Monte Carlo estimate of the probability that no bad event occurs."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from statistics import NormalDist
from typing import Callable

Sampler = Callable[[random.Random], bool]


@dataclass(frozen=True)
class MonteCarloResult:
    trials: int
    successes: int
    rate: float
    low: float
    high: float
    half_width: float
    confidence: float
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


def wilson_interval(successes: int, trials: int, confidence: float = 0.99) -> tuple[float, float]:
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z / denom * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


def monte_carlo(
    sampler: Sampler, trials: int, seed: int, confidence: float = 0.99
) -> MonteCarloResult:
    """Run ``sampler`` ``trials`` times on one ``random.Random(seed)`` stream.

    ``sampler`` returns True when the trial avoided every bad event.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    hits = sum(1 for _ in range(trials) if sampler(rng))
    low, high = wilson_interval(hits, trials, confidence)
    return MonteCarloResult(
        trials, hits, hits / trials, low, high, (high - low) / 2, confidence, seed
    )
