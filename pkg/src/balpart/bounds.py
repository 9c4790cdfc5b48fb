"""Monte-Carlo check of the degree bounds on expected adjusted ambivalence.

For a node of degree ``d`` under a uniformly random k-way assignment,
``(2/k) d <= E[max_{i != p} (c_i - c_p)^2] <= (2(k-1)/k) d``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingleShardError


@dataclass(frozen=True)
class BoundCheck:
    k: int
    d: int
    samples: int
    estimate: float
    stderr: float
    lower: float
    upper: float

    @property
    def passed(self) -> bool:
        return self.lower - 3 * self.stderr <= self.estimate <= self.upper + 3 * self.stderr

    def as_dict(self) -> dict:
        return {"k": self.k, "d": self.d, "samples": self.samples, "estimate": self.estimate,
                "stderr": self.stderr, "lower": self.lower, "upper": self.upper,
                "pass": self.passed}


def sample_adjusted_ambivalence(k: int, d: int, samples: int, rng) -> np.ndarray:
    own = rng.integers(k, size=samples)
    labels = rng.integers(k, size=(samples, d))
    flat = (np.arange(samples)[:, None] * k + labels).ravel()
    counts = np.bincount(flat, minlength=samples * k).reshape(samples, k)
    own_count = counts[np.arange(samples), own]
    diff2 = (counts - own_count[:, None]) ** 2
    diff2[np.arange(samples), own] = -1
    return diff2.max(axis=1)


def check_ambivalence_bounds(k: int, d: int, samples: int = 100_000, seed=0) -> BoundCheck:
    if k < 2:
        raise SingleShardError("ambivalence bounds need k >= 2")
    if d < 0:
        raise ValueError("degree must be non-negative")
    vals = sample_adjusted_ambivalence(k, d, samples, np.random.default_rng(seed))
    est = float(vals.mean())
    se = float(vals.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
    return BoundCheck(k, d, samples, est, se, 2 * d / k, 2 * (k - 1) * d / k)
