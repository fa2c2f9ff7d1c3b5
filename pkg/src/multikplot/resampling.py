"""Percentile bootstrap intervals for the AUK statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .estimators import (
    DVector,
    SelfPoint,
    components_from_probabilities,
    panel_probabilities,
)
from .sample import BivariateSample
from .samplers import replicate_rng

STATISTICS = ("auk0", "auk1", "auk2", "auk3", "i_auk", "i_auk_std")
DEFAULT_LEVELS = (0.90, 0.95)
MIN_REPLICATES = 100


@dataclass(frozen=True)
class IntervalEstimate:
    statistic: str
    point: float
    levels: tuple[float, ...]
    intervals: tuple[tuple[float, float], ...]
    b: int

    def interval(self, level: float) -> tuple[float, float]:
        for lv, iv in zip(self.levels, self.intervals):
            if math.isclose(lv, level):
                return iv
        raise KeyError(f"no interval at level {level}")

    def as_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "point": self.point,
            "b": self.b,
            "levels": list(self.levels),
            "intervals": [list(iv) for iv in self.intervals],
        }


def percentile_index(q: float, b: int) -> int:
    """Zero-based position of the ``q``-quantile among ``b`` sorted values,
    using the one-based rule ``ceil(q b)`` clamped to ``[1, b]``.

    ``q b`` is rounded to 9 decimals first so representation error (e.g.
    ``0.95 * 100 = 94.99999999999999``) does not shift the rank.
    """
    k = math.ceil(round(q * b, 9))
    return min(max(k, 1), b) - 1


def percentile_interval(sorted_values: np.ndarray, level: float) -> tuple[float, float]:
    b = sorted_values.size
    lo = sorted_values[percentile_index((1.0 - level) / 2.0, b)]
    hi = sorted_values[percentile_index((1.0 + level) / 2.0, b)]
    return float(lo), float(hi)


def _validate(statistics: Sequence[str], b: int, levels: Sequence[float]) -> tuple[float, ...]:
    for s in statistics:
        if s not in STATISTICS:
            raise ValueError(f"unknown statistic {s!r}; choose from {', '.join(STATISTICS)}")
    if b < MIN_REPLICATES:
        raise ValueError(f"need at least {MIN_REPLICATES} bootstrap replicates, got {b}")
    levels = tuple(float(lv) for lv in levels)
    if not levels or any(not 0.0 < lv < 1.0 for lv in levels):
        raise ValueError("confidence levels must lie in (0, 1)")
    return levels


def bootstrap_dvectors(
    sample: BivariateSample, b: int, seed: int, self_point: SelfPoint = "exclude"
) -> np.ndarray:
    """D-vector statistics of ``b`` pair resamples, shape ``(b, 6)``.

    Replicate ``r`` draws its indices from ``replicate_rng(seed, r)``, so the
    result is independent of evaluation order.
    """
    n = sample.n
    out = np.empty((b, len(STATISTICS)))
    for r in range(b):
        idx = replicate_rng(seed, r).integers(0, n, size=n)
        h = panel_probabilities(sample.take(idx), self_point)
        d = DVector.from_components(components_from_probabilities(h))
        out[r] = (d.auk0, d.auk1, d.auk2, d.auk3, d.i_auk, d.i_auk_std)
    return out


def bootstrap_statistics(
    sample: BivariateSample,
    statistics: Iterable[str] = STATISTICS,
    b: int = 5000,
    levels: Sequence[float] = DEFAULT_LEVELS,
    seed: int = 0,
    self_point: SelfPoint = "exclude",
) -> dict[str, IntervalEstimate]:
    """Intervals for several statistics computed from one shared set of
    resamples."""
    statistics = tuple(statistics)
    levels = _validate(statistics, b, levels)
    h = panel_probabilities(sample, self_point)
    point = DVector.from_components(components_from_probabilities(h)).as_dict()
    reps = bootstrap_dvectors(sample, b, seed, self_point)
    result = {}
    for name in statistics:
        col = np.sort(reps[:, STATISTICS.index(name)])
        result[name] = IntervalEstimate(
            statistic=name,
            point=point[name],
            levels=levels,
            intervals=tuple(percentile_interval(col, lv) for lv in levels),
            b=b,
        )
    return result


def bootstrap_ci(
    sample: BivariateSample,
    statistic: str,
    b: int = 5000,
    levels: Sequence[float] = DEFAULT_LEVELS,
    seed: int = 0,
    self_point: SelfPoint = "exclude",
) -> IntervalEstimate:
    """Percentile bootstrap interval for one named statistic.

    Pairs are resampled jointly with replacement. For sorted replicates
    ``s(1) <= ... <= s(b)`` the ``q``-quantile is ``s(ceil(q b))``; the
    interval at level ``l`` spans the ``(1 - l)/2`` and ``(1 + l)/2``
    quantiles.
    """
    return bootstrap_statistics(sample, (statistic,), b, levels, seed, self_point)[statistic]
