"""Empirical quadrant probabilities, Kendall curves and the AUK indices.

For a sample point ``(X_j, Y_j)`` the four quadrant counts are::

    c0 = #{k: X_k <  X_j, Y_k <  Y_j}
    c1 = #{k: X_k >= X_j, Y_k <  Y_j}
    c2 = #{k: X_k <  X_j, Y_k >= Y_j}
    c3 = #{k: X_k >= X_j, Y_k >= Y_j}

These partition the sample, and the point itself always falls in ``c3``.
Two conventions for the self point are supported:

``"exclude"`` (default)
    the self point is removed from ``c3`` and the counts are divided by
    ``n - 1``. Reflecting either coordinate then permutes the four panels
    exactly on tie-free data.
``"include"``
    the self point stays in ``c3`` and the counts are divided by ``n``.

Both conventions partition exactly: the four proportions sum to one.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, NamedTuple

import numpy as np

from .sample import BivariateSample

SelfPoint = Literal["exclude", "include"]

PANELS = (0, 1, 2, 3)
DEFAULT_GRID = 201
I_AUK_SCALE = math.sqrt(8.0 / 5.0)
# standardizing polynomial, lowest degree first (no constant term)
ETA_INV_COEFFS = (2.070, 0.061, -2.471, 1.307, 0.033)


class TiedDataWarning(UserWarning):
    """Sample has duplicate x or y values; continuity is violated."""


def _check_self_point(self_point: str) -> None:
    if self_point not in ("exclude", "include"):
        raise ValueError(f"self_point must be 'exclude' or 'include', got {self_point!r}")


def _check_panel(panel: int) -> int:
    if panel not in PANELS:
        raise ValueError(f"panel must be one of 0, 1, 2, 3, got {panel!r}")
    return int(panel)


def warn_if_tied(sample: BivariateSample) -> None:
    if sample.has_ties:
        t = sample.ties
        warnings.warn(
            f"sample contains ties (x: {t.x_tie_count} pairs, y: {t.y_tie_count} pairs); "
            "estimates use the fixed counting conventions",
            TiedDataWarning,
            stacklevel=3,
        )


# --------------------------------------------------------------------------- #
# elementary functions
# --------------------------------------------------------------------------- #

def w_transform(t):
    """Distribution function of the product of two independent uniforms,
    ``t - t log t`` with ``0 log 0 = 0``. Accepts scalars or arrays."""
    arr = np.asarray(t, dtype=np.float64)
    if np.any((arr < 0.0) | (arr > 1.0)) or np.any(np.isnan(arr)):
        raise ValueError("t must lie in [0, 1]")
    out = arr - _xlogx(arr)
    return float(out) if out.ndim == 0 else out


def _xlogx(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64)
    out = np.zeros_like(u)
    pos = u > 0.0
    out[pos] = u[pos] * np.log(u[pos])
    return out


def auk_kernel(u):
    """``1 - u + u log u`` on [0, 1], equal to 1 at 0 and 0 at 1."""
    u = np.asarray(u, dtype=np.float64)
    out = 1.0 - u + _xlogx(u)
    return float(out) if out.ndim == 0 else out


# --------------------------------------------------------------------------- #
# quadrant counting
# --------------------------------------------------------------------------- #

def _count_smaller_before(v: np.ndarray) -> np.ndarray:
    """``out[p] = #{q < p : v[q] < v[p]}`` for an integer array ``v``.

    Bottom-up merge counting: at each level every block of width ``2s``
    contributes, for elements of its right half, the number of smaller
    values in its left half. Each pair ``q < p`` is split at exactly one
    level, so the sum over levels is the full count.
    """
    n = v.size
    out = np.zeros(n, dtype=np.int64)
    if n < 2:
        return out
    v = v.astype(np.int64)
    span = int(v.max()) + 1
    idx = np.arange(n, dtype=np.int64)
    s = 1
    while s < n:
        block = idx // (2 * s)
        left = (idx % (2 * s)) < s
        base = block * span
        keys = np.sort(base[left] + v[left])
        right = ~left
        lo = np.searchsorted(keys, base[right], side="left")
        hi = np.searchsorted(keys, base[right] + v[right], side="left")
        out[right] += hi - lo
        s *= 2
    return out


def quadrant_counts(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Raw quadrant counts for every point, shape ``(4, n)``.

    The self point is included in row 3. Runs in ``O(n log^2 n)`` and agrees
    exactly with :func:`quadrant_counts_bruteforce`, ties included.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = x.size
    xs = np.sort(x)
    ys = np.sort(y)
    f = np.searchsorted(xs, x, side="left")
    g = np.searchsorted(ys, y, side="left")
    # order by x ascending, y descending within tied x: an earlier point with
    # the same x never has a strictly smaller y, so x-ties are not counted
    order = np.lexsort((-y, x))
    y_rank = np.searchsorted(ys, y, side="left")
    c0 = np.empty(n, dtype=np.int64)
    c0[order] = _count_smaller_before(y_rank[order])
    c1 = g - c0
    c2 = f - c0
    c3 = n - f - g + c0
    return np.stack([c0, c1, c2, c3])


def quadrant_counts_bruteforce(x: np.ndarray, y: np.ndarray, chunk: int = 512) -> np.ndarray:
    """Reference ``O(n^2)`` counter; every quadrant is counted directly."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = x.size
    out = np.empty((4, n), dtype=np.int64)
    for start in range(0, n, chunk):
        xj = x[start:start + chunk, None]
        yj = y[start:start + chunk, None]
        xl = x[None, :] < xj
        yl = y[None, :] < yj
        out[0, start:start + chunk] = np.count_nonzero(xl & yl, axis=1)
        out[1, start:start + chunk] = np.count_nonzero(~xl & yl, axis=1)
        out[2, start:start + chunk] = np.count_nonzero(xl & ~yl, axis=1)
        out[3, start:start + chunk] = np.count_nonzero(~xl & ~yl, axis=1)
    return out


def _panel_counts(sample: BivariateSample, self_point: SelfPoint) -> tuple[np.ndarray, int]:
    _check_self_point(self_point)
    counts = quadrant_counts(sample.x, sample.y)
    if self_point == "exclude":
        counts[3] -= 1
        return counts, sample.n - 1
    return counts, sample.n


def panel_probabilities(sample: BivariateSample, self_point: SelfPoint = "exclude") -> np.ndarray:
    """Quadrant proportions ``h_i(j)`` for all points, shape ``(4, n)``."""
    counts, denom = _panel_counts(sample, self_point)
    return counts / denom


@dataclass(frozen=True)
class QuadrantProbs:
    """Quadrant and marginal proportions at one sample point.

    Integer counts are kept alongside the common denominator so the
    partition identity can be checked exactly.
    """

    counts: tuple[int, int, int, int]
    f_count: int
    g_count: int
    denominator: int

    @property
    def h0(self) -> float:
        return self.counts[0] / self.denominator

    @property
    def h1(self) -> float:
        return self.counts[1] / self.denominator

    @property
    def h2(self) -> float:
        return self.counts[2] / self.denominator

    @property
    def h3(self) -> float:
        return self.counts[3] / self.denominator

    @property
    def f(self) -> float:
        return self.f_count / self.denominator

    @property
    def g(self) -> float:
        return self.g_count / self.denominator

    def exact(self) -> tuple[Fraction, ...]:
        """(h0, h1, h2, h3, f, g) as exact fractions."""
        d = self.denominator
        return tuple(Fraction(c, d) for c in (*self.counts, self.f_count, self.g_count))


def quadrant_probs(sample: BivariateSample, j: int, self_point: SelfPoint = "exclude") -> QuadrantProbs:
    """Quadrant proportions at the ``j``-th point (one-based)."""
    _check_self_point(self_point)
    if not 1 <= j <= sample.n:
        raise IndexError(f"point index {j} out of range 1..{sample.n}")
    xj, yj = sample.x[j - 1], sample.y[j - 1]
    xl = sample.x < xj
    yl = sample.y < yj
    c = [
        int(np.count_nonzero(xl & yl)),
        int(np.count_nonzero(~xl & yl)),
        int(np.count_nonzero(xl & ~yl)),
        int(np.count_nonzero(~xl & ~yl)),
    ]
    denom = sample.n
    if self_point == "exclude":
        c[3] -= 1
        denom -= 1
    return QuadrantProbs(tuple(c), int(np.count_nonzero(xl)), int(np.count_nonzero(yl)), denom)


# --------------------------------------------------------------------------- #
# Kendall distribution functions
# --------------------------------------------------------------------------- #

@dataclass(frozen=True)
class KendallCurve:
    """One panel of a multi-panel K-plot sampled on a grid of ``t``."""

    panel: int
    grid: np.ndarray
    w: np.ndarray
    k: np.ndarray

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.w.tolist(), self.k.tolist()))


def _kendall_from_h(h: np.ndarray, t) -> np.ndarray:
    hs = np.sort(h)
    return np.searchsorted(hs, np.asarray(t, dtype=np.float64), side="left") / h.size


def kendall_cdf(sample: BivariateSample, panel: int, t: float, self_point: SelfPoint = "exclude") -> float:
    """Empirical ``K_i(t) = (1/n) #{j : h_i(j) < t}`` (strict inequality)."""
    panel = _check_panel(panel)
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    h = panel_probabilities(sample, self_point)[panel]
    return float(_kendall_from_h(h, t))


def uniform_grid(grid_size: int) -> np.ndarray:
    if grid_size < 2:
        raise ValueError(f"grid_size must be at least 2, got {grid_size}")
    return np.linspace(0.0, 1.0, grid_size)


def kendall_curves(
    sample: BivariateSample,
    grid_size: int = DEFAULT_GRID,
    self_point: SelfPoint = "exclude",
) -> list[KendallCurve]:
    """All four panels on a shared uniform grid."""
    grid = uniform_grid(grid_size)
    w = w_transform(grid)
    h = panel_probabilities(sample, self_point)
    return [KendallCurve(i, grid, w, _kendall_from_h(h[i], grid)) for i in PANELS]


def kendall_curve(
    sample: BivariateSample,
    panel: int,
    grid_size: int = DEFAULT_GRID,
    self_point: SelfPoint = "exclude",
) -> KendallCurve:
    panel = _check_panel(panel)
    grid = uniform_grid(grid_size)
    h = panel_probabilities(sample, self_point)[panel]
    return KendallCurve(panel, grid, w_transform(grid), _kendall_from_h(h, grid))


# --------------------------------------------------------------------------- #
# AUK components and indices
# --------------------------------------------------------------------------- #

def standardized_index(i_auk: float) -> float:
    """Map I_AUK onto the |rho| scale of the bivariate normal.

    Inputs above 1 (sampling noise) are clamped to 1.
    """
    if i_auk < 0:
        raise ValueError(f"I_AUK must be non-negative, got {i_auk}")
    t = min(float(i_auk), 1.0)
    acc = 0.0
    for c in reversed(ETA_INV_COEFFS):
        acc = (acc + c) * t
    return acc


def i_auk_from_components(components) -> float:
    # fsum is correctly rounded, so permuting the components cannot change a bit
    return I_AUK_SCALE * math.sqrt(math.fsum((float(a) - 0.5) ** 2 for a in components))


@dataclass(frozen=True)
class DVector:
    auk0: float
    auk1: float
    auk2: float
    auk3: float
    i_auk: float
    i_auk_std: float

    @classmethod
    def from_components(cls, components) -> "DVector":
        a = [float(v) for v in components]
        if len(a) != 4:
            raise ValueError("need exactly four AUK components")
        i = i_auk_from_components(a)
        return cls(*a, i_auk=i, i_auk_std=standardized_index(i))

    @property
    def components(self) -> tuple[float, float, float, float]:
        return (self.auk0, self.auk1, self.auk2, self.auk3)

    def as_dict(self) -> dict[str, float]:
        return {
            "auk0": self.auk0,
            "auk1": self.auk1,
            "auk2": self.auk2,
            "auk3": self.auk3,
            "i_auk": self.i_auk,
            "i_auk_std": self.i_auk_std,
        }


def components_from_probabilities(h: np.ndarray) -> np.ndarray:
    """Plug-in AUK for each row of a ``(4, n)`` proportion array."""
    return auk_kernel(h).mean(axis=1)


def auk_component(sample: BivariateSample, panel: int, self_point: SelfPoint = "exclude") -> float:
    """Plug-in estimate ``(1/n) sum_j {1 - h + h log h}`` for one panel."""
    panel = _check_panel(panel)
    h = panel_probabilities(sample, self_point)[panel]
    return float(auk_kernel(h).mean())


def d_vector(sample: BivariateSample, self_point: SelfPoint = "exclude", warn: bool = True) -> DVector:
    if warn:
        warn_if_tied(sample)
    h = panel_probabilities(sample, self_point)
    return DVector.from_components(components_from_probabilities(h))


def i_auk(sample: BivariateSample, self_point: SelfPoint = "exclude") -> float:
    return d_vector(sample, self_point, warn=False).i_auk


class TotalAukMismatch(ArithmeticError):
    """The two closed forms of the total AUK disagree."""


def total_auk(sample: BivariateSample, self_point: SelfPoint = "exclude", atol: float = 1e-12) -> float:
    """Sum of the four components, cross-checked against the
    log-likelihood form ``3 + (1/n) sum_j sum_i h_i log h_i``."""
    h = panel_probabilities(sample, self_point)
    direct = float(components_from_probabilities(h).sum())
    loglik = 3.0 + float(_xlogx(h).sum(axis=0).mean())
    if abs(direct - loglik) > atol:
        raise TotalAukMismatch(f"component sum {direct!r} != expansion {loglik!r}")
    return direct


# --------------------------------------------------------------------------- #
# interpretation
# --------------------------------------------------------------------------- #

class DependenceSigns(NamedTuple):
    components: tuple[str, str, str, str]
    aggregate: str
    signed: tuple[float, float, float, float]


def positive_dependence_scores(d: DVector) -> tuple[float, float, float, float]:
    """Per-panel quantities that are positive under positive dependence."""
    return (
        (1.0 - d.auk0) - 0.5,
        d.auk1 - 0.5,
        d.auk2 - 0.5,
        (1.0 - d.auk3) - 0.5,
    )


def default_sign_tolerance(n: int) -> float:
    return 2.0 / math.sqrt(n)


def classify_dependence(d: DVector, tolerance: float) -> DependenceSigns:
    """Label each panel positive / negative / neutral; the aggregate is the
    majority label, neutral on a 2-2 split."""
    if tolerance < 0:
        raise ValueError("tolerance must be non-negative")
    scores = positive_dependence_scores(d)
    labels = tuple(
        "positive" if s > tolerance else "negative" if s < -tolerance else "neutral"
        for s in scores
    )
    counts = {lab: labels.count(lab) for lab in ("positive", "negative", "neutral")}
    top = max(counts.values())
    winners = [lab for lab, c in counts.items() if c == top]
    aggregate = winners[0] if len(winners) == 1 else "neutral"
    return DependenceSigns(labels, aggregate, scores)  # type: ignore[arg-type]


def check_c1(
    sample: BivariateSample,
    grid_size: int = DEFAULT_GRID,
    tolerance: float = 0.0,
    self_point: SelfPoint = "exclude",
) -> list[int]:
    """Panels whose Kendall curve stays on one side of the diagonal
    (up to ``tolerance``) over the whole grid."""
    if tolerance < 0:
        raise ValueError("tolerance must be non-negative")
    found = []
    for curve in kendall_curves(sample, grid_size, self_point):
        diff = curve.k - curve.w
        if np.all(diff >= -tolerance) or np.all(diff <= tolerance):
            found.append(curve.panel)
    return found


# --------------------------------------------------------------------------- #
# classical coefficients used by the simulation tables
# --------------------------------------------------------------------------- #

def kendall_tau(x, y) -> float:
    """Kendall's tau-a by direct concordance counting."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = x.size
    s = 0
    for i in range(n - 1):
        s += int(np.sum(np.sign(x[i + 1:] - x[i]) * np.sign(y[i + 1:] - y[i])))
    return s / (n * (n - 1) / 2)


def pearson_r(x, y) -> float:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    dx = x - x.mean()
    dy = y - y.mean()
    denom = math.sqrt(float(np.dot(dx, dx)) * float(np.dot(dy, dy)))
    if denom == 0.0:
        return float("nan")
    return float(np.dot(dx, dy)) / denom
