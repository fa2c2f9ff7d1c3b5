"""Closed-form and numerical reference values for AUK.

Everything here is an oracle for the plug-in estimators: exact Kendall
distribution functions for two singular examples, AUK of a given curve,
the FGM family in closed form / by quadrature / by Monte Carlo, and the
bivariate-normal AUK by a two-sample plug-in.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np
from scipy import integrate

from .estimators import KendallCurve, auk_kernel, i_auk_from_components, quadrant_counts
from .samplers import make_rng, replicate_rng, standard_normals
from .special import dilog_real

CURVE_ATOL = 1e-9
FGM_ATOL = 1e-8
FGM_GUARD = 1e-3


# --------------------------------------------------------------------------- #
# area under a Kendall curve
# --------------------------------------------------------------------------- #

@dataclass(frozen=True)
class PiecewiseKendallCdf:
    """Piecewise-affine distribution function on [0, 1].

    Segment ``i`` covers ``[breakpoints[i], breakpoints[i+1])`` (the last one
    is closed at 1) and evaluates to ``slopes[i] * t + intercepts[i]``.
    ``at_zero`` overrides the value at ``t = 0`` when the strict-inequality
    definition puts it below the first segment's limit.
    """

    breakpoints: tuple[float, ...]
    slopes: tuple[float, ...]
    intercepts: tuple[float, ...]
    at_zero: float | None = None

    def __post_init__(self) -> None:
        b = self.breakpoints
        if len(b) < 2 or b[0] != 0.0 or b[-1] != 1.0 or any(p >= q for p, q in zip(b, b[1:])):
            raise ValueError("breakpoints must increase strictly from 0 to 1")
        if not len(self.slopes) == len(self.intercepts) == len(b) - 1:
            raise ValueError("need one slope and intercept per segment")

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        if np.any((t < 0) | (t > 1)):
            raise ValueError("t must lie in [0, 1]")
        seg = np.clip(np.searchsorted(self.breakpoints, t, side="right") - 1, 0, len(self.slopes) - 1)
        out = np.asarray(self.slopes)[seg] * t + np.asarray(self.intercepts)[seg]
        if self.at_zero is not None:
            out = np.where(t == 0.0, self.at_zero, out)
        return float(out) if out.ndim == 0 else out

    def segments(self):
        b = self.breakpoints
        return zip(b[:-1], b[1:], self.slopes, self.intercepts)


def _neg_log_moment(a: float, b: float, slope: float, intercept: float) -> float:
    """``-int_a^b (slope t + intercept) log t dt`` in closed form."""

    def anti(t: float) -> float:
        if t == 0.0:
            return 0.0
        lt = math.log(t)
        return slope * (0.5 * t * t * lt - 0.25 * t * t) + intercept * (t * lt - t)

    return -(anti(b) - anti(a))


def _auk_tabulated(t: np.ndarray, k: np.ndarray) -> float:
    t = np.asarray(t, dtype=np.float64)
    k = np.asarray(k, dtype=np.float64)
    if t.ndim != 1 or t.shape != k.shape or t.size < 2:
        raise ValueError("tabulated curve needs matching 1-d t and k arrays")
    if t[0] != 0.0 or t[-1] != 1.0 or np.any(np.diff(t) <= 0):
        raise ValueError("tabulated curve must cover [0, 1] on an increasing grid")
    total = 0.0
    for i in range(t.size - 1):
        a, b = t[i], t[i + 1]
        slope = (k[i + 1] - k[i]) / (b - a)
        total += _neg_log_moment(a, b, slope, k[i] - slope * a)
    return total


def auk_from_curve(k) -> float:
    """Area under a Kendall curve, ``-int_0^1 K(t) log t dt``.

    ``k`` may be a :class:`PiecewiseKendallCdf` (exact segment integration),
    a :class:`KendallCurve` or ``(t, k)`` pair of arrays (linear interpolation
    between grid points, integrated exactly), or a callable on [0, 1]
    (adaptive quadrature with the ``log t`` factor taken as an analytic
    weight, so the endpoint singularity never reaches the integrand).
    """
    if isinstance(k, PiecewiseKendallCdf):
        return sum(_neg_log_moment(a, b, s, c) for a, b, s, c in k.segments())
    if isinstance(k, KendallCurve):
        return _auk_tabulated(k.grid, k.k)
    if callable(k):
        val, _ = integrate.quad(
            k, 0.0, 1.0, weight="alg-loga", wvar=(0.0, 0.0), epsabs=CURVE_ATOL, epsrel=0.0, limit=200
        )
        return -val
    if isinstance(k, (tuple, list)) and len(k) == 2:
        return _auk_tabulated(*k)
    raise TypeError(f"cannot integrate curve of type {type(k).__name__}")


CurveForm = Literal["printed", "exact"]


def _check_form(form: str) -> None:
    if form not in ("printed", "exact"):
        raise ValueError(f"form must be 'printed' or 'exact', got {form!r}")


def triangle_kendall_cdf(panel: int, form: CurveForm = "printed") -> PiecewiseKendallCdf:
    """Kendall functions for the uniform law on the sides AB, AC of the
    triangle A(0, 1), B(-1, 0), C(1, 0).

    Parameters
    ----------
    panel : int
        Quadrant orientation, 0..3.
    form : {"printed", "exact"}
        ``"printed"`` gives panels 2 and 3 as ``1/2 + t/2`` on ``[0, 1/2)``
        and 1 afterwards. ``"exact"`` is the law of ``H`` actually induced by
        ``X ~ U[-1, 1]``, ``Y = 1 - |X|``: there ``H_2 = H_3`` is 0 with
        probability 1/2 and uniform otherwise, so ``K = 1/2 + t/2`` on all
        of ``(0, 1]``. Panels 0 and 1 agree in both forms.
    """
    _check_form(form)
    if panel in (0, 1):
        return PiecewiseKendallCdf((0.0, 0.5, 1.0), (2.0, 0.0), (0.0, 1.0))
    if panel in (2, 3):
        if form == "exact":
            return PiecewiseKendallCdf((0.0, 1.0), (0.5,), (0.5,), at_zero=0.0)
        return PiecewiseKendallCdf((0.0, 0.5, 1.0), (0.5, 0.0), (0.5, 1.0))
    raise ValueError(f"panel must be one of 0, 1, 2, 3, got {panel!r}")


def circle_kendall_cdf(form: CurveForm = "printed") -> PiecewiseKendallCdf:
    """Kendall function (identical for all four panels) of the uniform law
    on the unit circle; zero at t = 0 under the strict definition.

    ``"printed"`` puts the jump to 1 at ``t = 1/4``. Under the law itself
    ``H`` is 0 on one quarter arc, 1/2 on the opposite arc and uniform on
    ``(0, 1/2)`` in between, so the ``"exact"`` form is ``t + 1/4`` up to
    ``t = 1/2``.
    """
    _check_form(form)
    if form == "exact":
        return PiecewiseKendallCdf((0.0, 0.5, 1.0), (1.0, 0.0), (0.25, 1.0), at_zero=0.0)
    return PiecewiseKendallCdf((0.0, 0.25, 1.0), (1.0, 0.0), (0.25, 1.0), at_zero=0.0)


TRIANGLE_AUK = (
    5 / 8 - math.log(2) / 4,
    5 / 8 - math.log(2) / 4,
    25 / 32 - 3 * math.log(2) / 16,
    25 / 32 - 3 * math.log(2) / 16,
)
CIRCLE_AUK = 53 / 64 - 5 * math.log(2) / 16
TRIANGLE_AUK_EXACT = (5 / 8 - math.log(2) / 4, 5 / 8 - math.log(2) / 4, 5 / 8, 5 / 8)
CIRCLE_AUK_EXACT = 11 / 16 - math.log(2) / 4


# --------------------------------------------------------------------------- #
# FGM family
# --------------------------------------------------------------------------- #

def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not -1.0 < gamma < 1.0:
        raise ValueError(f"|gamma| must be < 1, got {gamma}")
    return gamma


def auk_fgm_closed(gamma: float) -> float:
    """Closed-form AUK of the FGM copula in real arithmetic.

    The complex terms ``Log(-gamma)`` and ``Li2(1 + gamma)`` enter linearly
    with real coefficients, so the real part is obtained by replacing them
    with ``log|gamma|`` and ``Re Li2(1 + gamma)``. Near zero the expression
    cancels catastrophically and quadrature is returned instead.
    """
    g = _check_gamma(gamma)
    if abs(g) < FGM_GUARD:
        return auk_fgm_quadrature(g)
    pi2 = math.pi ** 2
    l1 = math.log1p(g)
    lm = math.log(abs(g))
    li = dilog_real(1.0 + g)
    lml1 = lm * l1
    return (
        g * (-29.0 + 6.0 * l1) / 108.0
        + (-13.0 + 3.0 * pi2 - 9.0 * l1 - 18.0 * lml1 - 18.0 * li) / (18.0 * g)
        + (-pi2 + 20.0 * l1 + 6.0 * lml1 + 6.0 * li) / (36.0 * g * g)
        + (167.0 - 6.0 * pi2 - 72.0 * l1 + 36.0 * lml1 + 36.0 * li) / 72.0
    )


def fgm_weighted_kernel(v, u, gamma: float):
    """``(1 - C + C log C) * c(v, u)`` for the FGM copula C and density c."""
    v = np.asarray(v, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    c = v * u * (1.0 + gamma * (1.0 - v) * (1.0 - u))
    dens = 1.0 + gamma * (1.0 - 2.0 * v) * (1.0 - 2.0 * u)
    return auk_kernel(c) * dens


def auk_fgm_quadrature(gamma: float) -> float:
    """Nested adaptive quadrature of the FGM AUK double integral."""
    g = _check_gamma(gamma)

    def kernel(v: float, u: float) -> float:
        c = v * u * (1.0 + g * (1.0 - v) * (1.0 - u))
        k = 1.0 - c + (c * math.log(c) if c > 0.0 else 0.0)
        return k * (1.0 + g * (1.0 - 2.0 * v) * (1.0 - 2.0 * u))

    def inner(u: float) -> float:
        val, _ = integrate.quad(kernel, 0.0, 1.0, args=(u,), epsabs=FGM_ATOL * 1e-2, epsrel=1e-12, limit=200)
        return val

    val, _ = integrate.quad(inner, 0.0, 1.0, epsabs=FGM_ATOL, epsrel=1e-12, limit=200)
    return val


def auk_fgm_components(gamma: float) -> tuple[float, float, float, float]:
    """``(AUK(g), AUK(-g), AUK(-g), AUK(g))``: reflecting one coordinate of
    an FGM pair flips the sign of its parameter."""
    a = auk_fgm_closed(gamma)
    b = auk_fgm_closed(-gamma)
    return (a, b, b, a)


@dataclass(frozen=True)
class MonteCarloEstimate:
    value: float
    stderr: float
    draws: int


def fgm_mc_estimate(gamma: float, n_draws: int, seed: int, chunk: int = 1_000_000) -> MonteCarloEstimate:
    """Mean of the weighted FGM kernel over independent uniform pairs."""
    g = _check_gamma(gamma)
    if n_draws < 1:
        raise ValueError("n_draws must be at least 1")
    rng = make_rng(seed)
    s1 = 0.0
    s2 = 0.0
    left = n_draws
    while left > 0:
        m = min(chunk, left)
        v = rng.random(m)
        u = rng.random(m)
        vals = fgm_weighted_kernel(v, u, g)
        s1 += float(vals.sum())
        s2 += float(np.dot(vals, vals))
        left -= m
    mean = s1 / n_draws
    var = max(s2 / n_draws - mean * mean, 0.0) * n_draws / max(n_draws - 1, 1)
    return MonteCarloEstimate(mean, math.sqrt(var / n_draws), n_draws)


def auk_fgm_mc(gamma: float, n_draws: int, seed: int) -> float:
    return fgm_mc_estimate(gamma, n_draws, seed).value


# --------------------------------------------------------------------------- #
# bivariate normal
# --------------------------------------------------------------------------- #

def dominated_counts(fit_x, fit_y, qx, qy) -> np.ndarray:
    """For every query point, the number of fit points strictly below it in
    both coordinates."""
    fit_x = np.asarray(fit_x, dtype=np.float64)
    qx = np.asarray(qx, dtype=np.float64)
    all_x = np.concatenate([fit_x, qx])
    all_y = np.concatenate([np.asarray(fit_y, dtype=np.float64), np.asarray(qy, dtype=np.float64)])
    joint = quadrant_counts(all_x, all_y)[0, fit_x.size:]
    own = quadrant_counts(qx, qy)[0]
    return joint - own


def _bvn_pairs(rho: float, n: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    x = standard_normals(rng, n)
    y = rho * x + math.sqrt(1.0 - rho * rho) * standard_normals(rng, n)
    return x, y


def auk_bvn_mc(rho: float, n_fit: int, n_eval: int, seed: int) -> float:
    """AUK of the bivariate normal by two-sample plug-in: the empirical
    joint CDF of ``n_fit`` draws is evaluated at ``n_eval`` fresh draws."""
    if not -1.0 < rho < 1.0:
        raise ValueError(f"|rho| must be < 1, got {rho}")
    if n_fit < 1 or n_eval < 1:
        raise ValueError("n_fit and n_eval must be positive")
    rng = make_rng(seed)
    fx, fy = _bvn_pairs(rho, n_fit, rng)
    ex, ey = _bvn_pairs(rho, n_eval, rng)
    h = dominated_counts(fx, fy, ex, ey) / n_fit
    return float(auk_kernel(h).mean())


@dataclass(frozen=True)
class McConfig:
    n_fit: int = 30_000
    n_eval: int = 5_000
    seed: int = 0


def bvn_components(abs_rho: float, config: McConfig = McConfig(), index: int = 0) -> tuple[float, ...]:
    """Four normal AUK components at correlation ``|rho|``.

    Reflecting X (or Y) maps panel 1 (or 2) onto panel 0 of a normal with
    correlation ``-rho``; reflecting both maps panel 3 onto panel 0 at
    ``rho``. Hence ``(a(r), a(-r), a(-r), a(r))`` with ``a`` the panel-0 AUK.
    """
    if abs_rho >= 1.0:
        return (0.25, 1.0, 1.0, 0.25)
    pos = auk_bvn_mc(abs_rho, config.n_fit, config.n_eval, replicate_rng(config.seed, 2 * index))
    neg = auk_bvn_mc(-abs_rho, config.n_fit, config.n_eval, replicate_rng(config.seed, 2 * index + 1))
    return (pos, neg, neg, pos)


def eta_curve(rho_grid: Iterable[float], config: McConfig = McConfig()) -> list[tuple[float, float]]:
    """Calibration table ``(|rho|, I_AUK)`` for the bivariate normal."""
    rows = []
    for i, r in enumerate(rho_grid):
        r = float(r)
        if not 0.0 <= r <= 1.0:
            raise ValueError(f"|rho| grid values must lie in [0, 1], got {r}")
        rows.append((r, i_auk_from_components(bvn_components(r, config, i))))
    return rows


def write_eta_csv(rows: Sequence[tuple[float, float]], path: str | os.PathLike) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["abs_rho", "i_auk"])
        for r, v in rows:
            w.writerow([repr(float(r)), repr(float(v))])


def fit_eta_inverse(rows: Sequence[tuple[float, float]], degree: int = 5) -> np.ndarray:
    """Least-squares polynomial (no constant term) mapping I_AUK to |rho|.

    Coefficients are returned lowest degree first.
    """
    i = np.array([v for _, v in rows])
    r = np.array([a for a, _ in rows])
    design = np.vstack([i ** p for p in range(1, degree + 1)]).T
    coef, *_ = np.linalg.lstsq(design, r, rcond=None)
    return coef

