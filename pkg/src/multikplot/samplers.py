"""Seeded generators for the simulation distributions.

All generators draw from numpy's PCG64 bit generator through
``Generator.random`` only; normal variates come from the Box-Muller
transform of those uniforms, so a given seed reproduces the same sample on
every platform.

Seeds may be an ``int`` or an existing ``numpy.random.Generator`` (the
latter is consumed in place). Replication loops derive one independent
stream per replicate with :func:`replicate_rng`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .sample import BivariateSample

Seed = Union[int, np.random.Generator]

FAMILIES = ("bvn", "fgm", "morgenstern", "plackett", "bvt5", "noise_ratio", "triangle", "circle")
_TESTED = {"morgenstern": (0.5, 5.0), "plackett": (1.0, 1.25, 2.0)}


class SamplerError(ValueError):
    pass


class UntestedParameterWarning(UserWarning):
    """Parameter outside the values the generation scheme was validated on."""


def make_rng(seed: Seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """Independent stream for replicate ``replicate`` of a run seeded with
    ``seed``; results do not depend on the order replicates are evaluated."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(replicate)])))


def uniforms(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.random(n)


def standard_normals(rng: np.random.Generator, n: int) -> np.ndarray:
    """Box-Muller: pairs of uniforms -> pairs of independent N(0, 1)."""
    m = (n + 1) // 2
    u1 = 1.0 - rng.random(m)  # (0, 1], keeps log finite
    u2 = rng.random(m)
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.empty(2 * m)
    z[0::2] = r * np.cos(2.0 * math.pi * u2)
    z[1::2] = r * np.sin(2.0 * math.pi * u2)
    return z[:n]


def _check_n(n: int) -> int:
    if n < 2:
        raise SamplerError(f"n must be at least 2, got {n}")
    return int(n)


def _flag_untested(family: str, value: float) -> None:
    if not any(math.isclose(value, v) for v in _TESTED[family]):
        warnings.warn(
            f"{family} parameter {value} is outside the validated set {_TESTED[family]}",
            UntestedParameterWarning,
            stacklevel=3,
        )


def sample_bvn(rho: float, n: int, seed: Seed) -> BivariateSample:
    """Standard bivariate normal with correlation ``rho``:
    ``Y = rho X + sqrt(1 - rho^2) xi``."""
    if not -1.0 <= rho <= 1.0:
        raise SamplerError(f"|rho| must be <= 1, got {rho}")
    n = _check_n(n)
    rng = make_rng(seed)
    x = standard_normals(rng, n)
    xi = standard_normals(rng, n)
    if abs(rho) == 1.0:
        y = rho * x
    else:
        y = rho * x + math.sqrt(1.0 - rho * rho) * xi
    return BivariateSample(x, y)


def fgm_conditional_inverse(v: np.ndarray, p: np.ndarray, gamma: float) -> np.ndarray:
    """Solve ``u + a u (1 - u) = p`` for u in [0, 1], ``a = gamma (1 - 2v)``.

    Uses the cancellation-free root ``2p / ((1 + a) + sqrt((1 + a)^2 - 4 a p))``.
    """
    a = gamma * (1.0 - 2.0 * v)
    b = 1.0 + a
    return 2.0 * p / (b + np.sqrt(b * b - 4.0 * a * p))


def sample_fgm(gamma: float, n: int, seed: Seed) -> BivariateSample:
    """Uniform-marginal FGM copula ``C(v, u) = vu{1 + gamma(1 - v)(1 - u)}``
    by conditional inversion."""
    if not -1.0 < gamma < 1.0:
        raise SamplerError(f"|gamma| must be < 1, got {gamma}")
    n = _check_n(n)
    rng = make_rng(seed)
    v = uniforms(rng, n)
    p = uniforms(rng, n)
    return BivariateSample(v, fgm_conditional_inverse(v, p, gamma))


def sample_morgenstern(alpha: float, n: int, seed: Seed) -> BivariateSample:
    if alpha <= 0:
        raise SamplerError(f"alpha must be positive, got {alpha}")
    _flag_untested("morgenstern", alpha)
    n = _check_n(n)
    rng = make_rng(seed)
    x = uniforms(rng, n)
    u = uniforms(rng, n)
    s = 2.0 * x - 1.0
    z = alpha * s - 1.0
    w = 1.0 - 2.0 * alpha * s + alpha * alpha * s * s + 4.0 * alpha * u * s
    if np.any(w < 0):
        j = int(np.flatnonzero(w < 0)[0])
        raise SamplerError(f"negative radicand W={w[j]} at draw {j} (x={x[j]}, u={u[j]})")
    y = 2.0 * u / (np.sqrt(w) - z)
    return BivariateSample(x, y)


def sample_plackett(psi: float, n: int, seed: Seed, formula: str = "printed") -> BivariateSample:
    """Plackett-type scheme with odds-ratio parameter ``psi``.

    ``formula="printed"`` (default) computes ``Y = W2 [W3 - (1 - 2U) W4^(1/2)] / 2``;
    this is the variant whose Kendall's tau matches the published simulation
    tables, although Y is not confined to [0, 1]. ``formula="conditional"``
    divides by ``2 W2`` instead, which is the exact conditional inverse of the
    Plackett copula (uniform marginals).
    """
    if psi <= 0:
        raise SamplerError(f"psi must be positive, got {psi}")
    if formula not in ("conditional", "printed"):
        raise ValueError(f"unknown Plackett formula {formula!r}")
    _flag_untested("plackett", psi)
    n = _check_n(n)
    rng = make_rng(seed)
    x = uniforms(rng, n)
    u = uniforms(rng, n)
    w1 = u * (1.0 - u)
    w2 = psi + w1 * (psi - 1.0) ** 2
    w3 = 2.0 * w1 * (psi * psi * x + 1.0 - x) + psi * (1.0 - 2.0 * w1)
    w4 = psi * (psi + 4.0 * (1.0 - psi) ** 2 * x * (1.0 - x) * w1)
    if np.any(w4 < 0):
        j = int(np.flatnonzero(w4 < 0)[0])
        raise SamplerError(f"negative radicand W4={w4[j]} at draw {j}")
    num = w3 - (1.0 - 2.0 * u) * np.sqrt(w4)
    y = num / (2.0 * w2) if formula == "conditional" else w2 * num / 2.0
    return BivariateSample(x, y)


def sample_bvt5(n: int, seed: Seed) -> BivariateSample:
    """Bivariate t with 5 degrees of freedom and scale [[1, 1], [1, 4]]."""
    n = _check_n(n)
    rng = make_rng(seed)
    z1 = standard_normals(rng, n)
    z2 = standard_normals(rng, n)
    chi2 = (standard_normals(rng, 5 * n).reshape(5, n) ** 2).sum(axis=0)
    scale = np.sqrt(chi2 / 5.0)
    # Cholesky factor of [[1, 1], [1, 4]] is [[1, 0], [1, sqrt 3]]
    return BivariateSample(z1 / scale, (z1 + math.sqrt(3.0) * z2) / scale)


def sample_noise_ratio(n: int, seed: Seed) -> BivariateSample:
    """``(X, eps / X^2)`` with X, eps independent N(5, 1)."""
    n = _check_n(n)
    rng = make_rng(seed)
    x = 5.0 + standard_normals(rng, n)
    eps = 5.0 + standard_normals(rng, n)
    return BivariateSample(x, eps / (x * x))


def sample_triangle(n: int, seed: Seed) -> BivariateSample:
    """Uniform on the two upper sides of the triangle (-1,0), (0,1), (1,0)."""
    n = _check_n(n)
    rng = make_rng(seed)
    x = 2.0 * uniforms(rng, n) - 1.0
    return BivariateSample(x, 1.0 - np.abs(x))


def sample_circle(n: int, seed: Seed) -> BivariateSample:
    """Uniform on the unit circle."""
    n = _check_n(n)
    rng = make_rng(seed)
    theta = 2.0 * math.pi * uniforms(rng, n)
    return BivariateSample(np.cos(theta), np.sin(theta))


@dataclass(frozen=True)
class SamplerSpec:
    family: str
    n: int
    seed: int = 0
    param: float | None = None
    options: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise SamplerError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        needs = self.family in ("bvn", "fgm", "morgenstern", "plackett")
        if needs and self.param is None:
            raise SamplerError(f"family {self.family!r} needs a parameter")
        if self.n < 2:
            raise SamplerError(f"n must be at least 2, got {self.n}")

    def draw(self, seed: Seed | None = None) -> BivariateSample:
        s = self.seed if seed is None else seed
        fn = _DISPATCH[self.family]
        return fn(self.param, self.n, s, **self.options)

    def replicates(self, reps: int):
        for r in range(reps):
            yield self.draw(replicate_rng(self.seed, r))


_DISPATCH: dict[str, Callable[..., BivariateSample]] = {
    "bvn": lambda p, n, s: sample_bvn(p, n, s),
    "fgm": lambda p, n, s: sample_fgm(p, n, s),
    "morgenstern": lambda p, n, s: sample_morgenstern(p, n, s),
    "plackett": lambda p, n, s, **kw: sample_plackett(p, n, s, **kw),
    "bvt5": lambda p, n, s: sample_bvt5(n, s),
    "noise_ratio": lambda p, n, s: sample_noise_ratio(n, s),
    "triangle": lambda p, n, s: sample_triangle(n, s),
    "circle": lambda p, n, s: sample_circle(n, s),
}


def draw(spec: SamplerSpec) -> BivariateSample:
    return spec.draw()
