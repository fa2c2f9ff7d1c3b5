"""Real dilogarithm on (0, 2]."""

import math

PI2_6 = math.pi ** 2 / 6.0


def _li2_series(z: float) -> float:
    # sum z^k / k^2; used only for 0 < z <= 1/2, so terms shrink like 2^-k
    total = 0.0
    term = z
    k = 1
    while True:
        inc = term / (k * k)
        total += inc
        if inc < 1e-17 * total:
            return total
        k += 1
        term *= z


def _li2_unit(z: float) -> float:
    """Li2 on (0, 1]."""
    if z == 1.0:
        return PI2_6
    if z <= 0.5:
        return _li2_series(z)
    # reflection: Li2(z) + Li2(1 - z) = pi^2/6 - log z log(1 - z)
    return PI2_6 - math.log(z) * math.log1p(-z) - _li2_series(1.0 - z)


def dilog_real(z: float) -> float:
    """Real part of the principal dilogarithm ``Li2(z)`` for ``0 < z <= 2``.

    For ``z > 1`` the inversion identity
    ``Re Li2(z) = pi^2/3 - log(z)^2 / 2 - Li2(1/z)`` is used.
    """
    z = float(z)
    if not 0.0 < z <= 2.0:
        raise ValueError(f"dilog_real is defined here for 0 < z <= 2, got {z}")
    if z <= 1.0:
        return _li2_unit(z)
    lz = math.log(z)
    return 2.0 * PI2_6 - 0.5 * lz * lz - _li2_unit(1.0 / z)
