"""GHZ and W initial states, their dephased forms, and closed-form curves."""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

import numpy as np

W_DISCORD_AT_ZERO = 1.5


class Scenario(str, enum.Enum):
    GHZ = "ghz"
    W = "w"


class AnalyticPoint(NamedTuple):
    tau3_ratio: float
    discord: float
    entropy: float | None


def _check_mu(mu: float) -> float:
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    return float(mu)


def _xlog2x(x: float) -> float:
    return x * math.log2(x) if x > 0 else 0.0


def ghz_vector() -> np.ndarray:
    v = np.zeros(8, dtype=complex)
    v[0] = v[7] = 1 / math.sqrt(2)
    return v


def w_vector() -> np.ndarray:
    """``(|100> + |010> + sqrt(2)|001>) / 2``."""
    v = np.zeros(8, dtype=complex)
    v[4] = v[2] = 0.5
    v[1] = math.sqrt(2) / 2
    return v


def ghz_state() -> np.ndarray:
    v = ghz_vector()
    return np.outer(v, v.conj())


def w_state() -> np.ndarray:
    v = w_vector()
    return np.outer(v, v.conj())


def ghz_evolved(mu: float) -> np.ndarray:
    """Dephased GHZ state written out: populations 1/2, coherence ``mu^3/2``."""
    mu = _check_mu(mu)
    rho = np.zeros((8, 8), dtype=complex)
    rho[0, 0] = rho[7, 7] = 0.5
    rho[0, 7] = rho[7, 0] = 0.5 * mu ** 3
    return rho


def w_evolved(mu: float) -> np.ndarray:
    """Dephased W state written out entry by entry (every coherence gets ``mu^2``)."""
    mu = _check_mu(mu)
    m2 = mu * mu
    r2 = math.sqrt(2)
    rho = np.zeros((8, 8), dtype=complex)
    rho[1, 1] = 2.0
    rho[2, 2] = rho[4, 4] = 1.0
    rho[1, 2] = rho[2, 1] = rho[1, 4] = rho[4, 1] = r2 * m2
    rho[2, 4] = rho[4, 2] = m2
    return rho / 4.0


def initial_state(name: Scenario) -> np.ndarray:
    return ghz_state() if Scenario(name) is Scenario.GHZ else w_state()


def evolved_state(name: Scenario, mu: float) -> np.ndarray:
    return ghz_evolved(mu) if Scenario(name) is Scenario.GHZ else w_evolved(mu)


def ghz_discord(mu: float) -> float:
    """``[(1+m) log2(1+m) + (1-m) log2(1-m)] / 2`` with ``m = mu^3``.

    Rewritten as ``log(1-m^2) + 2m artanh(m)`` so small ``m``, where the
    two (1 +- m) log terms nearly cancel, keeps full relative accuracy.
    """
    m = _check_mu(mu) ** 3
    if m == 1.0:
        return 1.0
    return 0.5 * (math.log1p(-m * m) + 2 * m * math.atanh(m)) / math.log(2)


def ghz_entropy(mu: float) -> float:
    return 1.0 - ghz_discord(mu)


def w_discord_printed(mu: float) -> float:
    """Discord of the dephased W state from its closed form, term by term (unnormalized)."""
    m2 = _check_mu(mu) ** 2
    root = math.sqrt(1 - 2 * m2 + 17 * m2 * m2)
    return (
        -(5 + m2) / 4
        + _xlog2x(1 - m2) / 4
        + (_xlog2x(3 + m2 - root) + _xlog2x(3 + m2 + root)) / 8
    )


def w_eigenvalues(mu: float) -> tuple[float, float, float]:
    m2 = _check_mu(mu) ** 2
    root = math.sqrt(1 - 2 * m2 + 17 * m2 * m2)
    return (1 - m2) / 4, (3 + m2 - root) / 8, (3 + m2 + root) / 8


def w_discord_from_entropy(mu: float) -> float:
    """``3/2 - S(rho_W)`` from the closed-form spectrum of the dephased W state."""
    return W_DISCORD_AT_ZERO + sum(_xlog2x(x) for x in w_eigenvalues(mu))


def analytic_curves(name: Scenario, mu: float, normalized: bool = True) -> AnalyticPoint:
    """Closed-form ``tau3(t)/tau3(0)``, discord and (GHZ only) entropy at ``mu``.

    ``normalized`` divides the W discord by its ``mu = 1`` value 3/2 so both
    scenarios start at 1; the GHZ discord already does.
    """
    mu = _check_mu(mu)
    if Scenario(name) is Scenario.GHZ:
        return AnalyticPoint(mu ** 3, ghz_discord(mu), ghz_entropy(mu))
    d = w_discord_printed(mu)
    return AnalyticPoint(mu ** 2, d / W_DISCORD_AT_ZERO if normalized else d, None)
