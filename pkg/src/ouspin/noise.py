"""Ornstein-Uhlenbeck frequency noise and the single-spin decoherence factor.

Each spin sees an independent stationary OU frequency ``Omega(t)`` with
zero mean and covariance ``(Gamma*gamma/2) exp(-gamma |s - t|)``. The
accumulated phase is Gaussian, so the ensemble-averaged coherence of one
spin is ``mu(t) = exp(-Var[phase]/2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

MC_BLOCK = 4096


class Regime(str, enum.Enum):
    EXACT = "exact"
    MARKOV = "markov"
    NONMARKOV = "nonmarkov"


@dataclass(frozen=True)
class NoiseParams:
    """Coupling ``Gamma``, bandwidth ``gamma`` and which form of ``mu`` to use.

    ``gamma`` is ignored in the Markov regime.
    """

    Gamma: float
    gamma: float = 1.0
    regime: Regime = Regime.EXACT

    def __post_init__(self):
        object.__setattr__(self, "regime", Regime(self.regime))
        if not self.Gamma > 0:
            raise ValueError(f"Gamma must be positive, got {self.Gamma}")
        if self.regime is not Regime.MARKOV and not self.gamma > 0:
            raise ValueError(f"gamma must be positive in the {self.regime.value} regime")

    @property
    def correlation_time(self) -> float:
        return 1.0 / self.gamma


@dataclass(frozen=True)
class DecoherenceFactor:
    mu: float
    nu: float

    @classmethod
    def from_mu(cls, mu: float) -> "DecoherenceFactor":
        if not 0.0 <= mu <= 1.0:
            raise ValueError(f"mu must lie in [0, 1], got {mu}")
        return cls(mu=float(mu), nu=math.sqrt(max(0.0, 1.0 - mu * mu)))


@dataclass(frozen=True)
class OUTrajectory:
    times: np.ndarray
    omegas: np.ndarray
    phase: float


def correlation_beta(lag, p: NoiseParams):
    """Noise autocorrelation ``(Gamma*gamma/2) exp(-gamma |lag|)``."""
    return 0.5 * p.Gamma * p.gamma * np.exp(-p.gamma * np.abs(lag))


def phase_variance(t: float, p: NoiseParams) -> float:
    """Variance of the accumulated phase, ``Gamma (t + (e^{-gamma t} - 1)/gamma)``."""
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    return p.Gamma * (t + math.expm1(-p.gamma * t) / p.gamma)


def decoherence_mu(t: float, p: NoiseParams) -> DecoherenceFactor:
    """Single-spin coherence factor at time ``t`` in the regime of ``p``.

    Exact: ``exp[-(Gamma/2)(t + (e^{-gamma t} - 1)/gamma)]``;
    Markov: ``exp(-Gamma t / 2)``; non-Markov: ``exp(-gamma Gamma t^2 / 4)``.
    """
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    if p.regime is Regime.EXACT:
        mu = math.exp(-0.5 * phase_variance(t, p))
    elif p.regime is Regime.MARKOV:
        mu = math.exp(-0.5 * p.Gamma * t)
    else:
        mu = math.exp(-0.25 * p.gamma * p.Gamma * t * t)
    return DecoherenceFactor.from_mu(mu)


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))


def _ou_paths(rng, n, n_steps, dt, p: NoiseParams) -> np.ndarray:
    """Stationary OU paths of shape ``(n, n_steps + 1)`` via the exact AR(1) update."""
    sigma = math.sqrt(0.5 * p.Gamma * p.gamma)
    decay = math.exp(-p.gamma * dt)
    kick = sigma * math.sqrt(-math.expm1(-2.0 * p.gamma * dt))
    drive = rng.standard_normal((n, n_steps + 1))
    drive[:, 0] *= sigma
    drive[:, 1:] *= kick
    return lfilter([1.0], [1.0, -decay], drive, axis=1)


def _trapezoid_phase(omegas: np.ndarray, dt: float) -> np.ndarray:
    return dt * (omegas.sum(axis=-1) - 0.5 * (omegas[..., 0] + omegas[..., -1]))


def sample_trajectory(t: float, p: NoiseParams, n_steps: int = 1000, seed: int = 0) -> OUTrajectory:
    """One stationary OU frequency path on ``[0, t]`` and its accumulated phase."""
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    times = np.linspace(0.0, t, n_steps + 1)
    omegas = _ou_paths(_block_rng(seed, 0), 1, n_steps, t / n_steps, p)[0]
    return OUTrajectory(times=times, omegas=omegas, phase=float(_trapezoid_phase(omegas, t / n_steps)))


def mc_dephasing_estimate(
    t: float,
    p: NoiseParams,
    n_traj: int = 100_000,
    n_steps: int = 1000,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte Carlo estimate of ``mu(t)`` as the ensemble mean of ``cos(phase)``.

    Trajectories are drawn in blocks of ``MC_BLOCK``; block ``b`` uses its own
    Philox stream keyed by ``(seed, b)``, so the result depends only on the
    arguments and blocks could be evaluated in any order.

    Returns ``(estimate, std_error)``.
    """
    if p.regime is not Regime.EXACT:
        raise ValueError("Monte Carlo needs a finite-bandwidth OU process (regime 'exact')")
    if n_traj < 1000:
        raise ValueError(f"n_traj must be >= 1000, got {n_traj}")
    if n_steps < 100:
        raise ValueError(f"n_steps must be >= 100, got {n_steps}")
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    if t == 0:
        return 1.0, 0.0

    dt = t / n_steps
    samples = np.empty(n_traj)
    for b, start in enumerate(range(0, n_traj, MC_BLOCK)):
        n = min(MC_BLOCK, n_traj - start)
        omegas = _ou_paths(_block_rng(seed, b), n, n_steps, dt, p)
        samples[start:start + n] = np.cos(_trapezoid_phase(omegas, dt))
    # np.mean reduces pairwise
    est = float(np.mean(samples))
    err = float(np.std(samples, ddof=1) / math.sqrt(n_traj))
    return est, err
