"""Self-verification checks run by ``ouspin verify``.

Each check compares a numeric route (Kraus channel, concurrence bound,
discord optimizer, Monte Carlo) with the closed form it should reproduce.
``tamper`` shifts the ``mu`` fed to the numeric routes; any nonzero value
of order 1e-3 must make the report fail.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from scipy.integrate import dblquad

from .channel import apply_channel, build_kraus
from .concurrence import tau3_lower_bound
from .discord import MeasurementAngles, OptimizerConfig, global_discord, gqd_objective
from .linalg import von_neumann_entropy
from .noise import (
    DecoherenceFactor,
    NoiseParams,
    Regime,
    correlation_beta,
    decoherence_mu,
    mc_dephasing_estimate,
    phase_variance,
)
from .scenarios import (
    W_DISCORD_AT_ZERO,
    Scenario,
    evolved_state,
    ghz_discord,
    ghz_entropy,
    initial_state,
    w_discord_printed,
)
from .sweep import FIGURE_PANELS, figure_spec, run_sweep

MU_GRID_9 = np.round(np.arange(1, 10) / 10, 12)
MU_GRID_50 = np.linspace(0.0, 1.0, 50)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    deviation: float
    tolerance: float
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: deviation {self.deviation:.3e} (tol {self.tolerance:.1e}, {self.seconds:.2f} s)"


def _numeric_state(name: Scenario, mu: float, tamper: float) -> np.ndarray:
    f = DecoherenceFactor.from_mu(min(1.0, max(0.0, mu + tamper)))
    return apply_channel(initial_state(name), build_kraus(f))


def check_channel(tamper: float = 0.0) -> float:
    dev = 0.0
    for mu in MU_GRID_50:
        ks = build_kraus(DecoherenceFactor.from_mu(mu))
        dev = max(dev, ks.completeness_error())
        for name in Scenario:
            diff = _numeric_state(name, mu, tamper) - evolved_state(name, mu)
            dev = max(dev, float(np.max(np.abs(diff))))
    return dev


def check_tau3_scaling(tamper: float = 0.0) -> float:
    dev = 0.0
    for name, power in ((Scenario.GHZ, 3), (Scenario.W, 2)):
        t0 = tau3_lower_bound(initial_state(name))
        for mu in MU_GRID_9:
            ratio = tau3_lower_bound(_numeric_state(name, mu, tamper)) / t0
            dev = max(dev, abs(ratio - mu ** power))
    return dev


def check_discord(cfg: OptimizerConfig, tamper: float = 0.0) -> tuple[float, float]:
    """Largest |numeric - closed form| and largest excess over the sigma_z objective."""
    dev = excess = 0.0
    for name, exact in ((Scenario.GHZ, ghz_discord), (Scenario.W, w_discord_printed)):
        for mu in MU_GRID_9:
            rho = _numeric_state(name, mu, tamper)
            res = global_discord(rho, cfg)
            dev = max(dev, abs(res.value - exact(mu)))
            excess = max(excess, res.value - gqd_objective(rho, MeasurementAngles.sigma_z()))
    return dev, excess


def check_entropies(tamper: float = 0.0) -> float:
    dev = 0.0
    for mu in MU_GRID_50:
        s_ghz = von_neumann_entropy(_numeric_state(Scenario.GHZ, mu, tamper))
        s_w = von_neumann_entropy(_numeric_state(Scenario.W, mu, tamper))
        dev = max(dev, abs(s_ghz - ghz_entropy(mu)), abs(W_DISCORD_AT_ZERO - s_w - w_discord_printed(mu)))
    return dev


def quadrature_variance(t: float, p: NoiseParams) -> float:
    """``int_0^t int_0^t beta(s - u) ds du`` by adaptive 2-D quadrature on the lower triangle."""
    val, _ = dblquad(lambda u, s: correlation_beta(s - u, p), 0.0, t, 0.0, lambda s: s,
                     epsabs=1e-13, epsrel=1e-13)
    return 2.0 * val


def check_regimes() -> tuple[float, float, float]:
    t = 1.0
    exact_fast = decoherence_mu(t, NoiseParams(1.0, 100.0, Regime.EXACT)).mu
    markov = decoherence_mu(t, NoiseParams(1.0, 100.0, Regime.MARKOV)).mu
    exact_slow = decoherence_mu(t, NoiseParams(1.0, 0.01, Regime.EXACT)).mu
    nonmarkov = decoherence_mu(t, NoiseParams(1.0, 0.01, Regime.NONMARKOV)).mu
    quad = 0.0
    for gamma in (0.01, 1.0, 100.0):
        p = NoiseParams(1.0, gamma)
        for tt in (0.5, 2.0, 10.0):
            quad = max(quad, abs(quadrature_variance(tt, p) - phase_variance(tt, p)))
    return abs(exact_fast - markov), abs(exact_slow - nonmarkov), quad


def check_monte_carlo(n_traj: int, seed: int = 0, tamper: float = 0.0) -> tuple[float, float]:
    """Largest |z-score| and largest standard error over t in {2, 5, 10}."""
    p = NoiseParams(1.0, 0.01, Regime.EXACT)
    z = err = 0.0
    for t in (2.0, 5.0, 10.0):
        est, se = mc_dephasing_estimate(t, p, n_traj=n_traj, seed=seed)
        z = max(z, abs(est - (decoherence_mu(t, p).mu + tamper)) / se)
        err = max(err, se)
    return z, err


def figure_margin(panels: dict[str, list[dict]]) -> float:
    """Largest signed violation of the figure claims; negative means all hold.

    Claims: intercepts equal 1 (within 1e-9), every curve strictly decreases,
    GHZ discord stays below GHZ entanglement for mu in (0, 1), and each
    memory panel lies strictly above its memoryless partner for Gamma t in
    (0, 6].
    """
    margins = []
    cols = ("tau3_ratio_numeric", "tau3_ratio_analytic", "discord_numeric", "discord_analytic")
    for rows in panels.values():
        for c in cols:
            v = np.array([r[c] for r in rows], dtype=float)
            margins.append(abs(v[0] - 1.0) - 1e-9)
            margins.append(float(np.max(np.diff(v))))
    for r in panels["fig1a"] + panels["fig1b"]:
        if 0.0 < r["mu"] < 1.0:
            margins.append(r["discord_numeric"] - r["tau3_ratio_numeric"])
            margins.append(r["discord_analytic"] - r["tau3_ratio_analytic"])
    for slow, fast in (("fig1b", "fig1a"), ("fig2b", "fig2a")):
        for rs, rf in zip(panels[slow], panels[fast], strict=True):
            if 0.0 < rs["Gamma_t"] <= 6.0 + 1e-12:
                margins.extend(rf[c] - rs[c] for c in cols)
    return max(margins)


def figure_panels() -> dict[str, list[dict]]:
    return {which: run_sweep(figure_spec(which)) for which in FIGURE_PANELS}


def run_checks(level: str = "fast", tamper: float = 0.0, seed: int = 0) -> list[Check]:
    """Run every acceptance check; ``level='full'`` uses 10^5 Monte Carlo trajectories."""
    if level not in ("fast", "full"):
        raise ValueError(f"level must be 'fast' or 'full', got {level!r}")
    out = []

    def timed(fn, *args):
        t0 = time.perf_counter()
        res = fn(*args)
        return res, time.perf_counter() - t0

    dev, dt = timed(check_channel, tamper)
    out.append(Check("channel completeness and closed-form states", dev <= 1e-12, dev, 1e-12, dt))
    dev, dt = timed(check_tau3_scaling, tamper)
    out.append(Check("tau3 scaling mu^3 (GHZ) and mu^2 (W)", dev <= 1e-9, dev, 1e-9, dt))
    (dev, excess), dt = timed(check_discord, OptimizerConfig(), tamper)
    out.append(Check("global discord vs closed forms", dev <= 1e-6, dev, 1e-6, dt))
    out.append(Check("optimizer not above the sigma_z objective", excess <= 1e-9, max(excess, 0.0), 1e-9))
    dev, dt = timed(check_entropies, tamper)
    out.append(Check("entropy identities", dev <= 1e-10, dev, 1e-10, dt))
    (markov, nonmarkov, quad), dt = timed(check_regimes)
    out.append(Check("exact vs Markov limit (gamma=100, t=1)", markov <= 0.01, markov, 0.01, dt))
    out.append(Check("exact vs non-Markov limit (gamma=0.01, t=1)", nonmarkov <= 0.01, nonmarkov, 0.01))
    out.append(Check("phase variance vs 2-D quadrature", quad <= 1e-8, quad, 1e-8))
    n_traj = 100_000 if level == "full" else 10_000
    (z, err), dt = timed(check_monte_carlo, n_traj, seed, tamper)
    out.append(Check(f"Monte Carlo ({n_traj} trajectories) within 3 standard errors", z <= 3.0, z, 3.0, dt))
    out.append(Check("Monte Carlo standard error", err <= 0.005, err, 0.005))
    margin, dt = timed(lambda: figure_margin(figure_panels()))
    out.append(Check("figure curves: intercepts, decay, ordering", margin < 0.0, margin, 0.0, dt))
    return out


def report(checks: list[Check]) -> str:
    lines = [c.line() for c in checks]
    n_fail = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n"

