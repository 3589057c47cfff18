"""Time sweeps of the correlation measures and figure-panel data."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .channel import build_kraus, apply_channel
from .concurrence import tau3_lower_bound
from .discord import REDUCED_BUDGET, OptimizerConfig, global_discord
from .noise import NoiseParams, Regime, decoherence_mu
from .scenarios import W_DISCORD_AT_ZERO, Scenario, analytic_curves, initial_state

CSV_FIELDS = (
    "t",
    "Gamma_t",
    "mu",
    "tau3_ratio_numeric",
    "tau3_ratio_analytic",
    "discord_numeric",
    "discord_analytic",
)
MEASURES = ("tau3", "discord")


@dataclass(frozen=True)
class SweepSpec:
    scenario: Scenario = Scenario.GHZ
    regime: Regime = Regime.MARKOV
    Gamma: float = 1.0
    gamma: float = 0.01
    t_max: float = 10.0
    points: int = 101
    measures: tuple[str, ...] = MEASURES
    discord_config: OptimizerConfig = field(default_factory=lambda: REDUCED_BUDGET)
    normalized: bool = True
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "scenario", Scenario(self.scenario))
        object.__setattr__(self, "regime", Regime(self.regime))
        object.__setattr__(self, "measures", tuple(self.measures))
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        if not self.t_max > 0:
            raise ValueError(f"t_max must be positive, got {self.t_max}")
        bad = set(self.measures) - set(MEASURES)
        if bad or not self.measures:
            raise ValueError(f"measures must be a non-empty subset of {MEASURES}, got {self.measures}")
        NoiseParams(self.Gamma, self.gamma, self.regime)

    @property
    def noise(self) -> NoiseParams:
        return NoiseParams(self.Gamma, self.gamma, self.regime)

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.points)


def sweep_point(spec: SweepSpec, t: float, tau3_initial: float | None = None) -> dict:
    """One row: the dephased state is built through the Kraus channel."""
    f = decoherence_mu(t, spec.noise)
    rho = apply_channel(initial_state(spec.scenario), build_kraus(f))
    exact = analytic_curves(spec.scenario, f.mu, spec.normalized)
    row = dict.fromkeys(CSV_FIELDS)
    row.update(t=float(t), Gamma_t=spec.Gamma * float(t), mu=f.mu)
    if "tau3" in spec.measures:
        if tau3_initial is None:
            tau3_initial = tau3_lower_bound(initial_state(spec.scenario))
        row["tau3_ratio_numeric"] = tau3_lower_bound(rho) / tau3_initial
        row["tau3_ratio_analytic"] = exact.tau3_ratio
    if "discord" in spec.measures:
        d = global_discord(rho, spec.discord_config).value
        if spec.scenario is Scenario.W and spec.normalized:
            d /= W_DISCORD_AT_ZERO
        row["discord_numeric"] = d
        row["discord_analytic"] = exact.discord
    return row


def run_sweep(spec: SweepSpec) -> list[dict]:
    tau0 = tau3_lower_bound(initial_state(spec.scenario)) if "tau3" in spec.measures else None
    return [sweep_point(spec, t, tau0) for t in spec.times()]


def _fmt(x) -> str:
    return "" if x is None else format(x, ".12g")


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in rows:
        w.writerow([_fmt(r[k]) for k in CSV_FIELDS])
    return buf.getvalue()


def rows_to_json(rows) -> str:
    # floats go through the same 12-digit rounding as the CSV
    out = [{k: (None if r[k] is None else float(_fmt(r[k]))) for k in CSV_FIELDS} for r in rows]
    return json.dumps(out, indent=1) + "\n"


FIGURE_PANELS = {
    "fig1a": (Scenario.GHZ, Regime.MARKOV),
    "fig1b": (Scenario.GHZ, Regime.NONMARKOV),
    "fig2a": (Scenario.W, Regime.MARKOV),
    "fig2b": (Scenario.W, Regime.NONMARKOV),
}


def figure_spec(which: str, t_max: float = 6.0, points: int = 61, **overrides) -> SweepSpec:
    """Parameters of a figure panel: Gamma = 1, and gamma = 0.01 for the memory panels."""
    if which not in FIGURE_PANELS:
        raise ValueError(f"unknown panel {which!r}; choose from {sorted(FIGURE_PANELS)}")
    scenario, regime = FIGURE_PANELS[which]
    return SweepSpec(scenario=scenario, regime=regime, Gamma=1.0, gamma=0.01,
                     t_max=t_max, points=points, **overrides)


def gnuplot_script(csv_name: str, title: str) -> str:
    return f"""# renders entanglement (solid) and discord (dashed) from {csv_name}
set datafile separator ","
set key autotitle columnhead top right
set xlabel "Gamma t"
set title "{title}"
set yrange [0:1.05]
plot "{csv_name}" using 2:5 with lines lw 2 lc rgb "blue" title "entanglement (tau3 ratio)", \\
     "{csv_name}" using 2:7 with lines lw 2 dt 2 lc rgb "red" title "discord", \\
     "{csv_name}" using 2:4 with points pt 7 ps 0.4 lc rgb "blue" title "tau3 numeric", \\
     "{csv_name}" using 2:6 with points pt 6 ps 0.4 lc rgb "red" title "discord numeric"
pause -1
"""
