"""
Figure curves: memory prolongs correlations
===========================================

Each panel sweeps Gamma t from 0 to 6 with Gamma = 1. Panels "a" are
memoryless, panels "b" use gamma = 0.01. The same data is available from
the command line with ``ouspin figure fig1a``.
"""

from ouspin.sweep import figure_spec, run_sweep

rows = {which: run_sweep(figure_spec(which, points=7)) for which in ("fig1a", "fig1b", "fig2a", "fig2b")}

for scenario, fast, slow in (("GHZ", "fig1a", "fig1b"), ("W", "fig2a", "fig2b")):
    print(f"{scenario}: Gamma t | tau3 Markov  tau3 memory | discord Markov  discord memory")
    for a, b in zip(rows[fast], rows[slow]):
        print(f"  {a['Gamma_t']:4.1f}  | {a['tau3_ratio_numeric']:.3e}  {b['tau3_ratio_numeric']:.6f} "
              f"| {a['discord_numeric']:.3e}  {b['discord_numeric']:.6f}")
