"""
Decoherence factor of Ornstein-Uhlenbeck dephasing
===================================================

The coherence of each spin decays as mu(t) = exp(-Var[phase]/2). Here the
closed form is compared with its two limits and with a Monte Carlo average
over sampled noise paths.
"""

import numpy as np

from ouspin import NoiseParams, Regime, decoherence_mu, mc_dephasing_estimate

# slow noise: correlation time 1/gamma = 100 in units of 1/Gamma
params = NoiseParams(Gamma=1.0, gamma=0.01)
times = np.array([0.5, 2.0, 5.0, 10.0])

print(" t    exact     markov    nonmarkov  monte carlo")
for t in times:
    exact = decoherence_mu(t, params).mu
    markov = decoherence_mu(t, NoiseParams(1.0, 0.01, Regime.MARKOV)).mu
    slow = decoherence_mu(t, NoiseParams(1.0, 0.01, Regime.NONMARKOV)).mu
    est, se = mc_dephasing_estimate(t, params, n_traj=20_000, seed=1)
    print(f"{t:4.1f}  {exact:.6f}  {markov:.6f}  {slow:.6f}   {est:.4f} +- {se:.4f}")

# with gamma >> Gamma the noise is effectively white and the Markov form takes over
fast = NoiseParams(Gamma=1.0, gamma=100.0)
print("gamma=100, t=1:", decoherence_mu(1.0, fast).mu, "vs", np.exp(-0.5))
