"""
Concurrence bound of dephased GHZ and W states
===============================================

The three-spin bound tau3 is assembled from 18 bipartite terms. Under local
dephasing it shrinks as mu^3 for GHZ and as mu^2 for W.
"""

import numpy as np

from ouspin import DecoherenceFactor, apply_channel, build_kraus, ghz_state, tau3_lower_bound, w_state

tau_ghz, tau_w = tau3_lower_bound(ghz_state()), tau3_lower_bound(w_state())
print(f"tau3 of the pure states: GHZ {tau_ghz:.12f}, W {tau_w:.12f}")

for mu in np.linspace(1.0, 0.2, 5):
    ks = build_kraus(DecoherenceFactor.from_mu(mu))
    r_ghz = tau3_lower_bound(apply_channel(ghz_state(), ks)) / tau_ghz
    r_w = tau3_lower_bound(apply_channel(w_state(), ks)) / tau_w
    print(f"mu={mu:.2f}  GHZ {r_ghz:.6f} (mu^3 {mu**3:.6f})  W {r_w:.6f} (mu^2 {mu**2:.6f})")
