"""Quantum correlations of three spins under local Ornstein-Uhlenbeck dephasing."""

from .channel import KrausSet, apply_channel, build_kraus, dephase_by_hamming
from .concurrence import Bipartition, bipartite_concurrence, lambda_spectrum, tau3_lower_bound
from .discord import MeasurementAngles, OptimizerConfig, global_discord, gqd_objective, measured_state
from .linalg import hermitian_eigensystem, partial_trace, psd_sqrt, tensor_product, von_neumann_entropy
from .noise import DecoherenceFactor, NoiseParams, Regime, decoherence_mu, mc_dephasing_estimate
from .scenarios import Scenario, analytic_curves, ghz_evolved, ghz_state, w_evolved, w_state

__version__ = "0.1.0"
