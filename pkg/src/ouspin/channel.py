"""Local dephasing channel on three spins in Kraus form."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import as_density_matrix, tensor_product
from .noise import DecoherenceFactor

COMPLETENESS_TOL = 1e-12

# factor pattern of K1..K8: 1 -> F1, 2 -> F2 on spins (1, 2, 3)
KRAUS_PATTERN = (
    (1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1),
    (1, 2, 2), (2, 1, 2), (2, 2, 1), (2, 2, 2),
)


@dataclass(frozen=True)
class KrausSet:
    ops: tuple

    def completeness_error(self) -> float:
        total = sum(k.conj().T @ k for k in self.ops)
        return float(np.max(np.abs(total - np.eye(total.shape[0]))))


def single_spin_factors(f: DecoherenceFactor) -> tuple[np.ndarray, np.ndarray]:
    """``F1 = diag(mu, 1)`` and ``F2 = diag(nu, 0)``."""
    return np.diag([f.mu, 1.0]).astype(complex), np.diag([f.nu, 0.0]).astype(complex)


def build_kraus(f: DecoherenceFactor) -> KrausSet:
    f1, f2 = single_spin_factors(f)
    pick = {1: f1, 2: f2}
    return KrausSet(ops=tuple(tensor_product(*(pick[i] for i in pat)) for pat in KRAUS_PATTERN))


def apply_channel(rho, ks: KrausSet) -> np.ndarray:
    """``sum_i K_i rho K_i^dag``; rejects a Kraus set that is not trace preserving."""
    m = as_density_matrix(rho, check_psd=False)
    if m.shape != (8, 8):
        raise ValueError(f"apply_channel expects an 8x8 state, got {m.shape}")
    err = ks.completeness_error()
    if err > COMPLETENESS_TOL:
        raise ValueError(f"Kraus set is not complete: max deviation {err:.3e}")
    return sum(k @ m @ k.conj().T for k in ks.ops)


def hamming_matrix(n_spins: int = 3) -> np.ndarray:
    idx = np.arange(2 ** n_spins)
    x = idx[:, None] ^ idx[None, :]
    return np.array([[bin(v).count("1") for v in row] for row in x])


_HAMMING = hamming_matrix()


def dephase_by_hamming(rho, mu: float) -> np.ndarray:
    """Fast path of the channel: ``rho_ab -> mu^h(a,b) rho_ab``."""
    m = as_density_matrix(rho, check_psd=False)
    if m.shape != (8, 8):
        raise ValueError(f"dephase_by_hamming expects an 8x8 state, got {m.shape}")
    return m * np.power(float(mu), _HAMMING)


def dephase(rho, f: DecoherenceFactor) -> np.ndarray:
    return apply_channel(rho, build_kraus(f))
