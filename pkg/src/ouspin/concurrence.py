"""Lower bound on three-qubit concurrence from rotated complex conjugates.

For each bipartition ``ij|k`` and each of the six SO(4) generators ``L_j``
the rotation ``S = L_j ⊗ L_0`` (``L_0`` the SO(2) generator) defines
``rho~ = S rho* S``. The bipartite term is Wootters-like,
``C = max(0, l1 - l2 - l3 - l4)`` with ``l`` the square roots of the
eigenvalues of ``rho rho~`` in decreasing order, and

    tau3 = sqrt( sum over 3 bipartitions and 6 generators of C^2 / 3 ).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import PSD_FLOOR, as_density_matrix, hermitian_eigensystem, psd_sqrt


class Bipartition(enum.Enum):
    B12_3 = ((1, 2), 3)
    B13_2 = ((1, 3), 2)
    B23_1 = ((2, 3), 1)

    @property
    def pair(self) -> tuple[int, int]:
        return self.value[0]

    @property
    def single(self) -> int:
        return self.value[1]

    @property
    def label(self) -> str:
        return f"{self.pair[0]}{self.pair[1]}|{self.single}"


@dataclass(frozen=True)
class RotationOperator:
    j: int
    bip: Bipartition
    matrix: np.ndarray


def so4_generators() -> list[np.ndarray]:
    """``E_mn - E_nm`` for ``m < n`` in lexicographic order (1-based ``L_1..L_6``)."""
    gens = []
    for m, n in itertools.combinations(range(4), 2):
        g = np.zeros((4, 4))
        g[m, n], g[n, m] = 1.0, -1.0
        gens.append(g)
    return gens


def so2_generator() -> np.ndarray:
    return np.array([[0.0, 1.0], [-1.0, 0.0]])


def spin_permutation(order) -> np.ndarray:
    """Permutation matrix taking canonical ``|s1 s2 s3>`` to factor order ``order``.

    ``order`` lists spins (1-based) in the order they appear as tensor
    factors: ``P |s1 s2 s3> = |s_order[0] s_order[1] s_order[2]>``.
    """
    p = np.zeros((8, 8))
    for idx in range(8):
        bits = ((idx >> 2) & 1, (idx >> 1) & 1, idx & 1)
        b = [bits[o - 1] for o in order]
        p[4 * b[0] + 2 * b[1] + b[2], idx] = 1.0
    return p


@lru_cache(maxsize=None)
def _rotation_matrix(j: int, bip: Bipartition) -> np.ndarray:
    s = np.kron(so4_generators()[j - 1], so2_generator())
    p = spin_permutation(bip.pair + (bip.single,))
    m = p.T @ s @ p
    m.setflags(write=False)
    return m


def rotation_operator(j: int, bip: Bipartition) -> RotationOperator:
    if j not in range(1, 7):
        raise ValueError(f"generator index must be in 1..6, got {j}")
    return RotationOperator(j=j, bip=Bipartition(bip), matrix=_rotation_matrix(j, Bipartition(bip)))


def rotated_conjugate(rho, s: np.ndarray) -> np.ndarray:
    return s @ np.conj(rho) @ s


def _lambdas(m: np.ndarray, s: np.ndarray) -> np.ndarray:
    root = psd_sqrt(rotated_conjugate(m, s))
    h = root @ m @ root
    vals = hermitian_eigensystem(0.5 * (h + h.conj().T)).values[::-1][:4]
    if vals[-1] < PSD_FLOOR:
        raise ValueError(f"negative eigenvalue {vals[-1]:.3e} in the rotated product")
    return np.sqrt(np.clip(vals, 0.0, None))


def lambda_spectrum(rho, j: int, bip: Bipartition) -> np.ndarray:
    """The four square-rooted eigenvalues of ``rho rho~``, decreasing.

    Computed from the Hermitian matrix ``sqrt(rho~) rho sqrt(rho~)``, which
    has the same spectrum as ``rho rho~``.
    """
    m = as_density_matrix(rho, check_psd=False)
    return _lambdas(m, rotation_operator(j, bip).matrix)


def _concurrence_from_lambdas(lam: np.ndarray) -> float:
    return max(0.0, float(lam[0] - lam[1:].sum()))


def bipartite_concurrence(rho, j: int, bip: Bipartition) -> float:
    return _concurrence_from_lambdas(lambda_spectrum(rho, j, bip))


def concurrence_terms(rho) -> dict[tuple[Bipartition, int], float]:
    """All 18 bipartite terms keyed by ``(bipartition, j)``."""
    m = as_density_matrix(rho, check_psd=False)
    if m.shape != (8, 8):
        raise ValueError(f"expected an 8x8 state, got {m.shape}")
    return {
        (bip, j): _concurrence_from_lambdas(_lambdas(m, _rotation_matrix(j, bip)))
        for bip in Bipartition
        for j in range(1, 7)
    }


def tau3_lower_bound(rho) -> float:
    terms = concurrence_terms(rho)
    return float(np.sqrt(sum(c * c for c in terms.values()) / 3.0))
