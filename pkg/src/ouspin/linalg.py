"""Dense complex matrix kernel for 1-, 2- and 3-spin operators.

Basis convention: computational basis ``|abc>`` with spin 1 most
significant, so the index of ``|abc>`` is ``4a + 2b + c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numba
import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_FLOOR = -1e-10
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 50


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi eigensolver exhausts its sweep budget."""


@dataclass(frozen=True)
class EigenSystem:
    values: np.ndarray   # ascending, real
    vectors: np.ndarray  # eigenvectors as columns


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a finite 2-D complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def is_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    h = np.asarray(h)
    return h.shape[0] == h.shape[1] and np.max(np.abs(h - h.conj().T), initial=0.0) <= tol


def as_density_matrix(rho, check_psd: bool = True) -> np.ndarray:
    """Validate ``rho`` as a density matrix of 1, 2 or 3 spins.

    Raises ``ValueError`` if ``rho`` is not square of dimension 2, 4 or 8,
    not Hermitian, not unit trace, or (with ``check_psd``) has an
    eigenvalue below ``PSD_FLOOR``.
    """
    m = as_matrix(rho)
    if m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4, 8):
        raise ValueError(f"density matrix must be 2x2, 4x4 or 8x8, got {m.shape}")
    if not is_hermitian(m):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(m) - 1.0) > TRACE_TOL:
        raise ValueError(f"density matrix trace is {np.trace(m).real:.3e}, expected 1")
    if check_psd:
        lo = hermitian_eigensystem(m).values[0]
        if lo < PSD_FLOOR:
            raise ValueError(f"density matrix has negative eigenvalue {lo:.3e}")
    return m


def tensor_product(*mats) -> np.ndarray:
    """Kronecker product, ``(a⊗b)[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``."""
    if not mats:
        raise ValueError("tensor_product needs at least one factor")
    return reduce(np.kron, (as_matrix(m) for m in mats))


def partial_trace(rho, keep) -> np.ndarray:
    """Reduced state of a 3-spin density matrix on the spins in ``keep``.

    Spins are labelled 1, 2, 3. ``keep`` must be a non-empty proper subset.
    """
    m = as_matrix(rho)
    if m.shape != (8, 8):
        raise ValueError(f"partial_trace expects an 8x8 matrix, got {m.shape}")
    keep = sorted(set(keep))
    if not keep or len(keep) == 3 or any(k not in (1, 2, 3) for k in keep):
        raise ValueError(f"keep must be a non-empty proper subset of {{1, 2, 3}}, got {keep}")
    # ket indices a,b,c and bra indices d,e,f
    letters_ket, letters_bra = "abc", "def"
    bra = list(letters_bra)
    for s in (1, 2, 3):
        if s not in keep:
            bra[s - 1] = letters_ket[s - 1]
    out = "".join(letters_ket[k - 1] for k in keep) + "".join(letters_bra[k - 1] for k in keep)
    red = np.einsum(f"{letters_ket}{''.join(bra)}->{out}", m.reshape((2,) * 6))
    d = 2 ** len(keep)
    return red.reshape(d, d)


@numba.njit(cache=True)
def _jacobi(a, tol, max_sweeps):
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = max(1.0, np.sqrt(np.sum(np.abs(a) ** 2)))
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += abs(a[p, q]) ** 2
        if np.sqrt(off) <= tol * scale:
            return a, v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                ph = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # G = diag(1, conj(ph)) @ [[c, s], [-s, c]] on columns p, q
                g_pp = c
                g_pq = s
                g_qp = -s * np.conj(ph)
                g_qq = c * np.conj(ph)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * g_pp + akq * g_qp
                    a[k, q] = akp * g_pq + akq * g_qq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(g_pp) * apk + np.conj(g_qp) * aqk
                    a[q, k] = np.conj(g_pq) * apk + np.conj(g_qq) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * g_pp + vkq * g_qp
                    v[k, q] = vkp * g_pq + vkq * g_qq
    return a, v, -1


def hermitian_eigensystem(h) -> EigenSystem:
    """Full spectrum of a Hermitian matrix by cyclic complex Jacobi rotations.

    Converged when the off-diagonal Frobenius norm falls to
    ``JACOBI_TOL * max(1, ||h||_F)``. Raises ``ValueError`` for non-Hermitian
    input and ``ConvergenceError`` after ``JACOBI_MAX_SWEEPS`` sweeps.
    """
    m = as_matrix(h)
    if m.shape[0] != m.shape[1] or m.shape[0] > 8:
        raise ValueError(f"expected a square matrix of dimension <= 8, got {m.shape}")
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian")
    a = 0.5 * (m + m.conj().T)
    d, vecs, sweeps = _jacobi(np.ascontiguousarray(a), JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    vals = np.diag(d).real
    order = np.argsort(vals, kind="stable")
    return EigenSystem(values=vals[order], vectors=vecs[:, order])


def psd_sqrt(h) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in ``[PSD_FLOOR, 0)`` are treated as zero; anything lower
    raises ``ValueError``.
    """
    es = hermitian_eigensystem(h)
    if es.values[0] < PSD_FLOOR:
        raise ValueError(f"matrix is not PSD: eigenvalue {es.values[0]:.3e}")
    root = np.sqrt(np.clip(es.values, 0.0, None))
    return (es.vectors * root) @ es.vectors.conj().T


def shannon_entropy(p) -> float:
    """Shannon entropy in bits, with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz))) + 0.0


def von_neumann_entropy(rho) -> float:
    """``-Tr[rho log2 rho]`` of a valid density matrix, in bits."""
    m = as_density_matrix(rho, check_psd=False)
    vals = hermitian_eigensystem(m).values
    if vals[0] < PSD_FLOOR:
        raise ValueError(f"density matrix has negative eigenvalue {vals[0]:.3e}")
    s = shannon_entropy(np.clip(vals, 0.0, None))
    return min(max(s, 0.0), float(np.log2(m.shape[0])))
