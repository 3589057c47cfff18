"""Global quantum discord of three spins under local projective measurements.

For local measurement directions ``(theta_l, phi_l)`` the objective is

    S(Phi(rho)) - S(rho) - sum_l [S(Phi_l(rho_l)) - S(rho_l)]

and the discord is its minimum over the six angles. Every measured state is
diagonal in the rotated product basis, so the entropies of ``Phi(rho)`` and
``Phi_l(rho_l)`` are Shannon entropies of outcome probabilities. The
optimizer relies on that; ``gqd_objective`` goes through the matrices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numba
import numpy as np
from scipy.optimize import minimize

from .linalg import (
    as_density_matrix,
    hermitian_eigensystem,
    partial_trace,
    tensor_product,
    von_neumann_entropy,
)

TWO_PI = 2.0 * math.pi


def wrap_angles(theta: float, phi: float) -> tuple[float, float]:
    """Map any ``(theta, phi)`` to the equivalent pair with theta in [0, pi), phi in [0, 2pi).

    Uses ``Pi(theta, phi) = Pi(2pi - theta, phi + pi)``; ``theta = pi`` is
    the sigma_z basis with outcomes swapped and becomes ``theta = 0``.
    """
    theta = math.fmod(theta, TWO_PI)
    if theta < 0:
        theta += TWO_PI
    if theta > math.pi:
        theta, phi = TWO_PI - theta, phi + math.pi
    if theta >= math.pi:
        theta = 0.0
    phi = math.fmod(phi, TWO_PI)
    if phi < 0:
        phi += TWO_PI
    if phi >= TWO_PI:
        phi = 0.0
    return theta, phi


@dataclass(frozen=True)
class MeasurementAngles:
    theta: tuple[float, float, float]
    phi: tuple[float, float, float]

    def __post_init__(self):
        pairs = [wrap_angles(t, p) for t, p in zip(self.theta, self.phi, strict=True)]
        if len(pairs) != 3:
            raise ValueError("need three (theta, phi) pairs")
        object.__setattr__(self, "theta", tuple(p[0] for p in pairs))
        object.__setattr__(self, "phi", tuple(p[1] for p in pairs))

    @classmethod
    def sigma_z(cls) -> "MeasurementAngles":
        return cls((0.0, 0.0, 0.0), (0.0, 0.0, 0.0))

    @classmethod
    def from_vector(cls, x) -> "MeasurementAngles":
        return cls(tuple(x[:3]), tuple(x[3:6]))

    def as_tuple(self) -> tuple[float, ...]:
        return self.theta + self.phi


@dataclass(frozen=True)
class ProjectorPair:
    p1: np.ndarray
    p2: np.ndarray


@dataclass(frozen=True)
class OptimizerConfig:
    """Coarse-grid plus Nelder-Mead budget for the discord minimization."""

    grid_theta: int = 6
    grid_phi: int = 8
    refine_iters: int = 400
    refine_tol: float = 1e-10
    multistart: int = 8

    def __post_init__(self):
        for name in ("grid_theta", "grid_phi", "refine_iters", "multistart"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not self.refine_tol > 0:
            raise ValueError("refine_tol must be positive")


REDUCED_BUDGET = OptimizerConfig(multistart=4)


def _basis_rows(theta, phi):
    """Rows are the outcome vectors ``|v1>, |v2>`` with ``Pi_k = |v_k><v_k|``."""
    c, s = np.cos(np.asarray(theta) / 2), np.sin(np.asarray(theta) / 2)
    e = np.exp(-1j * np.asarray(phi))
    return np.stack([np.stack([c + 0j, e * s], -1), np.stack([s + 0j, -e * c], -1)], -2)


def projector_pair(theta: float, phi: float) -> ProjectorPair:
    """Projectors onto ``cos(theta/2)|0> + e^{-i phi} sin(theta/2)|1>`` and its complement.

    ``p1`` carries ``e^{i phi} cos sin`` in its upper-right entry; ``p2`` is
    ``I - p1``.
    """
    theta, phi = wrap_angles(theta, phi)
    v = _basis_rows(theta, phi)
    p1 = np.outer(v[0], v[0].conj())
    p2 = np.outer(v[1], v[1].conj())
    return ProjectorPair(p1=p1, p2=p2)


def product_projectors(a: MeasurementAngles) -> list[np.ndarray]:
    """The eight ``Pi_m``, outcome bits ordered with spin 1 most significant."""
    pairs = [projector_pair(t, p) for t, p in zip(a.theta, a.phi)]
    return [
        tensor_product(*((pp.p1, pp.p2)[k] for pp, k in zip(pairs, bits)))
        for bits in itertools.product((0, 1), repeat=3)
    ]


def measured_state(rho, a: MeasurementAngles) -> np.ndarray:
    """``Phi(rho) = sum_m Pi_m rho Pi_m`` over the eight product projectors."""
    m = as_density_matrix(rho, check_psd=False)
    if m.shape != (8, 8):
        raise ValueError(f"expected an 8x8 state, got {m.shape}")
    return sum(pm @ m @ pm for pm in product_projectors(a))


def local_measured_state(rho_l, theta: float, phi: float) -> np.ndarray:
    m = as_density_matrix(rho_l, check_psd=False)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 state, got {m.shape}")
    pp = projector_pair(theta, phi)
    return pp.p1 @ m @ pp.p1 + pp.p2 @ m @ pp.p2


def gqd_objective(rho, a: MeasurementAngles) -> float:
    """Discord objective at fixed angles, evaluated through the measured matrices."""
    m = as_density_matrix(rho)
    val = von_neumann_entropy(measured_state(m, a)) - von_neumann_entropy(m)
    for l in range(3):
        rho_l = partial_trace(m, [l + 1])
        val -= von_neumann_entropy(local_measured_state(rho_l, a.theta[l], a.phi[l]))
        val += von_neumann_entropy(rho_l)
    return val


def relative_entropy_form(rho, a: MeasurementAngles) -> float:
    """``S(rho || Phi(rho)) - sum_l S(rho_l || Phi_l(rho_l))`` via matrix logarithms.

    Uses ``S(x||y) = -S(x) - Tr[x log2 y]`` with ``log2 y`` taken on the
    support of ``y``.
    """
    def rel(x, y):
        es = hermitian_eigensystem(y)
        logs = np.where(es.values > 1e-300, np.log2(np.clip(es.values, 1e-300, None)), 0.0)
        log_y = (es.vectors * logs) @ es.vectors.conj().T
        return -von_neumann_entropy(x) - float(np.real(np.trace(x @ log_y)))

    m = as_density_matrix(rho)
    val = rel(m, measured_state(m, a))
    for l in range(3):
        rho_l = partial_trace(m, [l + 1])
        val -= rel(rho_l, local_measured_state(rho_l, a.theta[l], a.phi[l]))
    return val


class _Objective:
    """Eigen-free objective for one state, scalar and on a product grid."""

    def __init__(self, rho):
        m = as_density_matrix(rho)
        self.rho = m
        self.rho6 = m.reshape((2,) * 6)
        self.offset = von_neumann_entropy(m) - sum(
            von_neumann_entropy(partial_trace(m, [l + 1])) for l in range(3)
        )

    @staticmethod
    def _value(probs, offset):
        """Joint Shannon entropy minus marginal ones; ``probs`` has trailing axes (2, 2, 2)."""
        def h(p, axes):
            p = np.clip(p, 0.0, None)
            with np.errstate(divide="ignore", invalid="ignore"):
                t = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
            return -t.sum(axis=axes)

        joint = h(probs, (-3, -2, -1))
        marg = (
            h(probs.sum(axis=(-2, -1)), -1)
            + h(probs.sum(axis=(-3, -1)), -1)
            + h(probs.sum(axis=(-3, -2)), -1)
        )
        return joint - marg - offset

    def __call__(self, x) -> float:
        return _scalar_objective(self.rho, np.asarray(x, dtype=float), self.offset)

    def reference(self, x) -> float:
        """Same value as ``__call__`` through Kronecker products, for cross-checks."""
        b = [_basis_rows(x[l], x[l + 3]) for l in range(3)]
        u = np.kron(np.kron(b[0], b[1]), b[2])
        p = np.real(np.einsum("ms,st,mt->m", u.conj(), self.rho, u)).reshape(2, 2, 2)
        return float(self._value(p, self.offset))

    def grid(self, thetas, phis):
        """Objective on the full product grid, shape ``(n, n, n)`` over per-spin bases.

        Per-spin bases are enumerated as ``(theta, phi)`` pairs with theta
        varying slowest.
        """
        th, ph = np.meshgrid(thetas, phis, indexing="ij")
        v = _basis_rows(th.ravel(), ph.ravel())  # (n, outcome, component)
        vc = v.conj()
        # rho6 axes (s1 s2 s3 t1 t2 t3); contract one spin at a time
        m1 = np.einsum("aos,aot,sbctdu->aobcdu", vc, v, self.rho6, optimize=True)
        m2 = np.einsum("pqb,pqd,aobcdu->aopqcu", vc, v, m1, optimize=True)
        p = np.einsum("xyc,xyu,aopqcu->apxoqy", vc, v, m2, optimize=True).real
        n = th.size
        return self._value(p, self.offset).reshape(n, n, n), th.ravel(), ph.ravel()


@numba.njit(cache=True)
def _xlog2x(p):
    return p * np.log2(p) if p > 0.0 else 0.0


@numba.njit(cache=True)
def _scalar_objective(rho, x, offset):
    vec = np.empty((3, 2, 2), dtype=np.complex128)
    for l in range(3):
        c = np.cos(0.5 * x[l])
        s = np.sin(0.5 * x[l])
        e = np.exp(-1j * x[l + 3])
        vec[l, 0, 0] = c
        vec[l, 0, 1] = e * s
        vec[l, 1, 0] = s
        vec[l, 1, 1] = -e * c
    probs = np.zeros(8)
    u = np.empty(8, dtype=np.complex128)
    for m in range(8):
        o1, o2, o3 = (m >> 2) & 1, (m >> 1) & 1, m & 1
        for k in range(8):
            u[k] = vec[0, o1, (k >> 2) & 1] * vec[1, o2, (k >> 1) & 1] * vec[2, o3, k & 1]
        acc = 0.0
        for a in range(8):
            ra = 0.0 + 0.0j
            for b in range(8):
                ra += rho[a, b] * u[b]
            acc += (np.conj(u[a]) * ra).real
        probs[m] = max(acc, 0.0)
    joint = 0.0
    for m in range(8):
        joint -= _xlog2x(probs[m])
    marg = 0.0
    for l in range(3):
        shift = 2 - l
        p0 = 0.0
        for m in range(8):
            if not (m >> shift) & 1:
                p0 += probs[m]
        p1 = 0.0
        for m in range(8):
            if (m >> shift) & 1:
                p1 += probs[m]
        marg -= _xlog2x(p0) + _xlog2x(p1)
    return joint - marg - offset


@dataclass(frozen=True)
class DiscordResult:
    value: float
    argmin: MeasurementAngles
    grid_best: float


def global_discord(rho, cfg: OptimizerConfig = OptimizerConfig()) -> DiscordResult:
    """Minimize the discord objective over the six measurement angles.

    A full product grid (``grid_theta`` x ``grid_phi`` per spin) is scanned,
    the ``multistart`` best cells are refined by Nelder-Mead on unconstrained
    angles, and the lowest value found is returned. Ties go to the
    lexicographically smallest ``(theta1, theta2, theta3, phi1, phi2, phi3)``.
    """
    obj = _Objective(rho)
    thetas = np.arange(cfg.grid_theta) * (math.pi / cfg.grid_theta)
    phis = np.arange(cfg.grid_phi) * (TWO_PI / cfg.grid_phi)
    vals, th, ph = obj.grid(thetas, phis)
    flat = vals.ravel()
    i1, i2, i3 = np.unravel_index(np.arange(flat.size), vals.shape)
    keys = (ph[i3], ph[i2], ph[i1], th[i3], th[i2], th[i1], flat)
    order = np.lexsort(keys)[: cfg.multistart]

    step = np.array([0.5 * math.pi / cfg.grid_theta] * 3 + [0.5 * TWO_PI / cfg.grid_phi] * 3)
    candidates = []
    for k in order:
        x0 = np.array([th[i1[k]], th[i2[k]], th[i3[k]], ph[i1[k]], ph[i2[k]], ph[i3[k]]])
        candidates.append((float(flat[k]), MeasurementAngles.from_vector(x0)))
        simplex = np.vstack([x0, x0 + np.diag(step)])
        res = minimize(
            obj, x0, method="Nelder-Mead",
            options=dict(maxiter=cfg.refine_iters, xatol=cfg.refine_tol,
                         fatol=cfg.refine_tol, initial_simplex=simplex),
        )
        candidates.append((float(res.fun), MeasurementAngles.from_vector(res.x)))
    best_val, best_angles = min(candidates, key=lambda c: (c[0], c[1].as_tuple()))
    return DiscordResult(value=best_val, argmin=best_angles, grid_best=float(flat[order[0]]))
