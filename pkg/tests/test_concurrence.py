import itertools

import numpy as np
import pytest

from ouspin.channel import build_kraus, apply_channel
from ouspin.concurrence import (
    Bipartition,
    bipartite_concurrence,
    concurrence_terms,
    lambda_spectrum,
    rotation_operator,
    so2_generator,
    so4_generators,
    tau3_lower_bound,
)
from ouspin.noise import DecoherenceFactor
from ouspin.scenarios import ghz_evolved, ghz_state, w_evolved, w_state

from .oracles import brute_force_tau3, nonhermitian_lambdas, random_density

# brute-force non-Hermitian oracle values (test_golden_values recomputes them)
TAU3_GHZ0 = 1.0
TAU3_W0 = 0.91287092917527685576  # sqrt(5/6)


def explicit_rotation(j, bip, signs=None, order=None):
    """S_j built entry by entry from the spin bits, without permutation matrices."""
    pairs = list(itertools.combinations(range(4), 2))
    if order is not None:
        pairs = [pairs[k] for k in order]
    m, n = pairs[j - 1]
    sign = 1.0 if signs is None else signs[j - 1]
    (p, q), r = bip.pair, bip.single
    s = np.zeros((8, 8))
    for a in range(8):
        for b in range(8):
            ba = [(a >> 2) & 1, (a >> 1) & 1, a & 1]
            bb = [(b >> 2) & 1, (b >> 1) & 1, b & 1]
            ia, ib = 2 * ba[p - 1] + ba[q - 1], 2 * bb[p - 1] + bb[q - 1]
            l4 = sign * ((ia, ib) == (m, n)) - sign * ((ia, ib) == (n, m))
            l2 = ((ba[r - 1], bb[r - 1]) == (0, 1)) - ((ba[r - 1], bb[r - 1]) == (1, 0))
            s[a, b] = l4 * l2
    return s


ALL_ROTATIONS = [explicit_rotation(j, bip) for bip in Bipartition for j in range(1, 7)]


def test_generators():
    gens = so4_generators()
    assert len(gens) == 6
    first = np.zeros((4, 4))
    first[0, 1], first[1, 0] = 1, -1
    assert np.array_equal(gens[0], first)
    for g in gens:
        assert np.array_equal(g.T, -g)
        assert np.count_nonzero(g) == 2
    assert np.array_equal(so2_generator(), [[0, 1], [-1, 0]])


def test_generators_close_under_commutation():
    gens = so4_generators()
    basis = np.array([g.ravel() for g in gens]).T
    for a, b in itertools.combinations(gens, 2):
        c = (a @ b - b @ a).ravel()
        coef, *_ = np.linalg.lstsq(basis, c, rcond=None)
        assert np.allclose(basis @ coef, c, atol=1e-14)


@pytest.mark.parametrize("bip", list(Bipartition))
@pytest.mark.parametrize("j", range(1, 7))
def test_rotation_structure(j, bip):
    s = rotation_operator(j, bip).matrix
    assert np.array_equal(s, explicit_rotation(j, bip))
    assert np.array_equal(s, s.T)
    assert np.sum(~np.any(s, axis=1)) == 4
    assert np.sum(~np.any(s, axis=0)) == 4
    assert np.linalg.matrix_rank(s) == 4
    sst = s @ s.T
    assert np.array_equal(sst, np.diag(np.diag(sst)))
    assert set(np.diag(sst)) == {0.0, 1.0}


def test_rotation_rejects_bad_index():
    with pytest.raises(ValueError):
        rotation_operator(0, Bipartition.B12_3)
    with pytest.raises(ValueError):
        rotation_operator(7, Bipartition.B12_3)


def test_golden_values():
    assert abs(brute_force_tau3(ghz_state(), ALL_ROTATIONS) - TAU3_GHZ0) <= 1e-12
    assert abs(brute_force_tau3(w_state(), ALL_ROTATIONS) - TAU3_W0) <= 1e-12
    assert abs(tau3_lower_bound(ghz_state()) - TAU3_GHZ0) <= 1e-12
    assert abs(tau3_lower_bound(w_state()) - TAU3_W0) <= 1e-12


def test_hermitian_reduction_matches_oracle(rng):
    for k in range(20):
        rho = random_density(rng, rank=8 if k < 14 else int(rng.integers(1, 8)))
        for bip in Bipartition:
            for j in range(1, 7):
                got = lambda_spectrum(rho, j, bip)
                want = nonhermitian_lambdas(rho, explicit_rotation(j, bip))
                assert np.allclose(got**2, want**2, rtol=0, atol=1e-9)
        assert abs(tau3_lower_bound(rho) - brute_force_tau3(rho, ALL_ROTATIONS)) <= 1e-7


def test_maximally_mixed_equal_lambdas():
    lam = lambda_spectrum(np.eye(8) / 8, 1, Bipartition.B12_3)
    assert np.allclose(lam, lam[0], atol=1e-14)
    assert tau3_lower_bound(np.eye(8) / 8) == 0.0


def test_lambda_spectrum_sorted_nonnegative(rng):
    lam = lambda_spectrum(random_density(rng), 3, Bipartition.B23_1)
    assert lam.shape == (4,)
    assert np.all(lam >= 0) and np.all(np.diff(lam) <= 0)


def test_product_state_zero():
    rho = np.zeros((8, 8))
    rho[0, 0] = 1
    for bip in Bipartition:
        for j in range(1, 7):
            assert bipartite_concurrence(rho, j, bip) == 0.0
    assert tau3_lower_bound(rho) == 0.0


def test_separable_diagonal_states_zero(rng):
    for _ in range(20):
        rho = np.diag(rng.dirichlet(np.ones(8)))
        assert tau3_lower_bound(rho) == 0.0


def test_random_states_nonnegative(rng):
    for _ in range(10):
        assert tau3_lower_bound(random_density(rng)) >= 0.0


def test_ghz_terms_scale_linearly():
    base = concurrence_terms(ghz_state())
    for mu in (0.25, 0.5, 0.75):
        terms = concurrence_terms(ghz_evolved(mu))
        for key, c0 in base.items():
            assert abs(terms[key] - mu**3 * c0) <= 1e-12


@pytest.mark.parametrize("mu", np.linspace(0.02, 1.0, 50))
def test_scaling_laws(mu):
    assert abs(tau3_lower_bound(ghz_evolved(mu)) / TAU3_GHZ0 - mu**3) <= 1e-9
    assert abs(tau3_lower_bound(w_evolved(mu)) / TAU3_W0 - mu**2) <= 1e-9


def test_scaling_through_channel():
    for mu in (0.25, 0.5, 0.75):
        rho = apply_channel(ghz_state(), build_kraus(DecoherenceFactor.from_mu(mu)))
        assert abs(tau3_lower_bound(rho) / tau3_lower_bound(ghz_state()) - mu**3) <= 1e-9


def test_invariant_under_z_rotations(rng):
    for _ in range(5):
        rho = random_density(rng)
        base = tau3_lower_bound(rho)
        for spin in range(3):
            alpha = rng.uniform(0, 2 * np.pi)
            rz = np.diag([np.exp(-1j * alpha), np.exp(1j * alpha)])
            factors = [np.eye(2)] * 3
            factors[spin] = rz
            u = np.kron(np.kron(factors[0], factors[1]), factors[2])
            assert abs(tau3_lower_bound(u @ rho @ u.conj().T) - base) <= 1e-9


def test_global_phase_of_eigenvectors(rng):
    rho = random_density(rng, rank=3)
    w, v = np.linalg.eigh(rho)
    v2 = v * np.exp(1j * rng.uniform(0, 2 * np.pi, 8))
    rho2 = (v2 * w) @ v2.conj().T
    # zero lambdas are square roots of roundoff, so compare squares
    a = lambda_spectrum(rho, 2, Bipartition.B13_2) ** 2
    b = lambda_spectrum(rho2, 2, Bipartition.B13_2) ** 2
    assert np.allclose(a, b, rtol=0, atol=1e-12)


def test_generator_convention_irrelevant(rng):
    """Sign flips and reordering of the SO(4) generators leave tau3 unchanged."""
    rho = random_density(rng)
    signs = rng.choice([-1.0, 1.0], 6)
    order = rng.permutation(6)
    alt = [explicit_rotation(j, bip, signs, order) for bip in Bipartition for j in range(1, 7)]
    assert abs(brute_force_tau3(rho, alt) - tau3_lower_bound(rho)) <= 1e-9

