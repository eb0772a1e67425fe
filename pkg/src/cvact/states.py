"""Common Gaussian states and symplectic maps (vacuum variance 1/2)."""

from __future__ import annotations

import numpy as np

from .gaussian import StandardFormParams, assemble_standard_form, check_covariance, direct_sum


def conjugate(S: np.ndarray, cm: np.ndarray) -> np.ndarray:
    """``S @ cm @ S.T``, symmetrized."""
    out = S @ cm @ S.T
    return 0.5 * (out + out.T)


def vacuum_cm(n_modes: int = 1) -> np.ndarray:
    return 0.5 * np.eye(2 * n_modes)


def thermal_cm(nbar) -> np.ndarray:
    nbar = np.atleast_1d(np.asarray(nbar, dtype=float))
    return np.diag(np.repeat(nbar + 0.5, 2))


def rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def squeezer(r: float) -> np.ndarray:
    return np.diag([np.exp(-r), np.exp(r)])


def beam_splitter(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.block([[c * np.eye(2), s * np.eye(2)], [-s * np.eye(2), c * np.eye(2)]])


def two_mode_squeezer(r: float) -> np.ndarray:
    z = np.diag([1.0, -1.0])
    ch, sh = np.cosh(r), np.sinh(r)
    return np.block([[ch * np.eye(2), sh * z], [sh * z, ch * np.eye(2)]])


def mode_permutation(perm) -> np.ndarray:
    """Symplectic map sending mode ``perm[j]`` to output position ``j``."""
    n = len(perm)
    P = np.zeros((2 * n, 2 * n))
    for j, src in enumerate(perm):
        P[2 * j, 2 * src] = 1.0
        P[2 * j + 1, 2 * src + 1] = 1.0
    return P


def tmsv_params(r: float) -> StandardFormParams:
    ch, sh = np.cosh(2 * r) / 2, np.sinh(2 * r) / 2
    return StandardFormParams(ch, ch, sh, -sh)


def tmsv_cm(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum in standard form; mean photon number sinh(r)**2 per mode."""
    return assemble_standard_form(tmsv_params(r))


def coherent_mixture_params(sigma2: float) -> StandardFormParams:
    return StandardFormParams(sigma2 + 0.5, sigma2 + 0.5, sigma2, sigma2)


def coherent_mixture_cm(sigma2: float) -> np.ndarray:
    """Gaussian mixture of coherent states |alpha>|alpha> with variance sigma2.

    This is a thermal state of mean photon number ``2 * sigma2`` split on a
    balanced beam splitter; it is separable but not classical for
    ``sigma2 > 0``.
    """
    return assemble_standard_form(coherent_mixture_params(sigma2))


def r_from_nbar(nbar: float) -> float:
    """Squeezing giving ``nbar = sinh(r)**2`` photons per mode."""
    return float(np.arcsinh(np.sqrt(nbar)))


# ---------------------------------------------------------------------------
# random draws


def random_local_symplectic(rng: np.random.Generator, max_squeeze: float = 0.8) -> np.ndarray:
    """Random single-mode symplectic map (rotation, squeezing, rotation)."""
    t1, t2 = rng.uniform(0, 2 * np.pi, size=2)
    r = rng.uniform(-max_squeeze, max_squeeze)
    return rotation(t1) @ squeezer(r) @ rotation(t2)


def random_symplectic(n_modes: int, rng: np.random.Generator, max_squeeze: float = 0.8) -> np.ndarray:
    """Random symplectic map built from passive and squeezing layers."""
    S = direct_sum(*[random_local_symplectic(rng, max_squeeze) for _ in range(n_modes)])
    for _ in range(2):
        for i in range(n_modes - 1):
            for j in range(i + 1, n_modes):
                bs = np.eye(2 * n_modes)
                blk = beam_splitter(rng.uniform(0, np.pi))
                idx = [2 * i, 2 * i + 1, 2 * j, 2 * j + 1]
                bs[np.ix_(idx, idx)] = blk
                S = bs @ S
        S = direct_sum(*[random_local_symplectic(rng, max_squeeze) for _ in range(n_modes)]) @ S
    return S


def random_cm(n_modes: int, rng: np.random.Generator, max_nbar: float = 1.0, max_squeeze: float = 0.6) -> np.ndarray:
    """Random bona fide covariance matrix via a Williamson-form construction."""
    nu = 0.5 + rng.uniform(0, max_nbar, size=n_modes)
    S = random_symplectic(n_modes, rng, max_squeeze)
    return check_covariance(conjugate(S, np.diag(np.repeat(nu, 2))))


def random_standard_form(rng: np.random.Generator, max_nbar: float = 1.0) -> StandardFormParams:
    """Random physical standard-form parameters with ``c1 >= |c2|``."""
    while True:
        a, b = 0.5 + rng.uniform(0, max_nbar, size=2)
        cmax = np.sqrt((a - 0.5) * (b - 0.5)) + np.sqrt((a + 0.5) * (b + 0.5))
        c1 = rng.uniform(0, cmax)
        c2 = rng.uniform(-c1, c1)
        p = StandardFormParams(a, b, c1, c2)
        try:
            assemble_standard_form(p)
        except ValueError:
            continue
        return p
