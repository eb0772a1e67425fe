"""Independent reference computations used by the tests."""

import numpy as np
from scipy.linalg import expm, logm
from scipy.special import gammaln

N_DENSE = 90
_a = np.diag(np.sqrt(np.arange(1, N_DENSE)), 1)
X_OP = (_a + _a.T) / np.sqrt(2)
P_OP = (_a - _a.T) / (1j * np.sqrt(2))
OMEGA1 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def single_mode_gaussian(sigma, mean):
    """Dense Fock density matrix of a one-mode Gaussian state (thermal, squeeze, displace)."""
    nu = np.sqrt(np.linalg.det(sigma))
    nb = nu - 0.5
    n = np.arange(N_DENSE)
    th = np.diag((nb / (nb + 1)) ** n / (nb + 1)) if nb > 1e-14 else np.diag((n == 0).astype(float))
    w, q = np.linalg.eigh(sigma / nu)
    S = q @ np.diag(np.sqrt(w)) @ q.T
    G = -OMEGA1 @ np.real(logm(S))
    r = [X_OP, P_OP]
    H = 0.5 * sum(G[i, j] * r[i] @ r[j] for i in range(2) for j in range(2))
    U = expm(-1j * H)
    D = expm(1j * (mean[1] * X_OP - mean[0] * P_OP))
    return D @ U @ th @ U.conj().T @ D.conj().T


def moments(rho):
    mx = np.trace(rho @ X_OP).real
    mp = np.trace(rho @ P_OP).real
    vx = np.trace(rho @ X_OP @ X_OP).real - mx**2
    vp = np.trace(rho @ P_OP @ P_OP).real - mp**2
    cxp = np.trace(rho @ (X_OP @ P_OP + P_OP @ X_OP)).real / 2 - mx * mp
    return np.array([mx, mp]), np.array([[vx, cxp], [cxp, vp]])


def commutator_char_dense(sigma, dk, dkp, xi):
    rk = single_mode_gaussian(sigma, dk)
    rkp = single_mode_gaussian(sigma, dkp)
    W = expm(-1j * (xi[0] * X_OP + xi[1] * P_OP))
    return complex(np.trace((rk @ rkp - rkp @ rk) @ W))


def tmsv_elements(r, d):
    t = np.tanh(r)
    out = np.zeros((d + 1,) * 4)
    for m in range(d + 1):
        for n in range(d + 1):
            out[m, m, n, n] = (1 - t * t) * t ** (m + n)
    return out


def mixture_elements(sigma2, d):
    out = np.zeros((d + 1,) * 4)
    idx = np.indices(out.shape)
    m1, m2, n1, n2 = idx
    M = m1 + m2
    log_s = np.log(sigma2) + (M + 1) * np.log(1 / sigma2 + 2)
    val = np.exp(gammaln(M + 1) - 0.5 * (gammaln(m1 + 1) + gammaln(m2 + 1) + gammaln(n1 + 1) + gammaln(n2 + 1)) - log_s)
    return np.where(M == n1 + n2, val, 0.0)


def husimi_phase_space(cm, alpha1, alpha2):
    """Q function as a Gaussian in phase space: covariance cm + I/2."""
    v = np.sqrt(2) * np.array([alpha1.real, alpha1.imag, alpha2.real, alpha2.imag])
    g = np.asarray(cm) + 0.5 * np.eye(4)
    return float(np.exp(-0.5 * v @ np.linalg.solve(g, v)) / (np.pi**2 * np.sqrt(np.linalg.det(g))))


def pt_negativity_2x2(rho4):
    """Negativity of a two-party density matrix (d^2 x d^2) via partial transpose."""
    D = int(round(np.sqrt(rho4.shape[0])))
    pt = rho4.reshape(D, D, D, D).transpose(0, 3, 2, 1).reshape(D * D, D * D)
    return 0.5 * (np.abs(np.linalg.eigvalsh(pt)).sum() - 1)
