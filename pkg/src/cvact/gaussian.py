r"""Covariance-matrix algebra for Gaussian states.

Conventions used throughout the package:

* quadratures are ordered :math:`(x_1, p_1, \ldots, x_L, p_L)`;
* :math:`\hbar = 1` and the vacuum covariance matrix is :math:`\tfrac12 I`;
* covariance matrices and symplectic maps are plain ``numpy`` arrays.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.linalg import block_diag

from .errors import (
    BonaFideViolation,
    DegenerateBlock,
    NotPSD,
    NotTwoModes,
    SingularMatrix,
)

#: Tolerance for positive semidefiniteness tests and eigenvalue clamping.
PSD_TOL = 1e-10


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form with blocks ``[[0, 1], [-1, 0]]``."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def n_modes_of(cm: np.ndarray) -> int:
    cm = np.asarray(cm)
    if cm.ndim != 2 or cm.shape[0] != cm.shape[1] or cm.shape[0] % 2:
        raise ValueError(f"expected a square matrix of even dimension, got shape {cm.shape}")
    return cm.shape[0] // 2


def direct_sum(*blocks: np.ndarray) -> np.ndarray:
    return block_diag(*[np.atleast_2d(b) for b in blocks])


def symplectic_eigenvalues(cm: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues in ascending order.

    Computed as the moduli of the eigenvalues of ``i Omega cm``, which come
    in pairs; one member of each pair is kept.
    """
    cm = np.asarray(cm, dtype=float)
    omega = symplectic_form(n_modes_of(cm))
    ev = np.sort(np.abs(np.linalg.eigvals(1j * omega @ cm)))
    return ev[::2]


def uncertainty_min_eig(cm: np.ndarray) -> float:
    """Smallest eigenvalue of the Hermitian matrix ``cm + (i/2) Omega``."""
    cm = np.asarray(cm, dtype=float)
    omega = symplectic_form(n_modes_of(cm))
    return float(np.linalg.eigvalsh(cm + 0.5j * omega)[0])


def _symmetrized(cm: np.ndarray):
    # tolerate rounding-level asymmetry from products like S @ cm @ S.T
    scale = max(1.0, float(np.max(np.abs(cm))))
    if np.max(np.abs(cm - cm.T)) > 1e-12 * scale:
        return None
    return 0.5 * (cm + cm.T)


def is_bona_fide(cm: np.ndarray, tol: float = PSD_TOL) -> bool:
    cm = np.asarray(cm, dtype=float)
    n_modes_of(cm)
    cm = _symmetrized(cm)
    return cm is not None and uncertainty_min_eig(cm) >= -tol


def check_covariance(cm, tol: float = PSD_TOL) -> np.ndarray:
    """Validate ``cm`` as a covariance matrix and return it as a float array.

    Asymmetry at the level of rounding error is removed; the returned
    matrix is exactly symmetric.

    Raises:
        BonaFideViolation: if ``cm`` is not symmetric or violates the
            uncertainty relation by more than ``tol``.
    """
    cm = np.array(cm, dtype=float)
    n_modes_of(cm)
    sym = _symmetrized(cm)
    if sym is None:
        raise BonaFideViolation("covariance matrix is not symmetric")
    cm = sym
    lam = uncertainty_min_eig(cm)
    if lam < -tol:
        raise BonaFideViolation(
            f"cm + (i/2)Omega has eigenvalue {lam:.3e} < 0; not a physical state"
        )
    return cm


def is_symplectic(S, tol: float = PSD_TOL) -> bool:
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] % 2:
        return False
    omega = symplectic_form(S.shape[0] // 2)
    return bool(np.max(np.abs(S @ omega @ S.T - omega)) <= tol)


def _mode_indices(modes: Sequence[int]) -> np.ndarray:
    modes = np.asarray(modes, dtype=int).ravel()
    return np.stack([2 * modes, 2 * modes + 1], axis=1).ravel()


def blocks(cm: np.ndarray, modes_a: Sequence[int]):
    """Split ``cm`` into ``(A, B, C)`` for the bipartition ``modes_a | rest``."""
    cm = np.asarray(cm, dtype=float)
    n = n_modes_of(cm)
    modes_a = sorted(set(int(m) for m in modes_a))
    modes_b = [m for m in range(n) if m not in modes_a]
    ia, ib = _mode_indices(modes_a), _mode_indices(modes_b)
    return cm[np.ix_(ia, ia)], cm[np.ix_(ib, ib)], cm[np.ix_(ia, ib)]


# ---------------------------------------------------------------------------
# standard form


class StandardFormParams(NamedTuple):
    a: float
    b: float
    c1: float
    c2: float


def assemble_standard_form(p) -> np.ndarray:
    """Two-mode covariance matrix with blocks diag(a, a), diag(b, b), diag(c1, c2)."""
    a, b, c1, c2 = (float(x) for x in p)
    cm = np.array(
        [
            [a, 0.0, c1, 0.0],
            [0.0, a, 0.0, c2],
            [c1, 0.0, b, 0.0],
            [0.0, c2, 0.0, b],
        ]
    )
    return check_covariance(cm)


def _normalize_local(block: np.ndarray):
    # local symplectic S with S block S^T = sqrt(det block) * I
    w, q = np.linalg.eigh(block)
    scale = np.sqrt(np.sqrt(w[0] * w[1]))
    return (q * (scale / np.sqrt(w))) @ q.T


def standard_form_invariants(cm, tol: float = PSD_TOL) -> StandardFormParams:
    """Reduce a two-mode covariance matrix to its standard-form parameters.

    Local blocks are first brought to multiples of the identity, then the
    correlation block is diagonalised by local rotations (an SVD with
    proper rotations on both sides). The sign convention is
    ``c1 >= |c2|``.

    Raises:
        NotTwoModes: if ``cm`` is not 4x4.
        DegenerateBlock: if ``det A`` or ``det B`` is below 1/4.
    """
    cm = np.asarray(cm, dtype=float)
    if cm.shape != (4, 4):
        raise NotTwoModes(f"expected a 4x4 covariance matrix, got {cm.shape}")
    A, B, C = cm[:2, :2], cm[2:, 2:], cm[:2, 2:]
    det_a, det_b = np.linalg.det(A), np.linalg.det(B)
    if det_a < 0.25 - tol or det_b < 0.25 - tol:
        raise DegenerateBlock(f"local blocks have det A={det_a:.6g}, det B={det_b:.6g} < 1/4")
    sa, sb = _normalize_local(A), _normalize_local(B)
    cp = sa @ C @ sb.T
    u, s, vt = np.linalg.svd(cp)
    sign = np.sign(np.linalg.det(u) * np.linalg.det(vt))
    c2 = s[1] if sign >= 0 else -s[1]
    return StandardFormParams(float(np.sqrt(det_a)), float(np.sqrt(det_b)), float(s[0]), float(c2))


# ---------------------------------------------------------------------------
# separability and classicality


class Separability(enum.Enum):
    SEPARABLE = "Separable"
    ENTANGLED = "Entangled"


class PPTResult(NamedTuple):
    verdict: Separability
    min_pt_symplectic_eig: float

    @property
    def separable(self) -> bool:
        return self.verdict is Separability.SEPARABLE


def partial_transpose(cm: np.ndarray, modes: Sequence[int]) -> np.ndarray:
    """Phase-space partial transpose: flip the sign of the momenta of ``modes``."""
    cm = np.array(cm, dtype=float)
    flip = np.ones(cm.shape[0])
    flip[2 * np.asarray(modes, dtype=int) + 1] = -1.0
    return cm * np.outer(flip, flip)


def min_pt_symplectic_eig(cm: np.ndarray, modes: Sequence[int]) -> float:
    return float(symplectic_eigenvalues(partial_transpose(cm, modes))[0])


def ppt_separability(cm, tol: float = PSD_TOL) -> PPTResult:
    """PPT decision for a two-mode state (necessary and sufficient for 1x1 modes)."""
    cm = np.asarray(cm, dtype=float)
    if cm.shape != (4, 4):
        raise NotTwoModes(f"PPT decision implemented for two modes only, got {cm.shape}")
    nu = min_pt_symplectic_eig(cm, [1])
    verdict = Separability.ENTANGLED if nu < 0.5 - tol else Separability.SEPARABLE
    return PPTResult(verdict, nu)


def is_classical(cm, modes_a: Sequence[int] = (0,), tol: float = PSD_TOL) -> bool:
    """A Gaussian state is classically correlated iff its correlation block vanishes."""
    _, _, C = blocks(cm, modes_a)
    return bool(C.size == 0 or np.max(np.abs(C)) <= tol)


# ---------------------------------------------------------------------------
# conditional states after a Gaussian measurement


class ConditionalGaussianState(NamedTuple):
    cm: np.ndarray
    mean: np.ndarray


def heterodyne_cm(n_modes: int) -> np.ndarray:
    return 0.5 * np.eye(2 * n_modes)


def conditional_state(cm, measured_modes: Sequence[int], meas_cm=None, outcome=None):
    r"""State of the unmeasured modes after a Gaussian measurement.

    For blocks ``A`` (measured), ``B`` (rest) and ``C`` the conditional
    covariance matrix is :math:`B - C^T (A+\gamma_m)^{-1} C` and the mean is
    :math:`C^T (A+\gamma_m)^{-1} k` for outcome ``k``. ``meas_cm`` defaults
    to heterodyne detection.
    """
    A, B, C = blocks(cm, measured_modes)
    if meas_cm is None:
        meas_cm = heterodyne_cm(A.shape[0] // 2)
    meas_cm = np.asarray(meas_cm, dtype=float)
    k = np.zeros(A.shape[0]) if outcome is None else np.asarray(outcome, dtype=float)
    if k.shape != (A.shape[0],):
        raise ValueError(f"outcome must have length {A.shape[0]}, got {k.shape}")
    M = A + meas_cm
    try:
        sol = np.linalg.solve(M, np.column_stack([C, k]))
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix("A + meas_cm is not invertible") from exc
    sigma = B - C.T @ sol[:, :-1]
    # symmetrize: the Schur complement is symmetric up to rounding
    sigma = 0.5 * (sigma + sigma.T)
    return ConditionalGaussianState(sigma, C.T @ sol[:, -1])


def commutator_char_fn(cm, meas_cm, outcome_k, outcome_kp, xi, measured_modes=(0,)) -> complex:
    r"""Characteristic function of :math:`[\rho_{B|k}, \rho_{B|k'}]` at ``xi``.

    Both conditional states share the covariance matrix ``sigma``; only their
    means ``d_k`` and ``d_k'`` differ. The function vanishes identically iff
    the two conditional states commute.
    """
    st_k = conditional_state(cm, measured_modes, meas_cm, outcome_k)
    st_kp = conditional_state(cm, measured_modes, meas_cm, outcome_kp)
    sigma = st_k.cm
    m = sigma.shape[0] // 2
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (2 * m,):
        raise ValueError(f"xi must have length {2 * m}")
    omega = symplectic_form(m)
    try:
        sigma_inv = np.linalg.inv(sigma)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix("conditional covariance matrix is singular") from exc
    det = np.linalg.det(sigma)
    if det <= 0:
        raise SingularMatrix("conditional covariance matrix is not positive definite")
    dk, dkp = st_k.mean, st_kp.mean
    diff = dk - dkp
    quad = xi @ (sigma + 0.25 * omega.T @ sigma_inv @ omega) @ xi
    exponent = -0.25 * quad - 0.25 * diff @ sigma_inv @ diff - 0.5j * xi @ (dk + dkp)
    arg = 0.25 * (dkp - dk) @ sigma_inv @ omega @ xi
    return complex(2.0 * np.exp(exponent) / (2**m * np.sqrt(det)) * np.sinh(arg))


# ---------------------------------------------------------------------------
# product state plus classical noise


@dataclass(frozen=True)
class ProductNoiseDecomposition:
    """A separable covariance matrix written as ``gamma_a (+) gamma_b + noise``.

    ``noise_basis`` holds the eigenvectors of ``noise`` with strictly
    positive eigenvalues ``noise_eigs``; classical displacements drawn with
    covariance ``diag(noise_eigs)`` and mapped through ``noise_basis``
    reproduce ``noise``.
    """

    gamma_a: np.ndarray
    gamma_b: np.ndarray
    noise: np.ndarray
    noise_basis: np.ndarray
    noise_eigs: np.ndarray

    @property
    def product(self) -> np.ndarray:
        return direct_sum(self.gamma_a, self.gamma_b)

    @property
    def cm(self) -> np.ndarray:
        return self.product + self.noise

    @property
    def rank(self) -> int:
        return len(self.noise_eigs)


def psd_eigh(P, tol: float = PSD_TOL):
    """Eigendecomposition of a symmetric PSD matrix with small negatives clamped.

    Raises:
        NotPSD: if an eigenvalue is below ``-tol``.
    """
    P = np.asarray(P, dtype=float)
    if not np.allclose(P, P.T, rtol=0, atol=1e-12):
        raise NotPSD("noise matrix is not symmetric")
    w, v = np.linalg.eigh(0.5 * (P + P.T))
    if w.size and w[0] < -tol:
        raise NotPSD(f"noise matrix has eigenvalue {w[0]:.3e} < 0")
    return np.where(w < 0, 0.0, w), v


def product_noise_compose(gamma_a, gamma_b, P, tol: float = PSD_TOL):
    """Compose ``gamma_a (+) gamma_b + P`` and record the noise decomposition."""
    gamma_a = check_covariance(gamma_a)
    gamma_b = check_covariance(gamma_b)
    P = np.asarray(P, dtype=float)
    dim = gamma_a.shape[0] + gamma_b.shape[0]
    if P.shape != (dim, dim):
        raise ValueError(f"noise matrix must be {dim}x{dim}, got {P.shape}")
    w, v = psd_eigh(P, tol)
    keep = w > tol
    dec = ProductNoiseDecomposition(gamma_a, gamma_b, P.copy(), v[:, keep], w[keep])
    return dec.cm, dec


def blockwise_inverse(m: np.ndarray, split: int) -> np.ndarray:
    """Invert ``[[A, C], [C^T, B]]`` block by block; ``split`` is the size of ``A``."""
    m = np.asarray(m, dtype=float)
    A, C, B = m[:split, :split], m[:split, split:], m[split:, split:]
    Ai, Bi = np.linalg.inv(A), np.linalg.inv(B)
    top_left = np.linalg.inv(A - C @ Bi @ C.T)
    mid = np.linalg.inv(C.T @ Ai @ C - B)
    top_right = Ai @ C @ mid
    bottom_left = mid @ C.T @ Ai
    bottom_right = np.linalg.inv(B - C.T @ Ai @ C)
    return np.block([[top_left, top_right], [bottom_left, bottom_right]])
