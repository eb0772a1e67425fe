r"""Fock-basis density matrices of zero-mean two-mode Gaussian states.

The elements :math:`\langle m_1 m_2|\rho|n_1 n_2\rangle` are four-index
Hermite polynomials at the origin, divided by
:math:`\sqrt{\det(\gamma+\tfrac12 I)\, m_1! m_2! n_1! n_2!}`. The polynomials
are generated by the recurrence

.. math::

    H_{\mu+e_i}(0) = -\sum_j r_{ij}\,\mu_j\,H_{\mu-e_j}(0),

stored here in factorial-scaled form :math:`h_\mu = H_\mu(0)/\sqrt{\mu!}`
so that large cutoffs neither overflow nor underflow.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import CutoffTooLarge, NotTwoModes, SingularMatrix
from .gaussian import StandardFormParams, check_covariance

DEFAULT_MAX_CUTOFF = 40

#: Maps the real quadrature vector to (a1, a1*, a2, a2*) up to the 1/sqrt(2).
O_MATRIX = np.kron(np.eye(2), np.array([[1.0, 1.0j], [1.0, -1.0j]]) / np.sqrt(2))
#: alpha = V h and alpha^dagger = h^T W with h = (a1*, a2*, a1, a2).
V_MATRIX = np.array(
    [[0, 0, 1, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]], dtype=float
)
W_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=float
)


def max_cutoff_cap() -> int:
    """Global per-mode cutoff cap, overridable with ``CVACT_MAX_CUTOFF``."""
    env = os.environ.get("CVACT_MAX_CUTOFF")
    return int(env) if env else DEFAULT_MAX_CUTOFF


@dataclass(frozen=True)
class RMatrix:
    """Symmetric matrix defining the Hermite polynomials of a Gaussian state.

    ``det_factor`` is ``det(gamma + I/2)``, the normalisation of the
    Fock elements.
    """

    entries: np.ndarray
    det_factor: float


def build_r_matrix(cm) -> RMatrix:
    cm = check_covariance(cm)
    if cm.shape != (4, 4):
        raise NotTwoModes(f"expected a 4x4 covariance matrix, got {cm.shape}")
    g = cm + 0.5 * np.eye(4)
    det = float(np.linalg.det(g))
    try:
        ginv = np.linalg.inv(g)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix("cm + I/2 is singular") from exc
    if det <= 0:
        raise SingularMatrix("cm + I/2 is not positive definite")
    R = W_MATRIX @ O_MATRIX @ (ginv - np.eye(4)) @ O_MATRIX.conj().T @ V_MATRIX
    return RMatrix(R, det)


def standard_form_r_matrix(p: StandardFormParams) -> RMatrix:
    """Closed-form R matrix for a standard-form covariance matrix."""
    a, b, c1, c2 = (float(x) for x in p)

    def rj(c):
        d = (a + 0.5) * (b + 0.5) - c * c
        return np.array([[b + 0.5, -c], [-c, a + 0.5]]) / (2 * d), d

    r1, d1 = rj(c1)
    r2, d2 = rj(c2)
    diag = r1 - r2
    off = r1 + r2 - np.eye(2)
    R = np.block([[diag, off], [off, diag]]).astype(complex)
    return RMatrix(R, d1 * d2)


def _lowered(arr: np.ndarray, axis: int, sqrt_n: np.ndarray) -> np.ndarray:
    # out[.., n, ..] = sqrt(n) * arr[.., n-1, ..], zero at n = 0
    out = np.zeros_like(arr)
    src = [slice(None)] * arr.ndim
    dst = [slice(None)] * arr.ndim
    src[axis] = slice(0, -1)
    dst[axis] = slice(1, None)
    shape = [1] * arr.ndim
    shape[axis] = -1
    out[tuple(dst)] = arr[tuple(src)] * sqrt_n[1:].reshape(shape)
    return out


def _fill(h: np.ndarray, r: np.ndarray, sqrt_n: np.ndarray) -> None:
    # Each entry is generated from its first nonzero index i:
    # h[nu] = -(1/sqrt(nu_i)) sum_j r_ij sqrt(mu_j) h[mu - e_j],  mu = nu - e_i.
    # The leading-zero sub-box is the same problem in one dimension fewer.
    if h.ndim == 0:
        return
    _fill(h[0], r[1:, 1:], sqrt_n)
    for k in range(1, h.shape[0]):
        prev = h[k - 1]
        acc = np.zeros_like(prev)
        if k >= 2 and r[0, 0] != 0:
            acc += r[0, 0] * sqrt_n[k - 1] * h[k - 2]
        for j in range(1, h.ndim):
            if r[0, j] != 0:
                acc += r[0, j] * _lowered(prev, j - 1, sqrt_n)
        h[k] = -acc / sqrt_n[k]


@dataclass(frozen=True)
class HermiteTable:
    """Factorial-scaled Hermite values ``h[m1, m2, n1, n2] = H(0) / sqrt(m1! m2! n1! n2!)``."""

    r_matrix: RMatrix
    cutoff: int
    values: np.ndarray

    def unscaled(self, mu) -> complex:
        """Raw polynomial value ``H_mu(0)``."""
        mu = tuple(int(m) for m in mu)
        log_fact = 0.5 * sum(gammaln(m + 1) for m in mu)
        return complex(self.values[mu] * np.exp(log_fact))


def hermite_table(r, cutoff: int, max_cutoff: int | None = None) -> HermiteTable:
    """Hermite values at the origin for all indices up to ``cutoff`` per slot.

    Memory is ``(cutoff + 1)**4`` complex numbers; cutoffs above
    ``max_cutoff`` (default :func:`max_cutoff_cap`) raise
    :class:`CutoffTooLarge`.
    """
    if not isinstance(r, RMatrix):
        r = RMatrix(np.asarray(r, dtype=complex), 1.0)
    cap = max_cutoff_cap() if max_cutoff is None else max_cutoff
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    if cutoff > cap:
        raise CutoffTooLarge(
            f"cutoff {cutoff} exceeds the cap {cap} ({(cutoff + 1) ** 4} table entries)"
        )
    dim = cutoff + 1
    h = np.zeros((dim,) * 4, dtype=complex)
    h[0, 0, 0, 0] = 1.0
    _fill(h, np.asarray(r.entries, dtype=complex), np.sqrt(np.arange(dim, dtype=float)))
    h.flags.writeable = False
    return HermiteTable(r, cutoff, h)


@dataclass(frozen=True)
class TruncatedDensityMatrix:
    """Fock elements ``elements[m1, m2, n1, n2] = <m1 m2|rho|n1 n2>`` up to ``cutoff``."""

    cutoff: int
    elements: np.ndarray

    @property
    def dim(self) -> int:
        return self.cutoff + 1

    def as_matrix(self) -> np.ndarray:
        """Square matrix with rows ``(m1, m2)`` and columns ``(n1, n2)``."""
        d2 = self.dim**2
        return self.elements.reshape(d2, d2)

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.as_matrix())))

    @property
    def trace_deficit(self) -> float:
        return 1.0 - self.trace

    def truncate(self, cutoff: int) -> "TruncatedDensityMatrix":
        if cutoff > self.cutoff:
            raise ValueError("cannot truncate to a larger cutoff")
        s = slice(0, cutoff + 1)
        return TruncatedDensityMatrix(cutoff, self.elements[s, s, s, s])

    def dump_csv(self, path) -> None:
        """Write nonzero elements as rows ``m1,m2,n1,n2,re,im``."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["m1", "m2", "n1", "n2", "re", "im"])
            for idx in zip(*np.nonzero(self.elements)):
                v = self.elements[idx]
                w.writerow([*map(int, idx), f"{v.real + 0.0:.12g}", f"{v.imag + 0.0:.12g}"])


def fock_elements(cm, cutoff: int, max_cutoff: int | None = None) -> TruncatedDensityMatrix:
    """Truncated Fock-basis density matrix of a zero-mean two-mode Gaussian state."""
    r = build_r_matrix(cm)
    table = hermite_table(r, cutoff, max_cutoff)
    return TruncatedDensityMatrix(cutoff, table.values / np.sqrt(r.det_factor))


def _h_vector(alpha1: complex, alpha2: complex) -> np.ndarray:
    return np.array([np.conj(alpha1), np.conj(alpha2), alpha1, alpha2], dtype=complex)


def generating_function_check(r, alpha1: complex, alpha2: complex, cutoff: int):
    """Both sides of the Hermite generating function at the origin.

    Returns ``(lhs, rhs_partial)`` where ``lhs = exp(-h^T R h / 2)`` and
    ``rhs_partial`` is the series truncated at ``cutoff`` per index.
    """
    if not isinstance(r, RMatrix):
        r = RMatrix(np.asarray(r, dtype=complex), 1.0)
    h = _h_vector(alpha1, alpha2)
    lhs = complex(np.exp(-0.5 * h @ r.entries @ h))
    table = hermite_table(r, cutoff)
    n = np.arange(cutoff + 1)
    inv_sqrt_fact = np.exp(-0.5 * gammaln(n + 1))
    # h-scaled terms: x^n / n! * H = x^n / sqrt(n!) * h_mu
    vecs = [hk**n * inv_sqrt_fact for hk in h]
    rhs = complex(np.einsum("abcd,a,b,c,d->", table.values, *vecs))
    return lhs, rhs


def husimi_at(cm, alpha1: complex, alpha2: complex) -> float:
    """Husimi Q function of a zero-mean two-mode Gaussian state at (alpha1, alpha2)."""
    r = build_r_matrix(cm)
    h = _h_vector(alpha1, alpha2)
    expo = -0.5 * h @ r.entries @ h - abs(alpha1) ** 2 - abs(alpha2) ** 2
    val = np.exp(expo) / (np.pi**2 * np.sqrt(r.det_factor))
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise ArithmeticError(f"Husimi value has imaginary residue {val.imag:.3e}")
    return float(val.real)
