"""The CNOT activation protocol and the Gaussian no-activation demonstration.

Non-Gaussian side: each system mode j = A, B is coupled to a vacuum ancilla
j' by the Fock-basis adder ``|m, n> -> |m, m + n>``. The output is the
maximally correlated state ``sum rho[m, n] |m><n|_AB (x) |m><n|_A'B'``.

Gaussian side: a separable input ``gamma_a (+) gamma_b + P`` is pushed through
local symplectic maps and a global symplectic map together with an ancilla.
Since the classical noise ``P`` can be moved behind the global map, the
output is the baseline output plus positive noise, and a certificate of the
baseline's separability also certifies the output.

Mode order of four-mode objects is (A, B, A', B').
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import CertificateFailed, DenseTooLarge, FaithfulnessViolation
from .fock import TruncatedDensityMatrix
from .gaussian import (
    PSD_TOL,
    ProductNoiseDecomposition,
    check_covariance,
    direct_sum,
    is_bona_fide,
    is_classical,
    is_symplectic,
    min_pt_symplectic_eig,
    product_noise_compose,
)
from .negativity import DEFAULT_MAX_CUTOFF, DEFAULT_TOL, negativity_truncated
from .states import (
    conjugate,
    mode_permutation,
    random_cm,
    random_local_symplectic,
)

#: Largest dense four-mode dimension (rows) that will be materialised.
DENSE_CAP = 4096


# ---------------------------------------------------------------------------
# non-Gaussian protocol in truncated Fock space


def cnot_matrix(cutoff: int) -> np.ndarray:
    """Truncated adder ``|m, n> -> |m, m + n>`` on a control/target pair.

    Basis index is ``m * (cutoff + 1) + n``. Inputs with ``m + n > cutoff``
    are mapped to zero.
    """
    D = cutoff + 1
    U = np.zeros((D * D, D * D))
    for m in range(D):
        for n in range(D - m):
            U[m * D + m + n, m * D + n] = 1.0
    return U


@dataclass(frozen=True)
class FourModeState:
    """Protocol output, kept as the input amplitudes of its maximally correlated form.

    ``dense`` is the full ``(cutoff+1)**4``-square density matrix over
    (A, B, A', B') when it has been materialised.
    """

    cutoff: int
    amplitudes: np.ndarray
    dense: np.ndarray | None = field(default=None, repr=False)

    @property
    def dense_enabled(self) -> bool:
        return self.dense is not None

    @property
    def trace(self) -> float:
        return float(np.real(np.einsum("ijij->", self.amplitudes)))


def _apply_pair(U4: np.ndarray, rho: np.ndarray, ket: bool, system: int) -> np.ndarray:
    # rho axes: kets (A, B, A', B') then bras (A, B, A', B')
    off = 0 if ket else 4
    i, j = off + system, off + system + 2
    op = U4 if ket else U4.conj()
    out = np.tensordot(op, rho, axes=([2, 3], [i, j]))
    # tensordot puts the two new axes first; move them back into place
    return np.moveaxis(out, [0, 1], [i, j])


def protocol_output(tdm: TruncatedDensityMatrix, dense: bool | None = None) -> FourModeState:
    """Apply the two CNOT gates with vacuum ancillas to ``tdm``.

    With ``dense=None`` the full matrix is built whenever it has at most
    :data:`DENSE_CAP` rows. It is built by explicitly applying the truncated
    adder gates to ``tdm (x) |00><00|``.

    Raises:
        DenseTooLarge: if ``dense=True`` and the matrix would exceed the cap.
    """
    D = tdm.cutoff + 1
    rows = D**4
    if dense is None:
        dense = rows <= DENSE_CAP
    elif dense and rows > DENSE_CAP:
        raise DenseTooLarge(f"dense output would have {rows} rows (cap {DENSE_CAP})")
    full = None
    if dense:
        rho = np.zeros((D,) * 8, dtype=complex)
        rho[:, :, 0, 0, :, :, 0, 0] = tdm.elements
        U4 = cnot_matrix(tdm.cutoff).reshape(D, D, D, D)
        for ket in (True, False):
            for system in (0, 1):
                rho = _apply_pair(U4, rho, ket, system)
        full = rho.reshape(rows, rows)
    return FourModeState(tdm.cutoff, tdm.elements, full)


def maximally_correlated_dense(tdm: TruncatedDensityMatrix) -> np.ndarray:
    """Dense ``sum rho[m, n] |m><n| (x) |m><n|`` built by direct placement."""
    D = tdm.cutoff + 1
    rows = D**4
    if rows > DENSE_CAP:
        raise DenseTooLarge(f"dense output would have {rows} rows (cap {DENSE_CAP})")
    idx = np.arange(D * D)
    diag_idx = idx * D * D + idx
    out = np.zeros((rows, rows), dtype=complex)
    out[np.ix_(diag_idx, diag_idx)] = tdm.as_matrix()
    return out


def negativity_oracle_dense(state: FourModeState) -> float:
    """Negativity across AB|A'B' from the spectrum of the partial transpose."""
    if state.dense is None:
        raise DenseTooLarge("dense representation not materialised")
    D = state.cutoff + 1
    rows = D**4
    pt = state.dense.reshape((D,) * 8).transpose(4, 5, 2, 3, 0, 1, 6, 7).reshape(rows, rows)
    ev = np.linalg.eigvalsh(pt)
    return 0.5 * (float(np.abs(ev).sum()) - 1.0)


# ---------------------------------------------------------------------------
# faithfulness of the non-Gaussian protocol


class Faithfulness(enum.Enum):
    CLASSICAL_SEPARABLE_OUTPUT = "ClassicalSeparableOutput"
    NONCLASSICAL_ENTANGLED_OUTPUT = "NonclassicalEntangledOutput"


def faithfulness_check(cm, tol: float = DEFAULT_TOL, max_cutoff: int = DEFAULT_MAX_CUTOFF) -> Faithfulness:
    """Check that output entanglement appears exactly for nonclassical inputs.

    Raises:
        FaithfulnessViolation: if a classical input gives negativity above
            ``tol`` or a nonclassical input does not.
    """
    cm = check_covariance(cm)
    value = negativity_truncated(cm, tol=tol, max_cutoff=max_cutoff).value
    if is_classical(cm):
        if value > tol:
            raise FaithfulnessViolation(f"classical input gave output negativity {value:.3e}")
        return Faithfulness.CLASSICAL_SEPARABLE_OUTPUT
    if value <= tol:
        raise FaithfulnessViolation(f"nonclassical input gave output negativity {value:.3e}")
    return Faithfulness.NONCLASSICAL_ENTANGLED_OUTPUT


# ---------------------------------------------------------------------------
# Gaussian no-activation demonstration


@dataclass(frozen=True)
class SeparabilityCertificate:
    """Witness ``gamma_out >= gamma_1 (+) gamma_2`` of AB|A'B' separability."""

    gamma_1: np.ndarray
    gamma_2: np.ndarray
    residual: np.ndarray

    @property
    def min_residual_eig(self) -> float:
        return float(np.linalg.eigvalsh(self.residual)[0])

    def is_valid(self, tol: float = PSD_TOL) -> bool:
        return (
            is_bona_fide(self.gamma_1, tol)
            and is_bona_fide(self.gamma_2, tol)
            and self.min_residual_eig >= -tol
        )


def swap_system_ancilla() -> np.ndarray:
    """Symplectic swap A <-> A', B <-> B'."""
    return mode_permutation([2, 3, 0, 1])


@dataclass(frozen=True)
class NoGoScenario:
    decomposition: ProductNoiseDecomposition
    s_a: np.ndarray
    s_b: np.ndarray
    s_global: np.ndarray
    gamma_ancilla: np.ndarray

    def __post_init__(self):
        for name in ("s_a", "s_b", "s_global"):
            if not is_symplectic(getattr(self, name)):
                raise ValueError(f"{name} is not symplectic")
        if self.s_global.shape != (8, 8):
            raise ValueError("s_global must act on four modes")
        check_covariance(self.gamma_ancilla)

    @property
    def circuit(self) -> np.ndarray:
        """Total phase-space map ``s_global (s_a (+) s_b (+) I)``."""
        return self.s_global @ direct_sum(self.s_a, self.s_b, np.eye(4))


class NoGoOutcome(NamedTuple):
    gamma_out: np.ndarray
    gamma_out_baseline: np.ndarray
    certificate: SeparabilityCertificate
    #: smallest symplectic eigenvalue of gamma_out partially transposed on AB
    pt_min_symplectic_eig: float

    @property
    def ppt_passed(self) -> bool:
        return self.pt_min_symplectic_eig >= 0.5 - PSD_TOL


def nogo_run(scenario: NoGoScenario, certificate=None, tol: float = PSD_TOL) -> NoGoOutcome:
    """Run a separable input through a Gaussian activation circuit.

    ``certificate`` is an optional pair ``(gamma_1, gamma_2)`` certifying
    that the noiseless baseline output is separable. Without it the
    baseline must already be a direct sum across AB|A'B' (as it is for
    :func:`swap_system_ancilla`) and its diagonal blocks are used.

    Raises:
        CertificateFailed: if no certificate is available or it does not
            bound the output from below.
    """
    dec = scenario.decomposition
    M = scenario.circuit
    baseline = conjugate(M, direct_sum(dec.product, scenario.gamma_ancilla))
    # classical displacements r -> r + V R relocated behind the circuit
    noise_out = conjugate(M, direct_sum(dec.noise, np.zeros((4, 4))))
    gamma_out = baseline + noise_out

    if certificate is None:
        cross = baseline[:4, 4:]
        if np.max(np.abs(cross)) > tol:
            raise CertificateFailed(
                "baseline output is not a direct sum across AB|A'B'; supply a certificate"
            )
        g1, g2 = baseline[:4, :4], baseline[4:, 4:]
    else:
        g1, g2 = (np.asarray(g, dtype=float) for g in certificate)
    cert = SeparabilityCertificate(g1, g2, gamma_out - direct_sum(g1, g2))
    if not cert.is_valid(tol):
        raise CertificateFailed(
            f"certificate residual min eigenvalue {cert.min_residual_eig:.3e}"
        )
    nu = min_pt_symplectic_eig(gamma_out, [0, 1])
    return NoGoOutcome(gamma_out, baseline, cert, nu)


def relocated_displacement(scenario: NoGoScenario, R: np.ndarray) -> np.ndarray:
    """Output-side displacement equivalent to the input displacement ``V R``."""
    shift = scenario.s_a.shape[0] + scenario.s_b.shape[0]
    local = direct_sum(scenario.s_a, scenario.s_b) @ (scenario.decomposition.noise_basis @ R)
    return scenario.s_global @ np.concatenate([local, np.zeros(8 - shift)])


def sample_displacements(dec: ProductNoiseDecomposition, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` classical displacement vectors ``V R`` with ``R ~ N(0, diag(eigs))``.

    The sample covariance converges to the noise matrix; intended for
    demonstrations only, the covariance-level calculation is exact.
    """
    R = rng.normal(size=(n, dec.rank)) * np.sqrt(dec.noise_eigs)
    return R @ dec.noise_basis.T


def random_scenario(rng: np.random.Generator, zero_noise: bool = False, noise_scale: float = 0.5) -> NoGoScenario:
    """Random separable-by-construction scenario with the swap as global map."""
    gamma_a = random_cm(1, rng)
    gamma_b = random_cm(1, rng)
    if zero_noise:
        P = np.zeros((4, 4))
    else:
        rank = int(rng.integers(1, 5))
        G = rng.normal(scale=noise_scale, size=(4, rank))
        P = G @ G.T
    _, dec = product_noise_compose(gamma_a, gamma_b, P)
    return NoGoScenario(
        decomposition=dec,
        s_a=random_local_symplectic(rng),
        s_b=random_local_symplectic(rng),
        s_global=swap_system_ancilla(),
        gamma_ancilla=random_cm(2, rng),
    )
